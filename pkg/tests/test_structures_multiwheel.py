import random

from hypothesis import given, settings, strategies as st

from cyclepair.cycles import canonical_dicycle, is_dicycle
from cyclepair.instances import c5sq, mw3
from cyclepair.oracle import oracle_solve
from cyclepair.structures.multiwheel import (
    enumerate_multiwheel_dicycles,
    gen_multiwheel,
    recognize_multiwheel,
    verify_multiwheel,
)

from helpers import all_dicycles


def test_mw3_recognized_plain():
    d = mw3()
    dec = recognize_multiwheel(d)
    assert dec is not None and dec.kind == "plain" and dec.p == 3
    assert verify_multiwheel(d, dec)


def test_c5sq_is_not_a_multiwheel():
    assert recognize_multiwheel(c5sq()) is None


def test_gen_multiwheel_p3_single_spokes_is_mw3():
    host, dec = gen_multiwheel(random.Random(3), p=3, split=False, max_spokes=1)
    assert verify_multiwheel(host, dec)
    # may differ in spoke placement but is always a 4-vertex wheel
    assert host.n == 4


def test_split_multiwheel_round_trip():
    host, dec = gen_multiwheel(random.Random(5), p=4, split=True, max_spokes=2)
    assert verify_multiwheel(host, dec)
    got = recognize_multiwheel(host)
    assert got is not None
    assert got.kind == "split"
    assert got.p == 4


def test_mw3_dicycle_count_rim_plus_nine():
    d = mw3()
    dec = recognize_multiwheel(d)
    cycles = list(enumerate_multiwheel_dicycles(dec))
    assert len(cycles) == 10
    assert {canonical_dicycle(b) for b in cycles} == all_dicycles(d)


def test_subdivided_mw3_same_count_longer_dicycles():
    host, dec = gen_multiwheel(random.Random(11), p=3, max_spokes=1, subdivision_prob=0.5)
    cycles = list(enumerate_multiwheel_dicycles(dec))
    assert {canonical_dicycle(b) for b in cycles} == all_dicycles(host)
    for b in cycles:
        assert is_dicycle(host, b)


def test_split_one_in_spoke_one_center_dicycle():
    # split rim of 3; one in-spoke at c0, out-spokes at c1 and c2 (two each side
    # keeps the split shape); count = rim + in*out
    host, dec = gen_multiwheel(random.Random(2), p=3, split=True, max_spokes=1)
    cycles = list(enumerate_multiwheel_dicycles(dec))
    expect = 1 + len(dec.spokes_in) * len(dec.spokes_out)
    assert len(cycles) == expect
    assert {canonical_dicycle(b) for b in cycles} == all_dicycles(host)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9))
def test_multiwheel_round_trip_and_enumeration(seed):
    rng = random.Random(seed)
    split = rng.random() < 0.5
    host, dec = gen_multiwheel(
        rng, p=rng.randint(3, 6), split=split,
        max_spokes=rng.randint(1, 2), subdivision_prob=0.25,
    )
    assert verify_multiwheel(host, dec)
    got = recognize_multiwheel(host)
    assert got is not None and verify_multiwheel(host, got)
    cycles = list(enumerate_multiwheel_dicycles(got))
    assert {canonical_dicycle(b) for b in cycles} == all_dicycles(host)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**9))
def test_multiwheels_are_no_instances(seed):
    rng = random.Random(seed)
    host, _ = gen_multiwheel(rng, p=rng.randint(3, 4), split=rng.random() < 0.5)
    if host.n > 14:
        return
    assert oracle_solve(host).verdict == "no"
