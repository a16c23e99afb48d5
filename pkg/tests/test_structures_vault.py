import random

import pytest
from hypothesis import given, settings, strategies as st

from cyclepair.cycles import verify_certificate
from cyclepair.instances import c5sq, k3d
from cyclepair.oracle import oracle_solve
from cyclepair.structures.vault import (
    VaultNiche,
    gen_vault,
    recognize_vault,
    vault_niche,
    vault_niche_certificate,
    verify_vault,
)

from helpers import digraphs_isomorphic


def test_c5sq_recognized_with_singleton_walls():
    d = c5sq()
    dec = recognize_vault(d)
    assert dec is not None
    assert dec.ell == 5
    assert all(len(w) == 1 for w in dec.walls)
    assert verify_vault(d, dec)
    assert vault_niche(dec) is None


def test_k3d_is_not_a_vault():
    assert recognize_vault(k3d()) is None


def test_c5sq_fabricated_witness_is_an_error():
    d = c5sq()
    dec = recognize_vault(d)
    with pytest.raises(ValueError):
        vault_niche_certificate(d, dec, VaultNiche(0, dec.cross[0][0], dec.cross[0][0]))


def test_generated_vault_round_trip_plain():
    host, dec = gen_vault(random.Random(7), ell=7, max_wall=3, max_cross=2)
    assert verify_vault(host, dec)
    got = recognize_vault(host)
    assert got is not None and verify_vault(host, got)
    assert got.ell == 7
    assert vault_niche(got) is None


def test_gen_vault_l5_wall1_is_c5sq():
    host, dec = gen_vault(random.Random(1), ell=5, max_wall=1, max_cross=1)
    assert digraphs_isomorphic(host, c5sq())


def test_planted_niche_detected_and_certified():
    for seed in range(6):
        host, dec = gen_vault(random.Random(seed), ell=5, max_wall=2, plant_niche=True)
        assert verify_vault(host, dec)
        niche = vault_niche(dec)
        assert niche is not None
        cert = vault_niche_certificate(host, dec, niche)
        assert verify_certificate(host, cert)


def test_planted_niche_with_subdivision_certificate_lifts():
    for seed in range(6):
        host, dec = gen_vault(
            random.Random(100 + seed), ell=7, max_wall=2, plant_niche=True,
            subdivision_prob=0.4,
        )
        assert verify_vault(host, dec)
        niche = vault_niche(dec)
        assert niche is not None
        cert = vault_niche_certificate(host, dec, niche)
        assert verify_certificate(host, cert)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_round_trip_with_subdivision(seed):
    rng = random.Random(seed)
    ell = rng.choice([5, 7, 9])
    host, dec = gen_vault(
        rng, ell=ell, max_wall=rng.randint(1, 3), max_cross=rng.randint(1, 2),
        subdivision_prob=0.3,
    )
    assert verify_vault(host, dec)
    got = recognize_vault(host)
    assert got is not None
    assert verify_vault(host, got)
    assert got.ell == ell
    assert vault_niche(got) is None


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**9))
def test_niche_free_small_vaults_are_no_instances(seed):
    rng = random.Random(seed)
    host, dec = gen_vault(rng, ell=5, max_wall=2, max_cross=1)
    if host.n > 14:
        return
    assert oracle_solve(host).verdict == "no"


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**9))
def test_planted_niche_small_vaults_are_yes_instances(seed):
    rng = random.Random(seed)
    host, dec = gen_vault(rng, ell=5, max_wall=2, plant_niche=True)
    if host.n > 14:
        return
    assert oracle_solve(host).verdict == "yes"
