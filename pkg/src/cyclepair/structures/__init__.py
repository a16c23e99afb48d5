"""Recognizers, verifiers, and generators for the strongly connected
no-instance families, plus the classifier that certifies one of them or
reports that the core is a yes-instance."""

from __future__ import annotations

from dataclasses import dataclass

from ..cycles import Certificate, find_undirected_cycle
from ..digraph import Digraph, is_strongly_connected
from .multiwheel import (
    MultiwheelDecomposition,
    enumerate_multiwheel_dicycles,
    gen_multiwheel,
    recognize_multiwheel,
    verify_multiwheel,
)
from .trivault import (
    TrivaultDecomposition,
    TrivaultNiche,
    enumerate_trivault_dicycles,
    gen_trivault,
    recognize_trivault,
    trivault_niche,
    verify_trivault,
)
from .vault import (
    VaultDecomposition,
    VaultNiche,
    gen_vault,
    recognize_vault,
    vault_niche,
    vault_niche_certificate,
    verify_vault,
)

__all__ = [
    "MultiwheelDecomposition",
    "StructureVerdict",
    "TrivaultDecomposition",
    "TrivaultNiche",
    "VaultDecomposition",
    "VaultNiche",
    "classify_strong_no_instance",
    "enumerate_multiwheel_dicycles",
    "enumerate_trivault_dicycles",
    "gen_multiwheel",
    "gen_trivault",
    "gen_vault",
    "recognize_multiwheel",
    "recognize_trivault",
    "recognize_vault",
    "trivault_niche",
    "vault_niche",
    "vault_niche_certificate",
    "verify_multiwheel",
    "verify_trivault",
    "verify_vault",
]


@dataclass(frozen=True)
class StructureVerdict:
    kind: str  # "vault" | "multiwheel" | "trivault" | "not-in-families"
    decomposition: object | None = None
    certificate: Certificate | None = None  # set when a niche certifies yes


def classify_strong_no_instance(dprime: Digraph) -> StructureVerdict:
    """Certify dprime as a niche-free family member, or report not-in-families.

    Callers guarantee dprime is strongly connected with transversal number 2
    and no two disjoint dicycles.  A recognized decomposition carrying a niche
    means the core itself is a yes-instance; for vaults the explicit niche
    construction supplies the certificate, for trivaults the complete dicycle
    enumerator does.
    """
    if not is_strongly_connected(dprime):
        raise ValueError("classification needs a strongly connected digraph")
    dec = recognize_vault(dprime)
    if dec is not None:
        niche = vault_niche(dec)
        if niche is None:
            return StructureVerdict("vault", dec)
        cert = vault_niche_certificate(dprime, dec, niche)
        return StructureVerdict("not-in-families", dec, cert)
    mdec = recognize_multiwheel(dprime)
    if mdec is not None:
        return StructureVerdict("multiwheel", mdec)
    tdec, niche = recognize_trivault(dprime)
    if tdec is not None:
        if niche is None:
            return StructureVerdict("trivault", tdec)
        for b in enumerate_trivault_dicycles(tdec):
            bverts = {dprime.tail(a) for a in b.arc_ids}
            c = find_undirected_cycle(dprime, bverts)
            if c is not None:
                return StructureVerdict("not-in-families", tdec, Certificate(b, c))
        raise AssertionError("trivault niche without a certifying pair")
    return StructureVerdict("not-in-families")
