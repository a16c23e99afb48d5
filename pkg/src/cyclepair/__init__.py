"""Decide whether a multidigraph holds a directed cycle and a vertex-disjoint
undirected cycle, with verifiable certificates."""

from .cycles import (
    Certificate,
    Dicycle,
    UndirectedCycle,
    find_any_dicycle,
    find_undirected_cycle,
    format_certificate,
    parse_certificate,
    verify_certificate,
)
from .digraph import Digraph, ParseError, format_digraph, parse_digraph, strong_components
from .digraph import is_acyclic
from .oracle import enumerate_chordless_dicycles, oracle_solve, oracle_two_disjoint_dicycles
from .transversal import AT_LEAST_3, TauInfo, compute_tau_capped, is_transversal

__all__ = [
    "AT_LEAST_3",
    "Certificate",
    "Dicycle",
    "Digraph",
    "ParseError",
    "TauInfo",
    "UndirectedCycle",
    "compute_tau_capped",
    "enumerate_chordless_dicycles",
    "find_any_dicycle",
    "find_undirected_cycle",
    "format_certificate",
    "format_digraph",
    "is_acyclic",
    "is_transversal",
    "oracle_solve",
    "oracle_two_disjoint_dicycles",
    "parse_certificate",
    "parse_digraph",
    "strong_components",
    "verify_certificate",
]
