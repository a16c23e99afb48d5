"""Top-level decision pipeline.

Acyclic graphs are no-instances; two nontrivial strong components give two
disjoint dicycles; transversal number at least 3 is always a yes (certificate
recovered by bounded search); the remaining cases route to the dedicated
solvers for transversal number 2 and 1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .cycles import Certificate, UndirectedCycle, find_any_dicycle, verify_certificate
from .digraph import Digraph, is_acyclic, strong_components
from .oracle import oracle_solve
from .tau1 import solve_tau1
from .tau2 import CapExceeded, solve_tau2
from .transversal import AT_LEAST_3, TauInfo, compute_tau_capped


@dataclass(frozen=True)
class SolveReport:
    verdict: str  # "yes" | "no"
    route: str
    certificate: Certificate | None
    tau: TauInfo
    elapsed: float


def solve(
    d: Digraph,
    oracle_cap: int = 10**6,
    k_budget: int = 8,
    use_switches: bool = True,
    workers: int = 1,
) -> SolveReport:
    t0 = time.perf_counter()

    def report(verdict, route, cert, tau):
        if cert is not None:
            assert verify_certificate(d, cert), f"unverifiable certificate on route {route}"
        return SolveReport(verdict, route, cert, tau, time.perf_counter() - t0)

    if is_acyclic(d):
        return report("no", "acyclic", None, TauInfo(0))
    nontrivial = [c for c in strong_components(d) if c.nontrivial]
    if len(nontrivial) >= 2:
        b1 = find_any_dicycle(d, forbidden=set(d.verts) - nontrivial[0].vertices)
        b2 = find_any_dicycle(d, forbidden=set(d.verts) - nontrivial[1].vertices)
        cert = Certificate(b1, UndirectedCycle(b2.arc_ids))
        return report("yes", "two-scc", cert, compute_tau_capped(d))

    tau = compute_tau_capped(d)
    if tau.tau == AT_LEAST_3:
        out = oracle_solve(d, oracle_cap)
        if out.verdict == "exceeded":
            raise CapExceeded("certificate search for transversal number >= 3 hit the cap")
        assert out.verdict == "yes", "transversal number >= 3 must be a yes-instance"
        return report("yes", "tau3", out.certificate, tau)
    if tau.tau == 2:
        verdict, cert, route = solve_tau2(d, tau, oracle_cap)
        return report(verdict, route, cert, tau)
    assert tau.tau == 1
    verdict, cert = solve_tau1(
        d, tau, k_budget=k_budget, use_switches=use_switches, workers=workers
    )
    return report(verdict, "tau1", cert, tau)
