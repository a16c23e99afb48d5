"""Command-line front end.

Exit codes: 0 yes / valid, 1 no / invalid, 2 input or usage error, 3 a
resource cap was exceeded.  Reports are line-oriented `key: value`.
"""

from __future__ import annotations

import argparse
import random
import sys

from .cycles import (
    format_certificate,
    parse_certificate,
    verify_certificate,
)
from .digraph import Digraph, ParseError, format_digraph, parse_digraph, strong_components
from .hardness import (
    bipartite_to_digraph,
    format_dimacs,
    parse_dimacs,
    random_cnf,
    sat_to_bipartite,
)
from .oracle import oracle_solve
from .pipeline import solve
from .structures import (
    classify_strong_no_instance,
    gen_multiwheel,
    gen_trivault,
    gen_vault,
)
from .tau2 import CapExceeded
from .transversal import compute_tau_capped

YES, NO, USAGE, CAPPED = 0, 1, 2, 3


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str) -> Digraph:
    return parse_digraph(_read(path))


def cmd_solve(args) -> int:
    d = _load_graph(args.graph)
    try:
        rep = solve(
            d,
            oracle_cap=args.cap,
            k_budget=args.k_budget,
            use_switches=not args.no_switches,
            workers=args.parallel,
        )
    except CapExceeded as exc:
        print("verdict: unknown")
        print(f"error: {exc}")
        return CAPPED
    print(f"verdict: {rep.verdict}")
    print(f"route: {rep.route}")
    print(f"tau: {rep.tau.tau}")
    print(f"elapsed: {rep.elapsed:.6f}")
    if rep.certificate is not None:
        out = args.cert_out or (args.graph + ".cert")
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(format_certificate(rep.certificate))
        print(f"certificate: {out}")
    return YES if rep.verdict == "yes" else NO


def cmd_classify(args) -> int:
    d = _load_graph(args.graph)
    tau = compute_tau_capped(d)
    print(f"tau: {tau.tau}")
    if tau.tau == 1:
        print("transversals: " + ",".join(str(v) for v in tau.one_transversals))
    if tau.tau == 2:
        u, v = tau.two_transversal
        print(f"two-transversal: {u},{v}")
    comps = strong_components(d)
    nontrivial = [c for c in comps if c.nontrivial]
    print(f"scc-count: {len(comps)}")
    print(f"nontrivial-scc-count: {len(nontrivial)}")
    if tau.tau in (0, 1, 2):
        from .dag_linkage import is_intercyclic

        ok, _ = is_intercyclic(d, tau)
        print(f"intercyclic: {'true' if ok else 'false'}")
        if tau.tau == 2 and ok and len(nontrivial) == 1:
            core, _ = d.restricted_to(nontrivial[0].vertices)
            verdict = classify_strong_no_instance(core)
            if verdict.kind == "vault":
                print(f"family: vault ell={verdict.decomposition.ell}")
            elif verdict.kind == "multiwheel":
                dec = verdict.decomposition
                print(f"family: multiwheel p={dec.p} kind={dec.kind}")
            elif verdict.kind == "trivault":
                print("family: trivault")
            else:
                print("family: none")
    return 0


def cmd_verify(args) -> int:
    d = _load_graph(args.graph)
    cert = parse_certificate(_read(args.certificate))
    try:
        ok = verify_certificate(d, cert)
    except ValueError as exc:
        print(f"error: {exc}")
        return USAGE
    print(f"valid: {'true' if ok else 'false'}")
    return YES if ok else NO


def cmd_oracle(args) -> int:
    d = _load_graph(args.graph)
    out = oracle_solve(d, args.cap)
    print(f"verdict: {out.verdict}")
    if out.certificate is not None:
        path = args.cert_out or (args.graph + ".cert")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(format_certificate(out.certificate))
        print(f"certificate: {path}")
    if out.verdict == "exceeded":
        return CAPPED
    return YES if out.verdict == "yes" else NO


def _write_output(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.family == "vault":
        host, _ = gen_vault(
            rng,
            ell=args.ell,
            max_wall=args.max_wall,
            max_cross=args.max_cross,
            plant_niche=args.niche,
            subdivision_prob=args.subdivide,
        )
        _write_output(args, format_digraph(host))
    elif args.family == "multiwheel":
        host, _ = gen_multiwheel(
            rng,
            p=args.p,
            split=args.split,
            max_spokes=args.max_spokes,
            subdivision_prob=args.subdivide,
        )
        _write_output(args, format_digraph(host))
    elif args.family == "trivault":
        host, _ = gen_trivault(
            rng,
            plant_niche=args.niche,
            subdivision_prob=args.subdivide,
            extra_arcs=args.extra_arcs,
        )
        _write_output(args, format_digraph(host))
    else:  # sat3
        f = random_cnf(rng, args.vars, args.clauses)
        _write_output(args, format_dimacs(f))
    return 0


def cmd_reduce(args) -> int:
    f = parse_dimacs(_read(args.cnf))
    b = sat_to_bipartite(f)
    d = bipartite_to_digraph(b)
    _write_output(args, format_digraph(d))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cyclepair",
        description=(
            "decide whether a multidigraph has a directed cycle and a "
            "vertex-disjoint undirected cycle, with certificates"
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance and write a certificate")
    p.add_argument("graph")
    p.add_argument("--cert-out", default=None)
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--k-budget", type=int, default=8)
    p.add_argument("--no-switches", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--parallel", type=int, default=1, metavar="N",
                   help="worker threads for candidate scans (result is order-canonical)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="transversal number, components, family")
    p.add_argument("graph")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="check a certificate file against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force reference decision")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--cert-out", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate benchmark instances")
    fam = p.add_subparsers(dest="family", required=True)
    v = fam.add_parser("vault")
    v.add_argument("--ell", type=int, default=5)
    v.add_argument("--max-wall", type=int, default=1)
    v.add_argument("--max-cross", type=int, default=1)
    v.add_argument("--niche", action="store_true")
    v.add_argument("--subdivide", type=float, default=0.0)
    m = fam.add_parser("multiwheel")
    m.add_argument("--p", type=int, default=3)
    m.add_argument("--split", action="store_true")
    m.add_argument("--max-spokes", type=int, default=1)
    m.add_argument("--subdivide", type=float, default=0.0)
    t = fam.add_parser("trivault")
    t.add_argument("--niche", action="store_true")
    t.add_argument("--subdivide", type=float, default=0.0)
    t.add_argument("--extra-arcs", type=int, default=0)
    s3 = fam.add_parser("sat3")
    s3.add_argument("--vars", type=int, required=True)
    s3.add_argument("--clauses", type=int, required=True)
    for sp in (v, m, t, s3):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("-o", "--output", default=None)
        sp.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="reduce a 3-CNF instance to a graph instance")
    red = p.add_subparsers(dest="what", required=True)
    r = red.add_parser("sat3")
    r.add_argument("cnf")
    r.add_argument("-o", "--output", default=None)
    r.set_defaults(func=cmd_reduce)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
