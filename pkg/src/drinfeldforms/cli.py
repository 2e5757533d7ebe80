"""Command-line front end.

Subcommands:

  dims    print genus, cusp count, expected and computed dimensions
  hecke   emit operator matrices (json/csv/latex), optionally certified
  verify  run a verification suite over a (q, n, k) grid
  graph   export the quotient graph (dot/json)

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
bound exceeded.  Outputs are deterministic for a fixed configuration and
seed.
"""

import argparse
import os
import sys

from .cocycles import CocycleSpace
from .errors import ReachError, ResourceBoundError, UsageError
from .fq import field
from .groups import group_context
from .hecke import HeckeEngine, ordinary_certificate
from .rings import poly_is_irreducible
from .serialize import canonical_json_dumps, matrix_to_csv, matrix_to_latex, parse_poly
from .tree import QuotientGraph
from .verify import (
    congruence_suite_items,
    goss_suite_items,
    paper_suite_items,
    run_suite,
    suite_passed,
)

MAX_Q = 64


def _env_max_orbits():
    raw = os.environ.get("DRINFELDFORMS_MAX_ORBITS")
    return int(raw) if raw else 200000


def _check_q(q):
    try:
        field(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if q > MAX_Q:
        raise UsageError(f"q = {q} exceeds the supported bound {MAX_Q}")


def _write(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_dims(args):
    _check_q(args.q)
    ctx = group_context(args.q, args.n)
    space = CocycleSpace(
        ctx,
        args.k,
        depth=args.depth,
        max_orbits=args.max_orbits,
    )
    expected = ctx.dim_sk(args.k)
    report = {
        "q": args.q,
        "n": args.n,
        "k": args.k,
        "g": ctx.genus(),
        "h": ctx.cusp_count(),
        "dim": expected,
        "r": ctx.ordinary_rank(),
        "computed_dim": space.dim,
    }
    _write(canonical_json_dumps(report), args.out)
    return 0 if space.dim == expected else 1


def _parse_ops(ctx, specs):
    ops = []
    for spec in specs:
        if spec == "Ut":
            ops.append(("Ut", None))
            continue
        if ":" not in spec:
            raise UsageError(f"bad operator spec {spec!r}: expected Ut, Tm:<poly>, Diamond:<poly>")
        kind, _, arg = spec.partition(":")
        p = parse_poly(ctx.fq, arg)
        if kind == "Tm":
            if not (p.is_monic() and poly_is_irreducible(p) and p.vt() == 0):
                raise UsageError(f"Tm needs a monic irreducible polynomial prime to t, got {p}")
            ops.append(("Tm", p))
        elif kind == "Diamond":
            if p.vt() != 0:
                raise UsageError(f"Diamond needs a unit of A_n, got {p}")
            ops.append(("Diamond", p))
        else:
            raise UsageError(f"unknown operator kind {kind!r}")
    return ops


def cmd_hecke(args):
    _check_q(args.q)
    ctx = group_context(args.q, args.n)
    ops = _parse_ops(ctx, args.op or ["Ut"])
    space = CocycleSpace(ctx, args.k, depth=args.depth, max_orbits=args.max_orbits)
    engine = HeckeEngine(space)
    built = []
    heckes = []
    ut = None
    for kind, arg in ops:
        if kind == "Ut":
            ut = engine.u_t()
            built.append(ut)
        elif kind == "Tm":
            tm = engine.t_m(arg)
            heckes.append(tm)
            built.append(tm)
        else:
            built.append(engine.diamond(arg))
    payload = {"operators": [op.to_json_dict() for op in built]}
    ok = True
    if args.certify:
        if ut is None:
            ut = engine.u_t()
        cert = ordinary_certificate(ut, heckes, args.k)
        payload["certificate"] = cert.to_json_dict()
        ok = cert.valid(allow_scalar_off=(args.k > 2))
    if args.format == "json":
        text = canonical_json_dumps(payload)
    elif args.format == "csv":
        text = "".join(f"# {op.name}\n" + matrix_to_csv(op.matrix) for op in built)
    elif args.format == "latex":
        text = "".join(f"% {op.name}\n" + matrix_to_latex(op.matrix) for op in built)
    else:
        raise UsageError(f"unsupported hecke output format {args.format!r}")
    _write(text, args.out)
    return 0 if ok else 1


def cmd_verify(args):
    qs = args.q or [2, 3]
    for q in qs:
        _check_q(q)
    if args.suite == "paper":
        items = paper_suite_items(qs, nmax=args.nmax, kmax=args.kmax, seed=args.seed)
    elif args.suite == "goss":
        items = goss_suite_items(qs, imax=args.imax)
    elif args.suite == "congruences":
        nmax = args.nmax or 3
        items = congruence_suite_items(qs, lambda q: nmax)
    else:
        raise UsageError(f"unknown suite {args.suite!r}")
    records = run_suite(items, jobs=args.jobs)
    ok = suite_passed(records)
    payload = {
        "suite": args.suite,
        "passed": ok,
        "items": records,
    }
    _write(canonical_json_dumps(payload), args.out)
    return 0 if ok else 1


def cmd_graph(args):
    _check_q(args.q)
    ctx = group_context(args.q, args.n)
    graph = QuotientGraph(ctx, args.depth, max_orbits=args.max_orbits)
    if args.format == "dot":
        text = graph.to_dot()
    elif args.format == "json":
        text = canonical_json_dumps(graph.to_json_dict())
    else:
        raise UsageError(f"unsupported graph output format {args.format!r}")
    _write(text, args.out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="drinfeldforms",
        description="Exact harmonic-cocycle computations for Drinfeld cuspform "
        "spaces of level Gamma_1(t^n): dimensions, Hecke/diamond matrices, and "
        "the verification suites.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, k_default=2):
        sp.add_argument("--q", type=int, required=True, help="field size, a prime power")
        sp.add_argument("--n", type=int, required=True, help="level exponent, n >= 1")
        sp.add_argument("--depth", type=int, default=None, help="override truncation depth")
        sp.add_argument("--max-orbits", type=int, default=_env_max_orbits())
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    d = sub.add_parser("dims", help="dimension and genus data")
    common(d)
    d.add_argument("--k", type=int, default=2)
    d.set_defaults(func=cmd_dims)

    h = sub.add_parser("hecke", help="operator matrices")
    common(h)
    h.add_argument("--k", type=int, default=2)
    h.add_argument("--op", action="append", help="Ut | Tm:<poly> | Diamond:<poly>")
    h.add_argument("--format", default="json", choices=["json", "csv", "latex"])
    h.add_argument("--certify", action="store_true", help="attach the ordinary certificate")
    h.set_defaults(func=cmd_hecke)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="paper", choices=["paper", "goss", "congruences"])
    v.add_argument("--q", type=int, action="append", help="repeatable; default 2 and 3")
    v.add_argument("--nmax", "--n", type=int, default=None, dest="nmax")
    v.add_argument("--kmax", type=int, default=4)
    v.add_argument("--imax", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("graph", help="quotient graph export")
    common(g)
    g.add_argument("--format", default="dot", choices=["dot", "json"])
    g.set_defaults(func=cmd_graph)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ResourceBoundError as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return 3
    except ReachError as exc:
        print(f"evaluation reach exceeded: {exc}", file=sys.stderr)
        return 3


def main_entry():
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
