"""Command-line front end.

Subcommands:
  info        print the context constants (N, P, omega, omega^{1/2}, |g(1)|)
  verify      run one relation (or `all`) on seeded random admissible samples
  sixj        compute a (charged) 6j tensor and dump it as JSON
  tetra-eval  evaluate the state-selected tensor entry of a decorated tetrahedron

Exit codes: 0 pass, 1 fail, 2 usage error.  The environment variable
CYCLIC6J_TOL overrides the default per-relation tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .context import BranchSearchError, DomainError, make_context
from .charged import ChargePair, c_sixj
from .harness import RELATIONS, run_all, run_relation
from .intertwine import sixj
from .specfun import g_one
from .tetra import DecoratedTetrahedron, evaluate_xi, reps_from_cocycle
from .weylrep import StandardRep, fuse_triple_admissible


def _env_tol() -> float | None:
    raw = os.environ.get("CYCLIC6J_TOL")
    return float(raw) if raw else None


def _emit(doc, args) -> None:
    if getattr(args, "format", "json") == "json":
        text = json.dumps(doc, indent=2, sort_keys=True)
    else:
        text = _as_text(doc)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _as_text(doc) -> str:
    lines = []
    reports = doc if isinstance(doc, list) else [doc]
    for r in reports:
        if "relation" in r:
            status = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{status} {r['relation']} N={r['N']} samples={r['samples']} "
                         f"seed={r['seed']} max_residual={r['max_residual']:.3e} "
                         f"tol={r['tolerance']:.1e}")
            if r.get("details"):
                lines.append(f"     details: {json.dumps(r['details'], sort_keys=True)}")
        else:
            lines.append(json.dumps(r, sort_keys=True))
    return "\n".join(lines)


def cmd_info(args) -> int:
    ctx = make_context(args.N)
    doc = {
        "N": ctx.N,
        "P": ctx.P,
        "omega": [ctx.omega.real, ctx.omega.imag],
        "omega_half": [ctx.omega_half.real, ctx.omega_half.imag],
        "omega_half_power": ctx.P + 1,
        "g1": [g_one(ctx).real, g_one(ctx).imag],
        "abs_g1": abs(g_one(ctx)),
        "sqrt_N": math.sqrt(ctx.N),
        "tol_rel": ctx.tol_rel,
        "tol_abs": ctx.tol_abs,
    }
    _emit(doc, args)
    return 0


def _check_N(N: int) -> int:
    if N % 2 == 0 or not 3 <= N <= 13:
        raise DomainError(f"N must be odd with 3 <= N <= 13, got {N} "
                          "(double-precision conditioning degrades beyond 13)")
    return N


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else _env_tol()
    sweep = [args.N] if args.N is not None else [3, 5, 7]
    reports = []
    for N in map(_check_N, sweep):
        if args.relation == "all":
            reports.extend(run_all(N, args.samples, args.seed, tol))
        else:
            reports.append(run_relation(args.relation, N, args.samples, args.seed, tol))
    docs = [r.to_json() for r in reports]
    _emit(docs if len(docs) > 1 else docs[0], args)
    return 0 if all(r.passed for r in reports) else 1


def cmd_sixj(args) -> int:
    ctx = make_context(args.N)
    if args.params:
        with open(args.params) as fh:
            p = json.load(fh)
        reps = [StandardRep.from_json(p[k]) for k in ("rho", "mu", "nu")]
    else:
        vals = [complex(v) for v in args.values]
        reps = [StandardRep.make(ctx, vals[2 * i], vals[2 * i + 1]) for i in range(3)]
    triple = fuse_triple_admissible(ctx, *reps)
    tensor = sixj(ctx, triple)
    if args.charges:
        a, c = (int(v) for v in args.charges.split(","))
        doc = c_sixj(ctx, tensor, ChargePair.make(ctx, a, c)).to_json()
    else:
        doc = tensor.to_json()
    _emit(doc, args)
    return 0


def cmd_tetra_eval(args) -> int:
    ctx = make_context(args.N)
    with open(args.input) as fh:
        doc = json.load(fh)
    tet = DecoratedTetrahedron.from_json(doc)
    triple = reps_from_cocycle(ctx, tet)
    value = evaluate_xi(ctx, tet, use_charges=args.charged)
    from .weylrep import psi_param
    from .specfun import rel_residual
    psi_prod = (psi_param(ctx, triple.rho) * psi_param(ctx, triple.mu)).matrix()
    out = {
        "xi": [value.real, value.imag],
        "diagnostics": {
            "convention_residual": _conv_res(ctx, triple),
            "psi_multiplicativity": rel_residual(psi_prod, tet.cocycle["e02"].matrix()),
            "branches": list(triple.branches),
        },
    }
    _emit(out, args)
    return 0


def _conv_res(ctx, triple) -> float:
    from .weylrep import convention_residual
    return convention_residual(ctx, triple)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclic6j", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="print context constants")
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("verify", help="run a seeded verification relation")
    p.add_argument("relation", choices=sorted(RELATIONS) + ["all"])
    p.add_argument("--N", type=int, default=None,
                   help="odd N <= 13; default sweeps 3, 5, 7")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sixj", help="compute and dump a (charged) 6j tensor")
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--params", help="JSON file with rho/mu/nu parameter blocks")
    p.add_argument("--values", nargs=6, metavar="C",
                   help="inline a_rho y_rho a_mu y_mu a_nu y_nu (complex literals)")
    p.add_argument("--charges", help="charge pair 'a,c'")
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sixj)

    p = sub.add_parser("tetra-eval", help="evaluate a decorated tetrahedron file")
    p.add_argument("input")
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--charged", action="store_true",
                   help="use the integral charge (halved mod N)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tetra_eval)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (DomainError, BranchSearchError, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
