"""Command line front end: code/orbits/verify/bounds/export subcommands.

Exit codes: 0 success, 1 at least one verification check failed,
2 guard or usage error.
"""

import argparse
import json
import os
import sys

from . import bounds as bo
from . import codes as co
from . import geometry as ge
from . import verify as vf
from .fields import FieldContext, GuardExceeded, factor_prime_power, make_context


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _context(args) -> FieldContext:
    if args.p is not None or args.m is not None:
        if args.q is not None:
            raise ValueError("give either --q or --p/--m, not both")
        if args.p is None or args.m is None:
            raise ValueError("--p and --m must be given together")
        p, m = args.p, args.m
        if factor_prime_power(p) != (p, 1):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("--m must be positive")
    elif args.q is not None:
        p, m = factor_prime_power(args.q)
    else:
        raise ValueError("one of --q or --p/--m is required")
    return make_context(p, m)


def _require_big(q: int, big: bool, what: str) -> None:
    if q >= 8 and not big:
        raise GuardExceeded(f"{what} at q = {q} takes a while; pass --big to allow q >= 8")


# ---------------------------------------------------------------------------
# subcommands


def cmd_code(args) -> int:
    ctx = _context(args)
    q, n = ctx.q, ctx.q**3 + 1
    _require_big(q, args.big, "the hyperplane sweep")
    dist = co.weight_distribution_geometric(ctx, threads=args.threads, guard=args.guard_points)
    dist.validate(q, 8)
    d = dist.min_distance
    if args.format == "json":
        payload = {"q": q, "n": n, "k": 8, "d": d, "distribution": dist.to_json_dict()}
        _emit(_json_text(payload), args.out)
    elif args.format == "csv":
        rows = ["weight,multiplicity"]
        rows += [f"{w},{dist[w]}" for w in dist.weights]
        _emit("\n".join(rows) + "\n", args.out)
    else:
        _emit(f"[{n},8,{d}]_{q}\n{dist.table_notation()}\n", args.out)
    return 0


def cmd_orbits(args) -> int:
    ctx = _context(args)
    report = ge.orbit_decompose(ctx, guard=args.guard_points, keep_labels=False)
    if args.format == "json":
        _emit(_json_text(report.to_json_dict(ctx)), args.out)
        return 0
    flat = [ge.flatten(ctx, P) for P in report.representatives]
    if args.format == "csv":
        rows = ["orbit,size,section,stabilizer,representative"]
        for i in range(4):
            coords = " ".join(str(c) for c in flat[i])
            rows.append(
                f"{i},{report.sizes[i]},{report.sections[i]},"
                f"{report.stabilizer_orders[i]},{coords}"
            )
        _emit("\n".join(rows) + "\n", args.out)
        return 0
    lines = [
        f"PG(7,{ctx.q}): {report.num_points} points, group order {report.group_order}",
        f"{'orbit':<6}{'size':>10}  {'section':>7}  {'stabilizer':>10}  representative",
    ]
    for i in range(4):
        coords = "(" + ",".join(str(c) for c in flat[i]) + ")"
        lines.append(
            f"{i:<6}{report.sizes[i]:>10}  {report.sections[i]:>7}  "
            f"{report.stabilizer_orders[i]:>10}  {coords}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    ctx = _context(args)
    names = args.check or None
    if names:
        known = set(vf.check_names(ctx.q))
        for name in names:
            if name not in known:
                raise ValueError(f"unknown or inapplicable check {name!r} at q = {ctx.q}")
    results = vf.run_checks(ctx, threads=args.threads, guard=args.guard_points, names=names)
    if args.format == "json":
        payload = [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]
        _emit(_json_text(payload), args.out)
    else:
        lines = [f"[{'PASS' if r.ok else 'FAIL'}] {r.name}: {r.detail}" for r in results]
        passed = sum(r.ok for r in results)
        lines.append(f"{passed}/{len(results)} checks passed")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(r.ok for r in results) else 1


def cmd_bounds(args) -> int:
    ctx = _context(args)
    q = ctx.q
    if args.dual:
        if args.t:
            raise ValueError("--dual and --t do not combine")
        cert = bo.dual_sphere_packing_certificate(q)
        if args.format == "json":
            _emit(_json_text(cert.to_json_dict()), args.out)
        else:
            _emit(
                f"sphere size {cert.sphere} > q^7 = {cert.threshold}; "
                f"no [{q**3},{q**3 - 7},5]_{q} exists, dual n-optimal\n",
                args.out,
            )
        return 0
    if args.t == 0 and q == 2:
        report = bo.n_optimality_report(q)
        if args.format == "json":
            _emit(_json_text(report.to_json_dict()), args.out)
        else:
            _emit(f"primal: {report.primal_note}\ndual: {report.dual_note}\n", args.out)
        return 0
    cert = bo.ovoid_lp_certificate(q, args.t)
    if args.format == "json":
        payload = {"certificate": cert.to_json_dict()}
        if args.t == 0:
            payload["optimality"] = bo.n_optimality_report(q).to_json_dict()
        _emit(_json_text(payload), args.out)
        return 0
    f0 = cert.f_kraw[0]
    num = cert.f(0)
    ratio = f"{num}/{f0} = " if f0.denominator == 1 else "f(0)/f_0 = "
    lines = [
        f"LP certificate for length {cert.n}, distance {cert.d}, q = {q}, t = {cert.t}",
        f"roots: {', '.join(str(r) for r in cert.roots)}",
        f"Krawtchouk coefficients: {', '.join(str(c) for c in cert.f_kraw)}",
        f"LP bound {ratio}{cert.bound} < q^8 = {q**8}: verdict valid",
    ]
    if args.t == 0:
        report = bo.n_optimality_report(q)
        lines.append(f"no [{cert.n},8,{cert.d}]_{q} exists, so the code is n-optimal")
        lines.append(f"dual: {report.dual_note}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_export(args) -> int:
    ctx = _context(args)
    q = ctx.q
    fmt = args.format
    if args.what == "genmatrix":
        gm = co.build_generator_matrix(ctx)
        if fmt == "json":
            _emit(_json_text(gm.to_json_dict()), args.out)
        else:
            _emit(gm.to_csv(), args.out)
        return 0
    if args.what == "ovoid":
        pts = [ge.flatten(ctx, P) for P in ge.ovoid(ctx)]
        if fmt == "json":
            _emit(_json_text({"q": q, "points": [list(P) for P in pts]}), args.out)
        else:
            rows = [",".join(str(c) for c in P) for P in pts]
            _emit("\n".join(rows) + "\n", args.out)
        return 0
    # dual-distribution
    _require_big(q, args.big, "the dual distribution")
    n = q**3 + 1
    dist = co.weight_distribution_geometric(ctx, threads=args.threads, guard=args.guard_points)
    dual = co.macwilliams(dist, n, 8, q)
    if fmt == "csv":
        rows = ["weight,multiplicity"]
        rows += [f"{w},{dual[w]}" for w in dual.weights]
        _emit("\n".join(rows) + "\n", args.out)
    else:
        _emit(_json_text({"q": q, "n": n, "k": n - 8, "distribution": dual.to_json_dict()}), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(sp) -> None:
    sp.add_argument("--q", type=int, default=None, help="field order, a prime power")
    sp.add_argument("--p", type=int, default=None, help="field characteristic (with --m)")
    sp.add_argument("--m", type=int, default=None, help="extension degree (with --p)")
    sp.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("OVOID_THREADS", "1")),
        help="worker threads for sweeps (default: OVOID_THREADS or 1)",
    )
    sp.add_argument(
        "--guard-points",
        type=int,
        default=ge.DEFAULT_POINT_GUARD,
        help="refuse point enumerations beyond this many points",
    )
    sp.add_argument(
        "--format",
        choices=("table", "json", "csv"),
        default="table",
        help="output format",
    )
    sp.add_argument("--out", default=None, help="write output to this file instead of stdout")
    sp.add_argument("--big", action="store_true", help="allow the slow sweeps at q >= 8")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ovoidcodes",
        description="Ovoid code tables, orbit reports, optimality certificates.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("code", help="print [n,k,d]_q and the weight distribution")
    _add_common(sp)
    sp.set_defaults(fn=cmd_code)

    sp = sub.add_parser("orbits", help="print the four-orbit report for PG(7,q)")
    _add_common(sp)
    sp.set_defaults(fn=cmd_orbits)

    sp = sub.add_parser("verify", help="run the applicable checks and print a pass/fail ledger")
    _add_common(sp)
    sp.add_argument(
        "--check",
        action="append",
        default=None,
        metavar="NAME",
        help="run only this named check (repeatable)",
    )
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("bounds", help="emit an LP or sphere-packing certificate")
    _add_common(sp)
    sp.add_argument("--t", type=int, default=0, help="shift parameter for punctured lengths")
    sp.add_argument("--dual", action="store_true", help="sphere-packing certificate for the dual")
    sp.set_defaults(fn=cmd_bounds)

    sp = sub.add_parser("export", help="write generator matrix, point set, or dual distribution")
    _add_common(sp)
    sp.add_argument(
        "--what",
        choices=("genmatrix", "ovoid", "dual-distribution"),
        required=True,
        help="artifact to export",
    )
    sp.set_defaults(fn=cmd_export)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads < 1:
        ap.exit(2, "error: --threads must be at least 1\n")
    try:
        return args.fn(args)
    except (GuardExceeded, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
