"""Command-line front end.

Subcommands: classes, psi2, graph, beta, verify.  Every number printed is
produced by a library call; the CLI only formats.  Output ordering is
deterministic (labels sorted by their stable string form) so emitted files
are byte-stable across runs.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from invgen.autorbits import aut_action, beta, beta_fast
from invgen.gf import GFContext, gf_make, prime_power_split
from invgen.iggraph import (
    GraphCapError,
    components,
    diameter,
    graph_to_json,
    is_bipartite,
    lambda_graph,
    lambda_power,
    lambda_summary,
    n_lower_bound_report,
    to_dot,
)
from invgen.oracle import OracleCapError, OracleSession, oracle_cap
from invgen.psl2 import inventory
from invgen.structure import psi2_structural, verify_2covering

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3

ORACLE_VERIFY_DEFAULT = 13  # oracle cross-check in `verify` runs for q up to this
ORACLE_VERIFY_EXTENDED = (16, 25, 27)


class UsageError(Exception):
    pass


def _context(args) -> GFContext:
    if args.q is not None:
        if args.p is not None or args.f is not None:
            raise UsageError("give either --q or --p/--f, not both")
        pf = prime_power_split(args.q)
        if pf is None:
            raise UsageError(f"{args.q} is not a prime power")
        p, f = pf
    else:
        if args.p is None:
            raise UsageError("one of --q or --p is required")
        p, f = args.p, args.f if args.f is not None else 1
    ctx = gf_make(p, f)
    if ctx.q < 4:
        raise UsageError(f"q must be at least 4, got {ctx.q}")
    return ctx


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_range(spec: str) -> list[int]:
    try:
        lo_s, hi_s = spec.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError as exc:
        raise UsageError(f"bad range {spec!r}; expected like 4..13") from exc
    if lo < 4 or hi < lo:
        raise UsageError(f"range must satisfy 4 <= lo <= hi, got {spec!r}")
    return [q for q in range(lo, hi + 1) if prime_power_split(q)]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_classes(args) -> int:
    ctx = _context(args)
    inv = inventory(ctx)
    rows = inv.to_json()
    if args.format == "json":
        _emit(json.dumps({"q": ctx.q, "classes": rows}, indent=2) + "\n", args.out)
    elif args.format == "csv":
        lines = ["label,order,size"]
        lines += [f"{r['label']},{r['order']},{r['size']}" for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        width = max(len(r["label"]) for r in rows)
        lines = [f"{'label':<{width}}  order  size"]
        lines += [f"{r['label']:<{width}}  {r['order']:>5}  {r['size']}" for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_psi2(args) -> int:
    ctx = _context(args)
    inv = inventory(ctx)
    tables = {}
    if args.method in ("structural", "both"):
        tables["structural"] = psi2_structural(ctx, inv)
    if args.method in ("oracle", "both"):
        tables["oracle"] = OracleSession(ctx).psi2()
    table = tables.get("oracle") or tables["structural"]
    k = len(inv)
    prob = len(table) / (k * k)
    payload = table.to_json()
    payload["probability"] = prob
    if args.method == "both":
        payload["match"] = tables["structural"].pairs == tables["oracle"].pairs
    if args.format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    elif args.format == "csv":
        _emit(table.to_csv(), args.out)
    else:
        lines = [f"{a}  {b}" for a, b in table.sorted_pairs()]
        lines.append(f"count={len(table)} probability={prob:.6f}")
        if args.method == "both":
            lines.append(f"match={payload['match']}")
        _emit("\n".join(lines) + "\n", args.out)
    if args.method == "both" and not payload["match"]:
        print(f"psi2 mismatch between methods at q={ctx.q}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_graph(args) -> int:
    ctx = _context(args)
    inv = inventory(ctx)
    psi2 = psi2_structural(ctx, inv)
    if args.power == 1:
        g = lambda_graph(ctx, psi2, inv, plus=args.plus)
    else:
        g = lambda_power(ctx, args.power, psi2=psi2, inv=inv, plus=args.plus)
    ok, parts = is_bipartite(g)
    parts_arg = parts if ok else None
    if args.format == "dot":
        _emit(to_dot(g, parts_arg), args.out)
    else:
        _emit(json.dumps(graph_to_json(g, parts_arg), indent=2) + "\n", args.out)
    summary = (
        f"q={ctx.q} t={args.power} vertices={len(g.vertices)} edges={g.edge_count()} "
        f"components={len(components(g))} bipartite={ok} diameter={diameter(g)}"
    )
    print(summary, file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK


def cmd_beta(args) -> int:
    ctx = _context(args)
    inv = inventory(ctx)
    psi2 = psi2_structural(ctx, inv)
    action = aut_action(ctx, inv)
    part = beta(action, psi2)
    d = 2 if ctx.q % 2 == 1 else 1
    df = d * ctx.f
    floor_report = n_lower_bound_report(ctx, inv)
    exact_report = n_lower_bound_report(ctx, inv, beta_exact=part.beta)
    payload = {
        "q": ctx.q,
        "psi2_count": len(psi2),
        "out_order": df,
        "beta": part.beta,
        "beta_even": part.beta % 2 == 0,
        "bounds_ok": len(psi2) / df <= part.beta <= len(psi2),
        "n_lower_bound": floor_report.to_json(),
        "component_bound_at_beta": exact_report.to_json(),
    }
    if args.orbits:
        payload["orbits"] = part.to_json()["orbits"]
    if args.format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"q={ctx.q} |Psi2|={len(psi2)} |Out|={df} beta={part.beta}",
                 f"even={payload['beta_even']} bounds_ok={payload['bounds_ok']}",
                 f"certified floor bound: {floor_report.bound} "
                 f"(log2 {floor_report.log2_bound:.3f})",
                 f"component bound at beta: {exact_report.bound} "
                 f"(log2 {exact_report.log2_bound:.3f})"]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _expected_isolated(ctx: GFContext, inv) -> set[str]:
    """Isolated-vertex census from the published case analysis."""
    q, p = ctx.q, ctx.p
    if q == 7:
        return {e.label.str_form() for e in inv if e.order == 3}
    if q == 9:
        return {"inv", "unip:sq", "unip:nsq"}
    if q % 2 == 0:
        return {"unip"}
    if q % 4 == 1 or q != p:
        return {"inv"}
    return set()  # q = p = 3 mod 4, q != 7


def verify_q(ctx: GFContext, oracle: bool = False) -> dict:
    """Run every per-q check; returns {check_name: bool}."""
    q = ctx.q
    d = 2 if q % 2 == 1 else 1
    inv = inventory(ctx)
    checks: dict[str, bool] = {}
    checks["class_count"] = len(inv) == (q + 4 * d - 3) // d
    cover = verify_2covering(ctx, inv)
    checks["two_covering"] = cover.ok
    s = lambda_summary(ctx, inv)
    checks["bipartite"] = s.bipartite and s.parts_match_covering
    checks["connected"] = s.component_count == 1
    checks["diameter"] = s.diameter <= 3
    expected = _expected_isolated(ctx, inv)
    checks["isolated_census"] = set(s.isolated) == expected
    b = beta_fast(ctx, inv)
    checks["beta_even"] = b % 2 == 0
    checks["beta_bounds"] = s.psi2_count / (d * ctx.f) <= b <= s.psi2_count
    if q >= 64:
        k = s.class_count
        checks["probability"] = abs(s.psi2_count / (k * k) - 0.5) <= 10 / q
        checks["psi2_asymptotic"] = 0.8 <= s.psi2_count * 2 * d * d / (q * q) <= 1.2
    if oracle:
        table = OracleSession(ctx).psi2()
        structural = psi2_structural(ctx, inv)
        checks["oracle_equals_structural"] = table.pairs == structural.pairs
    return checks


def cmd_verify(args) -> int:
    qs = _parse_range(args.q_range)
    if not qs:
        raise UsageError(f"no prime powers in range {args.q_range}")
    cap = oracle_cap()
    results = {}
    failures = []
    for q in qs:
        p, f = prime_power_split(q)
        ctx = gf_make(p, f)
        use_oracle = q <= min(ORACLE_VERIFY_DEFAULT, cap) or (
            args.extended and q in ORACLE_VERIFY_EXTENDED and q <= cap
        )
        checks = verify_q(ctx, oracle=use_oracle)
        results[q] = checks
        failures += [f"q={q}:{name}" for name, ok in checks.items() if not ok]
    payload = {
        "range": args.q_range,
        "extended": args.extended,
        "pass": not failures,
        "failures": failures,
        "checks": {str(q): results[q] for q in qs},
    }
    text = json.dumps(payload, indent=2) + "\n"
    _emit(text, args.out)
    if failures:
        print("FAILED: " + ", ".join(failures), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_q_args(sub) -> None:
    sub.add_argument("--q", type=int, default=None, help="field size, a prime power >= 4")
    sub.add_argument("--p", type=int, default=None, help="characteristic (with --f)")
    sub.add_argument("--f", type=int, default=None, help="extension degree (with --p)")
    sub.add_argument("--out", default=None, help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invgen",
        description="Invariably generating graphs of PSL(2,q) and its powers",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sc = subs.add_parser("classes", help="conjugacy class inventory")
    _add_q_args(sc)
    sc.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sc.set_defaults(func=cmd_classes)

    sp = subs.add_parser("psi2", help="invariably generating class pairs")
    _add_q_args(sp)
    sp.add_argument("--method", choices=("structural", "oracle", "both"),
                    default="structural")
    sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sp.set_defaults(func=cmd_psi2)

    sg = subs.add_parser("graph", help="generating graph of S or S^t")
    _add_q_args(sg)
    sg.add_argument("--power", type=int, default=1, help="direct-power exponent t")
    sg.add_argument("--plus", action="store_true", help="drop isolated vertices")
    sg.add_argument("--format", choices=("dot", "json"), default="json")
    sg.set_defaults(func=cmd_graph)

    sb = subs.add_parser("beta", help="Aut-orbit count on Psi2 and bound report")
    _add_q_args(sb)
    sb.add_argument("--orbits", action="store_true", help="include the orbit partition")
    sb.add_argument("--format", choices=("table", "json"), default="table")
    sb.set_defaults(func=cmd_beta)

    sv = subs.add_parser("verify", help="run the verification suite over a q range")
    sv.add_argument("--q-range", required=True, help="inclusive range, e.g. 4..13")
    sv.add_argument("--extended", action="store_true",
                    help="also run the extended oracle set {16,25,27}")
    sv.add_argument("--out", default=None)
    sv.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses its own exit codes
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OracleCapError, GraphCapError) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
