"""Command-line interface: ``ehrhartkit <subcommand> ...``.

Exit codes: 0 success, 1 invalid input or resource limit, 2 verification
mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import families as fam
from .counting import DEFAULT_GUARD, STRATEGIES, count
from .ehrhart import count_positive_real_roots, delta_from_poly, ehrhart_polynomial
from .errors import EhrhartError
from .exactmath import QPolynomial
from .polytope import VPolytope, facets
from .verify import run_all


def _load_polytope(path: str) -> VPolytope:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise EhrhartError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise EhrhartError(f"malformed JSON in {path}: {exc}") from exc
    try:
        return VPolytope.from_json(data)
    except (TypeError, ValueError, KeyError) as exc:
        raise EhrhartError(f"invalid polytope in {path}: {exc}") from exc


def _emit(args, payload: dict, table: str, latex: Optional[str] = None, t0: float = 0.0) -> None:
    if args.format == "table":
        print(table)
    elif args.format == "latex" and latex is not None:
        print(latex)
    else:
        if not args.no_timing:
            payload["seconds"] = round(time.perf_counter() - t0, 4)
        print(json.dumps(payload, indent=2))


def _poly_payload(poly: QPolynomial) -> dict:
    return {"polynomial": poly.to_json(), "text": poly.render(), "latex": poly.latex()}


def cmd_count(args) -> int:
    t0 = time.perf_counter()
    P = _load_polytope(args.polytope)
    result = count(P, args.n, strategy=args.strategy, guard=args.guard, jobs=args.jobs)
    _emit(args, {"n": result.n, "count": result.count, "strategy": result.strategy},
          f"{result.count}\t({result.strategy})", t0=t0)
    return 0


def cmd_poly(args) -> int:
    t0 = time.perf_counter()
    P = _load_polytope(args.polytope)
    poly = ehrhart_polynomial(P, jobs=args.jobs)
    _emit(args, _poly_payload(poly), poly.render(), poly.latex(), t0)
    return 0


def cmd_delta(args) -> int:
    t0 = time.perf_counter()
    P = _load_polytope(args.polytope)
    delta = delta_from_poly(ehrhart_polynomial(P, jobs=args.jobs), P.dim)
    _emit(args, {"delta": delta.to_json()}, " ".join(map(str, delta)), t0=t0)
    return 0


def cmd_facets(args) -> int:
    t0 = time.perf_counter()
    H = facets(_load_polytope(args.polytope))
    rows = [f"{list(a)} . x == {b}" for a, b in H.equalities]
    rows += [f"{list(a)} . x <= {b}" for a, b in H.inequalities]
    _emit(args, H.to_json(), "\n".join(rows), t0=t0)
    return 0


def cmd_roots(args) -> int:
    t0 = time.perf_counter()
    poly = ehrhart_polynomial(_load_polytope(args.polytope), jobs=args.jobs)
    roots = count_positive_real_roots(poly)
    payload = {"positive_real_roots": roots, **_poly_payload(poly)}
    _emit(args, payload, f"{roots} positive real roots of {poly.render()}", t0=t0)
    return 0


def _parse_negatives(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError as exc:
        raise EhrhartError(f"--negatives expects comma-separated integers, got {text!r}") from exc


def cmd_family(args) -> int:
    t0 = time.perf_counter()
    try:
        m = None if args.m in (None, "auto") else int(args.m)
    except ValueError as exc:
        raise EhrhartError(f"--m expects an integer or 'auto', got {args.m!r}") from exc
    spec = fam.FamilySpec(args.kind, args.d, m, args.k, _parse_negatives(args.negatives))
    P, poly, spec = fam.build_family(spec)
    payload = {"spec": spec.to_json(), "polytope": P.to_json(), **_poly_payload(poly)}
    lines = [f"{spec.kind}: {P.describe()} (dim {P.dim})"]
    lines += [f"  {step}" for step in spec.trace]
    lines.append(f"  i(P, n) = {poly.render()}")
    _emit(args, payload, "\n".join(lines), poly.latex(), t0)
    return 0


def cmd_min_m(args) -> int:
    t0 = time.perf_counter()
    m = fam.min_m_all_negative(args.d)
    poly = fam.theorem_main_polynomial(args.d, m)
    _emit(args, {"d": args.d, "m": m, **_poly_payload(poly)}, f"d={args.d}: m={m}", t0=t0)
    return 0


def cmd_verify_paper(args) -> int:
    timing = not args.no_timing

    def progress(number, checks):
        if args.format == "table":
            bad = sum(not c.passed for c in checks)
            print(f"criterion {number}: {len(checks) - bad}/{len(checks)} passed", file=sys.stderr)

    report = run_all(progress)
    payload = report.to_json(timing)
    if args.report:
        Path(args.report).write_text(json.dumps(payload, indent=2) + "\n")
    if args.format == "table":
        print(report.table(timing))
    else:
        print(json.dumps(payload, indent=2))
    if not report.ok:
        for c in report.checks:
            if not c.passed:
                detail = json.dumps(c.diff) if c.diff else f"expected {c.expected}, got {c.actual}"
                print(f"MISMATCH C{c.criterion} {c.name}: {detail}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table", "latex"), default="json")
    common.add_argument("--no-timing", action="store_true", help="omit timing fields")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    common.add_argument("--guard", type=int, default=DEFAULT_GUARD,
                        help="candidate-point limit for the naive box count")

    parser = argparse.ArgumentParser(
        prog="ehrhartkit",
        description="Exact Ehrhart polynomials and sign patterns of lattice polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="lattice points of nP")
    p.add_argument("polytope")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strategy", choices=("auto",) + STRATEGIES, default="auto")
    p.set_defaults(func=cmd_count)

    for name, func, text in (
        ("poly", cmd_poly, "Ehrhart polynomial"),
        ("delta", cmd_delta, "delta-vector"),
        ("facets", cmd_facets, "H-representation"),
        ("roots", cmd_roots, "number of positive real roots of i(P, n)"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("polytope")
        p.set_defaults(func=func)

    p = sub.add_parser("family", parents=[common], help="construct a polytope family")
    p.add_argument("kind", choices=fam.FAMILY_KINDS)
    p.add_argument("--d", type=int)
    p.add_argument("--m", help="integer, or 'auto' for the least working value")
    p.add_argument("--k", type=int)
    p.add_argument("--negatives", help="comma-separated coefficient indices, e.g. 2,3,4")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("min-m", parents=[common], help="least m with c_1..c_(d-2) < 0")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_min_m)

    p = sub.add_parser("verify-paper", parents=[common], help="run every reproduction check")
    p.add_argument("--report", default="verify-report.json",
                   help="where to write the JSON report ('' to skip)")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 1:
        print("error: --n must be >= 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except EhrhartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
