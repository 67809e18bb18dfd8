"""End-to-end reproduction checks for the published polytope families.

Each ``criterion_*`` function runs one group of checks and returns
:class:`Check` records; :func:`run_all` collects them into a
:class:`RunReport`, which the ``verify-paper`` subcommand prints.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import families as fam
from .counting import (
    count,
    count_interior,
    count_naive,
    count_scan,
    count_from_delta,
    counts_for_interpolation,
    simplex_delta,
)
from .ehrhart import (
    count_positive_real_roots,
    delta_from_poly,
    ehrhart_polynomial,
    poly_from_delta,
    polynomial_by_route,
    sign_pattern,
)
from .exactmath import QPolynomial, binomial, interpolate
from .polytope import VPolytope, make_polytope

PROVENANCE = ("PAPER", "DERIVED", "TRIVIAL")


@dataclass
class Check:
    criterion: int
    name: str
    expected: str
    provenance: str
    actual: str
    passed: bool
    runtime: float = 0.0
    diff: Optional[dict] = None

    def to_json(self, timing: bool = True) -> dict:
        data = {
            "criterion": self.criterion,
            "name": self.name,
            "expected": self.expected,
            "provenance": self.provenance,
            "actual": self.actual,
            "status": "pass" if self.passed else "fail",
        }
        if self.diff:
            data["diff"] = self.diff
        if timing:
            data["runtime"] = round(self.runtime, 4)
        return data


@dataclass
class RunReport:
    checks: List[Check] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self, timing: bool = True) -> dict:
        data = {
            "checks": [c.to_json(timing) for c in self.checks],
            "summary": {"total": len(self.checks), "passed": self.passed, "failed": self.failed},
        }
        if timing:
            data["runtime"] = round(self.runtime, 3)
        return data

    def table(self, timing: bool = True) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            t = f"  {c.runtime:7.3f}s" if timing else ""
            lines.append(f"[{status}] C{c.criterion:<2} {c.name} ({c.provenance}){t}")
            if not c.passed:
                lines.append(f"         expected: {c.expected}")
                lines.append(f"         actual:   {c.actual}")
        lines.append(f"{self.passed}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def poly_diff(expected: QPolynomial, actual: QPolynomial) -> dict:
    """Coefficient-wise differences, keyed by power, for mismatching entries."""
    top = max(expected.degree, actual.degree)
    return {
        str(i): {"expected": str(expected.coeff(i)), "actual": str(actual.coeff(i))}
        for i in range(top + 1)
        if expected.coeff(i) != actual.coeff(i)
    }


def _poly_check(criterion, name, expected, actual, provenance, runtime=0.0) -> Check:
    ok = expected == actual
    return Check(
        criterion, name, str(expected), provenance, str(actual), ok, runtime,
        None if ok else poly_diff(expected, actual),
    )


def _bool_check(criterion, name, ok, provenance, detail="", runtime=0.0) -> Check:
    return Check(criterion, name, "true", provenance, detail or str(bool(ok)), bool(ok), runtime)


def _timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


def _runtime_check(criterion, name, elapsed, limit) -> Check:
    return Check(
        criterion, f"{name} runtime < {limit:g}s", f"< {limit:g}s", "DERIVED",
        f"{elapsed:.3f}s", elapsed < limit, elapsed,
    )


# --- the polytopes the checks range over ------------------------------------


def paper_polytopes() -> List[Tuple[str, VPolytope, QPolynomial]]:
    """Every explicitly listed polytope paired with its expected polynomial."""
    items = [
        ("Q_13", fam.reeve(13), fam.reeve_formula(13)),
        ("Q_12", fam.reeve(12), fam.reeve_formula(12)),
        ("P4", fam.p4(), fam.P4_PRINTED),
        ("P5", fam.p5(), fam.P5_PRINTED),
    ]
    for (d, neg), poly in fam.CATALOGUE_PRINTED.items():
        name = f"P_{''.join(map(str, neg))}^({d})"
        items.append((name, fam.catalogue_polytope(d, neg), poly))
    return items


def catalogue_simplices() -> List[Tuple[str, VPolytope]]:
    seen = {}
    for name, P, _ in paper_polytopes():
        parts = P.factors if P.is_product else (P,)
        for f in parts:
            if f.is_simplex and f.is_full_dimensional and f.dim > 0:
                seen.setdefault(f.describe(), f)
    return sorted(seen.items())


def constructed_polytopes(max_dim: int = 6) -> List[Tuple[str, VPolytope, QPolynomial]]:
    items = list(paper_polytopes())
    for d in range(4, max_dim + 1):
        m = fam.min_m_all_negative(d)
        P, poly = fam.theorem_main_polytope(d, m)
        items.append((f"P_m^({d}), m={m}", P, poly))
    for d in range(3, max_dim + 1):
        for k in range(1, d - 1):
            P, poly, _ = fam.single_negative_polytope(d, k)
            items.append((f"single-negative d={d} k={k}", P, poly))
    return items


# --- criteria -----------------------------------------------------------------


def criterion_1() -> List[Check]:
    expected = QPolynomial([1, Fraction(-1, 6), 1, Fraction(13, 6)])
    poly, dt = _timed(ehrhart_polynomial, fam.reeve(13))
    return [
        _poly_check(1, "Stanley tetrahedron conv{0,e1,e2,(1,1,13)}", expected, poly, "PAPER", dt),
        _runtime_check(1, "Stanley tetrahedron", dt, 1.0),
    ]


def criterion_2() -> List[Check]:
    t0 = time.perf_counter()
    bad = []
    for m in range(1, 201):
        if polynomial_by_route(fam.reeve(m), "delta") != fam.reeve_formula(m):
            bad.append(m)
    dt = time.perf_counter() - t0
    return [
        Check(2, "Reeve family m/6 n^3 + n^2 + (12-m)/6 n + 1, 1 <= m <= 200",
              "no mismatches", "PAPER", f"mismatches at m={bad}" if bad else "no mismatches",
              not bad, dt),
        _runtime_check(2, "Reeve family", dt, 30.0),
    ]


def criterion_3() -> List[Check]:
    t0 = time.perf_counter()
    checks = []
    for name, P, printed in (("P4", fam.p4(), fam.P4_PRINTED), ("P5", fam.p5(), fam.P5_PRINTED)):
        poly, dt = _timed(ehrhart_polynomial, P, "all")
        checks.append(_poly_check(3, f"{name} printed polynomial", printed, poly, "PAPER", dt))
    checks.append(_runtime_check(3, "P4 and P5", time.perf_counter() - t0, 10.0))
    return checks


def criterion_4() -> List[Check]:
    t0 = time.perf_counter()
    checks = []
    for (d, neg), printed in fam.CATALOGUE_PRINTED.items():
        P = fam.catalogue_polytope(d, neg)
        poly, dt = _timed(ehrhart_polynomial, P)
        label = f"catalogue d={d} negatives={list(neg)}: {P.describe()}"
        check = _poly_check(4, label, printed, poly, "PAPER", dt)
        pattern_ok = sign_pattern(poly).is_exactly(neg)
        check.passed = check.passed and pattern_ok
        checks.append(check)
    for d, neg in ((6, (1, 2)), (6, (3, 4))):
        P = fam.catalogue_polytope(d, neg)
        vol = sum(simplex_delta(P))
        checks.append(_bool_check(
            4, f"P_{''.join(map(str, neg))}^({d}) via parallelepiped, {vol} box points <= 1000",
            P.is_simplex and vol <= 1000, "DERIVED", f"simplex={P.is_simplex}, points={vol}",
        ))
    checks.append(_runtime_check(4, "catalogue reproduction", time.perf_counter() - t0, 120.0))
    return checks


def criterion_5() -> List[Check]:
    checks = []
    for d, want in ((4, 19), (5, 37)):
        m = fam.min_m_all_negative(d)
        checks.append(Check(5, f"min_m_all_negative({d})", str(want), "DERIVED", str(m), m == want))
        _, poly = fam.theorem_main_polytope(d, m)
        checks.append(_bool_check(
            5, f"d={d}, m={m}: c_1..c_{d - 2} all negative",
            all(poly.coeff(j) < 0 for j in range(1, d - 1)), "DERIVED",
            str([str(poly.coeff(j)) for j in range(1, d - 1)]),
        ))
    bad = []
    for d in range(4, 9):
        for m in range(1, 31):
            poly = fam.theorem_main_polynomial(d, m)
            closed = fam.closed_form_coefficients(d, m)
            if any(poly.coeff(j) != c for j, c in closed.items()):
                bad.append((d, m))
            for j in range(3, d - 1):
                alt = (-Fraction((d - 3) ** (j - 3) * fam.g(d, j), 6) * m
                       + fam.A(d, j - 2) + 2 * fam.A(d, j - 1) + fam.A(d, j))
                if alt != poly.coeff(j):
                    bad.append((d, m, j))
    checks.append(Check(5, "closed forms c_1, c_2, c_j match expansion, 4<=d<=8, 1<=m<=30",
                        "no mismatches", "PAPER", str(bad) if bad else "no mismatches", not bad))
    return checks


def criterion_6() -> List[Check]:
    t0 = time.perf_counter()
    nonpos = [(d, j) for d in range(5, 41) for j in range(3, d - 1) if fam.g(d, j) <= 0]
    rec_bad = [
        (d, j)
        for d in range(7, 41)
        for j in range(4, d - 2)
        if fam.g(d, j) != fam.g(d - 1, j) + fam.g(d - 1, j - 1) + (2 * d - 7) * binomial(d - 3, j - 1)
    ]
    dt = time.perf_counter() - t0
    return [
        Check(6, "g(d,j) > 0 for 5<=d<=40, 3<=j<=d-2", "none nonpositive", "PAPER",
              str(nonpos) if nonpos else "none nonpositive", not nonpos, dt),
        Check(6, "g recurrence on 7<=d<=40, 4<=j<=d-3", "holds everywhere", "PAPER",
              str(rec_bad) if rec_bad else "holds everywhere", not rec_bad, dt),
        _runtime_check(6, "g grid", dt, 1.0),
    ]


def criterion_7() -> List[Check]:
    t0 = time.perf_counter()
    bad, unconfirmed = [], []
    for d in range(3, 10):
        for k in range(1, d - 1):
            P, poly, _ = fam.single_negative_polytope(d, k)
            if P.dim != d or not sign_pattern(poly).is_exactly({k}):
                bad.append((d, k))
            if d <= 6:
                samples, _ = counts_for_interpolation(P)
                if interpolate(samples) != poly:
                    unconfirmed.append((d, k))
    dt = time.perf_counter() - t0
    return [
        Check(7, "single negative coefficient at n^k, 3<=d<=9, 1<=k<=d-2", "all patterns exact",
              "PAPER", str(bad) if bad else "all patterns exact", not bad, dt),
        Check(7, "single-negative polynomials confirmed by counting, d<=6", "all confirmed",
              "DERIVED", str(unconfirmed) if unconfirmed else "all confirmed", not unconfirmed),
        _runtime_check(7, "single-negative coverage", dt, 180.0),
    ]


def criterion_8() -> List[Check]:
    f, p = fam.reeve_formula(13), fam.reeve_formula(12)
    checks = []
    for s in range(6):
        q = f * p ** s
        ok = q.coeff(1) == Fraction(-1, 6) and q.coeff(2) == s + 1
        checks.append(Check(
            8, f"f p^{s}: n-coefficient -1/6, n^2-coefficient {s + 1}",
            f"(-1/6, {s + 1})", "PAPER", f"({q.coeff(1)}, {q.coeff(2)})", ok,
        ))
    return checks


def random_polytopes(count_: int = 100, seed: int = 20100325) -> List[VPolytope]:
    rng = random.Random(seed)
    out = []
    while len(out) < count_:
        N = rng.randint(1, 3)
        k = rng.randint(1, 6)
        pts = [tuple(rng.randint(0, 4) for _ in range(N)) for _ in range(k)]
        P = make_polytope(N, pts)
        if P.dim >= 1:
            out.append(P)
    return out


def random_simplices(count_: int = 30, seed: int = 1729) -> List[VPolytope]:
    rng = random.Random(seed)
    out = []
    while len(out) < count_:
        N = rng.randint(1, 3)
        pts = [tuple(rng.randint(0, 4) for _ in range(N)) for _ in range(N + 1)]
        P = make_polytope(N, pts)
        if P.dim == N and P.is_simplex:
            out.append(P)
    return out


def criterion_9() -> List[Check]:
    checks = []

    polys = random_polytopes()
    bad = [
        (P.vertices, n)
        for P in polys
        for n in range(1, 4)
        if count_scan(P, n) != count_naive(P, n)
    ]
    checks.append(Check(9, f"count_scan == count_naive on {len(polys)} random polytopes, n<=3",
                        "no mismatches", "DERIVED", str(bad) if bad else "no mismatches", not bad))

    simp = random_simplices()
    bad = [
        (S.vertices, n)
        for S in simp
        for n in range(1, 4)
        if count_from_delta(simplex_delta(S), n) != count_naive(S, n)
    ]
    checks.append(Check(9, f"parallelepiped counts == count_naive on {len(simp)} random simplices",
                        "no mismatches", "DERIVED", str(bad) if bad else "no mismatches", not bad))

    for name, S in catalogue_simplices():
        a = polynomial_by_route(S, "delta")
        b = polynomial_by_route(S, "interpolation")
        checks.append(_poly_check(9, f"delta route == interpolation route on {name}", b, a, "DERIVED"))

    mult_bad = []
    for name, P, _ in paper_polytopes():
        if not P.is_product:
            continue
        left, right = P.factors[0], P.factors[1:]
        for n in range(1, 5):
            direct = count_scan(P, n)
            rhs = count(left, n).count * math.prod(count(f, n).count for f in right)
            if direct != rhs:
                mult_bad.append((name, n))
    checks.append(Check(9, "i(PxQ, n) == i(P, n) i(Q, n) for catalogue products, n<=4",
                        "no mismatches", "DERIVED", str(mult_bad) if mult_bad else "no mismatches",
                        not mult_bad))

    delta_bad, round_bad = [], []
    for name, P, poly in constructed_polytopes():
        d = P.dim
        delta = delta_from_poly(poly, d)
        conds = [
            delta.is_nonnegative(),
            delta[0] == 1,
            sum(delta) == math.factorial(d) * poly.leading,
            delta[1] == poly(1) - (d + 1),
            delta[d] == (-1) ** d * poly(-1),
        ]
        if not all(conds):
            delta_bad.append((name, conds))
        if poly_from_delta(delta) != poly:
            round_bad.append(name)
    checks.append(Check(9, "delta >= 0, delta_0 = 1, sum = d! lead, delta_1, delta_d identities",
                        "all hold", "DERIVED", str(delta_bad) if delta_bad else "all hold",
                        not delta_bad))
    checks.append(Check(9, "poly_from_delta(delta_from_poly(p)) == p", "all round trip",
                        "DERIVED", str(round_bad) if round_bad else "all round trip", not round_bad))

    recip_bad = []
    for name, P, poly in constructed_polytopes():
        if P.dim > 4:
            continue
        for n in (1, 2):
            interior = count_interior(P, n)
            if interior != (-1) ** P.dim * poly(-n):
                recip_bad.append((name, n, interior))
    checks.append(Check(9, "interior count of nP == (-1)^d i(P, -n), d<=4, n<=2",
                        "all hold", "DERIVED", str(recip_bad) if recip_bad else "all hold",
                        not recip_bad))
    return checks


def criterion_10() -> List[Check]:
    q100, q13 = fam.reeve_formula(100), fam.reeve_formula(13)
    r100 = count_positive_real_roots(ehrhart_polynomial(fam.reeve(100)))
    r13 = count_positive_real_roots(ehrhart_polynomial(fam.reeve(13)))
    half, zero = q100(Fraction(1, 2)), q100(0)
    return [
        Check(10, "positive real roots of i(Q_100, n)", "2", "DERIVED", str(r100), r100 == 2),
        Check(10, "positive real roots of i(Q_13, n)", "0", "DERIVED", str(r13), r13 == 0),
        Check(10, "i(Q_100, 1/2) = -4 < 0 < 1 = i(Q_100, 0)", "(-4, 1)", "DERIVED",
              f"({half}, {zero})", half == -4 and zero == 1),
    ]


CRITERIA: Dict[int, Callable[[], List[Check]]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def run_criterion(number: int) -> List[Check]:
    return CRITERIA[number]()


def run_all(progress: Optional[Callable[[int, List[Check]], None]] = None) -> RunReport:
    t0 = time.perf_counter()
    report = RunReport()
    for number, fn in CRITERIA.items():
        checks = fn()
        report.checks.extend(checks)
        if progress:
            progress(number, checks)
    report.runtime = time.perf_counter() - t0
    return report
