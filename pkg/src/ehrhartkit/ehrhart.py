"""Ehrhart polynomials, delta-vectors, sign patterns and positive real roots."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .counting import count_scan, counts_for_interpolation, simplex_delta
from .errors import InvalidArgumentError, InvalidEhrhartDataError, RouteDisagreementError
from .exactmath import DeltaVector, QPolynomial, binomial, interpolate
from .polytope import VPolytope

__all__ = [
    "ROUTES",
    "SignPattern",
    "EhrhartReport",
    "applicable_routes",
    "polynomial_by_route",
    "ehrhart_polynomial",
    "delta_from_poly",
    "poly_from_delta",
    "sign_pattern",
    "count_positive_real_roots",
    "ehrhart_report",
]

ROUTES = ("delta", "product", "interpolation")


# --- delta-vector transforms --------------------------------------------------


def delta_from_poly(p: QPolynomial, d: int) -> DeltaVector:
    """``delta_j = sum_{i<=j} (-1)^i C(d+1, i) p(j-i)``."""
    if p.degree != d:
        raise InvalidEhrhartDataError(f"polynomial has degree {p.degree}, expected {d}")
    values = [p(k) for k in range(d + 1)]
    if values[0] != 1:
        raise InvalidEhrhartDataError(f"constant term is {values[0]}, expected 1")
    if any(v.denominator != 1 for v in values):
        raise InvalidEhrhartDataError("polynomial takes non-integer values on 0..d")
    delta = []
    for j in range(d + 1):
        s = sum((-1) ** i * binomial(d + 1, i) * values[j - i] for i in range(j + 1))
        delta.append(int(s))
    return DeltaVector(delta)


def _binomial_poly(shift: int, d: int) -> QPolynomial:
    """``C(n + shift, d)`` as a polynomial in ``n``."""
    out = QPolynomial([1])
    for i in range(d):
        out = out * QPolynomial([shift - i, 1])
    return out * Fraction(1, math.factorial(d))


def poly_from_delta(delta: DeltaVector) -> QPolynomial:
    """``i(P, n) = sum_j delta_j C(n + d - j, d)``."""
    d = delta.dimension
    total = QPolynomial()
    for j, dj in enumerate(delta):
        if dj:
            total = total + _binomial_poly(d - j, d) * dj
    return total


# --- polynomial routes --------------------------------------------------------


def applicable_routes(P: VPolytope) -> List[str]:
    routes = []
    if P.is_simplex and P.is_full_dimensional and P.dim > 0:
        routes.append("delta")
    if P.is_product:
        routes.append("product")
    routes.append("interpolation")
    return routes


def polynomial_by_route(P: VPolytope, route: str, jobs: int = 1) -> QPolynomial:
    if P.dim < 1:
        raise InvalidArgumentError("Ehrhart polynomial needs dimension >= 1")
    if route not in applicable_routes(P):
        raise InvalidArgumentError(f"route {route!r} does not apply to {P.describe()}")
    if route == "delta":
        return poly_from_delta(simplex_delta(P))
    if route == "product":
        out = QPolynomial([1])
        for f in P.factors:
            out = out * (ehrhart_polynomial(f, jobs=jobs) if f.dim else QPolynomial([1]))
        return out
    samples = [(0, 1)] + [(n, count_scan(P, n, jobs=jobs)) for n in range(1, P.dim + 1)]
    return interpolate(samples)


def ehrhart_polynomial(
    P: VPolytope, routes: Optional[Iterable[str]] = None, jobs: int = 1
) -> QPolynomial:
    """Exact Ehrhart polynomial of ``P``.

    By default only the cheapest applicable route runs. Pass ``routes`` (or
    ``"all"``) to compute several and require exact agreement.
    """
    if routes is None:
        chosen = applicable_routes(P)[:1]
    elif routes == "all":
        chosen = applicable_routes(P)
    else:
        chosen = list(routes)
    result = None
    first = None
    for route in chosen:
        poly = polynomial_by_route(P, route, jobs=jobs)
        if result is None:
            result, first = poly, route
        elif poly != result:
            raise RouteDisagreementError(first, result, route, poly)
    return result


# --- sign patterns ------------------------------------------------------------


def _sign(x: Fraction) -> str:
    return "+" if x > 0 else "-" if x < 0 else "0"


@dataclass(frozen=True)
class SignPattern:
    """Signs of the coefficients of ``n^1 .. n^(d-2)``."""

    d: int
    signs: Tuple[Tuple[int, str], ...]

    @property
    def negatives(self) -> Tuple[int, ...]:
        return tuple(i for i, s in self.signs if s == "-")

    @property
    def zeros(self) -> Tuple[int, ...]:
        return tuple(i for i, s in self.signs if s == "0")

    def sign(self, i: int) -> str:
        return dict(self.signs)[i]

    def is_exactly(self, negatives: Iterable[int]) -> bool:
        """Negative exactly on ``negatives`` and strictly positive elsewhere."""
        want = set(negatives)
        return all((s == "-") if i in want else (s == "+") for i, s in self.signs)

    def __str__(self) -> str:
        return "".join(s for _, s in self.signs)


def sign_pattern(p: QPolynomial) -> SignPattern:
    d = p.degree
    if d < 1:
        raise InvalidEhrhartDataError("Ehrhart polynomial must have degree >= 1")
    if p.coeff(0) != 1:
        raise InvalidEhrhartDataError(f"constant term is {p.coeff(0)}, expected 1")
    if p.coeff(d) <= 0 or p.coeff(d - 1) <= 0:
        raise InvalidEhrhartDataError("top two coefficients must be positive")
    return SignPattern(d, tuple((i, _sign(p.coeff(i))) for i in range(1, d - 1)))


# --- real roots ---------------------------------------------------------------


def _poly_gcd(a: QPolynomial, b: QPolynomial) -> QPolynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _variations(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def count_positive_real_roots(p: QPolynomial) -> int:
    """Number of distinct real roots in ``(0, inf)``, by a Sturm sequence."""
    if p.is_zero():
        raise InvalidArgumentError("zero polynomial has infinitely many roots")
    shift = next(i for i, c in enumerate(p.coeffs) if c != 0)
    p = QPolynomial(p.coeffs[shift:])
    if p.degree < 1:
        return 0
    p = p // _poly_gcd(p, p.derivative())
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r)
    at_zero = _variations(q.coeff(0) for q in seq)
    at_inf = _variations(q.leading for q in seq)
    return at_zero - at_inf


# --- report -------------------------------------------------------------------


@dataclass
class EhrhartReport:
    description: str
    dim: int
    polynomial: QPolynomial
    delta: DeltaVector
    pattern: SignPattern
    counts: List[Tuple[int, int]]
    strategy: str
    positive_real_roots: int
    routes: List[str] = field(default_factory=list)

    @property
    def has_positive_real_root(self) -> bool:
        return self.positive_real_roots > 0

    def to_json(self) -> dict:
        return {
            "polytope": self.description,
            "dim": self.dim,
            "polynomial": self.polynomial.to_json(),
            "delta": self.delta.to_json(),
            "negatives": list(self.pattern.negatives),
            "signs": str(self.pattern),
            "counts": [[n, c] for n, c in self.counts],
            "strategy": self.strategy,
            "routes": list(self.routes),
            "positive_real_roots": self.positive_real_roots,
        }


def ehrhart_report(P: VPolytope, routes=None, jobs: int = 1) -> EhrhartReport:
    samples, strategy = counts_for_interpolation(P, jobs=jobs)
    poly = ehrhart_polynomial(P, routes=routes, jobs=jobs)
    if interpolate(samples) != poly:
        raise RouteDisagreementError(strategy, interpolate(samples), "polynomial", poly)
    used = applicable_routes(P)[:1] if routes is None else (
        applicable_routes(P) if routes == "all" else list(routes)
    )
    return EhrhartReport(
        description=P.describe(),
        dim=P.dim,
        polynomial=poly,
        delta=delta_from_poly(poly, P.dim),
        pattern=sign_pattern(poly),
        counts=samples,
        strategy=strategy,
        positive_real_roots=count_positive_real_roots(poly),
        routes=used,
    )
