"""Polytope families with prescribed Ehrhart coefficient signs.

Building blocks are the segments ``l_m = [0, m]`` and the Reeve-type
tetrahedra ``Q_m = conv{0, e1, e2, e1 + e2 + m e3}``; everything else is a
direct product of these with a handful of explicit simplices. Wherever a
construction needs "m large enough", the smallest integer that works is
searched for and then checked on the expanded polynomial.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .ehrhart import ehrhart_polynomial, sign_pattern
from .errors import EhrhartError, InvalidArgumentError
from .exactmath import QPolynomial, binomial, parse_rational
from .polytope import VPolytope, make_polytope, product

__all__ = [
    "FAMILY_KINDS",
    "FamilySpec",
    "segment",
    "reeve",
    "reeve_formula",
    "p4",
    "p5",
    "P4_PRINTED",
    "P5_PRINTED",
    "A",
    "g",
    "closed_form_coefficients",
    "theorem_main_polynomial",
    "theorem_main_polytope",
    "min_m_all_negative",
    "lift_once",
    "base_negative_linear",
    "single_negative_polytope",
    "CATALOGUE_PRINTED",
    "catalogue_polytope",
    "catalogue",
    "supported_patterns",
    "build_family",
]

FAMILY_KINDS = ("segment", "reeve", "p4", "p5", "theorem-main", "single-negative", "catalogue")


def _unit(d: int, i: int, scale: int = 1) -> List[int]:
    v = [0] * d
    v[i - 1] = scale
    return v


def _vec(d: int, **coords) -> Tuple[int, ...]:
    """``_vec(5, e1=1, e4=99)`` -> ``(1, 0, 0, 99, 0)``."""
    v = [0] * d
    for key, value in coords.items():
        v[int(key[1:]) - 1] = value
    return tuple(v)


def _poly_desc(*coeffs: str) -> QPolynomial:
    """Polynomial from coefficient strings written highest power first."""
    return QPolynomial(parse_rational(c) for c in reversed(coeffs))


@lru_cache(maxsize=512)
def _poly(P: VPolytope) -> QPolynomial:
    return ehrhart_polynomial(P)


# --- building blocks ----------------------------------------------------------


def segment(m: int) -> VPolytope:
    if m < 1:
        raise InvalidArgumentError(f"segment length must be >= 1, got {m}")
    return make_polytope(1, [(0,), (m,)], label=f"l_{m}")


def reeve(m: int) -> VPolytope:
    if m < 1:
        raise InvalidArgumentError(f"Reeve parameter must be >= 1, got {m}")
    return make_polytope(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, m)], label=f"Q_{m}")


def reeve_formula(m: int) -> QPolynomial:
    """``m/6 n^3 + n^2 + (12 - m)/6 n + 1``."""
    return QPolynomial([1, Fraction(12 - m, 6), 1, Fraction(m, 6)])


def _simplex_with_apex(d: int, apex: Iterable[int], extra=(), label=None) -> VPolytope:
    pts = [(0,) * d] + [tuple(_unit(d, i)) for i in range(1, d)] + list(extra) + [tuple(apex)]
    return make_polytope(d, pts, label=label)


def p4() -> VPolytope:
    return _simplex_with_apex(4, _vec(4, e1=1, e3=26, e4=27), label="P4")


def p5() -> VPolytope:
    return _simplex_with_apex(
        5, _vec(5, e1=1, e4=50, e5=51), extra=[_vec(5, e4=1, e5=1)], label="P5"
    )


P4_PRINTED = _poly_desc("9/8", "31/12", "3/8", "-1/12", "1")
P5_PRINTED = _poly_desc("13/30", "55/24", "37/12", "5/24", "-1/60", "1")


# --- closed forms for the all-negative family ---------------------------------


def A(d: int, i: int) -> int:
    """``(d-3)^i C(d-3, i)``."""
    if d < 4 or i < 0:
        raise InvalidArgumentError(f"A(d, i) needs d >= 4 and i >= 0, got ({d}, {i})")
    return (d - 3) ** i * binomial(d - 3, i)


def g(d: int, j: int) -> int:
    """``(d-3)^2 C(d-3, j-1) - C(d-3, j-3)``; positive on its domain."""
    if d < 5 or not 3 <= j <= d - 2:
        raise InvalidArgumentError(f"g(d, j) needs d >= 5 and 3 <= j <= d-2, got ({d}, {j})")
    return (d - 3) ** 2 * binomial(d - 3, j - 1) - binomial(d - 3, j - 3)


def closed_form_coefficients(d: int, m: int) -> Dict[int, Fraction]:
    """Coefficients ``c_1 .. c_(d-2)`` of ``((d-3)n+1)^(d-3) i(Q_m, n)``."""
    if d < 4 or m < 1:
        raise InvalidArgumentError(f"need d >= 4 and m >= 1, got d={d}, m={m}")
    low = Fraction(12 - m, 6)
    top = Fraction(m, 6)
    out = {1: low + A(d, 1), 2: 1 + low * A(d, 1) + A(d, 2)}
    for j in range(3, d - 1):
        out[j] = top * A(d, j - 3) + A(d, j - 2) + low * A(d, j - 1) + A(d, j)
    return out


def theorem_main_polynomial(d: int, m: int) -> QPolynomial:
    return QPolynomial([1, d - 3]) ** (d - 3) * reeve_formula(m)


def theorem_main_polytope(d: int, m: int) -> Tuple[VPolytope, QPolynomial]:
    """``l_(d-3)^(d-3) x Q_m`` and its expanded Ehrhart polynomial."""
    if d < 4 or m < 1:
        raise InvalidArgumentError(f"theorem-main needs d >= 4 and m >= 1, got d={d}, m={m}")
    P = reeve(m)
    for _ in range(d - 3):
        P = product(segment(d - 3), P)
    poly = theorem_main_polynomial(d, m)
    closed = closed_form_coefficients(d, m)
    for j, c in closed.items():
        if poly.coeff(j) != c:
            raise EhrhartError(f"closed form c_{j}={c} disagrees with expansion {poly.coeff(j)}")
    return P, poly


def min_m_all_negative(d: int, limit: int = 10**6) -> int:
    """Smallest ``m`` making ``c_1 .. c_(d-2)`` of ``i(P_m^(d), n)`` all negative."""
    if d < 4:
        raise InvalidArgumentError(f"need d >= 4, got {d}")
    for m in range(1, limit + 1):
        if all(c < 0 for c in closed_form_coefficients(d, m).values()):
            poly = theorem_main_polynomial(d, m)
            if not all(poly.coeff(j) < 0 for j in range(1, d - 1)):
                raise EhrhartError(f"closed forms and expansion disagree at d={d}, m={m}")
            return m
    raise EhrhartError(f"no m <= {limit} found for d={d}")


# --- one negative coefficient -------------------------------------------------


def lift_once(
    P: VPolytope, r: int, poly: Optional[QPolynomial] = None
) -> Tuple[VPolytope, int]:
    """Move the single negative coefficient from index ``r`` to ``r + 1``.

    Returns ``(l_m x P, m)`` for the least ``m`` that works. With
    ``c = i(P, .)`` the new coefficients are ``m c_(j-1) + c_j``, so ``m``
    must exceed both ``c_(r+1) / |c_r|`` and ``|c_r| / c_(r-1)``.
    """
    poly = poly if poly is not None else _poly(P)
    e = poly.degree
    pattern = sign_pattern(poly)
    if not 1 <= r <= e - 2 or not pattern.is_exactly({r}):
        raise InvalidArgumentError(
            f"lift needs exactly one negative coefficient at index {r}; "
            f"negatives are {list(pattern.negatives)}, zeros at {list(pattern.zeros)}"
        )
    neg = -poly.coeff(r)
    bound = max(poly.coeff(r + 1) / neg, neg / poly.coeff(r - 1))
    m = math.floor(bound) + 1
    lifted = QPolynomial([1, m]) * poly
    if not sign_pattern(lifted).is_exactly({r + 1}):
        raise EhrhartError(f"lift with m={m} did not produce a single negative at {r + 1}")
    return product(segment(m), P), m


def base_negative_linear(d: int) -> Tuple[VPolytope, QPolynomial]:
    """A ``d``-polytope whose only negative coefficient is that of ``n``."""
    if d < 3:
        raise InvalidArgumentError(f"need d >= 3, got {d}")
    if d == 3:
        P = reeve(13)
    elif d == 4:
        P = p4()
    elif d == 5:
        P = p5()
    else:
        base = {0: reeve(13), 1: p4(), 2: p5()}[d % 3]
        s = (d - base.dim) // 3
        P = base
        for _ in range(s):
            P = product(P, reeve(12))
    poly = _poly(P)
    if not sign_pattern(poly).is_exactly({1}):
        raise EhrhartError(f"{P.describe()} does not have negatives exactly {{1}}")
    return P, poly


def single_negative_polytope(d: int, k: int) -> Tuple[VPolytope, QPolynomial, List[dict]]:
    """A ``d``-polytope whose only negative coefficient is that of ``n^k``."""
    if d < 3 or not 1 <= k <= d - 2:
        raise InvalidArgumentError(f"need d >= 3 and 1 <= k <= d-2, got d={d}, k={k}")
    P, poly = base_negative_linear(d - k + 1)
    trace = [{"step": "base", "dim": P.dim, "polytope": P.describe()}]
    for r in range(1, k):
        P, m = lift_once(P, r, poly)
        poly = QPolynomial([1, m]) * poly
        trace.append({"step": "lift", "from_index": r, "m": m, "dim": P.dim})
    if not sign_pattern(poly).is_exactly({k}):
        raise EhrhartError(f"construction for d={d}, k={k} failed its sign check")
    return P, poly, trace


# --- multi-negative catalogue for d <= 6 --------------------------------------

CATALOGUE_PRINTED: Dict[Tuple[int, Tuple[int, ...]], QPolynomial] = {
    (5, (1, 2)): _poly_desc("5/6", "17/4", "29/6", "-9/4", "-8/3", "1"),
    (5, (1, 3)): _poly_desc("371/120", "1/8", "-1/24", "15/8", "-1/20", "1"),
    (5, (2, 3)): _poly_desc("5000/3", "1300/3", "-1430", "-577/3", "16/3", "1"),
    (6, (1, 2)): _poly_desc("25/18", "751/60", "2515/72", "131/6", "-2435/72", "-617/20", "1"),
    (6, (1, 3)): _poly_desc("130/9", "137/6", "55/9", "-2/3", "4/9", "-1/6", "1"),
    (6, (1, 4)): _poly_desc("16/3", "14/3", "-1/3", "4", "2", "-2/3", "1"),
    (6, (2, 3)): _poly_desc("40", "68", "18", "-17", "-5", "3", "1"),
    (6, (2, 4)): _poly_desc("371/3", "971/120", "-37/24", "1799/24", "-1/8", "799/20", "1"),
    (6, (3, 4)): _poly_desc("25/18", "503/120", "-241/36", "-475/24", "281/36", "191/10", "1"),
    (6, (1, 2, 3)): _poly_desc("20/3", "21", "55/3", "-10/3", "-10", "-5/3", "1"),
    (6, (1, 2, 4)): _poly_desc("250/9", "55/3", "-161/9", "4", "-26/9", "-43/3", "1"),
    (6, (1, 3, 4)): _poly_desc("25/3", "26/3", "-11/3", "-7/3", "1/3", "-1/3", "1"),
    (6, (2, 3, 4)): _poly_desc("180", "207", "-39", "-250/3", "-14", "13/3", "1"),
}


def _power_times(base: VPolytope, *others: VPolytope) -> VPolytope:
    P = base
    for f in others:
        P = product(P, f)
    return P


def _p13_5() -> VPolytope:
    return _simplex_with_apex(5, _vec(5, e1=3, e2=4, e3=5, e4=8, e5=371), label="P_13^5")


def catalogue_polytope(d: int, negatives: Tuple[int, ...]) -> VPolytope:
    """The explicit polytope listed for a two- or three-negative pattern."""
    key = (d, tuple(sorted(negatives)))
    if key == (5, (1, 2)):
        return _simplex_with_apex(5, _vec(5, e1=1, e2=1, e4=99, e5=100), label="P_12^5")
    if key == (5, (1, 3)):
        return _p13_5()
    if key == (5, (2, 3)):
        return _power_times(segment(10), segment(10), reeve(100))
    if key == (6, (1, 2)):
        return _simplex_with_apex(6, _vec(6, e1=1, e2=1, e5=999, e6=1000), label="P_12^6")
    if key == (6, (1, 3)):
        octa = make_polytope(
            3,
            [(1, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1), (3, 0, 4), (4, 1, 3)],
            label="R_3",
        )
        return product(octa, reeve(26))
    if key == (6, (1, 4)):
        return product(reeve(12), reeve(16))
    if key == (6, (2, 3)):
        return _power_times(segment(2), segment(2), segment(2), reeve(30))
    if key == (6, (2, 4)):
        return product(segment(40), _p13_5())
    if key == (6, (3, 4)):
        return _simplex_with_apex(
            6, _vec(6, e1=1, e2=1, e3=1, e4=999, e5=999, e6=1000), label="P_34^6"
        )
    if key == (6, (1, 2, 3)):
        return _power_times(segment(1), segment(1), segment(1), reeve(40))
    if key == (6, (1, 2, 4)):
        return product(reeve(10), reeve(100))
    if key == (6, (1, 3, 4)):
        inner = _simplex_with_apex(5, _vec(5, e1=1, e2=1, e3=2, e4=10, e5=1000), label="S_134^5")
        return product(segment(1), inner)
    if key == (6, (2, 3, 4)):
        return _power_times(segment(3), segment(3), segment(3), reeve(40))
    raise InvalidArgumentError(f"no explicit catalogue polytope for d={d}, negatives={negatives}")


def supported_patterns(d: int) -> List[Tuple[int, ...]]:
    idx = range(1, d - 1)
    return [c for q in range(1, d - 1) for c in itertools.combinations(idx, q)]


def catalogue(
    d: int, negatives: Iterable[int], verify: bool = True
) -> Tuple[VPolytope, QPolynomial]:
    """A ``d``-polytope, ``3 <= d <= 6``, negative exactly on ``negatives``."""
    neg = tuple(sorted(set(negatives)))
    if not 3 <= d <= 6 or not neg or neg not in supported_patterns(d):
        raise InvalidArgumentError(
            f"unsupported pattern d={d}, negatives={list(neg)}; supported for 3 <= d <= 6: "
            "any nonempty subset of {1, ..., d-2}"
        )
    if len(neg) == 1:
        P, poly, _ = single_negative_polytope(d, neg[0])
    elif neg == tuple(range(1, d - 1)):
        P, poly = theorem_main_polytope(d, min_m_all_negative(d))
    else:
        P = catalogue_polytope(d, neg)
        poly = _poly(P)
        if verify and poly != CATALOGUE_PRINTED[(d, neg)]:
            raise EhrhartError(
                f"computed {poly} differs from listed {CATALOGUE_PRINTED[(d, neg)]}"
            )
    if not sign_pattern(poly).is_exactly(neg):
        raise EhrhartError(f"{P.describe()} has pattern {sign_pattern(poly)}, wanted {neg}")
    return P, poly


# --- CLI-facing specs ---------------------------------------------------------


@dataclass
class FamilySpec:
    kind: str
    d: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    negatives: List[int] = field(default_factory=list)
    trace: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "d": self.d,
            "m": self.m,
            "k": self.k,
            "negatives": list(self.negatives),
            "trace": list(self.trace),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FamilySpec":
        return cls(
            kind=data["kind"],
            d=data.get("d"),
            m=data.get("m"),
            k=data.get("k"),
            negatives=list(data.get("negatives") or []),
            trace=list(data.get("trace") or []),
        )


def build_family(spec: FamilySpec) -> Tuple[VPolytope, QPolynomial, FamilySpec]:
    """Construct the polytope a spec describes; fills in ``m`` and ``trace``."""
    kind = spec.kind
    out = FamilySpec(kind, spec.d, spec.m, spec.k, list(spec.negatives), [])

    def need(name):
        value = getattr(spec, name)
        if value is None:
            raise InvalidArgumentError(f"family {kind!r} needs --{name}")
        return value

    if kind == "segment":
        P = segment(need("m"))
        poly = QPolynomial([1, spec.m])
        out.d = 1
    elif kind == "reeve":
        P = reeve(need("m"))
        poly = reeve_formula(spec.m)
        out.d = 3
    elif kind == "p4":
        P, poly, out.d = p4(), None, 4
    elif kind == "p5":
        P, poly, out.d = p5(), None, 5
    elif kind == "theorem-main":
        d = need("d")
        if spec.m is None:
            out.m = min_m_all_negative(d)
            out.trace.append({"step": "min-m", "m": out.m})
        P, poly = theorem_main_polytope(d, out.m)
    elif kind == "single-negative":
        P, poly, out.trace = single_negative_polytope(need("d"), need("k"))
    elif kind == "catalogue":
        d = need("d")
        if not spec.negatives:
            raise InvalidArgumentError("family 'catalogue' needs --negatives")
        P, poly = catalogue(d, spec.negatives)
        out.trace.append({"step": "catalogue", "polytope": P.describe()})
    else:
        raise InvalidArgumentError(f"unknown family {kind!r}; choose from {FAMILY_KINDS}")
    geometric = _poly(P)
    if poly is not None and geometric != poly:
        raise EhrhartError(f"symbolic {poly} and geometric {geometric} disagree")
    return P, geometric, out
