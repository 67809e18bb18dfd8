"""Exact rational scalars and dense univariate polynomials over Q.

Rationals are :class:`fractions.Fraction` values, which already keep a
reduced, positive-denominator form. Polynomials store their coefficients
ascending by power, so ``p.coeffs[i]`` is the coefficient of ``n**i``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InvalidArgumentError

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "rat",
    "format_rational",
    "parse_rational",
    "QPolynomial",
    "poly_mul",
    "poly_eval",
    "binomial",
    "interpolate",
    "DeltaVector",
]


def rat(num: int, den: int = 1) -> Fraction:
    """Return the reduced rational ``num/den``.

    >>> rat(26, -12)
    Fraction(-13, 6)
    """
    if den == 0:
        raise InvalidArgumentError("zero denominator")
    return Fraction(int(num), int(den))


def format_rational(x: Scalar) -> str:
    """Canonical string: ``"p/q"`` with ``q > 0``, or ``"p"`` when ``q == 1``."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return rat(int(num), int(den))
    return Fraction(int(text))


class QPolynomial:
    """Immutable dense polynomial in one variable with rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> "QPolynomial":
        return cls([c])

    @classmethod
    def linear(cls, slope: Scalar, intercept: Scalar = 1) -> "QPolynomial":
        return cls([intercept, slope])

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; ``-1`` for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        return poly_eval(self, x)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == QPolynomial([other])._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other) -> "QPolynomial":
        other = _as_poly(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return QPolynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(-c for c in self._coeffs)

    def __sub__(self, other) -> "QPolynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "QPolynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "QPolynomial":
        return poly_mul(self, _as_poly(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPolynomial":
        if k < 0:
            raise InvalidArgumentError("negative exponent")
        result = QPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "QPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dv = other._coeffs
        if len(rem) < len(dv):
            return QPolynomial(), self
        quot = [Fraction(0)] * (len(rem) - len(dv) + 1)
        lead = dv[-1]
        for shift in range(len(rem) - len(dv), -1, -1):
            q = rem[shift + len(dv) - 1] / lead
            quot[shift] = q
            if q:
                for i, c in enumerate(dv):
                    rem[shift + i] -= q * c
        return QPolynomial(quot), QPolynomial(rem[: len(dv) - 1])

    def __mod__(self, other: "QPolynomial") -> "QPolynomial":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "QPolynomial") -> "QPolynomial":
        return divmod(self, other)[0]

    def derivative(self) -> "QPolynomial":
        return QPolynomial(i * c for i, c in enumerate(self._coeffs) if i)

    def monic(self) -> "QPolynomial":
        if self.is_zero():
            return self
        lead = self.leading
        return QPolynomial(c / lead for c in self._coeffs)

    def to_json(self) -> list:
        """Ascending list of canonical rational strings."""
        return [format_rational(c) for c in self._coeffs] or ["0"]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "QPolynomial":
        return cls(parse_rational(str(s)) for s in data)

    def __repr__(self) -> str:
        return f"QPolynomial({json.dumps(self.to_json())})"

    def __str__(self) -> str:
        return self.render()

    def render(self, var: str = "n") -> str:
        """Human form, highest power first, e.g. ``9/8 n^4 - 1/12 n + 1``."""
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)} {mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def latex(self, var: str = "n") -> str:
        if self.is_zero():
            return "0"
        out = ""
        for i in range(self.degree, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if mag.denominator == 1:
                num = "" if (mag == 1 and i) else str(mag.numerator)
            else:
                num = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{{{i}}}")
            term = num + mono
            if not out:
                out = ("-" if c < 0 else "") + term
            else:
                out += ("-" if c < 0 else "+") + term
        return out


def _as_poly(x) -> QPolynomial:
    if isinstance(x, QPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return QPolynomial([x])
    raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")


def poly_mul(p: QPolynomial, q: QPolynomial) -> QPolynomial:
    """Exact convolution product."""
    if p.is_zero() or q.is_zero():
        return QPolynomial()
    out = [Fraction(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return QPolynomial(out)


def poly_eval(p: QPolynomial, x: Scalar) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def binomial(n: int, k: int) -> int:
    """``C(n, k)``, with ``0`` whenever ``k < 0`` or ``k > n >= 0``.

    Negative ``n`` follows the generalized definition
    ``n (n-1) ... (n-k+1) / k!``, which the Ehrhart transforms rely on when
    evaluating at negative arguments.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    # C(-a, k) = (-1)^k C(a+k-1, k)
    return (-1) ** k * math.comb(-n + k - 1, k)


def interpolate(samples: Sequence[tuple]) -> QPolynomial:
    """Unique polynomial of degree ``< len(samples)`` through ``samples``.

    Solves the Vandermonde system by Gauss-Jordan elimination over Q.
    """
    if not samples:
        raise InvalidArgumentError("need at least one sample")
    xs = [Fraction(x) for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise InvalidArgumentError("duplicate abscissae in interpolation samples")
    size = len(xs)
    rows = [
        [x ** j for j in range(size)] + [Fraction(y)]
        for x, (_, y) in zip(xs, samples)
    ]
    for col in range(size):
        pivot = next(r for r in range(col, size) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        piv = rows[col][col]
        rows[col] = [v / piv for v in rows[col]]
        for r in range(size):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return QPolynomial(row[-1] for row in rows)


@dataclass(frozen=True)
class DeltaVector:
    """The delta-vector (h*-vector) ``delta_0 .. delta_d`` of a polytope."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if not self.entries:
            raise InvalidArgumentError("empty delta-vector")

    @property
    def dimension(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, j: int) -> int:
        return self.entries[j]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def is_nonnegative(self) -> bool:
        return all(e >= 0 for e in self.entries)

    def to_json(self) -> list:
        return list(self.entries)
