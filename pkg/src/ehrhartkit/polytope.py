"""Integral V-polytopes and their exact H-representations.

A :class:`VPolytope` stores its integer generating points together with the
computed vertex set and dimension. Direct products keep a reference to their
factors so that facets, vertices and lattice-point counts can be derived
factor-wise instead of from the (much larger) product vertex set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Tuple

from . import _linalg
from .errors import InvalidArgumentError, UnsupportedInputError

__all__ = [
    "HRep",
    "VPolytope",
    "make_polytope",
    "dimension",
    "facets",
    "contains",
    "product",
    "MAX_VERTICES",
    "MAX_DIM",
]

# brute-force facet enumeration limits
MAX_VERTICES = 16
MAX_DIM = 8

Row = Tuple[Tuple[int, ...], int]


def _dot(a: Sequence[int], x: Sequence[int]) -> int:
    return sum(ai * xi for ai, xi in zip(a, x))


def _normalize_row(a: Sequence[int], b: int, fix_sign: bool) -> Row:
    g = 0
    for v in a:
        g = math.gcd(g, v)
    g = math.gcd(g, b)
    if g > 1:
        a = [v // g for v in a]
        b //= g
    if fix_sign:
        first = next(v for v in a if v != 0)
        if first < 0:
            a = [-v for v in a]
            b = -b
    return tuple(int(v) for v in a), int(b)


@dataclass(frozen=True)
class HRep:
    """Facet inequalities ``a.x <= b`` plus affine-hull equalities ``a.x == b``.

    Rows are primitive. Equalities have a positive first nonzero entry.
    """

    equalities: Tuple[Row, ...]
    inequalities: Tuple[Row, ...]

    @property
    def ambient_dim(self) -> int:
        rows = self.equalities or self.inequalities
        return len(rows[0][0]) if rows else 0

    def canonical(self) -> "HRep":
        return HRep(tuple(sorted(self.equalities)), tuple(sorted(self.inequalities)))

    def same_as(self, other: "HRep") -> bool:
        return self.canonical() == other.canonical()

    def to_json(self) -> dict:
        return {
            "equalities": [{"a": list(a), "b": b} for a, b in self.equalities],
            "inequalities": [{"a": list(a), "b": b} for a, b in self.inequalities],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HRep":
        def rows(key):
            return tuple(
                (tuple(int(v) for v in r["a"]), int(r["b"])) for r in data.get(key, [])
            )

        return cls(rows("equalities"), rows("inequalities"))


@dataclass(frozen=True, eq=False)
class VPolytope:
    """An integral convex polytope given by generating points.

    Build instances with :func:`make_polytope` or :func:`product`; the
    constructor trusts its arguments.
    """

    ambient_dim: int
    points: Tuple[Tuple[int, ...], ...]
    vertices: Tuple[Tuple[int, ...], ...]
    dim: int
    factors: Optional[Tuple["VPolytope", ...]] = None
    label: Optional[str] = field(default=None, compare=False)

    @property
    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def is_product(self) -> bool:
        return self.factors is not None and len(self.factors) > 1

    @cached_property
    def hrep(self) -> HRep:
        if self.dim == 0:
            raise UnsupportedInputError("facets of a 0-dimensional polytope")
        if self.is_product:
            return _product_hrep(self.factors)
        return _hull_hrep(self.vertices, self.ambient_dim)[0]

    def bounding_box(self) -> list:
        cols = list(zip(*self.vertices))
        return [(min(c), max(c)) for c in cols]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VPolytope):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and sorted(self.vertices) == sorted(other.vertices)
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, tuple(sorted(self.vertices))))

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return (
            f"<VPolytope{name} N={self.ambient_dim} d={self.dim} "
            f"vertices={len(self.vertices)}>"
        )

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.is_product:
            return " x ".join(f.describe() for f in self.factors)
        return f"conv({len(self.vertices)} points in Z^{self.ambient_dim})"

    def to_json(self) -> dict:
        data = {"ambient_dim": self.ambient_dim, "points": [list(p) for p in self.points]}
        if self.is_product:
            data["factors"] = [f.to_json() for f in self.factors]
        if self.label:
            data["label"] = self.label
        return data

    @classmethod
    def from_json(cls, data: dict) -> "VPolytope":
        if not isinstance(data, dict) or "ambient_dim" not in data or "points" not in data:
            raise InvalidArgumentError('polytope JSON needs "ambient_dim" and "points"')
        label = data.get("label")
        if data.get("factors"):
            parts = [cls.from_json(f) for f in data["factors"]]
            result = parts[0]
            for f in parts[1:]:
                result = product(result, f)
            if result.ambient_dim != data["ambient_dim"]:
                raise InvalidArgumentError("factor dimensions do not add up to ambient_dim")
            given = {tuple(int(v) for v in p) for p in data["points"]}
            if given != set(result.points):
                raise InvalidArgumentError("points do not match the declared factors")
            return _relabel(result, label)
        return make_polytope(int(data["ambient_dim"]), data["points"], label=label)


def _relabel(P: VPolytope, label: Optional[str]) -> VPolytope:
    if label is None:
        return P
    return VPolytope(P.ambient_dim, P.points, P.vertices, P.dim, P.factors, label)


def _affine_data(points: Sequence[Sequence[int]]):
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    if not diffs:
        return 0, []
    # pick an independent subset of the differences as a basis of the direction space
    basis = []
    for v in diffs:
        if _linalg.rank(basis + [v]) > len(basis):
            basis.append(v)
    return len(basis), basis


def _hull_hrep(points: Sequence[Tuple[int, ...]], N: int):
    """Brute-force facets of ``conv(points)``; returns ``(HRep, d)``."""
    points = list(points)
    d, basis = _affine_data(points)
    if d == 0:
        raise UnsupportedInputError("facets of a 0-dimensional polytope")
    if len(points) > MAX_VERTICES or d > MAX_DIM:
        raise UnsupportedInputError(
            f"facet enumeration limited to {MAX_VERTICES} points and dimension "
            f"{MAX_DIM}; got {len(points)} points of dimension {d}"
        )
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    eqs = set()
    for a in _linalg.nullspace(diffs, N):
        eqs.add(_normalize_row(a, _dot(a, p0), fix_sign=True))

    ineqs = set()
    for subset in itertools.combinations(points, d):
        q0 = subset[0]
        rel = [[a - b for a, b in zip(q, q0)] for q in subset[1:]]
        constraints = [[_dot(B, r) for B in basis] for r in rel]
        null = _linalg.nullspace(constraints, d)
        if len(null) != 1:
            continue
        y = null[0]
        a = [sum(y[k] * basis[k][i] for k in range(d)) for i in range(N)]
        if not any(a):
            continue
        b = _dot(a, q0)
        slack = [_dot(a, p) - b for p in points]
        if all(s <= 0 for s in slack):
            ineqs.add(_normalize_row(a, b, fix_sign=False))
        elif all(s >= 0 for s in slack):
            ineqs.add(_normalize_row([-v for v in a], -b, fix_sign=False))
    return HRep(tuple(sorted(eqs)), tuple(sorted(ineqs))), d


def _product_hrep(parts: Sequence[VPolytope]) -> HRep:
    total = sum(p.ambient_dim for p in parts)
    eqs, ineqs = [], []
    offset = 0
    for part in parts:
        before, after = offset, total - offset - part.ambient_dim
        if part.dim == 0:
            # a point factor pins its coordinates
            for i, v in enumerate(part.vertices[0]):
                a = [0] * total
                a[offset + i] = 1
                eqs.append((tuple(a), v))
        else:
            h = part.hrep
            for a, b in h.equalities:
                eqs.append(((0,) * before + a + (0,) * after, b))
            for a, b in h.inequalities:
                ineqs.append(((0,) * before + a + (0,) * after, b))
        offset += part.ambient_dim
    return HRep(tuple(sorted(eqs)), tuple(sorted(ineqs)))


def make_polytope(N: int, points: Sequence[Sequence[int]], label: Optional[str] = None) -> VPolytope:
    """Validate integer points, deduplicate them and find the vertices."""
    if not points:
        raise InvalidArgumentError("empty point list")
    clean = []
    seen = set()
    for p in points:
        p = [p] if isinstance(p, int) else list(p)
        if len(p) != N:
            raise InvalidArgumentError(f"point {p} has length {len(p)}, expected {N}")
        if any(isinstance(v, bool) or int(v) != v for v in p):
            raise InvalidArgumentError(f"point {p} has non-integer coordinates")
        t = tuple(int(v) for v in p)
        if t not in seen:
            seen.add(t)
            clean.append(t)
    d, _ = _affine_data(clean)
    if d == 0 or len(clean) == d + 1:
        vertices = tuple(clean)
    else:
        h, _ = _hull_hrep(clean, N)
        vertices = tuple(p for p in clean if _is_vertex(p, h, d))
    return VPolytope(N, tuple(clean), vertices, d, None, label)


def _is_vertex(p, h: HRep, d: int) -> bool:
    tight = [a for a, b in h.inequalities if _dot(a, p) == b]
    return len(tight) >= d and _linalg.rank(tight) == d


def dimension(P: VPolytope) -> int:
    return P.dim


def facets(P: VPolytope) -> HRep:
    """Affine-hull equalities and irredundant facet inequalities of ``P``."""
    return P.hrep


def contains(H: HRep, z: Sequence[int], n: int = 1, strict: bool = False) -> bool:
    """Whether ``z`` lies in the dilate ``nP`` (its interior when ``strict``)."""
    for a, b in H.equalities:
        if _dot(a, z) != n * b:
            return False
    if strict:
        return all(_dot(a, z) < n * b for a, b in H.inequalities)
    return all(_dot(a, z) <= n * b for a, b in H.inequalities)


def product(P: VPolytope, Q: VPolytope, label: Optional[str] = None) -> VPolytope:
    """Direct product ``P x Q`` in ``Z^(N_P + N_Q)``."""
    parts = (P.factors if P.is_product else (P,)) + (Q.factors if Q.is_product else (Q,))
    points = tuple(p + q for p in P.points for q in Q.points)
    vertices = tuple(p + q for p in P.vertices for q in Q.vertices)
    return VPolytope(
        P.ambient_dim + Q.ambient_dim, points, vertices, P.dim + Q.dim, parts, label
    )
