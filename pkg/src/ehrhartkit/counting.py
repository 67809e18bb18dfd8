"""Lattice-point counts of dilates ``nP`` by independent strategies.

``count_naive`` walks the integer bounding box and is the oracle for the
others. ``count_scan`` walks only feasible prefixes, using bounds obtained by
Fourier-Motzkin elimination, and counts the last coordinate by interval
length. ``simplex_delta`` enumerates the fundamental parallelepiped of the
cone over a full-dimensional simplex, which gives the delta-vector and hence
every count at once.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _linalg
from .errors import InvalidArgumentError, ResourceLimitError, UnsupportedInputError
from .exactmath import DeltaVector, binomial
from .polytope import VPolytope, contains

__all__ = [
    "DEFAULT_GUARD",
    "STRATEGIES",
    "CountResult",
    "count_naive",
    "count_scan",
    "count_interior",
    "count_from_delta",
    "simplex_delta",
    "count",
    "counts_for_interpolation",
]

DEFAULT_GUARD = 10**8
STRATEGIES = ("naive-box", "projected-scan", "simplex-parallelepiped", "product-multiply")

# numpy int64 headroom for the vectorised penultimate level
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class CountResult:
    n: int
    count: int
    strategy: str


def _check_n(n: int) -> None:
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"dilation factor must be a positive integer, got {n}")


def count_naive(P: VPolytope, n: int, guard: int = DEFAULT_GUARD, strict: bool = False) -> int:
    """Count ``nP`` (or its relative interior) by testing every box point."""
    _check_n(n)
    if P.dim == 0:
        return 1
    box = [(n * lo, n * hi) for lo, hi in P.bounding_box()]
    size = math.prod(hi - lo + 1 for lo, hi in box)
    if size > guard:
        raise ResourceLimitError(
            f"bounding box of {n}P has {size} candidate points, guard is {guard}"
        )
    H = P.hrep
    ranges = [range(lo, hi + 1) for lo, hi in box]
    return sum(1 for z in itertools.product(*ranges) if contains(H, z, n, strict))


# --- projected scan -----------------------------------------------------------

# A scan row (a, b, c) means a . x <= n*b + c.
ScanRow = Tuple[Tuple[int, ...], int, int]


def _norm_scan_row(a, b, c) -> ScanRow:
    g = 0
    for v in a:
        g = math.gcd(g, v)
    g = math.gcd(math.gcd(g, b), c)
    if g > 1:
        a = [v // g for v in a]
        b //= g
        c //= g
    return tuple(a), b, c


def _eliminate_last(rows: Sequence[ScanRow]) -> Tuple[List[ScanRow], List[Tuple[int, int]]]:
    """Fourier-Motzkin step; returns projected rows and variable-free remainders."""
    keep, pos, neg = set(), [], []
    for a, b, c in rows:
        last = a[-1]
        if last > 0:
            pos.append((a, b, c))
        elif last < 0:
            neg.append((a, b, c))
        else:
            keep.add(_norm_scan_row(a[:-1], b, c))
    for ap, bp, cp in pos:
        for aq, bq, cq in neg:
            lam, mu = -aq[-1], ap[-1]
            a = [lam * x + mu * y for x, y in zip(ap[:-1], aq[:-1])]
            keep.add(_norm_scan_row(a, lam * bp + mu * bq, lam * cp + mu * cq))
    projected, constants = [], []
    for a, b, c in keep:
        if any(a):
            projected.append((a, b, c))
        else:
            constants.append((b, c))
    return projected, constants


@dataclass(frozen=True)
class _ScanPlan:
    order: Tuple[int, ...]
    # levels[k]: rows (prefix coefficients, own coefficient, b, c) bounding coordinate k
    levels: Tuple[Tuple[Tuple[Tuple[int, ...], int, int, int], ...], ...]
    constants: Tuple[Tuple[int, int], ...]


def _scan_plan(P: VPolytope, strict: bool, order: Optional[Sequence[int]]) -> _ScanPlan:
    N = P.ambient_dim
    H = P.hrep
    if order is None:
        widths = [hi - lo for lo, hi in P.bounding_box()]
        order = sorted(range(N), key=lambda i: widths[i])
    order = tuple(order)
    if sorted(order) != list(range(N)):
        raise InvalidArgumentError(f"order {order} is not a permutation of 0..{N - 1}")

    def perm(a):
        return tuple(a[i] for i in order)

    rows = set()
    for a, b in H.equalities:
        rows.add((perm(a), b, 0))
        rows.add((perm(tuple(-v for v in a)), -b, 0))
    for a, b in H.inequalities:
        rows.add((perm(a), b, -1 if strict else 0))
    verts = [perm(v) for v in P.vertices]

    systems = {N: sorted(rows)}
    constants = []
    for k in range(N, 1, -1):
        projected, consts = _eliminate_last(systems[k])
        constants.extend(consts)
        if not strict:
            # non-supporting rows of an exact projection are redundant
            projected = [
                (a, b, c)
                for a, b, c in projected
                if max(sum(x * y for x, y in zip(a, v)) for v in verts) == b
            ]
        systems[k - 1] = sorted(set(projected))
    levels = []
    for k in range(1, N + 1):
        levels.append(
            tuple((a[: k - 1], a[k - 1], b, c) for a, b, c in systems[k] if a[k - 1] != 0)
        )
    return _ScanPlan(order, tuple(levels), tuple(sorted(set(constants))))


def _bounds(level, prefix, n) -> Tuple[int, int]:
    lo = hi = None
    for pre, own, b, c in level:
        rhs = n * b + c - sum(x * y for x, y in zip(pre, prefix))
        if own > 0:
            ub = rhs // own
            hi = ub if hi is None or ub < hi else hi
        else:
            lb = -(rhs // -own)
            lo = lb if lo is None or lb > lo else lo
    if lo is None or hi is None:
        raise UnsupportedInputError("scan found an unbounded coordinate")
    return lo, hi


def _count_last_two(plan: _ScanPlan, prefix: List[int], n: int) -> int:
    """Count all completions of ``prefix`` (length N-2) over the last two coordinates."""
    k = len(prefix)
    lo, hi = _bounds(plan.levels[k], prefix, n)
    if lo > hi:
        return 0
    last = plan.levels[k + 1]
    bases = []
    for pre, own, b, c in last:
        base = n * b + c - sum(x * y for x, y in zip(pre[:k], prefix))
        bases.append((base, pre[k], own))
    span = max(abs(lo), abs(hi))
    magnitude = max((abs(base) + abs(mid) * span for base, mid, _ in bases), default=0)
    if magnitude < _INT64_SAFE:
        xs = np.arange(lo, hi + 1, dtype=np.int64)
        upper = lower = None
        for base, mid, own in bases:
            rhs = base - mid * xs
            if own > 0:
                ub = rhs // own
                upper = ub if upper is None else np.minimum(upper, ub)
            else:
                lb = -(rhs // -own)
                lower = lb if lower is None else np.maximum(lower, lb)
        widths = upper - lower + 1
        return int(widths[widths > 0].sum())
    total = 0
    for x in range(lo, hi + 1):
        l2, h2 = _bounds(last, prefix + [x], n)
        if h2 >= l2:
            total += h2 - l2 + 1
    return total


def _count_from(plan: _ScanPlan, prefix: List[int], n: int) -> int:
    N = len(plan.levels)
    k = len(prefix)
    if k == N - 1:
        lo, hi = _bounds(plan.levels[k], prefix, n)
        return max(0, hi - lo + 1)
    if k == N - 2:
        return _count_last_two(plan, prefix, n)
    lo, hi = _bounds(plan.levels[k], prefix, n)
    return sum(_count_from(plan, prefix + [x], n) for x in range(lo, hi + 1))


def _count_first_values(args) -> int:
    plan, values, n = args
    return sum(_count_from(plan, [x], n) for x in values)


def count_scan(
    P: VPolytope,
    n: int,
    order: Optional[Sequence[int]] = None,
    jobs: int = 1,
    strict: bool = False,
) -> int:
    """Count lattice points of ``nP`` (relative interior when ``strict``).

    ``order`` permutes the coordinates; by default the widest coordinate is
    scanned last. ``jobs > 1`` splits the first coordinate across processes.
    """
    _check_n(n)
    if P.dim == 0:
        return 1
    plan = _scan_plan(P, strict, order)
    for b, c in plan.constants:
        if n * b + c < 0:
            return 0
    if len(plan.levels) == 1 or jobs <= 1:
        return _count_from(plan, [], n)
    lo, hi = _bounds(plan.levels[0], [], n)
    values = list(range(lo, hi + 1))
    if not values:
        return 0
    chunks = [values[i::jobs] for i in range(jobs) if values[i::jobs]]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        return sum(pool.map(_count_first_values, [(plan, ch, n) for ch in chunks]))


def count_interior(P: VPolytope, n: int) -> int:
    """Lattice points in the relative interior of ``nP``."""
    return count_scan(P, n, strict=True)


# --- fundamental parallelepiped -----------------------------------------------


def simplex_delta(P: VPolytope) -> DeltaVector:
    """Delta-vector of a full-dimensional lattice simplex.

    Lattice points of the half-open parallelepiped spanned by ``(v_i, 1)``
    are in bijection with ``Z^(d+1) / W Z^(d+1)``; a lower-triangular Hermite
    basis of ``W`` gives a box of coset representatives, each of which is
    reduced to the parallelepiped through fractional parts of ``W^-1 z``.
    """
    if not P.is_simplex or not P.is_full_dimensional or P.dim == 0:
        raise UnsupportedInputError(
            "parallelepiped route needs a full-dimensional simplex of positive dimension"
        )
    d = P.dim
    cols = [list(v) + [1] for v in P.vertices]
    W = [[cols[j][i] for j in range(d + 1)] for i in range(d + 1)]
    det = _linalg.det(W)
    vol = abs(det)
    sign = 1 if det > 0 else -1
    adj = _linalg.adjugate(W)
    diag = [h[i] for i, h in enumerate(_linalg.hermite_lower(cols))]
    assert math.prod(diag) == vol
    delta = [0] * (d + 1)
    for y in itertools.product(*(range(h) for h in diag)):
        # t = adj(W) y / det; height = sum of fractional parts of t
        s = 0
        for row in adj:
            s += (sign * sum(r * v for r, v in zip(row, y))) % vol
        height, rem = divmod(s, vol)
        assert rem == 0
        delta[height] += 1
    return DeltaVector(delta)


def count_from_delta(delta: DeltaVector, n: int) -> int:
    d = delta.dimension
    return sum(dj * binomial(n + d - j, d) for j, dj in enumerate(delta))


# --- strategy selection -------------------------------------------------------


def _best_strategy(P: VPolytope) -> str:
    if P.is_simplex and P.is_full_dimensional and P.dim > 0:
        return "simplex-parallelepiped"
    if P.is_product:
        return "product-multiply"
    return "projected-scan"


def count(
    P: VPolytope,
    n: int,
    strategy: str = "auto",
    guard: int = DEFAULT_GUARD,
    jobs: int = 1,
) -> CountResult:
    """Count ``nP`` with the named strategy (``"auto"`` picks the cheapest)."""
    _check_n(n)
    if strategy == "auto":
        strategy = _best_strategy(P)
    if strategy == "naive-box":
        value = count_naive(P, n, guard=guard)
    elif strategy == "projected-scan":
        value = count_scan(P, n, jobs=jobs)
    elif strategy == "simplex-parallelepiped":
        value = count_from_delta(simplex_delta(P), n)
    elif strategy == "product-multiply":
        if not P.is_product:
            raise UnsupportedInputError("product-multiply needs a declared product")
        value = math.prod(count(f, n, guard=guard, jobs=jobs).count for f in P.factors)
    else:
        raise InvalidArgumentError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    return CountResult(n, value, strategy)


def counts_for_interpolation(P: VPolytope, jobs: int = 1) -> Tuple[List[Tuple[int, int]], str]:
    """Samples ``(n, i(P, n))`` for ``n = 0..dim P`` and the strategy used."""
    strategy = _best_strategy(P)
    if strategy == "simplex-parallelepiped":
        delta = simplex_delta(P)
        samples = [(n, count_from_delta(delta, n)) for n in range(1, P.dim + 1)]
    else:
        samples = [(n, count(P, n, strategy, jobs=jobs).count) for n in range(1, P.dim + 1)]
    return [(0, 1)] + samples, strategy
