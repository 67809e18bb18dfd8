"""Exact Ehrhart polynomials, delta-vectors and coefficient sign patterns."""

from .counting import count, count_naive, count_scan, simplex_delta
from .ehrhart import (
    count_positive_real_roots,
    delta_from_poly,
    ehrhart_polynomial,
    ehrhart_report,
    poly_from_delta,
    sign_pattern,
)
from .errors import (
    EhrhartError,
    InvalidArgumentError,
    InvalidEhrhartDataError,
    ResourceLimitError,
    RouteDisagreementError,
    UnsupportedInputError,
)
from .exactmath import DeltaVector, QPolynomial, binomial, interpolate, rat
from .polytope import HRep, VPolytope, contains, facets, make_polytope, product

__version__ = "0.1.0"
