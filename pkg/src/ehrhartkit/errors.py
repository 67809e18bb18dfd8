"""Exception hierarchy shared by every module of the package."""


class EhrhartError(Exception):
    """Base class for all errors raised by ehrhartkit."""


class InvalidArgumentError(EhrhartError, ValueError):
    """An argument is outside the documented domain of an operation."""


class UnsupportedInputError(EhrhartError):
    """Input is valid in principle but outside what an operation handles."""


class ResourceLimitError(EhrhartError):
    """A configured size guard would be exceeded."""


class InvalidEhrhartDataError(EhrhartError, ValueError):
    """A polynomial cannot be the Ehrhart polynomial of an integral polytope."""


class RouteDisagreementError(EhrhartError):
    """Two independent computation routes produced different polynomials."""

    def __init__(self, first_route, first, second_route, second):
        self.first_route = first_route
        self.first = first
        self.second_route = second_route
        self.second = second
        super().__init__(
            f"route {first_route!r} gave {first}, "
            f"route {second_route!r} gave {second}"
        )
