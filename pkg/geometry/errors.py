"""
Exception hierarchy for affine-moduli.
Every error derives from AffineModuliError and from the closest builtin, so
callers can catch either.
"""


class AffineModuliError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(AffineModuliError, ValueError):
    """Operands live in different dimensions or have the wrong shape."""


class SingularMapError(AffineModuliError, ValueError):
    """A linear map that must be invertible is (numerically) singular."""


class NonFiniteError(AffineModuliError, ValueError):
    """An input holds NaN or infinite entries."""


class DegenerateRicciError(AffineModuliError, ValueError):
    """The symmetric Ricci form is degenerate where a metric is required."""


class ZeroParameterError(AffineModuliError, ValueError):
    """A parameter that must be nonzero is zero."""


class BadParamsError(AffineModuliError, ValueError):
    """Catalog parameters violate a stated constraint."""


class ConjugationMismatchError(AffineModuliError, ValueError):
    """Complex frame data is not compatible with a real structure."""


class EmptyListError(AffineModuliError, ValueError):
    """An operation that needs at least one item received none."""


class DocumentError(AffineModuliError, ValueError):
    """A tensor document could not be parsed."""


class InconsistentExponentError(AffineModuliError, RuntimeError):
    """Equivariance trials disagree on the exponent."""


class UnknownFamilyError(AffineModuliError, LookupError):
    """No catalog family with that name."""


class UnknownScopeError(AffineModuliError, LookupError):
    """No verification scope with that name."""
