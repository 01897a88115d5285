"""Exception types shared across the package.

Pipeline failures (singular systems, diverging quadrature, ...) derive from
:class:`MomentError`; malformed user input raises :class:`SchemaError` or
:class:`ShapeMismatch` so callers can tell the two apart.
"""


class MomentError(Exception):
    """Base class for computation failures in the synthesis pipeline."""


class ShapeMismatch(ValueError):
    """Dimension, degree, or backend of two operands do not agree."""


class ZeroConstantTerm(MomentError):
    """Sequence has no convolution inverse: constant term is (numerically) zero."""


class ResidualTooLarge(MomentError):
    """Float linear solve produced a residual above the accepted bound."""


class SingularSystem(MomentError):
    """Interpolation system is singular (must not happen on the full lattice)."""


class QuadratureNonConvergence(MomentError):
    """Panel doubling changed the quadrature result by more than the tolerance."""


class KernelVariantError(MomentError):
    """Operation requires a different kernel variant than the one supplied."""


class SchemaError(ValueError):
    """JSON document does not match the expected schema."""
