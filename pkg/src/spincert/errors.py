"""Exception types shared across the package."""


class SpincertError(Exception):
    """Base class for all library errors."""


class FormMismatch(SpincertError):
    """Operands live over different bilinear forms."""


class NotCentral(SpincertError):
    """A product expected to be scalar has off-scalar content."""


class OddOnly(SpincertError):
    """Operation only defined for odd dimension."""


class NoIntertwiner(SpincertError):
    """No invertible intertwiner exists between the two representations."""


class NotSpin(SpincertError):
    """Element does not conjugate the vector space back into itself."""


class NotSpecial(SpincertError):
    """Matrix has determinant -1; no rotor lift exists."""


class StepTooCoarse(SpincertError):
    """Consecutive path samples too far apart for sign-unambiguous lifting."""


class NotScalar(SpincertError):
    """Scalar extraction failed: matrix is not a multiple of the identity."""

    def __init__(self, message: str = "", residual: float | None = None):
        super().__init__(message or "matrix is not a scalar multiple of the identity")
        self.residual = residual


class NotUnitary(SpincertError):
    """Input matrix is not unitary within tolerance."""


class ShapeMismatch(SpincertError):
    """Operand shapes or dimensions disagree."""


class CutoffTooSmall(SpincertError):
    """Hermite cutoff too small for a meaningful interior block."""


class UnsupportedGenerator(SpincertError):
    """Quadratic generator outside the supported per-mode families."""


class PathUnavailable(SpincertError):
    """No registered generator path reaches the requested matrix."""


class UnknownSuite(SpincertError):
    """Unrecognized verification suite name."""


class ParseError(SpincertError):
    """Malformed serialized payload."""


class NonFinite(SpincertError):
    """Serialized payload contains NaN or infinite entries."""
