"""
Errors Module
Exception hierarchy shared by the algebra library and the command-line runner
"""


class NormalReductionError(Exception):
    """Base class for every error raised by the library"""


class FieldModeError(NormalReductionError, ValueError):
    """Unsupported coefficient field (bad prime, forbidden characteristic)"""


class VariableMismatchError(NormalReductionError, ValueError):
    """Polynomials live in different variable sets or gradings"""


class InhomogeneousError(NormalReductionError, ValueError):
    """A homogeneous element was required"""


class DegreeMismatchError(NormalReductionError, ValueError):
    """Element degree does not match the graded piece it is tested against"""


class RingMismatchError(NormalReductionError, ValueError):
    """Elements or ideals belong to different ring presentations"""


class UnsupportedVariantError(NormalReductionError, ValueError):
    """Operation not defined for this ring, curve or family variant"""


class ParameterRangeError(NormalReductionError, ValueError):
    """Family parameter outside its supported range"""


class ContainmentError(NormalReductionError, ArithmeticError):
    """A denominator subspace is not contained in its numerator"""

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"containment fails in degree {degree}")


class NonStabilizedError(NormalReductionError, ArithmeticError):
    """A length sum did not reach zero inside the stabilization window"""

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"length summand still nonzero at degree {degree}")


class RetriesExhaustedError(NormalReductionError, RuntimeError):
    """Random sampling failed to certify a reduction"""

    def __init__(self, seed, attempts):
        self.seed = seed
        self.attempts = attempts
        super().__init__(f"no certified reduction after {attempts} attempts (seed={seed})")


class NonNegativeDefiniteError(NormalReductionError, ValueError):
    """Intersection matrix is not negative definite"""


class PreconditionError(NormalReductionError, ValueError):
    """Operation called outside its precondition"""


class NotNefError(NormalReductionError, ValueError):
    """Divisor data has a negative intersection number"""


class InvariantViolation(NormalReductionError, AssertionError):
    """A mathematical invariant failed on computed data"""

    def __init__(self, check_id, message):
        self.check_id = check_id
        super().__init__(f"[{check_id}] {message}")
