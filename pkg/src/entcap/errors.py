"""Exception hierarchy. Every error raised on purpose derives from EntcapError."""


class EntcapError(Exception):
    pass


class InputError(EntcapError, ValueError):
    """Input violates a precondition."""


class NotUnitary(InputError):
    pass


class NotSymmetric(InputError):
    pass


class NotNormalized(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotProduct(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class NotMaximallyEntangled(InputError):
    pass


class NotOrthogonal(InputError):
    pass


class InconsistentPhases(InputError):
    pass


class OutOfRange(InputError):
    pass


class NotCanonical(InputError):
    pass


class NotPerfectEntangler(InputError):
    pass


class UnknownMeasure(InputError):
    pass


class NumericalFailure(EntcapError, ArithmeticError):
    """An internal numerical procedure did not meet its accuracy target."""


class DegeneracyResolutionFailure(NumericalFailure):
    pass


class ReconstructionFailure(NumericalFailure):
    pass


class DegenerateSystem(NumericalFailure):
    pass
