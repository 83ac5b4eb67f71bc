"""Exception hierarchy. Every error raised by the package derives from CouetteError."""


class CouetteError(Exception):
    pass


class InvalidInput(CouetteError, ValueError):
    """Input that violates a documented precondition (CLI exit code 1)."""


class NumericalFailure(CouetteError, ArithmeticError):
    """A numerical step failed (CLI exit code 2)."""


class DegenerateDenominator(InvalidInput):
    pass


class ZeroWavenumber(InvalidInput):
    pass


class TooFewNodes(InvalidInput):
    pass


class SizeMismatch(InvalidInput):
    pass


class OutOfDomain(InvalidInput):
    pass


class NonpositiveH(InvalidInput):
    pass


class HypothesisViolated(InvalidInput):
    """The viscosity is below the threshold where an inequality is claimed."""


class ZeroReynolds(InvalidInput):
    pass


class SolverFailure(NumericalFailure):
    def __init__(self, message, k=None):
        super().__init__(message if k is None else f"{message} (k={k})")
        self.k = k


class SingularDenominator(NumericalFailure):
    pass


class SingularMatrix(NumericalFailure):
    pass


class SingularStep(NumericalFailure):
    pass


class NonPositiveEnergy(NumericalFailure):
    pass
