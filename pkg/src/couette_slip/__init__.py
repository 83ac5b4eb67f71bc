"""Spectral stability toolkit for plane Couette flow with Navier slip walls."""

from couette_slip.errors import (
    CouetteError,
    DegenerateDenominator,
    HypothesisViolated,
    NonPositiveEnergy,
    NonpositiveH,
    OutOfDomain,
    SingularDenominator,
    SingularMatrix,
    SingularStep,
    SizeMismatch,
    SolverFailure,
    TooFewNodes,
    ZeroReynolds,
    ZeroWavenumber,
)
from couette_slip.params import (
    CaseI,
    CaseII,
    CouetteProfile,
    FlowConfig,
    ModeParams,
    build_profile,
    c_from_lambda,
    effective_reynolds,
    lambda_from_c,
    mode_params,
)

__version__ = "0.1.0"

__all__ = [
    "CaseI",
    "CaseII",
    "CouetteError",
    "CouetteProfile",
    "DegenerateDenominator",
    "FlowConfig",
    "HypothesisViolated",
    "ModeParams",
    "NonPositiveEnergy",
    "NonpositiveH",
    "OutOfDomain",
    "SingularDenominator",
    "SingularMatrix",
    "SingularStep",
    "SizeMismatch",
    "SolverFailure",
    "TooFewNodes",
    "ZeroReynolds",
    "ZeroWavenumber",
    "build_profile",
    "c_from_lambda",
    "effective_reynolds",
    "lambda_from_c",
    "mode_params",
]
