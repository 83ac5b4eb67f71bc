"""Physical parameters, the affine Couette base profile and the lambda <-> c map.

Everything is nondimensional: channel height 1, streamwise period 2*pi, so the
Fourier wavenumbers k are integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from couette_slip.errors import DegenerateDenominator, InvalidInput, ZeroReynolds, ZeroWavenumber

CaseI = "I"
"""No-slip (Dirichlet) top wall, Navier slip bottom wall with coefficient alpha."""
CaseII = "II"
"""Navier slip on both walls, coefficients alpha0 (bottom) and alpha1 (top)."""


@dataclass(frozen=True)
class FlowConfig:
    case: str
    mu: float
    alpha: float = 0.0
    alpha0: float = 0.0
    alpha1: float = 0.0
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.case not in (CaseI, CaseII):
            raise InvalidInput(f"unknown case {self.case!r}; expected 'I' or 'II'")
        vals = (self.mu, self.alpha, self.alpha0, self.alpha1, self.a, self.b)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidInput("all flow parameters must be finite")
        if not self.mu > 0:
            raise InvalidInput(f"viscosity must be positive, got mu={self.mu}")

    @classmethod
    def case1(cls, mu, alpha, a=0.0, b=0.0):
        return cls(CaseI, float(mu), alpha=float(alpha), a=float(a), b=float(b))

    @classmethod
    def case2(cls, mu, alpha0, alpha1, a=0.0, b=0.0):
        return cls(CaseII, float(mu), alpha0=float(alpha0), alpha1=float(alpha1), a=float(a), b=float(b))

    def shifted(self, s):
        """Same configuration with both wall speeds shifted by ``s``."""
        return replace(self, a=self.a + s, b=self.b + s)

    def slip_ratios(self):
        """(bottom, top) slip ratios alpha/mu; the top is None for the no-slip wall."""
        if self.case == CaseI:
            return self.alpha / self.mu, None
        return self.alpha0 / self.mu, self.alpha1 / self.mu


@dataclass(frozen=True)
class CouetteProfile:
    """U(y) = slope*y + intercept on [0, 1]."""

    slope: float
    intercept: float

    def __call__(self, y):
        return self.slope * y + self.intercept


@dataclass(frozen=True)
class ModeParams:
    k: int
    R: float
    xi: float


def build_profile(config: FlowConfig) -> CouetteProfile:
    mu, a, b = config.mu, config.a, config.b
    if config.case == CaseI:
        al = config.alpha
        den = mu + al
        if den == 0.0:
            raise DegenerateDenominator(f"mu + alpha = 0 (mu={mu}, alpha={al})")
        return CouetteProfile(al * (a - b) / den, (mu * a + al * b) / den)
    a0, a1 = config.alpha0, config.alpha1
    if a0 == 0.0 and a1 == 0.0:
        # Stress-free on both walls: wall speeds drop out of the boundary
        # conditions and the steady state is the trivial flow.
        return CouetteProfile(0.0, 0.0)
    den = mu * (a0 + a1) + a0 * a1
    if den == 0.0:
        raise DegenerateDenominator(
            f"mu*(alpha0+alpha1) + alpha0*alpha1 = 0 (mu={mu}, alpha0={a0}, alpha1={a1})"
        )
    return CouetteProfile(a0 * a1 * (a - b) / den, (mu * (a1 * a + a0 * b) + a0 * a1 * b) / den)


def effective_reynolds(config: FlowConfig) -> float:
    """R = |U'| / mu (R1 in the single-slip case, R2 in the double-slip case)."""
    return abs(build_profile(config).slope) / config.mu


def mode_params(config: FlowConfig, k: int) -> ModeParams:
    if config.case == CaseI:
        xi = k * config.alpha * (config.a - config.b)
    else:
        xi = k * config.alpha0 * config.alpha1 * (config.a - config.b)
    return ModeParams(int(k), effective_reynolds(config), xi)


def lambda_from_c(config: FlowConfig, k: int, c: complex) -> complex:
    """Growth rate lambda = -i k (|U'| c + U(0)) for an Orr-Sommerfeld eigenvalue c.

    Re(lambda) = k * mu * R * Im(c).
    """
    if k == 0:
        raise ZeroWavenumber("lambda_from_c needs k != 0")
    prof = build_profile(config)
    return -1j * k * (abs(prof.slope) * complex(c) + prof.intercept)


def c_from_lambda(config: FlowConfig, k: int, lam: complex) -> complex:
    """Inverse of :func:`lambda_from_c`."""
    if k == 0:
        raise ZeroWavenumber("c_from_lambda needs k != 0")
    prof = build_profile(config)
    if prof.slope == 0.0:
        raise ZeroReynolds("c is undefined for a constant base flow")
    return (1j * complex(lam) / k - prof.intercept) / abs(prof.slope)
