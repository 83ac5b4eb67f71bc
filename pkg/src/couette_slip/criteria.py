"""Closed-form sufficient stability conditions for the single- and double-slip cases.

These are sufficient conditions only: ``Unknown`` never means unstable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from couette_slip.errors import InvalidInput, NonpositiveH
from couette_slip.params import CaseI, CaseII, FlowConfig, effective_reynolds

ProvenStable = "ProvenStable"
Unknown = "Unknown"

I_i, I_ii, II_iii, II_iv = "I_i", "I_ii", "II_iii", "II_iv"

NormForm = "NormForm"
SquaredForm = "SquaredForm"

TWO_SQRT2 = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class CriterionResult:
    verdict: str
    criterion_id: str | None
    margin: float
    details: dict = field(default_factory=dict)

    @property
    def proven(self):
        return self.verdict == ProvenStable

    def label(self):
        return f"{self.verdict}({self.criterion_id})" if self.proven else self.verdict

    def to_dict(self):
        return {"verdict": self.verdict, "criterion": self.criterion_id, "margin": self.margin,
                "label": self.label(), "details": dict(self.details)}


@dataclass(frozen=True)
class PoincareConstant:
    value: float
    convention: str


def delta0() -> float:
    """Root in (0, 1) of 2 d^3 + d - 1 = 0."""
    return brentq(lambda d: 2.0 * d**3 + d - 1.0, 0.0, 1.0, xtol=1e-16, rtol=4 * np.finfo(float).eps)


def bound_min_f(h: float) -> float:
    """Lower bound 2*sqrt(2h) for min over k of the largest f(k; delta), delta in (delta0, 1]."""
    if not h > 0:
        raise NonpositiveH(f"h must be positive, got {h}")
    return TWO_SQRT2 * math.sqrt(h)


def f_branch(k, h, delta):
    """f(k; delta) = (1/k) max{h + 2 sqrt2 k^3 sqrt(1-delta), h + 2 k^2 delta}, vectorized in k."""
    k = np.asarray(k, dtype=float)
    first = h + TWO_SQRT2 * k**3 * math.sqrt(1.0 - delta)
    second = h + 2.0 * k**2 * delta
    return np.maximum(first, second) / k


def f_breakpoint(delta):
    """Wavenumber where the two branches of f(k; delta) cross (delta < 1)."""
    return math.sqrt(2.0) / 2.0 * delta / math.sqrt(1.0 - delta)


def poincare_constant(convention: str = NormForm) -> PoincareConstant:
    """Best zero-mean Poincare constant on (0, 1): first Neumann eigenvalue is pi^2."""
    if convention == NormForm:
        return PoincareConstant(1.0 / math.pi, convention)
    if convention == SquaredForm:
        return PoincareConstant(1.0 / math.pi**2, convention)
    raise InvalidInput(f"unknown Poincare convention {convention!r}")


def slip_h(config: FlowConfig) -> float:
    """h = 1 - (2 max|alpha_l| - sum alpha_l)/mu, the constant of the energy chain."""
    if config.case == CaseI:
        al = config.alpha
        return 1.0 - (2.0 * abs(al) - al) / config.mu
    m = max(abs(config.alpha0), abs(config.alpha1))
    return 1.0 - (2.0 * m - config.alpha0 - config.alpha1) / config.mu


def check_case1(config: FlowConfig) -> CriterionResult:
    if config.case != CaseI:
        raise InvalidInput("check_case1 needs a single-slip configuration")
    al, mu = config.alpha, config.mu
    R = effective_reynolds(config)
    if al >= 0:
        return CriterionResult(ProvenStable, I_i, math.inf, {"R": R})
    details = {"R": R, "mu_threshold": -3.0 * al}
    if not mu > -3.0 * al:
        return CriterionResult(Unknown, None, mu + 3.0 * al, details)
    lhs = R / math.sqrt(1.0 + 3.0 * al / mu)
    details["lhs"] = lhs
    margin = TWO_SQRT2 - lhs
    return CriterionResult(ProvenStable if lhs < TWO_SQRT2 else Unknown,
                           I_ii if lhs < TWO_SQRT2 else None, margin, details)


def case2_thresholds(config: FlowConfig, convention: str = NormForm):
    cp = poincare_constant(convention).value
    m = max(abs(config.alpha0), abs(config.alpha1))
    s = config.alpha0 + config.alpha1
    return (1.0 + cp) * m - cp * s, 2.0 * m - s


def check_case2(config: FlowConfig, convention: str = NormForm) -> CriterionResult:
    if config.case != CaseII:
        raise InvalidInput("check_case2 needs a double-slip configuration")
    R = effective_reynolds(config)
    if config.alpha0 >= 0 and config.alpha1 >= 0:
        return CriterionResult(ProvenStable, II_iii, math.inf, {"R": R})
    t1, t2 = case2_thresholds(config, convention)
    details = {"R": R, "mu_thresholds": [t1, t2], "poincare": convention}
    mu = config.mu
    if not mu > max(t1, t2):
        return CriterionResult(Unknown, None, mu - max(t1, t2), details)
    lhs = R / math.sqrt(slip_h(config))
    details["lhs"] = lhs
    margin = TWO_SQRT2 - lhs
    ok = lhs < TWO_SQRT2
    return CriterionResult(ProvenStable if ok else Unknown, II_iv if ok else None, margin, details)


def check(config: FlowConfig, convention: str = NormForm) -> CriterionResult:
    return check_case1(config) if config.case == CaseI else check_case2(config, convention)
