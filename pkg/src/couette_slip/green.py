"""Green function of the streamwise-velocity resolvent problem and a direct solver for it.

Per Fourier mode the resolvent problem reads

    (zeta^2 - d^2/dy^2) u = f  on (0, 1),   (alpha/mu) u(0) - u'(0) = 0,   u(1) = 0,

with zeta^2 = lambda/mu + k^2 and Re(zeta) > 0. The viscosity is folded in by
that rescaling: the physical solution of (lambda - mu (d^2 - k^2)) u = f is
the solution above with right-hand side f/mu.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from couette_slip.cheb import ChebGrid, integrate, interpolate
from couette_slip.errors import InvalidInput, SingularDenominator, SingularMatrix, SizeMismatch
from couette_slip.params import CaseI, FlowConfig


@dataclass(frozen=True)
class GreenParams:
    zeta: complex
    slip_ratio: float

    def __post_init__(self):
        if not complex(self.zeta).real > 0:
            raise InvalidInput(f"zeta must have positive real part, got {self.zeta}")

    @classmethod
    def from_lambda(cls, lam, k, config: FlowConfig):
        zeta = cmath.sqrt(complex(lam) / config.mu + k * k)
        return cls(zeta, config.slip_ratios()[0])

    @property
    def denominator(self):
        z, r = complex(self.zeta), self.slip_ratio
        return (r + z) - (r - z) * cmath.exp(-2 * z)


def green_eval(p: GreenParams, y, s):
    """G(y, s); every exponential has a non-positive real exponent for y, s in [0, 1]."""
    y = np.asarray(y, dtype=float)
    s = np.asarray(s, dtype=float)
    z, r = complex(p.zeta), p.slip_ratio
    D = p.denominator
    if abs(D) <= 1e-14 * (abs(r) + abs(z)):
        raise SingularDenominator(f"Green denominator vanishes (zeta={z}, alpha/mu={r})")
    scale = 2.0 * z * D
    d = np.abs(s - y)
    g1 = (r + z) * np.exp(-z * (2.0 - s - y)) / scale
    g2 = (r - z) * np.exp(-z * (s + y)) / scale
    g3 = -(r - z) * np.exp(-z * (2.0 - s + y)) / scale
    g4 = -(r - z) * np.exp(-z * (2.0 + s - y)) / scale
    g5 = -np.exp(-z * d) / (2.0 * z)
    # the five terms sum to the Green function of (d^2 - zeta^2); flip for (zeta^2 - d^2)
    return -(g1 + g2 + g3 + g4 + g5)


def _check(grid, f):
    f = np.asarray(f)
    if f.shape != (grid.N,):
        raise SizeMismatch(f"expected {grid.N} samples, got shape {f.shape}")
    return f


def resolvent_solve_green(p: GreenParams, grid: ChebGrid, f, n_quad: int = 64):
    """u(y_i) = int_0^1 G(y_i, s) f(s) ds, split at the kink s = y_i."""
    f = _check(grid, f)
    xg, wg = np.polynomial.legendre.leggauss(n_quad)
    u = np.zeros(grid.N, dtype=complex)
    for i, yi in enumerate(grid.y):
        for lo, hi in ((0.0, yi), (yi, 1.0)):
            if hi <= lo:
                continue
            s = lo + (hi - lo) * 0.5 * (xg + 1.0)
            u[i] += 0.5 * (hi - lo) * np.sum(wg * green_eval(p, yi, s) * interpolate(grid, f, s))
    return u


def direct_matrix(p: GreenParams, grid: ChebGrid):
    z2 = complex(p.zeta) ** 2
    M = z2 * np.eye(grid.N, dtype=complex) - grid.D2
    M[0] = -grid.D1[0]
    M[0, 0] += p.slip_ratio
    M[-1] = 0.0
    M[-1, -1] = 1.0
    return M


def resolvent_solve_direct(p: GreenParams, grid: ChebGrid, f):
    f = _check(grid, f)
    M = direct_matrix(p, grid)
    rhs = np.array(f, dtype=complex)
    rhs[0] = rhs[-1] = 0.0
    if np.linalg.cond(M) > 1e14:
        raise SingularMatrix(f"resolvent matrix is numerically singular (zeta={p.zeta})")
    return np.linalg.solve(M, rhs)


def random_smooth(grid: ChebGrid, rng: np.random.Generator, degree: int = 12):
    """Random complex polynomial of modest degree, unit L2 norm on [0, 1]."""
    coef = (rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)) / (1.0 + np.arange(degree + 1))
    f = np.polynomial.chebyshev.chebval(2.0 * grid.y - 1.0, coef)
    return f / np.sqrt(integrate(grid, np.abs(f) ** 2).real)


def h2_norm(grid: ChebGrid, u, k: int = 0):
    """Discrete H^2 norm of the Fourier mode u(y) e^{ikx} (sum over all derivatives up to order 2)."""
    d1, d2 = grid.D1 @ u, grid.D2 @ u
    I0 = integrate(grid, np.abs(u) ** 2).real
    I1 = integrate(grid, np.abs(d1) ** 2).real
    I2 = integrate(grid, np.abs(d2) ** 2).real
    k2 = float(k * k)
    return float(np.sqrt((1 + k2 + k2 * k2) * I0 + (1 + k2) * I1 + I2))


@dataclass(frozen=True)
class ResolventScan:
    lambdas: list
    ratios: list          # per lambda, max over right-hand sides
    max_ratio: float
    min_ratio: float

    @property
    def spread(self):
        if self.min_ratio == 0.0:
            return 1.0 if self.max_ratio == 0.0 else np.inf
        return self.max_ratio / self.min_ratio

    def to_dict(self):
        return {"lambdas": [[complex(l).real, complex(l).imag] for l in self.lambdas],
                "ratios": list(self.ratios), "max_ratio": self.max_ratio,
                "min_ratio": self.min_ratio, "spread": self.spread}


def resolvent_estimate_scan(config: FlowConfig, k: int, lambda_samples, grid: ChebGrid,
                            n_rhs: int = 5, seed: int = 0, rhs=None) -> ResolventScan:
    """Empirical constant in |lambda| |u| + mu |u|_{H^2} <= C |f| over the given lambdas.

    Only the single-slip streamwise problem is scanned. ``rhs`` overrides the
    random right-hand sides.
    """
    if config.case != CaseI:
        raise InvalidInput("the resolvent scan covers the single-slip case")
    rng = np.random.default_rng(seed)
    if rhs is None:
        rhs = [random_smooth(grid, rng) for _ in range(n_rhs)]
    ratios = []
    for lam in lambda_samples:
        lam = complex(lam)
        best = 0.0
        for f in rhs:
            fn = np.sqrt(integrate(grid, np.abs(f) ** 2).real)
            if fn == 0.0:
                continue
            zeta = cmath.sqrt(lam / config.mu + k * k)
            if zeta.real == 0.0:
                # lambda = 0 at k = 0: solve the Poisson problem directly
                zeta = 0j
            p = _Params(zeta, config.slip_ratios()[0])
            u = resolvent_solve_direct(p, grid, np.asarray(f) / config.mu)
            un = np.sqrt(integrate(grid, np.abs(u) ** 2).real)
            best = max(best, (abs(lam) * un + config.mu * h2_norm(grid, u, k)) / fn)
        ratios.append(float(best))
    return ResolventScan(list(lambda_samples), ratios, max(ratios), min(ratios))


@dataclass(frozen=True)
class _Params:
    # unchecked variant admitting zeta = 0 for the direct solver
    zeta: complex
    slip_ratio: float
