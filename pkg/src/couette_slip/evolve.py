"""Linear time evolution of a single Fourier mode and decay-rate fitting.

The reduced system dq/dt = M q is advanced with the three-stage Radau IIA
method. For a linear autonomous system one step is multiplication by the
(2,3) Pade approximant of exp(dt M),

    R(z) = (1 + 2z/5 + z^2/20) / (1 - 3z/5 + 3z^2/20 - z^3/60),

which is L-stable and fifth-order accurate. Numerator and denominator are
applied in factored form so no high matrix power is ever formed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from couette_slip.cheb import integrate
from couette_slip.eigen import reduce_pencil
from couette_slip.errors import InvalidInput, NonPositiveEnergy, SingularStep

TRANSIENT = 0.2
MIN_SAMPLES = 50

# roots of the Pade numerator and denominator polynomials in z
_NUM_ROOTS = np.roots([1 / 20, 2 / 5, 1])
_DEN_ROOTS = np.roots([-1 / 60, 3 / 20, -3 / 5, 1])


@dataclass(frozen=True)
class History:
    t: np.ndarray
    energy: np.ndarray  # squared L2 norm of the mode

    def __len__(self):
        return self.t.size


@dataclass(frozen=True)
class DecayFit:
    rate: float
    r2: float
    history: History

    def to_dict(self):
        return {"rate": self.rate, "r2": self.r2, "samples": len(self.history)}


def step_matrix(M, dt):
    """Radau IIA propagator R(dt M)."""
    n = M.shape[0]
    Z = dt * np.asarray(M, dtype=complex)
    I = np.eye(n, dtype=complex)
    S = I.copy()
    for r in _NUM_ROOTS:
        S = (I - Z / r) @ S
    for r in _DEN_ROOTS:
        F = I - Z / r
        try:
            lu = sla.lu_factor(F, check_finite=True)
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise SingularStep(str(exc)) from exc
        if np.min(np.abs(np.diag(lu[0]))) <= 1e-14 * np.max(np.abs(np.diag(lu[0]))):
            raise SingularStep(f"implicit stage matrix is singular (dt={dt})")
        S = sla.lu_solve(lu, S)
    return S


def evolve_mode(op, phi0, dt: float, T: float) -> History:
    """Integrate B dphi/dt = A phi from phi0 and record the squared norm at every step."""
    if not dt > 0:
        raise InvalidInput(f"dt must be positive, got {dt}")
    nsteps = int(round(T / dt))
    if not T >= 100 * dt * (1 - 1e-12):
        raise InvalidInput(f"horizon T={T} must cover at least 100 steps of dt={dt}")
    grid = op.grid
    phi0 = np.asarray(phi0, dtype=complex)
    if phi0.shape != (grid.N,):
        raise InvalidInput(f"initial data must have {grid.N} samples")
    red = reduce_pencil(op)
    S = step_matrix(red.M, dt)
    q = red.restrict(phi0)
    w = grid.w
    t = dt * np.arange(nsteps + 1)
    energy = np.empty(nsteps + 1)
    for i in range(nsteps + 1):
        if i:
            q = S @ q
        energy[i] = float(w @ np.abs(red.lift(q)) ** 2)
    return History(t, energy)


def fit_decay(history: History, transient: float = TRANSIENT) -> DecayFit:
    """Least-squares slope of log(energy) after the initial transient; positive for decay."""
    t, e = np.asarray(history.t), np.asarray(history.energy)
    keep = t >= t[0] + transient * (t[-1] - t[0])
    t, e = t[keep], e[keep]
    if t.size < MIN_SAMPLES:
        raise InvalidInput(f"need at least {MIN_SAMPLES} post-transient samples, got {t.size}")
    if np.any(~(e > 0)):
        raise NonPositiveEnergy("energy history has non-positive entries")
    y = np.log(e)
    slope, icpt = np.polyfit(t, y, 1)
    resid = y - (slope * t + icpt)
    ss = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss if ss > 0 else 1.0
    return DecayFit(float(-slope), r2, history)
