"""Energy functionals of Orr-Sommerfeld eigenfunctions and the inequalities built on them.

For an eigenpair (c, phi) of

    (D^2 - k^2)^2 phi = i k R (y - c) (D^2 - k^2) phi

pairing with conj(phi) and integrating by parts gives the real energy

    E = I2^2 + 2 k^2 I1^2 + k^4 I0^2,   I2^2 = int|phi''|^2 + sum (alpha_l/mu)|phi'(l)|^2,

and Im c = (2Q - E/(kR)) / (I1^2 + k^2 I0^2) with Q = (i/2) int phi conj(phi').
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from couette_slip.cheb import ChebGrid, integrate
from couette_slip.criteria import slip_h
from couette_slip.errors import HypothesisViolated, SizeMismatch, ZeroReynolds, ZeroWavenumber
from couette_slip.operators import os_bc_rows
from couette_slip.params import CaseI, FlowConfig, build_profile

Iform = "Iform"
Hform = "Hform"

CHAIN_SLACK = 1e-9
IMC_SLACK = 1e-7
WEAK_FORM_TOL = 1e-7


@dataclass(frozen=True)
class EnergyFunctionals:
    I0sq: float
    I1sq: float
    I2sq: float
    Q: complex
    variant: str = Iform
    # pieces kept for the weak-form identity
    phi_dphi: complex = 0j        # int phi' conj(phi)
    y_dphi2: float = 0.0          # int y |phi'|^2
    y_phi2: float = 0.0           # int y |phi|^2
    d2sq: float = 0.0             # int |phi''|^2 without boundary terms

    def energy(self, k):
        return self.I2sq + 2 * k * k * self.I1sq + k**4 * self.I0sq

    def weight(self, k):
        return self.I1sq + k * k * self.I0sq


@dataclass(frozen=True)
class OSEigenpair:
    """Eigenpair oriented so that the wavenumber is positive and the shear is ``+R``.

    ``lam`` is the growth rate as returned by the eigensolver; Im c carries
    its real part, Re lam = k mu R Im c, in either orientation.
    """

    c: complex
    phi: np.ndarray
    k: int
    R: float
    lam: complex


def os_eigenpair(config: FlowConfig, k: int, lam: complex, phi) -> OSEigenpair:
    """Convert a growth-rate eigenpair (lambda, phi) at wavenumber k to c form.

    When k*U' < 0 the complex-conjugate pair at -k is used, which carries the
    same real part of lambda.
    """
    if k == 0:
        raise ZeroWavenumber("c form needs k != 0")
    prof = build_profile(config)
    sigma, tau = prof.slope, prof.intercept
    if sigma == 0.0:
        raise ZeroReynolds("c form needs a sheared base flow")
    phi = np.asarray(phi, dtype=complex)
    lam0 = lam = complex(lam)
    if k * sigma < 0:
        k, lam, phi = -k, lam.conjugate(), phi.conj()
    c = (1j * lam / k - tau) / sigma
    return OSEigenpair(c, phi, abs(k), abs(sigma) / config.mu, lam0)


def compute_functionals(phi, grid: ChebGrid, k: int, config: FlowConfig, variant: str = Iform) -> EnergyFunctionals:
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (grid.N,):
        raise SizeMismatch(f"expected {grid.N} samples, got shape {phi.shape}")
    d1 = grid.D1 @ phi
    d2 = grid.D2 @ phi
    y = grid.y
    I0sq = integrate(grid, np.abs(phi) ** 2).real
    I1sq = integrate(grid, np.abs(d1) ** 2).real
    d2sq = integrate(grid, np.abs(d2) ** 2).real
    r0, r1 = config.slip_ratios()
    if variant == Hform:
        # literal transcription with the function itself in place of phi'' and phi'
        top = 0.0 if r1 is None else r1 * abs(phi[-1]) ** 2
        I2sq = I0sq + r0 * abs(phi[0]) ** 2 + top
    else:
        top = 0.0 if r1 is None else r1 * abs(d1[-1]) ** 2
        I2sq = d2sq + r0 * abs(d1[0]) ** 2 + top
    Q = 0.5j * integrate(grid, phi * d1.conj())
    return EnergyFunctionals(
        I0sq=I0sq, I1sq=I1sq, I2sq=I2sq, Q=complex(Q), variant=variant,
        phi_dphi=complex(integrate(grid, d1 * phi.conj())),
        y_dphi2=integrate(grid, y * np.abs(d1) ** 2).real,
        y_phi2=integrate(grid, y * np.abs(phi) ** 2).real,
        d2sq=d2sq,
    )


def bc_residual(phi, grid: ChebGrid, config: FlowConfig) -> float:
    phi = np.asarray(phi)
    C = os_bc_rows(config, grid)
    scale = max(np.abs(phi).max(), 1e-300)
    # normalize each functional by its row size so derivative rows are comparable
    return float(np.max(np.abs(C @ phi) / (np.abs(C).sum(axis=1) * scale)))


@dataclass(frozen=True)
class ChainReport:
    h: float
    slacks: dict
    passed: bool
    bc_ok: bool
    tol: float = CHAIN_SLACK


def check_inequality_chain(E: EnergyFunctionals, config: FlowConfig, k: int = 1,
                           phi=None, grid: ChebGrid | None = None, tol: float = CHAIN_SLACK) -> ChainReport:
    """I2^2 >= h I1^2, I2^2 >= h I0^2, I1^2 >= I0^2 (and int|phi''|^2 >= I1^2).

    ``k`` does not enter the inequalities; it is accepted for symmetry with the
    other checks.
    """
    h = slip_h(config)
    if not h > 0:
        raise HypothesisViolated(f"viscosity below the energy-chain threshold (h={h})")
    slacks = {
        "I2>=h*I1": E.I2sq - h * E.I1sq,
        "I2>=h*I0": E.I2sq - h * E.I0sq,
        "I1>=I0": E.I1sq - E.I0sq,
        "D2>=I1": E.d2sq - E.I1sq,
    }
    bc_ok = True
    if phi is not None and grid is not None:
        bc_ok = bc_residual(phi, grid, config) < 1e-8
    passed = all(v >= -tol for v in slacks.values())
    return ChainReport(h, slacks, passed, bc_ok, tol)


@dataclass(frozen=True)
class ImcReport:
    im_c: float
    bound: float
    slack: float
    passed: bool
    skipped: bool = False
    identity_im_c: float = math.nan
    details: dict = field(default_factory=dict)


def imc_bound(E: EnergyFunctionals, k: int, R: float) -> float:
    I0, I1 = math.sqrt(E.I0sq), math.sqrt(E.I1sq)
    return (I0 * I1 - E.energy(k) / (k * R)) / E.weight(k)


def check_imc_bound(pair: OSEigenpair, E: EnergyFunctionals, k: int | None = None, R: float | None = None,
                    tol: float = IMC_SLACK) -> ImcReport:
    """Hoelder bound Im c <= (I0 I1 - E/(kR)) / (I1^2 + k^2 I0^2)."""
    k = pair.k if k is None else k
    R = pair.R if R is None else R
    if R == 0:
        return ImcReport(math.nan, math.nan, math.nan, True, skipped=True)
    if k <= 0:
        raise ZeroWavenumber("the bound is stated for k > 0")
    bound = imc_bound(E, k, R)
    im_c = pair.c.imag
    ident = (2.0 * E.Q.real - E.energy(k) / (k * R)) / E.weight(k)
    slack = bound - im_c
    return ImcReport(im_c, bound, slack, slack >= -tol, identity_im_c=ident,
                     details={"ratio_lower": E.energy(k) / (k * math.sqrt(E.I0sq * E.I1sq))})


def check_weak_form(pair: OSEigenpair, grid: ChebGrid, k: int | None = None, R: float | None = None,
                    config: FlowConfig | None = None) -> float:
    """Relative residual of the integrated-by-parts identity

        I2^2 + 2k^2 I1^2 + k^4 I0^2
            = i k R [ -int phi' conj(phi) - int y|phi'|^2 - k^2 int y|phi|^2 + c (I1^2 + k^2 I0^2) ].
    """
    k = pair.k if k is None else k
    R = pair.R if R is None else R
    if config is None:
        raise ValueError("config is required for the slip boundary terms")
    if not np.any(pair.phi):
        return 0.0
    E = compute_functionals(pair.phi, grid, k, config)
    lhs = E.energy(k)
    rhs = 1j * k * R * (-E.phi_dphi - E.y_dphi2 - k * k * E.y_phi2 + pair.c * E.weight(k))
    denom = abs(lhs) + abs(rhs)
    return float(abs(lhs - rhs) / denom) if denom > 0 else 0.0


def one_sided_chain_ok(E: EnergyFunctionals, tol: float = CHAIN_SLACK) -> bool:
    """int|f|^2 <= int|f'|^2 <= int|f''|^2 for a function vanishing at one wall."""
    return E.I1sq - E.I0sq >= -tol and E.d2sq - E.I1sq >= -tol


def is_case1(config):
    return config.case == CaseI




PAIR_RESIDUAL = 1e-8


def converged_eigenpairs(config: FlowConfig, k: int, N: int = 96, residual: float = PAIR_RESIDUAL):
    """Resolved eigenpairs at wavenumber k, in c form.

    A pair qualifies when its eigenvalue survives the N versus 1.5 N filter and
    its eigenfunction satisfies the weak-form identity to ``residual``. The
    second test matters for the fast wall modes: there |c| exceeds 1e4, the
    eigenvalue is reproducible under refinement, yet the derivatives of the
    eigenfunction carry rounding error far above the absolute tolerances used
    for c. Without base shear (R = 0) there is no c form and the list is empty.
    """
    from couette_slip.eigen import cached_grid, solve_filtered
    from couette_slip.errors import SolverFailure

    grid = cached_grid(N)
    if build_profile(config).slope == 0.0 or k == 0:
        return [], grid
    try:
        spec = solve_filtered(config, k, N, want_vectors=True)
    except SolverFailure:
        return [], grid
    pairs = []
    for j, lam in enumerate(spec.eigenvalues):
        pair = os_eigenpair(config, k, lam, spec.eigenfunctions[:, j])
        if check_weak_form(pair, grid, config=config) <= residual:
            pairs.append(pair)
    return pairs, grid
