"""Per-wavenumber discrete operators.

For k != 0 the wall-normal velocity phi obeys the Orr-Sommerfeld pencil

    mu (D^2 - k^2)^2 phi - i k U(y) (D^2 - k^2) phi = lambda (D^2 - k^2) phi,

(U is affine, so no U'' term). For k = 0 the streamwise velocity obeys
lambda u = mu u''. Boundary conditions replace the first/last collocation rows;
the corresponding rows of the mass matrix are zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from couette_slip.cheb import ChebGrid
from couette_slip.errors import ZeroWavenumber
from couette_slip.params import CaseI, CaseII, FlowConfig, build_profile


@dataclass(frozen=True, eq=False)
class ModeOperator:
    """Orr-Sommerfeld pencil ``Amat phi = lambda Bmat phi`` at wavenumber k."""

    k: int
    Amat: np.ndarray
    Bmat: np.ndarray
    bc_rows: tuple
    case: str
    config: FlowConfig
    grid: ChebGrid

    @property
    def N(self):
        return self.grid.N


@dataclass(frozen=True, eq=False)
class K0Operator:
    """Streamwise-uniform problem ``lambda u = mu u''`` with Robin/Dirichlet rows.

    ``project_mean`` marks the stress-free double-slip case whose constant mode
    is removed before solving.
    """

    Amat: np.ndarray
    Bmat: np.ndarray
    bc_rows: tuple
    case: str
    config: FlowConfig
    grid: ChebGrid
    project_mean: bool = False
    k: int = 0

    @property
    def M(self):
        return self.Amat

    @property
    def N(self):
        return self.grid.N


def os_bc_rows(config: FlowConfig, grid: ChebGrid) -> np.ndarray:
    """The four boundary functionals, ordered to match rows (0, 1, N-2, N-1)."""
    N = grid.N
    D1, D2 = grid.D1, grid.D2
    C = np.zeros((4, N))
    C[0, 0] = 1.0
    r0, r1 = config.slip_ratios()
    C[1] = D2[0] - r0 * D1[0]
    if config.case == CaseI:
        C[2] = D1[-1]
    else:
        C[2] = D2[-1] + r1 * D1[-1]
    C[3, -1] = 1.0
    return C


def assemble_os(config: FlowConfig, k: int, grid: ChebGrid) -> ModeOperator:
    if k == 0:
        raise ZeroWavenumber("the Orr-Sommerfeld pencil needs k != 0; use assemble_k0")
    prof = build_profile(config)
    N = grid.N
    I = np.eye(N)
    L = grid.D2 - k * k * I
    L2 = grid.D4 - 2 * k * k * grid.D2 + k**4 * I
    U = prof(grid.y)
    A = config.mu * L2 - 1j * k * U[:, None] * L
    B = L.astype(complex)
    rows = (0, 1, N - 2, N - 1)
    A[list(rows)] = os_bc_rows(config, grid)
    B[list(rows)] = 0.0
    A.setflags(write=False)
    B.setflags(write=False)
    return ModeOperator(int(k), A, B, rows, config.case, config, grid)


def assemble_k0(config: FlowConfig, grid: ChebGrid) -> K0Operator:
    build_profile(config)  # surfaces degenerate parameter points
    N, mu = grid.N, config.mu
    A = (mu * grid.D2).astype(complex)
    B = np.eye(N, dtype=complex)
    if config.case == CaseI:
        A[0] = mu * grid.D1[0]
        A[0, 0] -= config.alpha
        A[-1] = 0.0
        A[-1, -1] = 1.0
    else:
        A[0] = mu * grid.D1[0]
        A[0, 0] -= config.alpha0
        A[-1] = mu * grid.D1[-1]
        A[-1, -1] += config.alpha1
    B[0, 0] = B[-1, -1] = 0.0
    project = config.case == CaseII and config.alpha0 == 0.0 and config.alpha1 == 0.0
    A.setflags(write=False)
    B.setflags(write=False)
    return K0Operator(A, B, (0, N - 1), config.case, config, grid, project)


def assemble(config: FlowConfig, k: int, grid: ChebGrid):
    return assemble_k0(config, grid) if k == 0 else assemble_os(config, k, grid)
