"""Dense eigensolves of the per-mode operators, spurious-mode filtering, spectral abscissa."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg as sla

from couette_slip.cheb import make_grid
from couette_slip.errors import SolverFailure
from couette_slip.operators import K0Operator, ModeOperator, assemble
from couette_slip.params import FlowConfig

CUTOFF = 1e8
ABS_FLOOR = 1e-8
DEFAULT_KMAX = 16
DEFAULT_N = 96
DEFAULT_TOL = 1e-6


@lru_cache(maxsize=32)
def cached_grid(N):
    return make_grid(N)


def refined_size(N):
    return int(round(1.5 * N))


@dataclass(frozen=True, eq=False)
class Reduced:
    """Standard-form system ``dq/dt = M q`` on the unknowns left after boundary elimination.

    ``E`` lifts reduced coordinates to full grid samples that satisfy the
    boundary rows exactly.
    """

    M: np.ndarray
    E: np.ndarray
    interior: np.ndarray
    basis: np.ndarray | None = None  # orthonormal complement of constants (mean projection)
    M_full: np.ndarray | None = None
    E_full: np.ndarray | None = None

    def lift(self, q):
        return self.E @ q

    def restrict(self, phi):
        q = np.asarray(phi)[self.interior]
        if self.basis is not None:
            q = self.basis.conj().T @ q
        return q


def reduce_pencil(op) -> Reduced:
    """Eliminate boundary unknowns against the boundary rows (B rows there are zero)."""
    A, B = op.Amat, op.Bmat
    N = A.shape[0]
    bidx = np.array(op.bc_rows)
    iidx = np.setdiff1d(np.arange(N), bidx)
    C = A[bidx]
    try:
        T = -np.linalg.solve(C[:, bidx], C[:, iidx])
    except np.linalg.LinAlgError as exc:
        raise SolverFailure("boundary rows are singular", k=op.k) from exc
    Ar = A[np.ix_(iidx, iidx)] + A[np.ix_(iidx, bidx)] @ T
    Br = B[np.ix_(iidx, iidx)] + B[np.ix_(iidx, bidx)] @ T
    try:
        M = np.linalg.solve(Br, Ar)
    except np.linalg.LinAlgError as exc:
        raise SolverFailure("reduced mass matrix is singular", k=op.k) from exc
    E = np.zeros((N, iidx.size), dtype=complex)
    E[iidx, np.arange(iidx.size)] = 1.0
    E[bidx] = T
    if isinstance(op, K0Operator) and op.project_mean:
        # M annihilates constants; Z^T M Z is the operator on the quotient by
        # that neutral direction.
        Z = sla.null_space(np.ones((1, iidx.size)))
        return Reduced(Z.T @ M @ Z, E @ Z, iidx, Z, M, E)
    return Reduced(M, E, iidx)


@dataclass(frozen=True, eq=False)
class ModeSpectrum:
    k: int
    eigenvalues: np.ndarray
    eigenfunctions: np.ndarray | None  # columns, full grid samples
    resolution: int
    converged: np.ndarray = field(repr=False)

    def __len__(self):
        return self.eigenvalues.size

    @property
    def max_real(self):
        return float(self.eigenvalues.real.max())

    def select(self, mask):
        mask = np.asarray(mask, dtype=bool)
        vecs = None if self.eigenfunctions is None else self.eigenfunctions[:, mask]
        return ModeSpectrum(self.k, self.eigenvalues[mask], vecs, self.resolution, self.converged[mask])


@dataclass(frozen=True)
class AbscissaReport:
    m: float
    argmax_k: int
    per_k: list

    def to_dict(self):
        return {"m": self.m, "argmax_k": self.argmax_k, "per_k": [[k, v] for k, v in self.per_k]}


def _order(lam):
    return np.lexsort((lam.imag, -lam.real))


def normalize(vecs):
    """Scale columns to max|phi| = 1 with the first non-negligible entry real positive."""
    vecs = np.array(vecs, dtype=complex)
    for j in range(vecs.shape[1]):
        v = vecs[:, j]
        amax = np.abs(v).max()
        if amax == 0.0:
            continue
        v /= amax
        first = np.flatnonzero(np.abs(v) > 1e-8)[0]
        v *= np.exp(-1j * np.angle(v[first]))
    return vecs


def solve_mode(op, want_vectors: bool = False, cutoff: float = CUTOFF) -> ModeSpectrum:
    red = reduce_pencil(op)
    try:
        if want_vectors:
            lam, q = sla.eig(red.M)
        else:
            lam = sla.eigvals(red.M)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SolverFailure(f"eigensolver did not converge: {exc}", k=op.k) from exc
    keep = np.isfinite(lam) & (np.abs(lam) <= cutoff)
    lam = lam[keep]
    order = _order(lam)
    lam = lam[order]
    vecs = None
    if want_vectors:
        q = q[:, keep][:, order]
        if red.basis is not None:
            # recover the component along the neutral constant direction
            Z, e = red.basis, np.ones(red.basis.shape[0])
            MZq = red.M_full @ (Z @ q)
            gamma = e @ MZq / e.size
            beta = np.divide(gamma, lam, out=np.zeros_like(gamma), where=lam != 0)
            full_q = Z @ q + np.outer(e, beta)
            vecs = normalize(red.E_full @ full_q)
        else:
            vecs = normalize(red.lift(q))
    return ModeSpectrum(int(op.k), lam, vecs, op.grid.N, np.ones(lam.size, dtype=bool))


def filter_spurious(spec_N: ModeSpectrum, spec_M: ModeSpectrum, tol: float = DEFAULT_TOL,
                    cutoff: float = CUTOFF) -> ModeSpectrum:
    """Keep eigenvalues of ``spec_N`` that reappear in the refined ``spec_M``."""
    lamN, lamM = spec_N.eigenvalues, spec_M.eigenvalues
    if lamN.size == 0 or lamM.size == 0:
        return spec_N.select(np.zeros(lamN.size, dtype=bool))
    dist = np.abs(lamN[:, None] - lamM[None, :]).min(axis=1)
    ok = (dist <= np.maximum(tol * np.abs(lamN), ABS_FLOOR)) & (np.abs(lamN) <= cutoff)
    return spec_N.select(ok)


def solve_filtered(config: FlowConfig, k: int, N: int = DEFAULT_N, tol: float = DEFAULT_TOL,
                   want_vectors: bool = False) -> ModeSpectrum:
    coarse = solve_mode(assemble(config, k, cached_grid(N)), want_vectors)
    fine = solve_mode(assemble(config, k, cached_grid(refined_size(N))))
    out = filter_spurious(coarse, fine, tol)
    if len(out) == 0:
        raise SolverFailure("no eigenvalue survived the resolution check", k=k)
    return out


def spectral_abscissa(config: FlowConfig, kmax: int = DEFAULT_KMAX, N: int = DEFAULT_N,
                      tol: float = DEFAULT_TOL, kmin: int = 0) -> AbscissaReport:
    """max Re(lambda) over k = kmin..kmax (negative k mirror positive k)."""
    if kmax < 1 and kmin == 0 and kmax != 0:
        raise ValueError("kmax must be >= 1")
    per_k = []
    for k in range(kmin, kmax + 1):
        per_k.append((k, solve_filtered(config, k, N, tol).max_real))
    kbest, m = max(per_k, key=lambda kv: (kv[1], -kv[0]))
    return AbscissaReport(float(m), int(kbest), per_k)
