"""Chebyshev collocation on [0, 1]: nodes, differentiation, quadrature, interpolation.

Nodes are the Chebyshev-Gauss-Lobatto points mapped to [0, 1] in ascending
order, so y[0] = 0 is the bottom wall and y[-1] = 1 the top wall.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from couette_slip.errors import OutOfDomain, SizeMismatch, TooFewNodes


def _negsum(M):
    # Rows of every differentiation matrix annihilate constants.
    np.fill_diagonal(M, 0.0)
    M -= np.diag(M.sum(axis=1))
    return M


def _clenshaw_curtis(N):
    """Clenshaw-Curtis weights on [-1, 1] for the N Lobatto nodes (order irrelevant, symmetric)."""
    n = N - 1
    theta = np.pi * np.arange(N) / n
    w = np.zeros(N)
    v = np.ones(N - 2)
    inner = theta[1:-1]
    if n % 2 == 0:
        w[0] = w[-1] = 1.0 / (n**2 - 1)
        for m in range(1, n // 2):
            v -= 2.0 * np.cos(2 * m * inner) / (4 * m * m - 1)
        v -= np.cos(n * inner) / (n**2 - 1)
    else:
        w[0] = w[-1] = 1.0 / n**2
        for m in range(1, (n - 1) // 2 + 1):
            v -= 2.0 * np.cos(2 * m * inner) / (4 * m * m - 1)
    w[1:-1] = 2.0 * v / n
    return w


@dataclass(frozen=True, eq=False)
class ChebGrid:
    N: int
    y: np.ndarray
    D1: np.ndarray
    D2: np.ndarray
    D3: np.ndarray
    D4: np.ndarray
    w: np.ndarray
    bary: np.ndarray = field(repr=False)

    def D(self, order):
        if order == 0:
            return np.eye(self.N)
        return (self.D1, self.D2, self.D3, self.D4)[order - 1]


def make_grid(N: int) -> ChebGrid:
    if N < 8:
        raise TooFewNodes(f"need at least 8 nodes, got N={N}")
    n = N - 1
    j = np.arange(N)
    # sin form gives exactly symmetric nodes
    x = np.sin(np.pi * (2 * j - n) / (2 * n))
    c = np.ones(N)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** j
    dx = np.subtract.outer(x, x) + np.eye(N)
    D = np.outer(c, 1.0 / c) / dx
    D = 2.0 * _negsum(D)  # d/dy = 2 d/dx
    D2 = _negsum(D @ D)
    D3 = _negsum(D2 @ D)
    D4 = _negsum(D2 @ D2)
    y = 0.5 * (x + 1.0)
    y[0], y[-1] = 0.0, 1.0
    bary = (-1.0) ** j
    bary[0] *= 0.5
    bary[-1] *= 0.5
    for M in (D, D2, D3, D4):
        M.setflags(write=False)
    w = 0.5 * _clenshaw_curtis(N)
    for arr in (y, w, bary):
        arr.setflags(write=False)
    return ChebGrid(N, y, D, D2, D3, D4, w, bary)


def _check(grid, f):
    f = np.asarray(f)
    if f.shape[0] != grid.N:
        raise SizeMismatch(f"expected {grid.N} samples, got {f.shape[0]}")
    return f


def integrate(grid: ChebGrid, f) -> complex:
    """Clenshaw-Curtis approximation of the integral over [0, 1]."""
    f = _check(grid, f)
    return grid.w @ f


def interpolate(grid: ChebGrid, f, y):
    """Barycentric evaluation of the polynomial interpolant of ``f`` at ``y``.

    ``y`` may be a scalar or an array; values must lie in [0, 1].
    """
    f = _check(grid, f)
    yy = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any(yy < 0.0) or np.any(yy > 1.0) or not np.all(np.isfinite(yy)):
        raise OutOfDomain("interpolation point outside [0, 1]")
    diff = yy[:, None] - grid.y[None, :]
    # points closer than rounding to a node take the node value
    hit = np.abs(diff) < 1e-15
    diff[hit] = 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = grid.bary / diff
        out = (t @ f) / t.sum(axis=1)
    rows, cols = np.nonzero(hit)
    out = np.asarray(out, dtype=np.result_type(f, float))
    out[rows] = f[cols]
    return out[0] if np.ndim(y) == 0 else out
