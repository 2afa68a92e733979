"""Implicit compact-difference stepper for u_t = u_xx + u_yy on a square grid.

The nine-point compact operator combined with a Crank-Nicolson split gives,
with r = tau / (2 h^2), the per-node update

    (2/3 + 10r/3) u'_ij - (2r/3 - 1/12) (x/y neighbors)' - (r/6) (corners)'
  = (2/3 - 10r/3) u_ij + (2r/3 + 1/12) (x/y neighbors) + (r/6) (corners)

for the interior i, j = 1..N-1 (primes denote the new level). Stacking the
unknowns by y-rows u_hj = [u_1j, ..., u_{N-1,j}] turns this into a
block-tridiagonal system with identical blocks

    A1 = tri((2+10r)/3, (1-8r)/12)   on the left diagonal, off-blocks -B1
    A2 = tri((2-10r)/3, (1+8r)/12)   on the right diagonal, off-blocks +B2
    B1 = tri((8r-1)/12, r/6),  B2 = tri((8r+1)/12, r/6)

The known boundary values contribute four vectors on the right: the
new/old-level x-edge terms (weights (8r-+1)/12 and r/6, including the
corner-adjacent entries) and the B1/B2 products with the y-edge rows. The
left operator is factored once per march and reused; it is strictly
diagonally dominant for every r > 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .grids import Field2D, Grid2D, TimeGrid, sample_function_2d
from .linalg import BlockLUSolver, BlockTridiagonal, Tridiagonal


@dataclass(frozen=True)
class HeatProblem2D:
    """Initial profile and the four Dirichlet edge functions.

    g1(y, t) on x = a, g2(y, t) on x = b, g3(x, t) on y = c, g4(x, t) on
    y = d. For smooth problems the edge functions agree at the corners;
    corner values are read from g1/g2 where the stencil needs them.
    """

    phi: Callable[[float, float], float]
    g1: Callable[[float, float], float]
    g2: Callable[[float, float], float]
    g3: Callable[[float, float], float]
    g4: Callable[[float, float], float]


@dataclass(frozen=True)
class BoundaryEdges:
    """Boundary values at one time level: x_low[j] = u(a, y_j),
    x_high[j] = u(b, y_j), y_low[i] = u(x_i, c), y_high[i] = u(x_i, d)."""

    x_low: np.ndarray
    x_high: np.ndarray
    y_low: np.ndarray
    y_high: np.ndarray

    @classmethod
    def from_problem(cls, problem: HeatProblem2D, grid: Grid2D, t: float) -> "BoundaryEdges":
        xs = grid.x_axis.nodes()
        ys = grid.y_axis.nodes()
        return cls(
            x_low=np.array([problem.g1(y, t) for y in ys], dtype=float),
            x_high=np.array([problem.g2(y, t) for y in ys], dtype=float),
            y_low=np.array([problem.g3(x, t) for x in xs], dtype=float),
            y_high=np.array([problem.g4(x, t) for x in xs], dtype=float),
        )

    @classmethod
    def from_field(cls, u: Field2D) -> "BoundaryEdges":
        v = u.values
        return cls(
            x_low=v[0, :].copy(),
            x_high=v[-1, :].copy(),
            y_low=v[:, 0].copy(),
            y_high=v[:, -1].copy(),
        )


@dataclass(frozen=True)
class Stepper2D:
    r: float
    grid: Grid2D
    lhs: BlockTridiagonal
    rhs_op: BlockTridiagonal
    n: int  # interior size N-1
    tau: float
    _solver: BlockLUSolver = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_solver", BlockLUSolver(self.lhs))


def assemble_2d(grid: Grid2D, tau: float) -> Stepper2D:
    """Build the square-grid stepper with mesh ratio r = tau/(2 h^2)."""
    if not grid.is_square:
        raise ValueError(
            "stepper requires a square grid (equal cell counts and spacings), got "
            f"N=({grid.x_axis.n_cells}, {grid.y_axis.n_cells}), "
            f"h=({grid.x_axis.h}, {grid.y_axis.h})"
        )
    big_n = grid.x_axis.n_cells
    if big_n < 2:
        raise ValueError(f"need at least 2 cells per axis, got {big_n}")
    if not tau > 0:
        raise ValueError(f"time step must be positive, got {tau}")
    h = grid.x_axis.h
    r = tau / (2.0 * h * h)
    n = big_n - 1
    a1 = Tridiagonal.constant(n, (2.0 + 10.0 * r) / 3.0, (1.0 - 8.0 * r) / 12.0)
    a2 = Tridiagonal.constant(n, (2.0 - 10.0 * r) / 3.0, (1.0 + 8.0 * r) / 12.0)
    b1 = Tridiagonal.constant(n, (8.0 * r - 1.0) / 12.0, r / 6.0)
    b2 = Tridiagonal.constant(n, (8.0 * r + 1.0) / 12.0, r / 6.0)
    lhs = BlockTridiagonal(a1, b1, n, sign_off=-1)
    rhs_op = BlockTridiagonal(a2, b2, n, sign_off=+1)
    # rowwise dominance of the full left operator holds for all r > 0
    assert (2.0 + 10.0 * r) / 3.0 > 2 * abs((1.0 - 8.0 * r) / 12.0) + 2 * (
        abs((8.0 * r - 1.0) / 12.0) + 2 * (r / 6.0)
    ) - 1e-15
    return Stepper2D(r, grid, lhs, rhs_op, n, tau)


def boundary_rhs_2d(
    stepper: Stepper2D, edges_k: BoundaryEdges, edges_k1: BoundaryEdges
) -> np.ndarray:
    """Assemble the four boundary contribution vectors, stacked by y-rows.

    New-level edge values enter with weights (8r-1)/12 and r/6, old-level
    values with (8r+1)/12 and r/6; the corner-adjacent stencil entries use
    the x-edge arrays at j-1 = 0 and j+1 = N.
    """
    n = stepper.n
    r = stepper.r
    w_new, w_old, w_c = (8.0 * r - 1.0) / 12.0, (8.0 * r + 1.0) / 12.0, r / 6.0
    out = np.zeros((n, n))  # [j-1, i-1], block row j
    j = np.arange(1, n + 1)
    # x-edge contributions hit the first and last entry of every block
    out[:, 0] += w_new * edges_k1.x_low[j] + w_c * (
        edges_k1.x_low[j + 1] + edges_k1.x_low[j - 1]
    )
    out[:, 0] += w_old * edges_k.x_low[j] + w_c * (
        edges_k.x_low[j + 1] + edges_k.x_low[j - 1]
    )
    out[:, -1] += w_new * edges_k1.x_high[j] + w_c * (
        edges_k1.x_high[j + 1] + edges_k1.x_high[j - 1]
    )
    out[:, -1] += w_old * edges_k.x_high[j] + w_c * (
        edges_k.x_high[j + 1] + edges_k.x_high[j - 1]
    )
    # y-edge contributions hit the first and last block rows; the needed
    # weight blocks are exactly the assembled off-diagonal blocks
    b1 = stepper.lhs.off_block
    b2 = stepper.rhs_op.off_block
    out[0] += b1.matvec(edges_k1.y_low[1:-1]) + b2.matvec(edges_k.y_low[1:-1])
    out[-1] += b1.matvec(edges_k1.y_high[1:-1]) + b2.matvec(edges_k.y_high[1:-1])
    return out.ravel()


def _apply_rhs_op(stepper: Stepper2D, interior: np.ndarray) -> np.ndarray:
    """rhs_op times the interior values (zero-extended past the boundary),
    returned as an (n, n) array indexed [j-1, i-1]."""
    r = stepper.r
    rd = (2.0 - 10.0 * r) / 3.0
    ro = (1.0 + 8.0 * r) / 12.0
    bd = (8.0 * r + 1.0) / 12.0
    bc = r / 6.0
    v = interior  # [i-1, j-1]
    w = rd * v.copy()
    w[1:, :] += ro * v[:-1, :]
    w[:-1, :] += ro * v[1:, :]
    w[:, 1:] += bd * v[:, :-1]
    w[:, :-1] += bd * v[:, 1:]
    w[1:, 1:] += bc * v[:-1, :-1]
    w[:-1, 1:] += bc * v[1:, :-1]
    w[1:, :-1] += bc * v[:-1, 1:]
    w[:-1, :-1] += bc * v[1:, 1:]
    return w.T


def _advance2d(
    stepper: Stepper2D, values: np.ndarray, problem: HeatProblem2D, k: int
) -> np.ndarray:
    """One step on raw node values; shared by step_2d and solve_2d."""
    big_n = stepper.n + 1
    t1 = (k + 1) * stepper.tau
    u = values
    edges_k = BoundaryEdges(
        x_low=u[0, :], x_high=u[-1, :], y_low=u[:, 0], y_high=u[:, -1]
    )
    edges_k1 = BoundaryEdges.from_problem(problem, stepper.grid, t1)
    rhs = _apply_rhs_op(stepper, u[1:big_n, 1:big_n]).ravel()
    rhs += boundary_rhs_2d(stepper, edges_k, edges_k1)
    sol = stepper._solver.solve(rhs).reshape(stepper.n, stepper.n)
    new = np.empty_like(u)
    new[1:big_n, 1:big_n] = sol.T
    new[:, 0] = edges_k1.y_low
    new[:, -1] = edges_k1.y_high
    new[0, :] = edges_k1.x_low
    new[-1, :] = edges_k1.x_high
    return new


def step_2d(
    stepper: Stepper2D, u_k: Field2D, problem: HeatProblem2D, k: int
) -> Field2D:
    """Advance one time level, from k*tau to (k+1)*tau."""
    if u_k.grid != stepper.grid:
        raise ValueError("field grid does not match stepper grid")
    new = _advance2d(stepper, u_k.values, problem, k)
    return Field2D(u_k.grid, new, (k + 1) * stepper.tau)


def solve_2d(problem: HeatProblem2D, grid: Grid2D, timegrid: TimeGrid) -> Field2D:
    """March the scheme from the sampled initial profile to t = T."""
    stepper = assemble_2d(grid, timegrid.tau)
    values = np.array(sample_function_2d(grid, problem.phi).values)
    for k in range(timegrid.n_steps):
        values = _advance2d(stepper, values, problem, k)
    return Field2D(grid, values, timegrid.n_steps * stepper.tau)
