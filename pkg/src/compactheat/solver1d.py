"""Implicit compact-difference stepper for u_t = c u_xx on [a, b].

The scheme averages the time difference over three neighboring nodes with
weights (1, 10, 1) and applies a Crank-Nicolson split to the second
difference, giving second order in time and fourth order in space on a
3-point stencil. Collecting the new level on the left with
s = 6 c tau / h^2 yields the tridiagonal pair

    lhs:    diag 10 + 2s, off-diagonal 1 - s
    rhs_op: diag 10 - 2s, off-diagonal 1 + s

acting on the interior unknowns j = 1..N-1. Dirichlet values enter the
right-hand side through the two boundary-adjacent rows, and the boundary
nodes themselves are prescribed, never solved for. The left matrix is
strictly diagonally dominant for every s > 0, so the march is stable for
any step ratio; it is factored once and reused for all steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .grids import Field1D, Grid1D, TimeGrid, sample_function
from .linalg import Tridiagonal, TridiagonalSolver


@dataclass(frozen=True)
class HeatProblem1D:
    """Diffusivity, initial profile, and Dirichlet boundary data.

    Corner compatibility (phi(a) == g1(0)) is assumed, not checked.
    """

    c: float
    phi: Callable[[float], float]
    g1: Callable[[float], float]
    g2: Callable[[float], float]

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"diffusivity must be positive, got {self.c}")


@dataclass(frozen=True)
class SchemeParams:
    c: float
    h: float
    tau: float
    mesh_factor: float  # s = 6 c tau / h^2


@dataclass(frozen=True)
class Stepper1D:
    params: SchemeParams
    grid: Grid1D
    lhs: Tridiagonal
    rhs_op: Tridiagonal
    _solver: TridiagonalSolver = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.lhs.is_diagonally_dominant():
            raise ValueError("left-hand operator lost diagonal dominance")
        object.__setattr__(self, "_solver", TridiagonalSolver(self.lhs))


def assemble_1d(c: float, grid: Grid1D, tau: float) -> Stepper1D:
    """Build the stepper for diffusivity c on grid with time step tau."""
    if grid.n_cells < 2:
        raise ValueError(f"need at least 2 cells, got {grid.n_cells}")
    if not tau > 0:
        raise ValueError(f"time step must be positive, got {tau}")
    if not c > 0:
        raise ValueError(f"diffusivity must be positive, got {c}")
    h = grid.h
    s = 6.0 * c * tau / (h * h)
    n = grid.n_cells - 1
    lhs = Tridiagonal.constant(n, 10.0 + 2.0 * s, 1.0 - s)
    rhs_op = Tridiagonal.constant(n, 10.0 - 2.0 * s, 1.0 + s)
    return Stepper1D(SchemeParams(c, h, tau, s), grid, lhs, rhs_op)


def boundary_rhs_1d(
    stepper: Stepper1D, g1_k: float, g1_k1: float, g2_k: float, g2_k1: float
) -> np.ndarray:
    """Right-hand-side contribution of the known boundary values.

    Entry 0 carries the left boundary at levels k and k+1, entry N-2 the
    right boundary; all other entries are zero.
    """
    s = stepper.params.mesh_factor
    out = np.zeros(stepper.lhs.order)
    out[0] = (s - 1.0) * g1_k1 + (s + 1.0) * g1_k
    out[-1] += (s - 1.0) * g2_k1 + (s + 1.0) * g2_k
    return out


def _advance(
    stepper: Stepper1D, values: np.ndarray, problem: HeatProblem1D, k: int
) -> np.ndarray:
    """One step on raw node values; shared by step_1d and solve_1d so the
    two produce bit-identical trajectories."""
    n_nodes = values.size
    tau = stepper.params.tau
    t1 = (k + 1) * tau
    g1_k1 = float(problem.g1(t1))
    g2_k1 = float(problem.g2(t1))
    interior = values[1:-1]
    rhs = stepper.rhs_op.matvec(interior)
    # level-k boundary terms come from the field itself (equal to g at all
    # marched levels; at k = 0 they are the sampled initial profile)
    rhs += boundary_rhs_1d(stepper, values[0], g1_k1, values[-1], g2_k1)
    new = np.empty(n_nodes)
    new[1:-1] = stepper._solver.solve(rhs)
    new[0] = g1_k1
    new[-1] = g2_k1
    return new


def step_1d(
    stepper: Stepper1D, u_k: Field1D, problem: HeatProblem1D, k: int
) -> Field1D:
    """Advance one time level, from k*tau to (k+1)*tau."""
    if u_k.grid != stepper.grid:
        raise ValueError("field grid does not match stepper grid")
    new = _advance(stepper, u_k.values, problem, k)
    return Field1D(u_k.grid, new, (k + 1) * stepper.params.tau)


def solve_1d(problem: HeatProblem1D, grid: Grid1D, timegrid: TimeGrid) -> Field1D:
    """March the scheme from the sampled initial profile to t = T."""
    stepper = assemble_1d(problem.c, grid, timegrid.tau)
    values = np.array(sample_function(grid, problem.phi).values)
    for k in range(timegrid.n_steps):
        values = _advance(stepper, values, problem, k)
    return Field1D(grid, values, timegrid.n_steps * stepper.params.tau)
