"""Nodal derivative recovery and midpoint refinement for solved 1D fields.

The derivative P_j at interior nodes comes from fitting a local quartic
whose second derivatives are constrained through the heat equation itself,
which collapses to the classic five-point stencil

    P_j = [8 u_{j+1} - 8 u_{j-1} + u_{j-2} - u_{j+2}] / (12 h)

exact through degree 4. The two boundary-adjacent nodes use one-sided
four-point stencils (exact through degree 3, O(h^3) remainder):

    P_1     = [-2 g1 - 3 u_1 + 6 u_2 - u_3] / (6 h)
    P_{N-1} = [ 2 g2 + 3 u_{N-1} - 6 u_{N-2} + u_{N-3}] / (6 h)

Midpoint values follow from the cubic Hermite interpolant on each cell,

    u_{j+1/2} = (u_j + u_{j+1})/2 + (h/8) (P_j - P_{j+1}),

produced for j = 1..N-2, which doubles the usable resolution of a solved
field at matching accuracy. Composing the two steps, the fully interior
midpoint weights on (u_{j-2}..u_{j+3}) are (1, -9, 56, 56, -9, 1)/96; every
weight set reproduces constants exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import Field1D, Grid1D


@dataclass(frozen=True)
class GradientField1D:
    """Derivative approximations P_j for j = 1..N-1 (values[j-1] = P_j).

    No stencil exists at the boundary nodes themselves, so j = 0 and j = N
    are not produced.
    """

    grid: Grid1D
    values: np.ndarray
    time_level: float

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.shape != (self.grid.n_cells - 1,):
            raise ValueError(
                f"expected {self.grid.n_cells - 1} gradient values, got {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def p(self, j: int) -> float:
        if not 1 <= j <= self.grid.n_cells - 1:
            raise IndexError(
                f"gradient defined for j = 1..{self.grid.n_cells - 1}, got {j}"
            )
        return float(self.values[j - 1])


@dataclass(frozen=True)
class RefinedField1D:
    """Midpoint values at x_{j+1/2} for j = 1..N-2 (mid_values[j-1]).

    The outermost midpoints x_{1/2} and x_{N-1/2} have no formula and are
    not produced; a doubled output grid therefore has 2N-1 points (N+1
    nodes plus N-2 interior midpoints).
    """

    grid: Grid1D
    mid_values: np.ndarray
    time_level: float

    def __post_init__(self):
        arr = np.array(self.mid_values, dtype=float)
        if arr.shape != (max(self.grid.n_cells - 2, 0),):
            raise ValueError(
                f"expected {self.grid.n_cells - 2} midpoint values, got {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "mid_values", arr)

    def coordinates(self) -> np.ndarray:
        g = self.grid
        return g.a + (np.arange(1, g.n_cells - 1) + 0.5) * g.h


def gradient_1d(u: Field1D, g1_t: float, g2_t: float) -> GradientField1D:
    """Derivative field of u; g1_t, g2_t are the boundary values of u at
    its time level (pass u.values[0] and u.values[-1] for a solved field)."""
    n = u.grid.n_cells
    if n < 4:
        raise ValueError(f"gradient stencils need at least 4 cells, got {n}")
    v = u.values
    h = u.grid.h
    p = np.empty(n - 1)
    p[1:-1] = (8.0 * v[3:n] - 8.0 * v[1 : n - 2] + v[0 : n - 3] - v[4 : n + 1]) / (
        12.0 * h
    )
    p[0] = (-2.0 * g1_t - 3.0 * v[1] + 6.0 * v[2] - v[3]) / (6.0 * h)
    p[-1] = (2.0 * g2_t + 3.0 * v[n - 1] - 6.0 * v[n - 2] + v[n - 3]) / (6.0 * h)
    return GradientField1D(u.grid, p, u.time_level)


def hermite_midpoint(u_j, u_j1, p_j, p_j1, h):
    """Cubic Hermite interpolant of (values, derivatives) at the two cell
    ends, evaluated at the cell midpoint. Exact on cubics; broadcasts."""
    return 0.5 * (u_j + u_j1) + (h / 8.0) * (p_j - p_j1)


def refine_1d(u: Field1D, g1_t: float, g2_t: float) -> RefinedField1D:
    """Midpoint refinement of a solved field via its recovered gradient."""
    n = u.grid.n_cells
    if n < 4:
        raise ValueError(f"midpoint refinement needs at least 4 cells, got {n}")
    p = gradient_1d(u, g1_t, g2_t).values
    v = u.values
    mids = hermite_midpoint(v[1 : n - 1], v[2:n], p[:-1], p[1:], u.grid.h)
    return RefinedField1D(u.grid, mids, u.time_level)
