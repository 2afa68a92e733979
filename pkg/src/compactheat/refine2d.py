"""Axis-wise derivative recovery and Hermite refinement for 2D fields.

K_ij approximates du/dx and L_ij approximates du/dy with the five-point
stencil along the corresponding axis, exact through degree 4:

    K_ij = [8 u_{i+1,j} - 8 u_{i-1,j} + u_{i-2,j} - u_{i+2,j}] / (12 h_x)

valid for i = 2..N-2, j = 1..N-1 (and transposed ranges for L). There are
no one-sided variants here, so all refined outputs stay on the stated
ranges. Edge midpoints use the cubic Hermite interpolant per axis; cell
centers compose the two axis refinements, averaging the cross derivative
across the half cell:

    u_{i+1/2,j+1/2} = (u_ij + u_{i,j+1} + u_{i+1,j} + u_{i+1,j+1})/4
                      + (h/16)(L_ij - L_{i,j+1} + L_{i+1,j} - L_{i+1,j+1})
                      + (h/16)(K_ij - K_{i+1,j} + K_{i,j+1} - K_{i+1,j+1})

for i, j = 2..N-3 (empty below N = 5).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import Field2D, Grid2D


@dataclass(frozen=True)
class GradientField2D:
    """K over i = 2..N-2, j = 1..N-1 (k_values[i-2, j-1]) and L over
    i = 1..N-1, j = 2..N-2 (l_values[i-1, j-2])."""

    grid: Grid2D
    k_values: np.ndarray
    l_values: np.ndarray
    time_level: float

    def __post_init__(self):
        nx = self.grid.x_axis.n_cells
        ny = self.grid.y_axis.n_cells
        k = np.array(self.k_values, dtype=float)
        l = np.array(self.l_values, dtype=float)
        if k.shape != (nx - 3, ny - 1):
            raise ValueError(f"k_values: expected {(nx - 3, ny - 1)}, got {k.shape}")
        if l.shape != (nx - 1, ny - 3):
            raise ValueError(f"l_values: expected {(nx - 1, ny - 3)}, got {l.shape}")
        k.setflags(write=False)
        l.setflags(write=False)
        object.__setattr__(self, "k_values", k)
        object.__setattr__(self, "l_values", l)

    def k(self, i: int, j: int) -> float:
        nx, ny = self.grid.x_axis.n_cells, self.grid.y_axis.n_cells
        if not (2 <= i <= nx - 2 and 1 <= j <= ny - 1):
            raise IndexError(
                f"K defined for i = 2..{nx - 2}, j = 1..{ny - 1}, got ({i}, {j})"
            )
        return float(self.k_values[i - 2, j - 1])

    def l(self, i: int, j: int) -> float:
        nx, ny = self.grid.x_axis.n_cells, self.grid.y_axis.n_cells
        if not (1 <= i <= nx - 1 and 2 <= j <= ny - 2):
            raise IndexError(
                f"L defined for i = 1..{nx - 1}, j = 2..{ny - 2}, got ({i}, {j})"
            )
        return float(self.l_values[i - 1, j - 2])


@dataclass(frozen=True)
class RefinedField2D:
    """Refined values: x_mid[i-2, j-1] at (x_{i+1/2}, y_j) for i = 2..N-3,
    y_mid[i-1, j-2] at (x_i, y_{j+1/2}) for j = 2..N-3, and
    centers[i-2, j-2] at (x_{i+1/2}, y_{j+1/2}) for i, j = 2..N-3."""

    grid: Grid2D
    x_mid: np.ndarray
    y_mid: np.ndarray
    centers: np.ndarray
    time_level: float

    def __post_init__(self):
        nx = self.grid.x_axis.n_cells
        ny = self.grid.y_axis.n_cells
        for name, arr, shape in (
            ("x_mid", self.x_mid, (max(nx - 4, 0), ny - 1)),
            ("y_mid", self.y_mid, (nx - 1, max(ny - 4, 0))),
            ("centers", self.centers, (max(nx - 4, 0), max(ny - 4, 0))),
        ):
            a = np.array(arr, dtype=float)
            if a.shape != shape:
                raise ValueError(f"{name}: expected shape {shape}, got {a.shape}")
            a.setflags(write=False)
            object.__setattr__(self, name, a)


def gradient_2d(u: Field2D) -> GradientField2D:
    """Axis-wise derivative fields K (d/dx) and L (d/dy) of u."""
    nx = u.grid.x_axis.n_cells
    ny = u.grid.y_axis.n_cells
    if min(nx, ny) < 5:
        raise ValueError(f"gradient stencils need at least 5 cells, got {min(nx, ny)}")
    v = u.values
    hx = u.grid.x_axis.h
    hy = u.grid.y_axis.h
    k = (
        8.0 * v[3:nx, 1:ny]
        - 8.0 * v[1 : nx - 2, 1:ny]
        + v[0 : nx - 3, 1:ny]
        - v[4 : nx + 1, 1:ny]
    ) / (12.0 * hx)
    l = (
        8.0 * v[1:nx, 3:ny]
        - 8.0 * v[1:nx, 1 : ny - 2]
        + v[1:nx, 0 : ny - 3]
        - v[1:nx, 4 : ny + 1]
    ) / (12.0 * hy)
    return GradientField2D(u.grid, k, l, u.time_level)


def refine_edges_2d(
    u: Field2D, grads: GradientField2D
) -> tuple[np.ndarray, np.ndarray]:
    """Hermite midpoints of the x-edges and y-edges of the mesh cells.

    Returns (x_mid, y_mid): x_mid[i-2, j-1] approximates u(x_{i+1/2}, y_j)
    for i = 2..N-3, j = 1..N-1; y_mid is the transposed-range analog.
    """
    if grads.grid != u.grid:
        raise ValueError("gradient field does not match the field's grid")
    nx = u.grid.x_axis.n_cells
    ny = u.grid.y_axis.n_cells
    v = u.values
    k, l = grads.k_values, grads.l_values
    # i = 2..N-3 needs K at both i and i+1
    x_mid = 0.5 * (v[2 : nx - 2, 1:ny] + v[3 : nx - 1, 1:ny]) + (
        u.grid.x_axis.h / 8.0
    ) * (k[:-1, :] - k[1:, :])
    y_mid = 0.5 * (v[1:nx, 2 : ny - 2] + v[1:nx, 3 : ny - 1]) + (
        u.grid.y_axis.h / 8.0
    ) * (l[:, :-1] - l[:, 1:])
    return x_mid, y_mid


def refine_centers_2d(u: Field2D, grads: GradientField2D) -> np.ndarray:
    """Cell-center values for i, j = 2..N-3 (centers[i-2, j-2])."""
    if grads.grid != u.grid:
        raise ValueError("gradient field does not match the field's grid")
    if u.grid.x_axis.h != u.grid.y_axis.h:
        raise ValueError("cell-center refinement requires h_x == h_y")
    nx = u.grid.x_axis.n_cells
    ny = u.grid.y_axis.n_cells
    if min(nx, ny) < 5:
        return np.zeros((max(nx - 4, 0), max(ny - 4, 0)))
    h = u.grid.x_axis.h
    v = u.values

    def uu(di, dj):
        return v[2 + di : nx - 3 + di + 1, 2 + dj : ny - 3 + dj + 1]

    def kk(di, dj):
        return grads.k_values[di : nx - 5 + di + 1, 1 + dj : ny - 4 + dj + 1]

    def ll(di, dj):
        return grads.l_values[1 + di : nx - 4 + di + 1, dj : ny - 5 + dj + 1]

    return (
        0.25 * (uu(0, 0) + uu(0, 1) + uu(1, 0) + uu(1, 1))
        + (h / 16.0) * (ll(0, 0) - ll(0, 1) + ll(1, 0) - ll(1, 1))
        + (h / 16.0) * (kk(0, 0) - kk(1, 0) + kk(0, 1) - kk(1, 1))
    )


def refine_2d(u: Field2D) -> RefinedField2D:
    """Compute gradients and all three refined point families of u."""
    grads = gradient_2d(u)
    x_mid, y_mid = refine_edges_2d(u, grads)
    centers = refine_centers_2d(u, grads)
    return RefinedField2D(u.grid, x_mid, y_mid, centers, u.time_level)
