"""Uniform space/time meshes and the grid functions defined on them.

Conventions used throughout the package:

- a 1D grid with N cells has N+1 nodes, x_i = a + i*h with h = (b - a)/N;
  both endpoints are pinned exactly (``node_coordinate(0) == a`` and
  ``node_coordinate(N) == b``).
- a 2D field stores values[i, j] with i the x index and j the y index.
- all types are immutable after construction and safe to share between
  threads; field value arrays are marked read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


def _frozen_array(values, shape, what: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"{what}: expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what}: values must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Grid1D:
    """Uniform partition of [a, b] into n_cells intervals."""

    a: float
    b: float
    n_cells: int
    h: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("grid endpoints must be finite")
        if self.b <= self.a:
            raise ValueError(f"need b > a, got [{self.a}, {self.b}]")
        if self.n_cells < 1:
            raise ValueError(f"n_cells must be positive, got {self.n_cells}")
        object.__setattr__(self, "h", (self.b - self.a) / self.n_cells)

    def node_coordinate(self, i: int) -> float:
        """Coordinate of node i, 0 <= i <= n_cells; endpoints exact."""
        if not 0 <= i <= self.n_cells:
            raise IndexError(f"node index {i} outside 0..{self.n_cells}")
        if i == 0:
            return self.a
        if i == self.n_cells:
            return self.b
        return self.a + i * self.h

    def midpoint_coordinate(self, j: int) -> float:
        """Coordinate of the cell midpoint x_{j+1/2}, 0 <= j <= n_cells-1."""
        if not 0 <= j <= self.n_cells - 1:
            raise IndexError(f"midpoint index {j} outside 0..{self.n_cells - 1}")
        return self.a + (j + 0.5) * self.h

    def nodes(self) -> np.ndarray:
        x = self.a + np.arange(self.n_cells + 1) * self.h
        x[0] = self.a
        x[-1] = self.b
        return x

    def midpoints(self) -> np.ndarray:
        return self.a + (np.arange(self.n_cells) + 0.5) * self.h


@dataclass(frozen=True)
class TimeGrid:
    """Uniform partition of [0, T] into n_steps steps, tau = T/n_steps."""

    t_end: float
    n_steps: int
    tau: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.t_end) and self.t_end > 0):
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if self.n_steps < 1:
            raise ValueError(f"n_steps must be positive, got {self.n_steps}")
        object.__setattr__(self, "tau", self.t_end / self.n_steps)

    def time(self, k: int) -> float:
        if not 0 <= k <= self.n_steps:
            raise IndexError(f"time level {k} outside 0..{self.n_steps}")
        return k * self.tau


@dataclass(frozen=True)
class Grid2D:
    """Tensor-product grid; x and y spacings may differ except where a
    square grid is required (the 2D stepper and cell-center refinement
    enforce h_x == h_y themselves)."""

    x_axis: Grid1D
    y_axis: Grid1D

    @classmethod
    def square(cls, a: float, b: float, n_cells: int) -> "Grid2D":
        axis = Grid1D(a, b, n_cells)
        return cls(axis, axis)

    @property
    def is_square(self) -> bool:
        return (
            self.x_axis.n_cells == self.y_axis.n_cells
            and self.x_axis.h == self.y_axis.h
        )


@dataclass(frozen=True)
class Field1D:
    """Grid function u_i at a fixed time level, values[i] at node i."""

    grid: Grid1D
    values: np.ndarray
    time_level: float

    def __post_init__(self):
        arr = _frozen_array(
            self.values, (self.grid.n_cells + 1,), "Field1D values"
        )
        object.__setattr__(self, "values", arr)


@dataclass(frozen=True)
class Field2D:
    """Grid function u_ij at a fixed time level.

    Storage layout: values[i, j] with the row index i the x index and the
    column index j the y index.
    """

    grid: Grid2D
    values: np.ndarray
    time_level: float

    def __post_init__(self):
        shape = (self.grid.x_axis.n_cells + 1, self.grid.y_axis.n_cells + 1)
        arr = _frozen_array(self.values, shape, "Field2D values")
        object.__setattr__(self, "values", arr)


def sample_function(grid: Grid1D, f: Callable[[float], float]) -> Field1D:
    """Sample f at every node, producing a time-level-0 field."""
    xs = grid.nodes()
    values = np.empty(xs.shape)
    for i, x in enumerate(xs):
        v = float(f(x))
        if not math.isfinite(v):
            raise ValueError(f"non-finite sample {v!r} at node {i} (x={x})")
        values[i] = v
    return Field1D(grid, values, 0.0)


def sample_function_2d(grid: Grid2D, f: Callable[[float, float], float]) -> Field2D:
    """Sample f(x, y) at every node, producing a time-level-0 field."""
    xs = grid.x_axis.nodes()
    ys = grid.y_axis.nodes()
    values = np.empty((xs.size, ys.size))
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            v = float(f(x, y))
            if not math.isfinite(v):
                raise ValueError(
                    f"non-finite sample {v!r} at node ({i}, {j}) (x={x}, y={y})"
                )
            values[i, j] = v
    return Field2D(grid, values, 0.0)
