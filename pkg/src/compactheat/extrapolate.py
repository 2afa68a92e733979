"""Richardson extrapolation of solved fields.

Two independently computed solves of the same problem are combined
nodewise; the caller owns the (h, tau) scheduling. The time variant pairs
(h, tau) with (h, tau/2) and forms (4/3) fine - (1/3) coarse, cancelling
the leading second-order time term. The space-time variant pairs (h, tau)
with (h/2, tau/4) and forms (16/15) fine - (1/15) coarse on the coarse
nodes, where every second fine node coincides with a coarse node. Both
weight sets sum to one, so extrapolating two identical fields returns the
field unchanged to within a unit of roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

from .grids import Field1D, Field2D, Grid1D

Field = Union[Field1D, Field2D]

_TIME_TOL = 1e-12


def _same_axis(a: Grid1D, b: Grid1D) -> bool:
    return a.a == b.a and a.b == b.b and a.n_cells == b.n_cells


def _halved_axis(coarse: Grid1D, fine: Grid1D) -> bool:
    return (
        coarse.a == fine.a
        and coarse.b == fine.b
        and fine.n_cells == 2 * coarse.n_cells
    )


@dataclass(frozen=True)
class ExtrapolationPair:
    """A coarse solve and its refined-step companion.

    variant "time": same spatial grid, the fine field marched with half
    the time step (twice the steps) to the same final time.
    variant "spacetime": the fine field used half the mesh width and a
    quarter of the time step; its even-index nodes sit on the coarse grid.
    """

    coarse: Field
    fine: Field
    variant: Literal["time", "spacetime"]

    def __post_init__(self):
        if self.variant not in ("time", "spacetime"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if type(self.coarse) is not type(self.fine):
            raise ValueError("coarse and fine fields must have the same dimension")
        if abs(self.coarse.time_level - self.fine.time_level) > _TIME_TOL * (
            1.0 + abs(self.coarse.time_level)
        ):
            raise ValueError(
                "fields are at different times: "
                f"{self.coarse.time_level} vs {self.fine.time_level}"
            )
        check = _same_axis if self.variant == "time" else _halved_axis
        if isinstance(self.coarse, Field1D):
            ok = check(self.coarse.grid, self.fine.grid)
        else:
            ok = check(self.coarse.grid.x_axis, self.fine.grid.x_axis) and check(
                self.coarse.grid.y_axis, self.fine.grid.y_axis
            )
        if not ok:
            raise ValueError(
                f"grids are not compatible with the {self.variant} variant"
            )


def extrapolate_time(pair: ExtrapolationPair) -> Field:
    """(4/3) fine - (1/3) coarse on the shared grid; the second-order time
    error cancels, leaving fourth order in both time and space."""
    if pair.variant != "time":
        raise ValueError(f"pair has variant {pair.variant!r}, expected 'time'")
    values = (4.0 * pair.fine.values - pair.coarse.values) / 3.0
    cls = type(pair.coarse)
    return cls(pair.coarse.grid, values, pair.coarse.time_level)


def extrapolate_spacetime(pair: ExtrapolationPair) -> Field:
    """(16/15) fine(at the shared nodes) - (1/15) coarse, on the coarse grid."""
    if pair.variant != "spacetime":
        raise ValueError(f"pair has variant {pair.variant!r}, expected 'spacetime'")
    if isinstance(pair.fine, Field1D):
        fine_on_coarse = pair.fine.values[::2]
    else:
        fine_on_coarse = pair.fine.values[::2, ::2]
    values = (16.0 * fine_on_coarse - pair.coarse.values) / 15.0
    cls = type(pair.coarse)
    return cls(pair.coarse.grid, values, pair.coarse.time_level)
