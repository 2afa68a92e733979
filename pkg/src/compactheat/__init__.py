"""Compact-difference heat-equation toolkit.

Fourth-order-in-space, second-order-in-time implicit solvers for the heat
equation in 1D and 2D, nodal derivative recovery by collocation stencils,
Hermite midpoint/cell-center refinement that doubles output resolution at
matching accuracy, Richardson extrapolation in time, and a convergence and
timing harness with a CSV/JSON command-line front end.
"""

__version__ = "0.1.0"

from .bench import (
    Benchmark,
    ConvergenceRow,
    ConvergenceTable,
    PathTiming,
    TimingReport,
    error_ratio,
    ex41,
    ex42,
    ex43,
    get_benchmark,
    max_error,
    observed_rate,
    run_convergence,
    run_timing,
)
from .extrapolate import ExtrapolationPair, extrapolate_spacetime, extrapolate_time
from .grids import (
    Field1D,
    Field2D,
    Grid1D,
    Grid2D,
    TimeGrid,
    sample_function,
    sample_function_2d,
)
from .linalg import (
    BlockLUSolver,
    BlockTridiagonal,
    SingularMatrixError,
    Tridiagonal,
    TridiagonalSolver,
    block_thomas_solve,
    dense_solve,
    thomas_solve,
)
from .refine1d import (
    GradientField1D,
    RefinedField1D,
    gradient_1d,
    hermite_midpoint,
    refine_1d,
)
from .refine2d import (
    GradientField2D,
    RefinedField2D,
    gradient_2d,
    refine_2d,
    refine_centers_2d,
    refine_edges_2d,
)
from .solver1d import (
    HeatProblem1D,
    SchemeParams,
    Stepper1D,
    assemble_1d,
    boundary_rhs_1d,
    solve_1d,
    step_1d,
)
from .solver2d import (
    BoundaryEdges,
    HeatProblem2D,
    Stepper2D,
    assemble_2d,
    boundary_rhs_2d,
    solve_2d,
    step_2d,
)

__all__ = [
    "__version__",
    "Benchmark",
    "BlockLUSolver",
    "BlockTridiagonal",
    "BoundaryEdges",
    "ConvergenceRow",
    "ConvergenceTable",
    "ExtrapolationPair",
    "Field1D",
    "Field2D",
    "GradientField1D",
    "GradientField2D",
    "Grid1D",
    "Grid2D",
    "HeatProblem1D",
    "HeatProblem2D",
    "PathTiming",
    "RefinedField1D",
    "RefinedField2D",
    "SchemeParams",
    "SingularMatrixError",
    "Stepper1D",
    "Stepper2D",
    "TimeGrid",
    "TimingReport",
    "Tridiagonal",
    "TridiagonalSolver",
    "assemble_1d",
    "assemble_2d",
    "block_thomas_solve",
    "boundary_rhs_1d",
    "boundary_rhs_2d",
    "dense_solve",
    "error_ratio",
    "ex41",
    "ex42",
    "ex43",
    "extrapolate_spacetime",
    "extrapolate_time",
    "get_benchmark",
    "gradient_1d",
    "gradient_2d",
    "hermite_midpoint",
    "max_error",
    "observed_rate",
    "refine_1d",
    "refine_2d",
    "refine_centers_2d",
    "refine_edges_2d",
    "run_convergence",
    "run_timing",
    "sample_function",
    "sample_function_2d",
    "solve_1d",
    "solve_2d",
    "step_1d",
    "step_2d",
    "thomas_solve",
]
