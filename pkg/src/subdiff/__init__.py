"""Finite-element solver for time-fractional diffusion on the unit square.

Solves u' + d_t^(1-alpha)(-div(a grad u)) = f with homogeneous Dirichlet
data: P1 elements in space, a generalized Crank-Nicolson scheme with exact
fractional-integral weights on graded time meshes, and an eigenfunction-
series exact solution for convergence studies.
"""

from .assembly import (FieldP1, assemble_mass, assemble_stiffness, l2_project,
                       load_vector, ritz_project)
from .config import ConfigError, ExperimentConfig
from .exact import (InitialDatum, SeriesSolution, custom, eval_grid, eval_points,
                    example1, example2, example3, make_series)
from .exceptions import (CoefficientRangeError, EvaluationError,
                         NumericalBlowupError, OutOfDomainError,
                         SolverFailureError)
from .mesh import StructuredMesh, build_mesh, locate_point, write_debug_csv
from .metrics import (ErrorReport, FineLattice, LatticeInterpolator,
                      convergence_rates, fine_lattice, step_error, weighted_errors)
from .mittag_leffler import MlfEvaluator, gamma, mlf, reciprocal_gamma
from .sparse import (LinearSolver, SparseMatrix, add_scaled, cg_solve,
                     csr_from_coo, matvec, write_matrix_market)
from .stepping import (FracWeights, GradedTimeMesh, SchemeState, build_time_mesh,
                       frac_integral_nodes, frac_weights, initial_field, run, step)
from .study import ErrorTracker, RunResult, TableResult, run_single, run_table

__version__ = "0.1.0"

__all__ = [
    "CoefficientRangeError", "ConfigError", "ErrorReport", "ErrorTracker",
    "EvaluationError", "ExperimentConfig", "FieldP1", "FineLattice",
    "FracWeights", "GradedTimeMesh", "InitialDatum", "LatticeInterpolator",
    "LinearSolver", "MlfEvaluator", "NumericalBlowupError", "OutOfDomainError",
    "RunResult", "SchemeState", "SeriesSolution", "SolverFailureError",
    "SparseMatrix", "StructuredMesh", "TableResult", "add_scaled",
    "assemble_mass", "assemble_stiffness", "build_mesh", "build_time_mesh",
    "cg_solve", "convergence_rates", "csr_from_coo", "custom", "eval_grid",
    "eval_points", "example1", "example2", "example3", "fine_lattice",
    "frac_integral_nodes", "frac_weights", "gamma", "initial_field",
    "l2_project", "load_vector", "locate_point", "make_series", "matvec",
    "mlf", "reciprocal_gamma", "ritz_project", "run", "run_single",
    "run_table", "step", "step_error", "weighted_errors",
    "write_debug_csv", "write_matrix_market",
]
