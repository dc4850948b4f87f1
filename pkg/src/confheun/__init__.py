"""Two-term reductions of hypergeometric expansions of the single confluent Heun equation."""

__version__ = "0.1.0"

from .che import CheParams, SolutionSample, che_residual, integrate_che
from .evaluator import (SeriesSolution, assemble, evaluate_solution, make_solution,
                        solution_from_spec, verify_solution)
from .recurrence import (CoefficientSeries, ExpansionError, ExpansionFamily, recurrence_coeffs,
                         run_three_term, validate_family)
from .reduction import (ReductionOutcome, ReductionSpec, apply_restriction, build_constraint_poly,
                        check_family_b_obstruction, closed_form_coeffs, solve_reduction,
                        solve_reduction_elimination, solve_reduction_general)

__all__ = [
    "CheParams", "SolutionSample", "che_residual", "integrate_che",
    "SeriesSolution", "assemble", "evaluate_solution", "make_solution", "solution_from_spec",
    "verify_solution",
    "CoefficientSeries", "ExpansionError", "ExpansionFamily", "recurrence_coeffs", "run_three_term",
    "validate_family",
    "ReductionOutcome", "ReductionSpec", "apply_restriction", "build_constraint_poly",
    "check_family_b_obstruction", "closed_form_coeffs", "solve_reduction",
    "solve_reduction_elimination", "solve_reduction_general",
]
