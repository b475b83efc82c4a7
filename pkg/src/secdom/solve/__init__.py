"""Exact optimisation: LP relaxation by primal simplex, binary branch-and-bound."""
from .bnb import (STATUS_INFEASIBLE, STATUS_OPTIMAL, STATUS_TIMEOUT, IncumbentError,
                  SolveError, SolveReport, bnb_solve)
from .heuristics import greedy_guard_set, property_of
from .lp import (FractionalSolutionError, LpSolution, extract_guard_set, lp_solve,
                 max_residual)
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, SimplexError

__all__ = [
    "LpSolution", "lp_solve", "max_residual", "extract_guard_set",
    "FractionalSolutionError", "SolveReport", "bnb_solve", "SolveError",
    "IncumbentError", "greedy_guard_set", "property_of", "SimplexError",
    "OPTIMAL", "INFEASIBLE", "UNBOUNDED",
    "STATUS_OPTIMAL", "STATUS_TIMEOUT", "STATUS_INFEASIBLE",
]
