"""LP relaxations of :class:`~secdom.model.LinearModel` and guard-set extraction."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..certify import GuardSet
from ..model import LinearModel
from .simplex import SimplexEngine

__all__ = ["LpSolution", "lp_solve", "max_residual", "extract_guard_set",
           "FractionalSolutionError", "engine_for", "INT_TOL"]

INT_TOL = 1e-6


class FractionalSolutionError(ValueError):
    pass


@dataclass
class LpSolution:
    status: str
    objective: float
    x: np.ndarray | None
    names: list[str] = field(repr=False, default_factory=list)
    iterations: int = 0

    @property
    def values(self) -> dict[str, float]:
        if self.x is None:
            return {}
        return dict(zip(self.names, self.x.tolist()))

    def __getitem__(self, name: str) -> float:
        if self.x is None:
            raise KeyError(name)
        return float(self.x[self.names.index(name)])


def engine_for(model: LinearModel, **options) -> SimplexEngine:
    c, A, row_lo, row_hi, lb, ub = model.to_arrays()
    return SimplexEngine(c, A, row_lo, row_hi, lb, ub, **options)


def lp_solve(model: LinearModel, *, bland: bool = False, **options) -> LpSolution:
    """Continuous relaxation of ``model`` (binaries relaxed to ``[0, 1]``).

    Infeasible and unbounded relaxations come back as statuses; a pivot
    below ``1e-10`` raises :class:`~secdom.solve.simplex.SimplexError`.
    """
    if not model.vars:
        raise ValueError("model has no variables")
    engine = engine_for(model, **options)
    res = engine.solve(bland=bland)
    return LpSolution(res.status, res.objective, res.x, model.var_names, res.iterations)


def max_residual(model: LinearModel, x) -> float:
    """Largest violation of any row or bound by the point ``x``."""
    _, A, row_lo, row_hi, lb, ub = model.to_arrays()
    x = np.asarray(x, dtype=float)
    ax = A @ x
    parts = [np.zeros(1), row_lo - ax, ax - row_hi, lb - x, x - ub]
    return float(max(np.max(p[np.isfinite(p)], initial=0.0) for p in parts))


def _x_columns(model: LinearModel) -> dict[int, int]:
    cols = {}
    for idx, name in enumerate(model.var_names):
        head, _, tail = name.partition("_")
        if head == "x" and tail.isdigit():
            cols[int(tail)] = idx
    return cols


def extract_guard_set(model: LinearModel, solution) -> GuardSet:
    """Vertices whose ``x_i`` rounds to 1.

    ``solution`` is an :class:`LpSolution`, a solve report carrying
    ``values``, a name-to-value mapping or a dense vector in column order.
    """
    if isinstance(solution, LpSolution):
        if solution.x is None:
            raise ValueError(f"no primal values (status {solution.status})")
        x = solution.x
    elif isinstance(solution, dict):
        x = np.array([float(solution.get(name, 0.0)) for name in model.var_names])
    elif hasattr(solution, "values") and not isinstance(solution, np.ndarray):
        if solution.values is None:
            # a heuristic incumbent that was never beaten has no primal vector
            incumbent = getattr(solution, "incumbent", None)
            if isinstance(incumbent, GuardSet):
                return incumbent
            raise ValueError("solve report carries no primal values")
        x = np.asarray(solution.values, dtype=float)
    else:
        x = np.asarray(solution, dtype=float)
    cols = _x_columns(model)
    graph = model.meta.get("graph")
    n = graph.n if graph is not None else max(cols, default=0)
    members = []
    for v, idx in sorted(cols.items()):
        val = x[idx]
        if abs(val - round(val)) > INT_TOL:
            raise FractionalSolutionError(f"x_{v} = {val:.6g} is not integral")
        if round(val) == 1:
            members.append(v)
    return GuardSet(frozenset(members), n)

