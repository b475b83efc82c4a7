"""Depth-first branch-and-bound over binary variables.

The search dives from the node just solved into the child on the rounding
side of the branching variable, parks the sibling in a best-bound heap, and
pops the heap whenever a dive ends.  Children restart from the parent's
optimal basis, so a dive step usually needs only a few pivots.
"""
from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass

import numpy as np

from ..certify import GuardSet, verify
from ..formulations import FormulationKind
from ..model import LinearModel
from .heuristics import greedy_guard_set, property_of, rounding_incumbent
from .lp import INT_TOL, FractionalSolutionError, engine_for, extract_guard_set
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, SimplexError

__all__ = ["SolveReport", "bnb_solve", "SolveError", "IncumbentError",
           "STATUS_OPTIMAL", "STATUS_TIMEOUT", "STATUS_INFEASIBLE"]

STATUS_OPTIMAL = "optimal"
STATUS_TIMEOUT = "timeout"
STATUS_INFEASIBLE = "infeasible"


class SolveError(RuntimeError):
    pass


class IncumbentError(AssertionError):
    """An incumbent failed its certify verifier."""


@dataclass
class SolveReport:
    status: str
    best_objective: int | float | None
    incumbent: GuardSet | None
    lower_bound: float
    nodes_explored: int
    simplex_iterations: int
    wall_time: float
    values: np.ndarray | None = None
    root_bound: float | None = None
    heuristic_objective: int | None = None
    workers: int = 1

    @property
    def gap(self) -> float:
        if self.best_objective is None:
            return math.inf
        return self.best_objective - self.lower_bound


@dataclass(order=True)
class _Open:
    bound: float
    seq: int
    fixes: tuple = ()
    basis: object = None


def _integral_objective(model: LinearModel, c: np.ndarray) -> bool:
    """True when every feasible objective value is an integer."""
    binary = np.zeros(len(c), dtype=bool)
    binary[model.binary_indices()] = True
    return bool(np.all(c[~binary] == 0) and np.all(c[binary] == np.round(c[binary])))


def bnb_solve(model: LinearModel, time_limit: float = 600.0, node_limit: int | None = None,
              *, heuristic: bool = True, check_incumbent: bool = True,
              priority=None, **engine_options) -> SolveReport:
    """Minimise ``model`` exactly over its binary variables.

    Stops with status ``"timeout"`` when ``time_limit`` seconds or
    ``node_limit`` LP solves are used up; the report then carries the best
    incumbent and the smallest bound among unexplored nodes.

    Parameters
    ----------
    heuristic
        Seed the incumbent with :func:`greedy_guard_set` (models built by
        :mod:`secdom.formulations`) or LP rounding (anything else).
    priority
        Variable names branched on before all others; the most-fractional
        rule applies within this group first, then among the rest.  The
        default (``None``) picks the guard variables ``x_i`` of the
        connectivity models, whose many fractional tree arcs otherwise absorb
        the branching; pass ``()`` for plain most-fractional.
    check_incumbent
        Run the matching certify verifier on the final incumbent and raise
        :class:`IncumbentError` if it fails.
    """
    start = time.perf_counter()
    if not model.vars:
        raise ValueError("model has no variables")
    c, _, _, _, lb0, ub0 = model.to_arrays()
    bins = np.array(model.binary_indices(), dtype=np.int64)
    graph = model.meta.get("graph")
    kind = model.meta.get("kind")
    has_x = graph is not None and all(f"x_{v}" in model for v in graph.vertices)
    if priority is None:
        tree_kind = kind in (FormulationKind.CONNECTED_DOM, FormulationKind.SECURE_CONNECTED)
        priority = [f"x_{v}" for v in graph.vertices] if has_x and tree_kind else ()
    wanted = {model.index(name) for name in priority}
    first_group = np.array([int(b) in wanted for b in bins], dtype=bool)
    engine = engine_for(model, **engine_options)
    iters0 = engine.total_iterations
    integral = _integral_objective(model, c)

    def node_bound(value: float) -> float:
        return math.ceil(value - INT_TOL) if integral else value

    best = math.inf
    best_x = None
    best_set = None
    heuristic_value = None
    if heuristic and graph is not None and kind is not None:
        found = greedy_guard_set(graph, property_of(kind))
        if found is not None:
            best = heuristic_value = len(found)
            best_set = found

    def improves(bound: float) -> bool:
        return bound < best - (0.5 if integral else 1e-9)

    heap: list[_Open] = []
    seq = 0
    current: _Open | None = _Open(-math.inf, 0)
    nodes = 0
    root_bound = None
    timed_out = False
    while True:
        if current is None:
            while heap and not improves(heap[0].bound):
                heapq.heappop(heap)
            if not heap:
                break
            current = heapq.heappop(heap)
        if (time.perf_counter() - start > time_limit
                or (node_limit is not None and nodes >= node_limit)):
            heapq.heappush(heap, current)
            timed_out = True
            break
        lo = lb0.copy()
        hi = ub0.copy()
        for j, v in current.fixes:
            lo[j] = hi[j] = v
        try:
            res = engine.solve(lo, hi, basis=current.basis)
        except SimplexError:
            # retry once from a clean slack basis with Bland's rule
            engine._reset_to_slack_basis()
            res = engine.solve(lo, hi, bland=True)
        nodes += 1
        if res.status == UNBOUNDED:
            raise SolveError("LP relaxation is unbounded")
        if res.status == INFEASIBLE:
            current = None
            continue
        bound = node_bound(res.objective)
        if root_bound is None:
            root_bound = res.objective
            if heuristic and best == math.inf and len(bins):
                rounded = rounding_incumbent(engine, res.x, bins, lo, hi)
                if rounded is not None:
                    best = node_bound(rounded.objective) if integral else rounded.objective
                    best_x = rounded.x
        if not improves(bound):
            current = None
            continue
        xb = res.x[bins]
        frac = np.abs(xb - np.round(xb))
        if not len(bins) or frac.max() <= INT_TOL:
            best = round(res.objective) if integral else res.objective
            best_x = res.x
            best_set = None
            current = None
            continue
        score = np.round(np.minimum(xb - np.floor(xb), np.ceil(xb) - xb), 9)
        if first_group.any() and (score[first_group] > INT_TOL).any():
            score = np.where(first_group, score, -1.0)
        pick = int(np.argmax(score))
        col = int(bins[pick])
        first = 1.0 if xb[pick] >= 0.5 else 0.0
        seq += 1
        heapq.heappush(heap, _Open(bound, seq, current.fixes + ((col, 1.0 - first),),
                                   res.basis))
        current = _Open(bound, current.seq, current.fixes + ((col, first),), res.basis)

    if timed_out:
        status = STATUS_TIMEOUT
        lower = min([o.bound for o in heap] + [best])
    elif best == math.inf:
        status = STATUS_INFEASIBLE
        lower = math.inf
    else:
        status = STATUS_OPTIMAL
        lower = best
    if lower == -math.inf and root_bound is not None:
        lower = node_bound(root_bound)

    if best_x is not None and best_set is None and has_x:
        try:
            best_set = extract_guard_set(model, best_x)
        except FractionalSolutionError as exc:
            raise SolveError(f"incumbent not integral: {exc}") from None
    if check_incumbent and best_set is not None and graph is not None and kind is not None:
        cert = verify(graph, best_set, property_of(kind))
        if not cert.holds:
            raise IncumbentError(f"incumbent {best_set.sorted()} fails: {cert.describe()}")
    return SolveReport(
        status=status,
        best_objective=None if best == math.inf else best,
        incumbent=best_set,
        lower_bound=lower,
        nodes_explored=nodes,
        simplex_iterations=engine.total_iterations - iters0,
        wall_time=time.perf_counter() - start,
        values=best_x,
        root_bound=root_bound,
        heuristic_objective=heuristic_value,
    )
