"""Incumbent heuristics for branch-and-bound.

Known formulations get a combinatorial guard set: a greedy start, repaired
by adding the vertex a verifier reports as uncovered or undefended, then
pruned by dropping guards while the property still holds.  Other models
fall back to rounding an LP point and re-solving with the binaries fixed.
"""
from __future__ import annotations

import numpy as np

from .. import kernels
from ..certify import GuardSet, Property, verify
from ..formulations import FormulationKind
from ..graphs import Graph
from .simplex import OPTIMAL

__all__ = ["greedy_guard_set", "rounding_incumbent", "property_of"]

_PROPERTY = {
    FormulationKind.BURGER_SECURE: Property.SECURE_DOMINATING,
    FormulationKind.IMPROVED_SECURE: Property.SECURE_DOMINATING,
    FormulationKind.CONNECTED_DOM: Property.CONNECTED_DOMINATING,
    FormulationKind.SECURE_CONNECTED: Property.SECURE_CONNECTED_DOMINATING,
}


def property_of(kind) -> Property:
    return _PROPERTY[FormulationKind.parse(kind)]


class _Checker:
    def __init__(self, g: Graph, prop: Property):
        self.g = g
        self.prop = prop
        self.fast = g.n <= 64
        if self.fast:
            self.closed = list(g.closed_masks)
            self.opened = list(g.open_masks)

    def holds(self, s: set[int]) -> bool:
        if self.fast:
            mask = 0
            for v in s:
                mask |= 1 << (v - 1)
            return bool(kernels.has_property(self.closed, self.opened, self.g.n, mask,
                                             self.prop.code))
        return verify(self.g, s, self.prop).holds

    def witness(self, s: set[int]):
        return verify(self.g, s, self.prop).witness


def _greedy_dominating(g: Graph) -> set[int]:
    uncovered = set(g.vertices)
    s: set[int] = set()
    while uncovered:
        best = max(g.vertices, key=lambda v: (len(uncovered.intersection(g.closed(v))), -v))
        s.add(best)
        uncovered.difference_update(g.closed(best))
    return s


def _repair(check: _Checker, s: set[int]) -> set[int] | None:
    s = set(s)
    while not check.holds(s):
        w = check.witness(s)
        if w is None or w in s:
            return None
        s.add(w)
    return s


def _prune(check: _Checker, s: set[int], order) -> set[int]:
    s = set(s)
    changed = True
    while changed:
        changed = False
        for v in order:
            if v in s and len(s) > 1:
                s.discard(v)
                if check.holds(s):
                    changed = True
                else:
                    s.add(v)
    return s


def _exchange(check: _Checker, s: set[int], vertices, max_rounds: int) -> set[int]:
    """Replace two guards by one while the property survives."""
    for _ in range(max_rounds):
        members = sorted(s)
        outside = [v for v in vertices if v not in s]
        improved = False
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                rest = s - {members[a], members[b]}
                for v in outside:
                    rest.add(v)
                    if check.holds(rest):
                        s = rest
                        improved = True
                        break
                    rest.discard(v)
                if improved:
                    break
            if improved:
                break
        if not improved:
            break
    return s


def greedy_guard_set(g: Graph, prop) -> GuardSet | None:
    """A (not necessarily minimum) set with ``prop``, or ``None`` if none exists.

    Deterministic: every tie goes to the smaller vertex index.
    """
    prop = Property.parse(prop)
    check = _Checker(g, prop)
    everything = set(g.vertices)
    if not check.holds(everything):
        return None
    starts = [everything]
    if prop in (Property.DOMINATING, Property.SECURE_DOMINATING):
        starts.insert(0, _greedy_dominating(g))
    orders = [
        sorted(g.vertices, key=lambda v: (g.degree(v), v)),
        sorted(g.vertices, key=lambda v: (-g.degree(v), v)),
        list(g.vertices),
    ]
    best = None
    for start in starts:
        fixed = _repair(check, start)
        if fixed is None:
            continue
        for order in orders:
            s = _prune(check, fixed, order)
            if check.fast:
                s = _exchange(check, s, list(g.vertices), g.n)
            if best is None or (len(s), sorted(s)) < (len(best), sorted(best)):
                best = s
    return GuardSet(frozenset(best), g.n)


def rounding_incumbent(engine, x, binaries, lb, ub):
    """Fix each binary at its rounded LP value and re-solve; returns the
    LP result when it is optimal, else ``None``."""
    lo = lb.copy()
    hi = ub.copy()
    fixed = np.round(x[binaries])
    lo[binaries] = fixed
    hi[binaries] = fixed
    res = engine.solve(lo, hi)
    return res if res.status == OPTIMAL else None
