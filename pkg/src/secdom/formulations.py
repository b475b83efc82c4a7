"""Binary programs for (secure) (connected) domination.

Variable names are fixed so that two builds of the same graph emit the same
bytes:

=====================  ==================================================
``x_<i>``              guard at vertex ``i`` (binary)
``zswap_<k>_<l>``      guard at ``l`` may move to ``k`` (binary, baseline)
``y_<i>_<j>``          guard at ``i`` is the designated defender of ``j``
``w_<i>_<j>``          arc ``(i, j)`` of the rooted arborescence
``u_<i>``              MTZ order of vertex ``i``
``wk_<k>_<i>_<j>``     arborescence arc after an incursion at ``k``
``uk_<k>_<i>``         MTZ order after an incursion at ``k``
=====================  ==================================================

The two roots of the augmented digraph are ``n + 1`` and ``n + 2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graphs import Graph, distances
from .model import BINARY, CONTINUOUS, LinearModel, ModelStats

__all__ = [
    "FormulationKind",
    "AugmentedDigraph",
    "DisconnectedGraphError",
    "build",
    "build_burger",
    "build_improved",
    "build_connected_dom",
    "build_secure_connected",
    "model_stats_report",
    "expected_improved_stats",
]


class FormulationKind(str, Enum):
    BURGER_SECURE = "burger_secure"
    IMPROVED_SECURE = "improved_secure"
    CONNECTED_DOM = "connected_dom"
    SECURE_CONNECTED = "secure_connected"

    @classmethod
    def parse(cls, text: str) -> "FormulationKind":
        key = _KIND_ALIASES.get(text, text)
        try:
            return cls(key)
        except ValueError:
            choices = sorted(set(_KIND_ALIASES) | {k.value for k in cls})
            raise ValueError(f"unknown formulation {text!r}; choose from {choices}") from None

    @property
    def property_name(self) -> str:
        """Name of the certify predicate a solution of this model must pass."""
        return {
            FormulationKind.BURGER_SECURE: "secure_dominating",
            FormulationKind.IMPROVED_SECURE: "secure_dominating",
            FormulationKind.CONNECTED_DOM: "connected_dominating",
            FormulationKind.SECURE_CONNECTED: "secure_connected_dominating",
        }[self]


_KIND_ALIASES = {
    "burger": "burger_secure",
    "improved": "improved_secure",
    "cdom": "connected_dom",
    "scdom": "secure_connected",
}


class DisconnectedGraphError(ValueError):
    pass


def _require(g: Graph, least: int, what: str) -> None:
    if g.n < least:
        raise ValueError(f"{what} needs at least {least} vertices, got {g.n}")
    if not g.is_connected():
        raise DisconnectedGraphError(f"{what}: graph {g} is disconnected")


def x(i):
    return f"x_{i}"


def y(i, j):
    return f"y_{i}_{j}"


# -- baseline ---------------------------------------------------------------


def build_burger(g: Graph) -> LinearModel:
    _require(g, 1, "build_burger")
    m = LinearModel(f"burger_{g.name or 'g'}")
    for i in g.vertices:
        m.add_binary(x(i))
    arcs = g.arcs()
    for k, l in arcs:
        m.add_binary(f"zswap_{k}_{l}")
    for i in g.vertices:
        m.add_constraint(f"dom_{i}", [(x(j), 1) for j in g.closed(i)], ">=", 1)
    for k in g.vertices:
        terms = [(x(k), 1)] + [(f"zswap_{k}_{l}", 1) for l in g.N(k)]
        m.add_constraint(f"guard_{k}", terms, ">=", 1)
    for k, l in arcs:
        m.add_constraint(f"swap_{k}_{l}",
                         [(x(k), 1), (x(l), -1), (f"zswap_{k}_{l}", 2)], "<=", 1)
    for k, l in arcs:
        near = set(g.closed(k))
        for i in g.vertices:
            if i in near:
                continue
            terms = [(f"zswap_{k}_{l}", 1)] + [(x(j), -1) for j in g.closed(i) if j != l]
            m.add_constraint(f"cover_{k}_{l}_{i}", terms, "<=", 0)
    m.set_objective([(x(i), 1) for i in g.vertices])
    m.meta = {"graph": g, "kind": FormulationKind.BURGER_SECURE}
    return m


# -- improved ---------------------------------------------------------------


def _add_improved(m: LinearModel, g: Graph) -> None:
    for i in g.vertices:
        m.add_binary(x(i))
    arcs = g.arcs()
    for i, j in arcs:
        m.add_var(y(i, j), CONTINUOUS, 0)
    for i in g.vertices:
        m.add_constraint(f"dom_{i}", [(x(j), 1) for j in g.closed(i)], ">=", 1)
    for i, j in arcs:
        m.add_constraint(f"ylink_{i}_{j}", [(y(i, j), 1), (x(i), -1)], "<=", 0)
    table = distances(g)
    adj = [set(a) for a in g.adj]
    for j in g.vertices:
        for i in g.vertices:
            if table[i, j] != 2:
                continue
            common = sorted(adj[i - 1] & adj[j - 1])
            terms = [(x(k), 1) for k in g.closed(i)] + [(y(k, j), -1) for k in common]
            m.add_constraint(f"move_{i}_{j}", terms, ">=", 1)
    for j in g.vertices:
        m.add_constraint(f"assign_{j}", [(x(j), 1)] + [(y(i, j), 1) for i in g.N(j)], "=", 1)


def build_improved(g: Graph) -> LinearModel:
    _require(g, 1, "build_improved")
    m = LinearModel(f"improved_{g.name or 'g'}")
    _add_improved(m, g)
    m.set_objective([(x(i), 1) for i in g.vertices])
    m.meta = {"graph": g, "kind": FormulationKind.IMPROVED_SECURE}
    return m


# -- connectivity -----------------------------------------------------------


@dataclass(frozen=True)
class AugmentedDigraph:
    """``G'``: both orientations of every edge plus two roots.

    ``arcs`` lists the edge arcs first, then ``(n+1, i)``, ``(n+2, i)`` and
    finally ``(n+1, n+2)``.
    """

    graph: Graph

    @property
    def src(self) -> int:
        return self.graph.n + 1

    @property
    def root(self) -> int:
        return self.graph.n + 2

    @property
    def edge_arcs(self) -> list[tuple[int, int]]:
        return self.graph.arcs()

    @property
    def root_arcs(self) -> list[tuple[int, int]]:
        g = self.graph
        return ([(self.src, i) for i in g.vertices] + [(self.root, i) for i in g.vertices]
                + [(self.src, self.root)])

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return self.edge_arcs + self.root_arcs

    def in_arcs(self, j: int) -> list[tuple[int, int]]:
        return [(i, j) for i in self.graph.N(j)] + [(self.src, j), (self.root, j)]


def _add_tree(m: LinearModel, g: Graph, w, u, tag: str, selected) -> None:
    """MTZ arborescence over ``G'`` whose non-root vertices are ``selected``.

    ``w(i, j)`` and ``u(i)`` give variable names; ``selected(i)`` returns the
    terms and constant of the expression standing for ``x_i``.  Each row
    ``selected(i) + w_{n+1,i} = 1`` moves its constant to the right.
    """
    n = g.n
    aug = AugmentedDigraph(g)
    src, root = aug.src, aug.root
    for i, j in aug.arcs:
        m.add_binary(w(i, j))
    for i in list(g.vertices) + [root]:
        m.add_var(u(i), CONTINUOUS, 1, n + 1)

    def order(i):
        return [] if i == src else [(u(i), 1)]

    m.add_constraint(f"root{tag}", [(w(root, i), 1) for i in g.vertices], "=", 1)
    for j in g.vertices:
        m.add_constraint(f"in{tag}_{j}", [(w(i, j), 1) for i, j in aug.in_arcs(j)], "=", 1)
    for i, j in aug.edge_arcs:
        m.add_constraint(f"out{tag}_{i}_{j}", [(w(src, i), 1), (w(i, j), 1)], "<=", 1)
    for i, j in aug.edge_arcs:
        terms = [(w(i, j), n + 1), (u(i), 1), (u(j), -1), (w(j, i), n - 1)]
        m.add_constraint(f"mtz{tag}_{i}_{j}", terms, "<=", n)
    for i, j in aug.root_arcs:
        terms = [(w(i, j), n + 1)] + order(i) + [(v, -c) for v, c in order(j)]
        m.add_constraint(f"mtzr{tag}_{i}_{j}", terms, "<=", n)
    m.add_constraint(f"srcroot{tag}", [(w(src, root), 1)], "=", 1)
    for i in g.vertices:
        terms, const = selected(i)
        m.add_constraint(f"link{tag}_{i}", terms + [(w(src, i), 1)], "=", 1 - const)


def build_connected_dom(g: Graph) -> LinearModel:
    _require(g, 2, "build_connected_dom")
    m = LinearModel(f"cdom_{g.name or 'g'}")
    for i in g.vertices:
        m.add_binary(x(i))
    for i in g.vertices:
        m.add_constraint(f"dom_{i}", [(x(j), 1) for j in g.closed(i)], ">=", 1)
    _add_tree(m, g, lambda i, j: f"w_{i}_{j}", lambda i: f"u_{i}", "",
              lambda i: ([(x(i), 1)], 0))
    m.set_objective([(x(i), 1) for i in g.vertices])
    m.meta = {"graph": g, "kind": FormulationKind.CONNECTED_DOM}
    return m


def build_secure_connected(g: Graph) -> LinearModel:
    """Improved secure model, a connectivity tree on ``x``, and one tree per
    incursion vertex ``k`` on the post-move configuration ``z_{.k}``.

    ``z_{ik}`` is substituted in place: ``x_i - y_{ik}`` when ``k`` is a
    neighbour of ``i``, ``x_i`` when it is not, and ``1`` when ``i == k``.
    """
    _require(g, 2, "build_secure_connected")
    m = LinearModel(f"scdom_{g.name or 'g'}")
    _add_improved(m, g)
    _add_tree(m, g, lambda i, j: f"w_{i}_{j}", lambda i: f"u_{i}", "",
              lambda i: ([(x(i), 1)], 0))
    for k in g.vertices:
        nk = set(g.N(k))

        def z(i, k=k, nk=nk):
            if i == k:
                return [], 1
            if i in nk:
                return [(x(i), 1), (y(i, k), -1)], 0
            return [(x(i), 1)], 0

        _add_tree(m, g, lambda i, j, k=k: f"wk_{k}_{i}_{j}", lambda i, k=k: f"uk_{k}_{i}",
                  f"k{k}", z)
    m.set_objective([(x(i), 1) for i in g.vertices])
    m.meta = {"graph": g, "kind": FormulationKind.SECURE_CONNECTED}
    return m


_BUILDERS = {
    FormulationKind.BURGER_SECURE: build_burger,
    FormulationKind.IMPROVED_SECURE: build_improved,
    FormulationKind.CONNECTED_DOM: build_connected_dom,
    FormulationKind.SECURE_CONNECTED: build_secure_connected,
}


def build(g: Graph, kind) -> LinearModel:
    if not isinstance(kind, FormulationKind):
        kind = FormulationKind.parse(kind)
    return _BUILDERS[kind](g)


def model_stats_report(g: Graph, kind) -> ModelStats:
    return build(g, kind).stats()


def expected_improved_stats(g: Graph) -> ModelStats:
    """Closed-form size of :func:`build_improved`: ``n`` binaries, ``2m``
    continuous, ``2n + 2m + P2`` rows."""
    p2 = int((distances(g).dist == 2).sum())
    return ModelStats(g.n, 2 * g.m, 2 * g.n + 2 * g.m + p2)
