"""Graph type, the benchmark graph families, and the edge-list format.

Vertices are labelled ``1..n`` throughout.  Grid-like families number the
square in row ``r`` and column ``c`` (both 1-based) as ``(r - 1) * k + c``.
Generalized Petersen graphs use ``1..k`` for the outer cycle and ``k+1..2k``
for the inner vertices, so that ``u_i = i`` and ``v_i = k + i``.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

__all__ = [
    "Graph",
    "FamilySpec",
    "DistanceTable",
    "GraphFormatError",
    "HeaderError",
    "VertexRangeError",
    "DuplicateEdgeError",
    "SelfLoopError",
    "UNREACHABLE",
    "square_grid",
    "torus_grid",
    "queen_graph",
    "gp_graph",
    "hex_grid",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "star_graph",
    "random_connected_graph",
    "from_edge_list",
    "to_edge_list",
    "read_graph",
    "distances",
    "dist2_pairs",
    "FAMILIES",
]

UNREACHABLE = -1


class GraphFormatError(ValueError):
    """Raised when an edge-list document cannot be parsed."""


class HeaderError(GraphFormatError):
    pass


class VertexRangeError(GraphFormatError):
    pass


class DuplicateEdgeError(GraphFormatError):
    pass


class SelfLoopError(GraphFormatError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n``.

    Build instances with :meth:`Graph.from_edges`, which validates and
    normalises the edge list; the constructor itself trusts its input.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    name: str = field(default="", compare=False)

    @classmethod
    def from_edges(cls, n: int, edges, name: str = "") -> "Graph":
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        seen: set[tuple[int, int]] = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) outside 1..{n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            nbrs[u - 1].append(v)
            nbrs[v - 1].append(u)
        return cls(
            n=n,
            edges=tuple(sorted(seen)),
            adj=tuple(tuple(sorted(a)) for a in nbrs),
            name=name,
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def N(self, i: int) -> tuple[int, ...]:
        """Open neighbourhood of ``i``."""
        return self.adj[i - 1]

    def closed(self, i: int) -> tuple[int, ...]:
        """Closed neighbourhood ``N[i]``, sorted."""
        return tuple(sorted(self.adj[i - 1] + (i,)))

    def degree(self, i: int) -> int:
        return len(self.adj[i - 1])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u - 1]

    def arcs(self) -> list[tuple[int, int]]:
        """Both orientations of every edge, sorted lexicographically."""
        return [(i, j) for i in self.vertices for j in self.N(i)]

    @cached_property
    def _adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def open_masks(self) -> tuple[int, ...]:
        """Bitmask of ``N(i)`` per vertex, bit ``i-1`` standing for vertex ``i``."""
        out = []
        for a in self.adj:
            mask = 0
            for j in a:
                mask |= 1 << (j - 1)
            out.append(mask)
        return tuple(out)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(mask | (1 << i) for i, mask in enumerate(self.open_masks))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {1}
        queue = deque([1])
        while queue:
            u = queue.popleft()
            for v in self.adj[u - 1]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.n

    def __str__(self) -> str:
        label = self.name or "graph"
        return f"{label}(n={self.n}, m={self.m})"


# -- families ---------------------------------------------------------------


def _check_k(name: str, k: int, least: int) -> None:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise TypeError(f"{name}: k must be an integer, got {k!r}")
    if k < least:
        raise ValueError(f"{name}: k must be >= {least}, got {k}")


def _cell(k: int, r: int, c: int) -> int:
    return r * k + c + 1


def square_grid(k: int) -> Graph:
    """``P_k x P_k``; square ``(r, c)`` is vertex ``(r - 1) * k + c``."""
    _check_k("square_grid", k, 1)
    edges = []
    for r in range(k):
        for c in range(k):
            if c + 1 < k:
                edges.append((_cell(k, r, c), _cell(k, r, c + 1)))
            if r + 1 < k:
                edges.append((_cell(k, r, c), _cell(k, r + 1, c)))
    return Graph.from_edges(k * k, edges, name=f"grid{k}")


def torus_grid(k: int) -> Graph:
    """``C_k x C_k``.  ``k < 3`` would need parallel edges and is rejected."""
    _check_k("torus_grid", k, 3)
    edges = set()
    for r in range(k):
        for c in range(k):
            u = _cell(k, r, c)
            for v in (_cell(k, r, (c + 1) % k), _cell(k, (r + 1) % k, c)):
                edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(k * k, sorted(edges), name=f"torus{k}")


def queen_graph(k: int) -> Graph:
    """Squares of a ``k x k`` board, adjacent when a queen moves between them."""
    _check_k("queen_graph", k, 1)
    edges = []
    squares = [(r, c) for r in range(k) for c in range(k)]
    for a, (r1, c1) in enumerate(squares):
        for r2, c2 in squares[a + 1:]:
            if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
                edges.append((_cell(k, r1, c1), _cell(k, r2, c2)))
    return Graph.from_edges(k * k, edges, name=f"queen{k}")


def gp_graph(k: int, j: int) -> Graph:
    """Generalized Petersen graph ``GP(k, j)`` for ``j`` in ``{1, 2}``.

    Outer cycle ``u_1..u_k`` is ``1..k``; inner vertex ``v_i`` is ``k + i``.
    """
    if j not in (1, 2):
        raise ValueError(f"gp_graph: j must be 1 or 2, got {j}")
    _check_k(f"gp_graph(j={j})", k, 3 if j == 1 else 5)
    edges = []
    for i in range(k):
        edges.append((i + 1, (i + 1) % k + 1))
        edges.append((i + 1, k + i + 1))
        edges.append((k + i + 1, k + (i + j) % k + 1))
    return Graph.from_edges(2 * k, edges, name=f"gp{k}_{j}")


HEX_STYLES = ("cells", "honeycomb")


def hex_grid(k: int, style: str = "cells") -> Graph:
    """``k x k`` hexagonal grid.

    ``style="cells"`` (the default) takes the hexagonal cells of a ``k x k``
    rhombic board as vertices, two cells adjacent when they share a side.
    Cell ``(r, c)`` is vertex ``(r - 1) * k + c`` and its neighbours are the
    four grid neighbours plus ``(r - 1, c + 1)`` and ``(r + 1, c - 1)``.

    ``style="honeycomb"`` is the brick-wall drawing of ``k x k`` hexagonal
    faces, with vertices at the corners of the hexagons (maximum degree 3).
    Only the ``cells`` style reproduces the reference secure domination
    numbers for this family.
    """
    _check_k("hex_grid", k, 1)
    if style == "cells":
        edges = []
        for r in range(k):
            for c in range(k):
                u = _cell(k, r, c)
                if c + 1 < k:
                    edges.append((u, _cell(k, r, c + 1)))
                if r + 1 < k:
                    edges.append((u, _cell(k, r + 1, c)))
                    if c > 0:
                        edges.append((u, _cell(k, r + 1, c - 1)))
        return Graph.from_edges(k * k, edges, name=f"hex{k}")
    if style == "honeycomb":
        return _honeycomb(k)
    raise ValueError(f"unknown hex_grid style {style!r}; expected one of {HEX_STYLES}")


def _honeycomb(k: int) -> Graph:
    # columns 0..k of 2k+2 stacked points; drop the two dangling corners
    rows = 2 * k + 2
    pts = [(i, j) for i in range(k + 1) for j in range(rows)]
    dropped = {(0, rows - 1), (k, rows - 1 if k % 2 else 0)}
    pts = [p for p in pts if p not in dropped]
    index = {p: t + 1 for t, p in enumerate(pts)}
    edges = []
    for i, j in pts:
        if (i, j + 1) in index and j + 1 < rows:
            edges.append((index[i, j], index[i, j + 1]))
        if i % 2 == j % 2 and (i + 1, j) in index:
            edges.append((index[i, j], index[i + 1, j]))
    return Graph.from_edges(len(pts), edges, name=f"honeycomb{k}")


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)], name=f"P{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a simple cycle needs n >= 3")
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)], name=f"C{n}")


def complete_graph(n: int) -> Graph:
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return Graph.from_edges(n, edges, name=f"K{n}")


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with the centre as vertex 1."""
    return Graph.from_edges(leaves + 1, [(1, i) for i in range(2, leaves + 2)],
                            name=f"K1_{leaves}")


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    if n < 1:
        raise ValueError("n must be positive")
    order = list(range(1, n + 1))
    rng.shuffle(order)
    edges = set()
    for t in range(1, n):
        u, v = order[t], order[rng.randrange(t)]
        edges.add((min(u, v), max(u, v)))
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges), name=f"rand{n}")


# -- family descriptors -----------------------------------------------------

FAMILIES = ("square_grid", "hex_grid", "queen", "torus", "gp1", "gp2", "file")

_ALIASES = {"grid": "square_grid", "hex": "hex_grid", "queen_graph": "queen",
            "torus_grid": "torus"}

_MIN_K = {"square_grid": 1, "hex_grid": 1, "queen": 1, "torus": 3, "gp1": 3, "gp2": 5}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    k: int = 0
    path: str | None = None

    def __post_init__(self):
        family = _ALIASES.get(self.family, self.family)
        if family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", family)
        if family == "file":
            if not self.path:
                raise ValueError("family 'file' needs a path")
        elif self.k < _MIN_K[family]:
            raise ValueError(f"{family}: k must be >= {_MIN_K[family]}, got {self.k}")

    def build(self) -> Graph:
        f = self.family
        if f == "square_grid":
            return square_grid(self.k)
        if f == "hex_grid":
            return hex_grid(self.k)
        if f == "queen":
            return queen_graph(self.k)
        if f == "torus":
            return torus_grid(self.k)
        if f == "gp1":
            return gp_graph(self.k, 1)
        if f == "gp2":
            return gp_graph(self.k, 2)
        return read_graph(self.path)

    @property
    def label(self) -> str:
        return f"{self.family}:{self.path}" if self.family == "file" else f"{self.family}{self.k}"


# -- edge-list format -------------------------------------------------------


def from_edge_list(text: str, name: str = "") -> Graph:
    """Parse ``p <n> <m>`` followed by ``m`` lines ``e <u> <v>``.

    Blank lines and lines starting with ``c`` are ignored.
    """
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if header is None:
            if parts[0] != "p" or len(parts) != 3:
                raise HeaderError(f"line {lineno}: expected 'p <n> <m>', got {line!r}")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise HeaderError(f"line {lineno}: non-integer header {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise HeaderError(f"line {lineno}: negative count in header")
            continue
        if parts[0] != "e" or len(parts) != 3:
            raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>', got {line!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise VertexRangeError(f"line {lineno}: vertex out of range 1..{n} in {line!r}")
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise DuplicateEdgeError(f"line {lineno}: duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    if header is None:
        raise HeaderError("missing 'p <n> <m>' header")
    if len(edges) != header[1]:
        raise HeaderError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges, name=name)


def to_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    path = Path(path)
    return from_edge_list(path.read_text(), name=path.stem)


# -- distances --------------------------------------------------------------


class DistanceTable:
    """All-pairs hop counts; ``table[i, j]`` with 1-based vertices.

    Unreachable pairs hold :data:`UNREACHABLE`.
    """

    def __init__(self, dist: np.ndarray):
        self.dist = dist
        self.dist.setflags(write=False)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return int(self.dist[i - 1, j - 1])

    @property
    def n(self) -> int:
        return self.dist.shape[0]


def distances(g: Graph) -> DistanceTable:
    """Breadth-first search from every vertex."""
    dist = np.full((g.n, g.n), UNREACHABLE, dtype=np.int64)
    for s in g.vertices:
        row = dist[s - 1]
        row[s - 1] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = row[u - 1] + 1
            for v in g.adj[u - 1]:
                if row[v - 1] == UNREACHABLE:
                    row[v - 1] = du
                    queue.append(v)
    return DistanceTable(dist)


def dist2_pairs(g: Graph, table: DistanceTable | None = None) -> list[tuple[int, int]]:
    """Ordered pairs ``(i, j)`` at distance exactly 2, sorted."""
    table = table if table is not None else distances(g)
    ii, jj = np.nonzero(table.dist == 2)
    return [(int(i) + 1, int(j) + 1) for i, j in zip(ii, jj)]
