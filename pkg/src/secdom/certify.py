"""Verifiers and exhaustive minimum oracles for the four domination variants.

Verifiers return a :class:`Certificate` whose ``witness`` names the vertex
that breaks the property, so a failure can be re-checked by hand.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from . import kernels
from .graphs import Graph

__all__ = [
    "Property",
    "GuardSet",
    "Certificate",
    "OracleCapExceeded",
    "is_dominating",
    "is_secure_dominating",
    "is_connected_dominating",
    "is_secure_connected_dominating",
    "verify",
    "oracle_minimum",
    "DEFAULT_CAPS",
]


class Property(str, Enum):
    DOMINATING = "dominating"
    SECURE_DOMINATING = "secure_dominating"
    CONNECTED_DOMINATING = "connected_dominating"
    SECURE_CONNECTED_DOMINATING = "secure_connected_dominating"

    @classmethod
    def parse(cls, text) -> "Property":
        if isinstance(text, cls):
            return text
        key = _PROP_ALIASES.get(text, text)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown property {text!r}") from None

    @property
    def code(self) -> int:
        return _CODES[self]


_PROP_ALIASES = {
    "dom": "dominating",
    "secure": "secure_dominating",
    "sdom": "secure_dominating",
    "cdom": "connected_dominating",
    "connected": "connected_dominating",
    "scdom": "secure_connected_dominating",
    "secure_connected": "secure_connected_dominating",
}

_CODES = {
    Property.DOMINATING: kernels.DOMINATING,
    Property.SECURE_DOMINATING: kernels.SECURE,
    Property.CONNECTED_DOMINATING: kernels.CONNECTED,
    Property.SECURE_CONNECTED_DOMINATING: kernels.SECURE_CONNECTED,
}

DEFAULT_CAPS = {
    Property.DOMINATING: 20,
    Property.SECURE_DOMINATING: 20,
    Property.CONNECTED_DOMINATING: 16,
    Property.SECURE_CONNECTED_DOMINATING: 16,
}


@dataclass(frozen=True)
class GuardSet:
    """Vertices holding guards; serialises as a sorted index list."""

    members: frozenset[int]
    n: int

    @classmethod
    def of(cls, g: Graph, members) -> "GuardSet":
        members = frozenset(int(v) for v in members)
        bad = [v for v in members if not 1 <= v <= g.n]
        if bad:
            raise ValueError(f"guard vertices {sorted(bad)} outside 1..{g.n}")
        return cls(members, g.n)

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "GuardSet":
        return cls(frozenset(i + 1 for i in range(n) if mask >> i & 1), n)

    @property
    def mask(self) -> int:
        out = 0
        for v in self.members:
            out |= 1 << (v - 1)
        return out

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v) -> bool:
        return v in self.members

    def __iter__(self):
        return iter(self.sorted())

    def dumps(self) -> str:
        return " ".join(map(str, self.sorted())) + "\n"

    @classmethod
    def loads(cls, g: Graph, text: str) -> "GuardSet":
        body = " ".join(line.split("#", 1)[0] for line in text.splitlines())
        try:
            members = [int(t) for t in body.replace(",", " ").split()]
        except ValueError:
            raise ValueError(f"malformed guard-set list: {text[:60]!r}") from None
        if len(set(members)) != len(members):
            raise ValueError("guard-set list repeats a vertex")
        return cls.of(g, members)


@dataclass(frozen=True)
class Certificate:
    """Outcome of a verifier.

    On failure ``witness`` is the uncovered or undefended vertex; for the
    secure variants ``incursion`` repeats the attacked vertex.  A failing
    connectivity check with full coverage has witness ``None`` and ``reason``
    ``"disconnected"``.
    """

    property: Property
    holds: bool
    witness: int | None = None
    incursion: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return f"{self.property.value}: holds"
        parts = [f"{self.property.value}: FAILS ({self.reason})"]
        if self.witness is not None:
            parts.append(f"witness vertex {self.witness}")
        return "; ".join(parts)


def _as_set(g: Graph, s) -> frozenset[int]:
    if isinstance(s, GuardSet):
        return s.members
    return GuardSet.of(g, s).members


def _uncovered(g: Graph, s: frozenset[int]) -> int | None:
    for v in g.vertices:
        if v not in s and not any(w in s for w in g.N(v)):
            return v
    return None


def _connected(g: Graph, s: frozenset[int]) -> bool:
    if not s:
        return False
    start = min(s)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in g.N(u):
            if v in s and v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(s)


def _dominating_cert(g, s, prop) -> Certificate | None:
    if g.n and not s:
        return Certificate(prop, False, 1, reason="empty guard set")
    v = _uncovered(g, s)
    if v is not None:
        return Certificate(prop, False, v, reason="vertex not covered")
    return None


def is_dominating(g: Graph, s) -> Certificate:
    s = _as_set(g, s)
    fail = _dominating_cert(g, s, Property.DOMINATING)
    return fail if fail is not None else Certificate(Property.DOMINATING, True)


def is_connected_dominating(g: Graph, s) -> Certificate:
    prop = Property.CONNECTED_DOMINATING
    s = _as_set(g, s)
    fail = _dominating_cert(g, s, prop)
    if fail is not None:
        return fail
    if not _connected(g, s):
        return Certificate(prop, False, reason="disconnected")
    return Certificate(prop, True)


def _defended(g: Graph, s: frozenset[int], v: int, connected: bool) -> bool:
    for w in g.N(v):
        if w not in s:
            continue
        t = (s - {w}) | {v}
        if _uncovered(g, t) is None and (not connected or _connected(g, t)):
            return True
    return False


def is_secure_dominating(g: Graph, s) -> Certificate:
    prop = Property.SECURE_DOMINATING
    s = _as_set(g, s)
    fail = _dominating_cert(g, s, prop)
    if fail is not None:
        return fail
    for v in g.vertices:
        if v not in s and not _defended(g, s, v, False):
            return Certificate(prop, False, v, v, reason="incursion cannot be defended")
    return Certificate(prop, True)


def is_secure_connected_dominating(g: Graph, s) -> Certificate:
    prop = Property.SECURE_CONNECTED_DOMINATING
    s = _as_set(g, s)
    base = is_connected_dominating(g, s)
    if not base:
        return Certificate(prop, False, base.witness, reason=base.reason)
    for v in g.vertices:
        if v not in s and not _defended(g, s, v, True):
            return Certificate(prop, False, v, v, reason="incursion cannot be defended")
    return Certificate(prop, True)


_VERIFIERS = {
    Property.DOMINATING: is_dominating,
    Property.SECURE_DOMINATING: is_secure_dominating,
    Property.CONNECTED_DOMINATING: is_connected_dominating,
    Property.SECURE_CONNECTED_DOMINATING: is_secure_connected_dominating,
}


def verify(g: Graph, s, prop) -> Certificate:
    return _VERIFIERS[Property.parse(prop)](g, s)


class OracleCapExceeded(ValueError):
    pass


def oracle_minimum(g: Graph, prop, cap: int | None = None) -> tuple[int, GuardSet]:
    """Exhaustive minimum by cardinality-ordered subset enumeration.

    Ties go to the lexicographically smallest sorted member list.  Raises
    :class:`OracleCapExceeded` when ``g.n`` is above ``cap`` (default per
    property: 20 for plain and secure domination, 16 for the connected ones).
    """
    prop = Property.parse(prop)
    cap = DEFAULT_CAPS[prop] if cap is None else cap
    if g.n > cap:
        raise OracleCapExceeded(f"oracle cap is {cap} vertices, graph has {g.n}")
    if g.n > 64:
        raise OracleCapExceeded("bitset oracle handles at most 64 vertices")
    if prop in (Property.CONNECTED_DOMINATING, Property.SECURE_CONNECTED_DOMINATING):
        if not g.is_connected():
            raise ValueError("connected variants need a connected graph")
    size, mask = kernels.min_property_set(
        list(g.closed_masks), list(g.open_masks), g.n, prop.code, 1, g.n)
    if size < 0:
        raise RuntimeError(f"no {prop.value} set found on {g}")
    found = GuardSet.from_mask(mask, g.n)
    return size, found
