import math
import random
from importlib import resources

import pytest
from hypothesis import given
from hypothesis import strategies as st

from secdom import _kernels_py, kernels
from secdom import graphs as G
from secdom.certify import (DEFAULT_CAPS, GuardSet, OracleCapExceeded, Property,
                            is_connected_dominating, is_dominating,
                            is_secure_connected_dominating, is_secure_dominating,
                            oracle_minimum, verify)

from corpus import random_graphs, small_corpus

P3 = G.path_graph(3)
C4 = G.cycle_graph(4)
STAR = G.star_graph(3)


def grid9_guards():
    text = resources.files("secdom").joinpath("data/grid9_28_guards.txt").read_text()
    return GuardSet.loads(G.square_grid(9), text)


# -- verifier examples ----------------------------------------------------------


def test_dominating_examples():
    assert is_dominating(G.complete_graph(3), {1})
    cert = is_dominating(P3, {1})
    assert not cert and cert.witness == 3


def test_secure_examples():
    cert = is_secure_dominating(P3, {2})
    assert not cert.holds
    assert cert.witness in (1, 3) and cert.incursion == cert.witness
    for n in range(1, 7):
        assert is_secure_dominating(G.complete_graph(n), {1})


def test_connected_examples():
    assert is_connected_dominating(STAR, {1})
    cert = is_connected_dominating(C4, {1, 3})
    assert not cert and cert.reason == "disconnected"
    assert is_connected_dominating(G.cycle_graph(5), {1, 2, 3})


def test_secure_connected_examples():
    assert is_secure_connected_dominating(C4, {1, 2, 3})
    cert = is_secure_connected_dominating(C4, {1, 2})
    assert not cert
    assert cert.incursion in (3, 4)
    assert not is_secure_connected_dominating(STAR, {1, 2})


def test_empty_set_fails_everything():
    for prop in Property:
        assert not verify(P3, set(), prop)


def test_out_of_range_guard_rejected():
    with pytest.raises(ValueError):
        is_dominating(P3, {4})


def test_failure_witness_is_checkable():
    g = G.square_grid(4)
    rng = random.Random(3)
    for _ in range(200):
        s = {v for v in g.vertices if rng.random() < 0.3}
        cert = is_secure_dominating(g, s)
        if cert.holds or cert.witness is None:
            continue
        v = cert.witness
        if cert.reason == "vertex not covered":
            assert not set(g.closed(v)) & s
        else:
            assert v not in s
            for w in set(g.N(v)) & s:
                assert not is_dominating(g, (s - {w}) | {v})


# -- 28 guards on the 9x9 grid ------------------------------------------------


def test_grid9_fixture_is_secure():
    guards = grid9_guards()
    assert len(guards) == 28
    g = G.square_grid(9)
    assert is_dominating(g, guards)
    assert is_secure_dominating(g, guards)


def test_grid9_fixture_every_single_removal_fails():
    g = G.square_grid(9)
    guards = grid9_guards()
    for v in guards:
        cert = is_secure_dominating(g, guards.members - {v})
        assert not cert.holds
        assert cert.witness is not None


# -- guard sets ---------------------------------------------------------------


def test_guard_set_io():
    s = GuardSet.loads(P3, "3 1\n")
    assert s.sorted() == [1, 3]
    assert s.dumps() == "1 3\n"
    assert GuardSet.loads(P3, s.dumps()) == s
    assert s.mask == 0b101
    assert GuardSet.from_mask(0b101, 3) == s


@pytest.mark.parametrize("text", ["1 x", "1 1", "0", "4"])
def test_guard_set_rejects(text):
    with pytest.raises(ValueError):
        GuardSet.loads(P3, text)


# -- oracle -------------------------------------------------------------------


def test_oracle_examples():
    assert oracle_minimum(G.square_grid(3), "secure")[0] == 4
    assert oracle_minimum(G.queen_graph(3), "secure")[0] == 2
    assert oracle_minimum(C4, "scdom")[0] == 3
    assert oracle_minimum(P3, "secure")[0] == 2
    assert oracle_minimum(G.square_grid(3), "dominating")[0] == 3


def test_oracle_witness_is_lexicographically_first():
    size, found = oracle_minimum(C4, "dominating")
    assert (size, found.sorted()) == (2, [1, 2])


def test_oracle_caps():
    assert DEFAULT_CAPS[Property.SECURE_DOMINATING] == 20
    assert DEFAULT_CAPS[Property.CONNECTED_DOMINATING] == 16
    with pytest.raises(OracleCapExceeded):
        oracle_minimum(G.square_grid(5), "secure")
    with pytest.raises(OracleCapExceeded):
        oracle_minimum(G.square_grid(5), "scdom", cap=20)
    assert oracle_minimum(G.square_grid(5), "secure", cap=25)[0] == 9


def _brute(g, prop):
    best = None
    for mask in range(1, 1 << g.n):
        s = GuardSet.from_mask(mask, g.n)
        if verify(g, s, prop) and (best is None or len(s) < best):
            best = len(s)
    return best


@pytest.mark.parametrize("g", random_graphs(12, 900, 2, 9), ids=str)
@pytest.mark.parametrize("prop", list(Property))
def test_oracle_agrees_with_plain_enumeration(g, prop):
    size, found = oracle_minimum(g, prop)
    assert size == _brute(g, prop)
    assert verify(g, found, prop)


@pytest.mark.parametrize("g", [g for g in small_corpus(16) if g.n >= 1], ids=str)
def test_domination_sandwich(g):
    size, _ = oracle_minimum(g, "dominating")
    delta = max(g.degrees(), default=0)
    assert math.ceil(g.n / (delta + 1)) <= size <= g.n


@pytest.mark.parametrize("g", small_corpus(), ids=str)
def test_whole_vertex_set_is_secure_connected(g):
    if g.is_connected() and g.n >= 1:
        assert is_secure_connected_dominating(g, set(g.vertices))


# -- properties -----------------------------------------------------------------


@st.composite
def graph_and_subset(draw):
    n = draw(st.integers(1, 10))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    g = G.Graph.from_edges(n, edges)
    s = draw(st.sets(st.integers(1, n)))
    return g, s


@given(graph_and_subset())
def test_property_implications(gs):
    g, s = gs
    dom = is_dominating(g, s).holds
    sec = is_secure_dominating(g, s).holds
    con = is_connected_dominating(g, s).holds
    scd = is_secure_connected_dominating(g, s).holds
    assert not sec or dom
    assert not con or dom
    assert not scd or (sec and con)


def test_property_implications_on_1000_samples():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 10)
        g = G.random_connected_graph(n, rng.random() * 0.6, rng)
        s = {v for v in g.vertices if rng.random() < 0.5}
        sec = bool(is_secure_dominating(g, s))
        scd = bool(is_secure_connected_dominating(g, s))
        assert not sec or is_dominating(g, s)
        assert not scd or (sec and is_connected_dominating(g, s))


@given(graph_and_subset(), st.integers(1, 10))
def test_domination_is_superset_monotone(gs, extra):
    g, s = gs
    if is_dominating(g, s) and extra <= g.n:
        assert is_dominating(g, s | {extra})


@given(graph_and_subset())
def test_kernel_matches_python_verifier(gs):
    g, s = gs
    mask = GuardSet.of(g, s).mask
    for prop in Property:
        fast = kernels.has_property(list(g.closed_masks), list(g.open_masks), g.n, mask,
                                    prop.code)
        assert bool(fast) == verify(g, s, prop).holds or not s


@given(graph_and_subset())
def test_compiled_and_pure_kernels_agree(gs):
    g, s = gs
    closed, opened = list(g.closed_masks), list(g.open_masks)
    mask = GuardSet.of(g, s).mask
    for prop in range(4):
        assert bool(kernels.has_property(closed, opened, g.n, mask, prop)) == bool(
            _kernels_py.has_property(closed, opened, g.n, mask, prop))
    assert kernels.coverage(closed, mask) == _kernels_py.coverage(closed, mask)
    assert kernels.first_undefended(closed, opened, g.n, mask, True) == \
        _kernels_py.first_undefended(closed, opened, g.n, mask, True)


@pytest.mark.parametrize("g", random_graphs(6, 40, 5, 11), ids=str)
def test_compiled_and_pure_search_agree(g):
    closed, opened = list(g.closed_masks), list(g.open_masks)
    for prop in range(4):
        assert kernels.min_property_set(closed, opened, g.n, prop, 1, g.n) == \
            _kernels_py.min_property_set(closed, opened, g.n, prop, 1, g.n)


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")
