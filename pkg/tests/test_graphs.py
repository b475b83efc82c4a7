import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secdom import graphs as G
from secdom.graphs import UNREACHABLE

from corpus import small_corpus


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return G.Graph.from_edges(n, chosen)


# -- generators ---------------------------------------------------------------


@pytest.mark.parametrize("k", range(1, 8))
def test_square_grid_matches_networkx(k):
    g = G.square_grid(k)
    assert (g.n, g.m) == (k * k, 2 * k * (k - 1))
    ref = nx.grid_2d_graph(k, k)
    relabel = {(r, c): r * k + c + 1 for r, c in ref.nodes}
    assert set(g.edges) == {tuple(sorted((relabel[a], relabel[b]))) for a, b in ref.edges}
    assert nx.is_bipartite(to_nx(g))


def test_square_grid_rejects_zero():
    with pytest.raises(ValueError):
        G.square_grid(0)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_torus_is_4_regular(k):
    g = G.torus_grid(k)
    assert (g.n, g.m) == (k * k, 2 * k * k)
    assert set(g.degrees()) == {4}
    ref = nx.grid_2d_graph(k, k, periodic=True)
    assert nx.is_isomorphic(to_nx(g), ref)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_torus_rejects_small_k(k):
    with pytest.raises(ValueError):
        G.torus_grid(k)


def _attacks(k):
    count = 0
    squares = [(r, c) for r in range(k) for c in range(k)]
    for (r1, c1), (r2, c2) in itertools.combinations(squares, 2):
        if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
            count += 1
    return count


@pytest.mark.parametrize("k", range(1, 8))
def test_queen_edge_count_matches_attack_counter(k):
    g = G.queen_graph(k)
    assert g.n == k * k
    assert g.m == _attacks(k)


def test_queen_2_is_k4():
    g = G.queen_graph(2)
    assert g.m == 6
    assert nx.is_isomorphic(to_nx(g), nx.complete_graph(4))


def _gp_reference(k, j):
    h = nx.cycle_graph([("u", i) for i in range(k)])
    for i in range(k):
        h.add_edge(("u", i), ("v", i))
        h.add_edge(("v", i), ("v", (i + j) % k))
    return h


@pytest.mark.parametrize("k,j", [(3, 1), (5, 1), (10, 1), (5, 2), (7, 2), (15, 2)])
def test_gp_graph_matches_reference_and_is_cubic(k, j):
    g = G.gp_graph(k, j)
    assert (g.n, g.m) == (2 * k, 3 * k)
    assert set(g.degrees()) == {3}
    assert nx.is_isomorphic(to_nx(g), _gp_reference(k, j))
    for i in range(1, k + 1):
        assert g.has_edge(i, k + i)


def test_gp_5_2_is_petersen():
    g = to_nx(G.gp_graph(5, 2))
    assert nx.is_isomorphic(g, nx.petersen_graph())
    assert nx.girth(g) == 5


@pytest.mark.parametrize("k,j", [(2, 1), (4, 2), (0, 1), (6, 3)])
def test_gp_graph_rejects_bad_parameters(k, j):
    with pytest.raises(ValueError):
        G.gp_graph(k, j)


@pytest.mark.parametrize("k", range(1, 7))
def test_hex_cells_counts(k):
    g = G.hex_grid(k)
    assert g.n == k * k
    assert g.m == 3 * k * k - 4 * k + 1
    assert g.is_connected()


def test_hex_honeycomb_single_cell_is_c6():
    g = G.hex_grid(1, style="honeycomb")
    assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(6))


@pytest.mark.parametrize("k", range(1, 6))
def test_hex_honeycomb_is_planar_subcubic(k):
    g = G.hex_grid(k, style="honeycomb")
    assert max(g.degrees()) <= 3
    assert g.is_connected()
    assert nx.check_planarity(to_nx(g))[0]


def test_hex_rejects_zero_and_unknown_style():
    with pytest.raises(ValueError):
        G.hex_grid(0)
    with pytest.raises(ValueError):
        G.hex_grid(2, style="triangle")


def test_small_named_graphs():
    assert G.path_graph(3).edges == ((1, 2), (2, 3))
    assert G.cycle_graph(5).m == 5
    assert G.complete_graph(5).m == 10
    star = G.star_graph(3)
    assert star.degree(1) == 3 and star.n == 4


def test_random_connected_graph_is_seeded_and_connected():
    import random
    a = G.random_connected_graph(10, 0.2, random.Random(7))
    b = G.random_connected_graph(10, 0.2, random.Random(7))
    assert a == b
    assert a.is_connected()


# -- graph invariants -----------------------------------------------------------


@given(graphs())
def test_handshake_and_closed_neighbourhoods(g):
    assert sum(g.degrees()) == 2 * g.m
    assert len(g.arcs()) == 2 * g.m
    for i in g.vertices:
        assert set(g.closed(i)) == set(g.N(i)) | {i}
        assert i not in g.N(i)
        assert list(g.N(i)) == sorted(g.N(i))


@given(graphs())
def test_masks_mirror_adjacency(g):
    for i in g.vertices:
        members = {j + 1 for j in range(g.n) if g.open_masks[i - 1] >> j & 1}
        assert members == set(g.N(i))
        assert g.closed_masks[i - 1] == g.open_masks[i - 1] | 1 << (i - 1)


@given(graphs())
def test_is_connected_agrees_with_networkx(g):
    assert g.is_connected() == (g.n == 0 or nx.is_connected(to_nx(g)))


def test_from_edges_rejects_bad_input():
    with pytest.raises(ValueError):
        G.Graph.from_edges(2, [(1, 1)])
    with pytest.raises(ValueError):
        G.Graph.from_edges(2, [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        G.Graph.from_edges(2, [(1, 3)])


# -- family specs -------------------------------------------------------------


def test_family_spec_aliases_and_labels():
    spec = G.FamilySpec("grid", 3)
    assert spec.family == "square_grid"
    assert spec.build() == G.square_grid(3)
    assert G.FamilySpec("gp2", 5).label == "gp25"
    assert G.FamilySpec("hex", 2).build() == G.hex_grid(2)


@pytest.mark.parametrize("family,k", [("torus", 2), ("gp1", 2), ("gp2", 4), ("queen", 0),
                                      ("square_grid", 0), ("hex_grid", 0), ("moebius", 3)])
def test_family_spec_rejects(family, k):
    with pytest.raises(ValueError):
        G.FamilySpec(family, k)


def test_family_spec_file(tmp_path):
    path = tmp_path / "p3.txt"
    path.write_text(G.to_edge_list(G.path_graph(3)))
    assert G.FamilySpec("file", path=str(path)).build() == G.path_graph(3)
    with pytest.raises(ValueError):
        G.FamilySpec("file")


# -- edge-list format ---------------------------------------------------------


def test_parse_path():
    g = G.from_edge_list("p 3 2\ne 1 2\ne 2 3\n")
    assert g == G.path_graph(3)


def test_parse_skips_comments_and_blanks():
    g = G.from_edge_list("c hello\n\np 2 1\nc mid\ne 2 1\n")
    assert g.edges == ((1, 2),)


@pytest.mark.parametrize("text,error", [
    ("p 2 1\ne 1 1\n", G.SelfLoopError),
    ("p 3 2\ne 1 2\ne 1 2\n", G.DuplicateEdgeError),
    ("p 3 2\ne 2 1\ne 1 2\n", G.DuplicateEdgeError),
    ("p 3 1\ne 1 4\n", G.VertexRangeError),
    ("p 3 1\ne 0 1\n", G.VertexRangeError),
    ("q 3 1\ne 1 2\n", G.HeaderError),
    ("p three 1\n", G.HeaderError),
    ("e 1 2\n", G.HeaderError),
    ("", G.HeaderError),
])
def test_parse_errors_are_distinct(text, error):
    with pytest.raises(error):
        G.from_edge_list(text)


def test_parse_errors_share_a_base():
    for cls in (G.SelfLoopError, G.DuplicateEdgeError, G.VertexRangeError, G.HeaderError):
        assert issubclass(cls, G.GraphFormatError)


def test_parse_rejects_edge_count_mismatch():
    with pytest.raises(G.GraphFormatError):
        G.from_edge_list("p 3 2\ne 1 2\n")


@pytest.mark.parametrize("g", small_corpus(), ids=str)
def test_edge_list_round_trip(g):
    text = G.to_edge_list(g)
    assert G.from_edge_list(text) == g
    assert G.to_edge_list(G.from_edge_list(text)) == text


def test_render_is_sorted():
    g = G.Graph.from_edges(3, [(3, 2), (2, 1)])
    assert G.to_edge_list(g) == "p 3 2\ne 1 2\ne 2 3\n"


def test_read_graph_names_by_stem(tmp_path):
    path = tmp_path / "mygraph.txt"
    path.write_text("p 2 1\ne 1 2\n")
    assert G.read_graph(path).name == "mygraph"


# -- distances ----------------------------------------------------------------


def test_distance_examples():
    p3 = G.distances(G.path_graph(3))
    assert p3[1, 3] == 2
    k4 = G.distances(G.complete_graph(4))
    assert all(k4[i, j] == 1 for i in range(1, 5) for j in range(1, 5) if i != j)
    split = G.distances(G.Graph.from_edges(2, []))
    assert split[1, 2] == UNREACHABLE


def _power_distances(g):
    n = g.n
    adj = np.zeros((n, n), dtype=np.int64)
    for u, v in g.edges:
        adj[u - 1, v - 1] = adj[v - 1, u - 1] = 1
    dist = np.full((n, n), UNREACHABLE)
    np.fill_diagonal(dist, 0)
    reach = np.eye(n, dtype=np.int64)
    for step in range(1, n):
        reach = np.minimum(reach @ (adj + np.eye(n, dtype=np.int64)), 1)
        fresh = (reach > 0) & (dist == UNREACHABLE)
        dist[fresh] = step
    return dist


@settings(max_examples=60)
@given(graphs(max_n=12))
def test_distances_agree_with_matrix_powers(g):
    table = G.distances(g)
    assert np.array_equal(table.dist, _power_distances(g))
    assert np.array_equal(table.dist, table.dist.T)
    for i in g.vertices:
        for j in g.vertices:
            assert (table[i, j] == 1) == g.has_edge(i, j)


def test_distance_table_is_read_only():
    table = G.distances(G.path_graph(3))
    with pytest.raises(ValueError):
        table.dist[0, 1] = 5


def test_dist2_examples():
    assert sorted(G.dist2_pairs(G.path_graph(3))) == [(1, 3), (3, 1)]
    assert G.dist2_pairs(G.complete_graph(4)) == []
    assert len(G.dist2_pairs(G.cycle_graph(5))) == 10


@pytest.mark.parametrize("g", small_corpus(), ids=str)
def test_dist2_pairs_by_common_neighbour(g):
    expected = {
        (i, j) for i in g.vertices for j in g.vertices
        if i not in g.closed(j) and set(g.N(i)) & set(g.N(j))
    }
    assert set(G.dist2_pairs(g)) == expected
