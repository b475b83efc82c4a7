"""Small named graphs plus seeded random ones, shared by several test modules."""
import random

from secdom import graphs as G


def classic():
    out = []
    out += [G.path_graph(n) for n in (1, 2, 3, 4, 5, 6)]
    out += [G.cycle_graph(n) for n in (3, 4, 5, 6, 7)]
    out += [G.complete_graph(n) for n in (2, 3, 4, 5)]
    out += [G.star_graph(leaves) for leaves in (1, 2, 3, 4)]
    return out


def family_instances(max_n=18):
    specs = [("square_grid", k) for k in range(1, 5)]
    specs += [("hex_grid", k) for k in range(1, 4)]
    specs += [("queen", k) for k in range(1, 5)]
    specs += [("torus", k) for k in (3, 4)]
    specs += [("gp1", k) for k in (3, 4, 5, 6, 7, 8, 9)]
    specs += [("gp2", k) for k in (5, 6, 7, 8, 9)]
    graphs = [G.FamilySpec(f, k).build() for f, k in specs]
    return [g for g in graphs if g.n <= max_n]


def random_graphs(count, seed, n_lo=4, n_hi=12, p_lo=0.15, p_hi=0.6):
    """``count`` connected graphs; graph ``i`` depends only on ``seed + i``."""
    out = []
    for i in range(count):
        rng = random.Random(seed + i)
        n = rng.randint(n_lo, n_hi)
        p = rng.uniform(p_lo, p_hi)
        g = G.random_connected_graph(n, p, rng)
        out.append(G.Graph.from_edges(g.n, g.edges, name=f"rand{seed + i}"))
    return out


def small_corpus(max_n=18):
    """Every graph the structural tests sweep over."""
    return classic() + family_instances(max_n) + random_graphs(30, seed=100)
