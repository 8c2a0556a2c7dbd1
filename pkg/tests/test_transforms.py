"""Line/total graph transforms, products, and corresponding trees."""

import math
import random

import pytest

from steinerconn.errors import InputError
from steinerconn.graphs import (
    FamilySpec,
    build_graph,
    degree_profile,
    edge_connectivity,
    generate_family,
    induced_subgraph,
    is_connected,
    vertex_connectivity,
)
from steinerconn.transforms import (
    cartesian_product,
    corresponding_tree,
    edge_vertex,
    label_name,
    line_graph,
    original,
    parse_label_name,
    total_graph,
)


def fam(kind, *params, seed=None):
    return generate_family(FamilySpec(kind, tuple(params), seed))


def is_isomorphic_small(g1, g2):
    # brute force on <= 8 vertices, only used for tiny fixtures
    import itertools

    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    for perm in itertools.permutations(range(g1.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in g2.edges for u, v in g1.edges):
            return True
    return False


ALL_FAMILIES = [
    ("path", (4,)),
    ("path", (7,)),
    ("cycle", (3,)),
    ("cycle", (6,)),
    ("star", (4,)),
    ("complete", (4,)),
    ("complete", (5,)),
    ("complete_bipartite", (2, 3)),
    ("complete_bipartite", (3, 3)),
    ("random_tree", (8,)),
    ("random_unicyclic", (7,)),
]


class TestLabels:
    def test_names(self):
        assert label_name(original(3)) == "v:3"
        assert label_name(edge_vertex(4, 1)) == "e:1:4"

    def test_parse(self):
        assert parse_label_name("v:2") == ("v", 2)
        assert parse_label_name("e:0:3") == ("e", 0, 3)
        with pytest.raises(InputError):
            parse_label_name("w:1")


class TestLineGraph:
    def test_triangle_self(self):
        lg = line_graph(fam("cycle", 3))
        assert is_isomorphic_small(lg.graph, fam("cycle", 3))

    def test_path(self):
        lg = line_graph(fam("path", 4))
        assert is_isomorphic_small(lg.graph, fam("path", 3))

    def test_claw(self):
        lg = line_graph(fam("star", 3))
        assert is_isomorphic_small(lg.graph, fam("complete", 3))

    def test_edgeless_errors(self):
        with pytest.raises(InputError):
            line_graph(build_graph(3, []))

    def test_labels_are_source_edges(self):
        g = fam("complete_bipartite", 2, 2)
        lg = line_graph(g)
        assert set(lg.labels) == {edge_vertex(u, v) for u, v in g.edges}


class TestTotalGraph:
    def test_k2_gives_triangle(self):
        tg = total_graph(fam("complete", 2))
        assert is_isomorphic_small(tg.graph, fam("cycle", 3))

    def test_k4_counts_and_degrees(self):
        tg = total_graph(fam("complete", 4))
        assert tg.graph.n == 10
        degrees, delta = degree_profile(tg.graph)
        assert degrees == [6] * 10 and delta == 6

    def test_p3(self):
        tg = total_graph(fam("path", 3))
        assert tg.graph.n == 5
        assert degree_profile(tg.graph)[1] == 2

    def test_counts_formula(self):
        for kind, params in ALL_FAMILIES:
            g = generate_family(FamilySpec(kind, params, 0))
            if not g.edges or not is_connected(g):
                continue
            tg = total_graph(g)
            m = len(g.edges)
            degrees, _ = degree_profile(g)
            assert tg.graph.n == g.n + m
            expected_edges = 3 * m + sum(math.comb(d, 2) for d in degrees)
            assert len(tg.graph.edges) == expected_edges

    def test_degree_formulas(self):
        g = fam("random_unicyclic", 6, seed=2)
        tg = total_graph(g)
        degrees, _ = degree_profile(tg.graph)
        gdeg, gdelta = degree_profile(g)
        for i, lab in enumerate(tg.labels):
            if lab[0] == "v":
                assert degrees[i] == 2 * gdeg[lab[1]]
            else:
                _, a, b = lab
                assert degrees[i] == gdeg[a] + gdeg[b]
        assert min(degrees) == 2 * gdelta

    def test_layers_are_induced_subgraphs(self):
        for kind, params in ALL_FAMILIES:
            g = generate_family(FamilySpec(kind, params, 1))
            if not g.edges or not is_connected(g):
                continue
            tg = total_graph(g)
            originals = [i for i, lab in enumerate(tg.labels) if lab[0] == "v"]
            evs = [i for i, lab in enumerate(tg.labels) if lab[0] == "e"]
            sub_orig, _ = induced_subgraph(tg.graph, originals)
            assert sub_orig == g
            sub_line, _ = induced_subgraph(tg.graph, evs)
            assert sub_line == line_graph(g).graph

    def test_total_connectivity_doubles(self):
        # classical connectivity of T(G) at least doubles that of G
        for kind, params in [("cycle", (5,)), ("complete", (4,)), ("path", (5,)),
                             ("complete_bipartite", (2, 3)), ("random_tree", (7,))]:
            g = generate_family(FamilySpec(kind, params, 3))
            tg = total_graph(g).graph
            assert vertex_connectivity(tg) >= 2 * vertex_connectivity(g)
            assert edge_connectivity(tg) >= 2 * edge_connectivity(g)

    def test_disconnected_rejected(self):
        with pytest.raises(InputError):
            total_graph(build_graph(4, [(0, 1), (2, 3)]))


class TestCartesianProduct:
    def test_square(self):
        p = cartesian_product(fam("complete", 2), fam("complete", 2))
        assert is_isomorphic_small(p.graph, fam("cycle", 4))

    def test_degrees(self):
        for m, n in [(2, 3), (3, 3), (3, 4)]:
            p = cartesian_product(fam("complete", m), fam("complete", n))
            degrees, _ = degree_profile(p.graph)
            assert degrees == [(m - 1) + (n - 1)] * (m * n)

    def test_line_of_bipartite_is_rook_graph(self):
        # e_{ij} -> (u_i, v_j) must be an adjacency-preserving bijection
        for m in range(2, 5):
            for n in range(2, 5):
                g = fam("complete_bipartite", m, n)
                lg = line_graph(g)
                prod = cartesian_product(fam("complete", m), fam("complete", n))
                mapping = {}
                for idx, lab in enumerate(lg.labels):
                    _, i, j = lab  # i < m <= j
                    mapping[idx] = prod.index_of(("p", i, j - m))
                mapped = {
                    (min(mapping[a], mapping[b]), max(mapping[a], mapping[b]))
                    for a, b in lg.graph.edges
                }
                assert mapped == set(prod.graph.edges)

    def test_empty_factor(self):
        with pytest.raises(InputError):
            cartesian_product(build_graph(0, []), fam("path", 2))


class TestCorrespondingTree:
    def test_single_edge(self):
        assert corresponding_tree(fam("path", 2), [(0, 1)]) == ()

    def test_two_edge_path(self):
        ct = corresponding_tree(fam("path", 3), [(0, 1), (1, 2)])
        assert ct == (((0, 1), (1, 2)),)

    def test_star(self):
        g = fam("star", 3)
        ct = corresponding_tree(g, list(g.edges))
        assert len(ct) == 2  # spanning tree of K_3

    def test_spans_and_acyclic(self):
        rng = random.Random(5)
        for seed in range(8):
            tree = fam("random_tree", 9, seed=seed)
            ct = corresponding_tree(tree, list(tree.edges))
            nodes = {x for e in ct for x in e}
            assert nodes == set(tree.sorted_edges())
            assert len(ct) == len(tree.edges) - 1
            # acyclic: union-find
            parent = {v: v for v in nodes}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b in ct:
                ra, rb = find(a), find(b)
                assert ra != rb
                parent[ra] = rb

    def test_not_a_tree_rejected(self):
        g = fam("cycle", 4)
        with pytest.raises(InputError):
            corresponding_tree(g, g.sorted_edges())
