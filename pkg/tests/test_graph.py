import itertools

import pytest

from vckernel.errors import GraphParseError
from vckernel.graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    contract_edge,
    cycle_graph,
    empty_graph,
    greedy_vertex_cover,
    induced_subgraph,
    is_chordal,
    is_simplicial,
    parse_graph,
    path_graph,
    serialize_graph,
    star_graph,
    verify_vertex_cover,
)


def brute_force_vc(g: Graph) -> int:
    """Independent check: smallest subset meeting every edge."""
    edges = g.edges()
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            chosen = set(combo)
            if all(u in chosen or v in chosen for u, v in edges):
                return size
    return g.n


class TestParsing:
    def test_path_on_three(self):
        g = parse_graph("3 2\n0 1\n1 2")
        assert g.n == 3
        assert g.edges() == [(0, 1), (1, 2)]

    def test_single_isolated_vertex(self):
        g = parse_graph("1 0\n")
        assert g.n == 1
        assert g.edges() == []

    def test_duplicate_and_reversed_lines_collapse(self):
        g = parse_graph("3 3\n0 1\n0 1\n1 0")
        assert g.edges() == [(0, 1)]

    def test_malformed_line_reports_line_number(self):
        with pytest.raises(GraphParseError) as err:
            parse_graph("2 1\n0 x")
        assert err.value.line == 2

    def test_out_of_range_id(self):
        with pytest.raises(GraphParseError):
            parse_graph("2 1\n0 5")

    def test_self_loop_rejected(self):
        with pytest.raises(GraphParseError):
            parse_graph("2 1\n1 1")

    def test_dimacs(self):
        g = parse_graph("c comment\np edge 3 2\ne 1 2\ne 2 3", format="dimacs")
        assert g.edges() == [(0, 1), (1, 2)]

    def test_dimacs_range(self):
        with pytest.raises(GraphParseError):
            parse_graph("p edge 2 1\ne 1 3", format="dimacs")

    @pytest.mark.parametrize("fmt", ["edge-list", "dimacs"])
    def test_round_trip_bit_exact(self, fmt):
        g = cycle_graph(6)
        text = serialize_graph(g, fmt)
        again = parse_graph(text, fmt)
        assert again == g
        assert serialize_graph(again, fmt) == text


class TestCovers:
    def test_k2_cover(self):
        assert greedy_vertex_cover(complete_graph(2)) == frozenset({0, 1})

    def test_empty_graph_cover(self):
        assert greedy_vertex_cover(empty_graph(5)) == frozenset()

    def test_c5_cover_ratio(self):
        g = cycle_graph(5)
        cover = greedy_vertex_cover(g)
        assert verify_vertex_cover(g, cover)
        optimum = brute_force_vc(g)
        assert optimum == 3
        assert len(cover) == 4
        assert len(cover) <= 2 * optimum

    def test_verify_on_triangle(self):
        g = complete_graph(3)
        assert verify_vertex_cover(g, frozenset({0, 1}))
        assert not verify_vertex_cover(g, frozenset({0}))

    def test_verify_p4(self):
        g = path_graph(4)
        assert verify_vertex_cover(g, frozenset({1, 2}))

    def test_greedy_is_within_factor_two_randomized(self):
        import random

        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(1, 9)
            edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
            g = Graph.from_edges(n, edges)
            cover = greedy_vertex_cover(g)
            assert verify_vertex_cover(g, cover)
            assert len(cover) <= 2 * brute_force_vc(g)


class TestSubgraphOps:
    def test_induced_k4_to_k3(self):
        sub, ids = induced_subgraph(complete_graph(4), {0, 1, 2})
        assert sub == complete_graph(3)
        assert ids == (0, 1, 2)

    def test_induced_empty(self):
        sub, ids = induced_subgraph(complete_graph(4), set())
        assert sub.n == 0
        assert ids == ()

    def test_induced_c5_arc(self):
        sub, _ = induced_subgraph(cycle_graph(5), {0, 1, 2})
        assert sub == path_graph(3)

    def test_contract_c4_gives_k3(self):
        assert contract_edge(cycle_graph(4), 0, 1) == complete_graph(3)

    def test_contract_k2(self):
        g = contract_edge(complete_graph(2), 0, 1)
        assert g.n == 1 and g.edge_count == 0

    def test_contract_p4_middle(self):
        got = contract_edge(path_graph(4), 1, 2)
        assert got.n == 3 and got.edge_count == 2
        degrees = sorted(got.degree(v) for v in range(3))
        assert degrees == [1, 1, 2]

    def test_contract_non_edge_rejected(self):
        with pytest.raises(ValueError):
            contract_edge(path_graph(3), 0, 2)

    def test_simplicial(self):
        star = star_graph(3)
        assert is_simplicial(star, 1)  # leaf
        assert not is_simplicial(star, 0)  # hub
        assert all(is_simplicial(complete_graph(4), v) for v in range(4))


class TestChordal:
    def test_cliques_and_trees_chordal(self):
        assert is_chordal(complete_graph(5))
        assert is_chordal(path_graph(6))
        assert is_chordal(star_graph(4))

    def test_holes_not_chordal(self):
        assert not is_chordal(cycle_graph(4))
        assert not is_chordal(cycle_graph(6))

    def test_triangle_with_pendant(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
        assert is_chordal(g)

    def test_exhaustive_small(self):
        # independent oracle: a graph is chordal iff no subset induces a
        # chordless cycle of length >= 4
        def has_hole(g: Graph) -> bool:
            for size in range(4, g.n + 1):
                for combo in itertools.combinations(range(g.n), size):
                    sub, _ = induced_subgraph(g, combo)
                    if all(sub.degree(v) == 2 for v in range(sub.n)):
                        from vckernel.graph import connected_components, has_cycle

                        if has_cycle(sub) and len(connected_components(sub)) == 1:
                            return True
            return False

        for n in range(1, 6):
            pairs = list(itertools.combinations(range(n), 2))
            for bits in range(1 << len(pairs)):
                edges = [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1]
                g = Graph.from_edges(n, edges)
                assert is_chordal(g) == (not has_hole(g))


class TestInvariants:
    def test_symmetry_enforced(self):
        with pytest.raises(ValueError):
            Graph([{1}, set()])

    def test_range_enforced(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 3)])

    def test_biclique_shape(self):
        g = complete_bipartite_graph(2, 3)
        assert g.n == 5 and g.edge_count == 6
