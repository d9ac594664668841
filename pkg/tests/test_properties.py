import itertools
import random

import pytest

from vckernel.errors import AdjacencyBudgetExceeded
from vckernel.graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    induced_subgraph,
    path_graph,
)
from vckernel.properties import (
    PropertySpec,
    builtin,
    check_adjacency_characterization,
    find_chordless_cycle,
    flip_edges,
    intersect_props,
    parse_property,
    shortest_cycle,
    shortest_odd_cycle,
    union_props,
)

ALL_BUILTINS = [
    builtin("k2"),
    builtin("odd-cycle"),
    builtin("chordless-cycle"),
    builtin("chordless-cycle-ge", 5),
    builtin("f-minor", [complete_graph(3)]),
    builtin("hamiltonian-cycle"),
    builtin("hamiltonian-path"),
    builtin("perfect-h-packing", complete_graph(2)),
    builtin("contains-cycle"),
]


def all_graphs(max_n: int):
    for n in range(max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    )


def brute_force_vc(g: Graph) -> int:
    edges = g.edges()
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            chosen = set(combo)
            if all(u in chosen or v in chosen for u, v in edges):
                return size
    return g.n


def subset_has_member(g: Graph, prop: PropertySpec) -> bool:
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            sub, _ = induced_subgraph(g, combo)
            if prop.member(sub):
                return True
    return False


class TestConstants:
    def test_table_values(self):
        assert builtin("k2").adjacencies == 1
        assert builtin("odd-cycle").adjacencies == 2
        assert builtin("chordless-cycle").adjacencies == 3
        assert builtin("hamiltonian-cycle").adjacencies == 2
        assert builtin("hamiltonian-path").adjacencies == 2
        assert builtin("contains-cycle").adjacencies == 2

    def test_planar_obstruction_family(self):
        prop = builtin("f-minor", [complete_graph(5), complete_bipartite_graph(3, 3)])
        assert prop.adjacencies == 4

    def test_packing_constant(self):
        assert builtin("perfect-h-packing", complete_graph(3)).adjacencies == 2

    def test_size_polys(self):
        assert builtin("k2").size_bound(7) == 2
        assert builtin("odd-cycle").size_bound(4) == 8
        assert builtin("f-minor", [complete_graph(3)]).size_bound(2) == 3 + 2 * 3
        assert builtin("perfect-h-packing", complete_graph(3)).size_bound(4) == 12

    def test_empty_family_members_rejected(self):
        with pytest.raises(ValueError):
            builtin("f-minor", [empty_graph(2)])
        with pytest.raises(ValueError):
            builtin("perfect-h-packing", empty_graph(3))

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            builtin("cliques")


class TestMembership:
    def test_k2(self):
        prop = builtin("k2")
        assert prop.member(complete_graph(2))
        assert not prop.member(empty_graph(4))

    def test_odd_cycle(self):
        prop = builtin("odd-cycle")
        assert prop.member(cycle_graph(5))
        assert not prop.member(cycle_graph(6))
        assert prop.member(complete_graph(3))

    def test_chordless(self):
        prop = builtin("chordless-cycle")
        assert prop.member(cycle_graph(4))
        assert not prop.member(complete_graph(4))
        long_only = builtin("chordless-cycle-ge", 5)
        assert not long_only.member(cycle_graph(4))
        assert long_only.member(cycle_graph(5))

    def test_hamiltonian(self):
        hc = builtin("hamiltonian-cycle")
        hp = builtin("hamiltonian-path")
        assert hc.member(cycle_graph(5))
        assert not hc.member(path_graph(5))
        assert hp.member(path_graph(5))
        assert not hp.member(complete_bipartite_graph(1, 3))

    def test_matching(self):
        pm = builtin("perfect-h-packing", complete_graph(2))
        assert pm.member(path_graph(2))
        assert pm.member(path_graph(4))
        assert not pm.member(path_graph(3))

    def test_triangle_packing(self):
        pk3 = builtin("perfect-h-packing", complete_graph(3))
        two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert pk3.member(two_triangles)
        assert not pk3.member(cycle_graph(6))
        assert pk3.member(cycle_graph(3))

    def test_contains_cycle_and_minor_agree(self):
        cyc = builtin("contains-cycle")
        fm = builtin("f-minor", [complete_graph(3)])
        for g in all_graphs(5):
            assert cyc.member(g) == fm.member(g)


class TestWitnessFinders:
    def test_shortest_odd_cycle_c5(self):
        cyc = shortest_odd_cycle(cycle_graph(5))
        assert cyc is not None and len(cyc) == 5

    def test_shortest_cycle_with_chord(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)])
        cyc = shortest_cycle(g)
        assert cyc is not None and len(cyc) == 3

    def test_chordless_finder(self):
        assert find_chordless_cycle(complete_graph(5), 4) is None
        hit = find_chordless_cycle(cycle_graph(6), 4)
        assert hit is not None and len(hit) == 6
        assert find_chordless_cycle(cycle_graph(6), 7) is None

    def test_odd_cycle_finder_exhaustive(self):
        # against bipartiteness plus explicit minimum odd cycle length
        def min_odd_cycle_len(g: Graph):
            best = None
            for size in range(3, g.n + 1, 2):
                for combo in itertools.combinations(range(g.n), size):
                    sub, _ = induced_subgraph(g, combo)
                    if sub.n >= 3 and all(sub.degree(v) == 2 for v in range(sub.n)):
                        from vckernel.graph import connected_components

                        if len(connected_components(sub)) == 1:
                            best = size if best is None else min(best, size)
                if best is not None:
                    return best
            return None

        for g in all_graphs(6):
            got = shortest_odd_cycle(g)
            want = min_odd_cycle_len(g)
            if want is None:
                assert got is None
            else:
                assert got is not None and len(got) == want


class TestMinWitness:
    @pytest.mark.parametrize("prop", ALL_BUILTINS, ids=lambda p: p.name)
    def test_none_iff_no_member_subset_small(self, prop):
        for g in all_graphs(4):
            witness = prop.min_witness(g)
            assert (witness is None) == (not subset_has_member(g, prop))

    @pytest.mark.parametrize("prop", ALL_BUILTINS, ids=lambda p: p.name)
    def test_witness_minimal_and_bounded_sampled(self, prop):
        rng = random.Random(5)
        found = 0
        for _ in range(40):
            g = random_graph(rng, rng.randint(3, 9), rng.uniform(0.2, 0.7))
            witness = prop.min_witness(g)
            if witness is None:
                continue
            found += 1
            sub, _ = induced_subgraph(g, witness)
            assert prop.member(sub)
            for smaller in range(len(witness)):
                for combo in itertools.combinations(sorted(witness), smaller):
                    inner, _ = induced_subgraph(g, combo)
                    assert not prop.member(inner), f"{prop.name}: witness not minimal"
            assert len(witness) <= prop.size_bound(brute_force_vc(sub))
        assert found > 0

    @pytest.mark.parametrize("prop", [p for p in ALL_BUILTINS if p.has_edge_guarantee], ids=lambda p: p.name)
    def test_edge_guarantee(self, prop):
        for g in all_graphs(4):
            if prop.member(g):
                assert g.edge_count >= 1


class TestCombinators:
    def test_union_budget_and_membership(self):
        u = union_props(builtin("odd-cycle"), builtin("chordless-cycle"))
        assert u.adjacencies == 3
        assert u.member(cycle_graph(5))  # odd hole: both branches
        assert u.member(cycle_graph(4))  # chordless only
        assert not u.member(path_graph(4))

    def test_union_idempotent_k2(self):
        u = union_props(builtin("k2"), builtin("k2"))
        assert u.adjacencies == 1
        for g in all_graphs(4):
            assert u.member(g) == builtin("k2").member(g)

    def test_intersect_budget_and_membership(self):
        i = intersect_props(builtin("odd-cycle"), builtin("chordless-cycle"))
        assert i.adjacencies == 5
        assert i.member(cycle_graph(5))
        assert not i.member(cycle_graph(4))

    def test_intersect_k2_twice(self):
        i = intersect_props(builtin("k2"), builtin("k2"))
        assert i.adjacencies == 2
        assert i.member(complete_graph(2))
        assert not i.member(empty_graph(3))

    def test_intersect_even_cycle_not_hamiltonian_odd(self):
        i = intersect_props(builtin("odd-cycle"), builtin("hamiltonian-cycle"))
        assert not i.member(cycle_graph(6))
        assert i.member(cycle_graph(5))

    def test_union_min_witness_prefers_smaller(self):
        u = union_props(builtin("odd-cycle"), builtin("k2"))
        w = u.min_witness(cycle_graph(5))
        assert w is not None and len(w) == 2  # the edge witness wins

    def test_c_values_exact_over_pairs(self):
        for p1 in ALL_BUILTINS:
            for p2 in ALL_BUILTINS:
                assert union_props(p1, p2).adjacencies == max(p1.adjacencies, p2.adjacencies)
                assert intersect_props(p1, p2).adjacencies == p1.adjacencies + p2.adjacencies


class TestParseProperty:
    def test_simple_names(self):
        assert parse_property("k2").name == "k2"
        assert parse_property("odd-cycle").name == "odd-cycle"

    def test_parameterized(self):
        fm = parse_property("f-minor:K5,K33")
        assert fm.adjacencies == 4
        pk = parse_property("packing:K3")
        assert pk.adjacencies == 2
        cl = parse_property("chordless-cycle-ge-5")
        assert cl.adjacencies == 4

    def test_combinators(self):
        u = parse_property("union(odd-cycle,chordless-cycle)")
        assert u.adjacencies == 3
        i = parse_property("intersect(k2,contains-cycle)")
        assert i.adjacencies == 3

    def test_round_trip_names(self):
        for text in ["k2", "f-minor:K3", "packing:K2", "chordless-cycle-ge-5", "union(k2,odd-cycle)"]:
            assert parse_property(parse_property(text).name).name == parse_property(text).name


class TestAdjacencyCharacterization:
    def test_hamiltonian_c5(self):
        prop = builtin("hamiltonian-cycle")
        g = cycle_graph(5)
        assert check_adjacency_characterization(prop, g, 0, trials=30)

    def test_k2_isolated_vertex(self):
        prop = builtin("k2")
        g = Graph.from_edges(3, [(0, 1)])
        protected = prop.adjacency_witness(g, 2)
        assert protected == frozenset()
        assert check_adjacency_characterization(prop, g, 2, trials=20)

    def test_odd_cycle_pendant_exhaustive(self):
        prop = builtin("odd-cycle")
        g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        protected = prop.adjacency_witness(g, 3)
        assert len(protected) <= prop.adjacencies
        others = sorted(set(range(4)) - set(protected) - {3})
        for r in range(len(others) + 1):
            for combo in itertools.combinations(others, r):
                assert prop.member(flip_edges(g, 3, combo))
        assert check_adjacency_characterization(prop, g, 3, trials=25)

    def test_budget_violation_detected(self):
        base = builtin("odd-cycle")
        bloated = PropertySpec(
            name="bloated",
            adjacencies=0,
            size_poly=base.size_poly,
            has_edge_guarantee=True,
            bounded_everywhere=False,
            monotone=True,
            member_fn=base.member_fn,
            witness_fn=base.witness_fn,
            adjacency_witness_fn=base.adjacency_witness_fn,
        )
        with pytest.raises(AdjacencyBudgetExceeded):
            check_adjacency_characterization(bloated, cycle_graph(5), 0, trials=5)

    @pytest.mark.parametrize(
        "prop",
        [p for p in ALL_BUILTINS if p.adjacency_witness_fn is not None],
        ids=lambda p: p.name,
    )
    def test_randomized_never_falsified(self, prop):
        rng = random.Random(17)
        tried = 0
        for _ in range(80):
            g = random_graph(rng, rng.randint(3, 9), rng.uniform(0.15, 0.8))
            if not prop.member(g):
                continue
            v = rng.randrange(g.n)
            tried += 1
            assert check_adjacency_characterization(prop, g, v, trials=12, rng=rng)
        assert tried > 3
