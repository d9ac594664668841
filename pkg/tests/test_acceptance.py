"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines as they complete.
"""

import itertools
import math
import random
import time

from helpers import brute_force_vc, member_subset_exists, plant_model

from vckernel import cli
from vckernel.fuzzing import PIPELINES, fuzz_pipeline, planted_cover_graph
from vckernel.gadgets import (
    compose_biclique,
    compose_induced_matching,
    compose_induced_path,
    compose_psi,
    induced_path_witness,
    min_safe_segment_length,
)
from vckernel.graph import (
    Graph,
    complete_graph,
    connected_components,
    greedy_vertex_cover,
    has_cycle,
    induced_subgraph,
    is_simplicial,
    path_graph,
)
from vckernel.instance_io import save_instance
from vckernel.kernels import (
    biclique_small_instance_bound,
    clique_minor_size_bound,
    compress_biclique,
    kernel_clique_minor,
)
from vckernel.minors import prune_minor_model
from vckernel.oracles import (
    Instance,
    bipartite_biclique,
    exists_induced_path,
    has_induced_biclique,
    has_minor,
    hamiltonian_st_path,
    max_independent_set,
    max_induced_matching,
    solve_instance,
    vc_exact,
)
from vckernel.properties import builtin, intersect_props, union_props
from vckernel.reduction import reduce_graph, reduce_size_bound, remap_vertex_set


def _report(num: int, name: str, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {num} {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} {name}: {detail}"


# ---------------------------------------------------------------------------
# criterion 1: kernel-oracle equivalence
# ---------------------------------------------------------------------------


def test_criterion_1_kernel_oracle_equivalence():
    started = time.time()
    mismatches = 0
    bound_violations = 0
    for key in PIPELINES:
        outcome = fuzz_pipeline(key, count=500, seed=20260810)
        mismatches += len(outcome.mismatches)
        bound_violations += len(outcome.bound_violations)
    elapsed = time.time() - started
    ok = mismatches == 0 and bound_violations == 0 and elapsed < 600
    _report(
        1,
        "kernel-oracle equivalence",
        ok,
        f"{len(PIPELINES)} pipelines x 500 instances, {mismatches} mismatches,"
        f" {bound_violations} bound violations, {elapsed:.1f}s",
    )


# ---------------------------------------------------------------------------
# criterion 2: exact size-bound formulas
# ---------------------------------------------------------------------------


def _rule1_probe(common: int) -> Graph:
    edges = [(0, v) for v in range(2, 2 + common)] + [(1, v) for v in range(2, 2 + common)]
    return Graph.from_edges(2 + common, edges)


def test_criterion_2_size_bound_formulas():
    rng = random.Random(2)
    violations = 0
    # marking-rule bound on random runs
    for _ in range(300):
        g, cover = planted_cover_graph(rng)
        marks = rng.randint(0, 6)
        budget = rng.randint(0, 3)
        reduced, report = reduce_graph(g, cover, marks, budget)
        if reduced.n > reduce_size_bound(len(cover), marks, budget):
            violations += 1
    # clique-minor bound, including probes at the fill threshold boundary
    threshold = (2 + 1) ** 2
    for common in (threshold - 1, threshold, threshold + 1, threshold + 2):
        g = _rule1_probe(common)
        result = kernel_clique_minor(g, frozenset({0, 1}), 3)
        if result.verdict == "reduced" and result.instance.graph.n > clique_minor_size_bound(2):
            violations += 1
        filled = any(entry["rule"] == "fill-cover-edge" for entry in result.trace)
        if filled != (common > threshold):
            violations += 1
    for _ in range(120):
        x = rng.randint(1, 4)
        outside = rng.randint(0, 10)
        edges = []
        for u in range(x):
            for v in range(u + 1, x):
                if rng.random() < 0.5:
                    edges.append((u, v))
        for u in range(x):
            for v in range(x, x + outside):
                if rng.random() < 0.5:
                    edges.append((u, v))
        g = Graph.from_edges(x + outside, edges)
        result = kernel_clique_minor(g, frozenset(range(x)), rng.randint(1, x + 2))
        if result.verdict == "reduced" and result.instance.graph.n > clique_minor_size_bound(x):
            violations += 1
    # biclique small-instance bound
    small_hits = 0
    for _ in range(250):
        g, cover = planted_cover_graph(rng, min_cover=2, max_cover=5, max_n=13)
        c = rng.randint(1, 2)
        t = rng.randint(c + 1, max(c + 1, len(cover)))
        form = compress_biclique(g, cover, t, c)
        if form.kind == "small-instance":
            small_hits += 1
            if form.instance.graph.n > biclique_small_instance_bound(len(cover), c):
                violations += 1
    ok = violations == 0 and small_hits > 0
    _report(
        2,
        "exact size-bound formulas",
        ok,
        f"{violations} violations; {small_hits} small-instance cases probed",
    )


# ---------------------------------------------------------------------------
# criterion 3: member-subset preservation under marking
# ---------------------------------------------------------------------------


def _plant_exact(rng, n, spots, cycle_edges, clean_inside):
    """Random graph with a prescribed structure on ``spots``."""
    edges = {
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < rng.uniform(0.2, 0.6)
    }
    if clean_inside:
        edges = {e for e in edges if not (e[0] in spots and e[1] in spots)}
    for e in cycle_edges:
        edges.add(tuple(sorted(e)))
    return Graph.from_edges(n, edges)


def _preservation_trial(rng, prop_name):
    n = rng.randint(6, 12)
    if prop_name == "k2":
        spots = rng.sample(range(n), 2)
        g = _plant_exact(rng, n, set(spots), [tuple(spots)], clean_inside=False)
    elif prop_name in ("odd-cycle", "contains-cycle", "f-minor:K3"):
        spots = rng.sample(range(n), 3)
        ring = [(spots[i], spots[(i + 1) % 3]) for i in range(3)]
        g = _plant_exact(rng, n, set(spots), ring, clean_inside=False)
    elif prop_name == "chordless-cycle":
        spots = rng.sample(range(n), 4)
        ring = [(spots[i], spots[(i + 1) % 4]) for i in range(4)]
        g = _plant_exact(rng, n, set(spots), ring, clean_inside=True)
    elif prop_name == "hamiltonian-cycle":
        size = rng.randint(3, 6)
        spots = rng.sample(range(n), size)
        ring = [(spots[i], spots[(i + 1) % size]) for i in range(size)]
        g = _plant_exact(rng, n, set(spots), ring, clean_inside=False)
    elif prop_name == "hamiltonian-path":
        size = rng.randint(2, 5)
        spots = rng.sample(range(n), size)
        chain = [(spots[i], spots[i + 1]) for i in range(size - 1)]
        g = _plant_exact(rng, n, set(spots), chain, clean_inside=False)
    else:  # perfect matching
        size = rng.choice([2, 4, 6])
        spots = rng.sample(range(n), size)
        pairs = [(spots[i], spots[i + 1]) for i in range(0, size, 2)]
        g = _plant_exact(rng, n, set(spots), pairs, clean_inside=True)
    return g, frozenset(spots)


def test_criterion_3_preservation_property():
    rotation = [
        "k2",
        "odd-cycle",
        "chordless-cycle",
        "f-minor:K3",
        "hamiltonian-cycle",
        "hamiltonian-path",
        "packing:K2",
        "contains-cycle",
    ]
    from vckernel.properties import parse_property

    rng = random.Random(3)
    failures = 0
    for trial in range(1000):
        prop_name = rotation[trial % len(rotation)]
        prop = parse_property(prop_name)
        g, planted = _preservation_trial(rng, prop_name)
        sub, _ = induced_subgraph(g, planted)
        assert prop.member(sub), f"planting broke for {prop_name}"
        avoid_pool = [v for v in range(g.n) if v not in planted]
        rng.shuffle(avoid_pool)
        avoid = frozenset(avoid_pool[: rng.randint(0, 2)])
        cover = greedy_vertex_cover(g)
        quota = len(avoid) + len(planted)
        reduced, report = reduce_graph(g, cover, quota, prop.adjacencies)
        avoid_after = remap_vertex_set(report, avoid)
        if not member_subset_exists(reduced, prop, len(planted), avoid_after):
            failures += 1
    _report(3, "marking preserves member subsets", failures == 0, f"1000 trials, {failures} failures")


# ---------------------------------------------------------------------------
# criterion 4: composer OR-semantics
# ---------------------------------------------------------------------------


def test_criterion_4_gadget_or_semantics():
    checks = 0
    failures = 0

    biclique_yes = (Graph.from_edges(4, [(0, 2)]), frozenset({0, 1}), frozenset({2, 3}), 1)
    biclique_no = (Graph.from_edges(4, []), frozenset({0, 1}), frozenset({2, 3}), 1)
    matching_yes = (Graph.from_edges(4, [(0, 2), (1, 3)]), frozenset({0, 1}), frozenset({2, 3}), 2)
    matching_no = (Graph.from_edges(4, [(0, 2), (1, 2)]), frozenset({0, 1}), frozenset({2, 3}), 2)
    psi_yes = (Graph.from_edges(3, [(1, 2)]), frozenset({0}), 2)
    psi_no = (Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)]), frozenset({0}), 2)
    path_yes = (path_graph(3), 0, 2)
    path_no = (Graph.from_edges(3, [(0, 1), (0, 2)]), 0, 2)

    for r in (1, 2):
        for combo in itertools.product([False, True], repeat=r):
            # biclique
            sources = [biclique_yes if yes else biclique_no for yes in combo]
            assert [bool(bipartite_biclique(g, a, b, k)) for g, a, b, k in sources] == list(combo)
            composed = compose_biclique(sources)
            got = bool(
                has_induced_biclique(
                    composed.graph, composed.targets["s"], composed.targets["t"], 64
                )
            )
            checks += 1
            failures += got != any(combo)
            # induced matching
            sources = [matching_yes if yes else matching_no for yes in combo]
            assert [max_induced_matching(g, 64) >= k for g, _, _, k in sources] == list(combo)
            composed = compose_induced_matching(sources)
            got = max_induced_matching(composed.graph, 64) >= composed.targets["k"]
            checks += 1
            failures += got != any(combo)
            # anchor pattern
            sources = [psi_yes if yes else psi_no for yes in combo]
            assert [max_independent_set(g, 64) >= k for g, _, k in sources] == list(combo)
            composed = compose_psi(sources)
            got = bool(solve_instance(composed, ceiling=64))
            checks += 1
            failures += got != any(combo)
            # induced path, scaled variant: full oracle
            sources = [path_yes if yes else path_no for yes in combo]
            assert [bool(hamiltonian_st_path(g, s, t)) for g, s, t in sources] == list(combo)
            composed = compose_induced_path(sources, segment_length=min_safe_segment_length(3))
            got = bool(exists_induced_path(composed.graph, composed.targets["k"], ceiling=1000))
            checks += 1
            failures += got != any(combo)

    # induced path at full cubic scale: witness construction for yes cases
    nine_yes = (path_graph(9), 0, 8)
    nine_no = (Graph.from_edges(9, [(0, 1), (1, 2)]), 0, 8)
    for sources, winner in [
        ([nine_yes], 0),
        ([nine_yes, nine_no], 0),
        ([nine_no, nine_yes], 1),
        ([nine_yes, nine_yes], 1),
    ]:
        spanning = hamiltonian_st_path(*sources[winner])
        assert spanning
        composed = compose_induced_path(sources)
        chosen = induced_path_witness(sources, winner, spanning.witness)
        sub, _ = induced_subgraph(composed.graph, chosen)
        degrees = sorted(sub.degree(v) for v in range(sub.n))
        good = (
            len(chosen) == composed.targets["k"]
            and degrees.count(1) == 2
            and all(d <= 2 for d in degrees)
            and not has_cycle(sub)
            and len(connected_components(sub)) == 1
        )
        checks += 1
        failures += not good

    _report(4, "composer OR-semantics", failures == 0, f"{checks} composition checks, {failures} failures")


# ---------------------------------------------------------------------------
# criterion 5: clique-minor rule-level safety
# ---------------------------------------------------------------------------


def _scrambled(rng, n, edges):
    relabel = list(range(n))
    rng.shuffle(relabel)
    return [tuple(sorted((relabel[u], relabel[v]))) for u, v in edges], relabel


def test_criterion_5_clique_minor_rule_safety():
    rng = random.Random(5)
    failures = 0

    # rule 1: filling a heavily witnessed cover non-edge preserves the answer
    for _ in range(200):
        common = 10 + rng.randint(0, 2)
        extra = rng.randint(0, 1)
        n = 2 + common + extra
        edges = [(0, v) for v in range(2, 2 + common)] + [(1, v) for v in range(2, 2 + common)]
        for v in range(2 + common, n):
            if rng.random() < 0.7:
                edges.append((rng.randrange(2), v))
        t = rng.randint(2, 3)
        g = Graph.from_edges(n, edges)
        cover = frozenset({0, 1})
        result = kernel_clique_minor(g, cover, t)
        fills = [e for e in result.trace if e["rule"] == "fill-cover-edge"]
        if not fills or any(not {e["u"], e["v"]} <= cover for e in fills):
            failures += 1
            continue
        filled = Graph.from_edges(n, edges + [(0, 1)])
        if bool(has_minor(g, complete_graph(t), 20)) != bool(has_minor(filled, complete_graph(t), 20)):
            failures += 1

    # rule 2: a simplicial outside vertex of degree >= t-1 certifies yes
    for _ in range(200):
        x = rng.randint(3, 5)
        t = rng.randint(2, x + 1)
        outside = rng.randint(1, 3)
        edges = [(u, v) for u in range(x) for v in range(u + 1, x)]
        star = x  # simplicial witness vertex
        edges += [(star, v) for v in range(t - 1)]
        for extra in range(x + 1, x + outside):
            edges += [(extra, v) for v in range(rng.randint(1, x))]
        g = Graph.from_edges(x + outside, edges)
        result = kernel_clique_minor(g, frozenset(range(x)), t)
        if result.verdict != "trivial-yes":
            failures += 1
            continue
        witness_vertex = next(e["vertex"] for e in result.trace if e["rule"] == "simplicial-clique-yes")
        if witness_vertex < x or not is_simplicial(g, witness_vertex):
            failures += 1
            continue
        if not has_minor(g, complete_graph(t), 20):
            failures += 1

    # rule 3: dropping a low-degree simplicial outside vertex preserves the answer
    rule3_checked = 0
    while rule3_checked < 200:
        x = rng.randint(2, 4)
        t = rng.randint(3, x + 1)
        edges = []
        for u in range(x):
            for v in range(u + 1, x):
                if rng.random() < 0.6:
                    edges.append((u, v))
        victim = x
        edges.append((victim, rng.randrange(x)))  # pendant outside vertex
        blockers = rng.randint(0, 3)
        non_edges = [(u, v) for u in range(x) for v in range(u + 1, x) if (u, v) not in edges]
        n = x + 1 + blockers
        for b in range(x + 1, n):
            if non_edges:
                u, v = rng.choice(non_edges)
                edges += [(b, u), (b, v)]
            else:
                edges += [(b, u) for u in range(x)]  # whole cover is a clique
        g = Graph.from_edges(n, edges)
        if any(
            v != victim and v >= x and is_simplicial(g, v) and g.degree(v) >= t - 1
            for v in range(g.n)
        ):
            continue  # rule 2 would preempt; draw a fresh instance
        rule3_checked += 1
        if g.degree(victim) >= t - 1 or not is_simplicial(g, victim):
            failures += 1
            continue
        result = kernel_clique_minor(g, frozenset(range(x)), t)
        drops = [e for e in result.trace if e["rule"] == "drop-simplicial"]
        if not any(e["vertex"] == victim for e in drops):
            failures += 1
            continue
        if any(e["vertex"] < x or e["degree"] >= t - 1 for e in drops):
            failures += 1
            continue
        without, _ = induced_subgraph(g, set(range(g.n)) - {victim})
        if bool(has_minor(g, complete_graph(t), 20)) != bool(has_minor(without, complete_graph(t), 20)):
            failures += 1

    _report(5, "clique-minor rule safety", failures == 0, f"3 x 200 rule firings, {failures} failures")


# ---------------------------------------------------------------------------
# criterion 6: closure combinators
# ---------------------------------------------------------------------------


def test_criterion_6_closure_combinators():
    pool = [
        builtin("k2"),
        builtin("odd-cycle"),
        builtin("chordless-cycle"),
        builtin("contains-cycle"),
        builtin("hamiltonian-cycle"),
        builtin("f-minor", [complete_graph(3)]),
    ]
    bad_constants = 0
    for p1 in pool:
        for p2 in pool:
            if union_props(p1, p2).adjacencies != max(p1.adjacencies, p2.adjacencies):
                bad_constants += 1
            if intersect_props(p1, p2).adjacencies != p1.adjacencies + p2.adjacencies:
                bad_constants += 1

    pairs = [
        (builtin("odd-cycle"), builtin("chordless-cycle")),
        (builtin("k2"), builtin("contains-cycle")),
    ]
    graphs_checked = 0
    truth_failures = 0
    for n in range(0, 7):
        pairs_all = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs_all)):
            g = Graph.from_edges(n, [pairs_all[i] for i in range(len(pairs_all)) if (bits >> i) & 1])
            graphs_checked += 1
            for p1, p2 in pairs:
                m1, m2 = p1.member(g), p2.member(g)
                if union_props(p1, p2).member(g) != (m1 or m2):
                    truth_failures += 1
                if intersect_props(p1, p2).member(g) != (m1 and m2):
                    truth_failures += 1
    ok = bad_constants == 0 and truth_failures == 0
    _report(
        6,
        "closure combinators",
        ok,
        f"{graphs_checked} graphs x 2 pairs, {truth_failures} truth failures,"
        f" {bad_constants} wrong constants",
    )


# ---------------------------------------------------------------------------
# criterion 7: model pruning bounds
# ---------------------------------------------------------------------------


def test_criterion_7_pruning_bounds():
    rng = random.Random(7)
    violations = 0
    checked = 0
    while checked < 200:
        hn = rng.randint(1, 4)
        h = Graph.from_edges(
            hn, [(u, v) for u in range(hn) for v in range(u + 1, hn) if rng.random() < 0.7]
        )
        g, model = plant_model(rng, h)
        if model is None:
            continue
        checked += 1
        pruned, restricted = prune_minor_model(g, h, model)
        from vckernel.minors import verify_minor_model

        if not verify_minor_model(pruned, h, restricted):
            violations += 1
            continue
        if pruned.max_degree() > h.max_degree():
            violations += 1
        if pruned.n > h.n + vc_exact(pruned, 40) * (h.max_degree() + 1):
            violations += 1
        # exact cover number from the naive oracle agrees
        if pruned.n <= 12 and vc_exact(pruned, 40) != brute_force_vc(pruned):
            violations += 1
    _report(7, "model pruning bounds", violations == 0, f"200 planted models, {violations} violations")


# ---------------------------------------------------------------------------
# criterion 8: CLI determinism
# ---------------------------------------------------------------------------


def test_criterion_8_cli_determinism(tmp_path, capsys):
    g = Graph.from_edges(8, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (0, 7), (1, 2)])
    inst = Instance("deletion", g, frozenset({0, 1, 2}), {"k": 1}, builtin("odd-cycle"))
    inst_path = tmp_path / "inst.json"
    save_instance(inst, inst_path)
    graph_path = tmp_path / "g.edgelist"
    from vckernel.graph import serialize_graph

    graph_path.write_text(serialize_graph(Graph.from_edges(3, [(0, 1), (1, 2)])))

    matching_src = Instance(
        "induced-matching",
        Graph.from_edges(4, [(0, 2), (1, 3)]),
        None,
        {"k": 1},
        aux={"A": frozenset({0, 1}), "B": frozenset({2, 3})},
    )
    src_path = tmp_path / "src.json"
    save_instance(matching_src, src_path)

    commands = [
        ["kernelize", str(inst_path), "--explain"],
        ["solve", str(inst_path)],
        ["fuzz", "--pipeline", "partition:k2:2", "--count", "10", "--seed", "4"],
        ["gen", "random", "--n", "10", "--p", "0.35", "--seed", "11"],
        ["gen", "psi", "1", "2"],
        ["gen", "gadget", "induced-matching", str(src_path), str(src_path)],
        ["gen-gadget", "is-to-biclique", str(graph_path), "--k", "1", "--c", "1"],
    ]
    unstable = []
    for argv in commands:
        code1 = cli.main(argv)
        out1 = capsys.readouterr().out
        code2 = cli.main(argv)
        out2 = capsys.readouterr().out
        if code1 != code2 or out1.encode() != out2.encode():
            unstable.append(" ".join(argv))
    # output files must be byte-identical across reruns too
    out_a, out_b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (out_a, out_b):
        cli.main(["kernelize", str(inst_path), "--out", str(target)])
        capsys.readouterr()
    files_match = out_a.read_bytes() == out_b.read_bytes()
    ok = not unstable and files_match
    _report(
        8,
        "CLI determinism",
        ok,
        f"{len(commands)} commands byte-compared"
        + (f"; unstable: {unstable}" if unstable else "")
        + ("" if files_match else "; output files differ"),
    )
