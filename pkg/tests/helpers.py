"""Shared test scaffolding: independent brute-force oracles and planted
structures.  Everything here is deliberately naive; these are the second
route of every dual-route check."""

import itertools
import random

from vckernel.graph import Graph, induced_subgraph
from vckernel.minors import MinorModel, verify_minor_model


def brute_force_vc(g: Graph) -> int:
    edges = g.edges()
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            chosen = set(combo)
            if all(u in chosen or v in chosen for u, v in edges):
                return size
    return g.n


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    )


def plant_model(rng: random.Random, h: Graph, max_branch: int = 3):
    """Host graph with a planted branch-set model of h plus noise edges.
    Returns (graph, model-or-None); None when noise broke validity."""
    sizes = [rng.randint(1, max_branch) for _ in range(h.n)]
    owners = []
    for q, size in enumerate(sizes):
        owners.extend([q] * size)
    n = len(owners) + rng.randint(0, 3)
    edges = set()
    by_branch: dict[int, list[int]] = {}
    for v, q in enumerate(owners):
        by_branch.setdefault(q, []).append(v)
    for q, members in by_branch.items():
        rng.shuffle(members)
        for i in range(1, len(members)):
            edges.add(tuple(sorted((members[i], members[rng.randrange(i)]))))
    for u, v in h.edges():
        a = rng.choice(by_branch[u])
        b = rng.choice(by_branch[v])
        edges.add(tuple(sorted((a, b))))
    for _ in range(rng.randint(0, n)):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.add(tuple(sorted((a, b))))
    g = Graph.from_edges(n, edges)
    model = MinorModel(tuple(frozenset(by_branch[q]) for q in range(h.n)))
    if not verify_minor_model(g, h, model):
        return g, None
    return g, model


def member_subset_exists(g: Graph, prop, size: int, avoid: frozenset) -> bool:
    """Exhaustive search for a member subset of a given size avoiding a set."""
    allowed = [v for v in range(g.n) if v not in avoid]
    for combo in itertools.combinations(allowed, size):
        sub, _ = induced_subgraph(g, combo)
        if prop.member(sub):
            return True
    return False
