"""Backtracking subgraph embedding, in plain and induced flavors."""

from __future__ import annotations

from typing import Iterator

from .graph import Graph


def _pattern_order(h: Graph, seeded: set[int]) -> list[int]:
    """Connected-first ordering: seeded vertices, then high degree / max ties."""
    remaining = set(range(h.n)) - seeded
    order = sorted(seeded)
    while remaining:
        placed = set(order)
        if placed:
            nxt = max(remaining, key=lambda q: (len(h.adj(q) & placed), h.degree(q), -q))
        else:
            nxt = max(remaining, key=lambda q: (h.degree(q), -q))
        order.append(nxt)
        remaining.discard(nxt)
    return order


def _search(
    g: Graph,
    h: Graph,
    induced: bool,
    hosts: list[int],
    seed: dict[int, int],
) -> Iterator[dict[int, int]]:
    order = _pattern_order(h, set(seed))
    mapping = dict(seed)
    used = set(seed.values())

    def feasible(q: int, x: int) -> bool:
        if g.degree(x) < h.degree(q):
            return False
        for p, y in mapping.items():
            if h.has_edge(q, p):
                if not g.has_edge(x, y):
                    return False
            elif induced and g.has_edge(x, y):
                return False
        return True

    def extend(idx: int) -> Iterator[dict[int, int]]:
        if idx == len(order):
            yield dict(mapping)
            return
        q = order[idx]
        for x in hosts:
            if x in used or not feasible(q, x):
                continue
            mapping[q] = x
            used.add(x)
            yield from extend(idx + 1)
            del mapping[q]
            used.discard(x)

    for q, x in seed.items():
        if not feasible_seed(g, h, induced, seed, q, x):
            return
    yield from extend(len(seed))


def feasible_seed(g: Graph, h: Graph, induced: bool, seed: dict[int, int], q: int, x: int) -> bool:
    if g.degree(x) < h.degree(q):
        return False
    for p, y in seed.items():
        if p == q:
            continue
        if h.has_edge(q, p):
            if not g.has_edge(x, y):
                return False
        elif induced and g.has_edge(x, y):
            return False
    return True


def iter_embeddings(
    g: Graph,
    h: Graph,
    *,
    induced: bool,
    allowed: frozenset | None = None,
    must_use: int | None = None,
) -> Iterator[dict[int, int]]:
    """Yield mappings pattern-vertex -> host-vertex.

    ``induced`` demands non-edges map to non-edges as well.  ``allowed``
    restricts host vertices; ``must_use`` forces one host vertex into the
    image (used by packing searches to cover a specific vertex).
    """
    hosts = sorted(allowed) if allowed is not None else list(range(g.n))
    if h.n > len(hosts):
        return
    if must_use is None:
        yield from _search(g, h, induced, hosts, {})
        return
    if must_use not in set(hosts):
        return
    for q in range(h.n):
        yield from _search(g, h, induced, hosts, {q: must_use})


def find_embedding(
    g: Graph,
    h: Graph,
    *,
    induced: bool,
    allowed: frozenset | None = None,
    must_use: int | None = None,
) -> dict[int, int] | None:
    for m in iter_embeddings(g, h, induced=induced, allowed=allowed, must_use=must_use):
        return m
    return None
