"""Minor models: verification, proof-style pruning, and an exact model search.

A minor model of a query graph H in a host graph G maps every query vertex to
a branch set of host vertices such that branch sets are pairwise disjoint,
each induces a connected subgraph, and every query edge is realized by some
host edge between the two branch sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, induced_subgraph, is_connected_subset


@dataclass(frozen=True)
class MinorModel:
    """Branch sets keyed by query vertex id."""

    branch_sets: tuple[frozenset, ...]

    @staticmethod
    def from_dict(mapping: dict[int, frozenset]) -> "MinorModel":
        if set(mapping) != set(range(len(mapping))):
            raise ValueError("branch sets must cover query ids 0..h-1")
        return MinorModel(tuple(frozenset(mapping[i]) for i in range(len(mapping))))

    def __getitem__(self, query_vertex: int) -> frozenset:
        return self.branch_sets[query_vertex]

    def used_vertices(self) -> frozenset:
        out: set[int] = set()
        for b in self.branch_sets:
            out |= b
        return frozenset(out)


def verify_minor_model(g: Graph, h: Graph, model: MinorModel) -> bool:
    """Check disjointness, connectivity, and per-query-edge contact."""
    if len(model.branch_sets) != h.n:
        return False
    seen: set[int] = set()
    for b in model.branch_sets:
        if not b:
            return False
        for v in b:
            if not 0 <= v < g.n:
                raise ValueError(f"branch set vertex {v} out of host range")
        if b & seen:
            return False
        seen |= b
        if not is_connected_subset(g, b):
            return False
    for u, v in h.edges():
        if not _touches(g, model.branch_sets[u], model.branch_sets[v]):
            return False
    return True


def _touches(g: Graph, a: frozenset, b: frozenset) -> bool:
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    return any(g.adj(x) & large for x in small)


def _lowest_contact_edge(g: Graph, a: frozenset, b: frozenset) -> tuple[int, int]:
    """Lexicographically smallest host edge between two branch sets."""
    best = None
    for x in sorted(a):
        hits = g.adj(x) & b
        if hits:
            cand = tuple(sorted((x, min(hits))))
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def marked_witness_structure(
    g: Graph, h: Graph, model: MinorModel
) -> tuple[set[int], set[tuple[int, int]], list[set[int]]]:
    """Marking phase of the pruning argument, in original host ids.

    Marks one host edge per query edge (lowest pair), then in each branch set
    an inclusion-minimal tree spanning the marked contact endpoints (isolated
    query vertices keep their lowest host vertex).  Returns the kept vertices,
    the kept edges, and the shrunken branch sets.
    """
    if not verify_minor_model(g, h, model):
        raise ValueError("input is not a valid minor model")

    contact_edges: list[tuple[int, int]] = []
    contacts_per_branch: list[set[int]] = [set() for _ in range(h.n)]
    for u, v in h.edges():
        a, b = _lowest_contact_edge(g, model[u], model[v])
        contact_edges.append((a, b))
        contacts_per_branch[u].add(a if a in model[u] else b)
        contacts_per_branch[v].add(a if a in model[v] else b)

    kept_vertices: set[int] = set()
    kept_edges: set[tuple[int, int]] = set(contact_edges)
    new_sets: list[set[int]] = []
    for q in range(h.n):
        branch = model[q]
        contacts = sorted(contacts_per_branch[q])
        if not contacts:
            contacts = [min(branch)]
        tree_vertices, tree_edges = _steiner_tree(g, branch, contacts)
        kept_vertices |= tree_vertices
        kept_edges |= tree_edges
        new_sets.append(tree_vertices)
    for a, b in contact_edges:
        kept_vertices.add(a)
        kept_vertices.add(b)
    return kept_vertices, kept_edges, new_sets


def prune_minor_model(g: Graph, h: Graph, model: MinorModel) -> tuple[Graph, MinorModel]:
    """Shrink a model to a low-degree witness subgraph.

    Everything unmarked by :func:`marked_witness_structure` is deleted, edges
    included, so the result is a subgraph whose maximum degree is at most the
    query graph's, with vertex count bounded by |V(H)| + vc * (max_deg(H) + 1).

    Returns the pruned host (densely relabeled) and the restricted model.
    """
    kept_vertices, kept_edges, new_sets = marked_witness_structure(g, h, model)

    old_ids = sorted(kept_vertices)
    index = {old: new for new, old in enumerate(old_ids)}
    adj: list[set[int]] = [set() for _ in old_ids]
    for a, b in kept_edges:
        adj[index[a]].add(index[b])
        adj[index[b]].add(index[a])
    pruned = Graph(adj)
    restricted = MinorModel(tuple(frozenset(index[v] for v in s) for s in new_sets))
    return pruned, restricted


def _steiner_tree(g: Graph, branch: frozenset, terminals: list[int]) -> tuple[set[int], set[tuple[int, int]]]:
    """Union of BFS-tree paths from each terminal to the lowest terminal.

    Every leaf of the resulting tree is a terminal, which is exactly the
    inclusion-minimality the degree argument needs.
    """
    root = terminals[0]
    parent: dict[int, int] = {root: -1}
    queue = [root]
    while queue:
        nxt: list[int] = []
        for x in queue:
            for y in sorted(g.adj(x)):
                if y in branch and y not in parent:
                    parent[y] = x
                    nxt.append(y)
        queue = nxt
    vertices: set[int] = {root}
    edges: set[tuple[int, int]] = set()
    for t in terminals:
        v = t
        while v != root and v not in vertices:
            vertices.add(v)
            p = parent[v]
            edges.add((min(v, p), max(v, p)))
            v = p
        vertices.add(t)
    return vertices, edges


# ---------------------------------------------------------------------------
# exact model search
# ---------------------------------------------------------------------------


def find_minor_model(g: Graph, h: Graph) -> MinorModel | None:
    """Exhaustive branch-set search; exponential, intended for small inputs.

    Query vertices with edges are placed in descending-degree order; each
    candidate branch set is a connected subset of unused host vertices that
    touches every already-placed query neighbor.  Isolated query vertices
    only need any leftover vertex each.
    """
    if h.n == 0:
        return MinorModel(())
    if h.n > g.n:
        return None

    isolated = [q for q in range(h.n) if h.degree(q) == 0]
    active = sorted((q for q in range(h.n) if h.degree(q) > 0), key=lambda q: (-h.degree(q), q))

    gmasks = g.adjacency_masks()
    clique_like = all(h.degree(q) == h.n - 1 for q in range(h.n))

    placed_sets: list[int] = []  # bitmasks, aligned with `active`
    placed_nbhd: list[int] = []  # neighborhood bitmask of each placed set

    def nbhd_of(mask: int) -> int:
        out = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            out |= gmasks[v]
            m &= m - 1
        return out & ~mask

    full = (1 << g.n) - 1

    def candidates(free: int, required: list[int], budget: int, min_seed: int):
        """Yield connected subsets of `free` meeting every mask in `required`."""
        seeds = free
        while seeds:
            seed_bit = seeds & -seeds
            seeds &= seeds - 1
            seed = seed_bit.bit_length() - 1
            if seed < min_seed:
                continue
            # connected subsets whose minimum vertex is `seed`
            allowed = free & ~(seed_bit - 1)
            yield from _grow(seed_bit, gmasks[seed] & allowed & ~seed_bit, allowed, required, budget)

    def _grow(current: int, frontier: int, allowed: int, required: list[int], budget: int):
        if all(current & r for r in required):
            yield current
        if current.bit_count() >= budget:
            return
        # no unmet requirement may fall outside the growable region
        growable = current | (allowed & ~current)
        for r in required:
            if not current & r and not growable & r:
                return
        # expand by each frontier vertex; standard canonical enumeration:
        # a vertex skipped at this level stays skipped below it
        fr = frontier
        banned = 0
        while fr:
            bit = fr & -fr
            fr &= fr - 1
            v = bit.bit_length() - 1
            new_frontier = (frontier | (gmasks[v] & allowed)) & ~current & ~bit & ~banned
            yield from _grow(current | bit, new_frontier, allowed, required, budget)
            banned |= bit

    # future_needs[idx][i]: how many still-unplaced query vertices (after
    # position idx) are H-neighbors of the query vertex placed at position i
    future_needs: list[list[int]] = []
    for idx in range(len(active)):
        row = []
        for i in range(idx + 1):
            row.append(sum(1 for f in active[idx + 1 :] if h.has_edge(active[i], f)))
        future_needs.append(row)

    def place(idx: int, free: int) -> list[int] | None:
        if idx == len(active):
            return []
        remaining_after = len(active) - idx - 1 + len(isolated)
        budget = free.bit_count() - remaining_after
        if budget <= 0:
            return None
        q = active[idx]
        required = [placed_nbhd[i] for i, p in enumerate(active[:idx]) if h.has_edge(p, q)]
        min_seed = 0
        if clique_like and placed_sets:
            min_seed = (placed_sets[-1] & -placed_sets[-1]).bit_length()  # strictly above prior min
        for cand in candidates(free, required, budget, min_seed):
            placed_sets.append(cand)
            placed_nbhd.append(nbhd_of(cand))
            new_free = free & ~cand
            # future neighbor sets are disjoint, so each placed set needs as
            # many free neighborhood vertices as it has unplaced H-neighbors
            ok = True
            for i in range(idx + 1):
                need = future_needs[idx][i]
                if need and (placed_nbhd[i] & new_free).bit_count() < need:
                    ok = False
                    break
            if ok:
                rest = place(idx + 1, new_free)
                if rest is not None:
                    placed_sets.pop()
                    placed_nbhd.pop()
                    return [cand] + rest
            placed_sets.pop()
            placed_nbhd.pop()
        return None

    solution = place(0, full)
    if solution is None:
        return None
    used = 0
    for mask in solution:
        used |= mask
    free_bits = [v for v in range(g.n) if not (used >> v) & 1]
    if len(free_bits) < len(isolated):
        return None
    sets: dict[int, frozenset] = {}
    for q, mask in zip(active, solution):
        sets[q] = frozenset(v for v in range(g.n) if (mask >> v) & 1)
    for q, v in zip(isolated, free_bits):
        sets[q] = frozenset({v})
    return MinorModel.from_dict(sets)
