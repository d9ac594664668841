"""Registry of graph properties that stay members under edge flips at any
vertex once a small protection set is fixed.

Each :class:`PropertySpec` bundles the property's flip-protection budget, a
witness-size polynomial in the vertex cover number, an exact membership test,
a vertex-minimal witness finder, and (for test harnesses) a protection-set
constructor.  Membership tests are exact exponential procedures and are only
ever called on desk-scale graphs; the reduction pipelines themselves never
need them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .embedding import find_embedding
from .errors import AdjacencyBudgetExceeded, CeilingExceeded
from .graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    has_cycle,
    induced_subgraph,
    is_bipartite,
    is_chordal,
    path_graph,
)
from .minors import find_minor_model, marked_witness_structure

# exact membership machinery is exponential; refuse far beyond desk scale
DESK_LIMIT = 20


def _check_desk(g: Graph, what: str) -> None:
    if g.n > DESK_LIMIT:
        raise CeilingExceeded(what, g.n, DESK_LIMIT)


def eval_poly(coeffs: Sequence[int], x: int) -> int:
    """Evaluate sum(coeffs[i] * x**i)."""
    total = 0
    for i, c in enumerate(coeffs):
        total += c * x**i
    return total


# ---------------------------------------------------------------------------
# cycle witnesses
# ---------------------------------------------------------------------------


def _bfs_cycle(g: Graph, parity: bool) -> tuple[int, ...] | None:
    """Shortest cycle (parity=False) or shortest odd cycle (parity=True),
    as an ordered vertex tuple.  Shortest such cycles are always chordless."""
    best: tuple[int, ...] | None = None
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        while queue:
            nxt = []
            for x in queue:
                for y in sorted(g.adj(x)):
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        nxt.append(y)
            queue = nxt
        for u, v in g.edges():
            if u not in dist or v not in dist or parent.get(u) == v or parent.get(v) == u:
                continue
            length = dist[u] + dist[v] + 1
            if parity and length % 2 == 0:
                continue
            pu, pv = _root_path(parent, u), _root_path(parent, v)
            shared = set(pu) & set(pv)
            meet_candidates = [w for w in pu if w in shared]
            meet = meet_candidates[-1] if meet_candidates else root
            cu = pu[pu.index(meet):]
            cv = pv[pv.index(meet):]
            if set(cu) & set(cv) != {meet}:
                continue
            cycle = tuple(cu) + tuple(reversed(cv[1:]))
            if parity and len(cycle) % 2 == 0:
                continue
            if len(cycle) >= 3 and (best is None or len(cycle) < len(best)):
                best = cycle
    return best


def _root_path(parent: dict[int, int], v: int) -> list[int]:
    path = [v]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def shortest_cycle(g: Graph) -> tuple[int, ...] | None:
    return _bfs_cycle(g, parity=False)


def shortest_odd_cycle(g: Graph) -> tuple[int, ...] | None:
    return _bfs_cycle(g, parity=True)


def find_chordless_cycle(g: Graph, min_len: int) -> tuple[int, ...] | None:
    """Any chordless cycle with at least ``min_len`` vertices (min_len >= 4).

    Grows induced paths from each anchor vertex using larger ids only; past
    the second vertex, anything adjacent to the anchor can only close the
    cycle, never extend it.  ``blocked`` holds the path plus every neighbor
    of an interior path vertex, which keeps the grown path induced.
    """
    masks = g.adjacency_masks()

    def dfs(path: list[int], blocked: int) -> tuple[int, ...] | None:
        anchor = path[0]
        end = path[-1]
        for v in sorted(g.adj(end)):
            if v <= anchor or (blocked >> v) & 1:
                continue
            if len(path) >= 2 and g.has_edge(v, anchor):
                if len(path) + 1 >= min_len and path[1] < v:
                    return tuple(path) + (v,)
                continue
            grown = blocked | (1 << v)
            if len(path) >= 2:
                grown |= masks[end]
            found = dfs(path + [v], grown)
            if found is not None:
                return found
        return None

    for anchor in range(g.n):
        hit = dfs([anchor], 1 << anchor)
        if hit is not None:
            return hit
    return None


# ---------------------------------------------------------------------------
# subset-membership tables (bitmask indexed)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _ham_path_endpoints(g: Graph) -> list[int]:
    """ep[mask] = bitmask of vertices at which G[mask] has a spanning path end."""
    _check_desk(g, "hamiltonian path table")
    n = g.n
    masks = g.adjacency_masks()
    ep = [0] * (1 << n)
    for v in range(n):
        ep[1 << v] = 1 << v
    for mask in range(1, 1 << n):
        if mask.bit_count() < 2:
            continue
        e = 0
        m = mask
        while m:
            bit = m & -m
            m &= m - 1
            v = bit.bit_length() - 1
            if ep[mask ^ bit] & masks[v]:
                e |= bit
        ep[mask] = e
    return ep


@lru_cache(maxsize=64)
def _ham_cycle_table(g: Graph) -> list[bool]:
    """cyc[mask]: G[mask] has a spanning cycle (needs >= 3 vertices)."""
    _check_desk(g, "hamiltonian cycle table")
    n = g.n
    masks = g.adjacency_masks()
    dp = [0] * (1 << n)  # spanning-path endpoints, start pinned to lowest bit
    cyc = [False] * (1 << n)
    for v in range(n):
        dp[1 << v] = 1 << v
    for mask in range(1, 1 << n):
        pc = mask.bit_count()
        if pc < 2:
            continue
        low = mask & -mask
        e = 0
        m = mask & ~low
        while m:
            bit = m & -m
            m &= m - 1
            v = bit.bit_length() - 1
            if dp[mask ^ bit] & masks[v]:
                e |= bit
        dp[mask] = e
        if pc >= 3 and e & masks[low.bit_length() - 1]:
            cyc[mask] = True
    return cyc


@lru_cache(maxsize=64)
def _perfect_matching_table(g: Graph) -> list[bool]:
    """pm[mask]: G[mask] has a perfect matching (vacuously true for mask 0)."""
    _check_desk(g, "perfect matching table")
    n = g.n
    masks = g.adjacency_masks()
    pm = [False] * (1 << n)
    pm[0] = True
    for mask in range(1, 1 << n):
        if mask.bit_count() % 2:
            continue
        low = mask & -mask
        v = low.bit_length() - 1
        m = masks[v] & mask
        while m:
            bit = m & -m
            m &= m - 1
            if pm[mask ^ low ^ bit]:
                pm[mask] = True
                break
    return pm


def find_hamiltonian_cycle(g: Graph) -> tuple[int, ...] | None:
    """A spanning cycle of g as an ordered tuple, or None."""
    if g.n < 3:
        return None
    _check_desk(g, "hamiltonian cycle search")
    masks = g.adjacency_masks()
    full = (1 << g.n) - 1
    dp = _ham_cycle_start_table(g)
    ends = dp[full] & masks[0]
    if not ends:
        return None
    # walk the spanning path start=0 backwards from a cycle-closing endpoint
    path = []
    mask = full
    v = (ends & -ends).bit_length() - 1
    while mask != 1:
        path.append(v)
        prev_mask = mask ^ (1 << v)
        cand = dp[prev_mask] & masks[v] if prev_mask != 1 else (1 if masks[v] & 1 else 0)
        if prev_mask == 1:
            break
        v = (cand & -cand).bit_length() - 1
        mask = prev_mask
    path.append(0)
    path.reverse()
    return tuple(path)


@lru_cache(maxsize=64)
def _ham_cycle_start_table(g: Graph) -> list[int]:
    """dp[mask] = endpoints of spanning paths of G[mask] starting at vertex 0."""
    _check_desk(g, "hamiltonian cycle table")
    n = g.n
    masks = g.adjacency_masks()
    dp = [0] * (1 << n)
    dp[1] = 1
    for mask in range(1, 1 << n):
        if not mask & 1 or mask.bit_count() < 2:
            continue
        e = 0
        m = mask & ~1
        while m:
            bit = m & -m
            m &= m - 1
            v = bit.bit_length() - 1
            if dp[mask ^ bit] & masks[v]:
                e |= bit
        dp[mask] = e
    return dp


def find_hamiltonian_path(g: Graph) -> tuple[int, ...] | None:
    """A spanning path of g as an ordered tuple, or None."""
    if g.n == 0:
        return None
    if g.n == 1:
        return (0,)
    _check_desk(g, "hamiltonian path search")
    ep = _ham_path_endpoints(g)
    masks = g.adjacency_masks()
    full = (1 << g.n) - 1
    if not ep[full]:
        return None
    path = []
    mask = full
    v = (ep[full] & -ep[full]).bit_length() - 1
    while True:
        path.append(v)
        mask ^= 1 << v
        if mask == 0:
            break
        cand = ep[mask] & masks[v]
        v = (cand & -cand).bit_length() - 1
    path.reverse()
    return tuple(path)


# ---------------------------------------------------------------------------
# the property bundle
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PropertySpec:
    """A graph property packaged with the constants the reduction needs.

    adjacencies: how many protected vertices suffice per vertex (the flip
        budget); size_poly: coefficients (constant term first) of a
        non-decreasing polynomial bounding vertex-minimal member sizes by
        their vertex cover number; bounded_everywhere marks properties where
        *every* member obeys the bound, not just minimal ones.
    """

    name: str
    adjacencies: int
    size_poly: tuple[int, ...]
    has_edge_guarantee: bool
    bounded_everywhere: bool
    monotone: bool
    member_fn: Callable[[Graph], bool]
    witness_fn: Callable[[Graph], frozenset | None] | None = None
    subset_fn: Callable[[Graph], Callable[[int], bool]] | None = None
    adjacency_witness_fn: Callable[[Graph, int], frozenset] | None = None
    min_witness_fn: Callable[[Graph], frozenset | None] | None = None

    # -- behavior ----------------------------------------------------------

    def member(self, g: Graph) -> bool:
        return self.member_fn(g)

    def size_bound(self, x: int) -> int:
        return eval_poly(self.size_poly, x)

    def subset_oracle(self, g: Graph) -> Callable[[int], bool]:
        """Membership of induced subsets, addressed by vertex bitmask."""
        if self.subset_fn is not None:
            return self.subset_fn(g)

        def generic(mask: int) -> bool:
            sub, _ = induced_subgraph(g, _mask_vertices(mask))
            return self.member_fn(sub)

        return generic

    def min_witness(self, g: Graph) -> frozenset | None:
        """A vertex-minimal subset inducing a member, or None if none exists."""
        if self.min_witness_fn is not None:
            return self.min_witness_fn(g)
        if self.monotone:
            if not self.member(g):
                return None
            start = self.witness_fn(g) if self.witness_fn else None
            w = set(start) if start is not None else set(range(g.n))
            return frozenset(_greedy_minimize(g, w, self.member_fn))
        # non-monotone: the smallest member subset is vertex-minimal
        _check_desk(g, f"minimal witness for {self.name}")
        oracle = self.subset_oracle(g)
        order = sorted(range(g.n))
        for size in range(0, g.n + 1):
            for combo in combinations(order, size):
                mask = 0
                for v in combo:
                    mask |= 1 << v
                if oracle(mask):
                    return frozenset(combo)
        return None

    def adjacency_witness(self, g: Graph, v: int) -> frozenset | None:
        if self.adjacency_witness_fn is None:
            return None
        return self.adjacency_witness_fn(g, v)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PropertySpec):
            return NotImplemented
        return self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return f"PropertySpec({self.name!r}, adjacencies={self.adjacencies})"


def _mask_vertices(mask: int) -> list[int]:
    out = []
    while mask:
        bit = mask & -mask
        mask &= mask - 1
        out.append(bit.bit_length() - 1)
    return out


def _greedy_minimize(g: Graph, w: set[int], member: Callable[[Graph], bool]) -> set[int]:
    """Delete vertices (lowest first) while membership persists; for monotone
    properties single-deletion stability is full vertex-minimality."""
    changed = True
    while changed:
        changed = False
        for v in sorted(w):
            rest = w - {v}
            sub, _ = induced_subgraph(g, rest)
            if member(sub):
                w = rest
                changed = True
                break
    return w


# ---------------------------------------------------------------------------
# builtins
# ---------------------------------------------------------------------------


def _ordered_cycle_adjacency(cycle: tuple[int, ...], v: int, keep_forward: int = 1) -> frozenset:
    """Predecessor plus ``keep_forward`` successors of v on the cycle."""
    i = cycle.index(v)
    m = len(cycle)
    out = {cycle[(i - 1) % m]}
    for step in range(1, keep_forward + 1):
        out.add(cycle[(i + step) % m])
    out.discard(v)
    return frozenset(out)


def _k2_spec() -> PropertySpec:
    def member(g: Graph) -> bool:
        return g.edge_count > 0

    def witness(g: Graph) -> frozenset | None:
        edges = g.edges()
        return frozenset(edges[0]) if edges else None

    def adjacency(g: Graph, v: int) -> frozenset:
        for u, w in g.edges():
            if v not in (u, w):
                return frozenset()
        return frozenset({min(g.adj(v))})

    return PropertySpec(
        name="k2",
        adjacencies=1,
        size_poly=(2,),
        has_edge_guarantee=True,
        bounded_everywhere=False,
        monotone=True,
        member_fn=member,
        witness_fn=witness,
        adjacency_witness_fn=adjacency,
    )


def _odd_cycle_spec() -> PropertySpec:
    def member(g: Graph) -> bool:
        return not is_bipartite(g)

    def witness(g: Graph) -> frozenset | None:
        cyc = shortest_odd_cycle(g)
        return frozenset(cyc) if cyc else None

    def adjacency(g: Graph, v: int) -> frozenset:
        cyc = shortest_odd_cycle(g)
        if cyc is None or v not in cyc:
            return frozenset()
        return _ordered_cycle_adjacency(cyc, v)

    return PropertySpec(
        name="odd-cycle",
        adjacencies=2,
        size_poly=(0, 2),
        has_edge_guarantee=True,
        bounded_everywhere=False,
        monotone=True,
        member_fn=member,
        witness_fn=witness,
        adjacency_witness_fn=adjacency,
    )


def _contains_cycle_spec() -> PropertySpec:
    def witness(g: Graph) -> frozenset | None:
        cyc = shortest_cycle(g)
        return frozenset(cyc) if cyc else None

    def adjacency(g: Graph, v: int) -> frozenset:
        cyc = shortest_cycle(g)
        if cyc is None or v not in cyc:
            return frozenset()
        return _ordered_cycle_adjacency(cyc, v)

    return PropertySpec(
        name="contains-cycle",
        adjacencies=2,
        size_poly=(0, 2),
        has_edge_guarantee=True,
        bounded_everywhere=False,
        monotone=True,
        member_fn=has_cycle,
        witness_fn=witness,
        adjacency_witness_fn=adjacency,
    )


def _chordless_cycle_spec(min_len: int) -> PropertySpec:
    if min_len < 4:
        raise ValueError("chordless cycles have length at least 4")

    def member(g: Graph) -> bool:
        if min_len == 4:
            return not is_chordal(g)
        return find_chordless_cycle(g, min_len) is not None

    def witness(g: Graph) -> frozenset | None:
        cyc = find_chordless_cycle(g, min_len)
        return frozenset(cyc) if cyc else None

    def adjacency(g: Graph, v: int) -> frozenset:
        cyc = find_chordless_cycle(g, min_len)
        if cyc is None or v not in cyc:
            return frozenset()
        # predecessor plus the first min_len - 2 successors stay protected
        return _ordered_cycle_adjacency(cyc, v, keep_forward=min_len - 2)

    name = "chordless-cycle" if min_len == 4 else f"chordless-cycle-ge-{min_len}"
    return PropertySpec(
        name=name,
        adjacencies=min_len - 1,
        size_poly=(0, 2),
        has_edge_guarantee=True,
        bounded_everywhere=False,
        monotone=True,
        member_fn=member,
        witness_fn=witness,
        adjacency_witness_fn=adjacency,
    )


def _has_minor_fast(g: Graph, h: Graph) -> bool:
    if h.n == 3 and h.edge_count == 3:
        return has_cycle(g)
    if h.n == 2 and h.edge_count == 1:
        return g.edge_count > 0
    return find_minor_model(g, h) is not None


def _f_minor_spec(family: Sequence[Graph]) -> PropertySpec:
    family = tuple(family)
    if not family:
        raise ValueError("minor family must be nonempty")
    for h in family:
        if h.edge_count == 0:
            raise ValueError("minor family members must contain an edge")
    delta = max(h.max_degree() for h in family)
    biggest = max(h.n for h in family)

    def member(g: Graph) -> bool:
        return any(_has_minor_fast(g, h) for h in family)

    def witness(g: Graph) -> frozenset | None:
        for h in family:
            if h.n == 3 and h.edge_count == 3:
                cyc = shortest_cycle(g)
                if cyc:
                    return frozenset(cyc)
                continue
            model = find_minor_model(g, h)
            if model is not None:
                return model.used_vertices()
        return None

    def adjacency(g: Graph, v: int) -> frozenset:
        for h in family:
            model = find_minor_model(g, h)
            if model is None:
                continue
            vertices, edges, _ = marked_witness_structure(g, h, model)
            if v not in vertices:
                return frozenset()
            return frozenset(x for a, b in edges for x in (a, b) if v in (a, b)) - {v}
        return frozenset()

    names = ",".join(_graph_name(h) for h in family)
    return PropertySpec(
        name=f"f-minor:{names}",
        adjacencies=delta,
        size_poly=(biggest, delta + 1),
        has_edge_guarantee=True,
        bounded_everywhere=False,
        monotone=True,
        member_fn=member,
        witness_fn=witness,
        adjacency_witness_fn=adjacency,
    )


def _ham_cycle_spec() -> PropertySpec:
    def member(g: Graph) -> bool:
        if g.n < 3:
            return False
        return bool(_ham_cycle_table(g)[(1 << g.n) - 1])

    def subset(g: Graph) -> Callable[[int], bool]:
        table = _ham_cycle_table(g)
        return table.__getitem__

    def adjacency(g: Graph, v: int) -> frozenset:
        cyc = find_hamiltonian_cycle(g)
        assert cyc is not None
        return _ordered_cycle_adjacency(cyc, v)

    return PropertySpec(
        name="hamiltonian-cycle",
        adjacencies=2,
        size_poly=(0, 2),
        has_edge_guarantee=True,
        bounded_everywhere=True,
        monotone=False,
        member_fn=member,
        subset_fn=subset,
        adjacency_witness_fn=adjacency,
    )


def _ham_path_spec() -> PropertySpec:
    def member(g: Graph) -> bool:
        if g.n == 0:
            return False
        if g.n == 1:
            return True
        return bool(_ham_path_endpoints(g)[(1 << g.n) - 1])

    def subset(g: Graph) -> Callable[[int], bool]:
        ep = _ham_path_endpoints(g)
        return lambda mask: bool(ep[mask])

    def adjacency(g: Graph, v: int) -> frozenset:
        path = find_hamiltonian_path(g)
        assert path is not None
        i = path.index(v)
        out = set()
        if i > 0:
            out.add(path[i - 1])
        if i + 1 < len(path):
            out.add(path[i + 1])
        return frozenset(out)

    return PropertySpec(
        name="hamiltonian-path",
        adjacencies=2,
        # paths on t vertices have cover floor(t/2), so t <= 2*vc + 1
        size_poly=(1, 2),
        has_edge_guarantee=False,
        bounded_everywhere=True,
        monotone=False,
        member_fn=member,
        subset_fn=subset,
        adjacency_witness_fn=adjacency,
    )


def find_perfect_packing(g: Graph, h: Graph, allowed: int | None = None) -> list[dict[int, int]] | None:
    """Partition the allowed vertices into subgraph copies of h, or None."""
    if allowed is None:
        allowed = (1 << g.n) - 1
    if allowed.bit_count() % h.n:
        return None
    memo: dict[int, bool] = {}

    def solve(mask: int) -> list[dict[int, int]] | None:
        if mask == 0:
            return []
        if memo.get(mask) is False:
            return None
        lowest = (mask & -mask).bit_length() - 1
        allowed_set = frozenset(_mask_vertices(mask))
        from .embedding import iter_embeddings

        for emb in iter_embeddings(g, h, induced=False, allowed=allowed_set, must_use=lowest):
            used = 0
            for x in emb.values():
                used |= 1 << x
            rest = solve(mask ^ used)
            if rest is not None:
                return [emb] + rest
        memo[mask] = False
        return None

    return solve(allowed)


def _packing_spec(h: Graph) -> PropertySpec:
    if h.edge_count == 0:
        raise ValueError("packing pattern must contain an edge")
    hn = h.n
    is_k2 = hn == 2 and h.edge_count == 1

    def member(g: Graph) -> bool:
        if g.n % hn:
            return False
        if is_k2:
            return _perfect_matching_table(g)[(1 << g.n) - 1]
        _check_desk(g, "perfect packing")
        return find_perfect_packing(g, h) is not None

    def subset(g: Graph) -> Callable[[int], bool]:
        if is_k2:
            table = _perfect_matching_table(g)
            return table.__getitem__
        _check_desk(g, "perfect packing")

        def query(mask: int) -> bool:
            if mask.bit_count() % hn:
                return False
            return find_perfect_packing(g, h, mask) is not None

        return query

    def adjacency(g: Graph, v: int) -> frozenset:
        packing = find_perfect_packing(g, h)
        assert packing is not None
        for emb in packing:
            if v in emb.values():
                inverse = {x: q for q, x in emb.items()}
                q = inverse[v]
                return frozenset(emb[p] for p in h.adj(q))
        return frozenset()

    return PropertySpec(
        name=f"perfect-h-packing:{_graph_name(h)}",
        adjacencies=h.max_degree(),
        size_poly=(0, hn),
        has_edge_guarantee=False,  # the empty graph packs vacuously
        bounded_everywhere=True,
        monotone=False,
        member_fn=member,
        subset_fn=subset,
        adjacency_witness_fn=adjacency,
    )


# ---------------------------------------------------------------------------
# named graphs and the registry
# ---------------------------------------------------------------------------


def _graph_name(g: Graph) -> str:
    n, m = g.n, g.edge_count
    if m == n * (n - 1) // 2:
        return f"K{n}"
    degs = sorted(g.degree(v) for v in range(g.n))
    if n >= 3 and m == n and all(d == 2 for d in degs) and has_cycle(g) and len(_components_count(g)) == 1:
        return f"C{n}"
    if m == n - 1 and degs.count(1) == 2 and all(d <= 2 for d in degs) and len(_components_count(g)) == 1:
        return f"P{n}"
    sides = _biclique_sides(g)
    if sides is not None:
        s, t = sides
        if s <= 9 and t <= 9:
            return f"K{s}{t}"
    return f"custom-n{n}-m{m}"


def _components_count(g: Graph):
    from .graph import connected_components

    return connected_components(g)


def _biclique_sides(g: Graph) -> tuple[int, int] | None:
    if g.n < 2 or not is_bipartite(g):
        return None
    comps = _components_count(g)
    if len(comps) != 1:
        return None
    side_a = {0}
    side_b = set()
    frontier = [0]
    color = {0: 0}
    while frontier:
        x = frontier.pop()
        for y in g.adj(x):
            if y not in color:
                color[y] = 1 - color[x]
                (side_a if color[y] == 0 else side_b).add(y)
                frontier.append(y)
    if g.edge_count != len(side_a) * len(side_b):
        return None
    s, t = sorted((len(side_a), len(side_b)))
    return s, t


def named_graph(token: str) -> Graph:
    """Tiny grammar for property parameters:

    ``K5`` clique, ``K33`` biclique K_{3,3} (exactly two digits), ``C5``
    cycle, ``P4`` path.
    """
    token = token.strip()
    if len(token) < 2 or token[0] not in "KCP" or not token[1:].isdigit():
        raise ValueError(f"unknown graph name {token!r}")
    digits = token[1:]
    kind = token[0]
    if kind == "K":
        if len(digits) == 2:
            return complete_bipartite_graph(int(digits[0]), int(digits[1]))
        return complete_graph(int(digits))
    if kind == "C":
        return cycle_graph(int(digits))
    return path_graph(int(digits))


def builtin(name: str, param=None) -> PropertySpec:
    """Construct one of the registered properties.

    param: int for chordless-cycle-ge, a Graph for perfect-h-packing, a
    sequence of Graphs for f-minor.
    """
    if name == "k2":
        return _k2_spec()
    if name == "odd-cycle":
        return _odd_cycle_spec()
    if name == "contains-cycle":
        return _contains_cycle_spec()
    if name == "chordless-cycle":
        return _chordless_cycle_spec(4)
    if name == "chordless-cycle-ge":
        if not isinstance(param, int):
            raise ValueError("chordless-cycle-ge needs an integer length")
        return _chordless_cycle_spec(param)
    if name == "hamiltonian-cycle":
        return _ham_cycle_spec()
    if name == "hamiltonian-path":
        return _ham_path_spec()
    if name == "f-minor":
        if isinstance(param, Graph):
            param = [param]
        if not isinstance(param, Iterable):
            raise ValueError("f-minor needs a graph family")
        return _f_minor_spec(list(param))
    if name in ("perfect-h-packing", "packing"):
        if not isinstance(param, Graph):
            raise ValueError("perfect-h-packing needs a pattern graph")
        return _packing_spec(param)
    raise ValueError(f"unknown property name {name!r}")


def parse_property(text: str) -> PropertySpec:
    """Parse CLI property strings like ``odd-cycle``, ``f-minor:K5,K33``,
    ``packing:K3``, ``chordless-cycle-ge-5``, ``union(a,b)``, ``intersect(a,b)``."""
    text = text.strip()
    for combo, fn in (("union", union_props), ("intersect", intersect_props)):
        if text.startswith(combo + "(") and text.endswith(")"):
            inner = text[len(combo) + 1 : -1]
            parts = _split_top_level(inner)
            if len(parts) != 2:
                raise ValueError(f"{combo} takes exactly two properties")
            return fn(parse_property(parts[0]), parse_property(parts[1]))
    if text.startswith("chordless-cycle-ge-"):
        return builtin("chordless-cycle-ge", int(text.rsplit("-", 1)[1]))
    if ":" in text:
        base, _, params = text.partition(":")
        if base == "f-minor":
            return builtin("f-minor", [named_graph(t) for t in params.split(",")])
        if base in ("packing", "perfect-h-packing"):
            return builtin("perfect-h-packing", named_graph(params))
        raise ValueError(f"unknown parameterized property {base!r}")
    return builtin(text)


def _split_top_level(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


# ---------------------------------------------------------------------------
# closure combinators
# ---------------------------------------------------------------------------


def _poly_max(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    width = max(len(a), len(b))
    pa = a + (0,) * (width - len(a))
    pb = b + (0,) * (width - len(b))
    return tuple(max(x, y) for x, y in zip(pa, pb))


def _poly_sum(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    width = max(len(a), len(b))
    pa = a + (0,) * (width - len(a))
    pb = b + (0,) * (width - len(b))
    return tuple(x + y for x, y in zip(pa, pb))


def union_props(p1: PropertySpec, p2: PropertySpec) -> PropertySpec:
    """Either property holds; protection budget is the max of the two."""

    def member(g: Graph) -> bool:
        return p1.member_fn(g) or p2.member_fn(g)

    def min_witness(g: Graph) -> frozenset | None:
        w1 = p1.min_witness(g)
        w2 = p2.min_witness(g)
        if w1 is None:
            return w2
        if w2 is None:
            return w1
        return w1 if len(w1) <= len(w2) else w2

    def subset(g: Graph) -> Callable[[int], bool]:
        o1, o2 = p1.subset_oracle(g), p2.subset_oracle(g)
        return lambda mask: o1(mask) or o2(mask)

    def adjacency(g: Graph, v: int) -> frozenset | None:
        if p1.member_fn(g) and p1.adjacency_witness_fn is not None:
            return p1.adjacency_witness(g, v)
        if p2.adjacency_witness_fn is not None:
            return p2.adjacency_witness(g, v)
        return None

    both_adj = p1.adjacency_witness_fn is not None and p2.adjacency_witness_fn is not None
    return PropertySpec(
        name=f"union({p1.name},{p2.name})",
        adjacencies=max(p1.adjacencies, p2.adjacencies),
        size_poly=_poly_max(p1.size_poly, p2.size_poly),
        has_edge_guarantee=p1.has_edge_guarantee and p2.has_edge_guarantee,
        bounded_everywhere=p1.bounded_everywhere and p2.bounded_everywhere,
        monotone=p1.monotone and p2.monotone,
        member_fn=member,
        subset_fn=subset,
        adjacency_witness_fn=adjacency if both_adj else None,
        min_witness_fn=min_witness,
    )


def intersect_props(p1: PropertySpec, p2: PropertySpec) -> PropertySpec:
    """Both properties hold; protection budgets add.  The size polynomial is a
    heuristic sum; only the budget arithmetic is contractual here."""

    def member(g: Graph) -> bool:
        return p1.member_fn(g) and p2.member_fn(g)

    def subset(g: Graph) -> Callable[[int], bool]:
        o1, o2 = p1.subset_oracle(g), p2.subset_oracle(g)
        return lambda mask: o1(mask) and o2(mask)

    def min_witness(g: Graph) -> frozenset | None:
        _check_desk(g, "intersection witness search")
        oracle = subset(g)
        for size in range(0, g.n + 1):
            for combo in combinations(range(g.n), size):
                mask = 0
                for v in combo:
                    mask |= 1 << v
                if oracle(mask):
                    return frozenset(combo)
        return None

    def adjacency(g: Graph, v: int) -> frozenset | None:
        d1 = p1.adjacency_witness(g, v)
        d2 = p2.adjacency_witness(g, v)
        if d1 is None or d2 is None:
            return None
        return d1 | d2

    both_adj = p1.adjacency_witness_fn is not None and p2.adjacency_witness_fn is not None
    return PropertySpec(
        name=f"intersect({p1.name},{p2.name})",
        adjacencies=p1.adjacencies + p2.adjacencies,
        size_poly=_poly_sum(p1.size_poly, p2.size_poly),
        has_edge_guarantee=p1.has_edge_guarantee or p2.has_edge_guarantee,
        bounded_everywhere=p1.bounded_everywhere or p2.bounded_everywhere,
        monotone=p1.monotone and p2.monotone,
        member_fn=member,
        subset_fn=subset,
        adjacency_witness_fn=adjacency if both_adj else None,
        min_witness_fn=min_witness,
    )


# ---------------------------------------------------------------------------
# characterization falsifier
# ---------------------------------------------------------------------------


def flip_edges(g: Graph, v: int, targets: Iterable[int]) -> Graph:
    """Toggle the edges between v and each target vertex."""
    edges = set(g.edges())
    for u in targets:
        if u == v:
            raise ValueError("cannot flip a self-loop")
        e = (min(u, v), max(u, v))
        if e in edges:
            edges.discard(e)
        else:
            edges.add(e)
    return Graph.from_edges(g.n, edges, g.labels)


def check_adjacency_characterization(
    prop: PropertySpec,
    g: Graph,
    v: int,
    trials: int,
    rng: random.Random | None = None,
) -> bool:
    """Randomized falsifier: flip edges at v outside the protection set and
    report whether membership ever breaks (False on the first break)."""
    if not prop.member(g):
        raise ValueError("characterization check needs a member graph")
    protected = prop.adjacency_witness(g, v)
    if protected is None:
        raise ValueError(f"property {prop.name} has no adjacency witness")
    if len(protected) > prop.adjacencies:
        raise AdjacencyBudgetExceeded(
            f"protection set of size {len(protected)} exceeds budget {prop.adjacencies}"
        )
    rng = rng or random.Random(0)
    others = sorted(set(range(g.n)) - set(protected) - {v})
    for _ in range(trials):
        flips = [u for u in others if rng.random() < 0.5]
        if not prop.member(flip_edges(g, v, flips)):
            return False
    return True
