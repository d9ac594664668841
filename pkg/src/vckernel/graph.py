"""Immutable simple graphs over dense 0-based vertex ids, plus parsing and
vertex-cover utilities.

All operations return new graphs; nothing mutates in place.  Every "arbitrary"
choice is resolved lowest-id-first so the whole toolkit is deterministic.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import GraphParseError

VertexSet = frozenset  # alias: vertex sets are frozensets of ids


class Graph:
    """Undirected simple graph: no loops, no parallel edges, symmetric adjacency."""

    __slots__ = ("_adj", "_labels", "_hash", "_masks")

    def __init__(self, adjacency: Sequence[Iterable[int]], labels: Sequence[str] | None = None):
        adj = tuple(frozenset(nbrs) for nbrs in adjacency)
        n = len(adj)
        for v, nbrs in enumerate(adj):
            for u in nbrs:
                if not 0 <= u < n:
                    raise ValueError(f"neighbor {u} of vertex {v} out of range [0, {n})")
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if v not in adj[u]:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        self._adj = adj
        self._labels = tuple(labels) if labels is not None else None
        if self._labels is not None and len(self._labels) != n:
            raise ValueError("label count does not match vertex count")
        self._hash = None
        self._masks = None

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return Graph(adj, labels)

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    def adj(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(s) for s in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self._adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def adjacency_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmasks; cached, graphs are immutable."""
        if self._masks is None:
            masks = []
            for nbrs in self._adj:
                m = 0
                for u in nbrs:
                    m |= 1 << u
                masks.append(m)
            self._masks = tuple(masks)
        return self._masks

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self._labels == other._labels

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._adj, self._labels))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


# ---------------------------------------------------------------------------
# parsing / serialization
# ---------------------------------------------------------------------------


def _tokenize(text: str | bytes) -> list[tuple[int, str]]:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    return [(i + 1, line.strip()) for i, line in enumerate(text.splitlines())]


def parse_graph(text: str | bytes, format: str = "edge-list") -> Graph:
    """Parse a graph from edge-list or DIMACS text.

    Edge-list: header line ``n m`` followed by ``m`` lines ``u v`` (0-based).
    DIMACS: optional ``c`` comment lines, one ``p edge n m`` header, then
    ``m`` lines ``e u v`` (1-based).  Duplicate edge lines collapse; self-loops
    and out-of-range ids are rejected.
    """
    if format == "edge-list":
        return _parse_edge_list(text)
    if format == "dimacs":
        return _parse_dimacs(text)
    raise ValueError(f"unknown graph format: {format!r}")


def _parse_edge_list(text: str | bytes) -> Graph:
    lines = [(no, ln) for no, ln in _tokenize(text) if ln]
    if not lines:
        raise GraphParseError("missing header line")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphParseError(f"expected header 'n m', got {header!r}", no)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphParseError(f"non-integer header {header!r}", no) from None
    if n < 0 or m < 0:
        raise GraphParseError("negative count in header", no)
    body = lines[1:]
    if len(body) != m:
        raise GraphParseError(f"header declares {m} edge lines, found {len(body)}", no)
    edges = []
    for no, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected edge 'u v', got {ln!r}", no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer edge {ln!r}", no) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex id out of range [0, {n}) in {ln!r}", no)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", no)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def _parse_dimacs(text: str | bytes) -> Graph:
    n = m = None
    header_line = None
    edges = []
    for no, ln in _tokenize(text):
        if not ln or ln.startswith("c"):
            continue
        if ln.startswith("p"):
            if n is not None:
                raise GraphParseError("duplicate problem line", no)
            parts = ln.split()
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphParseError(f"expected 'p edge n m', got {ln!r}", no)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError(f"non-integer problem line {ln!r}", no) from None
            header_line = no
            continue
        if ln.startswith("e"):
            if n is None:
                raise GraphParseError("edge before problem line", no)
            parts = ln.split()
            if len(parts) != 3:
                raise GraphParseError(f"expected 'e u v', got {ln!r}", no)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError(f"non-integer edge {ln!r}", no) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"vertex id out of range [1, {n}] in {ln!r}", no)
            if u == v:
                raise GraphParseError(f"self-loop at vertex {u}", no)
            edges.append((u - 1, v - 1))
            continue
        raise GraphParseError(f"unrecognized line {ln!r}", no)
    if n is None:
        raise GraphParseError("missing problem line")
    if len(edges) != m:
        raise GraphParseError(f"problem line declares {m} edges, found {len(edges)}", header_line)
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph, format: str = "edge-list") -> str:
    """Canonical text form; round-trips bit-exactly through parse_graph."""
    edges = g.edges()
    if format == "edge-list":
        lines = [f"{g.n} {len(edges)}"]
        lines.extend(f"{u} {v}" for u, v in edges)
        return "\n".join(lines) + "\n"
    if format == "dimacs":
        lines = [f"p edge {g.n} {len(edges)}"]
        lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown graph format: {format!r}")


# ---------------------------------------------------------------------------
# small named graphs
# ---------------------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def complete_graph(t: int) -> Graph:
    return Graph.from_edges(t, [(u, v) for u in range(t) for v in range(u + 1, t)])


def path_graph(t: int) -> Graph:
    return Graph.from_edges(t, [(i, i + 1) for i in range(t - 1)])


def cycle_graph(t: int) -> Graph:
    if t < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(t, [(i, (i + 1) % t) for i in range(t)])


def complete_bipartite_graph(s: int, t: int) -> Graph:
    """K_{s,t}: left side ids 0..s-1, right side ids s..s+t-1."""
    return Graph.from_edges(s + t, [(u, s + v) for u in range(s) for v in range(t)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the hub at id 0."""
    return complete_bipartite_graph(1, leaves)


def disjoint_union(graphs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Concatenate graphs; returns the union and each part's id offset."""
    offsets = []
    total = 0
    edges: list[tuple[int, int]] = []
    for g in graphs:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in g.edges())
        total += g.n
    return Graph.from_edges(total, edges), offsets


# ---------------------------------------------------------------------------
# vertex covers
# ---------------------------------------------------------------------------


def verify_vertex_cover(g: Graph, cover: frozenset) -> bool:
    """True iff every edge has an endpoint in ``cover``."""
    for v in cover:
        if not 0 <= v < g.n:
            raise ValueError(f"cover vertex {v} out of range")
    return all(u in cover or v in cover for u, v in g.edges())


def greedy_vertex_cover(g: Graph) -> frozenset:
    """2-approximate cover: both endpoints of a lexicographic maximal matching."""
    cover: set[int] = set()
    for u, v in g.edges():
        if u not in cover and v not in cover:
            cover.add(u)
            cover.add(v)
    return frozenset(cover)


# ---------------------------------------------------------------------------
# subgraphs and local structure
# ---------------------------------------------------------------------------


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``keep`` with dense relabeling.

    Returns (subgraph, old_ids) where new id i corresponds to old_ids[i];
    old ids are kept in ascending order, so relabeling preserves id order.
    """
    old_ids = tuple(sorted(set(keep)))
    for v in old_ids:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    index = {old: new for new, old in enumerate(old_ids)}
    member = frozenset(old_ids)
    adj = [sorted(index[u] for u in g.adj(old) if u in member) for old in old_ids]
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[old] for old in old_ids)
    return Graph(adj, labels), old_ids


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Contract edge {u, v}.

    Surviving vertices keep their relative order and are relabeled densely;
    the merged vertex gets the largest id (n-2) and inherits the union of
    both neighborhoods minus {u, v}.
    """
    if not g.has_edge(u, v):
        raise ValueError(f"cannot contract non-edge ({u}, {v})")
    rest = [w for w in range(g.n) if w != u and w != v]
    index = {old: new for new, old in enumerate(rest)}
    merged = len(rest)
    edges = []
    for a, b in g.edges():
        if {a, b} & {u, v}:
            continue
        edges.append((index[a], index[b]))
    for w in (g.adj(u) | g.adj(v)) - {u, v}:
        edges.append((index[w], merged))
    return Graph.from_edges(merged + 1, edges)


def is_simplicial(g: Graph, v: int) -> bool:
    """True iff the neighborhood of v induces a clique (degree <= 1 is vacuous)."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    nbrs = sorted(g.adj(v))
    for i, a in enumerate(nbrs):
        for b in nbrs[i + 1 :]:
            if not g.has_edge(a, b):
                return False
    return True


def is_connected_subset(g: Graph, subset: frozenset) -> bool:
    if not subset:
        return False
    it = iter(subset)
    start = next(it)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.adj(x):
            if y in subset and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(subset)


def connected_components(g: Graph) -> list[frozenset]:
    seen: set[int] = set()
    comps = []
    for v in range(g.n):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in g.adj(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_bipartite(g: Graph) -> bool:
    color: dict[int, int] = {}
    for s in range(g.n):
        if s in color:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            x = queue.pop()
            for y in g.adj(x):
                if y not in color:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return False
    return True


def has_cycle(g: Graph) -> bool:
    """True iff g is not a forest."""
    seen: set[int] = set()
    for s in range(g.n):
        if s in seen:
            continue
        parent = {s: -1}
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in g.adj(x):
                if y not in parent:
                    parent[y] = x
                    seen.add(y)
                    stack.append(y)
                elif parent[x] != y:
                    return True
    return False


def is_chordal(g: Graph) -> bool:
    """Maximum-cardinality-search test for perfect elimination orderings."""
    n = g.n
    if n == 0:
        return True
    weight = [0] * n
    order: list[int] = []
    placed = [False] * n
    for _ in range(n):
        v = max((w for w in range(n) if not placed[w]), key=lambda w: (weight[w], -w))
        placed[v] = True
        order.append(v)
        for u in g.adj(v):
            if not placed[u]:
                weight[u] += 1
    # the reverse of an MCS order is a perfect elimination order iff chordal
    elimination = list(reversed(order))
    position = {v: i for i, v in enumerate(elimination)}
    for v in elimination:
        later = [u for u in g.adj(v) if position[u] > position[v]]
        if not later:
            continue
        first = min(later, key=lambda u: position[u])
        for u in later:
            if u != first and not g.has_edge(first, u):
                return False
    return True
