"""Generators for the disjunction-embedding constructions and hardness
transformations, used as adversarial instance sources.

Each composer embeds the OR of same-shape source instances into one target
instance whose declared cover is small (polynomial in the source size plus
the logarithm of the batch size).  Instance indices run 1..r with r a power
of two; index bits use the convention that r itself encodes as all zeros and
smaller numbers use their ordinary binary expansion.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import InputShapeError
from .graph import Graph, connected_components, induced_subgraph
from .oracles import Instance, hamiltonian_st_path

# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def pad_to_power_of_two(instances: list) -> list:
    """Duplicate the last entry until the count is a power of two."""
    if not instances:
        raise InputShapeError("cannot pad an empty batch")
    out = list(instances)
    while out and (len(out) & (len(out) - 1)) != 0:
        out.append(out[-1])
    return out


def _bit(i: int, j: int, r: int) -> int:
    """j-th bit (0-based) of instance index i in [1..r]; r encodes as zeros."""
    return ((i % r) >> j) & 1


def _sorted_sides(g: Graph, a: frozenset, b: frozenset) -> tuple[list[int], list[int]]:
    if a & b or (a | b) != frozenset(range(g.n)):
        raise InputShapeError("sides must partition the vertex set")
    for u, v in g.edges():
        if (u in a) == (v in a):
            raise InputShapeError("edge inside a partite set; input is not bipartite")
    return sorted(a), sorted(b)


class _Builder:
    """Accumulates a labeled vertex set and an edge list."""

    def __init__(self):
        self.labels: list[str] = []
        self.edges: set[tuple[int, int]] = set()

    def add(self, label: str) -> int:
        self.labels.append(label)
        return len(self.labels) - 1

    def block(self, label: str, count: int) -> list[int]:
        return [self.add(f"{label}{i}") for i in range(count)]

    def connect(self, u: int, v: int) -> None:
        if u != v:
            self.edges.add((min(u, v), max(u, v)))

    def clique(self, vertices: Sequence[int]) -> None:
        for i, u in enumerate(vertices):
            for v in vertices[i + 1 :]:
                self.connect(u, v)

    def join(self, left: Sequence[int], right: Sequence[int]) -> None:
        for u in left:
            for v in right:
                self.connect(u, v)

    def chain(self, vertices: Sequence[int]) -> None:
        for u, v in zip(vertices, vertices[1:]):
            self.connect(u, v)

    def graph(self) -> Graph:
        return Graph.from_edges(len(self.labels), self.edges, self.labels)


# ---------------------------------------------------------------------------
# biclique composer
# ---------------------------------------------------------------------------


def compose_biclique(instances: list[tuple[Graph, frozenset, frozenset, int]]) -> Instance:
    """Embed the OR of balanced-biclique instances into one induced-biclique
    test with two target side sizes.

    Sources share |A|, |B| and k.  The B sides are identified into one block;
    per index bit, a full biclique of two (|B|+1)-blocks selects the bit
    value; a large common block pads the big side.
    """
    shapes = {(len(a), len(b), k) for _, a, b, k in instances}
    if len(shapes) != 1:
        raise InputShapeError("sources must agree on side sizes and target")
    instances = pad_to_power_of_two(instances)
    r = len(instances)
    bits = r.bit_length() - 1
    a_size, n, k = shapes.pop()

    bld = _Builder()
    b_star = bld.block("B*", n)
    a_blocks = [bld.block(f"A{i + 1}.", a_size) for i in range(r)]
    selectors_one = []  # adjacent to A_i when the bit is one
    selectors_zero = []
    for j in range(bits):
        selectors_one.append(bld.block(f"P{j + 1}.", n + 1))
        selectors_zero.append(bld.block(f"Q{j + 1}.", n + 1))
    pad = bld.block("D", (n + 1) * (1 + 2 * bits))

    for idx, (g, a, b, _) in enumerate(instances):
        a_sorted, b_sorted = _sorted_sides(g, a, b)
        a_pos = {v: p for p, v in enumerate(a_sorted)}
        b_pos = {v: p for p, v in enumerate(b_sorted)}
        for u, v in g.edges():
            if u in b:
                u, v = v, u
            bld.connect(a_blocks[idx][a_pos[u]], b_star[b_pos[v]])

    for j in range(bits):
        bld.join(selectors_one[j], selectors_zero[j])
        for idx in range(r):
            chosen = selectors_one[j] if _bit(idx + 1, j, r) else selectors_zero[j]
            bld.join(chosen, a_blocks[idx])
    selector_vertices = [v for j in range(bits) for v in selectors_one[j] + selectors_zero[j]]
    bld.join(pad, b_star)
    bld.join(pad, selector_vertices)

    cover = frozenset(b_star) | frozenset(selector_vertices)
    assert len(cover) == n + 2 * (n + 1) * bits
    s = k + (n + 1) * bits
    t = k + (n + 1) * (1 + 2 * bits)
    return Instance(
        problem="biclique-induced",
        graph=bld.graph(),
        cover=cover,
        targets={"s": s, "t": t},
    )


# ---------------------------------------------------------------------------
# induced path composer
# ---------------------------------------------------------------------------


def min_safe_segment_length(n: int) -> int:
    """Smallest chain length for which the counting argument still forces a
    long induced path to traverse all three chains."""
    return 7 * (2 * (n + math.comb(n, 2)) + 1) + 4


def _validate_path_sources(instances) -> int:
    sizes = {g.n for g, _, _ in instances}
    if len(sizes) != 1:
        raise InputShapeError("sources must agree on vertex count")
    n = sizes.pop()
    for g, s, t in instances:
        if s == t or not (0 <= s < g.n and 0 <= t < g.n):
            raise InputShapeError("endpoints must be distinct valid vertices")
    return n


def _path_vertex_order(g: Graph, s: int, t: int) -> list[int]:
    return [s] + sorted(set(range(g.n)) - {s, t}) + [t]


def compose_induced_path(
    instances: list[tuple[Graph, int, int]],
    segment_length: int | None = None,
) -> Instance:
    """Embed the OR of endpoint-pinned spanning-path instances into one
    induced-path test.

    Three long chains force any long enough induced path to pick exactly one
    index vertex z_i, whose non-edges disable the corresponding pair gadgets;
    what remains of the pair gadget zone is instance i.  The default chain
    length is n^3 (requiring n >= 9; smaller sources are solved outright and
    replaced by a canonical constant-size instance).  A shorter explicit
    ``segment_length`` is allowed down to :func:`min_safe_segment_length`,
    which keeps the OR exact but voids the small-cover significance.
    """
    n = _validate_path_sources(instances)
    if segment_length is None:
        if n < 9:
            verdict = any(bool(hamiltonian_st_path(g, s, t)) for g, s, t in instances)
            return _canonical_path_instance(verdict)
        length = n**3
    else:
        length = segment_length
        if length < min_safe_segment_length(n):
            raise ValueError(
                f"segment length {length} below safe minimum {min_safe_segment_length(n)}"
            )

    bld, blocks = _path_gadget(instances, n, length)
    z_vertices = blocks["z"]
    cover = frozenset(range(len(bld.labels))) - frozenset(z_vertices)
    return Instance(
        problem="induced-path",
        graph=bld.graph(),
        cover=cover,
        targets={"k": 3 * length + 2 * n},
    )


def _canonical_path_instance(verdict: bool) -> Instance:
    g = Graph.from_edges(2, [(0, 1)], labels=("canonical0", "canonical1"))
    return Instance(
        problem="induced-path",
        graph=g,
        cover=frozenset({0}),
        targets={"k": 2 if verdict else 3},
    )


def _path_gadget(instances, n: int, length: int):
    r = len(instances)
    bld = _Builder()
    chain_a = bld.block("A", length)
    chain_b = bld.block("B", length)
    chain_c = bld.block("C", length)
    bld.chain(chain_a)
    bld.chain(chain_b)
    bld.chain(chain_c)
    spots = bld.block("v*", n)
    pair_ids: dict[tuple[int, int], int] = {}
    for j in range(n):
        for h in range(j + 1, n):
            pid = bld.add(f"e{j + 1},{h + 1}")
            pair_ids[(j, h)] = pid
            bld.connect(pid, spots[j])
            bld.connect(pid, spots[h])
    z_vertices = bld.block("z", r)

    for idx, (g, s, t) in enumerate(instances):
        order = _path_vertex_order(g, s, t)
        for (j, h), pid in pair_ids.items():
            if not g.has_edge(order[j], order[h]):
                bld.connect(z_vertices[idx], pid)

    y_a, y_b = chain_a[-1], chain_b[-1]
    x_b, x_c = chain_b[0], chain_c[0]
    for z in z_vertices:
        bld.connect(y_a, z)
        bld.connect(y_b, z)
    bld.connect(x_b, spots[0])
    bld.connect(x_c, spots[n - 1])

    blocks = {
        "chain_a": chain_a,
        "chain_b": chain_b,
        "chain_c": chain_c,
        "spots": spots,
        "pairs": pair_ids,
        "z": z_vertices,
    }
    return bld, blocks


def induced_path_witness(
    instances: list[tuple[Graph, int, int]],
    winner: int,
    spanning_path: Sequence[int],
    segment_length: int | None = None,
) -> frozenset:
    """The composed vertex set that a winning source's spanning path induces
    as a path: all three chains, the winner's index vertex, every spot
    vertex, and the pair vertices along the path."""
    n = _validate_path_sources(instances)
    length = n**3 if segment_length is None else segment_length
    bld, blocks = _path_gadget(instances, n, length)
    g, s, t = instances[winner]
    order = _path_vertex_order(g, s, t)
    pos = {v: p for p, v in enumerate(order)}
    chosen: set[int] = set(blocks["chain_a"]) | set(blocks["chain_b"]) | set(blocks["chain_c"])
    chosen.add(blocks["z"][winner])
    chosen.update(blocks["spots"])
    for u, v in zip(spanning_path, spanning_path[1:]):
        j, h = sorted((pos[u], pos[v]))
        chosen.add(blocks["pairs"][(j, h)])
    return frozenset(chosen)


# ---------------------------------------------------------------------------
# induced matching composer
# ---------------------------------------------------------------------------


def compose_induced_matching(instances: list[tuple[Graph, frozenset, frozenset, int]]) -> Instance:
    """Embed the OR of bipartite induced-matching instances into one induced
    matching test, with per-bit triangle triples acting as bit selectors."""
    shapes = {(len(a), len(b), k) for _, a, b, k in instances}
    if len(shapes) != 1:
        raise InputShapeError("sources must agree on side sizes and target")
    instances = pad_to_power_of_two(instances)
    r = len(instances)
    bits = r.bit_length() - 1
    a_size, n, k = shapes.pop()

    bld = _Builder()
    b_star = bld.block("B*", n)
    a_blocks = [bld.block(f"A{i + 1}.", a_size) for i in range(r)]
    x_parts, y_parts, z_parts = [], [], []
    for j in range(bits):
        xs = bld.block(f"x{j + 1}.", n)
        ys = bld.block(f"y{j + 1}.", n)
        zs = bld.block(f"z{j + 1}.", n)
        for triple in zip(xs, ys, zs):
            bld.clique(triple)
        x_parts.append(xs)
        y_parts.append(ys)
        z_parts.append(zs)

    for idx, (g, a, b, _) in enumerate(instances):
        a_sorted, b_sorted = _sorted_sides(g, a, b)
        a_pos = {v: p for p, v in enumerate(a_sorted)}
        b_pos = {v: p for p, v in enumerate(b_sorted)}
        for u, v in g.edges():
            if u in b:
                u, v = v, u
            bld.connect(a_blocks[idx][a_pos[u]], b_star[b_pos[v]])

    for j in range(bits):
        for idx in range(r):
            chosen = x_parts[j] if _bit(idx + 1, j, r) else y_parts[j]
            bld.join(chosen, a_blocks[idx])

    selector_vertices = [
        v for j in range(bits) for v in x_parts[j] + y_parts[j] + z_parts[j]
    ]
    cover = frozenset(b_star) | frozenset(selector_vertices)
    assert len(cover) == n + 3 * n * bits
    return Instance(
        problem="induced-matching",
        graph=bld.graph(),
        cover=cover,
        targets={"k": k + n * bits},
    )


def induced_matching_lift(
    instances: list[tuple[Graph, frozenset, frozenset, int]],
    winner: int,
    matching: Sequence[tuple[int, int]],
) -> list[tuple[int, int]]:
    """Lift a winning source's induced matching into the composed graph:
    its image plus the winner-compatible selector edge of every triple."""
    shapes = {(len(a), len(b), k) for _, a, b, k in instances}
    if len(shapes) != 1:
        raise InputShapeError("sources must agree on side sizes and target")
    padded = pad_to_power_of_two(instances)
    r = len(padded)
    bits = r.bit_length() - 1
    a_size, n, _ = shapes.pop()

    g, a, b, _ = padded[winner]
    a_sorted, b_sorted = _sorted_sides(g, a, b)
    a_pos = {v: p for p, v in enumerate(a_sorted)}
    b_pos = {v: p for p, v in enumerate(b_sorted)}

    def a_id(idx: int, p: int) -> int:
        return n + idx * a_size + p

    base = n + r * a_size
    out = []
    for u, v in matching:
        if u in b:
            u, v = v, u
        out.append((a_id(winner, a_pos[u]), b_pos[v]))
    for j in range(bits):
        x0 = base + j * 3 * n
        y0 = x0 + n
        z0 = y0 + n
        keep_x = _bit(winner + 1, j, r) == 0  # x-edges encode a zero bit
        for sidx in range(n):
            if keep_x:
                out.append((x0 + sidx, z0 + sidx))
            else:
                out.append((y0 + sidx, z0 + sidx))
    return out


# ---------------------------------------------------------------------------
# anchor graph and its composer
# ---------------------------------------------------------------------------


def make_psi(s: int, t: int) -> Graph:
    """The anchor pattern: a 5-clique and a 4-clique hung off an edge, plus
    s pendants on one joint and t on the other.  11 + s + t vertices, with
    the canonical cover being everything but the pendants."""
    if s < 0 or t < 0:
        raise ValueError("pendant counts must be nonnegative")
    bld = _Builder()
    big = bld.block("big", 5)
    small = bld.block("small", 4)
    joint_s = bld.add("joint_s")
    joint_t = bld.add("joint_t")
    bld.clique(big)
    bld.clique(small)
    bld.join([joint_s], big)
    bld.join([joint_t], small)
    bld.connect(joint_s, joint_t)
    for v in bld.block("pendant_s", s):
        bld.connect(joint_s, v)
    for v in bld.block("pendant_t", t):
        bld.connect(joint_t, v)
    return bld.graph()


def psi_cover() -> frozenset:
    return frozenset(range(11))


def _validate_psi_source(g: Graph, y: frozenset, k: int) -> list[tuple[int, int]]:
    for u in y:
        for v in y:
            if u < v and g.has_edge(u, v):
                raise InputShapeError("the split set must be independent")
    rest = frozenset(range(g.n)) - y
    sub, old_ids = induced_subgraph(g, rest)
    pairs = []
    for comp in connected_components(sub):
        members = sorted(old_ids[v] for v in comp)
        if len(members) != 2 or not g.has_edge(members[0], members[1]):
            raise InputShapeError("every component outside the split set must be a single edge")
        pairs.append((members[0], members[1]))
    pairs.sort()
    return pairs


def compose_psi(instances: list[tuple[Graph, frozenset, int]]) -> Instance:
    """Embed the OR of pair-split independent-set instances into one anchor
    pattern test with targets (k, log r)."""
    shapes = set()
    for g, y, k in instances:
        _validate_psi_source(g, y, k)
        shapes.add((g.n, len(y), k))
    if len(shapes) != 1:
        raise InputShapeError("sources must agree on vertex count, split size and target")
    instances = pad_to_power_of_two(instances)
    r = len(instances)
    bits = r.bit_length() - 1
    n, y_size, k = shapes.pop()
    q = (n - y_size) // 2

    bld = _Builder()
    pair_a = []
    pair_b = []
    for j in range(q):
        pair_a.append(bld.add(f"a*{j + 1}"))
        pair_b.append(bld.add(f"b*{j + 1}"))
        bld.connect(pair_a[-1], pair_b[-1])
    y_blocks = [bld.block(f"Y{i + 1}.", y_size) for i in range(r)]
    sel_zero = []
    sel_one = []
    for j in range(bits):
        sel_zero.append(bld.add(f"s0_{j + 1}"))
        sel_one.append(bld.add(f"s1_{j + 1}"))
        bld.connect(sel_zero[-1], sel_one[-1])
    big = bld.block("big", 5)
    small = bld.block("small", 4)
    joint_s = bld.add("joint_s")
    joint_t = bld.add("joint_t")
    bld.clique(big)
    bld.clique(small)
    bld.join([joint_s], big)
    bld.join([joint_t], small)
    bld.connect(joint_s, joint_t)

    for idx, (g, y, _) in enumerate(instances):
        pairs = _validate_psi_source(g, y, k)
        y_sorted = sorted(y)
        y_pos = {v: p for p, v in enumerate(y_sorted)}
        for v in y_sorted:
            for u in g.adj(v):
                for j, (av, bv) in enumerate(pairs):
                    if u == av:
                        bld.connect(y_blocks[idx][y_pos[v]], pair_a[j])
                    elif u == bv:
                        bld.connect(y_blocks[idx][y_pos[v]], pair_b[j])

    for j in range(bits):
        for idx in range(r):
            chosen = sel_zero[j] if _bit(idx + 1, j, r) == 0 else sel_one[j]
            bld.join([chosen], y_blocks[idx])

    all_y = [v for block in y_blocks for v in block]
    bld.join([joint_s], all_y)
    bld.join([joint_s], pair_a + pair_b)
    bld.join([joint_t], sel_zero + sel_one)

    cover = frozenset(pair_a + pair_b + big + small + [joint_s, joint_t] + sel_zero + sel_one)
    return Instance(
        problem="psi-test",
        graph=bld.graph(),
        cover=cover,
        targets={"s": k, "t": bits},
    )


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------


def perfect_code_to_minor(
    g: Graph, t_side: frozenset, n_side: frozenset, k: int
) -> Instance | bool:
    """Turn an exact-domination instance into a minor test: the terminal side
    becomes a clique in the host, and the query is a clique of all terminals
    plus one hub per chosen dominator.  Returns a bare verdict when counting
    or degeneracy settles the answer outright."""
    _sorted_sides(g, t_side, n_side)
    terminals = sorted(t_side)
    if not terminals:
        return True
    degrees = {g.degree(v) for v in n_side}
    if len(degrees) > 1:
        raise InputShapeError("dominator side must be regular")
    reg = degrees.pop() if degrees else 0
    if reg == 0:
        return False
    if len(terminals) % reg != 0 or k < len(terminals) // reg:
        return False
    chosen = len(terminals) // reg
    if reg >= len(terminals) - 1:
        # a perfect code has at most two members; enumerate directly
        from itertools import combinations

        for combo in combinations(sorted(n_side), chosen):
            covered: set[int] = set()
            ok = True
            for v in combo:
                hits = g.adj(v) & t_side
                if hits & covered:
                    ok = False
                    break
                covered |= hits
            if ok and len(covered) == len(terminals):
                return True
        return False

    host = _Builder()
    host.labels = [f"v{v}" for v in range(g.n)]
    host.edges = set(g.edges())
    host.clique(terminals)

    query = _Builder()
    core = query.block("core", chosen * reg)
    query.clique(core)
    for i in range(chosen):
        hub = query.add(f"hub{i + 1}")
        for j in range(reg):
            query.connect(hub, core[i * reg + j])

    return Instance(
        problem="minor-test",
        graph=host.graph(),
        cover=frozenset(terminals),
        targets={},
        aux={"graph": query.graph()},
    )


def is_to_biclique_instance(g: Graph, k: int, c: int) -> tuple[Graph, int]:
    """Hardness-reduction source: pad with one isolated block and one block
    adjacent to everything else; an independent set of size k becomes an
    induced biclique with sides c and k + 2n + 2c."""
    if c < 1:
        raise ValueError("the fixed side must have at least one vertex")
    n = g.n
    pad = 2 * n + 2 * c
    bld = _Builder()
    bld.labels = [f"v{v}" for v in range(n)]
    bld.edges = set(g.edges())
    isolated = bld.block("iso", pad)
    hubs = bld.block("hub", pad)
    bld.join(hubs, isolated)
    bld.join(hubs, list(range(n)))
    return bld.graph(), k + pad
