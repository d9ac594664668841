"""Problem-specific kernelization pipelines.

The three meta-pipelines wrap the universal marking rule with the quotas each
problem needs; the clique-minor kernel is rule-based; the induced-biclique
pipeline compresses into a disjunction of independent-set instances instead
of a single equivalent instance (documented in the README: it is a
compression, not a many-one self-reduction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Any

from .graph import Graph, induced_subgraph, verify_vertex_cover
from .oracles import (
    Instance,
    Verdict,
    has_induced_biclique,
    max_independent_set,
    solve_instance,
)
from .properties import PropertySpec, builtin
from .reduction import ReduceReport, reduce_graph, reduce_size_bound, remap_vertex_set

TRIVIAL_YES = "trivial-yes"
TRIVIAL_NO = "trivial-no"
REDUCED = "reduced"


@dataclass(frozen=True)
class KernelResult:
    verdict: str  # trivial-yes | trivial-no | reduced
    instance: Instance | None = None
    size_bound: int | None = None
    trace: tuple[dict[str, Any], ...] = ()
    justification: str | None = None
    report: ReduceReport | None = None

    def answer(self, ceiling: int | None = None) -> bool:
        """Resolve to a boolean, consulting the oracle for reduced output."""
        if self.verdict == TRIVIAL_YES:
            return True
        if self.verdict == TRIVIAL_NO:
            return False
        return bool(solve_instance(self.instance, ceiling))


@dataclass(frozen=True)
class CompressedForm:
    """Output of the biclique pipeline: an outright verdict, one small
    equivalent instance, or a disjunction of independent-set instances."""

    kind: str  # verdict | small-instance | or-of-independent-set
    verdict: bool | None = None
    instance: Instance | None = None
    disjuncts: tuple[tuple[Graph, frozenset, int], ...] = ()
    trace: tuple[dict[str, Any], ...] = ()


def _require_cover(g: Graph, cover: frozenset) -> None:
    if not verify_vertex_cover(g, cover):
        raise ValueError("the supplied set is not a vertex cover")


def _reduce_pipeline(
    g: Graph,
    cover: frozenset,
    prop: PropertySpec,
    marks: int,
    budget: int,
    problem: str,
    targets: dict[str, int],
) -> KernelResult:
    reduced, report = reduce_graph(g, cover, marks, budget)
    instance = Instance(
        problem=problem,
        graph=reduced,
        cover=remap_vertex_set(report, cover),
        targets=targets,
        property=prop,
    )
    trace = (
        {
            "rule": "reduce",
            "marks_per_class": marks,
            "adjacency_budget": budget,
            "removed": report.removed,
        },
    )
    return KernelResult(
        verdict=REDUCED,
        instance=instance,
        size_bound=report.size_bound,
        trace=trace,
        report=report,
    )


def kernel_deletion(g: Graph, cover: frozenset, k: int, prop: PropertySpec) -> KernelResult:
    """Shrink a vertex-deletion instance; needs the edge guarantee so that
    deleting the whole cover is always a valid fallback solution."""
    _require_cover(g, cover)
    if not prop.has_edge_guarantee:
        raise ValueError(f"property {prop.name} lacks the edge guarantee required here")
    if k >= len(cover):
        return KernelResult(
            verdict=TRIVIAL_YES,
            trace=({"rule": "budget-covers-cover"},),
            justification=f"k={k} >= |cover|={len(cover)}: deleting the cover leaves an edgeless graph",
        )
    marks = k + prop.size_bound(len(cover))
    return _reduce_pipeline(g, cover, prop, marks, prop.adjacencies, "deletion", {"k": k})


def kernel_largest_induced(g: Graph, cover: frozenset, k: int, prop: PropertySpec) -> KernelResult:
    """Shrink a largest-member-subset instance; the property must bound every
    member by its size polynomial, not only minimal ones."""
    _require_cover(g, cover)
    if not prop.bounded_everywhere:
        raise ValueError(f"property {prop.name} does not bound all members by the size polynomial")
    marks = prop.size_bound(len(cover))
    return _reduce_pipeline(g, cover, prop, marks, prop.adjacencies, "largest-induced", {"k": k})


def kernel_h_packing(g: Graph, cover: frozenset, count: int, pattern: Graph) -> KernelResult:
    """Disjoint-copies packing, phrased as largest-induced with the target
    scaled by the pattern size.  Edgeless patterns are counting questions."""
    _require_cover(g, cover)
    if pattern.n == 0:
        raise ValueError("packing pattern must have at least one vertex")
    if pattern.edge_count == 0:
        verdict = TRIVIAL_YES if g.n >= count * pattern.n else TRIVIAL_NO
        return KernelResult(
            verdict=verdict,
            trace=({"rule": "edgeless-pattern-count"},),
            justification=f"edgeless pattern: answer is |V|={g.n} >= {count * pattern.n}",
        )
    prop = builtin("perfect-h-packing", pattern)
    return kernel_largest_induced(g, cover, count * pattern.n, prop)


def kernel_partition(g: Graph, cover: frozenset, q: int, prop: PropertySpec) -> KernelResult:
    """Shrink a partition-into-member-free-classes instance."""
    _require_cover(g, cover)
    if q < 0:
        raise ValueError("class count must be nonnegative")
    if q == 0:
        verdict = TRIVIAL_YES if g.n == 0 else TRIVIAL_NO
        return KernelResult(
            verdict=verdict,
            trace=({"rule": "no-classes"},),
            justification="zero classes fit exactly the empty vertex set",
        )
    marks = q * prop.size_bound(len(cover))
    return _reduce_pipeline(g, cover, prop, marks, q * prop.adjacencies, "partition", {"q": q})


# ---------------------------------------------------------------------------
# clique-minor kernel
# ---------------------------------------------------------------------------


def clique_minor_size_bound(cover_size: int) -> int:
    return (cover_size + 1) ** 4


def kernel_clique_minor(g: Graph, cover: frozenset, t: int) -> KernelResult:
    """Rule-based kernel for complete-minor testing.

    Rule 1 fills a cover non-edge once more than (|X|+1)^2 outside vertices
    see both ends; rule 2 answers yes on a simplicial outside vertex of
    degree >= t-1; rule 3 deletes simplicial outside vertices of lower
    degree.  Rules run exhaustively in that order.
    """
    _require_cover(g, cover)
    if t > len(cover) + 1:
        return KernelResult(
            verdict=TRIVIAL_NO,
            trace=({"rule": "target-exceeds-cover"},),
            justification=f"t={t} > |cover|+1={len(cover) + 1}: a complete minor of order t needs cover >= t-1",
        )

    cover_sorted = sorted(cover)
    threshold = (len(cover) + 1) ** 2
    adj = [set(g.adj(v)) for v in range(g.n)]
    alive = set(range(g.n))
    trace: list[dict[str, Any]] = []

    def simplicial_outside():
        for s in sorted(alive):
            if s in cover:
                continue
            nbrs = sorted(adj[s] & alive)
            if all(w in adj[u] for i, u in enumerate(nbrs) for w in nbrs[i + 1 :]):
                yield s, len(nbrs)

    while True:
        fired = False
        # rule 1: fill heavily witnessed cover non-edges
        for i, v in enumerate(cover_sorted):
            for w in cover_sorted[i + 1 :]:
                if w in adj[v]:
                    continue
                common = sum(
                    1 for u in alive if u not in cover and v in adj[u] and w in adj[u]
                )
                if common > threshold:
                    adj[v].add(w)
                    adj[w].add(v)
                    trace.append({"rule": "fill-cover-edge", "u": v, "v": w, "common": common})
                    fired = True
        # rule 2: a simplicial outside vertex with a big clique neighborhood
        for s, deg in simplicial_outside():
            if deg >= t - 1:
                trace.append({"rule": "simplicial-clique-yes", "vertex": s, "degree": deg})
                return KernelResult(
                    verdict=TRIVIAL_YES,
                    trace=tuple(trace),
                    justification=(
                        f"simplicial outside vertex {s} with degree {deg} >= t-1={t - 1}"
                        " spans a complete subgraph of order t"
                    ),
                )
        # rule 3: drop low-degree simplicial outside vertices
        for s, deg in list(simplicial_outside()):
            if deg < t - 1:
                alive.discard(s)
                trace.append({"rule": "drop-simplicial", "vertex": s, "degree": deg})
                fired = True
        if not fired:
            break

    ordered = sorted(alive)
    index = {old: new for new, old in enumerate(ordered)}
    edges = [
        (index[u], index[v])
        for u in ordered
        for v in ordered
        if u < v and v in adj[u]
    ]
    reduced = Graph.from_edges(len(ordered), edges)
    instance = Instance(
        problem="clique-minor",
        graph=reduced,
        cover=frozenset(index[v] for v in cover),
        targets={"t": t},
    )
    return KernelResult(
        verdict=REDUCED,
        instance=instance,
        size_bound=clique_minor_size_bound(len(cover)),
        trace=tuple(trace),
    )


# ---------------------------------------------------------------------------
# induced-biclique compression
# ---------------------------------------------------------------------------


def biclique_small_instance_bound(cover_size: int, c: int) -> int:
    return cover_size + cover_size * math.comb(cover_size, c)


def compress_biclique(g: Graph, cover: frozenset, t: int, c: int, ceiling: int | None = None) -> CompressedForm:
    """Compress "does g contain an induced biclique with sides c and t".

    c is a fixed constant of the pipeline, t is the input target.  Cases:
    tiny t is solved outright; an abundance of outside vertices is an
    immediate yes; t within the cover size yields one small instance; above
    it, one independent-set instance per independent c-subset of the cover,
    each shrunk through the deletion kernel on its complement target.
    """
    _require_cover(g, cover)
    if c < 0 or t < 0:
        raise ValueError("side sizes must be nonnegative")
    trace: list[dict[str, Any]] = []

    if t <= c:
        verdict = bool(has_induced_biclique(g, c, t, ceiling))
        trace.append({"rule": "constant-size-brute-force", "t": t, "c": c})
        return CompressedForm(kind="verdict", verdict=verdict, trace=tuple(trace))

    # discard vertices that cannot sit on either side: with t > c both sides
    # need an independent c-set in the vertex's neighborhood
    alive = set(range(g.n))
    masks = g.adjacency_masks()
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            nbrs = [u for u in sorted(g.adj(v)) if u in alive]
            if not _has_independent_subset(g, nbrs, c):
                alive.discard(v)
                trace.append({"rule": "degree-filter", "vertex": v})
                changed = True

    work, old_ids = induced_subgraph(g, alive)
    cover_now = frozenset(
        new for new, old in enumerate(old_ids) if old in cover
    )
    outside = work.n - len(cover_now)

    cover_classes = math.comb(len(cover_now), c)
    if cover_classes >= 1 and outside >= t * cover_classes:
        # every outside survivor owes its survival to an independent c-set in
        # the cover; with this many survivors one set serves t of them
        trace.append({"rule": "abundant-outside", "outside": outside})
        return CompressedForm(kind="verdict", verdict=True, trace=tuple(trace))

    if t <= len(cover_now):
        trace.append({"rule": "small-instance", "vertices": work.n})
        inst = Instance(
            problem="biclique-induced",
            graph=work,
            cover=cover_now,
            targets={"s": c, "t": t},
        )
        return CompressedForm(kind="small-instance", instance=inst, trace=tuple(trace))

    # t exceeds the cover: the big side leaves the cover, so the c-side is an
    # independent subset of the cover; one independent-set instance per guess
    disjuncts: list[tuple[Graph, frozenset, int]] = []
    for guess in combinations(sorted(cover_now), c):
        if any(work.has_edge(a, b) for a, b in combinations(guess, 2)):
            continue
        common = set(range(work.n))
        for v in guess:
            common &= work.adj(v)
        sub, sub_ids = induced_subgraph(work, common)
        sub_cover = frozenset(new for new, old in enumerate(sub_ids) if old in cover_now)
        dual_k = sub.n - t
        if dual_k < 0:
            trace.append({"rule": "guess-too-small", "guess": list(guess)})
            continue
        inner = kernel_deletion(sub, sub_cover, dual_k, builtin("k2"))
        if inner.verdict == TRIVIAL_YES:
            # enough vertices survive outside the inner cover to supply the big side
            trace.append({"rule": "guess-trivial-yes", "guess": list(guess)})
            return CompressedForm(kind="verdict", verdict=True, trace=tuple(trace))
        inner_inst = inner.instance
        new_target = inner_inst.graph.n - dual_k
        trace.append(
            {
                "rule": "guess-instance",
                "guess": list(guess),
                "vertices": inner_inst.graph.n,
                "target": new_target,
            }
        )
        disjuncts.append((inner_inst.graph, inner_inst.cover, new_target))
    return CompressedForm(kind="or-of-independent-set", disjuncts=tuple(disjuncts), trace=tuple(trace))


def _has_independent_subset(g: Graph, pool: list[int], size: int) -> bool:
    if size == 0:
        return True
    if len(pool) < size:
        return False
    for combo in combinations(pool, size):
        if all(not g.has_edge(a, b) for a, b in combinations(combo, 2)):
            return True
    return False


def evaluate_compressed(form: CompressedForm, ceiling: int | None = None) -> bool:
    """Resolve a compressed form with the exact solvers."""
    if form.kind == "verdict":
        return bool(form.verdict)
    if form.kind == "small-instance":
        return bool(solve_instance(form.instance, ceiling))
    if form.kind == "or-of-independent-set":
        return any(
            max_independent_set(graph, ceiling) >= target
            for graph, _, target in form.disjuncts
        )
    raise ValueError(f"unknown compressed form {form.kind!r}")
