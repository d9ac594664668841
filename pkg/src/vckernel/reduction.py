"""The single universal reduction rule.

For every subset Y of the cover with |Y| <= budget and every split of Y into
required / forbidden halves, the rule keeps the first ``marks_per_class``
vertices outside the cover whose neighborhood inside Y matches the split
exactly; everything outside the cover that no class marked is deleted.

The empty subset participates (its one split matches every outside vertex),
so with a large enough mark quota the rule is the identity.  "First" means
lowest vertex id, which makes the whole engine a deterministic function, and
marking is a set union across classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, induced_subgraph, verify_vertex_cover


@dataclass(frozen=True)
class MarkClass:
    """One (required, forbidden) split and what it marked."""

    required: tuple[int, ...]
    forbidden: tuple[int, ...]
    candidates: int
    marked: int


@dataclass(frozen=True)
class ReduceReport:
    classes: tuple[MarkClass, ...]
    marked_vertices: frozenset
    kept_old_ids: tuple[int, ...]  # new id i corresponds to kept_old_ids[i]
    removed: int
    size_bound: int

    def describe(self) -> str:
        lines = [
            f"marked {len(self.marked_vertices)} outside vertices, removed {self.removed},"
            f" bound {self.size_bound}"
        ]
        for mc in self.classes:
            lines.append(
                f"  required={list(mc.required)} forbidden={list(mc.forbidden)}"
                f" candidates={mc.candidates} marked={mc.marked}"
            )
        return "\n".join(lines)


def reduce_size_bound(cover_size: int, marks_per_class: int, adjacency_budget: int) -> int:
    """Exact vertex bound: |X| + marks * sum over i<=c of C(|X|, i) * 2^i."""
    total = sum(math.comb(cover_size, i) * 2**i for i in range(adjacency_budget + 1))
    return cover_size + marks_per_class * total


def reduce_graph(
    g: Graph,
    cover: frozenset,
    marks_per_class: int,
    adjacency_budget: int,
) -> tuple[Graph, ReduceReport]:
    """Run the marking rule and return the induced subgraph on the survivors.

    Requires ``cover`` to be a vertex cover (outside vertices must have all
    neighbors inside it).  Survivors keep their relative id order.
    """
    if marks_per_class < 0 or adjacency_budget < 0:
        raise ValueError("marks and budget must be nonnegative")
    if not verify_vertex_cover(g, cover):
        raise ValueError("marking needs a valid vertex cover")

    cover_sorted = tuple(sorted(cover))
    outside = [v for v in range(g.n) if v not in cover]
    marked: set[int] = set()
    classes: list[MarkClass] = []

    for size in range(min(adjacency_budget, len(cover_sorted)) + 1):
        for subset in combinations(cover_sorted, size):
            subset_set = frozenset(subset)
            for split_bits in range(1 << size):
                required = frozenset(subset[i] for i in range(size) if (split_bits >> i) & 1)
                forbidden = subset_set - required
                pool = [
                    v
                    for v in outside
                    if required <= g.adj(v) and not (g.adj(v) & forbidden)
                ]
                take = pool[: marks_per_class]
                marked.update(take)
                classes.append(
                    MarkClass(
                        required=tuple(sorted(required)),
                        forbidden=tuple(sorted(forbidden)),
                        candidates=len(pool),
                        marked=len(take),
                    )
                )

    keep = set(cover) | marked
    reduced, old_ids = induced_subgraph(g, keep)
    report = ReduceReport(
        classes=tuple(classes),
        marked_vertices=frozenset(marked),
        kept_old_ids=old_ids,
        removed=g.n - reduced.n,
        size_bound=reduce_size_bound(len(cover), marks_per_class, adjacency_budget),
    )
    return reduced, report


def remap_vertex_set(report: ReduceReport, vertices: frozenset) -> frozenset:
    """Translate original vertex ids into the reduced graph's ids."""
    index = {old: new for new, old in enumerate(report.kept_old_ids)}
    return frozenset(index[v] for v in vertices if v in index)
