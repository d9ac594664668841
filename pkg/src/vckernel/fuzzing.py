"""Seeded random instances with planted covers, plus the kernel-vs-oracle
equivalence harness.

Every pipeline gets a generator that draws a graph whose first few vertices
form the declared cover (edges only inside the cover or from cover to
outside), then draws problem targets wide enough to hit the trivial branches
now and then.  The harness runs the pipeline, solves both the original and
the shrunken output exactly, and records any disagreement or size-bound
violation.  All randomness flows from one seed; instance i uses its own
child seed so results are order-independent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph, complete_graph
from .kernels import (
    CompressedForm,
    KernelResult,
    biclique_small_instance_bound,
    clique_minor_size_bound,
    compress_biclique,
    evaluate_compressed,
    kernel_clique_minor,
    kernel_deletion,
    kernel_largest_induced,
    kernel_partition,
)
from .oracles import (
    Instance,
    has_induced_biclique,
    has_minor,
    solve_instance,
)
from .properties import PropertySpec, parse_property

PIPELINES = (
    "deletion:k2",
    "deletion:odd-cycle",
    "deletion:chordless-cycle",
    "deletion:f-minor:K3",
    "largest-induced:hamiltonian-cycle",
    "largest-induced:hamiltonian-path",
    "largest-induced:packing:K2",
    "partition:k2:2",
    "partition:k2:3",
    "partition:contains-cycle:2",
    "clique-minor",
    "biclique:1",
    "biclique:2",
)


@dataclass
class FuzzOutcome:
    pipeline: str
    count: int
    mismatches: list[int] = field(default_factory=list)
    bound_violations: list[int] = field(default_factory=list)
    trivial_yes: int = 0
    trivial_no: int = 0
    reduced: int = 0
    failures: list[tuple[int, Instance, object]] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.mismatches and not self.bound_violations


def planted_cover_graph(
    rng: random.Random,
    min_cover: int = 2,
    max_cover: int = 5,
    max_n: int = 14,
) -> tuple[Graph, frozenset]:
    """Random graph whose vertices 0..x-1 form a vertex cover by construction."""
    x = rng.randint(min_cover, max_cover)
    outside = rng.randint(0, max_n - x)
    n = x + outside
    p_in = rng.uniform(0.15, 0.9)
    p_out = rng.uniform(0.15, 0.8)
    edges = []
    for u in range(x):
        for v in range(u + 1, x):
            if rng.random() < p_in:
                edges.append((u, v))
    for u in range(x):
        for v in range(x, n):
            if rng.random() < p_out:
                edges.append((u, v))
    return Graph.from_edges(n, edges), frozenset(range(x))


def _parse_pipeline(key: str) -> tuple[str, PropertySpec | None, dict]:
    parts = key.split(":")
    kind = parts[0]
    if kind == "deletion":
        return "deletion", parse_property(":".join(parts[1:])), {}
    if kind == "largest-induced":
        return "largest-induced", parse_property(":".join(parts[1:])), {}
    if kind == "partition":
        return "partition", parse_property(":".join(parts[1:-1])), {"q": int(parts[-1])}
    if kind == "clique-minor":
        return "clique-minor", None, {}
    if kind == "biclique":
        return "biclique", None, {"c": int(parts[1])}
    raise ValueError(f"unknown pipeline {key!r}")


def make_pipeline_instance(key: str, rng: random.Random, max_n: int = 14) -> Instance:
    kind, prop, params = _parse_pipeline(key)
    g, cover = planted_cover_graph(rng, max_n=max_n)
    if kind == "deletion":
        k = rng.randint(0, len(cover) + 1)
        return Instance("deletion", g, cover, {"k": k}, prop)
    if kind == "largest-induced":
        k = rng.randint(1, g.n + 2)
        return Instance("largest-induced", g, cover, {"k": k}, prop)
    if kind == "partition":
        return Instance("partition", g, cover, {"q": params["q"]}, prop)
    if kind == "clique-minor":
        t = rng.randint(1, len(cover) + 2)
        return Instance("clique-minor", g, cover, {"t": t})
    if kind == "biclique":
        outside = g.n - len(cover)
        t = rng.randint(1, max(outside + 2, 2))
        return Instance("biclique-induced", g, cover, {"s": params["c"], "t": t})
    raise ValueError(f"unknown pipeline {key!r}")


def run_pipeline(key: str, inst: Instance) -> KernelResult | CompressedForm:
    kind, prop, params = _parse_pipeline(key)
    if kind == "deletion":
        return kernel_deletion(inst.graph, inst.cover, inst.targets["k"], inst.property)
    if kind == "largest-induced":
        return kernel_largest_induced(inst.graph, inst.cover, inst.targets["k"], inst.property)
    if kind == "partition":
        return kernel_partition(inst.graph, inst.cover, inst.targets["q"], inst.property)
    if kind == "clique-minor":
        return kernel_clique_minor(inst.graph, inst.cover, inst.targets["t"])
    if kind == "biclique":
        return compress_biclique(inst.graph, inst.cover, inst.targets["t"], inst.targets["s"])
    raise ValueError(f"unknown pipeline {key!r}")


def oracle_answer(inst: Instance, ceiling: int | None = None) -> bool:
    if inst.problem == "biclique-induced":
        return bool(
            has_induced_biclique(inst.graph, inst.targets["s"], inst.targets["t"], ceiling)
        )
    if inst.problem == "clique-minor":
        t = inst.targets["t"]
        return bool(has_minor(inst.graph, complete_graph(t), ceiling, query_ceiling=max(8, t)))
    return bool(solve_instance(inst, ceiling))


def result_answer(result: KernelResult | CompressedForm, ceiling: int | None = None) -> bool:
    if isinstance(result, CompressedForm):
        return evaluate_compressed(result, ceiling)
    if result.verdict == "trivial-yes":
        return True
    if result.verdict == "trivial-no":
        return False
    return oracle_answer(result.instance, ceiling)


def check_size_bound(key: str, inst: Instance, result: KernelResult | CompressedForm) -> bool:
    """True when the output respects its pipeline's exact vertex bound."""
    cover_size = len(inst.cover)
    if isinstance(result, CompressedForm):
        if result.kind == "small-instance":
            c = inst.targets["s"]
            return result.instance.graph.n <= biclique_small_instance_bound(cover_size, c)
        return True
    if result.verdict != "reduced":
        return True
    if key == "clique-minor":
        return result.instance.graph.n <= clique_minor_size_bound(cover_size)
    return result.instance.graph.n <= result.size_bound


def fuzz_pipeline(
    key: str,
    count: int,
    seed: int,
    max_n: int = 14,
    ceiling: int | None = None,
    keep_failures: bool = False,
) -> FuzzOutcome:
    outcome = FuzzOutcome(pipeline=key, count=count)
    for i in range(count):
        rng = random.Random((seed * 1_000_003 + i) & 0xFFFFFFFF)
        inst = make_pipeline_instance(key, rng, max_n=max_n)
        result = run_pipeline(key, inst)
        if isinstance(result, KernelResult):
            if result.verdict == "trivial-yes":
                outcome.trivial_yes += 1
            elif result.verdict == "trivial-no":
                outcome.trivial_no += 1
            else:
                outcome.reduced += 1
        want = oracle_answer(inst, ceiling)
        got = result_answer(result, ceiling)
        if want != got:
            outcome.mismatches.append(i)
            if keep_failures:
                outcome.failures.append((i, inst, result))
        if not check_size_bound(key, inst, result):
            outcome.bound_violations.append(i)
    return outcome


def summary_lines(outcome: FuzzOutcome) -> list[str]:
    lines = [
        f"pipeline {outcome.pipeline}: {outcome.count} instances,"
        f" {len(outcome.mismatches)} mismatches, {len(outcome.bound_violations)} bound violations",
        f"  verdicts: reduced={outcome.reduced} trivial-yes={outcome.trivial_yes}"
        f" trivial-no={outcome.trivial_no}",
    ]
    for i in sorted(outcome.mismatches):
        lines.append(f"  mismatch at instance {i}")
    for i in sorted(outcome.bound_violations):
        lines.append(f"  bound violation at instance {i}")
    return lines
