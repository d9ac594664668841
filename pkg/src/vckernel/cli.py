"""Command-line entry point.

Subcommands: ``kernelize`` (shrink an instance file), ``solve`` (exact
answer with witness), ``fuzz`` (seeded kernel-vs-oracle equivalence runs),
``gen`` (random instances, anchor graphs, gadget compositions).

Exit codes: 0 success / reduced output, 10 trivial yes, 11 trivial no,
64 usage or validation error, 65 exact-solver ceiling exceeded, 66 unreadable
input.  All output is byte-deterministic for fixed arguments and seeds.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from .errors import CeilingExceeded, GraphParseError, InputShapeError
from .gadgets import (
    compose_biclique,
    compose_induced_matching,
    compose_induced_path,
    compose_psi,
    is_to_biclique_instance,
    make_psi,
    perfect_code_to_minor,
    psi_cover,
)
from .graph import Graph, greedy_vertex_cover, parse_graph
from .instance_io import (
    compressed_form_to_json,
    dumps,
    instance_from_json,
    instance_to_json,
    kernel_result_to_json,
    load_instance,
    save_instance,
)
from .kernels import (
    CompressedForm,
    compress_biclique,
    kernel_clique_minor,
    kernel_deletion,
    kernel_largest_induced,
    kernel_partition,
)
from .minors import MinorModel
from .oracles import Instance, solve_instance
from .fuzzing import PIPELINES, fuzz_pipeline, summary_lines
from .properties import parse_property

EXIT_OK = 0
EXIT_TRIVIAL_YES = 10
EXIT_TRIVIAL_NO = 11
EXIT_USAGE = 64
EXIT_CEILING = 65
EXIT_INPUT = 66


def _default_ceiling(args) -> int | None:
    if getattr(args, "ceiling", None) is not None:
        return args.ceiling
    env = os.environ.get("VCKERNEL_CEILING")
    return int(env) if env else None


def _jsonable(value):
    if isinstance(value, MinorModel):
        return [sorted(b) for b in value.branch_sets]
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items())}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# kernelize
# ---------------------------------------------------------------------------


def cmd_kernelize(args) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, ValueError, KeyError) as err:
        print(f"error: cannot read instance: {err}", file=sys.stderr)
        return EXIT_INPUT

    problem = args.problem or inst.problem
    prop = inst.property
    if args.property:
        try:
            prop = parse_property(args.property)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_USAGE
    targets = dict(inst.targets)
    for name in ("k", "t", "s", "q", "c"):
        value = getattr(args, name)
        if value is not None:
            targets[name] = value

    cover = inst.cover
    cover_note = None
    if cover is None:
        if not args.auto_cover:
            print("error: instance has no cover; pass --auto-cover to compute one", file=sys.stderr)
            return EXIT_USAGE
        cover = greedy_vertex_cover(inst.graph)
        cover_note = f"greedy cover of size {len(cover)} computed"

    try:
        if problem == "deletion":
            result = kernel_deletion(inst.graph, cover, targets["k"], prop)
        elif problem == "largest-induced":
            result = kernel_largest_induced(inst.graph, cover, targets["k"], prop)
        elif problem == "partition":
            result = kernel_partition(inst.graph, cover, targets["q"], prop)
        elif problem == "clique-minor":
            result = kernel_clique_minor(inst.graph, cover, targets["t"])
        elif problem == "biclique-induced":
            result = compress_biclique(inst.graph, cover, targets["t"], targets["s"])
        else:
            print(f"error: no kernelization pipeline for problem {problem!r}", file=sys.stderr)
            return EXIT_USAGE
    except KeyError as err:
        print(f"error: missing target {err}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE

    if isinstance(result, CompressedForm):
        payload = compressed_form_to_json(result)
        payload["input_vertices"] = inst.graph.n
        report = dumps(payload)
        if cover_note:
            payload["cover_note"] = cover_note
        _emit(report, args.out)
        if result.kind == "verdict":
            return EXIT_TRIVIAL_YES if result.verdict else EXIT_TRIVIAL_NO
        return EXIT_OK

    payload = kernel_result_to_json(result, explain=args.explain)
    payload["input_vertices"] = inst.graph.n
    payload["output_vertices"] = result.instance.graph.n if result.instance else None
    if cover_note:
        payload["cover_note"] = cover_note
    report = dumps(payload)
    sys.stdout.write(report)
    if args.out and result.instance is not None:
        save_instance(result.instance, args.out)
    if result.verdict == "trivial-yes":
        return EXIT_TRIVIAL_YES
    if result.verdict == "trivial-no":
        return EXIT_TRIVIAL_NO
    return EXIT_OK


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, ValueError, KeyError) as err:
        print(f"error: cannot read instance: {err}", file=sys.stderr)
        return EXIT_INPUT
    try:
        verdict = solve_instance(inst, _default_ceiling(args))
    except CeilingExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CEILING
    print("yes" if verdict.value else "no")
    if verdict.value:
        print(dumps({"witness": _jsonable(verdict.witness)}), end="")
    return EXIT_OK


# ---------------------------------------------------------------------------
# fuzz
# ---------------------------------------------------------------------------


def cmd_fuzz(args) -> int:
    if args.pipeline not in PIPELINES:
        print(f"error: unknown pipeline {args.pipeline!r}; options: {', '.join(PIPELINES)}", file=sys.stderr)
        return EXIT_USAGE
    outcome = fuzz_pipeline(
        args.pipeline,
        args.count,
        args.seed,
        max_n=args.max_n,
        ceiling=_default_ceiling(args),
        keep_failures=bool(args.dump),
    )
    for line in summary_lines(outcome):
        print(line)
    if args.dump and outcome.failures:
        dump_dir = Path(args.dump)
        dump_dir.mkdir(parents=True, exist_ok=True)
        for i, inst, _result in outcome.failures:
            save_instance(inst, dump_dir / f"mismatch-{i:05d}.json")
        print(f"wrote {len(outcome.failures)} mismatch artifacts to {dump_dir}")
    return EXIT_OK if outcome.clean else 1


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def cmd_gen_random(args) -> int:
    rng = random.Random(args.seed)
    g = Graph.from_edges(
        args.n,
        [(u, v) for u in range(args.n) for v in range(u + 1, args.n) if rng.random() < args.p],
    )
    cover = greedy_vertex_cover(g)
    prop = parse_property(args.property) if args.property else None
    targets = {}
    for name in ("k", "t", "s", "q", "c"):
        value = getattr(args, name)
        if value is not None:
            targets[name] = value
    if args.problem in ("deletion", "largest-induced") and "k" not in targets:
        targets["k"] = 2
    if args.problem == "partition" and "q" not in targets:
        targets["q"] = 2
    if args.problem == "clique-minor" and "t" not in targets:
        targets["t"] = 3
    try:
        inst = Instance(args.problem, g, cover, targets, prop)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    _emit(dumps(instance_to_json(inst)), args.out)
    return EXIT_OK


def cmd_gen_psi(args) -> int:
    g = make_psi(args.s, args.t)
    inst = Instance("psi-test", g, psi_cover(), {"s": args.s, "t": args.t})
    _emit(dumps(instance_to_json(inst)), args.out)
    return EXIT_OK


def cmd_gen_gadget(args) -> int:
    kind = args.kind
    try:
        if kind == "is-to-biclique":
            text = Path(args.inputs[0]).read_text()
            g = parse_graph(text)
            if args.k is None or args.c is None:
                print("error: is-to-biclique needs --k and --c", file=sys.stderr)
                return EXIT_USAGE
            bigger, target = is_to_biclique_instance(g, args.k, args.c)
            inst = Instance(
                "biclique-induced",
                bigger,
                greedy_vertex_cover(bigger),
                {"s": args.c, "t": target},
            )
            _emit(dumps(instance_to_json(inst)), args.out)
            return EXIT_OK

        sources = [load_instance(path) for path in args.inputs]
        if kind == "biclique":
            tuples = [(i.graph, i.aux["A"], i.aux["B"], i.targets["k"]) for i in sources]
            composed = compose_biclique(tuples)
        elif kind == "induced-matching":
            tuples = [(i.graph, i.aux["A"], i.aux["B"], i.targets["k"]) for i in sources]
            composed = compose_induced_matching(tuples)
        elif kind == "induced-path":
            tuples = [(i.graph, i.targets["s"], i.targets["t"]) for i in sources]
            composed = compose_induced_path(tuples, segment_length=args.segment_length)
        elif kind == "psi":
            tuples = [(i.graph, i.aux["Y"], i.targets["k"]) for i in sources]
            composed = compose_psi(tuples)
        elif kind == "perfect-code-minor":
            src = sources[0]
            out = perfect_code_to_minor(src.graph, src.aux["T"], src.aux["N"], src.targets["k"])
            if isinstance(out, bool):
                print("yes" if out else "no")
                return EXIT_TRIVIAL_YES if out else EXIT_TRIVIAL_NO
            composed = out
        else:
            print(f"error: unknown gadget kind {kind!r}", file=sys.stderr)
            return EXIT_USAGE
    except (OSError, GraphParseError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (InputShapeError, ValueError, KeyError, TypeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    _emit(dumps(instance_to_json(composed)), args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.gen_kind == "random":
        return cmd_gen_random(args)
    if args.gen_kind == "psi":
        return cmd_gen_psi(args)
    return cmd_gen_gadget(args)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_target_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--c", type=int, default=None)


def _add_gadget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("kind", help="biclique | induced-matching | induced-path | psi | perfect-code-minor | is-to-biclique")
    p.add_argument("inputs", nargs="+", help="source instance files (a graph file for is-to-biclique)")
    p.add_argument("--segment-length", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vckernel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    pk = sub.add_parser("kernelize", help="shrink an instance file")
    pk.add_argument("instance")
    pk.add_argument("--problem", default=None)
    pk.add_argument("--property", default=None)
    _add_target_flags(pk)
    pk.add_argument("--auto-cover", action="store_true")
    pk.add_argument("--out", default=None)
    pk.add_argument("--explain", action="store_true")
    pk.add_argument("--ceiling", type=int, default=None)
    pk.set_defaults(func=cmd_kernelize)

    ps = sub.add_parser("solve", help="run the exact solver on an instance file")
    ps.add_argument("instance")
    ps.add_argument("--ceiling", type=int, default=None)
    ps.set_defaults(func=cmd_solve)

    pf = sub.add_parser("fuzz", help="kernel-vs-oracle equivalence runs")
    pf.add_argument("--pipeline", required=True)
    pf.add_argument("--count", type=int, default=100)
    pf.add_argument("--seed", type=int, default=0)
    pf.add_argument("--max-n", type=int, default=14)
    pf.add_argument("--ceiling", type=int, default=None)
    pf.add_argument("--dump", default=None, help="directory for mismatch artifacts")
    pf.set_defaults(func=cmd_fuzz)

    pg = sub.add_parser("gen", help="generate instances")
    gsub = pg.add_subparsers(dest="gen_kind", required=True)

    pgr = gsub.add_parser("random", help="random graph with a greedy cover")
    pgr.add_argument("--n", type=int, required=True)
    pgr.add_argument("--p", type=float, required=True)
    pgr.add_argument("--seed", type=int, default=0)
    pgr.add_argument("--problem", default="deletion")
    pgr.add_argument("--property", default="k2")
    _add_target_flags(pgr)
    pgr.add_argument("--out", default=None)
    pgr.set_defaults(func=cmd_gen)

    pgp = gsub.add_parser("psi", help="the anchor pattern as an instance")
    pgp.add_argument("s", type=int)
    pgp.add_argument("t", type=int)
    pgp.add_argument("--out", default=None)
    pgp.set_defaults(func=cmd_gen)

    pgg = gsub.add_parser("gadget", help="compose source instances")
    _add_gadget_args(pgg)
    pgg.set_defaults(func=cmd_gen)

    pga = sub.add_parser("gen-gadget", help="alias for gen gadget")
    _add_gadget_args(pga)
    pga.set_defaults(func=cmd_gen_gadget, gen_kind="gadget")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CeilingExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CEILING


if __name__ == "__main__":
    sys.exit(main())
