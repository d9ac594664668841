"""JSON-shaped serialization for instances, kernel results, and compressed
forms.

All output is deterministic: keys sorted, lists sorted where order has no
meaning, two-space indent, trailing newline.  ``format_version`` is mandatory
so readers can reject files from a future layout.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .graph import Graph
from .kernels import CompressedForm, KernelResult
from .oracles import Instance
from .properties import parse_property

FORMAT_VERSION = 1

_SET_KEYS = ("A", "B", "T", "N", "Y")


def graph_to_json(g: Graph) -> dict[str, Any]:
    out: dict[str, Any] = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


def graph_from_json(data: dict[str, Any]) -> Graph:
    labels = data.get("labels")
    return Graph.from_edges(data["n"], [tuple(e) for e in data["edges"]], labels)


def instance_to_json(inst: Instance) -> dict[str, Any]:
    aux = None
    if inst.aux is not None:
        aux = {}
        for key, value in inst.aux.items():
            if key == "graph":
                aux[key] = graph_to_json(value)
            else:
                aux[key] = sorted(value)
    return {
        "format_version": FORMAT_VERSION,
        "problem": inst.problem,
        "graph": graph_to_json(inst.graph),
        "cover": sorted(inst.cover) if inst.cover is not None else None,
        "targets": dict(sorted(inst.targets.items())),
        "property": inst.property.name if inst.property is not None else None,
        "aux": aux,
    }


def instance_from_json(data: dict[str, Any]) -> Instance:
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported format version {version!r}")
    aux = None
    if data.get("aux") is not None:
        aux = {}
        for key, value in data["aux"].items():
            if key == "graph":
                aux[key] = graph_from_json(value)
            elif key in _SET_KEYS:
                aux[key] = frozenset(value)
            else:
                aux[key] = value
    prop = None
    if data.get("property"):
        prop = parse_property(data["property"])
    cover = frozenset(data["cover"]) if data.get("cover") is not None else None
    return Instance(
        problem=data["problem"],
        graph=graph_from_json(data["graph"]),
        cover=cover,
        targets={k: int(v) for k, v in data.get("targets", {}).items()},
        property=prop,
        aux=aux,
    )


def kernel_result_to_json(result: KernelResult, explain: bool = False) -> dict[str, Any]:
    out: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "kind": "kernel-result",
        "verdict": result.verdict,
        "justification": result.justification,
        "size_bound": result.size_bound,
        "trace": [dict(sorted(entry.items())) for entry in result.trace],
        "instance": instance_to_json(result.instance) if result.instance is not None else None,
    }
    if explain and result.report is not None:
        out["report"] = {
            "marked": sorted(result.report.marked_vertices),
            "removed": result.report.removed,
            "classes": [
                {
                    "required": list(mc.required),
                    "forbidden": list(mc.forbidden),
                    "candidates": mc.candidates,
                    "marked": mc.marked,
                }
                for mc in result.report.classes
            ],
        }
    return out


def compressed_form_to_json(form: CompressedForm) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "compressed-form",
        "form": form.kind,
        "verdict": form.verdict,
        "instance": instance_to_json(form.instance) if form.instance is not None else None,
        "disjuncts": [
            {"graph": graph_to_json(g), "cover": sorted(cover), "target": target}
            for g, cover, target in form.disjuncts
        ],
        "trace": [dict(sorted(entry.items())) for entry in form.trace],
    }


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def save_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(dumps(instance_to_json(inst)))


def load_instance(path: str | Path) -> Instance:
    return instance_from_json(json.loads(Path(path).read_text()))
