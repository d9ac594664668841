"""Kernelization toolkit for graph problems parameterized by a given vertex
cover: a universal marking rule, problem-specific pipelines, exact reference
solvers, and generators for adversarial composed instances."""

from .graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    greedy_vertex_cover,
    induced_subgraph,
    parse_graph,
    path_graph,
    serialize_graph,
    verify_vertex_cover,
)
from .kernels import (
    CompressedForm,
    KernelResult,
    compress_biclique,
    evaluate_compressed,
    kernel_clique_minor,
    kernel_deletion,
    kernel_h_packing,
    kernel_largest_induced,
    kernel_partition,
)
from .minors import MinorModel, find_minor_model, prune_minor_model, verify_minor_model
from .oracles import Instance, Verdict, solve_instance
from .properties import PropertySpec, builtin, intersect_props, parse_property, union_props
from .reduction import ReduceReport, reduce_graph, reduce_size_bound

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Instance",
    "KernelResult",
    "CompressedForm",
    "MinorModel",
    "PropertySpec",
    "ReduceReport",
    "Verdict",
    "builtin",
    "complete_bipartite_graph",
    "complete_graph",
    "compress_biclique",
    "cycle_graph",
    "empty_graph",
    "evaluate_compressed",
    "find_minor_model",
    "greedy_vertex_cover",
    "induced_subgraph",
    "intersect_props",
    "kernel_clique_minor",
    "kernel_deletion",
    "kernel_h_packing",
    "kernel_largest_induced",
    "kernel_partition",
    "parse_graph",
    "parse_property",
    "path_graph",
    "prune_minor_model",
    "reduce_graph",
    "reduce_size_bound",
    "serialize_graph",
    "solve_instance",
    "union_props",
    "verify_minor_model",
    "verify_vertex_cover",
]
