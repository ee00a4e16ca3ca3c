"""Acyclic-orientation branch-and-cut for coloring, path-bounded
orientations and frequency assignment."""

import json

from ._aopc import (
    Graph,
    ParseError,
    UnsupportedInstance,
    brute_force_chromatic,
    brute_force_min_diameter,
    chromatic_number,
    classify,
    named_graph,
    parse_dimacs,
    polytope_dimension,
    solve_ao,
    solve_fap_json,
)


def solve_fap(instance, time_limit=300.0, threads=1, seed=1):
    """Solve a FAP instance given as a dict (same fields as the JSON format)
    or as JSON text."""
    text = instance if isinstance(instance, str) else json.dumps(instance)
    return solve_fap_json(text, time_limit=time_limit, threads=threads, seed=seed)


__all__ = [
    "Graph",
    "ParseError",
    "UnsupportedInstance",
    "brute_force_chromatic",
    "brute_force_min_diameter",
    "chromatic_number",
    "classify",
    "named_graph",
    "parse_dimacs",
    "polytope_dimension",
    "solve_ao",
    "solve_fap",
    "solve_fap_json",
]
