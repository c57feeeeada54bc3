"""Independent checkers for MIS validity, the per-scale degree invariant, and
bad-component statistics.

Everything here recomputes what it needs from the graph and raw node sets; it
deliberately shares no bookkeeping with the algorithms it checks.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

from .graph import Graph, connected_components


@dataclass(frozen=True)
class Violation:
    kind: str  # independence | maximality | invariant | orientation
    witness: tuple
    detail: str

    def to_json(self) -> str:
        return json.dumps(
            {"kind": self.kind, "witness": list(self.witness), "detail": self.detail},
            separators=(",", ":"),
        )


def verify_mis(g: Graph, mis_nodes) -> list[Violation]:
    """Empty iff mis_nodes is independent and every other node has a neighbor in it."""
    mis = set(mis_nodes)
    out: list[Violation] = []
    for u in sorted(mis):
        if not 0 <= u < g.node_count:
            out.append(Violation("independence", (u,), f"node {u} outside the graph"))
            continue
        for v in g.adjacency[u]:
            if v > u and v in mis:
                out.append(Violation("independence", (u, v), f"edge ({u}, {v}) inside the set"))
    for v in range(g.node_count):
        if v in mis:
            continue
        if not any(u in mis for u in g.adjacency[v]):
            out.append(Violation("maximality", (v,), f"node {v} could be added"))
    return out


def check_invariant(g: Graph, state, scale: int, params) -> list[Violation]:
    """Violators of the end-of-scale bound on high-degree active neighbors.

    `state` only needs an `active_nodes` set; degrees are recomputed here from
    scratch.  A node violates when more than max_degree/2^(scale+2) of its
    active neighbors have active degree above max_degree/2^scale + alpha.
    """
    active = set(state.active_nodes)
    degrees = {v: sum(1 for u in g.adjacency[v] if u in active) for v in active}
    high_cut = params.high_degree_cutoff(scale)
    count_cut = params.bad_count_cutoff(scale)
    out = []
    for v in sorted(active):
        count = sum(1 for u in g.adjacency[v] if u in active and degrees[u] > high_cut)
        if count > count_cut:
            out.append(
                Violation(
                    "invariant",
                    (v,),
                    f"node {v} has {count} high-degree active neighbors"
                    f" > {count_cut} at scale {scale}",
                )
            )
    return out


class ComponentSizeReport(NamedTuple):
    max_size: int
    bound: float
    within_bound: bool


def component_size_report(g: Graph, bad_nodes, confidence: float) -> ComponentSizeReport:
    """Largest bad component against the Delta^6 * c * log_Delta(n) yardstick.

    The bound is vacuously large at desk scale; it is reported, not asserted.
    """
    delta = g.max_degree()
    if delta < 2:
        raise ValueError("component size bound needs max degree >= 2")
    n = g.node_count
    bound = delta**6 * confidence * (math.log(n) / math.log(delta))
    comps = connected_components(g, bad_nodes)
    max_size = max((len(c) for c in comps), default=0)
    return ComponentSizeReport(max_size, bound, max_size <= bound)
