"""Abelian sandpile model on a graph with a sink.

A configuration is a tuple of grain counts over the non-sink vertices in
increasing label order (``SandpileGraph.nonsink``). Recurrence is decided by
the burning test: fire the sink once, stabilise, and compare.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from math import prod

from .graph import (Graph, GraphError, Orientation, count_rooted_acyclic_orientations,
                    is_connected, rooted_acyclic_orientations)

__all__ = [
    "SandpileGraph", "SandpileError", "StateSpaceTooLarge", "Configuration",
    "stabilize", "is_recurrent", "burn", "level", "level_polynomial",
    "recurrent_configs", "minimal_recurrent_configs", "minrec_count",
    "orientation_to_config", "config_to_json", "config_from_json",
    "DEFAULT_STATE_LIMIT",
]

Configuration = tuple[int, ...]

DEFAULT_STATE_LIMIT = 10 ** 8


class SandpileError(ValueError):
    pass


class StateSpaceTooLarge(SandpileError):
    pass


@dataclass(frozen=True)
class SandpileGraph:
    graph: Graph
    sink: int
    nonsink: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.sink not in self.graph:
            raise SandpileError(f"sink {self.sink} is not a vertex")
        if not is_connected(self.graph):
            raise SandpileError("sandpile graph must be connected")
        object.__setattr__(self, "nonsink", tuple(v for v in self.graph.vertices if v != self.sink))

    def degrees(self) -> tuple[int, ...]:
        return tuple(self.graph.degree(v) for v in self.nonsink)

    def check(self, c: Configuration) -> Configuration:
        c = tuple(c)
        if len(c) != len(self.nonsink) or any(x < 0 for x in c):
            raise SandpileError(f"{c} is not a configuration on {len(self.nonsink)} non-sink vertices")
        return c

    def is_stable(self, c: Configuration) -> bool:
        return all(x < d for x, d in zip(c, self.degrees()))


def stabilize(sg: SandpileGraph, c: Configuration, policy: str = "lowest"):
    """Topple unstable vertices until stable.

    Returns ``(stable configuration, topple counts)``. ``policy`` picks the
    next unstable vertex: ``"lowest"`` label first, or ``"fifo"`` in the
    order vertices became unstable. Both reach the same result.
    """
    c = list(sg.check(c))
    g = sg.graph
    slot = {v: i for i, v in enumerate(sg.nonsink)}
    deg = sg.degrees()
    nbrs = [[slot[w] for w in g.neighbours(v) if w != sg.sink] for v in sg.nonsink]
    counts = [0] * len(c)
    if policy == "lowest":
        while True:
            i = next((i for i, x in enumerate(c) if x >= deg[i]), None)
            if i is None:
                break
            c[i] -= deg[i]
            counts[i] += 1
            for j in nbrs[i]:
                c[j] += 1
    elif policy == "fifo":
        queue = deque(i for i, x in enumerate(c) if x >= deg[i])
        queued = set(queue)
        while queue:
            i = queue.popleft()
            queued.discard(i)
            while c[i] >= deg[i]:
                c[i] -= deg[i]
                counts[i] += 1
                for j in nbrs[i]:
                    c[j] += 1
                    if c[j] >= deg[j] and j not in queued:
                        queue.append(j)
                        queued.add(j)
    else:
        raise ValueError(f"unknown toppling policy {policy!r}")
    return tuple(c), tuple(counts)


def burn(sg: SandpileGraph, c: Configuration, policy: str = "lowest"):
    """Add one grain per sink edge and stabilise; returns ``(result, topple counts)``."""
    c = list(sg.check(c))
    for i, v in enumerate(sg.nonsink):
        if sg.graph.has_edge(v, sg.sink):
            c[i] += 1
    return stabilize(sg, tuple(c), policy)


def is_recurrent(sg: SandpileGraph, c: Configuration) -> bool:
    c = sg.check(c)
    if not sg.is_stable(c):
        raise SandpileError(f"{c} is not stable")
    result, counts = burn(sg, c)
    if result != c:
        return False
    assert all(k == 1 for k in counts), "burning topples each non-sink vertex once"
    return True


def level(sg: SandpileGraph, c: Configuration) -> int:
    return sum(sg.check(c)) + sg.graph.degree(sg.sink) - len(sg.graph.edges)


def _stable_space(sg: SandpileGraph, limit: int):
    degs = sg.degrees()
    size = prod(degs)
    if size > limit:
        raise StateSpaceTooLarge(f"{size} stable configurations exceed the limit {limit}")
    return product(*(range(d) for d in degs))


def recurrent_configs(sg: SandpileGraph, limit: int = DEFAULT_STATE_LIMIT) -> list[Configuration]:
    """Every recurrent configuration, by burning each stable one, in lexicographic order."""
    return [c for c in _stable_space(sg, limit) if is_recurrent(sg, c)]


def level_polynomial(sg: SandpileGraph, limit: int = DEFAULT_STATE_LIMIT) -> list[int]:
    """Coefficients of sum over recurrent c of x**level(c), constant term first."""
    coeffs: list[int] = []
    for c in recurrent_configs(sg, limit):
        lv = level(sg, c)
        while len(coeffs) <= lv:
            coeffs.append(0)
        coeffs[lv] += 1
    return coeffs


def orientation_to_config(sg: SandpileGraph, o: Orientation) -> Configuration:
    """In-degree of every non-sink vertex under an ``sink``-rooted acyclic orientation."""
    if o.base != sg.graph:
        raise SandpileError("orientation belongs to a different graph")
    if not o.is_acyclic():
        raise SandpileError("orientation has a directed cycle")
    if o.targets() != [sg.sink]:
        raise SandpileError(f"orientation targets {o.targets()}, expected only {sg.sink}")
    indeg = {v: 0 for v in sg.graph.vertices}
    for _, h in o.arcs:
        indeg[h] += 1
    return tuple(indeg[v] for v in sg.nonsink)


def minimal_recurrent_configs(sg: SandpileGraph, method: str = "orientations",
                              limit: int = DEFAULT_STATE_LIMIT) -> list[Configuration]:
    """Minimal recurrent configurations in lexicographic order.

    ``method="burning"`` scans the stable space and keeps level-0 recurrent
    configurations; ``method="orientations"`` maps every sink-rooted acyclic
    orientation to its in-degree vector and has no state-space limit.
    """
    if method == "burning":
        return [c for c in recurrent_configs(sg, limit) if level(sg, c) == 0]
    if method == "orientations":
        return sorted(orientation_to_config(sg, o)
                      for o in rooted_acyclic_orientations(sg.graph, sg.sink))
    raise ValueError(f"unknown method {method!r}")


def minrec_count(g: Graph) -> int:
    """Number of minimal recurrent configurations, sinking at the lowest label."""
    if not g.vertices or not is_connected(g):
        raise GraphError("minrec_count needs a connected graph")
    return count_rooted_acyclic_orientations(g, g.vertices[0])


def config_to_json(sg: SandpileGraph, c: Configuration) -> dict:
    c = sg.check(c)
    return {"sink": sg.sink, "grains": {str(v): x for v, x in zip(sg.nonsink, c)}}


def config_from_json(sg: SandpileGraph, data: dict | str) -> Configuration:
    if isinstance(data, str):
        data = json.loads(data)
    if data["sink"] != sg.sink:
        raise SandpileError(f"configuration sink {data['sink']} != {sg.sink}")
    grains = {int(k): v for k, v in data["grains"].items()}
    if set(grains) != set(sg.nonsink):
        raise SandpileError("grain keys must be exactly the non-sink vertices")
    return sg.check(tuple(grains[v] for v in sg.nonsink))
