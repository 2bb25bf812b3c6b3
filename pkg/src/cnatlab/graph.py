"""Simple undirected graphs on integer labels and their rooted acyclic orientations.

Adjacency is held as one bitmask per vertex (bit ``i`` is the ``i``-th
smallest label), so ``has_edge`` is a constant-time probe for the graph
sizes the harness deals with.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .perm import Permutation, inversions

__all__ = [
    "Graph", "GraphError", "Orientation",
    "permutation_graph", "complete_graph", "cycle_graph", "path_graph",
    "is_connected", "prune", "induced_subgraph", "is_tree", "is_cycle",
    "rooted_acyclic_orientations", "count_rooted_acyclic_orientations",
]


class GraphError(ValueError):
    pass


class Graph:
    """Immutable simple graph. Vertices are arbitrary integers."""

    __slots__ = ("vertices", "edges", "_index", "_adj")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]] = ()):
        self.vertices: tuple[int, ...] = tuple(sorted(set(vertices)))
        self._index = {v: i for i, v in enumerate(self.vertices)}
        adj = [0] * len(self.vertices)
        norm = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at {u}")
            if u not in self._index or v not in self._index:
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in norm:
                raise GraphError(f"multi-edge ({a}, {b})")
            norm.add((a, b))
            adj[self._index[a]] |= 1 << self._index[b]
            adj[self._index[b]] |= 1 << self._index[a]
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(norm))
        self._adj = tuple(adj)

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self.vertices)}, edges={list(self.edges)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and (self.vertices, self.edges) == (other.vertices, other.edges)

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self._index

    def has_edge(self, u: int, v: int) -> bool:
        i, j = self._index.get(u), self._index.get(v)
        if i is None or j is None:
            return False
        return bool(self._adj[i] >> j & 1)

    def neighbours(self, v: int) -> list[int]:
        mask = self._adj[self._index[v]]
        return [w for i, w in enumerate(self.vertices) if mask >> i & 1]

    def degree(self, v: int) -> int:
        return bin(self._adj[self._index[v]]).count("1")

    def add_edge(self, u: int, v: int) -> Graph:
        return Graph(self.vertices, self.edges + ((u, v),))

    def remove_vertex(self, v: int) -> Graph:
        return Graph([w for w in self.vertices if w != v],
                     [e for e in self.edges if v not in e])

    def subdivide(self, u: int, v: int, new: int | None = None) -> Graph:
        """Replace edge ``uv`` by a path ``u - new - v``."""
        if not self.has_edge(u, v):
            raise GraphError(f"({u}, {v}) is not an edge")
        if new is None:
            new = max(self.vertices) + 1
        if new in self:
            raise GraphError(f"vertex {new} already present")
        a, b = min(u, v), max(u, v)
        edges = [e for e in self.edges if e != (a, b)] + [(u, new), (new, v)]
        return Graph(self.vertices + (new,), edges)

    # -- serialisation ---------------------------------------------------

    def to_text(self) -> str:
        if self.vertices != tuple(range(1, len(self) + 1)):
            raise GraphError("text format needs vertices labelled 1..V")
        lines = [f"{len(self)} {len(self.edges)}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Graph:
        rows = [line.split() for line in text.strip().splitlines() if line.strip()]
        nv, ne = map(int, rows[0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
        if len(edges) != ne:
            raise GraphError(f"header announces {ne} edges, found {len(edges)}")
        return cls(range(1, nv + 1), edges)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict | str) -> Graph:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], [tuple(e) for e in data["edges"]])


@dataclass(frozen=True)
class Orientation:
    """A direction for every edge of ``base``; ``arcs`` holds ``(tail, head)`` pairs."""
    base: Graph
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        got = sorted((min(a), max(a)) for a in self.arcs)
        if got != list(self.base.edges):
            raise GraphError("orientation must direct every base edge exactly once")

    def in_degree(self, v: int) -> int:
        return sum(1 for _, h in self.arcs if h == v)

    def out_degree(self, v: int) -> int:
        return sum(1 for t, _ in self.arcs if t == v)

    def targets(self) -> list[int]:
        return [v for v in self.base.vertices if self.out_degree(v) == 0]

    def is_acyclic(self) -> bool:
        succ = {v: [] for v in self.base.vertices}
        indeg = {v: 0 for v in self.base.vertices}
        for t, h in self.arcs:
            succ[t].append(h)
            indeg[h] += 1
        stack = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen == len(self.base)

    def direction_key(self) -> tuple[int, ...]:
        """0 where the edge points from its smaller to its larger end, else 1."""
        lookup = {(min(a), max(a)): int(a[0] > a[1]) for a in self.arcs}
        return tuple(lookup[e] for e in self.base.edges)


def permutation_graph(p: Permutation) -> Graph:
    if p.n < 1:
        raise GraphError("permutation graph needs n >= 1")
    return Graph(range(1, p.n + 1), inversions(p))


def complete_graph(n: int, start: int = 1) -> Graph:
    vs = range(start, start + n)
    return Graph(vs, [(u, v) for u in vs for v in vs if u < v])


def cycle_graph(k: int, start: int = 1) -> Graph:
    vs = list(range(start, start + k))
    return Graph(vs, [(vs[i], vs[(i + 1) % k]) for i in range(k)])


def path_graph(k: int, start: int = 1) -> Graph:
    vs = list(range(start, start + k))
    return Graph(vs, list(zip(vs, vs[1:])))


def _component_mask(g: Graph, start_bit: int, allowed: int) -> int:
    seen = 1 << start_bit
    frontier = seen
    while frontier:
        nxt = 0
        i = 0
        f = frontier
        while f:
            if f & 1:
                nxt |= g._adj[i]
            f >>= 1
            i += 1
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected(g: Graph) -> bool:
    if not g.vertices:
        raise GraphError("connectivity of the empty graph is undefined")
    full = (1 << len(g)) - 1
    return _component_mask(g, 0, full) == full


def is_tree(g: Graph) -> bool:
    return bool(g.vertices) and is_connected(g) and len(g.edges) == len(g) - 1


def is_cycle(g: Graph) -> bool:
    return len(g) >= 3 and is_connected(g) and all(g.degree(v) == 2 for v in g.vertices)


def prune(g: Graph) -> Graph:
    """Strip degree-1 vertices until none remain; a tree collapses to its lowest label."""
    if not g.vertices or not is_connected(g):
        raise GraphError("prune needs a connected graph")
    if is_tree(g):
        return Graph([g.vertices[0]])
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    stack = [v for v, d in deg.items() if d == 1]
    while stack:
        v = stack.pop()
        if v not in alive or deg[v] != 1:
            continue
        alive.discard(v)
        for w in g.neighbours(v):
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return induced_subgraph(g, alive)


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    vs = set(vs)
    missing = vs.difference(g.vertices)
    if missing:
        raise GraphError(f"vertices {sorted(missing)} not in graph")
    return Graph(vs, [(u, v) for u, v in g.edges if u in vs and v in vs])


def _reaches(out: list[int], src: int, dst: int) -> bool:
    """Is bit ``dst`` reachable from bit ``src`` along ``out`` masks?"""
    seen = 1 << src
    frontier = seen
    target = 1 << dst
    while frontier:
        if frontier & target:
            return True
        nxt = 0
        i = 0
        f = frontier
        while f:
            if f & 1:
                nxt |= out[i]
            f >>= 1
            i += 1
        frontier = nxt & ~seen
        seen |= nxt
    return False


def rooted_acyclic_orientations(g: Graph, s: int) -> list[Orientation]:
    """All acyclic orientations of ``g`` whose unique target is ``s``.

    Depth-first over the sorted edge list, trying small->large before
    large->small, so the output is lexicographic in ``direction_key``.
    """
    if s not in g:
        raise GraphError(f"sink {s} is not a vertex")
    if len(g) == 1:
        return [Orientation(g, ())]
    if not is_connected(g):
        return []
    idx = g._index
    n = len(g)
    edges = [(idx[u], idx[v]) for u, v in g.edges]
    sbit = idx[s]
    # position of the last edge touching each vertex; a non-sink vertex with
    # no outgoing arc once its last edge is fixed would be a second target
    last = [-1] * n
    for e, (a, b) in enumerate(edges):
        last[a] = last[b] = e
    out = [0] * n
    outdeg = [0] * n
    chosen: list[tuple[int, int]] = []
    results = []
    labels = g.vertices

    def place(e: int) -> None:
        if e == len(edges):
            arcs = tuple((labels[t], labels[h]) for t, h in chosen)
            results.append(Orientation(g, arcs))
            return
        a, b = edges[e]
        for t, h in ((a, b), (b, a)):
            if t == sbit:
                continue
            if _reaches(out, h, t):
                continue
            out[t] |= 1 << h
            outdeg[t] += 1
            chosen.append((t, h))
            ok = True
            for v in (a, b):
                if last[v] == e and v != sbit and outdeg[v] == 0:
                    ok = False
            if ok:
                place(e + 1)
            chosen.pop()
            outdeg[t] -= 1
            out[t] &= ~(1 << h)

    place(0)
    return results


def count_rooted_acyclic_orientations(g: Graph, s: int) -> int:
    """Count acyclic orientations with unique target ``s`` without building them.

    Vertices are added one at a time starting from ``s``, each step taking the
    adjacent unplaced vertex that keeps the boundary (placed vertices with
    unplaced neighbours) smallest; each new vertex picks which already-placed
    neighbours point into it. Reachability masks reject
    choices that close a directed cycle, and a vertex is cut as soon as all its
    edges are fixed with none leaving it. Only placed vertices that still have
    unplaced neighbours influence the rest of the search, so partial states are
    memoised on reachability and out-degree restricted to that boundary.
    """
    if s not in g:
        raise GraphError(f"sink {s} is not a vertex")
    n = len(g)
    if n == 1:
        return 1
    if not is_connected(g):
        return 0
    adj = g._adj
    sbit = g._index[s]
    order = [sbit]
    placed = 1 << sbit
    full = (1 << n) - 1
    while placed != full:
        # greedy: keep the boundary (placed vertices with unplaced neighbours) small
        best = None
        for w in range(n):
            if placed >> w & 1 or not adj[w] & placed:
                continue
            after = placed | 1 << w
            size = sum(1 for x in range(n) if after >> x & 1 and adj[x] & ~after)
            if best is None or size < best[0]:
                best = (size, w)
        order.append(best[1])
        placed |= 1 << best[1]
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k
    last = [max([pos[v]] + [pos[w] for w in range(n) if adj[v] >> w & 1]) for v in range(n)]
    # boundary after step k: placed vertices with an unplaced neighbour
    boundary = [tuple(v for v in order[: k + 1] if last[v] > k) for k in range(n)]
    plans = [None]
    for k in range(1, n):
        v = order[k]
        nbrs = tuple(w for w in range(n) if adj[v] >> w & 1 and pos[w] < k)
        nmask = sum(1 << w for w in nbrs)
        # an edge to the sink always points into the sink
        free = [w for w in nbrs if w != sbit]
        choices = []
        for c in range(1 << len(free)):
            choices.append(sum(1 << w for t, w in enumerate(free) if c >> t & 1))
        prev = boundary[k - 1]
        slot = {x: t for t, x in enumerate(prev)}
        nbr_slots = tuple(slot[w] for w in nbrs)
        # vertices other than the sink whose final edge is fixed now
        done = sum(1 << x for x in range(n) if x != sbit and last[x] == k and x != v)
        v_done = last[v] == k
        carry = tuple((x, slot.get(x)) for x in boundary[k])
        plans.append((v, nbrs, nbr_slots, nmask, choices, done, v_done, carry,
                      sum(1 << x for x in boundary[k])))
    memo: dict = {}

    def step(k: int, reach: tuple, outm: int) -> int:
        if k == n:
            return 1
        key = (k, reach, outm)
        hit = memo.get(key)
        if hit is not None:
            return hit
        v, nbrs, nbr_slots, nmask, choices, done, v_done, carry, bmask = plans[k]
        vbit = 1 << v
        total = 0
        for in_set in choices:
            via = vbit
            for w, t in zip(nbrs, nbr_slots):
                if not in_set >> w & 1:
                    via |= reach[t]
            if via & in_set:
                continue
            new_out = outm | in_set
            if done & ~new_out:
                continue
            v_out = in_set != nmask
            if v_done and not v_out:
                continue
            new_reach = []
            for x, t in carry:
                if t is None:
                    new_reach.append(via & bmask)
                else:
                    r = reach[t]
                    if r & in_set:
                        r |= via
                    new_reach.append(r & bmask)
            if v_out:
                new_out |= vbit
            total += step(k + 1, tuple(new_reach), new_out & bmask)
        memo[key] = total
        return total

    return step(1, (1 << sbit,) if boundary[0] else (), 0)
