"""Non-ambiguous trees on a dot grid, and complete ones (CNATs) per permutation.

Cells are ``(column, row)`` pairs, columns numbered left to right and rows
top to bottom, both from 1. The root sits at ``(1, 1)``.

Every CNAT on the ``n x n`` grid whose leaves trace a permutation ``p`` has
all of its internal dots strictly above the leaf of their column and strictly
left of the leaf of their row. Scanning candidate cells row by row, left to
right, the dots above and to the left of a cell are already decided, so the
"exactly one parent" rule can be enforced at the moment a dot is placed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graph import count_rooted_acyclic_orientations, permutation_graph
from .perm import Permutation, is_irreducible

__all__ = [
    "DotGrid", "Cnat", "NatError", "BoundsError", "EmptyLineError", "ParentError",
    "IncompleteError", "validate", "associated_permutation", "enumerate_cnats",
    "enumerate_cnats_bruteforce", "cnat_count", "row_statistics", "single_dot",
    "cnat_from_cells",
]

Cell = tuple[int, int]


class NatError(ValueError):
    """The grid is not a (complete) non-ambiguous tree."""


class BoundsError(NatError):
    pass


class EmptyLineError(NatError):
    pass


class ParentError(NatError):
    pass


class IncompleteError(NatError):
    pass


@dataclass(frozen=True)
class DotGrid:
    cols: int
    rows: int
    dots: frozenset[Cell]

    def __post_init__(self):
        dots = list(self.dots)
        object.__setattr__(self, "dots", frozenset(dots))
        if len(self.dots) != len(dots):
            raise BoundsError("duplicate cells")
        if self.cols < 1 or self.rows < 1:
            raise BoundsError("grid needs at least one row and one column")
        for c, r in self.dots:
            if not (1 <= c <= self.cols and 1 <= r <= self.rows):
                raise BoundsError(f"cell ({c}, {r}) outside {self.cols}x{self.rows} grid")

    def sorted_dots(self) -> list[Cell]:
        """Dots sorted by (row, column)."""
        return sorted(self.dots, key=lambda d: (d[1], d[0]))

    def to_json(self) -> dict:
        return {"cols": self.cols, "rows": self.rows, "dots": [list(d) for d in self.sorted_dots()]}

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"] + [f"{c} {r}" for c, r in self.sorted_dots()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, data: dict | str) -> DotGrid:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["cols"], data["rows"], frozenset((c, r) for c, r in data["dots"]))

    @classmethod
    def from_text(cls, text: str) -> DotGrid:
        rows = [line.split() for line in text.strip().splitlines() if line.strip()]
        m, n = map(int, rows[0])
        return cls(n, m, frozenset((int(c), int(r)) for c, r in rows[1:]))


class Cnat(DotGrid):
    """A DotGrid known to satisfy the NAT conditions and completeness.

    Build one through :func:`validate`; internal constructors that produce
    valid trees by design call ``Cnat(cols, rows, dots)`` directly.
    """

    @property
    def size(self) -> int:
        return len(self.leaves())

    def leaves(self) -> list[Cell]:
        lowest = {}
        for c, r in self.dots:
            lowest[c] = max(lowest.get(c, 0), r)
        return sorted(((c, r) for c, r in lowest.items()), key=lambda d: d[0])

    def internal(self) -> list[Cell]:
        leaf = set(self.leaves())
        return sorted((d for d in self.dots if d not in leaf), key=lambda d: (d[1], d[0]))

    def parent(self, dot: Cell) -> Cell | None:
        c, r = dot
        above = [y for x, y in self.dots if x == c and y < r]
        if above:
            return (c, max(above))
        left = [x for x, y in self.dots if y == r and x < c]
        if left:
            return (max(left), r)
        return None

    def children(self, dot: Cell) -> list[Cell]:
        c, r = dot
        below = [y for x, y in self.dots if x == c and y > r]
        right = [x for x, y in self.dots if y == r and x > c]
        out = []
        if below:
            out.append((c, min(below)))
        if right:
            out.append((min(right), r))
        return out

    def subtree(self, dot: Cell) -> set[Cell]:
        out = set()
        stack = [dot]
        while stack:
            d = stack.pop()
            out.add(d)
            stack.extend(self.children(d))
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> Cnat:
        return validate(DotGrid.from_json(data))

    @classmethod
    def from_text(cls, text: str) -> Cnat:
        return validate(DotGrid.from_text(text))


def single_dot() -> Cnat:
    return Cnat(1, 1, frozenset({(1, 1)}))


def validate(g: DotGrid) -> Cnat:
    """Check the NAT conditions and completeness, raising on the first violation."""
    cols = {c for c, _ in g.dots}
    rows = {r for _, r in g.dots}
    for c in range(1, g.cols + 1):
        if c not in cols:
            raise EmptyLineError(f"column {c} has no dot")
    for r in range(1, g.rows + 1):
        if r not in rows:
            raise EmptyLineError(f"row {r} has no dot")
    for c, r in sorted(g.dots, key=lambda d: (d[1], d[0])):
        if (c, r) == (1, 1):
            continue
        up = any(x == c and y < r for x, y in g.dots)
        left = any(y == r and x < c for x, y in g.dots)
        if up and left:
            raise ParentError(f"dot ({c}, {r}) has a dot above and a dot to its left")
        if not up and not left:
            raise ParentError(f"dot ({c}, {r}) has no parent")
    for c, r in sorted(g.dots, key=lambda d: (d[1], d[0])):
        down = any(x == c and y > r for x, y in g.dots)
        right = any(y == r and x > c for x, y in g.dots)
        if down != right:
            raise IncompleteError(f"dot ({c}, {r}) has only one child")
    return Cnat(g.cols, g.rows, g.dots)


def associated_permutation(t: Cnat) -> Permutation:
    """Row of each column's leaf, read left to right."""
    return Permutation(tuple(r for _, r in t.leaves()))


def _candidates(p: Permutation) -> list[Cell]:
    inv = p.inverse().word
    return [(c, r) for r in range(1, p.n + 1) for c in range(1, p.n + 1)
            if r < p.word[c - 1] and c < inv[r - 1]]


def _sort_key(t: Cnat):
    return tuple(t.internal())


def enumerate_cnats(p: Permutation) -> list[Cnat]:
    """All CNATs whose leaves form ``p``, ordered by their internal-dot lists."""
    n = p.n
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return [single_dot()]
    if not is_irreducible(p):
        return []
    leaf_row = {c: p.word[c - 1] for c in range(1, n + 1)}
    leaf_col = {r: c for c, r in leaf_row.items()}
    # each row, left to right: ("cand", c) may be dotted; ("leaf", c) must be
    events = []
    cand = set(_candidates(p))
    for r in range(1, n + 1):
        row = [(c, "cand") for c in range(1, n + 1) if (c, r) in cand]
        row.append((leaf_col[r], "leaf"))
        events.append(sorted(row))
    col_used = [False] * (n + 2)
    results: list[Cnat] = []
    chosen: list[Cell] = []

    def walk(r: int, idx: int, row_used: bool) -> None:
        if r > n:
            if len(chosen) == n - 1:
                dots = frozenset(chosen) | frozenset((c, leaf_row[c]) for c in leaf_row)
                results.append(Cnat(n, n, dots))
            return
        if len(chosen) > n - 1:
            return
        row = events[r - 1]
        if idx == len(row):
            walk(r + 1, 0, False)
            return
        c, kind = row[idx]
        up = col_used[c]
        root = (c, r) == (1, 1)
        ok_dot = root or (up != row_used)
        if kind == "leaf":
            if ok_dot:
                walk(r, idx + 1, True)
            return
        if root:
            # the root is forced
            col_used[c] = True
            chosen.append((c, r))
            walk(r, idx + 1, True)
            chosen.pop()
            col_used[c] = up
            return
        walk(r, idx + 1, row_used)
        if ok_dot:
            col_used[c] = True
            chosen.append((c, r))
            walk(r, idx + 1, True)
            chosen.pop()
            col_used[c] = up

    walk(1, 0, False)
    results.sort(key=_sort_key)
    return results


def enumerate_cnats_bruteforce(p: Permutation) -> list[Cnat]:
    """Slow oracle: every (n-1)-subset of candidate cells, fully validated."""
    n = p.n
    if n == 1:
        return [single_dot()]
    if not is_irreducible(p):
        return []
    leaves = frozenset((c, p.word[c - 1]) for c in range(1, n + 1))
    cand = _candidates(p)
    out = []
    for internal in combinations(cand, n - 1):
        try:
            t = validate(DotGrid(n, n, leaves | frozenset(internal)))
        except NatError:
            continue
        if associated_permutation(t) == p:
            out.append(t)
    out.sort(key=_sort_key)
    return out


def cnat_count(p: Permutation) -> int:
    """Number of CNATs with permutation ``p``, via sink-rooted acyclic orientations."""
    if p.n < 1:
        raise ValueError("need n >= 1")
    if not is_irreducible(p):
        return 0
    return count_rooted_acyclic_orientations(permutation_graph(p), 1)


def row_statistics(t: Cnat) -> tuple[int, list[int]]:
    """``(rows holding only their leaf, columns of internal dots in the top row)``."""
    internal = t.internal()
    busy = {r for _, r in internal}
    empty = sum(1 for r in range(1, t.rows + 1) if r not in busy)
    top = sorted(c for c, r in internal if r == 1)
    return empty, top


def cnat_from_cells(cols: int, rows: int, cells: Iterable[Cell]) -> Cnat:
    return validate(DotGrid(cols, rows, frozenset(cells)))
