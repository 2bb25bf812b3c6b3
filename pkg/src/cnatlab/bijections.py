"""Labelled upper-diagonal CNATs, the psi/phi bijection, and the B(n,k) maps.

An upper-diagonal CNAT of size ``N`` has its column-``q`` leaf on row
``N + 1 - q``. A labelling attaches a strictly increasing tuple of
``N - 1`` positive integers to columns ``1 .. N-1``; the last column is never
labelled.

Two moves take such trees apart:

* the top-row decomposition cuts off the subtree hanging from the
  right-most internal dot of row 1 (``right``) and leaves the rest, closed off
  with a fresh leaf on row 1 in a new last column (``left``);
* the top-row deletion drops row 1 and the last column when the root is the
  only internal dot of row 1.

``psi`` reads a word off a tree by applying whichever move fits, and ``phi``
rebuilds the tree from the word.

>>> t = phi((3, 1, 2))
>>> t.labels, psi(t)
((1, 2, 3), (3, 1, 2))
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, NamedTuple, Sequence

from .cnat import Cell, Cnat, associated_permutation, cnat_count, single_dot
from .perm import (Permutation, PermutationError, decreasing, insert_fixed_point,
                   occurrences, remove_fixed_point)

__all__ = [
    "LabelledCnat", "TopRowSplit", "BijectionError",
    "top_row_internal_columns", "top_row_decomposition", "compose",
    "top_row_deletion", "top_row_insertion", "psi", "phi",
    "fixed_point_bijection", "fixed_point_bijection_inverse",
    "pattern_swap", "pattern_swap_inverse", "upper_diagonal_cnats",
]

PAT_321 = Permutation((3, 2, 1))
PAT_3412 = Permutation((3, 4, 1, 2))


class BijectionError(ValueError):
    """Input outside the domain of a bijection."""


@dataclass(frozen=True)
class LabelledCnat:
    labels: tuple[int, ...]
    cnat: Cnat

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        n = self.cnat.size
        if len(labels) != n - 1:
            raise BijectionError(f"size-{n} tree needs {n - 1} labels, got {len(labels)}")
        if any(not isinstance(x, int) or x < 1 for x in labels):
            raise BijectionError("labels must be positive integers")
        if any(a >= b for a, b in zip(labels, labels[1:])):
            raise BijectionError("labels must be strictly increasing")
        if associated_permutation(self.cnat) != decreasing(n):
            raise BijectionError("labelled CNATs must be upper-diagonal")

    @property
    def size(self) -> int:
        return self.cnat.size

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "cnat": self.cnat.to_json()}

    @classmethod
    def from_json(cls, data: dict | str) -> LabelledCnat:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data["labels"]), Cnat.from_json(data["cnat"]))


class TopRowSplit(NamedTuple):
    left: LabelledCnat
    right: LabelledCnat


def top_row_internal_columns(t: Cnat) -> list[int]:
    return [c for c, r in t.internal() if r == 1]


def _compress(dots: Iterable[Cell]) -> tuple[Cnat, list[int], list[int]]:
    """Squeeze out empty rows and columns; also return the surviving originals."""
    dots = list(dots)
    cols = sorted({c for c, _ in dots})
    rows = sorted({r for _, r in dots})
    ci = {c: i for i, c in enumerate(cols, 1)}
    ri = {r: i for i, r in enumerate(rows, 1)}
    t = Cnat(len(cols), len(rows), frozenset((ci[c], ri[r]) for c, r in dots))
    return t, cols, rows


def top_row_decomposition(t: LabelledCnat) -> TopRowSplit:
    tops = top_row_internal_columns(t.cnat)
    if len(tops) < 2:
        raise BijectionError("top-row decomposition needs at least two internal dots in row 1")
    n = t.size
    r = tops[-1]
    sub = t.cnat.subtree((r, 1))
    right, rcols, _ = _compress(sub)
    rest = (t.cnat.dots - sub) | {(n + 1, 1)}
    left, lcols, _ = _compress(rest)
    label_of = dict(zip(range(1, n), t.labels))
    return TopRowSplit(
        LabelledCnat(tuple(label_of[c] for c in lcols if c < n), left),
        LabelledCnat(tuple(label_of[c] for c in rcols if c < n), right),
    )


def compose(left: LabelledCnat, right: LabelledCnat) -> LabelledCnat:
    """Inverse of :func:`top_row_decomposition`."""
    if set(left.labels) & set(right.labels):
        raise BijectionError("label sets overlap")
    if not right.labels:
        raise BijectionError("right part must have size at least 2")
    labels = tuple(sorted(left.labels + right.labels))
    n = len(labels) + 1
    pos = {lab: q for q, lab in enumerate(labels, 1)}
    dots: set[Cell] = set()
    for part, last in ((left, None), (right, n)):
        m = part.size
        newcol = {c: pos[lab] for c, lab in enumerate(part.labels, 1)}
        if last is not None:
            newcol[m] = last
        for c, y in part.cnat.dots:
            if c not in newcol:
                continue  # the closing leaf of the left part
            if y == 1:
                dots.add((newcol[c], 1))
            else:
                dots.add((newcol[c], n + 1 - newcol[m + 1 - y]))
    return LabelledCnat(labels, Cnat(n, n, frozenset(dots)))


def top_row_deletion(t: LabelledCnat) -> LabelledCnat:
    if t.size < 2:
        raise BijectionError("the single-dot tree has no top row to delete")
    if top_row_internal_columns(t.cnat) != [1]:
        raise BijectionError("row 1 holds internal dots besides the root")
    n = t.size
    dots = frozenset((c, r - 1) for c, r in t.cnat.dots if r > 1 and c < n)
    return LabelledCnat(t.labels[1:], Cnat(n - 1, n - 1, dots))


def top_row_insertion(t: LabelledCnat, k: int) -> LabelledCnat:
    """Inverse of :func:`top_row_deletion`, with ``k`` the new smallest label."""
    if t.labels and k >= t.labels[0]:
        raise BijectionError(f"label {k} must be below {t.labels[0]}")
    n = t.size + 1
    dots = {(c, r + 1) for c, r in t.cnat.dots} | {(1, 1), (n, 1)}
    return LabelledCnat((k,) + t.labels, Cnat(n, n, frozenset(dots)))


def psi(t: LabelledCnat) -> tuple[int, ...]:
    """Word over the labels of ``t``; inverse of :func:`phi`."""
    out: list[int] = []
    stack: list[LabelledCnat | int] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, int):
            out.append(item)
            continue
        if item.size == 1:
            continue
        if top_row_internal_columns(item.cnat) == [1]:
            stack.append(top_row_deletion(item))
            stack.append(item.labels[0])
        else:
            split = top_row_decomposition(item)
            stack.append(split.left)
            stack.append(split.right)
    return tuple(out)


def phi(word: Sequence[int], labels: Sequence[int] | None = None) -> LabelledCnat:
    """Labelled CNAT whose :func:`psi` is ``word``.

    ``labels`` defaults to the sorted letters of ``word``; if given, ``word``
    must use each of them exactly once.
    """
    word = tuple(word)
    if labels is not None and tuple(sorted(word)) != tuple(labels):
        raise BijectionError(f"word {word} is not a permutation of labels {tuple(labels)}")
    if len(set(word)) != len(word) or any(not isinstance(x, int) or x < 1 for x in word):
        raise BijectionError(f"malformed word {word}")
    return _phi(word)


def _phi(w: tuple[int, ...]) -> LabelledCnat:
    if not w:
        return LabelledCnat((), single_dot())
    if w[0] == min(w):
        return top_row_insertion(_phi(w[1:]), w[0])
    k = next(i for i in range(1, len(w)) if w[i] < w[0])
    return compose(_phi(w[k:]), _phi(w[:k]))


def upper_diagonal_cnats(n: int) -> list[LabelledCnat]:
    """All size-``n`` upper-diagonal CNATs, labelled by ``1 .. n-1``, via phi."""
    return [phi(w) for w in permutations(range(1, n))]


def _require_class(p: Permutation, k: int) -> None:
    got = cnat_count(p)
    if got != k:
        raise BijectionError(f"{p} has {got} CNATs, expected {k}")


def fixed_point_bijection(j: int, p: Permutation) -> Permutation:
    """Map ``(j, p)`` with ``p`` in B(n,1) to B(n+1,2) by inserting fixed point ``j``."""
    if not 2 <= j <= p.n:
        raise BijectionError(f"index {j} outside 2..{p.n}")
    _require_class(p, 1)
    return insert_fixed_point(p, j)


def fixed_point_bijection_inverse(q: Permutation) -> tuple[int, Permutation]:
    _require_class(q, 2)
    fps = [i for i in range(2, q.n + 1) if q(i) == i]
    if len(fps) != 1:
        raise BijectionError(f"{q} has fixed points {fps} past position 1")
    return fps[0], remove_fixed_point(q, fps[0])


def pattern_swap(p: Permutation) -> Permutation:
    """B(n,2) -> B(n+1,3): trade the 321 around the fixed point for a 3412.

    >>> pattern_swap(Permutation((3, 2, 1))).word
    (3, 4, 1, 2)
    """
    _require_class(p, 2)
    occ = occurrences(p, PAT_321)
    if len(occ) != 1 or p(occ[0].indices[1]) != occ[0].indices[1]:
        raise BijectionError(f"{p} lacks a unique 321 centred on a fixed point")
    i, j, k = occ[0].indices
    pi, pk = p(i), p(k)
    w = list(insert_fixed_point(p, j + 1).word)
    w[i - 1], w[j - 1], w[j], w[k] = j + 1, pi + 1, pk, j
    return Permutation(tuple(w))


def pattern_swap_inverse(q: Permutation) -> Permutation:
    _require_class(q, 3)
    occ = occurrences(q, PAT_3412)
    if len(occ) != 1:
        raise BijectionError(f"{q} has {len(occ)} occurrences of 3412")
    a, b, c, d = occ[0].indices
    if q(a) != q(d) + 1 or c != b + 1 or q(d) != b:
        raise BijectionError(f"3412 occurrence {occ[0].indices} of {q} has the wrong shape")
    i, j, k = a, b, d - 1
    w = list(q.word)
    w[i - 1], w[j - 1], w[j], w[k] = q(b), q(d), q(a), q(c)
    try:
        return remove_fixed_point(Permutation(tuple(w)), j + 1)
    except PermutationError as exc:
        raise BijectionError(str(exc)) from None
