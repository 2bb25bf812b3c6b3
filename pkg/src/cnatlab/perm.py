"""Permutations in one-line notation, patterns and quadrants.

Positions and values are 1-based throughout, matching the grid convention
used by every module here: column ``i`` (left to right) holds the dot at row
``p_i`` (top to bottom).

>>> p = parse("561243")
>>> p.word
(5, 6, 1, 2, 4, 3)
>>> sorted(descents(p))
[(4, 3), (6, 1)]
>>> is_irreducible(p)
True
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, NamedTuple, Sequence

__all__ = [
    "Permutation", "PermutationError", "PatternOccurrence", "QuadrantProfile",
    "parse", "decreasing", "identity", "all_permutations",
    "inversions", "descents", "ltr_minima", "fixed_points", "statistics",
    "is_irreducible", "occurrences", "contains", "avoids",
    "quadrant_profile", "satisfies_quadrant_condition",
    "insert_fixed_point", "remove_fixed_point",
]


class PermutationError(ValueError):
    """Raised for malformed permutation input or out-of-domain arguments."""


@dataclass(frozen=True, order=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        n = len(word)
        seen = set()
        for v in word:
            if not isinstance(v, int) or isinstance(v, bool):
                raise PermutationError(f"non-integer letter {v!r}")
            if v in seen:
                raise PermutationError(f"duplicate value {v}")
            if not 1 <= v <= n:
                raise PermutationError(f"value {v} out of range 1..{n}")
            seen.add(v)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def __call__(self, i: int) -> int:
        """Value at 1-based position ``i``."""
        return self.word[i - 1]

    def __str__(self) -> str:
        return " ".join(map(str, self.word))

    @property
    def n(self) -> int:
        return len(self.word)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.word, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def to_json(self) -> list[int]:
        return list(self.word)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> Permutation:
        return cls(tuple(data))


class PatternOccurrence(NamedTuple):
    indices: tuple[int, ...]  # 1-based, strictly increasing
    pattern: Permutation


class QuadrantProfile(NamedTuple):
    k: int
    upper_left: int
    lower_left: int
    upper_right: int
    lower_right: int


_TOKEN_SPLIT = re.compile(r"[\s,]+")


def parse(text: str) -> Permutation:
    """Parse ``"5 6 1 2 4 3"``, ``"5,6,1,2,4,3"`` or ``"561243"`` (n <= 9)."""
    text = text.strip()
    if not text:
        return Permutation(())
    tokens = [t for t in _TOKEN_SPLIT.split(text) if t]
    if len(tokens) == 1 and len(tokens[0]) > 1:
        tokens = list(tokens[0])
        if len(tokens) > 9:
            raise PermutationError("contiguous digit form only allowed for n <= 9")
    try:
        values = tuple(int(t) for t in tokens)
    except ValueError:
        bad = next(t for t in tokens if not t.lstrip("-").isdigit())
        raise PermutationError(f"non-integer token {bad!r}") from None
    return Permutation(values)


def decreasing(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order."""
    for w in permutations(range(1, n + 1)):
        yield Permutation(w)


def inversions(p: Permutation) -> set[tuple[int, int]]:
    w = p.word
    return {(w[a], w[b]) for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b]}


def descents(p: Permutation) -> list[tuple[int, int]]:
    w = p.word
    return [(w[a], w[a + 1]) for a in range(len(w) - 1) if w[a] > w[a + 1]]


def ltr_minima(p: Permutation) -> list[int]:
    out = []
    for v in p.word:
        if not out or v < out[-1]:
            out.append(v)
    return out


def fixed_points(p: Permutation) -> list[int]:
    return [i for i, v in enumerate(p.word, 1) if i == v]


def statistics(p: Permutation) -> tuple[list[tuple[int, int]], list[int], list[int]]:
    """Return ``(descents, left-to-right minima, fixed points)``."""
    return descents(p), ltr_minima(p), fixed_points(p)


def is_irreducible(p: Permutation) -> bool:
    """True iff no proper prefix of length k < n is a permutation of [k]."""
    if p.n < 1:
        raise PermutationError("irreducibility needs n >= 1")
    running_max = 0
    for k, v in enumerate(p.word[:-1], 1):
        running_max = max(running_max, v)
        if running_max == k:
            return False
    return True


def _standardize(values: Sequence[int]) -> tuple[int, ...]:
    order = sorted(values)
    rank = {v: r for r, v in enumerate(order, 1)}
    return tuple(rank[v] for v in values)


def occurrences(p: Permutation, pattern: Permutation) -> list[PatternOccurrence]:
    """Every occurrence of ``pattern`` in ``p`` by brute force over index subsets."""
    k = pattern.n
    if k > p.n:
        raise PermutationError("pattern longer than permutation")
    w = p.word
    target = pattern.word
    out = []
    for idx in combinations(range(p.n), k):
        if _standardize([w[i] for i in idx]) == target:
            out.append(PatternOccurrence(tuple(i + 1 for i in idx), pattern))
    return out


def contains(p: Permutation, pattern: Permutation) -> bool:
    return pattern.n <= p.n and bool(occurrences(p, pattern))


def avoids(p: Permutation, pattern: Permutation) -> bool:
    return not contains(p, pattern)


def quadrant_profile(p: Permutation, k: int) -> QuadrantProfile:
    n = p.n
    if not 2 <= k <= n:
        raise PermutationError(f"split index {k} outside 2..{n}")
    ul = ll = ur = lr = 0
    for col, row in enumerate(p.word, 1):
        if col < k:
            if row < k:
                ul += 1
            else:
                ll += 1
        elif row < k:
            ur += 1
        else:
            lr += 1
    return QuadrantProfile(k, ul, ll, ur, lr)


def satisfies_quadrant_condition(p: Permutation) -> bool:
    """Every lower-left k-quadrant, 2 <= k <= n, holds exactly one dot."""
    if p.n < 2:
        raise PermutationError("quadrant condition needs n >= 2")
    if not is_irreducible(p):
        raise PermutationError(f"{p} is reducible")
    return all(quadrant_profile(p, k).lower_left == 1 for k in range(2, p.n + 1))


def insert_fixed_point(p: Permutation, j: int) -> Permutation:
    """Insert the value ``j`` at position ``j``, shifting values >= j up by one.

    >>> insert_fixed_point(parse("521634"), 3).word
    (6, 2, 3, 1, 7, 4, 5)
    """
    if not 2 <= j <= p.n:
        raise PermutationError(f"insertion index {j} outside 2..{p.n}")
    shifted = [v + 1 if v >= j else v for v in p.word]
    return Permutation(tuple(shifted[: j - 1] + [j] + shifted[j - 1:]))


def remove_fixed_point(p: Permutation, j: int) -> Permutation:
    if not 2 <= j <= p.n or p(j) != j:
        raise PermutationError(f"{j} is not a removable fixed point of {p}")
    rest = p.word[: j - 1] + p.word[j:]
    return Permutation(tuple(v - 1 if v > j else v for v in rest))
