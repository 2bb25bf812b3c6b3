"""Dot grids transcribed from worked examples, shared by several test modules."""

from cnatlab.cnat import DotGrid

# 5x5 complete tree with permutation 45312
COMPLETE_45312 = DotGrid(5, 5, frozenset({(1, 1), (3, 1), (1, 2), (2, 2),
                                          (1, 4), (2, 5), (3, 3), (4, 1), (5, 2)}))

# 4 columns x 5 rows; the dot at (3, 1) has a child below but none to its right
INCOMPLETE_GRID = DotGrid(4, 5, frozenset({(1, 1), (3, 1), (1, 2), (2, 2),
                                          (1, 4), (2, 5), (3, 3), (4, 2)}))

# labelled upper-diagonal tree of size 10 and its word
LABELLED10_LABELS = (2, 4, 5, 7, 9, 10, 13, 14, 16)
LABELLED10_INTERNAL = {(1, 1), (3, 1), (5, 1), (1, 2), (2, 2), (5, 3), (6, 3), (3, 4), (3, 7)}
LABELLED10 = DotGrid(10, 10, frozenset(LABELLED10_INTERNAL
                                       | {(i, 11 - i) for i in range(1, 11)}))
LABELLED10_WORD = (9, 14, 10, 5, 7, 13, 2, 16, 4)

# top-row deletion example: labels (1, 2, 5, 7) -> (2, 5, 7)
DELETION_BEFORE = DotGrid(5, 5, frozenset({(1, 1), (1, 2), (2, 2), (1, 3)}
                                           | {(c, 6 - c) for c in range(1, 6)}))
DELETION_AFTER = DotGrid(4, 4, frozenset({(1, 1), (2, 1), (1, 2)}
                                          | {(c, 5 - c) for c in range(1, 5)}))

# b(n, k) at k = 1!, 2!, 3!, ... for n = 2..7
FACTORIAL_TABLE = {
    2: {1: 1},
    3: {1: 2, 2: 1},
    4: {1: 4, 2: 4, 6: 1},
    5: {1: 8, 2: 12, 6: 6, 24: 1},
    6: {1: 16, 2: 32, 6: 24, 24: 31, 120: 1},
    7: {1: 32, 2: 80, 6: 80, 24: 176, 120: 56, 720: 1},
}

# irreducible (indecomposable) permutations of length n = 1..8 (OEIS A003319)
IRREDUCIBLE_COUNTS = {1: 1, 2: 1, 3: 3, 4: 13, 5: 71, 6: 461, 7: 3447, 8: 29093}
