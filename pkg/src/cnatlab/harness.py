"""Exhaustive b(n,k) tables and claim-by-claim verification.

``b(n, k)`` counts the permutations of length ``n`` with exactly ``k`` CNATs.
Rows start at ``n = 2``; reducible permutations (``k = 0``) are kept in a
separate tally and never appear as table entries.

Scanning S_n is split by first letter across worker processes (``CNATLAB_WORKERS``,
default: CPU count). Each worker returns a Counter; the merge is plain
addition, so the table does not depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable

from .bijections import (fixed_point_bijection, pattern_swap, phi, psi,
                         top_row_internal_columns)
from .cnat import cnat_count, enumerate_cnats, row_statistics, validate
from .graph import count_rooted_acyclic_orientations, permutation_graph, rooted_acyclic_orientations
from .perm import (Permutation, all_permutations, avoids, decreasing, descents,
                   fixed_points, is_irreducible, ltr_minima, occurrences, quadrant_profile)
from .sandpile import SandpileGraph, minimal_recurrent_configs

__all__ = [
    "classify", "BnkTable", "bnk_table", "TableLimitError", "export",
    "VerifyReport", "verify", "THEOREM_IDS", "INFORMATIONAL_IDS",
    "DEFAULT_N_LIMIT", "STRETCH_N_LIMIT", "worker_count",
    "in_b1", "in_b2", "in_b3",
]

log = logging.getLogger(__name__)

DEFAULT_N_LIMIT = 8
STRETCH_N_LIMIT = 9
WORKERS_ENV = "CNATLAB_WORKERS"


class TableLimitError(ValueError):
    pass


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
        if n < 1:
            raise ValueError(f"{WORKERS_ENV} must be at least 1")
        return n
    return os.cpu_count() or 1


def classify(p: Permutation) -> int:
    """Number of CNATs of ``p``; 0 when ``p`` is reducible."""
    return cnat_count(p)


def _slice_counts(n: int, first: int) -> Counter:
    rest = [v for v in range(1, n + 1) if v != first]
    out: Counter = Counter()
    for tail in permutations(rest):
        out[classify(Permutation((first,) + tail))] += 1
    return out


@dataclass(frozen=True)
class BnkTable:
    n_max: int
    counts: dict[tuple[int, int], int] = field(default_factory=dict)
    reducible: dict[int, int] = field(default_factory=dict)

    @property
    def ns(self) -> list[int]:
        return list(range(2, self.n_max + 1))

    def get(self, n: int, k: int) -> int:
        return self.counts.get((n, k), 0)

    def row(self, n: int) -> dict[int, int]:
        return {k: c for (m, k), c in sorted(self.counts.items()) if m == n}

    def odd_entries(self) -> list[tuple[int, int, int]]:
        return [(n, k, c) for (n, k), c in sorted(self.counts.items()) if c % 2]


_row_cache: dict[int, Counter] = {}


def _row(n: int, workers: int, use_cache: bool) -> Counter:
    if use_cache and n in _row_cache:
        return _row_cache[n]
    firsts = list(range(1, n + 1))
    total: Counter = Counter()
    if workers <= 1 or n < 6:
        parts = [_slice_counts(n, f) for f in firsts]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, n)) as ex:
            parts = list(ex.map(_slice_counts, [n] * n, firsts))
    for part in parts:
        total.update(part)
    if use_cache:
        _row_cache[n] = total
    return total


def bnk_table(n_max: int, *, allow_stretch: bool = False, workers: int | None = None,
              use_cache: bool = True) -> BnkTable:
    """Count b(n,k) for ``2 <= n <= n_max`` by scanning all of S_n."""
    limit = STRETCH_N_LIMIT if allow_stretch else DEFAULT_N_LIMIT
    if n_max > limit:
        hint = "" if allow_stretch or n_max > STRETCH_N_LIMIT else " (n=9 needs the stretch flag)"
        raise TableLimitError(f"n_max={n_max} exceeds the limit {limit}{hint}")
    if n_max >= STRETCH_N_LIMIT:
        log.warning("n=%d scans %d permutations; expect a long run", n_max, math.factorial(n_max))
    workers = worker_count() if workers is None else workers
    counts: dict[tuple[int, int], int] = {}
    reducible: dict[int, int] = {}
    for n in range(2, n_max + 1):
        row = _row(n, workers, use_cache)
        reducible[n] = row.get(0, 0)
        for k in sorted(row):
            if k:
                counts[(n, k)] = row[k]
    return BnkTable(max(n_max, 1), counts, reducible)


def export(table: BnkTable, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "count"])
        for (n, k), c in sorted(table.counts.items()):
            w.writerow([n, k, c])
        return buf.getvalue()
    if fmt == "json":
        nested = {str(n): {str(k): c for k, c in table.row(n).items()} for n in table.ns
                  if table.row(n)}
        doc = {"n_max": table.n_max, "counts": nested,
               "reducible": {str(n): c for n, c in sorted(table.reducible.items())}}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


# membership characterisations -------------------------------------------

def _lower_left_counts(p: Permutation) -> list[int]:
    return [quadrant_profile(p, k).lower_left for k in range(2, p.n + 1)]


def in_b1(p: Permutation) -> bool:
    """Quadrant condition and no fixed point (irreducibility is implied)."""
    return p.n >= 2 and all(x == 1 for x in _lower_left_counts(p)) and not fixed_points(p)


def in_b2(p: Permutation) -> bool:
    if p.n < 2 or not all(x == 1 for x in _lower_left_counts(p)):
        return False
    fps = fixed_points(p)
    return len(fps) == 1 and fps[0] >= 2


def in_b3(p: Permutation) -> bool:
    """The three-CNAT quadrant test taken literally.

    It is necessary but not sufficient: 3421 passes and has 4 CNATs.
    """
    if p.n < 4:
        return False
    ll = _lower_left_counts(p)
    return ll.count(2) == 1 and ll.count(1) == len(ll) - 1 and not fixed_points(p)


_P321 = Permutation((3, 2, 1))
_P3412 = Permutation((3, 4, 1, 2))


def _pattern_b2(p: Permutation) -> bool:
    return (p.n >= 3 and is_irreducible(p) and len(occurrences(p, _P321)) == 1
            and avoids(p, _P3412))


def _pattern_b3(p: Permutation) -> bool:
    return (p.n >= 4 and is_irreducible(p) and len(occurrences(p, _P3412)) == 1
            and avoids(p, _P321))


# verification -------------------------------------------------------------

@dataclass
class VerifyReport:
    theorem_id: str
    n_max: int
    claim: str
    passed: bool
    checked: int = 0
    counterexample: str | None = None
    notes: list[str] = field(default_factory=list)
    informational: bool = False
    allow_stretch: bool = field(default=False, repr=False)

    @property
    def ok(self) -> bool:
        """Exit status view: informational checks never fail a run."""
        return self.passed or self.informational

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.informational:
            status += " (informational)"
        lines = [f"{self.theorem_id} n<={self.n_max}: {status}",
                 f"  claim: {self.claim}",
                 f"  cases checked: {self.checked}"]
        if self.counterexample:
            lines.append(f"  counterexample: {self.counterexample}")
        lines += [f"  note: {x}" for x in self.notes]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"id": self.theorem_id, "n_max": self.n_max, "claim": self.claim,
                "passed": self.passed, "informational": self.informational,
                "checked": self.checked, "counterexample": self.counterexample,
                "notes": self.notes}


def _formula_check(table: BnkTable, k: int, lo: int, f: Callable[[int], int]):
    checked = 0
    for n in range(lo, table.n_max + 1):
        checked += 1
        if table.get(n, k) != f(n):
            return checked, f"b({n},{k}) = {table.get(n, k)}, expected {f(n)}"
    return checked, None


def _v_b1(n_max, r):
    r.checked, r.counterexample = _formula_check(bnk_table(n_max, allow_stretch=r.allow_stretch), 1, 2, lambda n: 2 ** (n - 2))


def _v_b2(n_max, r):
    r.checked, r.counterexample = _formula_check(bnk_table(n_max, allow_stretch=r.allow_stretch), 2, 3,
                                                 lambda n: (n - 2) * 2 ** (n - 3))


def _v_b3(n_max, r):
    r.checked, r.counterexample = _formula_check(bnk_table(n_max, allow_stretch=r.allow_stretch), 3, 4,
                                                 lambda n: (n - 3) * 2 ** (n - 4))


def _v_b6(n_max, r):
    r.checked, r.counterexample = _formula_check(
        bnk_table(n_max, allow_stretch=r.allow_stretch), 6, 4, lambda n: (n - 2) * (n - 3) // 2 * 2 ** (n - 4))


def _v_b5(n_max, r):
    table = bnk_table(n_max, allow_stretch=r.allow_stretch)
    r.checked = len(table.ns)
    bad = [n for n in table.ns if table.get(n, 5)]
    if bad:
        r.counterexample = f"b({bad[0]},5) = {table.get(bad[0], 5)}"
    odd = table.odd_entries()
    if odd:
        r.notes.append("odd entries: " + ", ".join(f"b({n},{k})={c}" for n, k, c in odd))


def _v_max(n_max, r):
    table = bnk_table(n_max, allow_stretch=r.allow_stretch)
    for n in table.ns:
        r.checked += 1
        top = math.factorial(n - 1)
        row = table.row(n)
        if max(row) != top or row[top] != 1:
            r.counterexample = f"n={n}: max k {max(row)}, b(n,(n-1)!) = {row.get(top, 0)}"
            return
        if classify(decreasing(n)) != top:
            r.counterexample = f"decreasing permutation of length {n} has {classify(decreasing(n))}"
            return


def _v_equinumerosity(n_max, r):
    for n in range(1, n_max + 1):
        for p in all_permutations(n):
            if not is_irreducible(p):
                continue
            g = permutation_graph(p)
            trees = len(enumerate_cnats(p))
            for s in g.vertices:
                r.checked += 1
                orient = len(rooted_acyclic_orientations(g, s))
                minrec = len(minimal_recurrent_configs(SandpileGraph(g, s), method="burning"))
                if not trees == orient == minrec:
                    r.counterexample = (f"p={p} sink={s}: {trees} CNATs, {orient} orientations, "
                                        f"{minrec} minimal recurrent")
                    return


def _v_sink(n_max, r):
    for n in range(1, n_max + 1):
        for p in all_permutations(n):
            if not is_irreducible(p):
                continue
            r.checked += 1
            g = permutation_graph(p)
            got = {s: count_rooted_acyclic_orientations(g, s) for s in g.vertices}
            if len(set(got.values())) != 1:
                r.counterexample = f"p={p}: counts by sink {got}"
                return


def _v_psi(n_max, r):
    for n in range(1, n_max + 1):
        seen = set()
        for w in permutations(range(1, n)):
            r.checked += 1
            t = phi(w)
            validate(t.cnat)
            empty, _ = row_statistics(t.cnat)
            tops = [t.labels[c - 1] for c in top_row_internal_columns(t.cnat)]
            problem = None
            if psi(t) != w:
                problem = f"psi(phi(w)) = {psi(t)}"
            elif t.cnat in seen:
                problem = "phi is not injective"
            elif tops != sorted(ltr_minima(Permutation(w))):
                problem = f"top-row labels {tops} vs left-to-right minima {ltr_minima(Permutation(w))}"
            elif empty != len(descents(Permutation(w))) + 1:
                problem = f"{empty} empty rows vs {len(descents(Permutation(w)))} descents"
            if problem:
                r.counterexample = f"w={' '.join(map(str, w))}: {problem}"
                return
            seen.add(t.cnat)
        if len(seen) != math.factorial(n - 1):
            r.counterexample = f"size {n}: {len(seen)} trees, expected {math.factorial(n - 1)}"
            return


def _characterisation(pred: Callable[[Permutation], bool], k: int, lo: int):
    def run(n_max, r):
        false_pos = false_neg = 0
        for n in range(lo, n_max + 1):
            for p in all_permutations(n):
                r.checked += 1
                got, want = pred(p), classify(p) == k
                if got == want:
                    continue
                if got:
                    false_pos += 1
                else:
                    false_neg += 1
                if r.counterexample is None:
                    r.counterexample = f"p={p}: predicate {got}, {classify(p)} CNATs"
        if false_pos or false_neg:
            r.notes.append(f"predicate holds without {k} CNATs: {false_pos}; "
                           f"{k} CNATs without the predicate: {false_neg}")
    return run


def _classes(n_max: int) -> dict[tuple[int, int], set[Permutation]]:
    out: dict[tuple[int, int], set[Permutation]] = {}
    for n in range(1, n_max + 1):
        for p in all_permutations(n):
            k = classify(p)
            if k in (1, 2, 3):
                out.setdefault((n, k), set()).add(p)
    return out


def _v_fixed_point(n_max, r):
    cls = _classes(n_max)
    for n in range(2, n_max):
        r.checked += 1
        dom = cls.get((n, 1), set())
        image = [fixed_point_bijection(j, p) for p in dom for j in range(2, n + 1)]
        if len(set(image)) != len(image) or set(image) != cls.get((n + 1, 2), set()):
            r.counterexample = f"n={n}: image of size {len(set(image))} vs b({n + 1},2)"
            return


def _v_pattern_swap(n_max, r):
    cls = _classes(n_max)
    for n in range(3, n_max):
        r.checked += 1
        image = [pattern_swap(p) for p in cls.get((n, 2), set())]
        if len(set(image)) != len(image) or set(image) != cls.get((n + 1, 3), set()):
            r.counterexample = f"n={n}: image of size {len(set(image))} vs b({n + 1},3)"
            return


_CHECKS: dict[str, tuple[str, Callable]] = {
    "b1-formula": ("b(n,1) = 2^(n-2) for n >= 2", _v_b1),
    "b2-formula": ("b(n,2) = (n-2) * 2^(n-3) for n >= 3", _v_b2),
    "b3-formula": ("b(n,3) = (n-3) * 2^(n-4) for n >= 4", _v_b3),
    "b5-zero": ("no permutation of any length has exactly 5 CNATs", _v_b5),
    "max-factorial": ("max over S_n of the CNAT count is (n-1)!, reached only by n(n-1)...1",
                      _v_max),
    "equinumerosity": ("CNATs of p, sink-rooted acyclic orientations and minimal recurrent "
                       "configurations of the permutation graph are equinumerous, for every sink",
                       _v_equinumerosity),
    "psi-bijection": ("psi/phi are inverse bijections between upper-diagonal CNATs of size n and "
                      "permutations of [n-1]; top-row labels are the left-to-right minima and "
                      "empty rows number one more than the descents", _v_psi),
    "sink-invariance": ("the number of sink-rooted acyclic orientations does not depend on the sink",
                        _v_sink),
    "quadrant-b1": ("p has exactly 1 CNAT iff it meets the quadrant condition and has no fixed "
                    "point", _characterisation(in_b1, 1, 2)),
    "quadrant-b2": ("p has exactly 2 CNATs iff it meets the quadrant condition and has a unique "
                    "fixed point j >= 2", _characterisation(in_b2, 2, 2)),
    "quadrant-b3": ("p has exactly 3 CNATs iff one lower-left quadrant holds two dots, every other "
                    "holds one, and p has no fixed point", _characterisation(in_b3, 3, 4)),
    "pattern-b2": ("p has exactly 2 CNATs iff it is irreducible, has one 321 and avoids 3412",
                   _characterisation(_pattern_b2, 2, 2)),
    "pattern-b3": ("p has exactly 3 CNATs iff it is irreducible, has one 3412 and avoids 321",
                   _characterisation(_pattern_b3, 3, 4)),
    "fixed-point-bijection": ("inserting a fixed point j in 2..n maps {2..n} x B(n,1) "
                              "bijectively onto B(n+1,2)", _v_fixed_point),
    "pattern-swap": ("swapping the 321 around the fixed point for a 3412 maps B(n,2) "
                     "bijectively onto B(n+1,3)", _v_pattern_swap),
    "b6-conjecture": ("conjectured: b(n,6) = (n-2)(n-3)/2 * 2^(n-4) for n >= 4", _v_b6),
}

THEOREM_IDS = tuple(_CHECKS)
INFORMATIONAL_IDS = frozenset({"b6-conjecture"})
_TABLE_IDS = frozenset({"b1-formula", "b2-formula", "b3-formula", "b5-zero", "max-factorial",
                        "b6-conjecture"})


def verify(theorem_id: str, n_max: int, *, allow_stretch: bool = False) -> VerifyReport:
    """Check one claim exhaustively up to ``n_max`` and report the first counterexample."""
    if theorem_id not in _CHECKS:
        raise ValueError(f"unknown theorem id {theorem_id!r}; choose from {', '.join(THEOREM_IDS)}")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    claim, run = _CHECKS[theorem_id]
    report = VerifyReport(theorem_id, n_max, claim, passed=False,
                          informational=theorem_id in INFORMATIONAL_IDS,
                          allow_stretch=allow_stretch)
    if theorem_id in _TABLE_IDS:
        # table limits apply up front so a too-large request errors instead of failing
        limit = STRETCH_N_LIMIT if allow_stretch else DEFAULT_N_LIMIT
        if n_max > limit:
            raise TableLimitError(f"n_max={n_max} exceeds the limit {limit}")
    run(n_max, report)
    report.passed = report.counterexample is None
    return report
