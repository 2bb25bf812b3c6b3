from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from cnatlab.bijections import (BijectionError, LabelledCnat, compose, fixed_point_bijection,
                                fixed_point_bijection_inverse, pattern_swap, pattern_swap_inverse,
                                phi, psi, top_row_decomposition, top_row_deletion,
                                top_row_insertion, top_row_internal_columns,
                                upper_diagonal_cnats)
from cnatlab.cnat import (Cnat, associated_permutation, cnat_count, enumerate_cnats,
                          row_statistics, single_dot, validate)
from cnatlab.perm import (Permutation, all_permutations, decreasing, descents, insert_fixed_point,
                          ltr_minima, parse)
from fixtures import LABELLED10, LABELLED10_LABELS, LABELLED10_WORD, DELETION_AFTER, DELETION_BEFORE

LABELLED10_T = LabelledCnat(LABELLED10_LABELS, validate(LABELLED10))


def labelled_trees(max_size):
    for n in range(1, max_size + 1):
        yield from upper_diagonal_cnats(n)


def classes(max_n):
    out = {}
    for n in range(1, max_n + 1):
        for p in all_permutations(n):
            out.setdefault((n, cnat_count(p)), set()).add(p)
    return out


CLASSES = classes(7)


class TestLabelledCnat:
    def test_validation(self):
        t = validate(LABELLED10)
        with pytest.raises(BijectionError, match="labels"):
            LabelledCnat((1, 2), t)
        with pytest.raises(BijectionError, match="increasing"):
            LabelledCnat((2, 1, 4, 5, 7, 9, 10, 13, 14), t)
        with pytest.raises(BijectionError, match="upper-diagonal"):
            LabelledCnat((1, 2, 3), enumerate_cnats(parse("3412"))[0])

    def test_json_round_trip(self):
        assert LabelledCnat.from_json(LABELLED10_T.to_json()) == LABELLED10_T


def test_labelled_example_psi():
    assert psi(LABELLED10_T) == LABELLED10_WORD
    assert phi(LABELLED10_WORD) == LABELLED10_T
    assert phi(LABELLED10_WORD, LABELLED10_LABELS) == LABELLED10_T


def test_labelled_example_decomposition():
    split = top_row_decomposition(LABELLED10_T)
    assert split.right.labels == (9, 10, 14)
    assert split.left.labels == (2, 4, 5, 7, 13, 16)
    assert psi(split.right) == (9, 14, 10)
    assert psi(split.left) == (5, 7, 13, 2, 16, 4)
    assert compose(split.left, split.right) == LABELLED10_T
    assert min(split.right.labels) > max(split.left.labels[c - 1]
                                         for c in top_row_internal_columns(split.left.cnat))


def test_deletion_example():
    before = LabelledCnat((1, 2, 5, 7), validate(DELETION_BEFORE))
    after = LabelledCnat((2, 5, 7), validate(DELETION_AFTER))
    assert top_row_deletion(before) == after
    assert top_row_insertion(after, 1) == before


def test_small_cases():
    two = LabelledCnat((4,), validate(Cnat(2, 2, frozenset({(1, 1), (2, 1), (1, 2)}))))
    assert top_row_deletion(two) == LabelledCnat((), single_dot())
    assert psi(LabelledCnat((), single_dot())) == ()
    assert phi(()) == LabelledCnat((), single_dot())
    # size 3 with two internal top-row dots splits off a size-2 right part
    t = phi((2, 1))
    assert top_row_internal_columns(t.cnat) == [1, 2]
    split = top_row_decomposition(t)
    assert split.right.size == 2 and split.right.labels == (2,)
    assert split.left.labels == (1,)


def test_decomposition_and_deletion_errors():
    with pytest.raises(BijectionError):
        top_row_decomposition(phi((1, 2)))
    with pytest.raises(BijectionError):
        top_row_deletion(phi((2, 1)))
    with pytest.raises(BijectionError):
        top_row_deletion(LabelledCnat((), single_dot()))
    with pytest.raises(BijectionError):
        top_row_insertion(phi((3, 4)), 5)


def test_first_column_chain_is_increasing():
    for n in range(2, 8):
        labels = tuple(range(10, 10 + n - 1))
        t = phi(labels)
        assert all(c == 1 for c, _ in t.cnat.internal())
        assert psi(t) == labels


def test_phi_rejects_malformed_words():
    with pytest.raises(BijectionError):
        phi((1, 1))
    with pytest.raises(BijectionError):
        phi((0, 2))
    with pytest.raises(BijectionError):
        phi((1, 3), labels=(1, 2))


def test_compose_inverts_decomposition():
    for t in labelled_trees(6):
        if len(top_row_internal_columns(t.cnat)) >= 2:
            split = top_row_decomposition(t)
            assert not set(split.left.labels) & set(split.right.labels)
            assert compose(*split) == t
        elif t.size > 1:
            assert top_row_insertion(top_row_deletion(t), t.labels[0]) == t


@pytest.mark.parametrize("n", range(1, 8))
def test_round_trip_and_statistics(n):
    seen = set()
    for w in permutations(range(1, n)):
        t = phi(w)
        assert validate(t.cnat) == t.cnat
        assert associated_permutation(t.cnat) == decreasing(n)
        assert psi(t) == w
        seen.add(t.cnat)
        empty, tops = row_statistics(t.cnat)
        assert [t.labels[c - 1] for c in tops] == sorted(ltr_minima(Permutation(w)))
        assert empty == len(descents(Permutation(w))) + 1
    assert len(seen) == factorial(n - 1)
    if n <= 6:
        assert seen == set(enumerate_cnats(decreasing(n)))


@st.composite
def labelled_words(draw):
    labels = draw(st.lists(st.integers(1, 200), min_size=0, max_size=14, unique=True))
    return tuple(draw(st.permutations(labels)))


@settings(max_examples=500, deadline=None)
@given(labelled_words())
def test_random_label_sets_round_trip(w):
    t = phi(w)
    assert t.labels == tuple(sorted(w))
    assert psi(t) == w
    assert phi(psi(t)) == t


def test_deep_psi_is_iterative():
    w = tuple(range(64, 0, -1))
    t = phi(w)
    assert psi(t) == w


# --- B(n,k) maps ---------------------------------------------------------------

def test_fixed_point_examples():
    q = fixed_point_bijection(2, parse("21"))
    assert q == parse("321") and cnat_count(q) == 2
    assert fixed_point_bijection_inverse(q) == (2, parse("21"))
    with pytest.raises(BijectionError):
        fixed_point_bijection(2, parse("321"))
    with pytest.raises(BijectionError):
        fixed_point_bijection(3, parse("21"))


@pytest.mark.parametrize("n", range(2, 7))
def test_fixed_point_image(n):
    dom = CLASSES.get((n, 1), set())
    image = [fixed_point_bijection(j, p) for p in dom for j in range(2, n + 1)]
    assert len(image) == len(set(image))
    assert set(image) == CLASSES[(n + 1, 2)]


def test_insertion_doubles():
    for n in range(2, 6):
        for p in all_permutations(n):
            k = cnat_count(p)
            if k:
                for j in range(2, n + 1):
                    assert cnat_count(insert_fixed_point(p, j)) >= 2 * k


def test_pattern_swap_examples():
    assert pattern_swap(parse("321")) == parse("3412")
    assert pattern_swap_inverse(parse("3412")) == parse("321")
    with pytest.raises(BijectionError):
        pattern_swap(parse("3412"))
    with pytest.raises(BijectionError):
        pattern_swap_inverse(parse("321"))


@pytest.mark.parametrize("n", range(3, 7))
def test_pattern_swap_image(n):
    image = [pattern_swap(p) for p in CLASSES.get((n, 2), set())]
    assert len(image) == len(set(image))
    assert set(image) == CLASSES[(n + 1, 3)]
    for q in CLASSES[(n + 1, 3)]:
        p = pattern_swap_inverse(q)
        assert p in CLASSES[(n, 2)] and pattern_swap(p) == q


def test_pattern_swap_round_trip_n7():
    for p in CLASSES[(7, 2)]:
        assert pattern_swap_inverse(pattern_swap(p)) == p
