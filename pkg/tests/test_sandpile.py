from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from cnatlab.graph import (Graph, GraphError, Orientation, complete_graph, cycle_graph,
                           path_graph, permutation_graph, prune, rooted_acyclic_orientations)
from cnatlab.perm import all_permutations, is_irreducible, parse
from cnatlab.sandpile import (SandpileError, SandpileGraph, StateSpaceTooLarge, burn,
                              config_from_json, config_to_json, is_recurrent, level,
                              level_polynomial, minimal_recurrent_configs, minrec_count,
                              orientation_to_config, recurrent_configs, stabilize)

C3 = SandpileGraph(cycle_graph(3), 1)
EDGE = SandpileGraph(path_graph(2), 1)
BUTTERFLY = Graph(range(1, 6), [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])


def perm_graphs(max_n=6, min_n=2):
    for n in range(min_n, max_n + 1):
        for p in all_permutations(n):
            if is_irreducible(p):
                yield permutation_graph(p)


def test_stabilize_examples():
    assert stabilize(C3, (1, 0)) == ((1, 0), (0, 0))
    assert stabilize(C3, (2, 1)) == ((1, 0), (1, 1))


def test_recurrence_examples():
    assert is_recurrent(C3, (1, 1))
    assert not is_recurrent(C3, (0, 0))
    assert is_recurrent(EDGE, (0,))
    with pytest.raises(SandpileError, match="not stable"):
        is_recurrent(C3, (2, 0))


def test_level_examples():
    assert level(C3, (1, 1)) == 1
    assert level(C3, (1, 0)) == 0


def test_recurrent_config_lists():
    assert recurrent_configs(C3) == [(0, 1), (1, 0), (1, 1)]
    assert recurrent_configs(EDGE) == [(0,)]
    assert level_polynomial(SandpileGraph(complete_graph(3), 2)) == [2, 1]


def test_minrec_examples():
    for k in range(3, 9):
        sg = SandpileGraph(cycle_graph(k), 1)
        expect = [tuple(0 if i == j else 1 for i in range(k - 1)) for j in range(k - 1)]
        assert minimal_recurrent_configs(sg) == sorted(expect)
        if k <= 6:
            assert minimal_recurrent_configs(sg, "burning") == sorted(expect)
    for n in range(2, 6):
        sg = SandpileGraph(complete_graph(n), 1)
        expect = sorted(permutations(range(n - 1)))
        assert minimal_recurrent_configs(sg) == expect
        assert minimal_recurrent_configs(sg, "burning") == expect
    assert minimal_recurrent_configs(EDGE) == [(0,)]


def test_minrec_count_examples():
    assert minrec_count(path_graph(6)) == 1
    assert minrec_count(Graph([1, 2, 3, 4], [(1, 2), (1, 3), (1, 4)])) == 1
    # C_5 with a two-edge branch hanging off vertex 2
    decorated = Graph(range(1, 8), [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (2, 6), (6, 7)])
    assert minrec_count(decorated) == 4
    assert minrec_count(BUTTERFLY) == 4
    with pytest.raises(GraphError):
        minrec_count(Graph([1, 2]))


def test_chord_base_cases():
    c4 = cycle_graph(4)
    assert minrec_count(c4.add_edge(1, 3)) == 4
    assert minrec_count(c4.add_edge(1, 3).subdivide(1, 3)) == 7
    assert minrec_count(c4.add_edge(1, 3).add_edge(2, 4)) == 6
    assert minrec_count(cycle_graph(5).add_edge(1, 3)) == 6
    assert minrec_count(cycle_graph(6)) == 5


def test_orientation_to_config_examples():
    o = rooted_acyclic_orientations(path_graph(2), 1)[0]
    assert orientation_to_config(EDGE, o) == (0,)
    k3 = SandpileGraph(complete_graph(3), 1)
    imgs = sorted(orientation_to_config(k3, o) for o in rooted_acyclic_orientations(k3.graph, 1))
    assert imgs == [(0, 1), (1, 0)] == minimal_recurrent_configs(k3, "burning")
    c4 = SandpileGraph(cycle_graph(4), 1)
    assert len(rooted_acyclic_orientations(c4.graph, 1)) == 3
    assert minimal_recurrent_configs(c4) == minimal_recurrent_configs(c4, "burning")


def test_orientation_to_config_rejects_bad_orientations():
    k3 = complete_graph(3)
    sg = SandpileGraph(k3, 1)
    cyclic = Orientation(k3, ((1, 2), (2, 3), (3, 1)))
    with pytest.raises(SandpileError, match="cycle"):
        orientation_to_config(sg, cyclic)
    wrong_sink = rooted_acyclic_orientations(k3, 2)[0]
    with pytest.raises(SandpileError, match="targets"):
        orientation_to_config(sg, wrong_sink)
    with pytest.raises(SandpileError, match="different graph"):
        orientation_to_config(sg, rooted_acyclic_orientations(cycle_graph(3, start=2), 2)[0])


def test_input_validation():
    with pytest.raises(SandpileError):
        SandpileGraph(cycle_graph(3), 7)
    with pytest.raises(SandpileError):
        SandpileGraph(Graph([1, 2, 3], [(1, 2)]), 1)
    with pytest.raises(SandpileError):
        stabilize(C3, (1,))
    with pytest.raises(SandpileError):
        stabilize(C3, (-1, 0))
    with pytest.raises(ValueError):
        stabilize(C3, (0, 0), policy="random")
    with pytest.raises(StateSpaceTooLarge):
        recurrent_configs(SandpileGraph(complete_graph(6), 1), limit=1000)
    with pytest.raises(ValueError):
        minimal_recurrent_configs(C3, method="magic")


def test_orientation_route_has_no_limit():
    sg = SandpileGraph(complete_graph(8), 1)
    assert len(minimal_recurrent_configs(sg)) == factorial(7)


def test_config_json_round_trip():
    sg = SandpileGraph(permutation_graph(parse("561243")), 3)
    c = (1, 0, 2, 1, 0)
    data = config_to_json(sg, c)
    assert data["sink"] == 3 and set(data["grains"]) == {"1", "2", "4", "5", "6"}
    assert config_from_json(sg, data) == c
    with pytest.raises(SandpileError):
        config_from_json(sg, {"sink": 1, "grains": data["grains"]})


# --- properties --------------------------------------------------------------

IRREDUCIBLE = [p for n in range(2, 7) for p in all_permutations(n) if is_irreducible(p)]

FAMILIES = {
    "cycle": lambda n: cycle_graph(max(n, 3)),
    "complete": lambda n: complete_graph(n),
    "permutation": None,
}


@st.composite
def sandpile_case(draw, family):
    if family == "permutation":
        g = permutation_graph(draw(st.sampled_from(IRREDUCIBLE)))
    else:
        g = FAMILIES[family](draw(st.integers(2, 7)))
    s = draw(st.sampled_from(g.vertices))
    sg = SandpileGraph(g, s)
    c = tuple(draw(st.integers(0, 3 * d)) for d in sg.degrees())
    return sg, c


@pytest.mark.parametrize("family", sorted(FAMILIES))
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_abelian_property(family, data):
    sg, c = data.draw(sandpile_case(family))
    a, ca = stabilize(sg, c, "lowest")
    b, cb = stabilize(sg, c, "fifo")
    assert a == b and ca == cb
    assert sg.is_stable(a)


@pytest.mark.parametrize("family", sorted(FAMILIES))
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_burning_witness(family, data):
    sg, c = data.draw(sandpile_case(family))
    stable, _ = stabilize(sg, c)
    result, counts = burn(sg, stable)
    if result == stable:
        assert all(k == 1 for k in counts)
        assert is_recurrent(sg, stable) and level(sg, stable) >= 0


def test_orientation_bijection_on_permutation_graphs():
    for g in perm_graphs(6):
        for s in g.vertices:
            sg = SandpileGraph(g, s)
            imgs = [orientation_to_config(sg, o) for o in rooted_acyclic_orientations(g, s)]
            assert len(set(imgs)) == len(imgs)
            assert sorted(imgs) == minimal_recurrent_configs(sg, "burning")


def test_sink_invariance():
    for g in perm_graphs(6):
        counts = {len(rooted_acyclic_orientations(g, s)) for s in g.vertices}
        assert len(counts) == 1


def test_pruning_invariance():
    for g in perm_graphs(6):
        assert minrec_count(g) == minrec_count(prune(g))
    spider = Graph(range(1, 8), [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (4, 6), (1, 7)])
    assert minrec_count(spider) == minrec_count(prune(spider)) == 2


def test_edge_addition_strictly_increases():
    for g in perm_graphs(6):
        base = minrec_count(g)
        for u in g.vertices:
            for v in g.vertices:
                if u < v and not g.has_edge(u, v):
                    assert minrec_count(g.add_edge(u, v)) > base


def test_subdivision_never_decreases():
    for g in perm_graphs(5):
        base = minrec_count(g)
        for u, v in g.edges:
            assert minrec_count(g.subdivide(u, v)) >= base
