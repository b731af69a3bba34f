from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import edge2, small_graphs, star3, star3_unique
from mimicnet.exceptions import GraphError, GuardError
from mimicnet.graph import CapGraph, cut_value
from mimicnet.mincut import (brute_force_min_terminal_cut, is_unique_min_terminal_cut,
                             max_flow, min_terminal_cut)
from mimicnet.terminal_cuts import canonical_subsets


@pytest.mark.parametrize("graph, subset, value, side", [
    (star3(), {"a"}, 1, {"a"}),
    (star3(), {"a", "b"}, 3, {"a", "b"}),
    (edge2(), {"a"}, 5, {"a"}),
])
def test_min_terminal_cut_examples(graph, subset, value, side):
    res = min_terminal_cut(graph, subset)
    assert res.value == value
    assert res.source_side == frozenset(side)


@pytest.mark.parametrize("subset", [set(), {"a", "b", "c"}, {"a", "s"}])
def test_min_terminal_cut_rejects_bad_subsets(subset):
    with pytest.raises(GraphError):
        min_terminal_cut(star3(), subset)


def test_brute_force_examples():
    assert brute_force_min_terminal_cut(star3(), {"a", "b"}) == \
        (3, [frozenset("ab"), frozenset("abs")])
    assert brute_force_min_terminal_cut(star3(), {"c"}) == \
        (3, [frozenset("c"), frozenset("cs")])
    assert brute_force_min_terminal_cut(edge2(), {"b"}) == (5, [frozenset("b")])


def test_brute_force_guard():
    names = [f"v{i}" for i in range(25)]
    g = CapGraph(names, names[:2], [])
    with pytest.raises(GuardError):
        brute_force_min_terminal_cut(g, {names[0]})


def test_brute_force_handles_negative_capacity():
    g = CapGraph(["a", "b", "x"], ["a", "b"], [("a", "x", 2), ("x", "b", 3), ("a", "b", -1)],
                 allow_negative=True)
    assert brute_force_min_terminal_cut(g, {"a"})[0] == 1


def test_uniqueness_examples():
    assert is_unique_min_terminal_cut(star3(), {"a", "b"}) is False
    assert is_unique_min_terminal_cut(star3_unique(), {"a", "b"}) is True
    assert is_unique_min_terminal_cut(edge2(), {"a"}) is True


@given(small_graphs())
def test_engine_agrees_with_enumeration(g):
    for u in canonical_subsets(g.terminals):
        res = min_terminal_cut(g, u)
        value, minimizers = brute_force_min_terminal_cut(g, u)
        assert res.value == value
        assert res.source_side in minimizers
        assert all(res.source_side <= m for m in minimizers)
        assert is_unique_min_terminal_cut(g, u) == (len(minimizers) == 1)


@given(small_graphs())
def test_flow_equals_cut_and_symmetry(g):
    ks = frozenset(g.terminals)
    for u in canonical_subsets(g.terminals):
        flow, side = max_flow(g, u, ks - u)
        assert flow == cut_value(g, side)
        assert min_terminal_cut(g, ks - u).value == flow


@given(small_graphs(), st.randoms(use_true_random=False))
def test_cut_function_is_submodular(g, rnd):
    for _ in range(10):
        a = {v for v in g.vertices if rnd.random() < 0.5}
        b = {v for v in g.vertices if rnd.random() < 0.5}
        assert cut_value(g, a) + cut_value(g, b) >= cut_value(g, a | b) + cut_value(g, a & b)


def test_fractional_capacities_stay_exact():
    g = CapGraph(["a", "x", "b"], ["a", "b"],
                 [("a", "x", Fraction(1, 3)), ("x", "b", Fraction(1, 7)), ("a", "b", Fraction(2, 5))])
    assert min_terminal_cut(g, {"a"}).value == Fraction(1, 7) + Fraction(2, 5)
