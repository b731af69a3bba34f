import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import disconnected3, edge2, small_graphs, star3, triangle
from mimicnet.bounds import (bound_table, convex_combine, count_antichains,
                             count_common_element_antichains, cut_matrix, exact_rank,
                             gadget_epsilons, gadget_graph, mtcv_rank_evidence)
from mimicnet.exceptions import GraphError, GuardError
from mimicnet.graph import CapGraph
from mimicnet.terminal_cuts import brute_force_mtcv, canonical_subsets, mtcv


def test_gadget_examples():
    g = gadget_graph("abc", {"a"}, "1/4")
    assert brute_force_mtcv(g) == [Fraction(3, 4), Fraction(1, 2), Fraction(1, 2)]
    assert mtcv(g) == brute_force_mtcv(g)
    g = gadget_graph("abc", {"a"}, Fraction(1, 8))
    assert brute_force_mtcv(g) == [Fraction(7, 8), Fraction(1, 2), Fraction(1, 2)]
    with pytest.raises(GraphError, match="epsilon"):
        gadget_graph("abc", {"a"}, "1/2")
    with pytest.raises(GraphError):
        gadget_graph("abc", {"a", "b", "c"}, "1/8")


def test_gadget_hub_names_avoid_terminals():
    g = gadget_graph(["u0", "v0", "w"], 1, "1/4")
    assert len(set(g.vertices)) == 5


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_gadget_moves_one_coordinate(k):
    terms = [f"t{j}" for j in range(k)]
    p = 2 ** (k - 1) - 1
    for i in range(1, p + 1):
        eps = gadget_epsilons(terms, i, count=3)
        vecs = [mtcv(gadget_graph(terms, i, e)) for e in eps]
        for e, vec in zip(eps, vecs):
            assert vec[i - 1] == 1 - e
        others = {tuple(x for j, x in enumerate(vec) if j != i - 1) for vec in vecs}
        assert len(others) == 1


def test_convex_combine_examples():
    s, t = star3(), triangle()
    assert mtcv(convex_combine(s, t, 1)) == mtcv(s)
    mixed = convex_combine(s, t, "1/2")
    assert len(mixed) == 4
    assert brute_force_mtcv(mixed) == [Fraction(3, 2), 2, Fraction(5, 2)]
    assert mtcv(convex_combine(disconnected3(), disconnected3(), "1/3")) == [0, 0, 0]
    with pytest.raises(GraphError, match="terminal mismatch"):
        convex_combine(s, edge2(), "1/2")
    with pytest.raises(GraphError):
        convex_combine(s, t, 2)


@st.composite
def graph_pairs(draw):
    k = draw(st.integers(2, 4))
    terms = [f"t{j}" for j in range(k)]

    def one(tag):
        extra = [f"{tag}{i}" for i in range(draw(st.integers(0, 3)))]
        names = terms + extra
        pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True))
        return CapGraph(names, terms, [(a, b, draw(st.integers(0, 9))) for a, b in chosen])

    return one("x"), one("y")


@given(graph_pairs(), st.fractions(0, 1))
def test_convexity_identity(pair, lam):
    g1, g2 = pair
    combo = convex_combine(g1, g2, lam)
    expect = [lam * a + (1 - lam) * b for a, b in zip(mtcv(g1), mtcv(g2))]
    assert mtcv(combo) == expect


def test_cut_matrix_examples():
    assert cut_matrix(star3()).rows == ((1, 0, 0), (0, 1, 0), (1, 1, 0))
    assert cut_matrix(edge2()).rows == ((1,),)
    m = cut_matrix(disconnected3())
    assert m.rows == ((), (), ()) and m.edges == ()


@given(small_graphs(max_vertices=7, max_terminals=4))
def test_cut_matrix_row_weights(g):
    assert cut_matrix(g).row_weights() == mtcv(g)


def test_exact_rank():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[Fraction(1, 3), 0, 1], [0, 1, 0], [1, 1, 3]]) == 2
    assert exact_rank([]) == 0


@pytest.mark.parametrize("k, rank", [(2, 1), (3, 3), (4, 7), (5, 15)])
def test_rank_evidence(k, rank):
    assert mtcv_rank_evidence(k) == rank


def test_rank_evidence_guard():
    with pytest.raises(GuardError):
        mtcv_rank_evidence(6)


def test_antichain_counts_match_table():
    assert [count_antichains(n) for n in range(1, 6)] == [2, 5, 19, 167, 7580]
    assert [count_common_element_antichains(n) for n in range(1, 6)] == [2, 4, 11, 54, 687]
    with pytest.raises(GuardError):
        count_antichains(6)


def _classical_dedekind(m):
    # antichains of all subsets (empty set allowed) of an m-set, by brute force over families
    subsets = list(range(2 ** m))
    count = 0
    for size in range(len(subsets) + 1):
        for fam in combinations(subsets, size):
            if all(a & b not in (a, b) for a, b in combinations(fam, 2)):
                count += 1
    return count


def test_common_element_count_by_inclusion_exclusion():
    n = 3
    ded = {m: _classical_dedekind(m) for m in range(n + 1)}
    assert [ded[m] for m in range(4)] == [2, 3, 6, 20]
    # nonempty antichains whose members all contain a fixed s-set
    nonempty = 0
    for s in range(1, n + 1):
        sign = 1 if s % 2 else -1
        nonempty += sign * len(list(combinations(range(n), s))) * (ded[n - s] - 1)
    assert nonempty == 10
    assert count_common_element_antichains(3) == nonempty + 1


def test_counting_sandwich():
    for n in range(2, 6):
        assert count_antichains(n - 1) <= count_common_element_antichains(n) <= count_antichains(n)


def test_bound_table_rows():
    rows = bound_table(samples=3, seed=1)
    assert [r["k"] for r in rows] == [2, 3, 4, 5, 6]
    assert rows[2] == {"k": 4, "Z": 11, "M_prime": 19, "two_power": 255,
                       "observed_N_max": rows[2]["observed_N_max"]}
    assert rows[4]["two_power"] == 2 ** 32 - 1
    assert all(r["observed_N_max"] <= r["Z"] for r in rows)
    assert bound_table([3], samples=0)[0]["observed_N_max"] is None
