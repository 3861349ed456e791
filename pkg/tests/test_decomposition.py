import itertools
import random
from fractions import Fraction

import pytest

from irmatch.blossom import matching_size
from irmatch.decomposition import (EXACT_MAX_VERTICES, build_partition, check_decomposition,
                                   claim2_closed_form, complete_two_cycle_graph,
                                   edmonds_gallai, exact_internal_expectation,
                                   is_factor_critical, subset_opt_table, verify_claim1)
from irmatch.generators import figure2_undirected, gen_appb_triangle, gen_star_forest
from irmatch.graph import Graph, UndirectedGraph, induced_subgraph
from irmatch.solver import InstanceTooLargeError, brute_force_cover, opt_size


def random_undirected(rng, n, p):
    return UndirectedGraph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)
                                        if rng.random() < p))


def corpus(count=200, max_n=10, seed=21):
    rng = random.Random(seed)
    return [random_undirected(rng, rng.randint(1, max_n), rng.uniform(0.1, 0.6))
            for _ in range(count)]


def expectation_by_subsets(g: Graph, cap: int, p: Fraction) -> Fraction:
    """Oracle: enumerate every vertex subset and solve it by brute force."""
    n = g.vertex_count
    total = Fraction(0)
    for r in range(n + 1):
        for keep in itertools.combinations(range(n), r):
            sub, _ = induced_subgraph(g, keep)
            total += p**r * (1 - p) ** (n - r) * brute_force_cover(sub, cap).size
    return total


def test_single_edge_and_path():
    eg = edmonds_gallai(UndirectedGraph(2, frozenset({(0, 1)})))
    assert eg.C == {0, 1} and not eg.A and not eg.D
    eg = edmonds_gallai(UndirectedGraph(3, frozenset({(0, 1), (1, 2)})))
    assert eg.D == {0, 2} and eg.A == {1} and not eg.C
    assert eg.d_components == ((0,), (2,))
    assert eg.B == {1}


def test_triangle_is_one_d_part():
    ug = UndirectedGraph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
    eg = edmonds_gallai(ug)
    assert eg.D == {0, 1, 2}
    parts = build_partition(ug, eg).parts
    assert len(parts) == 1 and parts[0].kind == "d_component" and len(parts[0].edges) == 3


def test_figure2():
    ug = figure2_undirected()
    eg = edmonds_gallai(ug)
    assert eg.A == {6, 7}
    assert eg.C == set(range(6))
    assert eg.d_components == ((8, 12, 13), (9, 10, 14), (11, 15, 16))
    assert check_decomposition(ug, eg) == []
    parts = build_partition(ug, eg).parts
    assert [p.kind for p in parts] == ["c_component"] * 2 + ["d_component"] * 3 + ["star"] * 2
    report = verify_claim1(ug, build_partition(ug, eg))
    assert report.lhs == 16 == report.rhs and report.holds
    assert report.part_sizes == (2, 4, 2, 2, 2, 2, 2)


def test_a_a_edge_goes_to_lower_id():
    # 1 and 2 are both in A: each is adjacent to a D leaf
    ug = UndirectedGraph(6, frozenset({(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)}))
    eg = edmonds_gallai(ug)
    assert eg.A == {1, 2}
    stars = {p.center: p for p in build_partition(ug, eg).parts if p.kind == "star"}
    assert (1, 2) in stars[1].edges and (1, 2) not in stars[2].edges


def test_partition_invariants_on_corpus():
    for ug in corpus():
        eg = edmonds_gallai(ug)
        assert eg.A | eg.C | eg.D == set(range(ug.vertex_count))
        assert not (eg.A & eg.C or eg.A & eg.D or eg.C & eg.D)
        assert check_decomposition(ug, eg) == []
        # D by definition: some maximum matching misses v
        nu = matching_size(ug)
        for v in range(ug.vertex_count):
            assert (v in eg.D) == (matching_size(ug.remove_vertex(v)) == nu)
        parts = build_partition(ug, eg).parts
        covered = [e for p in parts for e in p.edges]
        assert len(covered) == len(set(covered)) and set(covered) == ug.edges
        for p in parts:
            if p.kind == "star":
                assert p.center in eg.A and all(p.center in e for e in p.edges)
        assert verify_claim1(ug, build_partition(ug, eg)).holds


def test_factor_critical():
    tri = UndirectedGraph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
    assert is_factor_critical(tri, (0, 1, 2))
    path = UndirectedGraph(3, frozenset({(0, 1), (1, 2)}))
    assert not is_factor_critical(path, (0, 1, 2))
    assert is_factor_critical(path, (0,))


@pytest.mark.parametrize("p", [Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)])
def test_each_part_obeys_per_part_bound(p):
    for ug in corpus(60, 10, seed=33):
        eg = edmonds_gallai(ug)
        for part in build_partition(ug, eg).parts:
            local, _ = part.local()
            g = local.to_directed()
            bound = p * opt_size(g, 2)
            assert exact_internal_expectation(g, 2, p) <= bound + Fraction(1, 10**9)


@pytest.mark.parametrize("p", [0.1, 0.25, 0.5])
def test_star_bound(p):
    for leaves in range(1, 8):
        star = UndirectedGraph(leaves + 1, frozenset((0, j) for j in range(1, leaves + 1)))
        assert exact_internal_expectation(star.to_directed(), 2, p) <= 2 * Fraction(repr(p))


def test_exact_expectation_matches_subset_oracle():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 7)
        g = Graph(n, frozenset((u, v) for u in range(n) for v in range(n)
                               if u != v and rng.random() < 0.35))
        for cap in (2, 3):
            p = Fraction(rng.randint(1, 9), 10)
            assert exact_internal_expectation(g, cap, p) == expectation_by_subsets(g, cap, p)


def test_subset_table_full_set_is_opt():
    rng = random.Random(8)
    for _ in range(50):
        n = rng.randint(1, 9)
        g = Graph(n, frozenset((u, v) for u in range(n) for v in range(n)
                               if u != v and rng.random() < 0.35))
        assert subset_opt_table(g, 3)[-1] == opt_size(g, 3)


def test_triangle_of_two_cycles():
    g = gen_appb_triangle().graph
    assert exact_internal_expectation(g, 2, Fraction(2, 3)) == Fraction(40, 27)
    assert exact_internal_expectation(g, 2, 0) == 0
    assert exact_internal_expectation(g, 2, 1) == 2


def test_triangle_at_half():
    assert exact_internal_expectation(complete_two_cycle_graph(3), 2, 0.5) == 1


@pytest.mark.parametrize("t", [1, 2, 3])
@pytest.mark.parametrize("p", [Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)])
def test_claim2_complete_graphs(t, p):
    value, cap = claim2_closed_form(t, p)
    exact = exact_internal_expectation(complete_two_cycle_graph(2 * t + 1), 2, p)
    assert exact == value and value <= cap


def test_claim2_values():
    assert claim2_closed_form(1, 0.5) == (1, 1)
    assert claim2_closed_form(2, Fraction(1, 4)) == (Fraction(49, 64), 1)
    with pytest.raises(ValueError):
        claim2_closed_form(0, 0.5)
    with pytest.raises(ValueError):
        claim2_closed_form(1, 1.5)


def test_claim2_near_perfect_graphs():
    rng = random.Random(12)
    checked = 0
    while checked < 40:
        n = rng.randint(2, 8)
        g = random_undirected(rng, n, 0.6).to_directed()
        opt = opt_size(g, 2)
        if opt < n - 1:
            continue
        checked += 1
        for p in (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)):
            assert exact_internal_expectation(g, 2, p) <= p * opt


def test_exact_guard():
    big = Graph(EXACT_MAX_VERTICES + 1, frozenset(
        (u, (u + 1) % (EXACT_MAX_VERTICES + 1)) for u in range(EXACT_MAX_VERTICES + 1)))
    with pytest.raises(InstanceTooLargeError):
        exact_internal_expectation(big, 3, 0.5)
    # many small components are fine
    forest = gen_star_forest(64).graph
    assert exact_internal_expectation(forest, 2, 0.5) > 0
