import math
import random

import pytest

from irmatch.generators import FIGURE1_BLUE, gen_figure1, random_digraph
from irmatch.graph import Graph
from irmatch.mechanisms import (augment_mechanism, corollary1_bound, internal_optima,
                                ir_gaps, theorem1_bound, veto_mechanism)
from irmatch.ownership import OwnershipAssignment, PlayerProfile, sample_ownership
from irmatch.solver import max_cycle_cover


def blue_red():
    return OwnershipAssignment.fixed([0 if v in FIGURE1_BLUE else 1 for v in range(7)])


def test_augment_is_maximum_and_keeps_internal_matches():
    rng = random.Random(2024)
    prof = PlayerProfile.uniform(3)
    for t in range(500):
        g = random_digraph(rng.randint(2, 14), rng.uniform(0.1, 0.5), 0.1, rng)
        a = sample_ownership(g, prof, 17, t)
        m = augment_mechanism(g, a, 3)
        assert m.size == max_cycle_cover(g, 2).size
        assert all(len(c) == 2 and g.has_edge(*c) and g.has_edge(c[1], c[0])
                   for c in m.cycles)
        assert len(m.matched_vertices) == m.size
        for internal in internal_optima(g, a, 2, 3):
            assert internal.matched_vertices <= m.matched_vertices


def test_augment_trivial_cases():
    pair = Graph.from_edges(2, [(0, 1), (1, 0)])
    assert augment_mechanism(pair, OwnershipAssignment.fixed([0, 0])).cycles == ((0, 1),)
    assert augment_mechanism(Graph(4), OwnershipAssignment.fixed([0, 1, 0, 1])).cycles == ()


def test_veto_figure1_blue():
    g = gen_figure1().graph
    out = veto_mechanism(g, blue_red(), 3, k=2)
    assert not out.accepted and out.vetoing_players == (0,)
    assert out.size == 3 and out.final_matching.cycles == ((1, 2, 5),)
    assert [p.final_allocation for p in out.per_player] == [3, 0]
    assert out.is_individually_rational()
    # the global optimum is twice the individually rational outcome
    assert max_cycle_cover(g, 3).size == 2 * out.size


def test_veto_single_owner_accepts():
    g = gen_figure1().graph
    out = veto_mechanism(g, OwnershipAssignment.fixed([0] * 7), 3)
    assert out.accepted and out.final_matching == max_cycle_cover(g, 3)
    assert out.vetoing_players == ()


def test_veto_blue_owns_only_v6():
    g = gen_figure1().graph
    owner = [1] * 7
    owner[5] = 0
    out = veto_mechanism(g, OwnershipAssignment.fixed(owner), 3, k=2)
    assert out.accepted and out.per_player[0].internal_opt == 0 == out.per_player[0].share


def test_veto_consistency_random():
    rng = random.Random(3)
    prof = PlayerProfile.uniform(2)
    for t in range(200):
        g = random_digraph(rng.randint(2, 10), 0.25, 0.3, rng)
        out = veto_mechanism(g, sample_ownership(g, prof, 1, t), 3, k=2)
        assert out.accepted == (not out.vetoing_players)
        assert out.is_individually_rational()
        if not out.accepted:
            assert [p.final_allocation for p in out.per_player] == \
                [p.internal_opt for p in out.per_player]


def test_ir_gaps_figure1():
    g = gen_figure1().graph
    recs = ir_gaps(g, blue_red(), 3, max_cycle_cover(g, 3), k=2)
    assert (recs[0].internal_opt, recs[0].share, recs[0].gap) == (3, 2, 1)
    assert recs[1].gap == -4
    single = ir_gaps(g, OwnershipAssignment.fixed([0] * 7), 3, max_cycle_cover(g, 3))
    assert [r.gap for r in single] == [0]
    empty = Graph(3)
    assert all(r.gap == 0 for r in ir_gaps(empty, OwnershipAssignment.fixed([0, 1, 1]), 3,
                                           max_cycle_cover(empty, 3), k=2))


def test_theorem1_bound_values():
    assert theorem1_bound(300, 3, 2, 0.01) == pytest.approx(313.5, abs=0.05)
    assert theorem1_bound(6, 3, 2, 0.1) == pytest.approx(35.9, abs=0.05)
    assert theorem1_bound(0, 3, 2, 0.01) == 0


def test_corollary1_bound_values():
    assert corollary1_bound(0, 3, 2, 0.01) == 0
    L, delta = 3, 0.05
    for opt in (1, 50, 300):
        lt = math.log(2 / delta)
        expected = (2 * L + 1) * math.sqrt(opt * lt) + L * math.sqrt(2 * opt * lt)
        assert corollary1_bound(opt, L, 1, delta) == pytest.approx(expected, rel=1e-12)


def test_corollary1_independent_audit():
    # k gap terms plus k share-deviation terms, with ln(2k/delta) = ln 4 + ln(1/delta)
    opt, L, k, delta = 300, 3, 2, 0.01
    log_term = math.log(4) + math.log(1 / delta)
    gap_terms = sum((2 * L + 1) * (opt * log_term) ** 0.5 for _ in range(k))
    share_terms = sum(L * (2 * (1 / k) * opt * log_term) ** 0.5 for _ in range(k))
    assert corollary1_bound(opt, L, k, delta) == pytest.approx(gap_terms + share_terms, rel=1e-12)
    assert corollary1_bound(opt, L, k, delta) == pytest.approx(847.92, abs=0.01)


@pytest.mark.parametrize("delta", [0, 1, -0.5, 1.5])
def test_bounds_reject_delta(delta):
    with pytest.raises(ValueError):
        theorem1_bound(10, 3, 2, delta)
    with pytest.raises(ValueError):
        corollary1_bound(10, 3, 2, delta)


def test_bounds_reject_negative_opt():
    with pytest.raises(ValueError):
        theorem1_bound(-1, 3, 2, 0.1)
