"""Individually rational mechanisms and per-player gap accounting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .blossom import max_matching_blossom
from .graph import Graph, to_undirected
from .ownership import OwnershipAssignment, internal_subgraph, restrict_matching
from .solver import DEFAULT_NODE_LIMIT, Matching, max_cycle_cover, opt_size


@dataclass(frozen=True)
class GapRecord:
    player: int
    internal_opt: int
    share: int

    @property
    def gap(self) -> int:
        return self.internal_opt - self.share


@dataclass(frozen=True)
class PlayerOutcome:
    player: int
    internal_opt: int
    share: int
    final_allocation: int


@dataclass(frozen=True)
class MechanismOutcome:
    accepted: bool
    final_matching: Matching
    per_player: tuple[PlayerOutcome, ...]
    vetoing_players: tuple[int, ...] = field(default=())

    @property
    def size(self) -> int:
        return self.final_matching.size

    def is_individually_rational(self) -> bool:
        return all(p.final_allocation >= p.internal_opt for p in self.per_player)


def _players(a: OwnershipAssignment, k: Optional[int]) -> int:
    if k is not None:
        return k
    return int(a.owner.max()) + 1 if len(a.owner) else 1


def internal_optima(g: Graph, a: OwnershipAssignment, cap: int,
                    k: Optional[int] = None, *,
                    node_limit: int = DEFAULT_NODE_LIMIT) -> list[Matching]:
    """Pinned internal matching of each player, in host vertex ids."""
    out = []
    for i in range(_players(a, k)):
        sub, id_map = internal_subgraph(g, a, i)
        local = max_cycle_cover(sub, cap, node_limit=node_limit)
        out.append(Matching(tuple(tuple(id_map[v] for v in c) for c in local.cycles), cap))
    return out


def augment_mechanism(g: Graph, a: OwnershipAssignment,
                      k: Optional[int] = None) -> Matching:
    """2-cycle mechanism: union of internal optima, grown by augmenting paths.

    The result is a maximum matching of the mutual-edge graph, and every vertex
    matched internally by some player stays matched.
    """
    ug = to_undirected(g)
    seeds = []
    for m in internal_optima(g, a, 2, k):
        seeds.extend(m.cycles)
    pairs = max_matching_blossom(ug, initial=seeds)
    return Matching(tuple(pairs), 2)


def veto_mechanism(g: Graph, a: OwnershipAssignment, cap: int,
                   pinned: Optional[Matching] = None, k: Optional[int] = None, *,
                   node_limit: int = DEFAULT_NODE_LIMIT) -> MechanismOutcome:
    """Propose the pinned optimum; any player whose internal optimum beats
    their share vetoes it, and everyone falls back to their internal optimum.
    """
    if pinned is None:
        pinned = max_cycle_cover(g, cap, node_limit=node_limit)
    internal = internal_optima(g, a, cap, k, node_limit=node_limit)
    shares = [restrict_matching(pinned, a, i) for i in range(len(internal))]
    vetoing = tuple(i for i, m in enumerate(internal) if m.size > shares[i])
    accepted = not vetoing
    if accepted:
        final = pinned
        alloc = shares
    else:
        final = Matching(tuple(sorted(c for m in internal for c in m.cycles)), cap)
        alloc = [m.size for m in internal]
    per_player = tuple(PlayerOutcome(i, internal[i].size, shares[i], alloc[i])
                       for i in range(len(internal)))
    outcome = MechanismOutcome(accepted, final, per_player, vetoing)
    assert outcome.is_individually_rational()
    return outcome


def ir_gaps(g: Graph, a: OwnershipAssignment, cap: int, pinned: Matching,
            k: Optional[int] = None, *,
            node_limit: int = DEFAULT_NODE_LIMIT) -> list[GapRecord]:
    records = []
    for i in range(_players(a, k)):
        sub, _ = internal_subgraph(g, a, i)
        records.append(GapRecord(i, opt_size(sub, cap, node_limit=node_limit),
                                 restrict_matching(pinned, a, i)))
    return records


def _check_delta(delta: float) -> None:
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")


def theorem1_bound(opt_size: int, L: int, k: int, delta: float) -> float:
    """(2L+1) * sqrt(|opt(G)| * ln(4k/delta))."""
    _check_delta(delta)
    if opt_size < 0:
        raise ValueError("opt_size must be non-negative")
    return (2 * L + 1) * math.sqrt(opt_size * math.log(4 * k / delta))


def corollary1_bound(opt_size: int, L: int, k: int, delta: float) -> float:
    """k(2L+1)sqrt(opt ln(2k/delta)) + kL sqrt((2/k) opt ln(2k/delta))."""
    _check_delta(delta)
    if opt_size < 0:
        raise ValueError("opt_size must be non-negative")
    log_term = math.log(2 * k / delta)
    return (k * (2 * L + 1) * math.sqrt(opt_size * log_term)
            + k * L * math.sqrt(2 / k * opt_size * log_term))
