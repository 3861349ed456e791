"""Exact maximum matchings of directed graphs under a cycle-length cap.

``max_cycle_cover`` is the production solver: it enumerates cycles, splits
the graph into weak components and runs a branch-and-bound set packing on
each. Among all optimal packings it returns the lexicographically least one.
Packings are compared as their sorted cycle lists, where running out of
cycles sorts after any cycle. That is the first optimum met by a search that
decides vertices in increasing id order and tries "open a cycle at v" (cycles
in canonical order) before "leave v unmatched".
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .blossom import max_matching_blossom
from .graph import (Cycle, Graph, enumerate_cycles, induced_subgraph,
                    to_undirected, weakly_connected_components)

DEFAULT_NODE_LIMIT = 10**7
BRUTE_FORCE_MAX_VERTICES = 12


class SolverLimitError(RuntimeError):
    """The search exceeded its node limit; the instance is too large to solve exactly."""


class InstanceTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint cycles, each of length at most ``cap``."""

    cycles: tuple[Cycle, ...] = ()
    cap: int = 2

    @property
    def matched_vertices(self) -> frozenset[int]:
        return frozenset(v for c in self.cycles for v in c)

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.cycles)

    def __len__(self) -> int:
        return self.size


@dataclass(frozen=True)
class SolveOptions:
    cycle_cap: int = 3
    node_limit: int = DEFAULT_NODE_LIMIT

    def __post_init__(self) -> None:
        if self.cycle_cap < 2:
            raise ValueError("cycle cap must be at least 2")


def max_cycle_cover(g: Graph, cap: int = 3, *,
                    node_limit: int = DEFAULT_NODE_LIMIT) -> Matching:
    """Maximum number of matched vertices using cycles of length 2..cap.

    Deterministic: equal inputs give identical cycle sets. Raises
    ``SolverLimitError`` if any component needs more than ``node_limit``
    search nodes.
    """
    opts = SolveOptions(cap, node_limit)
    cycles: list[Cycle] = []
    for comp in weakly_connected_components(g):
        if len(comp) < 2:
            continue
        sub, id_map = induced_subgraph(g, comp)
        for c in _solve_component(sub.vertex_count, sub.edges, opts.cycle_cap,
                                  opts.node_limit):
            cycles.append(tuple(id_map[v] for v in c))
    cycles.sort()
    return Matching(tuple(cycles), cap)


def opt_size(g: Graph, cap: int = 3, *, node_limit: int = DEFAULT_NODE_LIMIT) -> int:
    """|opt(g)| only. With ``cap == 2`` this is twice a blossom matching."""
    if cap == 2:
        total = 0
        for comp in weakly_connected_components(g):
            if len(comp) >= 2:
                sub, _ = induced_subgraph(g, comp)
                total += _blossom_size(sub.vertex_count, sub.edges)
        return total
    return max_cycle_cover(g, cap, node_limit=node_limit).size


@lru_cache(maxsize=1 << 16)
def _blossom_size(n: int, edges: frozenset) -> int:
    return 2 * len(max_matching_blossom(to_undirected(Graph(n, edges))))


@lru_cache(maxsize=1 << 16)
def _solve_component(n: int, edges: frozenset, cap: int,
                     node_limit: int) -> tuple[Cycle, ...]:
    cycles = enumerate_cycles(Graph(n, edges), cap)
    if not cycles:
        return ()
    return _BranchAndBound(n, cycles, node_limit).run()


class _BranchAndBound:
    """Vertex-ordered set packing over a fixed cycle list.

    Bound at a node: matched so far plus the number of free vertices >= v that
    lie on at least one cycle still fully available. Nodes are pruned when the
    bound cannot strictly beat the incumbent, so the first optimum found is
    kept.
    """

    def __init__(self, n: int, cycles: list[Cycle], node_limit: int):
        self.n = n
        self.cycles = cycles
        self.masks = [sum(1 << v for v in c) for c in cycles]
        self.starting_at: list[list[int]] = [[] for _ in range(n)]
        for idx, c in enumerate(cycles):
            self.starting_at[c[0]].append(idx)
        # cycles are sorted, so those starting at or after v form a suffix
        self.suffix_from = [len(cycles)] * (n + 1)
        for idx in range(len(cycles) - 1, -1, -1):
            self.suffix_from[cycles[idx][0]] = idx
        for v in range(n - 1, -1, -1):
            self.suffix_from[v] = min(self.suffix_from[v], self.suffix_from[v + 1])
        self.node_limit = node_limit
        self.nodes = 0
        self.best_size = -1
        self.best: tuple[int, ...] = ()
        self.chosen: list[int] = []
        # a perfect cover of every cycle vertex ends the search early
        self.ceiling = bin(_or_all(self.masks)).count("1")

    def run(self) -> tuple[Cycle, ...]:
        self._search(0, 0, 0)
        return tuple(self.cycles[i] for i in self.best)

    def _bound(self, v: int, used: int) -> int:
        reach = 0
        for m in self.masks[self.suffix_from[v]:]:
            if not m & used:
                reach |= m
        return bin(reach).count("1")

    def _search(self, v: int, used: int, size: int) -> bool:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise SolverLimitError(
                f"branch-and-bound exceeded {self.node_limit} nodes")
        while v < self.n and (used >> v) & 1:
            v += 1
        if v >= self.n:
            if size > self.best_size:
                self.best_size = size
                self.best = tuple(self.chosen)
            return self.best_size >= self.ceiling
        if size + self._bound(v, used) <= self.best_size:
            return False
        for idx in self.starting_at[v]:
            m = self.masks[idx]
            if not m & used:
                self.chosen.append(idx)
                done = self._search(v + 1, used | m, size + len(self.cycles[idx]))
                self.chosen.pop()
                if done:
                    return True
        return self._search(v + 1, used, size)


def _or_all(masks: Iterable[int]) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


# ------------------------------------------------------------------ oracles

def brute_force_cover(g: Graph, cap: int = 3) -> Matching:
    """Exhaustive search over every vertex-disjoint subset of cycles.

    Independent of the branch-and-bound path. Returns the lexicographically
    least optimum under the same ordering as ``max_cycle_cover``.
    """
    if g.vertex_count > BRUTE_FORCE_MAX_VERTICES:
        raise InstanceTooLargeError(
            f"brute force limited to {BRUTE_FORCE_MAX_VERTICES} vertices")
    cycles = enumerate_cycles(g, cap)
    sets = [frozenset(c) for c in cycles]
    sentinel = (g.vertex_count,)
    best: list = [-1, None]

    def walk(start: int, used: frozenset, chosen: list[int], size: int) -> None:
        # chosen indices increase and cycles are sorted, so this list is sorted
        key = [cycles[i] for i in chosen] + [sentinel]
        if size > best[0] or (size == best[0] and key < best[1]):
            best[0], best[1] = size, key
        for i in range(start, len(cycles)):
            if not sets[i] & used:
                chosen.append(i)
                walk(i + 1, used | sets[i], chosen, size + len(cycles[i]))
                chosen.pop()

    walk(0, frozenset(), [], 0)
    pick = best[1][:-1]
    return Matching(tuple(pick), cap)


@dataclass(frozen=True)
class Chain:
    """Directed path starting at the altruist; ``len`` counts the other vertices."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return max(len(self.vertices) - 1, 0)


def topological_order(g: Graph) -> Optional[list[int]]:
    """Kahn order (smallest ready vertex first), or None if ``g`` has a cycle."""
    indeg = [0] * g.vertex_count
    for _, v in g.edges:
        indeg[v] += 1
    ready = [v for v in range(g.vertex_count) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    succ = g.successors
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for w in succ[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    return order if len(order) == g.vertex_count else None


def longest_chain_dag(g: Graph) -> Chain:
    """Longest directed path from the altruist in an acyclic graph.

    Ties between equally long paths go to the lexicographically least vertex
    sequence: walking forward, always step to the smallest successor that
    still achieves the best remaining length.
    """
    if g.altruist is None:
        raise ValueError("graph has no altruist")
    order = topological_order(g)
    if order is None:
        raise ValueError("graph contains a directed cycle")
    succ = g.successors
    longest = [0] * g.vertex_count
    for u in reversed(order):
        if succ[u]:
            longest[u] = 1 + max(longest[w] for w in succ[u])
    path = [g.altruist]
    u = g.altruist
    while succ[u]:
        target = longest[u] - 1
        u = next(w for w in succ[u] if longest[w] == target)
        path.append(u)
    return Chain(tuple(path))

