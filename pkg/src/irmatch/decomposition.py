"""Edmonds-Gallai decomposition, the star/component edge partition built on it,
and exact expectations of |opt(H)| over random vertex subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

from .blossom import matching_size, max_matching_blossom
from .solver import InstanceTooLargeError, opt_size
from .graph import (Graph, UndirectedGraph, enumerate_cycles, induced_subgraph,
                    weakly_connected_components)

EXACT_MAX_VERTICES = 20

PartKind = Literal["star", "c_component", "d_component"]
Probability = Union[Fraction, int, float, str]


@dataclass(frozen=True)
class EGDecomposition:
    A: frozenset[int]
    C: frozenset[int]
    D: frozenset[int]
    d_components: tuple[tuple[int, ...], ...]

    @property
    def B(self) -> frozenset[int]:
        return self.A | self.C


@dataclass(frozen=True)
class Part:
    """One edge-disjoint piece of the host graph, in host vertex ids."""

    kind: PartKind
    edges: frozenset[tuple[int, int]]
    center: int | None = None

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for e in self.edges for v in e}))

    def local(self) -> tuple[UndirectedGraph, tuple[int, ...]]:
        """Relabel onto 0..k-1; returns ``(graph, id_map)``."""
        id_map = self.vertices
        pos = {v: i for i, v in enumerate(id_map)}
        return (UndirectedGraph(len(id_map),
                                frozenset((pos[u], pos[v]) for u, v in self.edges)),
                id_map)


@dataclass(frozen=True)
class EdgePartition:
    parts: tuple[Part, ...]


def _components(vertices, ug: UndirectedGraph) -> list[tuple[int, ...]]:
    inside = set(vertices)
    seen: set[int] = set()
    comps = []
    for s in sorted(inside):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in ug.neighbors[u]:
                if w in inside and w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def edmonds_gallai(ug: UndirectedGraph) -> EGDecomposition:
    # v is missed by some maximum matching iff removing it keeps nu unchanged
    nu = matching_size(ug)
    D = frozenset(v for v in range(ug.vertex_count)
                  if matching_size(ug.remove_vertex(v)) == nu)
    A = frozenset(v for v in range(ug.vertex_count)
                  if v not in D and any(w in D for w in ug.neighbors[v]))
    C = frozenset(range(ug.vertex_count)) - D - A
    return EGDecomposition(A, C, D, tuple(_components(D, ug)))


def build_partition(ug: UndirectedGraph, eg: EGDecomposition) -> EdgePartition:
    """C-components, D-components, then one star per A vertex.

    An edge between two A vertices goes to the star of the lower id.
    """
    parts: list[Part] = []
    for kind, verts in (("c_component", eg.C), ("d_component", eg.D)):
        for comp in _components(verts, ug):
            cs = set(comp)
            edges = frozenset(e for e in ug.edges if e[0] in cs and e[1] in cs)
            if edges:
                parts.append(Part(kind, edges))
    for a in sorted(eg.A):
        edges = frozenset(
            (min(a, w), max(a, w)) for w in ug.neighbors[a]
            if w not in eg.A or a < w)
        if edges:
            parts.append(Part("star", edges, center=a))
    return EdgePartition(tuple(parts))


@dataclass(frozen=True)
class Claim1Report:
    lhs: int
    part_sizes: tuple[int, ...]

    @property
    def rhs(self) -> int:
        return sum(self.part_sizes)

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def verify_claim1(ug: UndirectedGraph, partition: EdgePartition) -> Claim1Report:
    """Compare 2*nu(G) with the sum of 2*nu over the parts."""
    sizes = tuple(2 * matching_size(p.local()[0]) for p in partition.parts)
    return Claim1Report(2 * matching_size(ug), sizes)


def is_factor_critical(ug: UndirectedGraph, vertices) -> bool:
    verts = tuple(sorted(vertices))
    if len(verts) % 2 == 0:
        return False
    for drop in verts:
        keep = [v for v in verts if v != drop]
        kp = {v: i for i, v in enumerate(keep)}
        sub = UndirectedGraph(len(keep), frozenset(
            (kp[u], kp[v]) for u, v in ug.edges if u in kp and v in kp))
        if 2 * matching_size(sub) != len(keep):
            return False
    return True


def check_decomposition(ug: UndirectedGraph, eg: EGDecomposition) -> list[str]:
    """Structural problems with ``eg``; an empty list means all checks pass."""
    problems = []
    everything = eg.A | eg.C | eg.D
    if (len(eg.A) + len(eg.C) + len(eg.D) != ug.vertex_count
            or everything != frozenset(range(ug.vertex_count))):
        problems.append("A, C, D do not partition V")
    for u, v in ug.edges:
        if (u in eg.C and v in eg.D) or (u in eg.D and v in eg.C):
            problems.append(f"edge ({u}, {v}) joins C and D")
    for comp in eg.d_components:
        if not is_factor_critical(ug, comp):
            problems.append(f"D-component {comp} is not factor-critical")
    mate = dict()
    for u, v in max_matching_blossom(ug):
        mate[u], mate[v] = v, u
    comp_of = {v: i for i, comp in enumerate(eg.d_components) for v in comp}
    hit = [comp_of.get(mate.get(a)) for a in sorted(eg.A)]
    if None in hit or len(set(hit)) != len(hit):
        problems.append("A is not matched into distinct D-components")
    return problems


# ------------------------------------------------------- exact expectations

def as_fraction(p: Probability) -> Fraction:
    if isinstance(p, float):
        return Fraction(repr(p))
    return Fraction(p)


def subset_opt_table(g: Graph, cap: int) -> list[int]:
    """|opt(g[S])| for every vertex bitmask S, by exhaustive recursion.

    With v the lowest vertex of S, either v stays unmatched or it lies on a
    cycle inside S, and any such cycle starts at v.
    """
    n = g.vertex_count
    if n > EXACT_MAX_VERTICES:
        raise InstanceTooLargeError(f"exact enumeration limited to {EXACT_MAX_VERTICES} vertices")
    by_start: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for c in enumerate_cycles(g, cap):
        by_start[c[0]].append((sum(1 << v for v in c), len(c)))
    table = [0] * (1 << n)
    for S in range(1, 1 << n):
        low = S & -S
        v = low.bit_length() - 1
        best = table[S ^ low]
        for mask, length in by_start[v]:
            if mask & S == mask:
                cand = length + table[S ^ mask]
                if cand > best:
                    best = cand
        table[S] = best
    return table


def size_totals(g: Graph, cap: int) -> list[int]:
    """``totals[s]`` = sum of |opt(g[S])| over all S with |S| = s."""
    totals = [0] * (g.vertex_count + 1)
    for S, value in enumerate(subset_opt_table(g, cap)):
        if value:
            totals[S.bit_count()] += value
    return totals


def exact_internal_expectation(g: Graph, cap: int, p: Probability) -> Fraction:
    """E|opt(H)| for H keeping each vertex independently with probability ``p``.

    Weak components are independent, so their expectations add; each
    component must have at most ``EXACT_MAX_VERTICES`` vertices.
    """
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    total = Fraction(0)
    for comp in weakly_connected_components(g):
        if len(comp) < 2:
            continue
        sub, _ = induced_subgraph(g, comp)
        totals = size_totals(sub, cap)
        n = sub.vertex_count
        total += sum((p**s * (1 - p) ** (n - s) * t
                      for s, t in enumerate(totals) if t), Fraction(0))
    return total


def claim2_closed_form(t: int, p: Probability) -> tuple[Fraction, Fraction]:
    """``((2t+1)p - 1/2 + (1/2)(1-2p)^(2t+1), 2tp)`` as exact fractions."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    half = Fraction(1, 2)
    value = (2 * t + 1) * p - half + half * (1 - 2 * p) ** (2 * t + 1)
    return value, 2 * t * p


def complete_two_cycle_graph(n: int) -> Graph:
    """K_n with every undirected edge as a directed 2-cycle."""
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(n) if u != v))


def exact_sweep(g: Graph, cap: int, ps) -> list[tuple[Fraction, Fraction, Fraction]]:
    """``(p, E|opt(H)|, p |opt(G)|)`` for each ``p`` in ``ps``, all exact."""
    opt = opt_size(g, cap)
    return [(q, exact_internal_expectation(g, cap, q), q * opt)
            for q in map(as_fraction, ps)]
