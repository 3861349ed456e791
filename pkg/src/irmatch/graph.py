"""Directed compatibility graphs, bounded-length cycle enumeration and helpers.

Vertices are dense 0-based integers. A cycle is a tuple of distinct vertex ids
rotated so that its minimum vertex comes first; since cycles are directed, no
reflection is applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

Cycle = tuple[int, ...]


class GraphFormatError(ValueError):
    """Malformed graph file; ``lineno`` is 1-based (0 when not line specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)
    altruist: Optional[int] = None

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        n = self.vertex_count
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
        if self.altruist is not None and not 0 <= self.altruist < n:
            raise ValueError(f"altruist {self.altruist} out of range")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]],
                   altruist: Optional[int] = None) -> "Graph":
        edge_list = [(int(u), int(v)) for u, v in edges]
        edge_set = frozenset(edge_list)
        if len(edge_set) != len(edge_list):
            raise ValueError("duplicate edge")
        return cls(vertex_count, edge_set, altruist)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def __len__(self) -> int:
        return self.vertex_count


@dataclass(frozen=True)
class UndirectedGraph:
    vertex_count: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def to_directed(self) -> Graph:
        """Each undirected edge becomes a directed 2-cycle."""
        both = [(u, v) for u, v in self.edges] + [(v, u) for u, v in self.edges]
        return Graph(self.vertex_count, frozenset(both))

    def remove_vertex(self, v: int) -> "UndirectedGraph":
        """Drop the edges of ``v``; the vertex itself stays as an isolated id."""
        return UndirectedGraph(self.vertex_count,
                               frozenset(e for e in self.edges if v not in e))


# --------------------------------------------------------------------- file io

def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` / ``altruist d`` / ``u v`` text format."""
    lines = [(i, raw.strip()) for i, raw in enumerate(text.splitlines(), start=1)]
    lines = [(i, s) for i, s in lines if s and not s.startswith("#")]
    if not lines:
        raise GraphFormatError("missing header", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(_is_int(p) for p in parts):
        raise GraphFormatError(f"expected header 'n m', got {header!r}", lineno)
    n, m = int(parts[0]), int(parts[1])
    if n < 0 or m < 0:
        raise GraphFormatError("negative counts in header", lineno)

    body = lines[1:]
    altruist = None
    if body and body[0][1].split()[0] == "altruist":
        lineno, s = body[0]
        parts = s.split()
        if len(parts) != 2 or not _is_int(parts[1]):
            raise GraphFormatError(f"bad altruist line {s!r}", lineno)
        altruist = int(parts[1])
        if not 0 <= altruist < n:
            raise GraphFormatError(f"altruist {altruist} out of range", lineno)
        body = body[1:]

    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}",
                               body[-1][0] if body else lineno)
    edges: set[tuple[int, int]] = set()
    for lineno, s in body:
        parts = s.split()
        if len(parts) != 2 or not all(_is_int(p) for p in parts):
            raise GraphFormatError(f"expected edge 'u v', got {s!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"endpoint out of range in ({u}, {v})", lineno)
        if (u, v) in edges:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        edges.add((u, v))
    return Graph(n, frozenset(edges), altruist)


def format_graph(g: Graph) -> str:
    out = [f"{g.vertex_count} {len(g.edges)}"]
    if g.altruist is not None:
        out.append(f"altruist {g.altruist}")
    out.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(out) + "\n"


def _is_int(s: str) -> bool:
    return s.lstrip("-").isdigit()


# ------------------------------------------------------------------ structure

def canonical_cycle(seq: Sequence[int]) -> Cycle:
    i = min(range(len(seq)), key=seq.__getitem__)
    return tuple(seq[i:]) + tuple(seq[:i])


def enumerate_cycles(g: Graph, cap: int) -> list[Cycle]:
    """All simple directed cycles with 2 <= length <= cap, canonical and sorted.

    Each cycle is grown from its minimum vertex only, so no dedup is needed.
    """
    if cap < 2:
        raise ValueError("cycle cap must be at least 2")
    succ = g.successors
    found: list[Cycle] = []
    path: list[int] = []
    on_path = [False] * g.vertex_count

    def extend(root: int, u: int) -> None:
        for w in succ[u]:
            if w == root:
                if len(path) >= 2:
                    found.append(tuple(path))
            elif w > root and not on_path[w] and len(path) < cap:
                path.append(w)
                on_path[w] = True
                extend(root, w)
                on_path[w] = False
                path.pop()

    for root in range(g.vertex_count):
        path.append(root)
        on_path[root] = True
        extend(root, root)
        on_path[root] = False
        path.pop()
    found.sort()
    return found


def to_undirected(g: Graph) -> UndirectedGraph:
    """Keep only mutual edges, one undirected edge per directed 2-cycle."""
    return UndirectedGraph(
        g.vertex_count,
        frozenset((u, v) for u, v in g.edges if u < v and (v, u) in g.edges),
    )


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph on ``keep`` relabelled to 0..len(keep)-1 in increasing id order.

    Returns ``(subgraph, id_map)`` where ``id_map[local] == original``. The
    altruist survives only if kept.
    """
    id_map = tuple(sorted(set(keep)))
    n = g.vertex_count
    local = [-1] * n
    for i, v in enumerate(id_map):
        if not 0 <= v < n:
            raise ValueError(f"invalid vertex id {v}")
        local[v] = i
    if len(id_map) == n:
        return g, id_map
    succ = g.successors
    edges = []
    for v in id_map:
        lv = local[v]
        for w in succ[v]:
            lw = local[w]
            if lw >= 0:
                edges.append((lv, lw))
    altruist = None
    if g.altruist is not None and local[g.altruist] >= 0:
        altruist = local[g.altruist]
    return Graph(len(id_map), frozenset(edges), altruist), id_map


def weakly_connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the weak components, each sorted, ordered by minimum id."""
    parent = list(range(g.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for v in range(g.vertex_count):
        groups.setdefault(find(v), []).append(v)
    return [tuple(groups[r]) for r in sorted(groups)]


def add_altruist_backedges(g: Graph) -> Graph:
    """Turn chains from the altruist into cycles by pointing everyone back at it."""
    if g.altruist is None:
        raise ValueError("graph has no altruist")
    d = g.altruist
    extra = ((v, d) for v in range(g.vertex_count) if v != d)
    return Graph(g.vertex_count, g.edges | frozenset(extra), d)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Place the graphs side by side; only the first altruist is kept."""
    edges = []
    offset = 0
    altruist = None
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        if altruist is None and h.altruist is not None:
            altruist = h.altruist + offset
        offset += h.vertex_count
    return Graph(offset, frozenset(edges), altruist)
