"""Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm).

The search runs one BFS per exposed vertex, contracting odd cycles through a
``base`` array, and augments along the first path it finds. Starting from an
initial matching only ever adds matched vertices: an augmenting path flips
edges along the path but both of its endpoints were exposed.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

from .graph import UndirectedGraph

Pair = tuple[int, int]


def max_matching_blossom(ug: UndirectedGraph,
                         initial: Optional[Iterable[Pair]] = None) -> tuple[Pair, ...]:
    """Return a maximum matching of ``ug`` as sorted ``(u, v)`` pairs, ``u < v``.

    ``initial`` must be a matching of ``ug``; it is grown by augmenting paths
    so every vertex it covers stays covered. Exposed vertices are tried in
    increasing id order, which makes the result deterministic.
    """
    n = ug.vertex_count
    adj = ug.neighbors
    mate = [-1] * n
    if initial is not None:
        for u, v in initial:
            if (min(u, v), max(u, v)) not in ug.edges:
                raise ValueError(f"initial pair ({u}, {v}) is not an edge")
            if mate[u] != -1 or mate[v] != -1:
                raise ValueError("initial pairs are not disjoint")
            mate[u], mate[v] = v, u

    for root in range(n):
        if mate[root] == -1 and adj[root]:
            _augment_from(root, adj, mate)

    return tuple(sorted((u, v) for u, v in enumerate(mate) if u < v))


def matching_size(ug: UndirectedGraph) -> int:
    """Number of edges in a maximum matching."""
    return len(max_matching_blossom(ug))


def _augment_from(root: int, adj, mate: list[int]) -> bool:
    n = len(mate)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                in_blossom = [False] * n
                mark_path(v, cur, to, in_blossom)
                mark_path(to, cur, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    _flip(to, parent, mate)
                    return True
                used[mate[to]] = True
                queue.append(mate[to])
    return False


def _flip(v: int, parent: list[int], mate: list[int]) -> None:
    while v != -1:
        pv = parent[v]
        nv = mate[pv]
        mate[v] = pv
        mate[pv] = v
        v = nv
