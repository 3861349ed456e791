"""Constructors for the named example graphs, each with its known optimum."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Any, Callable

from .graph import Graph, UndirectedGraph, disjoint_union


@dataclass(frozen=True)
class NamedInstance:
    name: str
    graph: Graph
    cycle_cap: int
    known_opt: int
    notes: str = ""
    params: dict[str, Any] = field(default_factory=dict, compare=False)


FIGURE1_EDGES = ((0, 1), (1, 4), (4, 0), (1, 2), (2, 5), (5, 1), (2, 3), (3, 6), (6, 2))
# v1..v7 -> 0..6; the blue player owns v2, v3, v6
FIGURE1_BLUE = (1, 2, 5)


def gen_figure1() -> NamedInstance:
    return NamedInstance(
        "figure1", Graph.from_edges(7, FIGURE1_EDGES), 3, 6,
        "three 3-cycles chained through v2 and v3; v1..v7 are ids 0..6",
    )


# v1..v6 -> 0..5, u1, u2 -> 6, 7 (the A side), w1..w9 -> 8..16 (three triangles)
FIGURE2_EDGES = (
    (0, 3),                                  # teal pair v1-v4
    (1, 4), (2, 5), (1, 2), (4, 5),          # orange square v2 v5 v6 v3
    (6, 7), (6, 0), (6, 9), (6, 8),          # star at u1
    (7, 2), (7, 11), (7, 10),                # star at u2
    (8, 12), (8, 13), (12, 13),              # triangle w1 w5 w6
    (9, 10), (10, 14), (14, 9),              # triangle w2 w3 w7
    (11, 15), (11, 16), (15, 16),            # triangle w4 w8 w9
)


def figure2_undirected() -> UndirectedGraph:
    return UndirectedGraph(17, frozenset(FIGURE2_EDGES))


def gen_figure2() -> NamedInstance:
    return NamedInstance(
        "figure2", figure2_undirected().to_directed(), 2, 16,
        "17-vertex graph with |A|=2, |C|=6 and three triangle D-components",
    )


def gen_star_forest(n: int) -> NamedInstance:
    """floor(n / log2 n) stars of log2 n vertices, leaves on 2-cycles with the center."""
    if n < 4 or n & (n - 1):
        raise ValueError("n must be a power of two, at least 4")
    size = n.bit_length() - 1
    stars = n // size
    edges = []
    for s in range(stars):
        center = s * size
        for leaf in range(center + 1, center + size):
            edges += [(center, leaf), (leaf, center)]
    return NamedInstance(
        "star_forest", Graph.from_edges(stars * size, edges), 2, 2 * stars,
        f"{stars} stars of {size} vertices, center first",
        {"n": n, "stars": stars, "star_size": size},
    )


def layered_layout(n: int) -> tuple[range, range, range, range]:
    m = n // 4
    return range(0, m), range(m, 2 * m), range(2 * m, 3 * m), range(3 * m, 4 * m)


def gen_layered(n: int) -> NamedInstance:
    """Layers A, B, C, D with A->B->C->A complete and C<->D complete."""
    if n < 4 or n % 4:
        raise ValueError("n must be a positive multiple of 4")
    A, B, C, D = layered_layout(n)
    edges = [(x, y) for src, dst in ((A, B), (B, C), (C, A), (C, D), (D, C))
             for x in src for y in dst]
    return NamedInstance(
        "layered", Graph.from_edges(n, edges), 3, 3 * n // 4,
        "four layers of n/4; A-B-C triangles and C-D pairs",
        {"n": n},
    )


def layered_internal_opt(a: int, b: int, c: int, d: int) -> int:
    """Internal optimum of a player holding a, b, c, d vertices of the layers.

    Every cycle uses exactly one C vertex: a 3-cycle yields 3 and a 2-cycle
    yields 2, so take as many 3-cycles as possible, then fill with 2-cycles.
    """
    triples = min(a, b, c)
    return 3 * triples + 2 * min(d, c - triples)


def gen_appb_triangle(copies: int = 1) -> NamedInstance:
    if copies < 1:
        raise ValueError("copies must be at least 1")
    tri = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)])
    return NamedInstance(
        "appb_triangle", disjoint_union([tri] * copies), 2, 2 * copies,
        "disjoint triangles of 2-cycles", {"copies": copies},
    )


def gen_appb_pentagon(cap: int = 3) -> NamedInstance:
    edges = []
    for i in range(5):
        j = (i + 1) % 5
        edges += [(i, j), (j, i)]
    return NamedInstance("appb_pentagon", Graph.from_edges(5, edges), cap, 4,
                         "5-cycle of 2-cycles")


def long_chain_layout(n: int) -> tuple[int, tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """``(altruist, chain, layers)`` vertex ids for ``gen_long_chain(n)``."""
    chain_len = 3 * n // 9
    n_layers = 2 * n // 9
    chain = tuple(range(1, chain_len + 1))
    first = chain_len + 1
    layers = tuple(tuple(range(first + 3 * i, first + 3 * i + 3)) for i in range(n_layers))
    return 0, chain, layers


def gen_long_chain(n: int) -> NamedInstance:
    """Altruist 0, a path of 3n/9 vertices, and 2n/9 layers of three.

    The altruist is not counted in ``n``, so the graph has ``n + 1`` vertices.
    """
    if n < 9 or n % 9:
        raise ValueError("n must be a positive multiple of 9")
    d, chain, layers = long_chain_layout(n)
    edges = [(d, chain[0])] + list(zip(chain, chain[1:]))
    for i, layer in enumerate(layers):
        edges += [(d, v) for v in layer]
        later = [w for lay in layers[i + 1:] for w in lay]
        edges += [(v, w) for v in layer for w in later]
    g = Graph.from_edges(n + 1, edges, altruist=d)
    return NamedInstance("long_chain", g, len(chain) + 1, len(chain),
                         "altruist-initiated chain beside a layered DAG",
                         {"n": n})


def disjoint_copies(inst: NamedInstance, copies: int) -> NamedInstance:
    if copies < 1:
        raise ValueError("copies must be at least 1")
    if copies == 1:
        return inst
    return replace(inst, name=f"{inst.name}_x{copies}",
                   graph=disjoint_union([inst.graph] * copies),
                   known_opt=inst.known_opt * copies,
                   params={**inst.params, "copies": copies})


def random_digraph(n: int, p_mutual: float, p_oneway: float,
                   rng: random.Random) -> Graph:
    """Small random digraph for oracle corpora: each pair is a 2-cycle with
    probability ``p_mutual``, otherwise each direction appears with ``p_oneway``.
    """
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p_mutual:
                edges |= {(u, v), (v, u)}
            else:
                if rng.random() < p_oneway:
                    edges.add((u, v))
                if rng.random() < p_oneway:
                    edges.add((v, u))
    return Graph(n, frozenset(edges))


GENERATORS: dict[str, Callable[..., NamedInstance]] = {
    "figure1": gen_figure1,
    "figure2": gen_figure2,
    "star_forest": gen_star_forest,
    "layered": gen_layered,
    "appb_triangle": gen_appb_triangle,
    "appb_pentagon": gen_appb_pentagon,
    "long_chain": gen_long_chain,
}


def make_instance(name: str, n: int | None = None, copies: int = 1) -> NamedInstance:
    """Build a named instance; ``n`` feeds size-parameterised generators."""
    if name not in GENERATORS:
        raise ValueError(f"unknown instance {name!r}; choose from {sorted(GENERATORS)}")
    if name in ("star_forest", "layered", "long_chain"):
        if n is None:
            raise ValueError(f"instance {name!r} needs --n")
        inst = GENERATORS[name](n)
    elif name == "appb_triangle":
        return gen_appb_triangle(copies)
    else:
        inst = GENERATORS[name]()
    return disjoint_copies(inst, copies)
