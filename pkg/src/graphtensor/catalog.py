"""Named small graphs and exhaustive catalogues used by the suites."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .graphs import Graph, find_isomorphism

_LABELS = "abcdefgh"


def complete(n: int) -> Graph:
    labels = _LABELS[:n]
    return Graph(labels, itertools.combinations(labels, 2))


def path(n: int) -> Graph:
    labels = _LABELS[:n]
    return Graph(labels, zip(labels, labels[1:]))


def cycle(n: int) -> Graph:
    labels = _LABELS[:n]
    edges = list(zip(labels, labels[1:])) + [(labels[-1], labels[0])]
    return Graph(labels, edges)


def edgeless(n: int) -> Graph:
    return Graph(_LABELS[:n], ())


def k1() -> Graph:
    return complete(1)


def k2() -> Graph:
    return complete(2)


def k3() -> Graph:
    return complete(3)


def p3() -> Graph:
    return path(3)


def c4() -> Graph:
    return cycle(4)


def c6() -> Graph:
    return cycle(6)


def two_k2() -> Graph:
    return Graph("abcd", [("a", "b"), ("c", "d")])


def two_k1() -> Graph:
    return edgeless(2)


def two_k3() -> Graph:
    labels = "abcdef"
    return Graph(
        labels,
        list(itertools.combinations("abc", 2)) + list(itertools.combinations("def", 2)),
    )


def with_loops(g: Graph, at=None) -> Graph:
    """Copy of g with loops added at the given vertices (default: all)."""
    where = g.vertices if at is None else tuple(at)
    return Graph(
        g.vertices, list(g.edges) + [(v, v) for v in where], loops_allowed=True
    )


def loopy_k1() -> Graph:
    return with_loops(k1())


NAMED = {
    "K1": k1,
    "K2": k2,
    "K3": k3,
    "P3": p3,
    "C4": c4,
    "C6": c6,
    "2K1": two_k1,
    "2K2": two_k2,
}


@lru_cache(maxsize=None)
def all_graphs(max_vertices: int, include_loops: bool = True):
    """Every graph on 1..max_vertices vertices, one per isomorphism class.

    Enumerates all labelled edge subsets (loops included when asked) and
    keeps the first representative of each class in enumeration order, so
    the result is deterministic.  Intended for max_vertices <= 4.
    """
    found = []
    for n in range(1, max_vertices + 1):
        labels = _LABELS[:n]
        slots = list(itertools.combinations(labels, 2))
        if include_loops:
            slots += [(v, v) for v in labels]
        buckets = {}
        for take in range(len(slots) + 1):
            for chosen in itertools.combinations(slots, take):
                g = Graph(labels, chosen, loops_allowed=include_loops)
                key = (
                    len(g.edges),
                    tuple(sorted(g.degree_signature(v) for v in g.vertices)),
                )
                bucket = buckets.setdefault(key, [])
                if all(find_isomorphism(g, seen) is None for seen in bucket):
                    bucket.append(g)
        for key in sorted(buckets):
            found.extend(buckets[key])
    return tuple(found)
