"""Finite loop-allowing graphs and the maps between them.

Vertex labels are opaque values carrying a total order: plain strings in
the small catalogue, tuples of labels for product vertices.  Edges are
unordered pairs stored in normalized form; a pair (x, x) is a loop.  Graph
equality compares vertex and edge sets only, so a graph and its
loop-allowing reconstruction with the same edges are equal.
"""

from __future__ import annotations

import itertools
from collections import Counter

from .errors import (
    DanglingEndpoint,
    EmptySelection,
    EmptyVertexSet,
    LoopForbidden,
    SearchBudgetExceeded,
    UnknownVertex,
)

# Cap on the raw size of any exhaustive search space (|V_H| ** |V_G|,
# product of factor orders, 2 ** ambiguous-index-count).
DEFAULT_BUDGET = 10_000_000


def sort_key(label):
    """Deterministic order over labels: strings before tuples, recursively."""
    if isinstance(label, tuple):
        return (1, tuple(sort_key(part) for part in label))
    return (0, str(label))


def normalize_edge(x, y):
    """Unordered pair as a sorted tuple; a loop stays (x, x)."""
    return (x, y) if sort_key(x) <= sort_key(y) else (y, x)


def edge_key(edge):
    return (sort_key(edge[0]), sort_key(edge[1]))


def render_label(label) -> str:
    """Readable form of a label; tuples render as "(a,b)"."""
    if isinstance(label, tuple):
        return "(" + ",".join(render_label(part) for part in label) + ")"
    return str(label)


class Graph:
    """Undirected finite graph, optionally allowing loops.

    Vertices and edges are canonicalized and immutable after construction.
    ``loops_allowed`` gates construction (a loop in a loop-free graph raises
    LoopForbidden) but does not take part in equality or hashing.
    """

    __slots__ = ("vertices", "edges", "loops_allowed", "_vset", "_eset")

    def __init__(self, vertices, edges=(), loops_allowed: bool = False):
        vset = set(vertices)
        if not vset:
            raise EmptyVertexSet("a graph needs a non-empty vertex set")
        eset = set()
        for pair in edges:
            x, y = pair
            if x not in vset or y not in vset:
                raise DanglingEndpoint(f"edge endpoint not a vertex: {pair!r}")
            if x == y and not loops_allowed:
                raise LoopForbidden(f"loop at {x!r} in a loop-free graph")
            eset.add(normalize_edge(x, y))
        object.__setattr__(self, "vertices", tuple(sorted(vset, key=sort_key)))
        object.__setattr__(self, "edges", tuple(sorted(eset, key=edge_key)))
        object.__setattr__(self, "loops_allowed", bool(loops_allowed))
        object.__setattr__(self, "_vset", frozenset(vset))
        object.__setattr__(self, "_eset", frozenset(eset))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def has_vertex(self, x) -> bool:
        return x in self._vset

    def has_edge(self, x, y) -> bool:
        return normalize_edge(x, y) in self._eset

    def loops(self):
        return tuple(x for x, y in self.edges if x == y)

    def degree_signature(self, v):
        """(non-loop degree, loop present) - preserved by isomorphisms."""
        plain = sum(1 for x, y in self.edges if x != y and v in (x, y))
        return (plain, self.has_edge(v, v))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vset == other._vset and self._eset == other._eset

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        verts = ",".join(render_label(v) for v in self.vertices)
        edges = " ".join(
            render_label(x) + "-" + render_label(y) for x, y in self.edges
        )
        return f"Graph[{verts} | {edges}]"


def make_graph(labels, edge_pairs, loops_allowed: bool = False) -> Graph:
    """Canonical graph from labels and unordered edge pairs."""
    return Graph(labels, edge_pairs, loops_allowed)


def discrete_graph(labels) -> Graph:
    """Edgeless carrier graph on the given labels."""
    return Graph(labels, ())


class VertexMap:
    """Total map from the vertex set of one graph into another's."""

    __slots__ = ("domain", "codomain", "mapping")

    def __init__(self, domain: Graph, codomain: Graph, mapping):
        mapping = dict(mapping)
        for v in mapping:
            if not domain.has_vertex(v):
                raise UnknownVertex(f"{v!r} is not a vertex of the domain")
        for v in domain.vertices:
            if v not in mapping:
                raise UnknownVertex(f"map is undefined at {v!r}")
            if not codomain.has_vertex(mapping[v]):
                raise UnknownVertex(
                    f"image {mapping[v]!r} of {v!r} is not a codomain vertex"
                )
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "mapping", mapping)

    def __setattr__(self, name, value):
        raise AttributeError("VertexMap is immutable")

    def __call__(self, v):
        return self.mapping[v]

    def image(self) -> frozenset:
        return frozenset(self.mapping.values())

    def is_injective(self) -> bool:
        return len(self.image()) == len(self.domain.vertices)

    def is_surjective(self) -> bool:
        return self.image() == frozenset(self.codomain.vertices)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def then(self, other: "VertexMap") -> "VertexMap":
        """Composite map: first self, then other."""
        return VertexMap(
            self.domain, other.codomain, {v: other(self(v)) for v in self.domain.vertices}
        )

    def items(self):
        return sorted(self.mapping.items(), key=lambda kv: sort_key(kv[0]))

    def __eq__(self, other):
        if not isinstance(other, VertexMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, tuple(self.items())))

    def __repr__(self):
        body = ", ".join(
            f"{render_label(v)}->{render_label(w)}" for v, w in self.items()
        )
        return f"VertexMap{{{body}}}"


def identity_map(g: Graph) -> VertexMap:
    return VertexMap(g, g, {v: v for v in g.vertices})


def first_violated_edge(m: VertexMap):
    """First domain edge (in storage order) whose image is not an edge."""
    for x, y in m.domain.edges:
        if not m.codomain.has_edge(m(x), m(y)):
            return (x, y)
    return None


def is_homomorphism(m: VertexMap) -> bool:
    """True iff every domain edge maps onto a codomain edge.

    An image pair with equal endpoints counts as an edge only when the
    codomain carries that loop.
    """
    return first_violated_edge(m) is None


def _check_budget(space: int, budget: int):
    if space > budget:
        raise SearchBudgetExceeded(
            f"search space of size {space} exceeds budget {budget}"
        )


def enumerate_homomorphisms(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET):
    """All edge-preserving total maps g -> h, in lexicographic image order.

    Backtracks over domain vertices in label order, pruning as soon as an
    edge among the assigned prefix fails; the emitted order equals that of
    filtering all |V_h| ** |V_g| maps.
    """
    _check_budget(len(h.vertices) ** len(g.vertices), budget)
    domain_order = g.vertices
    adjacency = {
        v: [u for u in domain_order if g.has_edge(v, u)] for v in domain_order
    }
    position = {v: i for i, v in enumerate(domain_order)}
    found = []
    partial = {}

    def extend(k: int):
        if k == len(domain_order):
            found.append(VertexMap(g, h, dict(partial)))
            return
        v = domain_order[k]
        earlier = [u for u in adjacency[v] if position[u] <= k]
        for w in h.vertices:
            if all(h.has_edge(w, partial[u]) if u != v else h.has_edge(w, w)
                   for u in earlier):
                partial[v] = w
                extend(k + 1)
                del partial[v]

    extend(0)
    return found


def find_isomorphism(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET):
    """A bijection preserving edges, non-edges and loop status, or None.

    Plain backtracking over label order with degree-signature pruning;
    deterministic for fixed labels.  Instances stay tiny by design.
    """
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    sig_g = Counter(g.degree_signature(v) for v in g.vertices)
    sig_h = Counter(h.degree_signature(v) for v in h.vertices)
    if sig_g != sig_h:
        return None
    _check_budget(len(h.vertices) ** len(g.vertices), budget)

    domain_order = g.vertices
    partial = {}
    used = set()

    def extend(k: int):
        if k == len(domain_order):
            return dict(partial)
        v = domain_order[k]
        for w in h.vertices:
            if w in used:
                continue
            if h.degree_signature(w) != g.degree_signature(v):
                continue
            if any(g.has_edge(v, u) != h.has_edge(w, partial[u])
                   for u in partial):
                continue
            partial[v] = w
            used.add(w)
            result = extend(k + 1)
            if result is not None:
                return result
            del partial[v]
            used.discard(w)
        return None

    mapping = extend(0)
    if mapping is None:
        return None
    return VertexMap(g, h, mapping)


def disjoint_union(graphs) -> Graph:
    """Union with vertices tagged (position, label) by source graph."""
    vertices = []
    edges = []
    loops = False
    for i, g in enumerate(graphs):
        tag = str(i)
        vertices.extend((tag, v) for v in g.vertices)
        edges.extend(((tag, x), (tag, y)) for x, y in g.edges)
        loops = loops or g.loops_allowed
    return Graph(vertices, edges, loops_allowed=loops)


def induced_subgraph(g: Graph, selection) -> Graph:
    """Subgraph on the selected vertices with all edges among them."""
    chosen = set(selection)
    if not chosen:
        raise EmptySelection("induced subgraph needs a non-empty selection")
    for v in chosen:
        if not g.has_vertex(v):
            raise UnknownVertex(f"{v!r} is not a vertex of the graph")
    kept = [(x, y) for x, y in g.edges if x in chosen and y in chosen]
    return Graph(chosen, kept, loops_allowed=g.loops_allowed)


def all_total_maps(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET):
    """Every total map g -> h in lexicographic image order (no edge check)."""
    _check_budget(len(h.vertices) ** len(g.vertices), budget)
    for images in itertools.product(h.vertices, repeat=len(g.vertices)):
        yield VertexMap(g, h, dict(zip(g.vertices, images)))
