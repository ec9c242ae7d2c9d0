"""Congruences on loop-allowing graphs, quotients, kernels and projections.

A congruence pairs an equivalence relation on the vertices with an edge
superset that is substitutive under it.  Quotients by such pairs are how
projections out of a product are repaired into homomorphisms: the factor
is rebuilt as (V_i, Ehat_i) with every pair realized by a product edge
added, loops included.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    NotACongruence,
    NotAHomomorphism,
    UnknownIndex,
    UnknownVertex,
)
from .graphs import (
    DEFAULT_BUDGET,
    Graph,
    VertexMap,
    first_violated_edge,
    is_homomorphism,
    normalize_edge,
    render_label,
    sort_key,
)
from .products import DIRECT, GraphFamily, ProductProcess, build_product


class Congruence:
    """Candidate congruence: vertex classes plus an edge superset.

    Construction validates only that labels belong to the base graph;
    whether the pair actually satisfies the congruence laws is the job of
    is_congruence, so counterexamples are representable.
    """

    __slots__ = ("base", "classes", "ehat", "_class_of")

    def __init__(self, base: Graph, classes, ehat):
        canonical = []
        for cls in classes:
            members = tuple(sorted(set(cls), key=sort_key))
            for v in members:
                if not base.has_vertex(v):
                    raise UnknownVertex(f"{v!r} is not a vertex of the base graph")
            if members:
                canonical.append(members)
        canonical.sort(key=lambda c: sort_key(c[0]))
        pairs = set()
        for pair in ehat:
            x, y = pair
            if not base.has_vertex(x) or not base.has_vertex(y):
                raise UnknownVertex(f"ehat pair {pair!r} leaves the vertex set")
            pairs.add(normalize_edge(x, y))
        class_of = {}
        for cls in canonical:
            for v in cls:
                class_of.setdefault(v, cls)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "classes", tuple(canonical))
        object.__setattr__(self, "ehat", frozenset(pairs))
        object.__setattr__(self, "_class_of", class_of)

    def __setattr__(self, name, value):
        raise AttributeError("Congruence is immutable")

    @classmethod
    def identity(cls, base: Graph) -> "Congruence":
        """The smallest congruence: singleton classes, ehat = E."""
        return cls(base, [[v] for v in base.vertices], base.edges)

    def class_of(self, v):
        if v not in self._class_of:
            raise UnknownVertex(f"{v!r} is in no class")
        return self._class_of[v]

    def representative(self, v):
        return self.class_of(v)[0]

    def related(self, x, y) -> bool:
        return self.class_of(x) is self.class_of(y)

    def ehat_graph(self) -> Graph:
        """The base vertex set carrying the edge superset."""
        return Graph(self.base.vertices, self.ehat, loops_allowed=True)

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return (
            self.base == other.base
            and self.classes == other.classes
            and self.ehat == other.ehat
        )

    def __hash__(self):
        return hash((self.base, self.classes, self.ehat))

    def __repr__(self):
        cl = " ".join(
            "{" + ",".join(render_label(v) for v in c) + "}" for c in self.classes
        )
        return f"Congruence[{cl} | {len(self.ehat)} pairs]"


def is_congruence(c: Congruence) -> bool:
    """Check all three laws: partition, edge containment, substitutivity."""
    seen = [v for cls in c.classes for v in cls]
    if len(seen) != len(set(seen)) or set(seen) != set(c.base.vertices):
        return False
    if not set(c.base.edges) <= c.ehat:
        return False
    for x, y in c.ehat:
        for x2 in c.class_of(x):
            for y2 in c.class_of(y):
                if normalize_edge(x2, y2) not in c.ehat:
                    return False
    return True


def congruence_closure(g: Graph, gen_pairs, extra_edges=()) -> Congruence:
    """Smallest congruence whose relation joins gen_pairs and whose edge
    superset contains E plus extra_edges."""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for pair in gen_pairs:
        x, y = pair
        if not g.has_vertex(x) or not g.has_vertex(y):
            raise UnknownVertex(f"generator pair {pair!r} leaves the vertex set")
        parent[find(x)] = find(y)
    groups = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    classes = list(groups.values())

    seeds = set(g.edges)
    for pair in extra_edges:
        x, y = pair
        if not g.has_vertex(x) or not g.has_vertex(y):
            raise UnknownVertex(f"extra edge {pair!r} leaves the vertex set")
        seeds.add(normalize_edge(x, y))

    # Substituting along a fixed equivalence saturates in a single pass:
    # replacing endpoints twice reaches nothing new.
    members = {find(v): tuple(groups[find(v)]) for v in g.vertices}
    ehat = set()
    for x, y in seeds:
        for x2 in members[find(x)]:
            for y2 in members[find(y)]:
                ehat.add(normalize_edge(x2, y2))
    return Congruence(g, classes, ehat)


def quotient(c: Congruence):
    """Quotient graph on the classes plus the class map.

    Class vertices are labelled "[m]" with m the least member.  The class
    map is anchored on the (V, ehat) graph; it is a homomorphism from
    there, hence from the base graph as well.
    """
    if not is_congruence(c):
        raise NotACongruence("quotient requires a valid congruence")
    label = {cls: f"[{render_label(cls[0])}]" for cls in c.classes}
    edges = [
        (label[c.class_of(x)], label[c.class_of(y)]) for x, y in c.ehat
    ]
    graph = Graph(label.values(), edges, loops_allowed=True)
    class_map = VertexMap(
        c.ehat_graph(), graph, {v: label[c.class_of(v)] for v in c.base.vertices}
    )
    return graph, class_map


def kernel(m: VertexMap) -> Congruence:
    """Congruence induced by a homomorphism: equal-image classes plus the
    preimages of codomain edges (loops included)."""
    if not is_homomorphism(m):
        raise NotAHomomorphism("kernels are defined for homomorphisms")
    fibers = {}
    for v in m.domain.vertices:
        fibers.setdefault(m(v), []).append(v)
    ehat = [
        (u, v)
        for u, v in itertools.combinations_with_replacement(m.domain.vertices, 2)
        if m.codomain.has_edge(m(u), m(v))
    ]
    return Congruence(m.domain, fibers.values(), ehat)


def projection_congruence(
    proc: ProductProcess, fam: GraphFamily, i, budget: int = DEFAULT_BUDGET
) -> Congruence:
    """Identity classes on the factor, edges widened by product projections."""
    pos = fam.position(i)
    factor = fam.factors[i]
    product = build_product(proc, fam, budget)
    ehat = set(factor.edges)
    ehat.update(normalize_edge(f[pos], g[pos]) for f, g in product.edges)
    return Congruence(factor, [[v] for v in factor.vertices], ehat)


def p_of_factor(
    proc: ProductProcess, fam: GraphFamily, i, budget: int = DEFAULT_BUDGET
) -> Graph:
    """The factor rebuilt so its projection is a homomorphism.

    The quotient is by an identity-class congruence, so the original
    vertex labels are kept: the result is (V_i, Ehat_i), loop-allowing.
    """
    c = projection_congruence(proc, fam, i, budget)
    return Graph(c.base.vertices, c.ehat, loops_allowed=True)


@dataclass(frozen=True)
class ProjectionReport:
    """Whether a projection is a homomorphism onto the rebuilt factor."""

    process: str
    index: str
    ok: bool
    witness: str = "-"

    def render(self) -> str:
        status = "pass" if self.ok else "fail"
        return f"projection-hom\t{self.process}[i={self.index}]\t{status}\t{self.witness}"


def check_projection_hom(
    proc: ProductProcess, fam: GraphFamily, i, budget: int = DEFAULT_BUDGET
) -> ProjectionReport:
    if i not in fam.index_list:
        raise UnknownIndex(f"unknown index {i!r}")
    pos = fam.position(i)
    product = build_product(proc, fam, budget)
    target = p_of_factor(proc, fam, i, budget)
    projection = VertexMap(product, target, {f: f[pos] for f in product.vertices})
    bad = first_violated_edge(projection)
    witness = "-" if bad is None else render_label(bad[0]) + render_label(bad[1])
    return ProjectionReport(proc.describe(), str(i), bad is None, witness)


@dataclass(frozen=True)
class InclusionReport:
    """Edge inclusion of a product in the direct product of rebuilt factors."""

    process: str
    ok: bool
    equality: bool
    missing: str = "-"
    extra_count: int = 0

    def render(self) -> str:
        status = "pass" if self.ok else "fail"
        detail = "equal" if self.equality else f"strict(+{self.extra_count})"
        witness = detail if self.ok else self.missing
        return f"product-inclusion\t{self.process}\t{status}\t{witness}"


def check_product_inclusion(
    proc: ProductProcess, fam: GraphFamily, budget: int = DEFAULT_BUDGET
) -> InclusionReport:
    """Every product edge must survive in the direct product of the rebuilt
    factors (the identity on V is a bijective homomorphism)."""
    product = build_product(proc, fam, budget)
    rebuilt = GraphFamily(
        fam.index_list,
        {i: p_of_factor(proc, fam, i, budget) for i in fam.index_list},
    )
    envelope = build_product(DIRECT, rebuilt, budget)
    missing = [e for e in product.edges if not envelope.has_edge(*e)]
    extra = len(envelope.edges) - (len(product.edges) - len(missing))
    witness = (
        "-"
        if not missing
        else render_label(missing[0][0]) + render_label(missing[0][1])
    )
    return InclusionReport(
        proc.describe(), not missing, extra == 0 and not missing, witness, extra
    )
