"""Componentwise products of homomorphism families and their graphs.

For factor-wise homomorphisms phi_i : G_i -> H_i there is exactly one map
between the product vertex sets with phi(f)(i) = phi_i(f(i)).  Processes
whose constraints force L to be empty carry such maps to homomorphisms
between the products; this module checks that, the induced maps between
rebuilt factors, and the isomorphism between the graph of the product map
and the product of the factor-map graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotAHomomorphism, PreconditionViolated, UnknownIndex
from .graphs import (
    DEFAULT_BUDGET,
    Graph,
    VertexMap,
    discrete_graph,
    first_violated_edge,
    is_homomorphism,
    render_label,
)
from .congruences import p_of_factor
from .products import GraphFamily, ProductProcess, build_product, product_vertices

# Processes whose edge constraints force L = empty on every edge.
EMPTY_L_BUILTINS = ("cartesian", "direct", "strong")


class HomFamily:
    """Index-aligned homomorphisms between two graph families."""

    __slots__ = ("index_list", "source", "target", "homs")

    def __init__(self, source: GraphFamily, target: GraphFamily, homs):
        if source.index_list != target.index_list:
            raise UnknownIndex("source and target families must share the index list")
        homs = dict(homs)
        for i in source.index_list:
            if i not in homs:
                raise UnknownIndex(f"no homomorphism for index {i!r}")
            m = homs[i]
            if m.domain != source.factors[i] or m.codomain != target.factors[i]:
                raise NotAHomomorphism(
                    f"map at index {i!r} does not run between the factor graphs"
                )
            if not is_homomorphism(m):
                raise NotAHomomorphism(f"map at index {i!r} is not edge-preserving")
        object.__setattr__(self, "index_list", source.index_list)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "homs", homs)

    def __setattr__(self, name, value):
        raise AttributeError("HomFamily is immutable")


def product_of_homs(hf: HomFamily, budget: int = DEFAULT_BUDGET) -> VertexMap:
    """The unique componentwise map between the product vertex carriers."""
    source_vertices = product_vertices(hf.source, budget)
    target_vertices = product_vertices(hf.target, budget)
    homs = [hf.homs[i] for i in hf.index_list]
    mapping = {
        f: tuple(h(x) for h, x in zip(homs, f)) for f in source_vertices
    }
    return VertexMap(
        discrete_graph(source_vertices), discrete_graph(target_vertices), mapping
    )


@dataclass(frozen=True)
class HomPreservingReport:
    """Is the componentwise map a homomorphism between the products?"""

    process: str
    expected: str  # "pass" for the empty-L class, "observational" otherwise
    ok: bool
    witness: str = "-"

    def render(self) -> str:
        status = "pass" if self.ok else "fail"
        return f"hom-preserving\t{self.process}\t{status}\t{self.witness}"


def check_hom_preserving(
    proc: ProductProcess, hf: HomFamily, budget: int = DEFAULT_BUDGET
) -> HomPreservingReport:
    expected = (
        "pass"
        if proc.kind in EMPTY_L_BUILTINS
        or (proc.kind == "constraint" and proc.spec.requires_empty_l())
        else "observational"
    )
    phi = product_of_homs(hf, budget)
    source = build_product(proc, hf.source, budget)
    target = build_product(proc, hf.target, budget)
    anchored = VertexMap(source, target, phi.mapping)
    bad = first_violated_edge(anchored)
    witness = "-" if bad is None else render_label(bad[0]) + render_label(bad[1])
    return HomPreservingReport(proc.describe(), expected, bad is None, witness)


@dataclass(frozen=True)
class FactorHomReport:
    """Factor map between rebuilt factors plus the commuting-square check."""

    process: str
    index: str
    factor_hom_ok: bool
    square_ok: bool
    witness: str = "-"

    @property
    def ok(self) -> bool:
        return self.factor_hom_ok and self.square_ok

    def render(self) -> str:
        status = "pass" if self.ok else "fail"
        return f"factor-hom\t{self.process}[i={self.index}]\t{status}\t{self.witness}"


def check_factor_hom(
    proc: ProductProcess, hf: HomFamily, i, budget: int = DEFAULT_BUDGET
) -> FactorHomReport:
    """phi_i must stay a homomorphism after both factors are rebuilt, and
    the projections must commute with the componentwise map."""
    if proc.kind not in EMPTY_L_BUILTINS:
        raise PreconditionViolated(
            "factor-map checks run on the empty-L built-ins only"
        )
    pos = hf.source.position(i)
    rebuilt_source = p_of_factor(proc, hf.source, i, budget)
    rebuilt_target = p_of_factor(proc, hf.target, i, budget)
    factor_map = VertexMap(rebuilt_source, rebuilt_target, hf.homs[i].mapping)
    bad = first_violated_edge(factor_map)
    phi = product_of_homs(hf, budget)
    square_ok = all(
        phi(f)[pos] == hf.homs[i](f[pos]) for f in phi.domain.vertices
    )
    witness = "-"
    if bad is not None:
        witness = render_label(bad[0]) + render_label(bad[1])
    elif not square_ok:
        witness = "projection square does not commute"
    return FactorHomReport(
        proc.describe(), str(i), bad is None, square_ok, witness
    )


def pair_label(x, y) -> str:
    """Composite label for a vertex of a map graph."""
    return f"({render_label(x)}|{render_label(y)})"


def graph_of_hom(m: VertexMap) -> Graph:
    """The graph of a homomorphism: vertices (x, m(x)), edges where the
    images are adjacent.  Always simple; it encodes the domain vertex set,
    the map, and the induced image subgraph, and nothing else."""
    if not is_homomorphism(m):
        raise NotAHomomorphism("graphs are built from homomorphisms")
    labels = {x: pair_label(x, m(x)) for x in m.domain.vertices}
    edges = [
        (labels[x], labels[y])
        for x, y in itertools.combinations(m.domain.vertices, 2)
        if m.codomain.has_edge(m(x), m(y))
    ]
    graph = Graph(labels.values(), edges)
    # The second projection must be a homomorphism into the codomain and
    # the first must cover the domain; both hold by construction.
    second = VertexMap(graph, m.codomain, {labels[x]: m(x) for x in labels})
    assert is_homomorphism(second)
    assert set(labels) == set(m.domain.vertices)
    return graph


@dataclass(frozen=True)
class GraphProductReport:
    """Isomorphism between the graph of the product map and the product of
    the factor-map graphs."""

    process: str
    bijection_ok: bool
    edges_ok: bool
    witness: str = "-"

    @property
    def ok(self) -> bool:
        return self.bijection_ok and self.edges_ok

    def render(self) -> str:
        status = "pass" if self.ok else "fail"
        return f"hom-graph-product\t{self.process}\t{status}\t{self.witness}"


def check_hom_graph_product(
    proc: ProductProcess, hf: HomFamily, budget: int = DEFAULT_BUDGET
) -> GraphProductReport:
    """Build both sides and certify the canonical vertex correspondence.

    The left side is the graph of the componentwise map; the right side is
    the product of the factor-map graphs under the same process.  The
    correspondence sends the pair for f to the tuple of component pairs;
    both adjacency and non-adjacency must transfer.
    """
    if not (
        proc.kind in EMPTY_L_BUILTINS
        or (proc.kind == "constraint" and proc.spec.requires_empty_l())
    ):
        raise PreconditionViolated(
            "the construction needs a process whose constraints force L empty"
        )
    phi = product_of_homs(hf, budget)
    source = build_product(proc, hf.source, budget)
    target = build_product(proc, hf.target, budget)
    anchored = VertexMap(source, target, phi.mapping)
    if not is_homomorphism(anchored):
        return GraphProductReport(
            proc.describe(), False, False, "componentwise map not a homomorphism"
        )
    left = graph_of_hom(anchored)

    factor_graphs = {i: graph_of_hom(hf.homs[i]) for i in hf.index_list}
    right_family = GraphFamily(
        hf.index_list,
        factor_graphs,
        order=hf.source.order,
        distinguished=hf.source.distinguished,
    )
    right = build_product(proc, right_family, budget)

    correspondence = {}
    for f in source.vertices:
        lhs = pair_label(f, anchored(f))
        rhs = tuple(pair_label(x, hf.homs[i](x)) for i, x in zip(hf.index_list, f))
        correspondence[lhs] = rhs
    bijection_ok = (
        len(set(correspondence.values())) == len(correspondence)
        and set(correspondence.values()) == set(right.vertices)
        and set(correspondence) == set(left.vertices)
    )
    if not bijection_ok:
        return GraphProductReport(
            proc.describe(), False, False, "vertex correspondence is not a bijection"
        )
    for a, b in itertools.combinations(left.vertices, 2):
        if left.has_edge(a, b) != right.has_edge(correspondence[a], correspondence[b]):
            return GraphProductReport(
                proc.describe(), True, False, f"adjacency differs at {a},{b}"
            )
    return GraphProductReport(proc.describe(), True, True)
