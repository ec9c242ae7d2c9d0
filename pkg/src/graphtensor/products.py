"""Products of indexed graph families under pluggable edge processes.

A product process decides, from nothing but the index set (plus optional
order / distinguished-subset structure) and the factors' vertex and edge
sets, which unordered pairs of product vertices are adjacent.  Five
built-ins are provided - cartesian, direct, strong, lexicographic and the
distinguished-subset ("d") product - together with processes defined by a
parsed constraint set on the (J, K, L) index triples.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import (
    EmptySelection,
    EqualVertices,
    MissingStructure,
    PreconditionViolated,
    UnknownIndex,
)
from .graphs import DEFAULT_BUDGET, Graph, _check_budget, render_label

BUILTIN_PROCESSES = ("cartesian", "direct", "strong", "lexicographic", "d_product")


class GraphFamily:
    """Finite indexed family of factor graphs with optional index structure.

    ``order`` is a total order on the index labels (needed by the
    lexicographic process); ``distinguished`` is a non-empty index subset
    (needed by the d-product).  Both are optional and default to absent.
    """

    __slots__ = ("index_list", "factors", "order", "distinguished")

    def __init__(self, index_list, factors, order=None, distinguished=None):
        index_list = tuple(index_list)
        if not index_list:
            raise EmptySelection("a family needs a non-empty index list")
        if len(set(index_list)) != len(index_list):
            raise UnknownIndex("duplicate labels in the index list")
        factors = dict(factors)
        for i in index_list:
            if i not in factors:
                raise UnknownIndex(f"no factor for index {i!r}")
        for i in factors:
            if i not in index_list:
                raise UnknownIndex(f"factor for unknown index {i!r}")
        if order is not None:
            order = tuple(order)
            if sorted(order) != sorted(index_list):
                raise UnknownIndex("order must be a permutation of the index list")
        if distinguished is not None:
            distinguished = frozenset(distinguished)
            if not distinguished:
                raise EmptySelection("distinguished subset must be non-empty")
            if not distinguished <= set(index_list):
                raise UnknownIndex("distinguished subset must lie in the index list")
        object.__setattr__(self, "index_list", index_list)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "distinguished", distinguished)

    def __setattr__(self, name, value):
        raise AttributeError("GraphFamily is immutable")

    def factor(self, i) -> Graph:
        if i not in self.factors:
            raise UnknownIndex(f"unknown index {i!r}")
        return self.factors[i]

    def position(self, i) -> int:
        try:
            return self.index_list.index(i)
        except ValueError:
            raise UnknownIndex(f"unknown index {i!r}") from None

    def component(self, vertex, i):
        return vertex[self.position(i)]

    def loops_possible(self) -> bool:
        return any(g.loops_allowed for g in self.factors.values())

    def order_position(self, i) -> int:
        if self.order is None:
            raise MissingStructure("family carries no order on its indices")
        return self.order.index(i)

    def __repr__(self):
        parts = ", ".join(f"{i}:{self.factors[i]!r}" for i in self.index_list)
        return f"GraphFamily({parts})"


@dataclass(frozen=True)
class JKLTriple:
    """Index classes of a vertex pair: adjacent (J), equal (K), neither (L)."""

    J: frozenset
    K: frozenset
    L: frozenset


@dataclass(frozen=True)
class ProductProcess:
    """Edge rule: one of the five built-ins, or a constraint set."""

    kind: str
    spec: object = None  # ConstraintSpec when kind == "constraint"

    @classmethod
    def builtin(cls, name: str) -> "ProductProcess":
        if name not in BUILTIN_PROCESSES:
            raise PreconditionViolated(f"unknown built-in process {name!r}")
        return cls(name)

    @classmethod
    def from_constraints(cls, spec) -> "ProductProcess":
        return cls("constraint", spec)

    @property
    def needs_order(self) -> bool:
        if self.kind == "lexicographic":
            return True
        return self.kind == "constraint" and self.spec.references_downset()

    @property
    def needs_distinguished(self) -> bool:
        if self.kind == "d_product":
            return True
        return self.kind == "constraint" and self.spec.references_distinguished()

    def describe(self) -> str:
        if self.kind == "constraint":
            return f"constraint[{self.spec.render()}]"
        return self.kind


CARTESIAN = ProductProcess.builtin("cartesian")
DIRECT = ProductProcess.builtin("direct")
STRONG = ProductProcess.builtin("strong")
LEXICOGRAPHIC = ProductProcess.builtin("lexicographic")
D_PRODUCT = ProductProcess.builtin("d_product")


def product_vertices(fam: GraphFamily, budget: int = DEFAULT_BUDGET):
    """All product vertices in lexicographic component order."""
    _check_budget(
        math.prod(len(fam.factors[i].vertices) for i in fam.index_list), budget
    )
    pools = [fam.factors[i].vertices for i in fam.index_list]
    return [tuple(choice) for choice in itertools.product(*pools)]


def jkl(f, g, fam: GraphFamily) -> JKLTriple:
    """Intrinsic index triple of a pair of distinct product vertices.

    An index whose factor has a loop at a shared component lands in both J
    and K; for simple factors the triple partitions the index set.
    """
    if f == g:
        raise EqualVertices("index triples are defined for pairs of distinct vertices")
    j, k, l = set(), set(), set()
    for pos, i in enumerate(fam.index_list):
        factor = fam.factors[i]
        x, y = f[pos], g[pos]
        edge = factor.has_edge(x, y)
        if edge:
            j.add(i)
        if x == y:
            k.add(i)
        if not edge and x != y:
            l.add(i)
    return JKLTriple(frozenset(j), frozenset(k), frozenset(l))


def _require_structure(proc: ProductProcess, fam: GraphFamily):
    if proc.needs_order and fam.order is None:
        raise MissingStructure(f"{proc.describe()} needs an order on the index set")
    if proc.needs_distinguished and fam.distinguished is None:
        raise MissingStructure(
            f"{proc.describe()} needs a distinguished index subset"
        )


def adjacent(proc: ProductProcess, f, g, fam: GraphFamily) -> bool:
    """Adjacency of two product vertices under the process.

    Equal vertices are never adjacent except under the direct process over
    loop-allowing factors, where the loop {f, f} exists iff every component
    carries a loop.
    """
    _require_structure(proc, fam)
    if f == g:
        if proc.kind != "direct":
            return False
        return all(
            fam.factors[i].has_edge(f[pos], f[pos])
            for pos, i in enumerate(fam.index_list)
        )
    if proc.kind == "constraint":
        from .constraints import constraint_adjacent  # deferred: import cycle

        return constraint_adjacent(proc.spec, f, g, fam)

    edge = []
    equal = []
    for pos, i in enumerate(fam.index_list):
        x, y = f[pos], g[pos]
        edge.append(fam.factors[i].has_edge(x, y))
        equal.append(x == y)
    n = len(fam.index_list)

    if proc.kind == "cartesian":
        return any(
            edge[j] and all(equal[i] for i in range(n) if i != j) for j in range(n)
        )
    if proc.kind == "direct":
        return all(edge)
    if proc.kind == "strong":
        return any(edge) and all(e or q for e, q in zip(edge, equal))
    if proc.kind == "lexicographic":
        hits = [i for i in range(n) if edge[i]]
        if not hits:
            return False
        ranks = [fam.order_position(fam.index_list[i]) for i in hits]
        first = min(ranks)
        return all(
            equal[pos]
            for pos, i in enumerate(fam.index_list)
            if fam.order_position(i) < first
        )
    if proc.kind == "d_product":
        return all(
            edge[pos]
            for pos, i in enumerate(fam.index_list)
            if i in fam.distinguished
        )
    raise PreconditionViolated(f"unknown process kind {proc.kind!r}")


def build_product(
    proc: ProductProcess, fam: GraphFamily, budget: int = DEFAULT_BUDGET
) -> Graph:
    """The product graph: product vertices plus process-delivered edges."""
    vertices = product_vertices(fam, budget)
    edges = [
        (f, g) for f, g in itertools.combinations(vertices, 2) if adjacent(proc, f, g, fam)
    ]
    loops = fam.loops_possible()
    if loops:
        edges.extend((f, f) for f in vertices if adjacent(proc, f, f, fam))
    return Graph(vertices, edges, loops_allowed=loops)


@dataclass(frozen=True)
class UniversalReport:
    """Outcome of checking the universal triple constraints on every edge."""

    process: str
    ok: bool
    violations: tuple

    def render(self) -> str:
        status = "pass" if self.ok else "fail"
        witness = "-" if self.ok else "; ".join(self.violations)
        return f"universal-constraints\t{self.process}\t{status}\t{witness}"


def check_universal_constraints(
    proc: ProductProcess, fam: GraphFamily, budget: int = DEFAULT_BUDGET
) -> UniversalReport:
    """Every product edge must split the index set as J | K | L with J != {}.

    Defined for simple factors, where the intrinsic triple cannot overlap.
    """
    for i in fam.index_list:
        if fam.factors[i].loops():
            raise PreconditionViolated(
                "universal-constraint checks need loop-free factors"
            )
    index_set = frozenset(fam.index_list)
    product = build_product(proc, fam, budget)
    violations = []
    for f, g in product.edges:
        t = jkl(f, g, fam)
        reasons = []
        if t.J & t.K or t.J & t.L or t.K & t.L:
            reasons.append("overlap")
        if t.J | t.K | t.L != index_set:
            reasons.append("union!=I")
        if not t.J:
            reasons.append("J empty")
        if reasons:
            violations.append(
                f"{render_label(f)}{render_label(g)}: {','.join(reasons)}"
            )
    return UniversalReport(proc.describe(), not violations, tuple(violations))


@dataclass(frozen=True)
class PermutabilityReport:
    """Outcome of permuting the index set: confirmed, violated, or rejected."""

    process: str
    permutation: tuple
    outcome: str  # "confirmed" | "violated" | "structure-violated"
    witness: str = "-"

    @property
    def confirmed(self) -> bool:
        return self.outcome == "confirmed"

    def render(self) -> str:
        perm = ",".join(f"{i}>{j}" for i, j in self.permutation)
        return f"permutability\t{self.process}[{perm}]\t{self.outcome}\t{self.witness}"


def _respects_structure(proc: ProductProcess, fam: GraphFamily, perm: dict) -> bool:
    if proc.needs_order:
        order = fam.order
        rank = {i: pos for pos, i in enumerate(order)}
        for a in order:
            for b in order:
                if (rank[a] < rank[b]) != (rank[perm[a]] < rank[perm[b]]):
                    return False
    if proc.needs_distinguished:
        if frozenset(perm[i] for i in fam.distinguished) != fam.distinguished:
            return False
    return True


def check_permutability(
    proc: ProductProcess,
    fam: GraphFamily,
    perm,
    budget: int = DEFAULT_BUDGET,
) -> PermutabilityReport:
    """Does the induced vertex bijection carry edges onto edges both ways?

    The permutation must first respect whatever structure the process
    imposes (the order for lexicographic, D for the d-product); otherwise
    the report carries the distinguished "structure-violated" outcome.
    The bijection sends f to p(f) with (p(f))(i) = f(p(i)), a vertex of the
    product of the relabelled family i -> G_{p(i)}.
    """
    perm = dict(perm)
    if sorted(perm) != sorted(fam.index_list) or sorted(perm.values()) != sorted(
        fam.index_list
    ):
        raise UnknownIndex("permutation must be a bijection of the index list")
    _require_structure(proc, fam)
    perm_items = tuple(sorted(perm.items()))
    if not _respects_structure(proc, fam, perm):
        return PermutabilityReport(proc.describe(), perm_items, "structure-violated")

    permuted = GraphFamily(
        fam.index_list,
        {i: fam.factors[perm[i]] for i in fam.index_list},
        order=fam.order,
        distinguished=fam.distinguished,
    )
    positions = [fam.position(perm[i]) for i in fam.index_list]

    def induced(f):
        return tuple(f[pos] for pos in positions)

    vertices = product_vertices(fam, budget)
    pairs = list(itertools.combinations(vertices, 2))
    if fam.loops_possible():
        pairs.extend((f, f) for f in vertices)
    for f, g in pairs:
        before = adjacent(proc, f, g, fam)
        after = adjacent(proc, induced(f), induced(g), permuted)
        if before != after:
            witness = (
                f"{render_label(f)}{render_label(g)}: "
                f"original={before} permuted={after}"
            )
            return PermutabilityReport(proc.describe(), perm_items, "violated", witness)
    return PermutabilityReport(proc.describe(), perm_items, "confirmed")
