"""Universal-property verification for canonical product tensors.

A pair (phi, T) with phi a surjective product morphism is checked against
the universal factorization condition: every product morphism into a
target must factor through T.  Success is evidence at the tested scale;
failure is a genuine counterexample with a witness.  Surjectivity of phi
pins down the factor map completely (its value on phi(x) must be
delta(x)), so the deterministic map search reduces to building that one
candidate and checking it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DomainMismatch,
    NoFactorization,
    PreconditionViolated,
)
from .graphs import (
    DEFAULT_BUDGET,
    Graph,
    VertexMap,
    discrete_graph,
    enumerate_homomorphisms,
    is_homomorphism,
    render_label,
)
from .products import GraphFamily, ProductProcess, build_product


class TensorCandidate:
    """A target graph with a map from the product vertex carrier into it."""

    __slots__ = ("phi", "target")

    def __init__(self, phi: VertexMap, target: Graph):
        if phi.codomain != target:
            raise DomainMismatch("phi must land in the candidate target graph")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "target", target)

    def __setattr__(self, name, value):
        raise AttributeError("TensorCandidate is immutable")

    @classmethod
    def identity(cls, product: Graph) -> "TensorCandidate":
        phi = VertexMap(
            discrete_graph(product.vertices), product, {v: v for v in product.vertices}
        )
        return cls(phi, product)

    @classmethod
    def from_mapping(cls, carrier_labels, target: Graph, mapping) -> "TensorCandidate":
        phi = VertexMap(discrete_graph(carrier_labels), target, mapping)
        return cls(phi, target)


def is_product_morphism(
    m: VertexMap, proc: ProductProcess, fam: GraphFamily, h: Graph,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Is m, read on the product vertex set, a homomorphism into h?"""
    product = build_product(proc, fam, budget)
    if set(m.mapping) != set(product.vertices):
        raise DomainMismatch("map is not carried by the product vertex set")
    for w in m.mapping.values():
        if not h.has_vertex(w):
            raise DomainMismatch("map leaves the target vertex set")
    return is_homomorphism(VertexMap(product, h, m.mapping))


@dataclass(frozen=True)
class TensorReport:
    """Outcome of the universal-property check.

    condition is "pre" (phi not a product morphism), "i" (not surjective)
    or "ii" (some morphism fails to factor); None when the check passed.
    """

    status: str
    condition: str = None
    reason: str = "-"
    witness_target: Graph = None
    witness_delta: VertexMap = None
    factor_found: bool = True

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def render(self) -> str:
        cond = self.condition or "-"
        target = repr(self.witness_target) if self.witness_target else "-"
        delta = repr(self.witness_delta) if self.witness_delta else "-"
        return (
            f"condition={cond} status={self.status} witness_target={target} "
            f"witness_delta={delta} factor_found={self.factor_found}"
        )


def _unique_factor(phi: VertexMap, delta: VertexMap):
    """The only possible factor map target -> codomain(delta), or None.

    Well-defined iff delta is constant on every phi-fiber; surjectivity of
    phi (condition i) guarantees totality.
    """
    factor = {}
    for x in delta.domain.vertices:
        y = phi(x)
        value = delta(x)
        if y in factor and factor[y] != value:
            return None
        factor[y] = value
    return factor


def _verify_against(
    cand: TensorCandidate, product: Graph, targets, budget: int
) -> TensorReport:
    if set(cand.phi.mapping) != set(product.vertices):
        raise DomainMismatch("candidate map is not carried by the product vertex set")
    anchored = VertexMap(product, cand.target, cand.phi.mapping)
    if not is_homomorphism(anchored):
        return TensorReport(
            "fail", "pre", "phi is not a homomorphism from the product"
        )
    if anchored.image() != frozenset(cand.target.vertices):
        missed = sorted(
            set(cand.target.vertices) - set(anchored.image()),
            key=lambda v: render_label(v),
        )
        return TensorReport(
            "fail", "i", f"phi misses {render_label(missed[0])}"
        )
    for h in targets:
        for delta in enumerate_homomorphisms(product, h, budget):
            factor = _unique_factor(anchored, delta)
            ok = factor is not None
            if ok:
                candidate = VertexMap(cand.target, h, factor)
                ok = is_homomorphism(candidate)
                if ok:
                    assert all(factor[anchored(x)] == delta(x) for x in product.vertices)
            if not ok:
                return TensorReport(
                    "fail", "ii", "no factor map", h, delta, factor_found=False
                )
    return TensorReport("pass")


def verify_tensor_product(
    cand: TensorCandidate,
    proc: ProductProcess,
    fam: GraphFamily,
    targets,
    budget: int = DEFAULT_BUDGET,
) -> TensorReport:
    """Check surjectivity and the factorization condition over the targets.

    Sound for failure: a fail report carries the morphism with no factor.
    A pass is exhaustive for the supplied targets only.
    """
    product = build_product(proc, fam, budget)
    return _verify_against(cand, product, targets, budget)


def extract_isomorphism(
    cand: TensorCandidate,
    proc: ProductProcess,
    fam: GraphFamily,
    budget: int = DEFAULT_BUDGET,
) -> VertexMap:
    """The inverse isomorphism target -> product certified by mutual-inverse
    equations with phi.

    Requires the candidate to pass verification with the product among the
    targets.  The factorization of the identity forces phi to be injective;
    its inverse is returned after its homomorphism and non-adjacency
    preservation are re-checked.  A verified candidate without such an
    inverse would contradict the uniqueness theorem, so that path raises
    NoFactorization as an implementation-level alarm.
    """
    product = build_product(proc, fam, budget)
    report = _verify_against(cand, product, [product], budget)
    if not report.ok:
        raise PreconditionViolated(
            f"candidate is not a verified tensor product: {report.render()}"
        )
    anchored = VertexMap(product, cand.target, cand.phi.mapping)
    inverse = {}
    for x in product.vertices:
        y = anchored(x)
        if y in inverse and inverse[y] != x:
            raise NoFactorization(
                "identity morphism does not factor through the candidate"
            )
        inverse[y] = x
    back = VertexMap(cand.target, product, inverse)
    if not is_homomorphism(back):
        raise NoFactorization("inverse of phi fails to preserve edges")
    # Mutual-inverse equations: back . phi = id on V, phi . back = id on T.
    assert all(back(anchored(x)) == x for x in product.vertices)
    assert all(anchored(back(y)) == y for y in cand.target.vertices)
    report = check_mutual_inverses(anchored, back)
    if not report.ok:
        raise NoFactorization(report.witness)
    return back


@dataclass(frozen=True)
class CloneReport:
    """Certificate that two mutually inverse homomorphisms are isomorphisms."""

    ok: bool
    witness: str = "-"

    def render(self) -> str:
        status = "pass" if self.ok else "fail"
        return f"mutual-inverses\t{status}\t{self.witness}"


def check_mutual_inverses(m1: VertexMap, m2: VertexMap) -> CloneReport:
    """Verify two mutually inverse homomorphisms are clones' witnesses.

    Preconditions (checked, violations raise): m1 and m2 are edge-preserving,
    each composition is an identity.  The certificate then confirms both
    maps are bijections preserving non-adjacency, loop status included.
    """
    if m1.domain != m2.codomain or m1.codomain != m2.domain:
        raise DomainMismatch("maps must run between the same two graphs, opposed")
    if not is_homomorphism(m1) or not is_homomorphism(m2):
        raise PreconditionViolated("both maps must be homomorphisms")
    if any(m2(m1(v)) != v for v in m1.domain.vertices):
        raise PreconditionViolated("m2 . m1 is not the identity")
    if any(m1(m2(v)) != v for v in m2.domain.vertices):
        raise PreconditionViolated("m1 . m2 is not the identity")
    if not (m1.is_bijective() and m2.is_bijective()):
        return CloneReport(False, "not bijective")
    for m in (m1, m2):
        vs = m.domain.vertices
        for a in range(len(vs)):
            for b in range(a, len(vs)):
                x, y = vs[a], vs[b]
                if not m.domain.has_edge(x, y) and m.codomain.has_edge(m(x), m(y)):
                    return CloneReport(
                        False,
                        f"non-adjacent {render_label(x)},{render_label(y)} "
                        f"maps to an edge",
                    )
    return CloneReport(True)
