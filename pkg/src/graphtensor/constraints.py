"""A small constraint language on (J, K, L) index triples.

Concrete syntax (UTF-8, case-sensitive), atoms joined by ";":

    atom     := "|" setexpr "|" ("=" | ">=") INT
              | setexpr ("=" | "!=" | "<=" | ">=") setexpr
    setexpr  := term (("u" | "n" | "\\") term)*      left-associative
    term     := "J" | "K" | "L" | "I" | "D" | "empty"
              | "downset" "(" "minJ" ")"
              | "(" setexpr ")"

"u" is union, "n" intersection, "\\" difference; "<=" and ">=" are subset
and superset.  "downset(minJ)" denotes the strictly-smaller indices of the
minimum of J under the family's order.  The vocabulary is a closed
enumeration: every atom is a pure set-theoretic statement, so adjacency
defined by a D-free, downset-free spec is invariant under every
permutation of the index set by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EqualVertices,
    MissingStructure,
    ParseError,
    SearchBudgetExceeded,
    UnknownSymbol,
)
from .graphs import DEFAULT_BUDGET
from .products import JKLTriple

_SYMBOLS = ("J", "K", "L", "I", "D", "empty")
_OPERATOR_IDENTS = ("u", "n")
_RELATIONS = ("=", "!=", "<=", ">=")


@dataclass(frozen=True)
class Sym:
    name: str

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class Downset:
    def render(self) -> str:
        return "downset(minJ)"


@dataclass(frozen=True)
class BinOp:
    op: str  # "u" | "n" | "\\"
    left: object
    right: object

    def render(self) -> str:
        left = self.left.render()
        right = self.right.render()
        if isinstance(self.right, BinOp):
            right = f"({right})"
        return f"{left} {self.op} {right}"


@dataclass(frozen=True)
class SetRel:
    op: str
    left: object
    right: object

    def render(self) -> str:
        return f"{self.left.render()} {self.op} {self.right.render()}"


@dataclass(frozen=True)
class CardRel:
    op: str  # "=" | ">="
    expr: object
    value: int

    def render(self) -> str:
        return f"|{self.expr.render()}| {self.op} {self.value}"


def _walk(node):
    yield node
    for attr in ("left", "right", "expr"):
        child = getattr(node, attr, None)
        if child is not None:
            yield from _walk(child)


@dataclass(frozen=True)
class ConstraintSpec:
    """Conjunction of atoms over a concrete (J, K, L, I, structure)."""

    atoms: tuple

    def render(self) -> str:
        return "; ".join(atom.render() for atom in self.atoms)

    def references_distinguished(self) -> bool:
        return any(
            isinstance(n, Sym) and n.name == "D"
            for atom in self.atoms
            for n in _walk(atom)
        )

    def references_downset(self) -> bool:
        return any(
            isinstance(n, Downset) for atom in self.atoms for n in _walk(atom)
        )

    def requires_empty_l(self) -> bool:
        """Syntactic test for the atom `L = empty` (either orientation)."""
        empty = Sym("empty")
        l = Sym("L")
        return any(
            isinstance(atom, SetRel)
            and atom.op == "="
            and {atom.left, atom.right} == {l, empty}
            for atom in self.atoms
        )


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.cursor = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isalpha():
                start = i
                while i < len(text) and (text[i].isalpha() or text[i].isdigit()):
                    i += 1
                self.tokens.append(("IDENT", text[start:i], start))
                continue
            if ch.isdigit():
                start = i
                while i < len(text) and text[i].isdigit():
                    i += 1
                self.tokens.append(("INT", text[start:i], start))
                continue
            two = text[i : i + 2]
            if two in ("!=", "<=", ">="):
                self.tokens.append(("OP", two, i))
                i += 2
                continue
            if ch in "=\\|();":
                self.tokens.append(("OP", ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("EOF", "", len(text)))

    def peek(self):
        return self.tokens[self.cursor]

    def next(self):
        token = self.tokens[self.cursor]
        if token[0] != "EOF":
            self.cursor += 1
        return token

    def expect_op(self, text: str):
        kind, value, pos = self.peek()
        if kind != "OP" or value != text:
            raise ParseError(f"expected {text!r}", pos)
        return self.next()


def _parse_term(tok: _Tokenizer):
    kind, value, pos = tok.peek()
    if kind == "OP" and value == "(":
        tok.next()
        expr = _parse_setexpr(tok)
        tok.expect_op(")")
        return expr
    if kind == "IDENT":
        if value in _SYMBOLS:
            tok.next()
            return Sym(value)
        if value == "downset":
            tok.next()
            tok.expect_op("(")
            ikind, ivalue, ipos = tok.next()
            if ikind != "IDENT" or ivalue != "minJ":
                raise ParseError("downset takes the single argument minJ", ipos)
            tok.expect_op(")")
            return Downset()
        raise UnknownSymbol(f"unknown identifier {value!r}", pos)
    raise ParseError("expected a set expression", pos)


def _parse_setexpr(tok: _Tokenizer):
    expr = _parse_term(tok)
    while True:
        kind, value, _ = tok.peek()
        if kind == "IDENT" and value in _OPERATOR_IDENTS:
            tok.next()
            expr = BinOp(value, expr, _parse_term(tok))
        elif kind == "OP" and value == "\\":
            tok.next()
            expr = BinOp("\\", expr, _parse_term(tok))
        else:
            return expr


def _parse_atom(tok: _Tokenizer):
    kind, value, pos = tok.peek()
    if kind == "OP" and value == "|":
        tok.next()
        expr = _parse_setexpr(tok)
        tok.expect_op("|")
        okind, ovalue, opos = tok.next()
        if okind != "OP" or ovalue not in ("=", ">="):
            raise ParseError("cardinality atoms use = or >=", opos)
        nkind, nvalue, npos = tok.next()
        if nkind != "INT":
            raise ParseError("cardinality atoms compare against an integer", npos)
        return CardRel(ovalue, expr, int(nvalue))
    left = _parse_setexpr(tok)
    okind, ovalue, opos = tok.next()
    if okind != "OP" or ovalue not in _RELATIONS:
        raise ParseError("expected a relation (=, !=, <=, >=)", opos)
    right = _parse_setexpr(tok)
    return SetRel(ovalue, left, right)


def parse_constraints(text: str) -> ConstraintSpec:
    """Parse constraint text into its normalized form."""
    tok = _Tokenizer(text)
    atoms = [_parse_atom(tok)]
    while True:
        kind, value, pos = tok.peek()
        if kind == "OP" and value == ";":
            tok.next()
            atoms.append(_parse_atom(tok))
        elif kind == "EOF":
            break
        else:
            raise ParseError("expected ';' between atoms", pos)
    return ConstraintSpec(tuple(atoms))


class _EmptyMinimum(Exception):
    """downset(minJ) was evaluated against an empty J."""


def _eval_set(node, env):
    if isinstance(node, Sym):
        return env[node.name]
    if isinstance(node, Downset):
        j = env["J"]
        if not j:
            raise _EmptyMinimum
        order = env["order"]
        rank = {i: pos for pos, i in enumerate(order)}
        least = min(rank[i] for i in j)
        return frozenset(i for i in env["I"] if rank[i] < least)
    if isinstance(node, BinOp):
        left = _eval_set(node.left, env)
        right = _eval_set(node.right, env)
        if node.op == "u":
            return left | right
        if node.op == "n":
            return left & right
        return left - right
    raise TypeError(f"not a set expression: {node!r}")


def _eval_atom(atom, env) -> bool:
    try:
        if isinstance(atom, CardRel):
            size = len(_eval_set(atom.expr, env))
            return size == atom.value if atom.op == "=" else size >= atom.value
        left = _eval_set(atom.left, env)
        right = _eval_set(atom.right, env)
    except _EmptyMinimum:
        # min of an empty J: any atom touching the downset is false, which
        # composes with the mandatory J != empty of real adjacency.
        return False
    if atom.op == "=":
        return left == right
    if atom.op == "!=":
        return left != right
    if atom.op == "<=":
        return left <= right
    return left >= right


def evaluate(
    spec: ConstraintSpec,
    triple: JKLTriple,
    index_set,
    order=None,
    distinguished=None,
) -> bool:
    """Truth of the conjunction over concrete index sets."""
    if spec.references_distinguished() and distinguished is None:
        raise MissingStructure("spec references D but no distinguished subset given")
    if spec.references_downset() and order is None:
        raise MissingStructure("spec references downset but no order given")
    env = {
        "J": frozenset(triple.J),
        "K": frozenset(triple.K),
        "L": frozenset(triple.L),
        "I": frozenset(index_set),
        "D": frozenset(distinguished) if distinguished is not None else None,
        "empty": frozenset(),
        "order": order,
    }
    return all(_eval_atom(atom, env) for atom in spec.atoms)


def constraint_adjacent(
    spec: ConstraintSpec, f, g, fam, budget: int = DEFAULT_BUDGET
) -> bool:
    """Existential adjacency: some consistent triple satisfies the spec.

    A consistent triple partitions the index set, putting an index in J
    only where the components are adjacent, in K only where they are
    equal, and in L only where they are neither.  For simple factors the
    triple is unique; a loop at a shared component lets the index float
    between J and K, and the search walks all 2**ambiguous choices.
    Universal constraints are imposed: a witnessing J must be non-empty.
    """
    if f == g:
        raise EqualVertices("constraint adjacency is defined for distinct vertices")
    if spec.references_distinguished() and fam.distinguished is None:
        raise MissingStructure("spec references D but the family has none")
    if spec.references_downset() and fam.order is None:
        raise MissingStructure("spec references downset but the family has no order")

    fixed_j, fixed_k, fixed_l, floating = [], [], [], []
    for pos, i in enumerate(fam.index_list):
        factor = fam.factors[i]
        x, y = f[pos], g[pos]
        edge = factor.has_edge(x, y)
        equal = x == y
        if edge and equal:
            floating.append(i)
        elif edge:
            fixed_j.append(i)
        elif equal:
            fixed_k.append(i)
        else:
            fixed_l.append(i)

    if 2 ** len(floating) > budget:
        raise SearchBudgetExceeded(
            f"{len(floating)} ambiguous indices exceed the budget {budget}"
        )

    index_set = frozenset(fam.index_list)
    base_l = frozenset(fixed_l)
    for mask in range(2 ** len(floating)):
        to_j = [i for b, i in enumerate(floating) if mask >> b & 1]
        to_k = [i for b, i in enumerate(floating) if not mask >> b & 1]
        triple = JKLTriple(
            frozenset(fixed_j) | frozenset(to_j),
            frozenset(fixed_k) | frozenset(to_k),
            base_l,
        )
        if not triple.J:
            continue
        if evaluate(spec, triple, index_set, fam.order, fam.distinguished):
            return True
    return False


# The five built-in processes, restated as constraint sets.
BUILTIN_CONSTRAINT_TEXT = {
    "cartesian": "|J| = 1; K = I \\ J; L = empty",
    "direct": "J = I; K = empty; L = empty",
    "strong": "J != empty; K = I \\ J; L = empty",
    "lexicographic": "J != empty; K >= downset(minJ); L = I \\ (J u K)",
    "d_product": "J >= D; K <= I \\ J; L = I \\ (J u K)",
}


def builtin_constraints(name: str) -> ConstraintSpec:
    """The constraint set characterizing one of the built-in processes."""
    return parse_constraints(BUILTIN_CONSTRAINT_TEXT[name])
