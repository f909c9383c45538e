"""Expansion trees, witnesses and cuts: the terms that annotate sequents.

A term is a leaf (nonempty set of tautology indices), a universal binder
``a[x].t``, a witness ``e[M].t``, a nonempty formal sum of witnesses, or a cut
between two expansion trees.  Sums are multisets (free commutative semigroup):
equality ignores summand order.  A bare witness is "naked" and gets a witness
type; wrapped in a sum it is an expansion tree with a logical type.

Every node carries a stable integer id, unique within its forest.  Renaming
and substitution preserve ids; duplication allocates fresh ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .formula import (
    EXISTS,
    FORALL,
    FoTerm,
    PrenexFormula,
    Signature,
    Theory,
    Var,
    dual,
    formula_vars,
    instantiate,
    parse_formula,
    parse_term,
    qff_free_vars,
    subst_term,
    substitute,
    term_vars,
)
from .names import FreshNames


class AeTermError(Exception):
    pass


class TypingError(AeTermError):
    def __init__(self, message: str, node_id: int | None = None):
        super().__init__(message if node_id is None else f"{message} (node {node_id})")
        self.node_id = node_id


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class AeTerm:
    node_id: int


@dataclass(frozen=True)
class Leaf(AeTerm):
    indices: frozenset[str]

    def __post_init__(self):
        if not self.indices:
            raise AeTermError("leaf index set must be nonempty")


@dataclass(frozen=True)
class Alpha(AeTerm):
    var: str
    child: AeTerm


@dataclass(frozen=True)
class Eps(AeTerm):
    witness: FoTerm
    child: AeTerm


@dataclass(frozen=True)
class Sum(AeTerm):
    children: tuple[Eps, ...]

    def __post_init__(self):
        if not self.children:
            raise AeTermError("formal sum must be nonempty")
        if not all(isinstance(w, Eps) for w in self.children):
            raise AeTermError("sum children must be witnesses")

    @property
    def width(self) -> int:
        return len(self.children)


@dataclass(frozen=True)
class Cut(AeTerm):
    left: AeTerm
    right: AeTerm


def is_expansion_tree(t: AeTerm) -> bool:
    return isinstance(t, (Leaf, Alpha, Sum))


def subterm_nodes(t: AeTerm):
    """All subterm occurrences of t, t itself first."""
    yield t
    if isinstance(t, (Alpha, Eps)):
        yield from subterm_nodes(t.child)
    elif isinstance(t, Sum):
        for w in t.children:
            yield from subterm_nodes(w)
    elif isinstance(t, Cut):
        yield from subterm_nodes(t.left)
        yield from subterm_nodes(t.right)


class TermBuilder:
    """Allocates node ids; every term of a forest is built through one."""

    def __init__(self, start: int = 0):
        self.next = start

    def _id(self) -> int:
        i = self.next
        self.next += 1
        return i

    def leaf(self, indices) -> Leaf:
        return Leaf(self._id(), frozenset(indices))

    def alpha(self, var: str, child: AeTerm) -> Alpha:
        return Alpha(self._id(), var, child)

    def eps(self, witness: FoTerm, child: AeTerm) -> Eps:
        return Eps(self._id(), witness, child)

    def sum(self, children) -> Sum:
        return Sum(self._id(), tuple(children))

    def cut(self, left: AeTerm, right: AeTerm) -> Cut:
        return Cut(self._id(), left, right)

    def copy(self, t: AeTerm) -> AeTerm:
        """Deep copy with fresh ids (used when a subnet is duplicated)."""
        if isinstance(t, Leaf):
            return self.leaf(t.indices)
        if isinstance(t, Alpha):
            return Alpha(self._id(), t.var, self.copy(t.child))
        if isinstance(t, Eps):
            return Eps(self._id(), t.witness, self.copy(t.child))
        if isinstance(t, Sum):
            return Sum(self._id(), tuple(self.copy(w) for w in t.children))
        return Cut(self._id(), self.copy(t.left), self.copy(t.right))


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class NetType:
    pass


@dataclass(frozen=True)
class Logical(NetType):
    formula: PrenexFormula

    def __str__(self):
        return str(self.formula)


@dataclass(frozen=True)
class WitnessType(NetType):
    formula: PrenexFormula  # must start with an existential

    def __post_init__(self):
        if not self.formula.prefix or self.formula.head()[0] != EXISTS:
            raise TypingError(f"witness type needs an existential formula: {self.formula}")

    def __str__(self):
        return f"<{self.formula}>"


@dataclass(frozen=True)
class CutType(NetType):
    left: PrenexFormula

    @property
    def right(self) -> PrenexFormula:
        return dual(self.left)

    def __str__(self):
        return f"{self.left} >< {self.right}"


def underlying(t: NetType) -> PrenexFormula:
    if isinstance(t, Logical):
        return t.formula
    if isinstance(t, WitnessType):
        return t.formula
    return t.left


def type_free_vars(t: NetType) -> frozenset[str]:
    return formula_vars(underlying(t))[0]


def subst_type(t: NetType, x: str, m: FoTerm) -> NetType:
    if isinstance(t, Logical):
        return Logical(substitute(t.formula, x, m))
    if isinstance(t, WitnessType):
        return WitnessType(substitute(t.formula, x, m))
    return CutType(substitute(t.left, x, m))


# ---------------------------------------------------------------------------
# typed forests


class TypedForest:
    """A forest of typed roots plus the id counter that built it."""

    def __init__(self, roots, signature: Signature, next_id: int):
        self.roots: tuple[tuple[AeTerm, NetType], ...] = tuple(roots)
        self.signature = signature
        self.next_id = next_id
        self._index: dict | None = None
        ids = [t.node_id for term, _ in self.roots for t in subterm_nodes(term)]
        if len(ids) != len(set(ids)):
            raise AeTermError("node ids must be unique within a forest")

    def with_roots(self, roots, next_id: int | None = None) -> "TypedForest":
        return TypedForest(roots, self.signature, self.next_id if next_id is None else next_id)

    # -- node bookkeeping ---------------------------------------------------

    def index(self) -> dict:
        if self._index is None:
            node: dict[int, AeTerm] = {}
            parent: dict[int, int | None] = {}
            root_of: dict[int, int] = {}

            def walk(t: AeTerm, par: int | None, root_idx: int):
                node[t.node_id] = t
                parent[t.node_id] = par
                root_of[t.node_id] = root_idx
                if isinstance(t, (Alpha, Eps)):
                    walk(t.child, t.node_id, root_idx)
                elif isinstance(t, Sum):
                    for w in t.children:
                        walk(w, t.node_id, root_idx)
                elif isinstance(t, Cut):
                    walk(t.left, t.node_id, root_idx)
                    walk(t.right, t.node_id, root_idx)

            for i, (term, _) in enumerate(self.roots):
                walk(term, None, i)
            self._index = {"node": node, "parent": parent, "root_of": root_of}
        return self._index

    def node(self, node_id: int) -> AeTerm:
        return self.index()["node"][node_id]

    def parent_id(self, node_id: int) -> int | None:
        return self.index()["parent"][node_id]

    def node_ids(self) -> list[int]:
        return sorted(self.index()["node"])

    def eigenvariables(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {}
        for i, t in sorted(self.index()["node"].items()):
            if isinstance(t, Alpha):
                out.setdefault(t.var, []).append(i)
        return out

    def leaves(self) -> list[Leaf]:
        return [t for _, t in sorted(self.index()["node"].items()) if isinstance(t, Leaf)]

    def tautology_indices(self) -> list[str]:
        return sorted({i for leaf in self.leaves() for i in leaf.indices})

    def all_names(self) -> set[str]:
        """Every variable name occurring anywhere (binders, witnesses, types)."""
        names: set[str] = set()
        for term, ty in self.roots:
            fr, bd = formula_vars(underlying(ty))
            names |= fr | bd
            for t in subterm_nodes(term):
                if isinstance(t, Alpha):
                    names.add(t.var)
                elif isinstance(t, Eps):
                    names |= term_vars(t.witness)
        return names

    def cut_roots(self) -> list[tuple[int, Cut]]:
        return [(i, t) for i, (t, ty) in enumerate(self.roots) if isinstance(t, Cut)]


def forest(roots, signature: Signature, builder: TermBuilder) -> TypedForest:
    return TypedForest(roots, signature, builder.next)


# ---------------------------------------------------------------------------
# typing (one rule per constructor)


def typecheck(t: AeTerm, ty: NetType) -> dict[int, NetType]:
    """Check t against ty; returns the inferred type of every node.

    Leaves accept any quantifier-free type; a[x] needs a universal; a naked
    witness needs a witness type; sums need an existential, typing each summand
    at the matching witness type; cuts need dual premises.
    """
    out: dict[int, NetType] = {}

    def go(t: AeTerm, ty: NetType):
        out[t.node_id] = ty
        if isinstance(t, Cut):
            if not isinstance(ty, CutType):
                raise TypingError(f"cut against non-cut type {ty}", t.node_id)
            go(t.left, Logical(ty.left))
            go(t.right, Logical(ty.right))
            return
        if isinstance(t, Eps):
            if not isinstance(ty, WitnessType):
                raise TypingError(f"naked witness against {ty}", t.node_id)
            go(t.child, Logical(instantiate(ty.formula, t.witness)))
            return
        if not isinstance(ty, Logical):
            raise TypingError(f"{type(t).__name__} against non-logical type {ty}", t.node_id)
        a = ty.formula
        if isinstance(t, Leaf):
            if not a.is_quantifier_free():
                raise TypingError(f"leaf against quantified type {a}", t.node_id)
            return
        if isinstance(t, Alpha):
            if a.is_quantifier_free() or a.head()[0] != FORALL:
                raise TypingError(f"a[{t.var}] against {a}", t.node_id)
            _, x = a.head()
            go(t.child, Logical(substitute(a.body(), x, Var(t.var))))
            return
        # Sum
        if a.is_quantifier_free() or a.head()[0] != EXISTS:
            raise TypingError(f"sum against {a}", t.node_id)
        for w in t.children:
            go(w, WitnessType(a))

    go(t, ty)
    return out


def typecheck_forest(f: TypedForest) -> dict[int, NetType]:
    out: dict[int, NetType] = {}
    for term, ty in f.roots:
        out.update(typecheck(term, ty))
    return out


# ---------------------------------------------------------------------------
# alpha-free / alpha-bound variables


def bound_alpha(t: AeTerm) -> frozenset[str]:
    return frozenset(s.var for s in subterm_nodes(t) if isinstance(s, Alpha))


def free_alpha(t: AeTerm, ty: NetType, types: dict[int, NetType] | None = None) -> frozenset[str]:
    if types is None:
        types = typecheck(t, ty)
    if isinstance(t, Leaf):
        return qff_free_vars(underlying(types[t.node_id]).matrix)
    if isinstance(t, Alpha):
        return free_alpha(t.child, types[t.child.node_id], types) - {t.var}
    if isinstance(t, Eps):
        return free_alpha(t.child, types[t.child.node_id], types) | term_vars(t.witness)
    if isinstance(t, Sum):
        out: frozenset[str] = frozenset()
        for w in t.children:
            out |= free_alpha(w, types[w.node_id], types)
        return out
    return free_alpha(t.left, types[t.left.node_id], types) | free_alpha(
        t.right, types[t.right.node_id], types
    )


def classify_vars(f: TypedForest) -> tuple[frozenset[str], frozenset[str]]:
    """(alpha-free, alpha-bound) variables of the whole forest.

    A variable is alpha-bound if some a[x] binds it anywhere; it is alpha-free
    if it is alpha-free in some root and not alpha-bound in the forest.
    """
    types = typecheck_forest(f)
    bound: frozenset[str] = frozenset()
    free: frozenset[str] = frozenset()
    for term, ty in f.roots:
        bound |= bound_alpha(term)
        free |= free_alpha(term, ty, types)
    return free - bound, bound


# ---------------------------------------------------------------------------
# strictness / annotated sequents


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    node_ids: tuple[int, ...] = ()

    def __str__(self):
        where = f" (nodes {', '.join(map(str, self.node_ids))})" if self.node_ids else ""
        return f"{self.code}: {self.message}{where}"


def check_annotated_sequent(f: TypedForest) -> list[Violation]:
    """Empty list iff f is an annotated sequent.

    Checks (a) each binder has its own eigenvariable, (b) no alpha-bound
    variable is free in a non-cut root's type, (c) no root is a naked witness.
    """
    try:
        typecheck_forest(f)
    except TypingError as e:
        return [Violation("type", str(e), (e.node_id,) if e.node_id is not None else ())]
    out = []
    for var, ids in f.eigenvariables().items():
        if len(ids) > 1:
            out.append(
                Violation("eigenvariable", f"duplicate eigenvariable {var!r}", tuple(ids))
            )
    _, bound = classify_vars(f)
    for term, ty in f.roots:
        if isinstance(ty, CutType):
            continue
        clash = bound & type_free_vars(ty)
        if clash:
            out.append(
                Violation(
                    "scope",
                    f"alpha-bound {sorted(clash)} free in root type {ty}",
                    (term.node_id,),
                )
            )
    for term, ty in f.roots:
        if isinstance(ty, WitnessType):
            out.append(Violation("naked-witness", f"naked witness root {ty}", (term.node_id,)))
    return out


# ---------------------------------------------------------------------------
# renaming


@dataclass(frozen=True)
class Renaming:
    kind: str  # "var" | "index"
    pairs: tuple[tuple[str, str], ...]  # applied left to right

    def __post_init__(self):
        if self.kind not in ("var", "index"):
            raise AeTermError(f"bad renaming kind {self.kind!r}")


class RenameError(AeTermError):
    pass


def _rename_var_term(t: AeTerm, a: str, b: str) -> AeTerm:
    if isinstance(t, Leaf):
        return t
    if isinstance(t, Alpha):
        return replace(t, var=b if t.var == a else t.var, child=_rename_var_term(t.child, a, b))
    if isinstance(t, Eps):
        return replace(
            t, witness=subst_term(t.witness, {a: Var(b)}), child=_rename_var_term(t.child, a, b)
        )
    if isinstance(t, Sum):
        return replace(t, children=tuple(_rename_var_term(w, a, b) for w in t.children))
    return replace(t, left=_rename_var_term(t.left, a, b), right=_rename_var_term(t.right, a, b))


def _rename_index_term(t: AeTerm, i: str, j: str) -> AeTerm:
    if isinstance(t, Leaf):
        if i in t.indices:
            return replace(t, indices=(t.indices - {i}) | {j})
        return t
    if isinstance(t, (Alpha, Eps)):
        return replace(t, child=_rename_index_term(t.child, i, j))
    if isinstance(t, Sum):
        return replace(t, children=tuple(_rename_index_term(w, i, j) for w in t.children))
    return replace(
        t, left=_rename_index_term(t.left, i, j), right=_rename_index_term(t.right, i, j)
    )


def rename(f: TypedForest, r: Renaming) -> TypedForest:
    """Apply a batch renaming; for variables each target must be fresh for f."""
    roots = list(f.roots)
    if r.kind == "index":
        for i, j in r.pairs:
            roots = [(_rename_index_term(t, i, j), ty) for t, ty in roots]
        return f.with_roots(roots)
    for a, b in r.pairs:
        taken = TypedForest(roots, f.signature, f.next_id).all_names()
        if b in taken:
            raise RenameError(f"rename target {b!r} is not fresh")
        roots = [
            (_rename_var_term(t, a, b), subst_type(ty, a, Var(b))) for t, ty in roots
        ]
    return f.with_roots(roots)


def rename_term_var(t: AeTerm, a: str, b: str) -> AeTerm:
    return _rename_var_term(t, a, b)


def rename_term_index(t: AeTerm, i: str, j: str) -> AeTerm:
    return _rename_index_term(t, i, j)


# ---------------------------------------------------------------------------
# substitution


def _subst_term_rec(t: AeTerm, a: str, m: FoTerm) -> AeTerm:
    if isinstance(t, Leaf):
        return t
    if isinstance(t, Alpha):
        return replace(t, child=_subst_term_rec(t.child, a, m))
    if isinstance(t, Eps):
        return replace(
            t, witness=subst_term(t.witness, {a: m}), child=_subst_term_rec(t.child, a, m)
        )
    if isinstance(t, Sum):
        return replace(t, children=tuple(_subst_term_rec(w, a, m) for w in t.children))
    return replace(t, left=_subst_term_rec(t.left, a, m), right=_subst_term_rec(t.right, a, m))


def substitute_forest(f: TypedForest, a: str, m: FoTerm) -> TypedForest:
    """Substitute m for a in witnesses and types; a must not be alpha-bound."""
    _, bound = classify_vars(f)
    if a in bound:
        raise AeTermError(f"{a!r} is alpha-bound in the forest")
    roots = [(_subst_term_rec(t, a, m), subst_type(ty, a, m)) for t, ty in f.roots]
    return f.with_roots(roots)


# ---------------------------------------------------------------------------
# admissible contraction (merge) and weakening


def merge(
    t: AeTerm,
    s: AeTerm,
    a: PrenexFormula,
    supply: FreshNames,
    builder: TermBuilder,
) -> tuple[AeTerm, Renaming]:
    """Merge two expansion trees of the same type into one.

    Quantifier-free: leaf union.  Existential: sum concatenation.  Universal:
    rename both eigenvariables to one fresh name and recurse; the returned
    renaming must be applied to the surrounding context.
    """
    typecheck(t, Logical(a))
    typecheck(s, Logical(a))
    pairs: list[tuple[str, str]] = []

    def go(t: AeTerm, s: AeTerm, a: PrenexFormula) -> AeTerm:
        if a.is_quantifier_free():
            assert isinstance(t, Leaf) and isinstance(s, Leaf)
            return builder.leaf(t.indices | s.indices)
        q, x = a.head()
        if q == EXISTS:
            assert isinstance(t, Sum) and isinstance(s, Sum)
            return builder.sum(t.children + s.children)
        assert isinstance(t, Alpha) and isinstance(s, Alpha)
        e = supply.fresh(t.var)
        pairs.append((t.var, e))
        pairs.append((s.var, e))
        t2 = _rename_var_term(t.child, t.var, e)
        s2 = _rename_var_term(s.child, s.var, e)
        return builder.alpha(e, go(t2, s2, substitute(a.body(), x, Var(e))))

    merged = go(t, s, a)
    return merged, Renaming("var", tuple(pairs))


class WeakenError(AeTermError):
    pass


def weaken(a: PrenexFormula, f: TypedForest, supply: FreshNames) -> AeTerm:
    """Build an expansion tree of type a that can be adjoined to f.

    Quantifier-free part reuses an index already present in f; universals bind
    fresh variables; existentials witness with the signature's first constant.
    """
    free, bound = classify_vars(f)
    if formula_vars(a)[0] & bound:
        raise WeakenError("formula mentions an alpha-bound variable of the forest")
    indices = f.tautology_indices()
    if not indices:
        raise WeakenError("forest has no tautology index to reuse")
    constants = f.signature.constants()
    builder = TermBuilder(f.next_id)

    def go(a: PrenexFormula) -> AeTerm:
        if a.is_quantifier_free():
            return builder.leaf({indices[0]})
        q, x = a.head()
        if q == FORALL:
            z = supply.fresh(x)
            return builder.alpha(z, go(substitute(a.body(), x, Var(z))))
        if not constants:
            raise WeakenError("signature has no constant")
        from .formula import App

        c = App(constants[0])
        return builder.sum([builder.eps(c, go(substitute(a.body(), x, c)))])

    term = go(a)
    f.next_id = builder.next
    return term


# ---------------------------------------------------------------------------
# structural equality (sum-order- and id-insensitive)


def term_key(t: AeTerm):
    if isinstance(t, Leaf):
        return ("L", tuple(sorted(t.indices)))
    if isinstance(t, Alpha):
        return ("A", t.var, term_key(t.child))
    if isinstance(t, Eps):
        return ("E", str(t.witness), term_key(t.child))
    if isinstance(t, Sum):
        return ("S", tuple(sorted(term_key(w) for w in t.children)))
    return ("C", term_key(t.left), term_key(t.right))


def root_key(term: AeTerm, ty: NetType):
    return (term_key(term), str(ty))


def forests_equal(f: TypedForest, g: TypedForest) -> bool:
    """Multiset equality of typed roots, modulo sum order and node ids."""
    return sorted(root_key(t, ty) for t, ty in f.roots) == sorted(
        root_key(t, ty) for t, ty in g.roots
    )


def forest_type(f: TypedForest) -> list[str]:
    """The multiset (sorted list) of non-cut root types."""
    return sorted(str(ty) for _, ty in f.roots if not isinstance(ty, CutType))


# ---------------------------------------------------------------------------
# concrete syntax


def render_term(t: AeTerm) -> str:
    if isinstance(t, Leaf):
        return "{" + ",".join(sorted(t.indices)) + "}"
    if isinstance(t, Alpha):
        return f"a[{t.var}].{render_term(t.child)}"
    if isinstance(t, Eps):
        return f"e[{t.witness}].{render_term(t.child)}"
    if isinstance(t, Sum):
        return "(" + " + ".join(render_term(w) for w in t.children) + ")"
    return f"{render_term(t.left)} >< {render_term(t.right)}"


class TermParseError(AeTermError):
    pass


class _TermParser:
    def __init__(self, text: str, sig: Signature, builder: TermBuilder):
        self.text = text
        self.pos = 0
        self.sig = sig
        self.builder = builder

    def error(self, msg: str):
        raise TermParseError(f"{msg} (at position {self.pos} in {self.text!r})")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def name(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] in "_#"
        ):
            self.pos += 1
        if self.pos == start:
            self.error("expected a name")
        return self.text[start : self.pos]

    def bracketed_term(self) -> FoTerm:
        self.eat("[")
        end = self.text.find("]", self.pos)
        if end < 0:
            self.error("unterminated '['")
        inner = self.text[self.pos : end]
        self.pos = end + 1
        return parse_term(inner, self.sig, permissive=True)

    def parse(self) -> AeTerm:
        left = self.p()
        self.skip()
        if self.text.startswith("><", self.pos):
            self.pos += 2
            right = self.p()
            left = self.builder.cut(left, right)
        self.skip()
        if self.pos != len(self.text):
            self.error("trailing input")
        return left

    def p(self) -> AeTerm:
        c = self.peek()
        if c == "{":
            return self.leafset()
        if c == "(":
            return self.sum()
        if c == "a" and self.text.startswith("a[", self.pos):
            self.eat("a")
            self.eat("[")
            var = self.name()
            self.eat("]")
            self.eat(".")
            return self.builder.alpha(var, self.p())
        self.error("expected a leaf set, 'a[..]' or a sum")

    def leafset(self) -> Leaf:
        self.eat("{")
        indices = [self.name()]
        while self.peek() == ",":
            self.eat(",")
            indices.append(self.name())
        self.eat("}")
        return self.builder.leaf(indices)

    def witness(self) -> Eps:
        self.skip()
        if not self.text.startswith("e[", self.pos):
            self.error("expected a witness 'e[..]'")
        self.eat("e")
        m = self.bracketed_term()
        self.eat(".")
        return self.builder.eps(m, self.p())

    def sum(self) -> Sum:
        self.eat("(")
        children = [self.witness()]
        while self.peek() == "+":
            self.eat("+")
            children.append(self.witness())
        self.eat(")")
        return self.builder.sum(children)


def parse_aeterm(text: str, sig: Signature, builder: TermBuilder) -> AeTerm:
    """Parse the term grammar: leaf sets, a[x].t, (e[M].t + ...), t >< t."""
    return _TermParser(text, sig, builder).parse()


# ---------------------------------------------------------------------------
# forest files


def load_forest(doc: dict | str) -> tuple[TypedForest, Theory]:
    """Load {"theory": ..., "roots": [{"term","type","kind"}...]} JSON."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    theory = Theory.from_json(doc.get("theory", {}))
    sig = theory.signature
    builder = TermBuilder()
    roots = []
    for entry in doc["roots"]:
        term = parse_aeterm(entry["term"], sig, builder)
        a = parse_formula(entry["type"], sig, permissive=True)
        kind = entry.get("kind", "logical")
        if kind == "cut":
            ty: NetType = CutType(a)
        elif kind == "logical":
            ty = Logical(a)
        else:
            raise AeTermError(f"bad root kind {kind!r}")
        roots.append((term, ty))
    return TypedForest(roots, sig, builder.next), theory


def dump_forest(f: TypedForest, theory: Theory) -> dict:
    roots = []
    for term, ty in f.roots:
        kind = "cut" if isinstance(ty, CutType) else "logical"
        roots.append({"term": render_term(term), "type": str(underlying(ty)), "kind": kind})
    return {"theory": theory.to_json(), "roots": roots}
