"""First-order signatures, terms, and prenex formulas in negation normal form.

Formulas have no negation connective: polarity lives on atoms, and duality is
De Morgan.  A prenex formula is a quantifier prefix over a quantifier-free
matrix; prefix variables are required to be pairwise distinct, which makes
free(A) and bound(A) automatically disjoint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .names import FreshNames

FORALL = "forall"
EXISTS = "exists"


class FormulaError(Exception):
    pass


class ParseError(FormulaError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# signatures


@dataclass
class Signature:
    """Function and predicate symbols with arities; variables are everything else.

    Symbol namespaces must be pairwise disjoint.  Constants are the arity-0
    function symbols.
    """

    functions: dict[str, int] = field(default_factory=dict)
    predicates: dict[str, int] = field(default_factory=dict)
    variables: set[str] = field(default_factory=set)

    def __post_init__(self):
        overlap = set(self.functions) & set(self.predicates)
        overlap |= set(self.functions) & self.variables
        overlap |= set(self.predicates) & self.variables
        if overlap:
            raise FormulaError(f"symbol namespaces overlap: {sorted(overlap)}")

    def constants(self) -> list[str]:
        return sorted(f for f, ar in self.functions.items() if ar == 0)

    def declare_variable(self, name: str) -> None:
        if name in self.functions or name in self.predicates:
            raise FormulaError(f"{name!r} already declared as function/predicate")
        self.variables.add(name)

    @staticmethod
    def from_json(doc: dict) -> "Signature":
        return Signature(
            functions=dict(doc.get("functions", {})),
            predicates=dict(doc.get("predicates", {})),
        )

    def to_json(self) -> dict:
        return {"functions": dict(self.functions), "predicates": dict(self.predicates)}


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class FoTerm:
    pass


@dataclass(frozen=True)
class Var(FoTerm):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App(FoTerm):
    fn: str
    args: tuple[FoTerm, ...] = ()

    def __str__(self):
        if not self.args:
            return self.fn
        return f"{self.fn}({', '.join(map(str, self.args))})"


def term_vars(t: FoTerm) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset([t.name])
    return frozenset().union(*[term_vars(a) for a in t.args]) if t.args else frozenset()


def subst_term(t: FoTerm, mapping: dict[str, FoTerm]) -> FoTerm:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    return App(t.fn, tuple(subst_term(a, mapping) for a in t.args))


def subterms(t: FoTerm):
    """All subterm occurrences, the term itself included."""
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def term_is_ground(t: FoTerm) -> bool:
    return not term_vars(t)


# ---------------------------------------------------------------------------
# quantifier-free formulas


@dataclass(frozen=True)
class Qff:
    pass


@dataclass(frozen=True)
class Atom(Qff):
    positive: bool
    pred: str
    args: tuple[FoTerm, ...] = ()

    def __str__(self):
        body = self.pred if not self.args else f"{self.pred}({', '.join(map(str, self.args))})"
        return body if self.positive else f"~{body}"


@dataclass(frozen=True)
class Or(Qff):
    left: Qff
    right: Qff

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class And(Qff):
    left: Qff
    right: Qff

    def __str__(self):
        return f"({self.left} & {self.right})"


def dual_qff(p: Qff) -> Qff:
    if isinstance(p, Atom):
        return Atom(not p.positive, p.pred, p.args)
    if isinstance(p, Or):
        return And(dual_qff(p.left), dual_qff(p.right))
    return Or(dual_qff(p.left), dual_qff(p.right))


def qff_free_vars(p: Qff) -> frozenset[str]:
    if isinstance(p, Atom):
        return frozenset().union(*[term_vars(a) for a in p.args]) if p.args else frozenset()
    return qff_free_vars(p.left) | qff_free_vars(p.right)


def subst_qff(p: Qff, mapping: dict[str, FoTerm]) -> Qff:
    if isinstance(p, Atom):
        return Atom(p.positive, p.pred, tuple(subst_term(a, mapping) for a in p.args))
    if isinstance(p, Or):
        return Or(subst_qff(p.left, mapping), subst_qff(p.right, mapping))
    return And(subst_qff(p.left, mapping), subst_qff(p.right, mapping))


def qff_atoms(p: Qff):
    if isinstance(p, Atom):
        yield p
    else:
        yield from qff_atoms(p.left)
        yield from qff_atoms(p.right)


def qff_terms(p: Qff):
    for atom in qff_atoms(p):
        for a in atom.args:
            yield from subterms(a)


def big_or(parts: list[Qff]) -> Qff:
    if not parts:
        raise FormulaError("empty disjunction")
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


# ---------------------------------------------------------------------------
# prenex formulas


@dataclass(frozen=True)
class PrenexFormula:
    prefix: tuple[tuple[str, str], ...]  # (quantifier, variable)
    matrix: Qff

    def __post_init__(self):
        seen = set()
        for q, x in self.prefix:
            if q not in (FORALL, EXISTS):
                raise FormulaError(f"bad quantifier {q!r}")
            if x in seen:
                raise FormulaError(f"duplicate prefix variable {x!r}")
            seen.add(x)

    def __str__(self):
        return render(self)

    def is_quantifier_free(self) -> bool:
        return not self.prefix

    def head(self) -> tuple[str, str]:
        return self.prefix[0]

    def body(self) -> "PrenexFormula":
        """The formula under the first quantifier (prefix var still free)."""
        return PrenexFormula(self.prefix[1:], self.matrix)


def qff(p: Qff) -> PrenexFormula:
    return PrenexFormula((), p)


def dual(a: PrenexFormula) -> PrenexFormula:
    flipped = tuple((EXISTS if q == FORALL else FORALL, x) for q, x in a.prefix)
    return PrenexFormula(flipped, dual_qff(a.matrix))


def formula_vars(a: PrenexFormula) -> tuple[frozenset[str], frozenset[str]]:
    """(free, bound) variable sets of a prenex formula."""
    bound = frozenset(x for _, x in a.prefix)
    return qff_free_vars(a.matrix) - bound, bound


def free_vars(a: PrenexFormula) -> frozenset[str]:
    return formula_vars(a)[0]


def substitute(a: PrenexFormula, x: str, m: FoTerm) -> PrenexFormula:
    """Capture-avoiding substitution of m for x.

    x must not be bound by the prefix; prefix variables clashing with the free
    variables of m are renamed from the fresh supply (y -> y0, y1, ...).
    """
    bound = {v for _, v in a.prefix}
    if x in bound:
        raise FormulaError(f"cannot substitute for bound variable {x!r}")
    if isinstance(m, Var) and m.name == x:
        return a
    clash = term_vars(m) & bound
    prefix = a.prefix
    matrix = a.matrix
    if clash:
        supply = FreshNames(bound | term_vars(m) | qff_free_vars(matrix) | {x})
        renaming = {v: Var(supply.fresh(v)) for v in sorted(clash)}
        prefix = tuple((q, renaming[v].name if v in renaming else v) for q, v in prefix)
        matrix = subst_qff(matrix, renaming)
    return PrenexFormula(prefix, subst_qff(matrix, {x: m}))


def instantiate(a: PrenexFormula, m: FoTerm) -> PrenexFormula:
    """Strip the leading quantifier of a and substitute m for its variable."""
    if a.is_quantifier_free():
        raise FormulaError("no quantifier to instantiate")
    _, x = a.head()
    return substitute(a.body(), x, m)


def render(a: PrenexFormula) -> str:
    parts = [f"{q} {x}." for q, x in a.prefix]
    parts.append(str(a.matrix))
    return " ".join(parts)


# ---------------------------------------------------------------------------
# theories


@dataclass
class Theory:
    """Universal axioms: open quantifier-free formulas read as closed under forall."""

    signature: Signature
    axioms: tuple[Qff, ...] = ()

    @staticmethod
    def from_json(doc: dict) -> "Theory":
        sig = Signature.from_json(doc)
        axioms = []
        for s in doc.get("axioms", []):
            a = parse_formula(s, sig, permissive=False) if isinstance(s, str) else qff(s)
            if a.prefix:
                raise FormulaError(f"axiom must be quantifier-free: {s!r}")
            axioms.append(a.matrix)
        return Theory(sig, tuple(axioms))

    def to_json(self) -> dict:
        doc = self.signature.to_json()
        doc["axioms"] = [str(a) for a in self.axioms]
        return doc


EMPTY_THEORY = Theory(Signature())


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z0-9_][A-Za-z0-9_#]*)|(?P<punct>[().,|&~]))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.toks: list[tuple[str, str, int]] = []
        while self.pos < len(text):
            m = _TOKEN.match(text, self.pos)
            if not m or m.end() == self.pos:
                if text[self.pos :].strip():
                    raise ParseError(f"unexpected character {text[self.pos]!r}", self.pos)
                break
            if m.group("name"):
                self.toks.append(("name", m.group("name"), m.start("name")))
            else:
                self.toks.append(("punct", m.group("punct"), m.start("punct")))
            self.pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)


def _parse_term(toks: _Tokens, sig: Signature, permissive: bool) -> FoTerm:
    kind, name, pos = toks.next()
    if kind != "name":
        raise ParseError(f"expected a term, found {name or 'end of input'!r}", pos)
    if toks.peek()[1] == "(":
        toks.expect("(")
        args = [_parse_term(toks, sig, permissive)]
        while toks.peek()[1] == ",":
            toks.next()
            args.append(_parse_term(toks, sig, permissive))
        toks.expect(")")
        if name not in sig.functions:
            if not permissive:
                raise ParseError(f"undeclared function symbol {name!r}", pos)
            sig.functions[name] = len(args)
        if sig.functions[name] != len(args):
            raise ParseError(
                f"function {name!r} expects {sig.functions[name]} arguments, got {len(args)}", pos
            )
        return App(name, tuple(args))
    if name in sig.functions:
        if sig.functions[name] != 0:
            raise ParseError(f"function {name!r} expects {sig.functions[name]} arguments", pos)
        return App(name)
    if name in sig.predicates:
        raise ParseError(f"predicate {name!r} used as a term", pos)
    sig.variables.add(name)
    return Var(name)


def _parse_atom(toks: _Tokens, sig: Signature, permissive: bool, positive: bool) -> Atom:
    kind, name, pos = toks.next()
    if kind != "name":
        raise ParseError(f"expected a predicate, found {name or 'end of input'!r}", pos)
    if name in (FORALL, EXISTS):
        raise ParseError("quantifier inside matrix", pos)
    args: list[FoTerm] = []
    if toks.peek()[1] == "(":
        toks.next()
        args.append(_parse_term(toks, sig, permissive))
        while toks.peek()[1] == ",":
            toks.next()
            args.append(_parse_term(toks, sig, permissive))
        toks.expect(")")
    if name not in sig.predicates:
        if not permissive:
            raise ParseError(f"undeclared predicate symbol {name!r}", pos)
        sig.predicates[name] = len(args)
    if sig.predicates[name] != len(args):
        raise ParseError(
            f"predicate {name!r} expects {sig.predicates[name]} arguments, got {len(args)}", pos
        )
    return Atom(positive, name, tuple(args))


def _parse_qff(toks: _Tokens, sig: Signature, permissive: bool) -> Qff:
    kind, val, pos = toks.peek()
    if val == "~":
        toks.next()
        return _parse_atom(toks, sig, permissive, positive=False)
    if val == "(":
        toks.next()
        left = _parse_qff(toks, sig, permissive)
        kind, op, pos = toks.next()
        if op not in ("|", "&"):
            raise ParseError(f"expected '|' or '&', found {op or 'end of input'!r}", pos)
        right = _parse_qff(toks, sig, permissive)
        toks.expect(")")
        return Or(left, right) if op == "|" else And(left, right)
    return _parse_atom(toks, sig, permissive, positive=True)


def parse_formula(text: str, sig: Signature, permissive: bool = True) -> PrenexFormula:
    """Parse the concrete syntax into a prenex NNF formula.

    Grammar: ``formula := qff | ("forall"|"exists") var "." formula``;
    ``qff := atom | "~" atom | "(" qff ("|"|"&") qff ")"``.  Undeclared
    function/predicate symbols are an error unless permissive.
    """
    toks = _Tokens(text)
    prefix: list[tuple[str, str]] = []
    while toks.peek()[1] in (FORALL, EXISTS):
        _, q, _ = toks.next()
        kind, x, pos = toks.next()
        if kind != "name":
            raise ParseError("expected a variable after quantifier", pos)
        if x in sig.functions or x in sig.predicates:
            raise ParseError(f"{x!r} is not a variable", pos)
        if any(x == v for _, v in prefix):
            raise ParseError(f"duplicate prefix variable {x!r}", pos)
        sig.variables.add(x)
        prefix.append((q, x))
        toks.expect(".")
    matrix = _parse_qff(toks, sig, permissive)
    kind, val, pos = toks.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", pos)
    return PrenexFormula(tuple(prefix), matrix)


def parse_term(text: str, sig: Signature, permissive: bool = True) -> FoTerm:
    toks = _Tokens(text)
    t = _parse_term(toks, sig, permissive)
    kind, val, pos = toks.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", pos)
    return t
