"""Derivations in the annotated sequent calculus and their validation.

A proof is a tree of rule instances, each carrying its full conclusion forest:
tautology leaves, right universal/existential rules, contraction on
existentials and on quantifier-free formulas, and cut.  Strictness demands
distinct tautology indices, distinct eigenvariables, and eigenvariable
confinement to the subproof that introduces them.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .formula import EXISTS, FORALL, Qff, Theory, Var, dual, instantiate, parse_term
from .aeterm import (
    Alpha,
    Cut,
    CutType,
    Leaf,
    Logical,
    NetType,
    Sum,
    TypedForest,
    WitnessType,
    root_key,
    type_free_vars,
    underlying,
)
from .taut import DEFAULT_GROUNDING, GroundingConfig, is_tautology

RULES = ("taut", "forall_r", "exists_r", "c_exists", "c_prop", "cut")


class ProofError(Exception):
    pass


@dataclass
class Proof:
    rule: str
    params: dict
    conclusion: TypedForest
    premises: tuple["Proof", ...] = ()

    def __post_init__(self):
        if self.rule not in RULES:
            raise ProofError(f"unknown rule {self.rule!r}")

    def nodes(self):
        yield self
        for p in self.premises:
            yield from p.nodes()

    def rule_count(self) -> int:
        return sum(1 for _ in self.nodes())

    def to_json(self) -> dict:
        from .aeterm import dump_forest

        return {
            "rule": self.rule,
            "params": {k: v for k, v in self.params.items() if k != "node"},
            "conclusion": [
                {"term": t, "type": ty, "kind": k}
                for t, ty, k in _roots_json(self.conclusion)
            ],
            "premises": [p.to_json() for p in self.premises],
        }


def _roots_json(f: TypedForest):
    from .aeterm import render_term

    for term, ty in f.roots:
        kind = "cut" if isinstance(ty, CutType) else "logical"
        yield render_term(term), str(underlying(ty)), kind


@dataclass(frozen=True)
class ProofViolation:
    clause: str
    message: str

    def __str__(self):
        return f"{self.clause}: {self.message}"


def _multiset(f: TypedForest) -> Counter:
    return Counter(root_key(t, ty) for t, ty in f.roots)


def _check_local(p: Proof, theory: Theory, cfg: GroundingConfig, out: list[ProofViolation]):
    """Validate one rule instance against its stored premises."""
    f = p.conclusion
    if p.rule == "taut":
        if p.premises:
            out.append(ProofViolation("shape", "tautology rule has premises"))
            return
        index = p.params.get("index")
        disjuncts: list[Qff] = []
        for term, ty in f.roots:
            if not isinstance(term, Leaf) or not isinstance(ty, Logical):
                out.append(ProofViolation("shape", "tautology conclusion root is not a leaf"))
                return
            if term.indices != frozenset([index]):
                out.append(
                    ProofViolation("shape", f"leaf {sorted(term.indices)} not labelled {index}")
                )
                return
            disjuncts.append(ty.formula.matrix)
        if not is_tautology(disjuncts, theory, cfg):
            out.append(
                ProofViolation(
                    "tautology", f"{' | '.join(map(str, disjuncts))} is not a tautology"
                )
            )
        return

    if p.rule == "cut":
        if len(p.premises) != 2:
            out.append(ProofViolation("shape", "cut needs two premises"))
            return
    elif len(p.premises) != 1:
        out.append(ProofViolation("shape", f"{p.rule} needs one premise"))
        return

    i = p.params.get("root")
    if not isinstance(i, int) or not 0 <= i < len(f.roots):
        out.append(ProofViolation("shape", f"bad root position {i!r}"))
        return
    term, ty = f.roots[i]
    rest = [r for j, r in enumerate(f.roots) if j != i]

    def expect(premise: TypedForest, added: list[tuple]) -> bool:
        want = Counter(root_key(t, x) for t, x in rest)
        want.update(root_key(t, x) for t, x in added)
        if _multiset(premise) != want:
            out.append(ProofViolation("shape", f"{p.rule} premise does not match conclusion"))
            return False
        return True

    if p.rule == "forall_r":
        a = p.params.get("var")
        if (
            not isinstance(term, Alpha)
            or term.var != a
            or not isinstance(ty, Logical)
            or ty.formula.is_quantifier_free()
            or ty.formula.head()[0] != FORALL
        ):
            out.append(ProofViolation("shape", "forall_r root is not a[..] at a universal"))
            return
        _, x = ty.formula.head()
        inner = Logical(instantiate(ty.formula, Var(a)))
        expect(p.premises[0].conclusion, [(term.child, inner)])
        return

    if p.rule == "exists_r":
        if (
            not isinstance(term, Sum)
            or term.width != 1
            or not isinstance(ty, Logical)
            or ty.formula.is_quantifier_free()
            or ty.formula.head()[0] != EXISTS
        ):
            out.append(ProofViolation("shape", "exists_r root is not a one-witness sum"))
            return
        w = term.children[0]
        claimed = p.params.get("witness")
        if claimed is not None and claimed != str(w.witness):
            out.append(ProofViolation("shape", f"witness mismatch: {claimed} vs {w.witness}"))
            return
        inner = Logical(instantiate(ty.formula, w.witness))
        expect(p.premises[0].conclusion, [(w.child, inner)])
        return

    if p.rule == "c_exists":
        if not isinstance(term, Sum) or term.width < 2:
            out.append(ProofViolation("shape", "c_exists root is not a wide sum"))
            return
        premise = p.premises[0].conclusion
        added = _added_roots(premise, rest)
        if added is None or len(added) != 2 or not all(
            isinstance(t, Sum) and x == ty for t, x in added
        ):
            out.append(ProofViolation("shape", "c_exists premise must add two sums"))
            return
        from .aeterm import term_key

        got = sorted(term_key(w) for t, _ in added for w in t.children)
        if got != sorted(term_key(w) for w in term.children):
            out.append(ProofViolation("shape", "c_exists summands do not recombine"))
        return

    if p.rule == "c_prop":
        if not isinstance(term, Leaf) or len(term.indices) < 2:
            out.append(ProofViolation("shape", "c_prop root is not a wide leaf"))
            return
        premise = p.premises[0].conclusion
        added = _added_roots(premise, rest)
        if added is None or len(added) != 2 or not all(
            isinstance(t, Leaf) and x == ty for t, x in added
        ):
            out.append(ProofViolation("shape", "c_prop premise must add two leaves"))
            return
        s1, s2 = added[0][0].indices, added[1][0].indices
        if s1 & s2 or (s1 | s2) != term.indices:
            out.append(ProofViolation("shape", "c_prop split is not a disjoint cover"))
        return

    # cut
    if not isinstance(term, Cut) or not isinstance(ty, CutType):
        out.append(ProofViolation("shape", "cut root is not a cut"))
        return
    left, right = p.premises
    la = (term.left, Logical(ty.left))
    ra = (term.right, Logical(ty.right))
    combined = Counter(_multiset(left.conclusion))
    combined.update(_multiset(right.conclusion))
    want = Counter(root_key(t, x) for t, x in rest)
    want.update([root_key(*la), root_key(*ra)])
    if combined != want:
        out.append(ProofViolation("shape", "cut premises do not partition the context"))
        return
    if _multiset(left.conclusion)[root_key(*la)] < 1:
        out.append(ProofViolation("shape", "left cut premise lacks the cut formula"))
    if _multiset(right.conclusion)[root_key(*ra)] < 1:
        out.append(ProofViolation("shape", "right cut premise lacks the cut formula"))


def _added_roots(premise: TypedForest, rest: list[tuple]) -> list[tuple] | None:
    """Roots of the premise beyond the conclusion's other roots (multiset diff).

    None when some context root is missing from the premise.
    """
    budget = Counter(root_key(t, x) for t, x in rest)
    added = []
    for t, x in premise.roots:
        k = root_key(t, x)
        if budget[k] > 0:
            budget[k] -= 1
        else:
            added.append((t, x))
    if +budget:
        return None
    return added


def check_proof(
    p: Proof, theory: Theory, cfg: GroundingConfig = DEFAULT_GROUNDING
) -> tuple[TypedForest | None, list[ProofViolation]]:
    """Validate every rule instance and the three strictness clauses.

    Returns (conclusion, violations); the conclusion is None when the shape is
    too broken to trust.
    """
    out: list[ProofViolation] = []
    for node in p.nodes():
        _check_local(node, theory, cfg, out)

    taut_indices = [n.params.get("index") for n in p.nodes() if n.rule == "taut"]
    dup = [i for i, c in Counter(taut_indices).items() if c > 1]
    if dup:
        out.append(ProofViolation("strictness-i", f"duplicated tautology indices {dup}"))

    eigen = [n.params.get("var") for n in p.nodes() if n.rule == "forall_r"]
    dup = [v for v, c in Counter(eigen).items() if c > 1]
    if dup:
        out.append(ProofViolation("strictness-ii", f"duplicated eigenvariables {dup}"))

    # clause iii: an eigenvariable may appear free only above its own rule
    for node in p.nodes():
        if node.rule != "forall_r":
            continue
        a = node.params["var"]
        inside = set(id(n) for n in node.premises[0].nodes()) if node.premises else set()
        for other in p.nodes():
            if id(other) in inside:
                continue
            for _, ty in other.conclusion.roots:
                if a in type_free_vars(ty):
                    out.append(
                        ProofViolation(
                            "strictness-iii",
                            f"eigenvariable {a!r} leaks into a sequent outside its subproof",
                        )
                    )
                    break
            else:
                continue
            break
    return (p.conclusion if not out else None), out


def render_proof(p: Proof) -> str:
    """Premises first, one rule per line, so the final rule prints last."""
    lines: list[str] = []

    def fmt_forest(f: TypedForest) -> str:
        from .aeterm import render_term

        return ", ".join(f"{render_term(t)}:{ty}" for t, ty in f.roots)

    def go(node: Proof, depth: int):
        for q in node.premises:
            go(q, depth + 1)
        arg = {
            "taut": lambda: str(node.params.get("index")),
            "forall_r": lambda: node.params.get("var", ""),
            "exists_r": lambda: node.params.get("witness", ""),
        }.get(node.rule, lambda: "")()
        head = f"{node.rule} {arg}".strip()
        lines.append(f"{'  ' * depth}[{head}] |- {fmt_forest(node.conclusion)}")

    go(p, 0)
    return "\n".join(lines)


def erased_shape_ok(p: Proof) -> bool:
    """The term-erased derivation is a midsequent-calculus derivation.

    Erasure keeps only the multiset of (non-cut) root formulas per sequent;
    each rule must act as tautology axiom, quantifier rule, contraction, or
    cut on those multisets.
    """

    def types(f: TypedForest) -> Counter:
        return Counter(str(underlying(ty)) for _, ty in f.roots if not isinstance(ty, CutType))

    for node in p.nodes():
        c = types(node.conclusion)
        if node.rule == "taut":
            if node.premises:
                return False
            continue
        if node.rule == "cut":
            merged = Counter()
            for q in node.premises:
                merged.update(types(q.conclusion))
            i = node.params["root"]
            term, ty = node.conclusion.roots[i]
            merged.subtract({str(ty.left): 1, str(dual(ty.left)): 1})
            if +merged != c:
                return False
            continue
        prem = types(node.premises[0].conclusion)
        i = node.params["root"]
        _, ty = node.conclusion.roots[i]
        a = underlying(ty)
        if node.rule in ("c_exists", "c_prop"):
            want = Counter(prem)
            want.subtract({str(a): 1})
            if +want != c:
                return False
        else:  # quantifier right rules: premise replaces A by an instance
            diff = Counter(prem)
            diff.subtract(c)
            gained = +diff
            lost = +Counter({k: -v for k, v in diff.items() if v < 0})
            if sum(gained.values()) != 1 or sum(lost.values()) != 1 or str(a) not in lost:
                return False
    return True


def proof_to_json_str(p: Proof) -> str:
    return json.dumps(p.to_json(), indent=2)
