"""Propositional (quasi-)tautology oracle for leaf-index disjunctions.

Validity of ``axiom instances -> V disjuncts`` is decided propositionally,
with ground atoms compared structurally.  Universal axioms are instantiated
over a finite term universe grown from the disjuncts' subterms; the grounding
bound makes the oracle total but incomplete, so blowing the budget raises
(it is never reported as "false").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .formula import (
    And,
    App,
    Atom,
    FoTerm,
    Or,
    Qff,
    Theory,
    dual_qff,
    qff_atoms,
    qff_free_vars,
    qff_terms,
    subst_qff,
    term_is_ground,
)


class GroundingBudgetError(Exception):
    pass


@dataclass
class GroundingConfig:
    depth: int = 1
    extra_constant: bool = True
    max_instances: int = 5000
    max_atoms: int = 40

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")


DEFAULT_GROUNDING = GroundingConfig()


@dataclass
class TautResult:
    valid: bool
    certificate: dict = field(default_factory=dict)

    def __bool__(self):
        return self.valid


def _term_universe(seed_terms: set[FoTerm], functions: dict[str, int], depth: int) -> list[FoTerm]:
    """Close the seed set under the signature's functions, depth levels deep."""
    universe = set(seed_terms)
    frontier = set(seed_terms)
    for _ in range(depth):
        new = set()
        for fn, ar in sorted(functions.items()):
            if ar == 0:
                new.add(App(fn))
                continue
            pools = [sorted(universe, key=str)] * ar
            for args in itertools.product(*pools):
                new.add(App(fn, args))
        new -= universe
        if not new:
            break
        universe |= new
        frontier = new
    return sorted(universe, key=str)


def ground_axiom_instances(
    theory: Theory, seed_terms: set[FoTerm], depth: int, max_instances: int = 5000
) -> list[Qff]:
    """Every substitution of axiom variables by universe terms, in render order."""
    universe = _term_universe(seed_terms, theory.signature.functions, depth)
    out: list[Qff] = []
    seen = set()
    for axiom in theory.axioms:
        xs = sorted(qff_free_vars(axiom))
        if not xs:
            if axiom not in seen:
                seen.add(axiom)
                out.append(axiom)
            continue
        if not universe:
            continue
        if len(universe) ** len(xs) > max_instances:
            raise GroundingBudgetError(
                f"{len(universe) ** len(xs)} instances of {axiom} exceed the budget"
            )
        for combo in itertools.product(universe, repeat=len(xs)):
            inst = subst_qff(axiom, dict(zip(xs, combo)))
            if inst not in seen:
                seen.add(inst)
                out.append(inst)
        if len(out) > max_instances:
            raise GroundingBudgetError("axiom instance budget exceeded")
    return out


# ---------------------------------------------------------------------------
# propositional core


def eval_qff(p: Qff, assignment: dict[Atom, bool]) -> bool | None:
    """Three-valued evaluation; None when undetermined under a partial assignment."""
    if isinstance(p, Atom):
        key = p if p.positive else Atom(True, p.pred, p.args)
        val = assignment.get(key)
        if val is None:
            return None
        return val if p.positive else not val
    lv = eval_qff(p.left, assignment)
    rv = eval_qff(p.right, assignment)
    if isinstance(p, Or):
        if lv is True or rv is True:
            return True
        if lv is False and rv is False:
            return False
        return None
    if lv is False or rv is False:
        return False
    if lv is True and rv is True:
        return True
    return None


def _positive_atoms(ps: list[Qff]) -> list[Atom]:
    atoms = {Atom(True, a.pred, a.args) for p in ps for a in qff_atoms(p)}
    return sorted(atoms, key=str)


def _search_satisfying(constraints: list[Qff], atoms: list[Atom], trace: dict) -> dict | None:
    """DPLL-style search for an assignment making every constraint true."""

    def undecided(assignment):
        out = []
        for c in constraints:
            v = eval_qff(c, assignment)
            if v is False:
                return None
            if v is None:
                out.append(c)
        return out

    def go(assignment: dict[Atom, bool], rest: list[Atom]) -> dict | None:
        trace["branches"] += 1
        open_constraints = undecided(assignment)
        if open_constraints is None:
            return None
        if not open_constraints:
            full = dict(assignment)
            for a in atoms:
                full.setdefault(a, False)
            return full
        open_atoms = {Atom(True, a.pred, a.args) for c in open_constraints for a in qff_atoms(c)}
        pick = next(a for a in rest if a in open_atoms)
        remaining = [a for a in rest if a is not pick]
        for val in (True, False):
            assignment[pick] = val
            r = go(assignment, remaining)
            if r is not None:
                return r
        del assignment[pick]
        return None

    return go({}, atoms)


def truth_table_valid(instances: list[Qff], disjuncts: list[Qff]) -> bool:
    """Brute-force oracle: check every assignment of the atoms."""
    atoms = _positive_atoms(instances + list(disjuncts))
    for bits in itertools.product([False, True], repeat=len(atoms)):
        assignment = dict(zip(atoms, bits))
        if all(eval_qff(i, assignment) for i in instances) and not any(
            eval_qff(d, assignment) for d in disjuncts
        ):
            return False
    return True


def is_tautology(
    disjuncts: list[Qff], theory: Theory, cfg: GroundingConfig = DEFAULT_GROUNDING
) -> TautResult:
    """Does the theory quasi-tautologically entail the disjunction?

    True iff (conjunction of ground axiom instances) -> (V disjuncts) is
    propositionally valid.  Free variables of the disjuncts are treated as
    opaque constants.  The certificate carries either the search trace or a
    falsifying assignment.
    """
    if not disjuncts:
        raise ValueError("empty disjunct sequence")
    seeds = {t for d in disjuncts for t in qff_terms(d)}
    if theory.axioms and not any(term_is_ground(t) for t in seeds) and cfg.extra_constant:
        seeds.add(App("_c"))
    instances = ground_axiom_instances(theory, seeds, cfg.depth, cfg.max_instances)
    atoms = _positive_atoms(instances + list(disjuncts))
    if len(atoms) > cfg.max_atoms:
        raise GroundingBudgetError(f"{len(atoms)} atoms exceed the budget of {cfg.max_atoms}")
    # valid iff instances + duals of all disjuncts are unsatisfiable
    constraints = instances + [dual_qff(d) for d in disjuncts]
    trace = {"branches": 0}
    model = _search_satisfying(constraints, atoms, trace)
    grounding = {"instances": len(instances), "depth": cfg.depth, "atoms": len(atoms)}
    if model is None:
        return TautResult(True, {"status": "valid", "branches": trace["branches"], **grounding})
    assignment = {str(a): v for a, v in sorted(model.items(), key=lambda kv: str(kv[0]))}
    return TautResult(False, {"status": "invalid", "assignment": assignment, **grounding})
