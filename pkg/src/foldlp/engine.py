"""Bottom-up evaluation of stratified normal logic programs.

The engine computes the unique stable model of a stratified program by
evaluating one stratum at a time: within a stratum, positive recursion is
run to fixpoint (semi-naive by default), while negated literals only ever
consult strictly lower strata, which are complete by then.  That is exactly
the situation in which the perfect model and the stable model coincide, so
no guessing is needed.

Facts are stored as insertion-ordered tuples per predicate, which keeps
every run of the engine deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .logic import (
    Atom,
    BUILTINS,
    Clause,
    Cmp,
    Const,
    ConstList,
    FoldlpError,
    Neg,
    Num,
    Pos,
    Program,
    Var,
    check_arities,
    stratify,
)


class EngineError(FoldlpError):
    pass


class UnsafeClauseError(EngineError):
    """A negated or comparison literal whose variables can never be bound."""


class GroundingBlowupError(EngineError):
    """Evaluation exceeded the configured work cap."""


# Internal fact representation: constants as str, numbers as float.
_Value = str | float
_FactStore = dict[str, dict[tuple[_Value, ...], None]]


def _term_value(t, subst: dict[str, _Value]) -> _Value | None:
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Var):
        return subst.get(t.name)
    raise EngineError(f"term not allowed here: {t!r}")


def _atom_from(pred: str, values: tuple[_Value, ...]) -> Atom:
    return Atom(pred, tuple(Const(v) if isinstance(v, str) else Num(v) for v in values))


@dataclass(frozen=True)
class StableModel:
    """The stable model of a stratified program.

    ``facts`` holds every derived ground atom; ``domain`` the program's
    constants in first-appearance order.
    """

    facts: frozenset[Atom]
    domain: tuple[str, ...]

    def __contains__(self, atom: Atom) -> bool:
        return atom in self.facts

    def extension(self, pred: str) -> tuple[Atom, ...]:
        return tuple(sorted((a for a in self.facts if a.pred == pred), key=str))


@dataclass(frozen=True)
class ExampleSet:
    """Ground example atoms for one target predicate, split by sign."""

    positives: tuple[Atom, ...]
    negatives: tuple[Atom, ...]

    def __post_init__(self):
        atoms = self.positives + self.negatives
        if not atoms:
            return
        goal, arity = atoms[0].pred, atoms[0].arity
        for a in atoms:
            if not a.is_ground():
                raise EngineError(f"example atom must be ground: {a}")
            if a.pred != goal or a.arity != arity:
                raise EngineError(
                    f"examples must share one goal predicate: {a.pred}/{a.arity} vs {goal}/{arity}"
                )
        if len(set(atoms)) != len(atoms):
            overlap = set(self.positives) & set(self.negatives)
            if overlap:
                raise EngineError(f"example sets overlap: {sorted(map(str, overlap))}")
            raise EngineError("duplicate example atoms")

    @property
    def goal(self) -> str:
        if self.positives:
            return self.positives[0].pred
        if self.negatives:
            return self.negatives[0].pred
        raise EngineError("empty example set has no goal predicate")


def program_constants(program: Program) -> tuple[str, ...]:
    out: dict[str, None] = {}
    for c in program:
        for atom in _atoms_of(c):
            for t in atom.args:
                if isinstance(t, Const):
                    out.setdefault(t.name)
                elif isinstance(t, ConstList):
                    for item in t.items:
                        out.setdefault(item.name)
    return tuple(out)


def _atoms_of(c: Clause) -> Iterator[Atom]:
    yield c.head
    for lit in c.body:
        if isinstance(lit, (Pos, Neg)):
            yield lit.atom


class _Budget:
    __slots__ = ("left",)

    def __init__(self, cap: int):
        self.left = cap

    def spend(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise GroundingBlowupError("evaluation work cap exceeded; the program grounds too large")


def _literal_vars(lit) -> set[str]:
    if isinstance(lit, Cmp):
        return {lit.var.name}
    vs: set[str] = set()
    for t in lit.atom.args:
        if isinstance(t, Var):
            vs.add(t.name)
    return vs


def _plan_body(clause: Clause) -> list:
    """Reorder a body so negation and comparisons run once bound.

    Generators (positive atoms, member/2, true) stay in written order;
    tests (bound Neg / Cmp) are hoisted to run as early as possible.  The
    set of bound variables at each step does not depend on fact values, so
    the plan can be computed once per clause.
    """
    remaining = list(clause.body)
    bound: set[str] = set()
    order: list = []
    while remaining:
        picked = None
        for lit in remaining:  # cheap tests first
            if isinstance(lit, Cmp) and lit.var.name in bound:
                picked = lit
                break
            if isinstance(lit, Neg) and _literal_vars(lit) <= bound:
                picked = lit
                break
        if picked is None:
            for lit in remaining:  # then the first generator
                if isinstance(lit, Pos):
                    picked = lit
                    break
        if picked is None:
            bad = remaining[0]
            names = ", ".join(sorted(_literal_vars(bad) - bound)) or "?"
            raise UnsafeClauseError(
                f"unsafe clause ({clause.head.pred}): variable(s) {names} in "
                f"a negated or comparison literal are never bound"
            )
        remaining.remove(picked)
        if isinstance(picked, Pos):
            if picked.atom.pred == "member" and picked.atom.args:
                first = picked.atom.args[0]
                if isinstance(first, Var):
                    bound.add(first.name)
            else:
                bound |= _literal_vars(picked)
        order.append(picked)
    return order


def _eval_plan(
    plan: list,
    facts: _FactStore,
    delta_at: int | None,
    delta: _FactStore | None,
    budget: _Budget,
) -> Iterator[dict[str, _Value]]:
    def rec(i: int, subst: dict[str, _Value]) -> Iterator[dict[str, _Value]]:
        budget.spend()
        if i == len(plan):
            yield subst
            return
        lit = plan[i]
        if isinstance(lit, Cmp):
            v = subst[lit.var.name]
            if not isinstance(v, float):
                raise EngineError(f"comparison applied to non-number: {lit.var.name} = {v!r}")
            if lit.holds(v):
                yield from rec(i + 1, subst)
            return
        if isinstance(lit, Neg):
            values = tuple(_term_value(t, subst) for t in lit.atom.args)
            if values not in facts.get(lit.atom.pred, {}):
                yield from rec(i + 1, subst)
            return
        atom = lit.atom
        if atom.pred == "true":
            yield from rec(i + 1, subst)
            return
        if atom.pred == "member":
            elem, lst = atom.args
            if not isinstance(lst, ConstList):
                raise EngineError("member/2 needs a constant list as its second argument")
            v = _term_value(elem, subst)
            if v is None:
                assert isinstance(elem, Var)
                for item in lst.items:
                    budget.spend()
                    yield from rec(i + 1, {**subst, elem.name: item.name})
            elif any(item.name == v for item in lst.items):
                yield from rec(i + 1, subst)
            return
        source = delta if (delta_at == i and delta is not None) else facts
        for tup in source.get(atom.pred, {}):
            budget.spend()
            new = subst
            ok = True
            for t, v in zip(atom.args, tup):
                if isinstance(t, Var):
                    bound_v = new.get(t.name)
                    if bound_v is None:
                        if new is subst:
                            new = dict(subst)
                        new[t.name] = v
                    elif bound_v != v:
                        ok = False
                        break
                else:
                    tv = t.name if isinstance(t, Const) else t.value
                    if tv != v:
                        ok = False
                        break
            if ok:
                yield from rec(i + 1, new)

    yield from rec(0, {})


def _head_tuples(
    clause: Clause, subst: dict[str, _Value], domain: tuple[str, ...], budget: _Budget
) -> Iterator[tuple[_Value, ...]]:
    values: list[_Value | None] = [_term_value(t, subst) for t in clause.head.args]
    free = [i for i, v in enumerate(values) if v is None]
    if not free:
        yield tuple(values)  # type: ignore[arg-type]
        return
    # Head variables the body never binds range over the constant domain.
    for combo in itertools.product(domain, repeat=len(free)):
        budget.spend()
        out = list(values)
        for i, v in zip(free, combo):
            out[i] = v
        yield tuple(out)  # type: ignore[arg-type]


def stable_model(
    program: Program,
    *,
    strategy: str = "seminaive",
    max_work: int = 10_000_000,
) -> StableModel:
    """Compute the unique stable model of a stratified program.

    Raises NotStratifiedError for unstratifiable input, UnsafeClauseError
    for clauses that cannot be evaluated, and GroundingBlowupError once
    more than ``max_work`` evaluation steps have been spent.
    """
    if strategy not in ("seminaive", "naive"):
        raise EngineError(f"unknown strategy {strategy!r}")
    check_arities(program)
    strata = program.strata
    if strata is None or any(c.head.pred not in strata for c in program):
        strata = stratify(program).strata
    assert strata is not None
    domain = program_constants(program)
    budget = _Budget(max_work)

    by_level: dict[int, list[Clause]] = {}
    for c in program:
        by_level.setdefault(strata[c.head.pred], []).append(c)

    facts: _FactStore = {}
    plans = {id(c): _plan_body(c) for c in program}

    def derive(clause: Clause, delta_at: int | None, delta: _FactStore | None) -> list[tuple[str, tuple[_Value, ...]]]:
        out = []
        for subst in _eval_plan(plans[id(clause)], facts, delta_at, delta, budget):
            for tup in _head_tuples(clause, subst, domain, budget):
                out.append((clause.head.pred, tup))
        return out

    def insert(store_delta: _FactStore | None, pred: str, tup: tuple[_Value, ...]) -> bool:
        bucket = facts.setdefault(pred, {})
        if tup in bucket:
            return False
        bucket[tup] = None
        if store_delta is not None:
            store_delta.setdefault(pred, {})[tup] = None
        return True

    for level in sorted(by_level):
        rules = by_level[level]
        if strategy == "naive":
            changed = True
            while changed:
                changed = False
                for c in rules:
                    for pred, tup in derive(c, None, None):
                        if insert(None, pred, tup):
                            changed = True
            continue

        level_preds = {c.head.pred for c in rules}
        delta: _FactStore = {}
        for c in rules:
            for pred, tup in derive(c, None, None):
                insert(delta, pred, tup)
        while delta:
            new_delta: _FactStore = {}
            for c in rules:
                plan = plans[id(c)]
                for i, lit in enumerate(plan):
                    if (
                        isinstance(lit, Pos)
                        and lit.atom.pred not in BUILTINS
                        and lit.atom.pred in level_preds
                        and lit.atom.pred in delta
                    ):
                        for pred, tup in derive(c, i, delta):
                            insert(new_delta, pred, tup)
            delta = new_delta

    atoms = frozenset(_atom_from(pred, tup) for pred, bucket in facts.items() for tup in bucket)
    return StableModel(facts=atoms, domain=domain)


def covers(hypothesis: Program, examples: Iterable[Atom], background: Program) -> list[Atom]:
    """Examples (in input order) true in the stable model of background + hypothesis."""
    combined = Program(background.clauses + hypothesis.clauses)
    model = stable_model(combined)
    return [e for e in examples if e in model]


def cwa_negatives(goal: str, background: Program, positives: Sequence[Atom]) -> tuple[Atom, ...]:
    """Closed-world negatives: every domain subject not listed as positive.

    The subject domain is read off the source facts of ``background``:
    constants in first-argument position of unary facts and of binary facts
    whose second argument is a number.  Only unary goals are supported.
    """
    pos_set = set(positives)
    for a in positives:
        if a.pred != goal:
            raise EngineError(f"positive example {a} does not match goal {goal!r}")
        if a.arity != 1:
            raise EngineError("closed-world negatives require a unary goal predicate")
    subjects: dict[str, None] = {}
    for c in background:
        if not c.is_fact() or not c.head.is_ground():
            continue
        args = c.head.args
        if len(args) == 1 and isinstance(args[0], Const):
            subjects.setdefault(args[0].name)
        elif len(args) == 2 and isinstance(args[0], Const) and isinstance(args[1], Num):
            subjects.setdefault(args[0].name)
    out = []
    for s in subjects:
        a = Atom(goal, (Const(s),))
        if a not in pos_set:
            out.append(a)
    return tuple(out)
