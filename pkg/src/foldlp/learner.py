"""FOLD: induction of stratified normal logic programs.

The learner runs an outer sequential-covering loop; each clause starts as
``goal(X) :- true.`` and is specialized by greedily adding the literal with
the best (Laplace-smoothed) FOIL gain.  When no literal helps any more the
still-covered negatives become the *positives* of a recursive run whose
result is folded away behind an invented abnormality predicate:

    goal(X) :- <defaults>, not abK(X).
    abK(X)  :- <exception body>.

When not even that works (typically on the very first iteration, when the
positives are plain exceptional individuals) the clause falls back to
enumerating the remaining positives with ``member/2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import coverage as cv
from .coverage import FeatureSpace, LearnerError, count, information_gain, laplace_gain
from ._kernels import GAIN_EPS, score_masks
from .engine import ExampleSet, cwa_negatives
from .logic import (
    Atom,
    Clause,
    Cmp,
    Const,
    ConstList,
    Neg,
    Pos,
    Program,
    TRUE_LIT,
    Var,
    stratify,
)


class NonTerminationError(LearnerError):
    """The specialization measure failed to shrink; aborting instead of looping."""


SUBJECT = Var("X")

# A candidate refinement: the literals to append plus its selection score.
Candidate = tuple[tuple, float]
CandidateFn = Callable[["LearnContext", tuple, np.ndarray, np.ndarray], Candidate]


def _as_example_set(background: Program, examples, negatives=None) -> ExampleSet:
    """Coerce caller-supplied examples into an ExampleSet.

    ``negatives=None`` (as opposed to an explicit empty sequence) means the
    caller has labeled only the positives: every other subject of the
    background becomes a closed-world negative.
    """
    if isinstance(examples, ExampleSet):
        if negatives is not None:
            raise LearnerError("pass either an ExampleSet or two atom sequences, not both")
        return examples
    positives = tuple(examples)
    if negatives is None:
        if not positives:
            raise LearnerError("at least one positive example is required")
        negatives = cwa_negatives(positives[0].pred, background, positives)
    return ExampleSet(positives, tuple(negatives))


class LearnContext:
    """One learning problem: background + examples, frozen into bitsets.

    The public methods mirror the algorithm's building blocks so each can
    be exercised on its own; `run` drives the whole induction.
    """

    def __init__(
        self,
        background: Program,
        examples: ExampleSet,
        *,
        allow_recursion: bool = False,
        numeric_candidates: CandidateFn | None = None,
        compat_ge: bool = False,
        max_work: int = 10_000_000,
    ):
        if not examples.positives:
            raise LearnerError("cannot learn from zero positive examples")
        self.background = background
        self.examples = examples
        self.goal = examples.goal
        self.fs: FeatureSpace = cv.build_feature_space(
            background, examples, allow_recursion=allow_recursion, max_work=max_work
        )
        self.allow_recursion = allow_recursion
        self.numeric_candidates = numeric_candidates
        self.compat_ge = compat_ge
        self.ab_clauses: list[Clause] = []
        self.ab_masks: dict[str, np.ndarray] = {}
        self._ab_counter = self.fs.next_ab

    # -- public driver ----------------------------------------------------

    def run(self) -> Program:
        defaults = self._cover_loop(self.fs.pos_mask.copy(), self.fs.neg_mask.copy(), None)
        program = Program(tuple(defaults) + tuple(self.ab_clauses))
        return stratify(program)

    # -- spec'd building blocks, atom-set flavoured -----------------------

    def add_best_literal(
        self, clause: Clause, positives: Iterable[Atom], negatives: Iterable[Atom]
    ) -> tuple[Clause, float]:
        """Best single refinement of ``clause`` against the given examples.

        Returns the refined clause and its selection gain; the clause comes
        back unchanged when nothing scores above zero.
        """
        pos = self.fs.mask_of(positives)
        neg = self.fs.mask_of(negatives)
        body = self._strip_true(clause.body)
        lits, score = self._best_candidate(body, pos, neg)
        if lits is None or score <= GAIN_EPS:
            return clause, 0.0
        return Clause(clause.head, body + lits), score

    def specialize(self, clause: Clause, positives: Iterable[Atom], negatives: Iterable[Atom]) -> Clause:
        pos = self.fs.mask_of(positives)
        neg = self.fs.mask_of(negatives)
        body = self._strip_true(clause.body)
        return self._specialize(body, pos, neg, parent_measure=None)

    def exception(self, clause: Clause, positives: Iterable[Atom], negatives: Iterable[Atom]) -> Clause | None:
        """Learn an exception for ``clause`` from already-swapped example sets.

        ``positives`` are the examples the exception must cover (the
        negatives the clause still lets through); returns None when no
        literal separates them, in which case the caller should enumerate.
        """
        pos = self.fs.mask_of(positives)
        neg = self.fs.mask_of(negatives)
        lit = self._exception(pos, neg, parent_measure=None)
        if lit is None:
            return None
        return Clause(clause.head, self._strip_true(clause.body) + (lit,))

    def enumerate_fallback(self, clause: Clause, positives: Iterable[Atom]) -> Clause:
        pos = self.fs.mask_of(positives)
        return Clause(clause.head, self._strip_true(clause.body) + (self._member_literal(pos),))

    def abnormal_clauses(self) -> tuple[Clause, ...]:
        return tuple(self.ab_clauses)

    # -- the algorithm on masks -------------------------------------------

    def _cover_loop(self, pos: np.ndarray, neg: np.ndarray, parent_measure: int | None) -> list[Clause]:
        defaults: list[Clause] = []
        while count(pos) > 0:
            clause = self._specialize((), pos, neg, parent_measure)
            m = self.body_mask(clause.body)
            if count(pos & m) == 0:
                raise NonTerminationError(
                    f"specialized clause covers none of its positives: {clause}"
                )
            pos = pos & ~m & self.fs.full_mask
            defaults.append(clause)
        return defaults

    def _specialize(
        self, body: tuple, pos: np.ndarray, neg: np.ndarray, parent_measure: int | None
    ) -> Clause:
        measure = count(pos) + count(neg)
        if parent_measure is not None and measure >= parent_measure:
            raise NonTerminationError(
                "exception subproblem did not shrink; refusing to recurse"
            )
        body = tuple(body)
        just_started = len(body) == 0
        while count(neg) > 0:
            lits, score = self._best_candidate(body, pos, neg)
            if lits is not None and score > GAIN_EPS:
                body = body + lits
            elif just_started:
                body = body + (self._member_literal(pos),)
            else:
                exc = self._exception(neg, pos, parent_measure=measure)
                if exc is None:
                    body = body + (self._member_literal(pos),)
                else:
                    body = body + (exc,)
            just_started = False
            m = self.body_mask(body)
            pos = pos & m
            neg = neg & m
        return Clause(Atom(self.goal, (SUBJECT,)), body if body else (TRUE_LIT,))

    def _exception(self, ex_pos: np.ndarray, ex_neg: np.ndarray, parent_measure: int | None) -> Neg | None:
        lits, score = self._best_candidate((), ex_pos, ex_neg)
        if lits is None or score <= GAIN_EPS:
            return None
        measure = count(ex_pos) + count(ex_neg)
        clauses = self._cover_loop(ex_pos, ex_neg, parent_measure if parent_measure is not None else measure + 1)
        ab = Atom(f"ab{self._ab_counter}", (SUBJECT,))
        self._ab_counter += 1
        mask = cv.empty_mask(self.fs.n_words)
        for c in clauses:
            self.ab_clauses.append(Clause(ab, c.body))
            mask = mask | self.body_mask(c.body)
        self.ab_masks[ab.pred] = mask
        return Neg(ab)

    def _best_candidate(self, body: tuple, pos: np.ndarray, neg: np.ndarray) -> Candidate:
        cat = self._best_categorical(body, pos, neg)
        if self.numeric_candidates is None:
            return cat
        num = self.numeric_candidates(self, body, pos, neg)
        if num[0] is None:
            return cat
        if cat[0] is None:
            return num
        # equal scores go to the categorical literal
        return cat if cat[1] >= num[1] - GAIN_EPS else num

    def _best_categorical(self, body: tuple, pos: np.ndarray, neg: np.ndarray) -> Candidate:
        fs = self.fs
        if not fs.cat_order:
            return None, 0.0
        used = {
            lit.atom.pred
            for lit in body
            if isinstance(lit, Pos) and lit.atom.arity == 1
        }
        p0 = count(pos)
        n0 = count(neg)
        p1s, n1s = score_masks(fs.cat_stack, np.ascontiguousarray(pos), np.ascontiguousarray(neg))
        best_pred = None
        best_score = -np.inf
        for k, pred in enumerate(fs.cat_order):
            if pred in used:
                continue
            score = laplace_gain(p0, n0, int(p1s[k]), int(n1s[k]))
            if score > best_score + GAIN_EPS:
                best_pred = pred
                best_score = score
        if best_pred is None:
            return None, 0.0
        return (Pos(Atom(best_pred, (SUBJECT,))),), float(best_score)

    # -- clause coverage ---------------------------------------------------

    def body_mask(self, body: Sequence) -> np.ndarray:
        """Subjects satisfying every body literal, as a bitset."""
        fs = self.fs
        m = fs.full_mask.copy()
        var_feature: dict[str, str] = {}
        for lit in body:
            if lit == TRUE_LIT:
                continue
            if isinstance(lit, Pos):
                atom = lit.atom
                if atom.pred == "member":
                    lst = atom.args[1]
                    if not isinstance(lst, ConstList):
                        raise LearnerError("member/2 needs a constant list")
                    m = m & cv.member_mask(fs, lst.items)
                elif atom.arity == 1:
                    m = m & fs.unary_mask(atom.pred)
                elif atom.arity == 2 and isinstance(atom.args[1], Var):
                    var_feature[atom.args[1].name] = atom.pred
                    m = m & fs.num_present[atom.pred]
                else:
                    raise LearnerError(f"cannot bit-encode literal {lit}")
            elif isinstance(lit, Neg):
                pred = lit.atom.pred
                sub = self.ab_masks.get(pred)
                if sub is None:
                    sub = fs.unary_mask(pred)
                m = m & ~sub & fs.full_mask
            elif isinstance(lit, Cmp):
                feature = var_feature.get(lit.var.name)
                if feature is None:
                    raise LearnerError(f"comparison variable {lit.var.name} is not bound to a feature")
                m = m & cv.value_mask(fs, feature, lit.op, lit.value)
            else:
                raise LearnerError(f"cannot bit-encode literal {lit!r}")
        return m

    # -- small helpers -----------------------------------------------------

    def _member_literal(self, pos: np.ndarray) -> Pos:
        items = tuple(Const(s) for s in self.fs.subjects_of(pos))
        return Pos(Atom("member", (SUBJECT, ConstList(items))))

    def fresh_value_var(self, body: Sequence) -> Var:
        used = {SUBJECT.name}
        for lit in body:
            if isinstance(lit, Pos):
                for t in lit.atom.args:
                    if isinstance(t, Var):
                        used.add(t.name)
            elif isinstance(lit, Cmp):
                used.add(lit.var.name)
        for i in range(26 * 27):
            name = "ABCDEFGHIJKLMNOPQRSTUVWYZ"[i % 25]  # no X: that is the subject
            if i >= 25:
                name += str(i // 25)
            if name not in used:
                return Var(name)
        raise LearnerError("ran out of fresh variable names")

    @staticmethod
    def _strip_true(body: Sequence) -> tuple:
        return tuple(lit for lit in body if lit != TRUE_LIT)


def fold(
    background: Program,
    examples,
    negatives=None,
    *,
    allow_recursion: bool = False,
    max_work: int = 10_000_000,
) -> Program:
    """Induce a stratified program covering the positives but no negatives.

    ``examples`` may be an ExampleSet or a sequence of positive atoms (with
    ``negatives`` given separately).  Only categorical (unary) background
    predicates are considered; see foldr() for numeric features.
    """
    es = _as_example_set(background, examples, negatives)
    ctx = LearnContext(background, es, allow_recursion=allow_recursion, max_work=max_work)
    return ctx.run()
