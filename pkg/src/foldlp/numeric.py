"""FOLD-R: the FOLD induction loop over mixed categorical/numeric features.

Numeric features enter clauses as a value literal plus a comparison, e.g.
``temperature(X,A), A =< 75.0``.  Candidate thresholds are picked the way
C4.5 picks split points: try every observed value of every feature,
score the binary partition by entropy gain, and keep the best.  The
winning split is then turned into a directed literal (the side holding
more of the still-covered positives) and ranked against the best
categorical literal on the common Laplace-gain scale; equal scores go to
the categorical literal.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from . import _kernels as K
from . import coverage as cv
from .coverage import count, laplace_gain
from .engine import ExampleSet
from .learner import (
    Candidate,
    LearnContext,
    SUBJECT,
    _as_example_set,
)
from .logic import Atom, Clause, Cmp, Pos, Program, Var


def numeric_candidates(ctx: LearnContext, body: tuple, pos: np.ndarray, neg: np.ndarray) -> Candidate:
    """Best numeric refinement (value literal + comparison) or (None, 0.0).

    Features are scanned in name order; entropy-gain ties keep the earlier
    feature and, within a feature, the lower threshold.
    """
    fs = ctx.fs
    if not fs.num_order:
        return None, 0.0
    p0 = count(pos)
    n0 = count(neg)
    best = None
    best_egain = 0.0
    for f in fs.num_order:
        present = fs.num_present[f]
        pos_vals = fs.num_values[f][cv.mask_to_indices(pos & present, fs.n)]
        neg_vals = fs.num_values[f][cv.mask_to_indices(neg & present, fs.n)]
        v, egain, p_le, n_le = K.best_threshold(pos_vals, neg_vals)
        if math.isnan(v):
            continue
        if egain > best_egain + K.GAIN_EPS:
            best_egain = egain
            best = (f, v, p_le, n_le, pos_vals, neg_vals)
    if best is None:
        return None, 0.0

    f, v, p_le, n_le, pos_vals, neg_vals = best
    total_p, total_n = len(pos_vals), len(neg_vals)
    p_gt = total_p - p_le
    n_gt = total_n - n_le
    if p_le >= p_gt:
        op, p1, n1 = "=<", p_le, n_le
    else:
        op, p1, n1 = ">", p_gt, n_gt
    score = max(0.0, laplace_gain(p0, n0, p1, n1))

    out_op, out_v = op, v
    if op == ">" and ctx.compat_ge:
        # On the sample the split was chosen from, "x > v" and "x >= v'"
        # with v' the next value occurring in that sample pick out exactly
        # the same subjects.
        sample = np.concatenate([pos_vals, neg_vals])
        above = sample[sample > v]
        if len(above):
            out_op, out_v = ">=", float(above.min())

    var = _existing_value_var(body, f)
    if var is None:
        var = ctx.fresh_value_var(body)
        lits: tuple = (Pos(Atom(f, (SUBJECT, var))), Cmp(var, out_op, out_v))
    else:
        lits = (Cmp(var, out_op, out_v),)
    return lits, float(score)


def _existing_value_var(body: tuple, feature: str) -> Var | None:
    for lit in body:
        if isinstance(lit, Pos) and lit.atom.arity == 2 and lit.atom.pred == feature:
            arg = lit.atom.args[1]
            if isinstance(arg, Var):
                return arg
    return None


def foldr_context(
    background: Program,
    examples: ExampleSet,
    *,
    allow_recursion: bool = False,
    compat_ge: bool = False,
    max_work: int = 10_000_000,
) -> LearnContext:
    return LearnContext(
        background,
        examples,
        allow_recursion=allow_recursion,
        numeric_candidates=numeric_candidates,
        compat_ge=compat_ge,
        max_work=max_work,
    )


def foldr(
    background: Program,
    examples,
    negatives=None,
    *,
    allow_recursion: bool = False,
    compat_ge: bool = False,
    max_work: int = 10_000_000,
) -> Program:
    """FOLD over categorical and numeric features.

    On input without numeric features this produces exactly what fold()
    produces.  ``compat_ge`` rewrites winning ``A > v`` literals to
    ``A >= v'`` with v' the next observed value, matching tools that print
    right-open splits inclusively.
    """
    es = _as_example_set(background, examples, negatives)
    return foldr_context(
        background,
        es,
        allow_recursion=allow_recursion,
        compat_ge=compat_ge,
        max_work=max_work,
    ).run()


# Stepwise API, mirroring the categorical counterparts on LearnContext.

def test_categorical(
    ctx: LearnContext, clause: Clause, positives: Iterable[Atom], negatives: Iterable[Atom]
) -> tuple[Clause, float]:
    """Best categorical refinement only (numeric candidates ignored)."""
    pos = ctx.fs.mask_of(positives)
    neg = ctx.fs.mask_of(negatives)
    body = ctx._strip_true(clause.body)
    lits, score = ctx._best_categorical(body, pos, neg)
    if lits is None or score <= K.GAIN_EPS:
        return clause, 0.0
    return Clause(clause.head, body + lits), score


def test_numeric(
    ctx: LearnContext, clause: Clause, positives: Iterable[Atom], negatives: Iterable[Atom]
) -> tuple[Clause, float]:
    """Best numeric refinement only (categorical candidates ignored)."""
    pos = ctx.fs.mask_of(positives)
    neg = ctx.fs.mask_of(negatives)
    body = ctx._strip_true(clause.body)
    lits, score = numeric_candidates(ctx, body, pos, neg)
    if lits is None or score <= K.GAIN_EPS:
        return clause, 0.0
    return Clause(clause.head, body + lits), score


# The two helpers follow the algorithm's naming; tell test runners they are
# library functions, not test cases.
test_categorical.__test__ = False  # type: ignore[attr-defined]
test_numeric.__test__ = False  # type: ignore[attr-defined]
