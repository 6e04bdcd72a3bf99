"""Bitset-encoded example coverage, plus the gain functions.

The learner never asks the engine whether a candidate clause covers an
example: instead every candidate feature is encoded once as a bitset over
the example subjects (one bit per subject, packed into uint64 words), and
clause coverage becomes a handful of AND/ANDNOT operations plus a
popcount.  The encoding is exact for the clause language the learner
emits, which the test suite cross-checks against the engine.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .engine import ExampleSet, StableModel, stable_model
from .logic import (
    Atom,
    Const,
    FoldlpError,
    Neg,
    Num,
    Pos,
    Program,
)


class LearnerError(FoldlpError):
    pass


# --------------------------------------------------------------------------
# FOIL information gain.  t is the number of positive examples still covered
# after adding the literal (= p1 here, kept as an explicit argument so the
# degenerate cases are visible at the call site).

def information_gain(p0: int, n0: int, p1: int, n1: int, t: int) -> float:
    """FOIL gain t * (log2(p1/(p1+n1)) - log2(p0/(p0+n0))); 0.0 when undefined."""
    if t == 0 or p1 == 0 or p0 == 0:
        return 0.0
    return t * (math.log2(p1 / (p1 + n1)) - math.log2(p0 / (p0 + n0)))


def laplace_gain(p0: int, n0: int, p1: int, n1: int) -> float:
    """Laplace-smoothed FOIL gain used to rank candidate literals.

    Smoothing keeps near-pure literals with tiny coverage from tying or
    beating broad ones, which is what makes the default-then-exception
    split come out right; the unsmoothed gain stays available above for
    reporting.
    """
    if p1 == 0:
        return 0.0
    return p1 * (
        math.log2((p1 + 1) / (p1 + n1 + 2)) - math.log2((p0 + 1) / (p0 + n0 + 2))
    )


# --------------------------------------------------------------------------
# Bitset helpers.  Masks are little-endian uint64 arrays; bit i = subject i.

def empty_mask(n_words: int) -> np.ndarray:
    return np.zeros(n_words, dtype=np.uint64)


def mask_from_indices(idxs: Iterable[int], n_words: int) -> np.ndarray:
    m = np.zeros(n_words, dtype=np.uint64)
    for i in idxs:
        m[i >> 6] |= np.uint64(1) << np.uint64(i & 63)
    return m


def mask_from_bools(flags: np.ndarray, n_words: int) -> np.ndarray:
    bits = np.packbits(flags.astype(np.uint8), bitorder="little")
    out = np.zeros(n_words * 8, dtype=np.uint8)
    out[: len(bits)] = bits
    return out.view(np.uint64)


def mask_to_indices(mask: np.ndarray, n: int) -> np.ndarray:
    flags = np.unpackbits(mask.view(np.uint8), bitorder="little")[:n]
    return np.nonzero(flags)[0]


def count(mask: np.ndarray) -> int:
    return K.popcount(np.ascontiguousarray(mask))


_AB_RE = re.compile(r"^ab(\d+)$")


@dataclass
class FeatureSpace:
    """All candidate features of one learning problem, bit-packed.

    Categorical candidates keep the order in which their predicates first
    appear in the background program (the tie-break order); numeric
    features are kept sorted by name (the order the threshold search
    scans them in).
    """

    subjects: tuple[str, ...]
    index: dict[str, int]
    n_words: int
    full_mask: np.ndarray
    pos_mask: np.ndarray
    neg_mask: np.ndarray
    cat_order: tuple[str, ...]
    cat_stack: np.ndarray  # (len(cat_order), n_words) uint64
    num_order: tuple[str, ...]
    num_values: dict[str, np.ndarray]  # float64 per subject, NaN = absent
    num_present: dict[str, np.ndarray]
    model: StableModel
    goal: str
    next_ab: int = 0
    _unary_cache: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.subjects)

    def cat_mask(self, pred: str) -> np.ndarray:
        i = self.cat_order.index(pred)
        return self.cat_stack[i]

    def unary_mask(self, pred: str) -> np.ndarray:
        m = self._unary_cache.get(pred)
        if m is None:
            idxs = [
                self.index[a.args[0].name]
                for a in self.model.facts
                if a.pred == pred
                and a.arity == 1
                and isinstance(a.args[0], Const)
                and a.args[0].name in self.index
            ]
            m = mask_from_indices(idxs, self.n_words)
            self._unary_cache[pred] = m
        return m

    def mask_of(self, atoms: Iterable[Atom]) -> np.ndarray:
        idxs = []
        for a in atoms:
            if a.arity != 1 or not isinstance(a.args[0], Const):
                raise LearnerError(f"expected a unary ground example atom, got {a}")
            i = self.index.get(a.args[0].name)
            if i is None:
                raise LearnerError(f"unknown example subject {a.args[0].name!r}")
            idxs.append(i)
        return mask_from_indices(idxs, self.n_words)

    def subjects_of(self, mask: np.ndarray) -> list[str]:
        return [self.subjects[i] for i in mask_to_indices(mask, self.n)]

    def atoms_of(self, mask: np.ndarray) -> list[Atom]:
        return [Atom(self.goal, (Const(s),)) for s in self.subjects_of(mask)]

def build_feature_space(
    background: Program,
    examples: ExampleSet,
    *,
    allow_recursion: bool = False,
    max_work: int = 10_000_000,
) -> FeatureSpace:
    goal = examples.goal
    for a in examples.positives + examples.negatives:
        if a.arity != 1 or not isinstance(a.args[0], Const):
            raise LearnerError(f"the learner needs unary examples over constants, got {a}")

    subjects: dict[str, None] = {}
    for a in examples.positives + examples.negatives:
        subjects.setdefault(a.args[0].name)
    subject_list = tuple(subjects)
    index = {s: i for i, s in enumerate(subject_list)}
    n = len(subject_list)
    n_words = max(1, (n + 63) >> 6)

    full = mask_from_indices(range(n), n_words)
    pos_mask = mask_from_indices((index[a.args[0].name] for a in examples.positives), n_words)
    neg_mask = mask_from_indices((index[a.args[0].name] for a in examples.negatives), n_words)

    model = stable_model(background, max_work=max_work)

    # Candidate predicates in first-appearance order; the appearance scan
    # doubles as the tie-break order for equal gains.
    arities: dict[str, int] = {}
    appearance: list[str] = []
    next_ab = 0
    for c in background:
        for atom in _clause_atoms(c):
            if atom.pred in ("true", "member"):
                continue
            if atom.pred not in arities:
                arities[atom.pred] = atom.arity
                appearance.append(atom.pred)
            m = _AB_RE.match(atom.pred)
            if m:
                next_ab = max(next_ab, int(m.group(1)) + 1)

    cat_order = [p for p in appearance if arities[p] == 1 and p != goal]
    if allow_recursion and goal not in cat_order:
        cat_order.append(goal)

    # Numeric features: binary predicates whose model facts all look like
    # pred(subject, number), at most one value per subject.
    num_candidates = [p for p in appearance if arities[p] == 2]
    num_shape: dict[str, dict[str, float]] = {p: {} for p in num_candidates}
    numeric_ok = {p: True for p in num_candidates}
    observed: dict[str, set[float]] = {p: set() for p in num_candidates}
    for a in model.facts:
        if a.pred not in num_shape or a.arity != 2:
            continue
        s, v = a.args
        if not (isinstance(s, Const) and isinstance(v, Num)):
            numeric_ok[a.pred] = False
            continue
        observed[a.pred].add(v.value)
        if s.name not in index:
            continue
        prev = num_shape[a.pred].get(s.name)
        if prev is not None and prev != v.value:
            raise LearnerError(
                f"numeric feature {a.pred!r} has several values for subject {s.name!r}; "
                "one value per subject is required"
            )
        num_shape[a.pred][s.name] = v.value

    num_order = tuple(sorted(p for p in num_candidates if numeric_ok[p] and observed[p]))
    num_values: dict[str, np.ndarray] = {}
    num_present: dict[str, np.ndarray] = {}
    for p in num_order:
        vals = np.full(n, np.nan)
        for s, v in num_shape[p].items():
            vals[index[s]] = v
        num_values[p] = vals
        num_present[p] = mask_from_bools(~np.isnan(vals), n_words)

    stack = np.zeros((max(1, len(cat_order)), n_words), dtype=np.uint64)
    ext_bits: dict[str, list[int]] = {p: [] for p in cat_order}
    for a in model.facts:
        if a.arity == 1 and a.pred in ext_bits and isinstance(a.args[0], Const):
            i = index.get(a.args[0].name)
            if i is not None:
                ext_bits[a.pred].append(i)
    for k, p in enumerate(cat_order):
        stack[k] = mask_from_indices(ext_bits[p], n_words)

    return FeatureSpace(
        subjects=subject_list,
        index=index,
        n_words=n_words,
        full_mask=full,
        pos_mask=pos_mask,
        neg_mask=neg_mask,
        cat_order=tuple(cat_order),
        cat_stack=stack,
        num_order=num_order,
        num_values=num_values,
        num_present=num_present,
        model=model,
        goal=goal,
        next_ab=next_ab,
    )


def _clause_atoms(c):
    yield c.head
    for lit in c.body:
        if isinstance(lit, (Pos, Neg)):
            yield lit.atom


def value_mask(fs: FeatureSpace, feature: str, op: str, threshold: float) -> np.ndarray:
    vals = fs.num_values[feature]
    with np.errstate(invalid="ignore"):
        if op == "=<":
            sel = vals <= threshold
        elif op == "<":
            sel = vals < threshold
        elif op == ">=":
            sel = vals >= threshold
        elif op == ">":
            sel = vals > threshold
        else:
            raise LearnerError(f"unknown comparison operator {op!r}")
    return mask_from_bools(sel, fs.n_words)


def member_mask(fs: FeatureSpace, items: Sequence[Const]) -> np.ndarray:
    idxs = [fs.index[c.name] for c in items if c.name in fs.index]
    return mask_from_indices(idxs, fs.n_words)
