"""CSV datasets: schema, loading, propositionalization, cross-validation.

Column kinds (declared in the header as ``name:kind`` or in a schema file,
one ``name:kind`` per line, ``#`` comments allowed):

    id            row identifier, becomes the subject constant
    cat           categorical; cell v becomes the fact  col_v(subject)
    val           categorical with bare naming; cell v becomes  v(subject)
    bool          true/false; a true cell becomes  col(subject)
    num           numeric; the cell becomes  col(subject, value)
    label=V       the target column; rows labelled V are the positives

``cat`` is the default kind.  Missing cells ('' or '?') are an error
unless ``drop_missing`` is set, in which case the whole row is skipped.
"""

from __future__ import annotations

import csv
import io
import random
import re
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .engine import ExampleSet, stable_model
from .logic import (
    Atom,
    BUILTINS,
    Clause,
    Const,
    FoldlpError,
    Num,
    Program,
    parse_program,
    program_to_text,
)


class DataError(FoldlpError):
    pass


KINDS = ("id", "cat", "val", "bool", "num", "label")

_IDENT_RE = re.compile(r"^[a-z][a-z0-9_]*$")

_TRUE_TOKENS = {"true", "t", "yes", "y", "1"}
_FALSE_TOKENS = {"false", "f", "no", "n", "0"}


def normalize(token: str) -> str:
    """Lower-case and squeeze a raw token into identifier shape."""
    out = re.sub(r"[^a-z0-9]+", "_", token.strip().lower()).strip("_")
    return out


@dataclass(frozen=True)
class Column:
    name: str
    kind: str
    positive: str | None = None  # for label columns

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DataError(f"unknown column kind {self.kind!r} for column {self.name!r}")
        if not _IDENT_RE.match(self.name):
            raise DataError(f"column name {self.name!r} does not normalize to an identifier")


@dataclass(frozen=True)
class Schema:
    columns: tuple[Column, ...]

    def __post_init__(self):
        labels = [c for c in self.columns if c.kind == "label"]
        if len(labels) != 1:
            raise DataError(f"need exactly one label column, found {len(labels)}")
        ids = [c for c in self.columns if c.kind == "id"]
        if len(ids) > 1:
            raise DataError("more than one id column")
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise DataError("duplicate column names after normalization")

    @property
    def label(self) -> Column:
        return next(c for c in self.columns if c.kind == "label")

    @property
    def id_column(self) -> Column | None:
        return next((c for c in self.columns if c.kind == "id"), None)


def _parse_column_spec(cell: str) -> Column:
    name, sep, rest = cell.partition(":")
    name = normalize(name)
    if not sep:
        return Column(name, "cat")
    kind, eq, value = rest.strip().partition("=")
    kind = kind.strip().lower()
    if kind == "label":
        return Column(name, "label", positive=value.strip() if eq else None)
    if eq:
        raise DataError(f"only label columns take '=', got {cell!r}")
    return Column(name, kind)


def parse_schema(text: str) -> Schema:
    cols = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            cols.append(_parse_column_spec(line))
    return Schema(tuple(cols))


def load_schema(path: str | Path) -> Schema:
    return parse_schema(Path(path).read_text())


@dataclass(frozen=True)
class Dataset:
    """Typed rows plus the subject constant naming them."""

    name: str
    schema: Schema
    subjects: tuple[str, ...]
    rows: tuple[tuple, ...]  # cells in schema column order, typed
    positive_label: str

    def __len__(self) -> int:
        return len(self.rows)

    def labels(self) -> tuple[bool, ...]:
        li = next(i for i, c in enumerate(self.schema.columns) if c.kind == "label")
        return tuple(row[li] == self.positive_label for row in self.rows)

    def subset(self, indices: Sequence[int], name: str | None = None) -> "Dataset":
        return Dataset(
            name=name or self.name,
            schema=self.schema,
            subjects=tuple(self.subjects[i] for i in indices),
            rows=tuple(self.rows[i] for i in indices),
            positive_label=self.positive_label,
        )


def _subject_name(token: str, fallback: str) -> str:
    t = normalize(token)
    if not t:
        return fallback
    if not _IDENT_RE.match(t):
        t = "s_" + t
        if not _IDENT_RE.match(t):
            raise DataError(f"cannot use {token!r} as a subject identifier")
    return t


def load_csv(
    path: str | Path,
    *,
    schema: Schema | None = None,
    positive_label: str | None = None,
    drop_missing: bool = False,
    name: str | None = None,
) -> Dataset:
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such file: {path}")
    return loads_csv(
        path.read_text(),
        schema=schema,
        positive_label=positive_label,
        drop_missing=drop_missing,
        name=name or path.stem,
    )


def loads_csv(
    text: str,
    *,
    schema: Schema | None = None,
    positive_label: str | None = None,
    drop_missing: bool = False,
    name: str = "data",
) -> Dataset:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty CSV") from None

    if schema is None:
        schema = Schema(tuple(_parse_column_spec(cell) for cell in header))
    else:
        got = [normalize(c.split(":", 1)[0]) for c in header]
        want = [c.name for c in schema.columns]
        if got != want:
            raise DataError(f"header {got} does not match schema columns {want}")

    label_col = schema.label
    pos_label = positive_label if positive_label is not None else label_col.positive
    columns = schema.columns

    subjects: list[str] = []
    rows: list[tuple] = []
    seen_subjects: set[str] = set()
    seen_labels: dict[str, None] = {}
    for lineno, raw in enumerate(reader, start=2):
        if not raw or all(not c.strip() for c in raw):
            continue
        if len(raw) != len(columns):
            raise DataError(f"line {lineno}: expected {len(columns)} cells, found {len(raw)}")
        cells = [c.strip() for c in raw]
        if any(c in ("", "?") for c in cells):
            # A missing feature cell means the feature is simply absent for
            # that row (no fact is emitted, so it reads as false/unknown);
            # drop_missing instead discards the whole row.  Identity and
            # label cells can never be missing.
            if drop_missing:
                continue
            for col, cell in zip(columns, cells):
                if cell in ("", "?") and col.kind in ("id", "label"):
                    raise DataError(
                        f"line {lineno}: missing value in column {col.name!r}"
                    )
        typed: list = []
        subject = f"d{len(rows) + 1}"
        for col, cell in zip(columns, cells):
            if col.kind == "id":
                subject = _subject_name(cell, f"d{len(rows) + 1}")
            if cell in ("", "?") and col.kind not in ("id", "label"):
                typed.append(None)
            elif col.kind == "num":
                try:
                    typed.append(float(cell))
                except ValueError:
                    raise DataError(
                        f"line {lineno}: column {col.name!r} is numeric but got {cell!r}"
                    ) from None
            elif col.kind == "bool":
                low = cell.lower()
                if low in _TRUE_TOKENS:
                    typed.append(True)
                elif low in _FALSE_TOKENS:
                    typed.append(False)
                else:
                    raise DataError(f"line {lineno}: column {col.name!r} is boolean but got {cell!r}")
            elif col.kind == "label":
                typed.append(cell)
                seen_labels.setdefault(cell)
            elif col.kind == "id":
                typed.append(cell)
            else:  # cat / val
                tok = normalize(cell)
                if not tok:
                    raise DataError(f"line {lineno}: column {col.name!r} value {cell!r} normalizes to nothing")
                typed.append(tok)
        if subject in seen_subjects:
            raise DataError(f"line {lineno}: duplicate subject {subject!r}")
        seen_subjects.add(subject)
        subjects.append(subject)
        rows.append(tuple(typed))

    if not rows:
        raise DataError("CSV has a header but no data rows")
    if pos_label is None:
        raise DataError(
            f"no positive label chosen for column {label_col.name!r}; "
            f"observed labels: {sorted(seen_labels)}"
        )
    if pos_label not in seen_labels:
        raise DataError(
            f"positive label {pos_label!r} never occurs; observed labels: {sorted(seen_labels)}"
        )
    return Dataset(
        name=name,
        schema=schema,
        subjects=tuple(subjects),
        rows=tuple(rows),
        positive_label=pos_label,
    )


def propositionalize(ds: Dataset) -> tuple[Program, ExampleSet]:
    """Turn typed rows into background facts plus labelled examples."""
    goal = ds.schema.label.name
    pred_source: dict[str, str] = {}

    def claim(pred: str, col: str) -> str:
        if pred in BUILTINS or pred == "not" or pred == goal:
            raise DataError(f"column {col!r} produces reserved predicate name {pred!r}")
        owner = pred_source.setdefault(pred, col)
        if owner != col:
            raise DataError(
                f"columns {owner!r} and {col!r} both produce predicate {pred!r}; rename one"
            )
        return pred

    clauses: list[Clause] = []
    positives: list[Atom] = []
    negatives: list[Atom] = []
    for subject, row in zip(ds.subjects, ds.rows):
        s = Const(subject)
        for col, cell in zip(ds.schema.columns, row):
            if col.kind == "id" or cell is None:
                continue
            if col.kind == "label":
                target = positives if cell == ds.positive_label else negatives
                target.append(Atom(goal, (s,)))
            elif col.kind == "num":
                clauses.append(Clause(Atom(claim(col.name, col.name), (s, Num(cell)))))
            elif col.kind == "bool":
                if cell:
                    clauses.append(Clause(Atom(claim(col.name, col.name), (s,))))
            elif col.kind == "val":
                if not _IDENT_RE.match(cell):
                    raise DataError(
                        f"column {col.name!r}: value {cell!r} cannot name a predicate by itself; "
                        "use kind 'cat' to prefix it with the column name"
                    )
                clauses.append(Clause(Atom(claim(cell, col.name), (s,))))
            else:  # cat
                pred = f"{col.name}_{cell}"
                if not _IDENT_RE.match(pred):
                    raise DataError(f"column {col.name!r}: bad predicate name {pred!r}")
                clauses.append(Clause(Atom(claim(pred, col.name), (s,))))
    return Program(tuple(clauses)), ExampleSet(tuple(positives), tuple(negatives))


def split_folds(n: int, k: int, seed: int) -> list[list[int]]:
    """Deterministic shuffle of range(n) dealt round-robin into k folds."""
    if k < 2:
        raise DataError("need at least 2 folds")
    if k > n:
        raise DataError(f"cannot split {n} rows into {k} folds")
    idx = list(range(n))
    random.Random(seed).shuffle(idx)
    return [sorted(idx[i::k]) for i in range(k)]


def classify(model: Program, facts: Program, goal: str, subjects: Iterable[str]) -> set[str]:
    """Subjects whose goal atom is true under the model plus their facts."""
    combined = Program(facts.clauses + model.clauses)
    m = stable_model(combined)
    return {s for s in subjects if Atom(goal, (Const(s),)) in m}


def accuracy(model: Program, ds: Dataset) -> float:
    facts, _ = propositionalize(ds)
    predicted = classify(model, facts, ds.schema.label.name, ds.subjects)
    truth = ds.labels()
    hits = sum(1 for s, y in zip(ds.subjects, truth) if (s in predicted) == y)
    return hits / len(ds)


@dataclass
class CrossvalReport:
    dataset: str
    folds: int
    seed: int
    accuracies: list[float]
    seconds: float
    model: Program

    @property
    def mean_acc(self) -> float:
        return statistics.fmean(self.accuracies)

    @property
    def std_acc(self) -> float:
        return statistics.pstdev(self.accuracies)

    @property
    def clause_count(self) -> int:
        return len(self.model.clauses)

    @property
    def ab_pred_count(self) -> int:
        return len({c.head.pred for c in self.model if re.match(r"^ab\d+$", c.head.pred)})

    def line(self) -> str:
        return (
            f"{self.dataset},{self.folds},{self.seed},"
            f"{self.mean_acc:.4f},{self.std_acc:.4f},{self.seconds:.3f},"
            f"{self.clause_count},{self.ab_pred_count}"
        )


def crossval(
    ds: Dataset,
    learner: Callable[[Program, ExampleSet], Program],
    *,
    folds: int = 10,
    seed: int = 0,
) -> CrossvalReport:
    """Seeded k-fold cross-validation; also refits on the full data.

    The reported clause counts come from the full-data model, the
    accuracies from the held-out folds.
    """
    t0 = time.perf_counter()
    parts = split_folds(len(ds), folds, seed)
    accs: list[float] = []
    for i, test_idx in enumerate(parts):
        train_idx = [j for j in range(len(ds)) if j not in set(test_idx)]
        train = ds.subset(train_idx)
        test = ds.subset(test_idx)
        background, examples = propositionalize(train)
        model = learner(background, examples)
        accs.append(accuracy(model, test))
    background, examples = propositionalize(ds)
    full_model = learner(background, examples)
    return CrossvalReport(
        dataset=ds.name,
        folds=folds,
        seed=seed,
        accuracies=accs,
        seconds=time.perf_counter() - t0,
        model=full_model,
    )


# --------------------------------------------------------------------------
# Model files: plain clause text with '% key: value' metadata comments.

def save_model(path: str | Path, model: Program, meta: dict[str, str] | None = None) -> None:
    lines = [f"% {k}: {v}" for k, v in (meta or {}).items()]
    lines.append(program_to_text(model))
    Path(path).write_text("\n".join(lines))


def load_model(path: str | Path) -> tuple[Program, dict[str, str]]:
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such model file: {path}")
    text = path.read_text()
    meta: dict[str, str] = {}
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("%") and ":" in stripped:
            k, _, v = stripped[1:].partition(":")
            meta[k.strip()] = v.strip()
    return parse_program(text), meta
