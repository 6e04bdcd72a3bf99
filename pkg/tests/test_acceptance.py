"""Acceptance gate: one test (and one printed PASS/FAIL line) per criterion.

The UCI criteria run only for datasets present under ``datasets/uci/``; the
iris table ships with the repository, the rest are drop-ins prepared with the
converter scripts there (see datasets/uci/README.md).  Missing files produce
a visible SKIP line, never a silent pass.
"""

from __future__ import annotations

import math
import time
from pathlib import Path
from random import Random

import pytest

import oracles
from foldlp import (
    Atom,
    Clause,
    Cmp,
    Const,
    ExampleSet,
    Neg,
    Num,
    Pos,
    Program,
    covers,
    crossval,
    fold,
    foldr,
    foldr_context,
    information_gain,
    load_csv,
    load_schema,
    parse_clause,
    propositionalize,
    stable_model,
    stratify,
)
from foldlp.golden import CASES, same_theory
from foldlp.numeric import test_numeric

UCI = Path(__file__).resolve().parent.parent / "datasets" / "uci"


@pytest.fixture
def announce(capsys):
    """Emit one PASS/FAIL/SKIP line per criterion, visible despite capture."""

    def _report(status: str, label: str, detail: str = "") -> None:
        line = f"{status:4s} {label}"
        if detail:
            line += f": {detail}"
        with capsys.disabled():
            print(line, flush=True)

    return _report


def _check(announce, label: str, ok: bool, detail: str) -> None:
    announce("PASS" if ok else "FAIL", label, detail)
    assert ok, f"{label}: {detail}"


# ---------------------------------------------------------------------------
# 1. Golden reproduction: the four worked examples, exact modulo ab renaming
# ---------------------------------------------------------------------------


def test_criterion_1_golden_reproduction(announce):
    expected_counts = {
        "penguins-dont-fly": 2,
        "noisy-flier-enumerated": 3,
        "nested-exceptions": 5,
        "play-tennis-numeric": 4,
    }
    t0 = time.perf_counter()
    problems = []
    for case in CASES:
        if case.name not in expected_counts:
            continue
        learned = case.run()
        ok, detail = case.check()
        if not ok:
            problems.append(f"{case.name}: {detail}")
        elif len(learned.clauses) != expected_counts[case.name]:
            problems.append(
                f"{case.name}: {len(learned.clauses)} clauses, "
                f"want {expected_counts[case.name]}"
            )
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        problems.append(f"too slow: {elapsed:.2f}s >= 1s")
    _check(
        announce,
        "golden-reproduction",
        not problems,
        "; ".join(problems) or f"4 cases exact in {elapsed:.2f}s",
    )


# ---------------------------------------------------------------------------
# 2. Negative golden: no redundant literals over unrelated predicates
# ---------------------------------------------------------------------------


def test_criterion_2_no_redundant_negations(announce):
    case = next(c for c in CASES if c.name == "no-redundant-negations")
    t0 = time.perf_counter()
    learned = case.run()
    elapsed = time.perf_counter() - t0
    used = {
        lit.atom.pred
        for clause in learned.clauses
        for lit in clause.body
        if isinstance(lit, (Pos, Neg))
    }
    leaked = used & set(case.forbidden)
    ok = not leaked and elapsed < 1.0
    _check(
        announce,
        "no-redundant-negations",
        ok,
        f"leaked {sorted(leaked)}" if leaked else f"clean in {elapsed:.2f}s",
    )


# ---------------------------------------------------------------------------
# 3. Theorem suite: soundness, completeness, termination, stratified output
# ---------------------------------------------------------------------------


def test_criterion_3_training_theorems(announce):
    rng = Random(101)
    t0 = time.perf_counter()
    failures = []
    for i in range(200):
        numeric = i % 2 == 1
        b, es, _ = oracles.random_learn_instance(rng, numeric=numeric)
        try:
            h = foldr(b, es) if numeric else fold(b, es)
        except Exception as exc:
            failures.append(f"#{i}: raised {type(exc).__name__}: {exc}")
            continue
        if covers(h, es.positives, b) != list(es.positives):
            failures.append(f"#{i}: incomplete")
        elif covers(h, es.negatives, b) != []:
            failures.append(f"#{i}: unsound")
        else:
            try:
                stratify(Program(h.clauses))
            except Exception as exc:
                failures.append(f"#{i}: output not stratified: {exc}")
        if failures:
            break
    elapsed = time.perf_counter() - t0
    if elapsed >= 60:
        failures.append(f"too slow: {elapsed:.1f}s >= 60s")
    _check(
        announce,
        "training-theorems",
        not failures,
        "; ".join(failures) or f"200 instances in {elapsed:.1f}s",
    )


# ---------------------------------------------------------------------------
# 4. Engine equivalence with the brute-force reduct oracle
# ---------------------------------------------------------------------------


def test_criterion_4_engine_oracle(announce):
    rng = Random(202)
    t0 = time.perf_counter()
    failures = []
    for i in range(100):
        program = oracles.random_stratified_program(rng)
        models = oracles.brute_force_stable_models(program)
        if len(models) != 1:
            failures.append(f"#{i}: {len(models)} stable models")
            break
        engine = oracles.stable_model_keys(stable_model(program))
        if sorted(engine) != models[0]:
            failures.append(f"#{i}: engine disagrees with oracle")
            break
    elapsed = time.perf_counter() - t0
    if elapsed >= 60:
        failures.append(f"too slow: {elapsed:.1f}s >= 60s")
    _check(
        announce,
        "engine-oracle-equivalence",
        not failures,
        "; ".join(failures) or f"100 programs in {elapsed:.1f}s",
    )


# ---------------------------------------------------------------------------
# 5. Numeric split selection equals exhaustive scoring
# ---------------------------------------------------------------------------


def test_criterion_5_numeric_split_oracle(announce):
    rng = Random(303)
    t0 = time.perf_counter()
    failures = []
    checked = 0
    while checked < 100:
        subjects, values, pos, neg = oracles.random_split_instance(rng)
        if not pos or not neg:
            continue
        checked += 1
        clauses = [
            Clause(Atom(f, (Const(s), Num(v))), ())
            for f, table in values.items()
            for s, v in table.items()
        ]
        clauses += [Clause(Atom("dom", (Const(s),)), ()) for s in subjects]
        es = ExampleSet(
            tuple(Atom("goal", (Const(s),)) for s in pos),
            tuple(Atom("goal", (Const(s),)) for s in neg),
        )
        ctx = foldr_context(Program(tuple(clauses)), es)
        start = parse_clause("goal(X) :- true.")
        refined, gain = test_numeric(ctx, start, es.positives, es.negatives)
        expect = oracles.exhaustive_numeric_choice(
            values, pos, neg, len(pos), len(neg)
        )
        if expect is None:
            if refined != start or gain != 0.0:
                failures.append(f"#{checked}: found a split where none scores")
                break
            continue
        cmp = next((l for l in refined.body if isinstance(l, Cmp)), None)
        feat = next(
            (
                l.atom.pred
                for l in refined.body
                if isinstance(l, Pos) and cmp is not None and l.atom.args[-1] == cmp.var
            ),
            None,
        )
        got = (feat, cmp.op if cmp else None, cmp.value if cmp else None)
        want = (expect.feature, expect.op, expect.threshold)
        if got != want or not math.isclose(gain, expect.score, abs_tol=1e-9):
            failures.append(f"#{checked}: got {got} gain {gain}, want {want} gain {expect.score}")
            break
    elapsed = time.perf_counter() - t0
    if elapsed >= 30:
        failures.append(f"too slow: {elapsed:.1f}s >= 30s")
    _check(
        announce,
        "numeric-split-oracle",
        not failures,
        "; ".join(failures) or f"100 instances in {elapsed:.1f}s",
    )


# ---------------------------------------------------------------------------
# 6. Tabular benchmark reproduction (file-gated drop-ins except iris)
# ---------------------------------------------------------------------------


def _load_uci(name: str):
    csv_path = UCI / f"{name}.csv"
    schema_path = UCI / f"{name}.schema"
    schema = load_schema(schema_path) if schema_path.exists() else None
    return load_csv(csv_path, schema=schema)


def _uci_crossval(name: str, learner: str):
    ds = _load_uci(name)
    if learner == "fold":
        run = lambda b, es: fold(b, es)
    else:
        run = lambda b, es: foldr(b, es)
    return crossval(ds, run, folds=10, seed=0)


def _gate_uci(announce, name: str, learner: str, check, *, budget: float | None = None):
    label = f"uci-{name}"
    if not (UCI / f"{name}.csv").exists():
        announce(
            "SKIP",
            label,
            f"datasets/uci/{name}.csv not present; see datasets/uci/README.md",
        )
        pytest.skip(f"{name}.csv not present")
    report = _uci_crossval(name, learner)
    problem = check(report)
    if budget is not None and report.seconds >= budget:
        problem = problem or f"too slow: {report.seconds:.1f}s >= {budget:.0f}s"
    _check(
        announce,
        label,
        problem is None,
        problem
        or f"mean acc {report.mean_acc:.4f} (std {report.std_acc:.4f}) in {report.seconds:.1f}s",
    )


def _at_least(bound: float):
    def check(report):
        if report.mean_acc < bound:
            return f"mean acc {report.mean_acc:.4f} < {bound:.2f}"
        return None

    return check


def _exactly_perfect(report):
    if report.mean_acc != 1.0:
        return f"mean acc {report.mean_acc:.4f} != 1.0"
    return None


def test_criterion_6_iris(announce):
    _gate_uci(announce, "iris", "foldr", _at_least(0.90))


def test_criterion_6_mushroom(announce):
    _gate_uci(announce, "mushroom", "fold", _exactly_perfect, budget=300.0)


def test_criterion_6_acute1(announce):
    _gate_uci(announce, "acute1", "foldr", _exactly_perfect)


def test_criterion_6_acute2(announce):
    _gate_uci(announce, "acute2", "foldr", _exactly_perfect)


def test_criterion_6_labor(announce):
    _gate_uci(announce, "labor", "foldr", _at_least(0.89))


def test_criterion_6_bridges(announce):
    _gate_uci(announce, "bridges", "foldr", _at_least(0.85))


def test_criterion_6_ecoli(announce):
    _gate_uci(announce, "ecoli", "foldr", _at_least(0.85))


@pytest.mark.parametrize("name", ["credit_au", "credit_j", "credit_g"])
def test_criterion_6_credit_ungated(announce, name):
    # Reported for information only: the preprocessing for these three is not
    # pinned down, so no accuracy bound is enforced.
    label = f"uci-{name}"
    if not (UCI / f"{name}.csv").exists():
        announce("SKIP", label, f"datasets/uci/{name}.csv not present (not gated)")
        pytest.skip(f"{name}.csv not present")
    report = _uci_crossval(name, "foldr")
    announce(
        "PASS",
        label,
        f"mean acc {report.mean_acc:.4f} (std {report.std_acc:.4f}); not gated",
    )


# ---------------------------------------------------------------------------
# 7. Information-gain unit values
# ---------------------------------------------------------------------------


def test_criterion_7_information_gain_values(announce):
    problems = []
    got = information_gain(2, 2, 2, 1, 2)
    if abs(got - 0.8301) > 1e-4:
        problems.append(f"IG(2,2,2,1,2) = {got!r}, want 0.8301 +- 1e-4")
    if information_gain(2, 2, 0, 0, 0) != 0.0:
        problems.append("degenerate t=0 case not exactly 0")
    if information_gain(3, 1, 0, 2, 0) != 0.0:
        problems.append("degenerate p1=0 case not exactly 0")
    for k, m in ((1, 1), (3, 2), (5, 0)):
        if information_gain(k, m, k, m, k) != 0.0:
            problems.append(f"no-op literal case k={k},m={m} not exactly 0")
    _check(
        announce,
        "information-gain-units",
        not problems,
        "; ".join(problems) or "hand value 0.8301 and all degenerate zeros exact",
    )


# ---------------------------------------------------------------------------
# 8. Structural claim for the mushroom model trained on all rows
# ---------------------------------------------------------------------------


def test_criterion_8_mushroom_shape(announce):
    label = "mushroom-model-shape"
    if not (UCI / "mushroom.csv").exists():
        announce(
            "SKIP",
            label,
            "datasets/uci/mushroom.csv not present; see datasets/uci/README.md",
        )
        pytest.skip("mushroom.csv not present")
    ds = _load_uci("mushroom")
    b, es = propositionalize(ds)
    model = fold(b, es)
    goal = es.goal
    defaults = [c for c in model.clauses if c.head.pred == goal]
    abnormals = [c for c in model.clauses if c.head.pred != goal]
    lengths = sorted(len(c.body) for c in defaults)
    ok = len(defaults) == 4 and lengths == [1, 1, 1, 2] and len(abnormals) >= 1
    _check(
        announce,
        label,
        ok,
        f"default bodies {lengths}, {len(abnormals)} exception clauses",
    )
