from __future__ import annotations

import textwrap
from random import Random

import pytest

import oracles
from foldlp import (
    Atom,
    Clause,
    Const,
    LearnContext,
    LearnerError,
    Neg,
    Pos,
    Program,
    Var,
    covers,
    cwa_negatives,
    fold,
    parse_clause,
    parse_program,
    program_to_text,
    stratify,
)
from foldlp.learner import NonTerminationError


def _goal(*names):
    return tuple(Atom("fly", (Const(n),)) for n in names)


def _learn(background_src, positives, negatives=None):
    b = parse_program(background_src)
    pos = _goal(*positives)
    neg = _goal(*negatives) if negatives is not None else None
    return b, fold(b, pos, neg)


def _text(program):
    return program_to_text(program).strip()


BIRDS = """
    bird(X) :- penguin(X).
    bird(tweety). bird(et).
    cat(kitty). penguin(polly).
"""


# ---------------------------------------------------------------------------
# Frozen end-to-end outputs for the worked bird examples
# ---------------------------------------------------------------------------


def test_penguin_default_and_exception():
    _, h = _learn(BIRDS, ("tweety", "et"))
    assert _text(h) == textwrap.dedent(
        """\
        fly(X) :- bird(X), not ab0(X).
        ab0(X) :- penguin(X)."""
    )


def test_noise_positive_falls_back_to_enumeration():
    _, h = _learn(BIRDS, ("tweety", "jet", "et"))
    assert _text(h) == textwrap.dedent(
        """\
        fly(X) :- bird(X), not ab0(X).
        fly(X) :- member(X,[jet]).
        ab0(X) :- penguin(X)."""
    )


def test_two_defaults_with_separate_exceptions():
    _, h = _learn(
        """
        bird(X) :- penguin(X).
        penguin(X) :- superpenguin(X).
        bird(a). bird(b). penguin(c). penguin(d).
        superpenguin(e). superpenguin(f). cat(c1).
        plane(g). plane(h). plane(k). plane(m).
        damaged(k). damaged(m).
        """,
        ("a", "b", "e", "f", "g", "h"),
    )
    assert _text(h) == textwrap.dedent(
        """\
        fly(X) :- superpenguin(X).
        fly(X) :- bird(X), not ab0(X).
        fly(X) :- plane(X), not ab1(X).
        ab0(X) :- penguin(X).
        ab1(X) :- damaged(X)."""
    )


def test_no_redundant_negations_in_exceptions():
    _, h = _learn(
        """
        bird(X) :- penguin(X).
        bird(tweety). bird(et).
        bear(teddy). crippled(et).
        cat(kitty). penguin(polly).
        """,
        ("tweety",),
    )
    text = _text(h)
    assert text == textwrap.dedent(
        """\
        fly(X) :- bird(X), not ab0(X).
        ab0(X) :- penguin(X).
        ab0(X) :- crippled(X)."""
    )
    assert "bear" not in text and "cat" not in text


def test_learner_is_deterministic():
    runs = {_text(_learn(BIRDS, ("tweety", "et"))[1]) for _ in range(5)}
    assert len(runs) == 1


# ---------------------------------------------------------------------------
# Stepwise refinement API
# ---------------------------------------------------------------------------


def _birds_ctx():
    b = parse_program(BIRDS)
    pos, neg = _goal("tweety", "et"), _goal("polly", "kitty")
    from foldlp import ExampleSet

    return LearnContext(b, ExampleSet(pos, neg)), pos, neg


START = parse_clause("fly(X) :- true.")


def test_add_best_literal_picks_bird():
    ctx, pos, neg = _birds_ctx()
    refined, score = ctx.add_best_literal(START, pos, neg)
    assert refined.body == (Pos(Atom("bird", (Var("X"),))),)
    assert score > 0


def test_add_best_literal_no_negatives_returns_unchanged():
    ctx, pos, _ = _birds_ctx()
    refined, score = ctx.add_best_literal(START, pos, ())
    assert refined == START and score == 0.0


def test_add_best_literal_skips_predicates_already_in_body():
    ctx, pos, neg = _birds_ctx()
    once, _ = ctx.add_best_literal(START, pos, neg)
    twice, score = ctx.add_best_literal(once, pos, neg)
    body_preds = [l.atom.pred for l in twice.body if isinstance(l, Pos)]
    assert body_preds.count("bird") == 1


def test_specialize_produces_guarded_default():
    ctx, pos, neg = _birds_ctx()
    clause = ctx.specialize(START, pos, neg)
    assert clause == parse_clause("fly(X) :- bird(X), not ab0(X).")
    assert ctx.abnormal_clauses() == (parse_clause("ab0(X) :- penguin(X)."),)


def test_exception_learns_from_swapped_sets():
    ctx, pos, neg = _birds_ctx()
    clause = parse_clause("fly(X) :- bird(X).")
    # Swapped: the exception's positives are the covered negatives.
    refined = ctx.exception(clause, _goal("polly"), _goal("tweety", "et"))
    assert refined is not None
    assert refined == parse_clause("fly(X) :- bird(X), not ab0(X).")
    assert ctx.abnormal_clauses() == (parse_clause("ab0(X) :- penguin(X)."),)


def test_exception_refuses_unseparable_sets():
    ctx, pos, neg = _birds_ctx()
    clause = parse_clause("fly(X) :- bird(X).")
    # No predicate separates tweety from tweety+et: no exception exists.
    assert ctx.exception(clause, _goal("tweety"), _goal("tweety", "et")) is None


def test_enumerate_fallback_emits_member_clause():
    ctx, *_ = _birds_ctx()
    clause = ctx.enumerate_fallback(START, _goal("tweety", "et"))
    assert clause == parse_clause("fly(X) :- member(X,[tweety,et]).")


def test_existing_ab_names_are_not_reused():
    b = parse_program(BIRDS + " ab0(kitty). ab3(kitty).")
    h = fold(b, _goal("tweety", "et"))
    learned_preds = {c.head.pred for c in h.clauses}
    assert "ab4" in learned_preds and "ab0" not in learned_preds


# ---------------------------------------------------------------------------
# Categorical selection matches the naive exhaustive oracle
# ---------------------------------------------------------------------------


def test_selection_matches_exhaustive_oracle_on_random_instances():
    rng = Random(11)
    from foldlp import ExampleSet

    for _ in range(40):
        b, examples, _ = oracles.random_learn_instance(rng, numeric=False)
        ctx = LearnContext(b, examples)
        refined, score = ctx.add_best_literal(
            Clause(Atom("goal", (Var("X"),)), ()),
            examples.positives,
            examples.negatives,
        )
        extensions: dict = {}
        order: list = []
        for c in b.clauses:
            extensions.setdefault(c.head.pred, set()).add(c.head.args[0].name)
            if c.head.pred not in order:
                order.append(c.head.pred)
        expect = oracles.exhaustive_categorical_choice(
            extensions,
            order,
            [a.args[0].name for a in examples.positives],
            [a.args[0].name for a in examples.negatives],
        )
        if expect is None:
            assert score == 0.0 and refined.body == ()
        else:
            assert refined.body[-1].atom.pred == expect[0]
            assert score == pytest.approx(expect[1], abs=1e-9)


# ---------------------------------------------------------------------------
# Training-set soundness / completeness / termination, checked via the engine
# ---------------------------------------------------------------------------


def _assert_sound_complete(background, examples, hypothesis):
    assert covers(hypothesis, examples.positives, background) == list(
        examples.positives
    )
    assert covers(hypothesis, examples.negatives, background) == []
    assert stratify(Program(hypothesis.clauses)) is not None


def test_theorems_on_random_categorical_instances():
    rng = Random(23)
    for _ in range(30):
        b, examples, _ = oracles.random_learn_instance(rng, numeric=False)
        h = fold(b, examples)
        _assert_sound_complete(b, examples, h)


def test_pure_noise_degenerates_to_enumeration():
    # No feature signal at all: the learner must still terminate and emit an
    # exact cover, which can only be membership clauses.
    b = parse_program(" ".join(f"thing(s{i})." for i in range(8)))
    pos = _goal("s0", "s3", "s5")
    neg = _goal("s1", "s2", "s4", "s6", "s7")
    h = fold(b, pos, neg)
    _assert_sound_complete(b, _ExampleSet(pos, neg), h)
    assert any("member" in str(c) for c in h.clauses)


def test_no_negatives_yields_unguarded_rule():
    b = parse_program(BIRDS)
    h = fold(b, _goal("tweety", "et"), ())
    assert _text(h) == "fly(X) :- true."


def test_conjunction_of_two_features():
    facts = []
    labels = {}
    for i in range(12):
        s = f"s{i}"
        a, bb = i % 2 == 0, i % 3 == 0
        if a:
            facts.append(f"f_a({s}).")
        if bb:
            facts.append(f"f_b({s}).")
        labels[s] = a and bb
    b = parse_program(" ".join(facts) + " " + " ".join(f"dom(s{i})." for i in range(12)))
    pos = _goal(*[s for s, v in labels.items() if v])
    neg = _goal(*[s for s, v in labels.items() if not v])
    h = fold(b, pos, neg)
    _assert_sound_complete(b, _ExampleSet(pos, neg), h)
    default = h.clauses[0]
    preds = {l.atom.pred for l in default.body if isinstance(l, Pos)}
    assert preds == {"f_a", "f_b"}


def test_goal_predicate_excluded_from_bias_by_default():
    b = parse_program(BIRDS)
    h = fold(b, _goal("tweety", "et"))
    for c in h.clauses:
        assert all(
            l.atom.pred != "fly"
            for l in c.body
            if isinstance(l, (Pos, Neg))
        )


def test_requires_at_least_one_positive():
    with pytest.raises(LearnerError):
        fold(parse_program(BIRDS), (), _goal("polly"))


def test_termination_assertion_never_fires_on_adversarial_labels():
    rng = Random(31)
    for _ in range(20):
        b, examples, _ = oracles.random_learn_instance(rng, numeric=False)
        try:
            fold(b, examples)
        except NonTerminationError as exc:  # pragma: no cover
            pytest.fail(f"termination safeguard fired: {exc}")


def _ExampleSet(pos, neg):
    from foldlp import ExampleSet

    return ExampleSet(tuple(pos), tuple(neg))
