"""Built-in worked examples with their expected output programs.

These are small knowledge bases whose learned programs are known exactly;
they guard the learner against regressions.  Comparison is on clause
*sets*: clause order never matters, literal order within a body does not
matter, and invented ``abN`` predicates are matched up to a bijective
renaming (two runs that pick different indices for the same exception
structure are the same theory).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import permutations

from .data import loads_csv, propositionalize
from .engine import cwa_negatives
from .learner import fold
from .logic import (
    Atom,
    Clause,
    Const,
    Neg,
    Pos,
    Program,
    atom_to_text,
    clause_to_text,
    parse_program,
)
from .numeric import foldr

_AB_RE = re.compile(r"^ab\d+$")


def _program_preds(p: Program) -> set[str]:
    preds = set()
    for c in p:
        preds.add(c.head.pred)
        for lit in c.body:
            if isinstance(lit, (Pos, Neg)):
                preds.add(lit.atom.pred)
    return preds


def _rename_atom(a: Atom, mapping: dict[str, str]) -> Atom:
    return Atom(mapping.get(a.pred, a.pred), a.args)


def _clause_key(c: Clause, mapping: dict[str, str]):
    head = atom_to_text(_rename_atom(c.head, mapping))
    body = []
    for lit in c.body:
        if isinstance(lit, Pos):
            body.append("+" + atom_to_text(_rename_atom(lit.atom, mapping)))
        elif isinstance(lit, Neg):
            body.append("-" + atom_to_text(_rename_atom(lit.atom, mapping)))
        else:
            body.append(f"{lit.var.name} {lit.op} {lit.value!r}")
    return head, frozenset(body), len(body)


def same_theory(actual: Program, expected: Program) -> bool:
    """Clause-set equality modulo a bijection between invented ab names."""
    a_abs = sorted(p for p in _program_preds(actual) if _AB_RE.match(p))
    e_abs = sorted(p for p in _program_preds(expected) if _AB_RE.match(p))
    if len(a_abs) != len(e_abs):
        return False
    want = Counter(_clause_key(c, {}) for c in expected)
    for perm in permutations(e_abs):
        mapping = dict(zip(a_abs, perm))
        if Counter(_clause_key(c, mapping) for c in actual) == want:
            return True
    return False


@dataclass(frozen=True)
class GoldenCase:
    name: str
    expected: str
    background: str | None = None
    positives: tuple[str, ...] = ()
    goal: str = "fly"
    csv: str | None = None
    compat_ge: bool = False
    learner: str = "fold"
    forbidden: tuple[str, ...] = ()

    def run(self) -> Program:
        if self.csv is not None:
            ds = loads_csv(self.csv, name=self.name)
            background, examples = propositionalize(ds)
            return foldr(background, examples, compat_ge=self.compat_ge)
        background = parse_program(self.background or "")
        pos = tuple(Atom(self.goal, (Const(s),)) for s in self.positives)
        neg = cwa_negatives(self.goal, background, pos)
        if self.learner == "foldr":
            return foldr(background, pos, neg, compat_ge=self.compat_ge)
        return fold(background, pos, neg)

    def check(self) -> tuple[bool, str]:
        program = self.run()
        expected = parse_program(self.expected)
        if not same_theory(program, expected):
            return False, (
                "learned program differs from expected.\n--- learned ---\n"
                + "\n".join(clause_to_text(c) for c in program)
                + "\n--- expected ---\n"
                + "\n".join(clause_to_text(c) for c in expected)
            )
        bad = self.forbidden and sorted(_program_preds(program) & set(self.forbidden))
        if bad:
            return False, f"program mentions forbidden predicates: {bad}"
        return True, f"{len(program.clauses)} clauses as expected"


PLAY_TENNIS_CSV = """\
outlook:val,temperature:num,humidity:num,windy:bool,play:label=yes
sunny,75,70,true,yes
sunny,80,90,true,no
sunny,85,85,false,no
sunny,72,95,false,no
sunny,69,70,false,yes
overcast,72,90,true,yes
overcast,83,78,false,yes
overcast,83,65,true,yes
overcast,81,75,false,yes
rainy,71,80,true,no
rainy,65,70,true,no
rainy,75,80,false,yes
rainy,68,80,false,yes
rainy,70,96,false,yes
"""


CASES: tuple[GoldenCase, ...] = (
    GoldenCase(
        name="penguins-dont-fly",
        background="""
            bird(X) :- penguin(X).
            bird(tweety). bird(et).
            cat(kitty). penguin(polly).
        """,
        positives=("tweety", "et"),
        expected="""
            fly(X) :- bird(X), not ab0(X).
            ab0(X) :- penguin(X).
        """,
    ),
    GoldenCase(
        name="noisy-flier-enumerated",
        background="""
            bird(X) :- penguin(X).
            bird(tweety). bird(et).
            cat(kitty). penguin(polly).
        """,
        positives=("tweety", "jet", "et"),
        expected="""
            fly(X) :- bird(X), not ab0(X).
            fly(X) :- member(X,[jet]).
            ab0(X) :- penguin(X).
        """,
    ),
    GoldenCase(
        name="nested-exceptions",
        background="""
            bird(X) :- penguin(X).
            penguin(X) :- superpenguin(X).
            bird(a). bird(b). penguin(c). penguin(d).
            superpenguin(e). superpenguin(f). cat(c1).
            plane(g). plane(h). plane(k). plane(m).
            damaged(k). damaged(m).
        """,
        positives=("a", "b", "e", "f", "g", "h"),
        expected="""
            fly(X) :- plane(X), not ab0(X).
            fly(X) :- bird(X), not ab1(X).
            fly(X) :- superpenguin(X).
            ab0(X) :- damaged(X).
            ab1(X) :- penguin(X).
        """,
    ),
    GoldenCase(
        name="no-redundant-negations",
        background="""
            bird(X) :- penguin(X).
            bird(tweety). bird(et).
            bear(teddy). crippled(et).
            cat(kitty). penguin(polly).
        """,
        positives=("tweety",),
        expected="""
            fly(X) :- bird(X), not ab0(X).
            ab0(X) :- penguin(X).
            ab0(X) :- crippled(X).
        """,
        forbidden=("bear", "cat"),
    ),
    GoldenCase(
        name="play-tennis-numeric",
        csv=PLAY_TENNIS_CSV,
        compat_ge=True,
        expected="""
            play(X) :- overcast(X).
            play(X) :- temperature(X,A), A =< 75.0, not ab0(X).
            ab0(X) :- windy(X), rainy(X).
            ab0(X) :- humidity(X,A), A >= 95.0, sunny(X).
        """,
    ),
)


def run_all() -> list[tuple[str, bool, str]]:
    out = []
    for case in CASES:
        try:
            ok, detail = case.check()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        out.append((case.name, ok, detail))
    return out
