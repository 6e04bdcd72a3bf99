"""AST, parser, printer and stratifier for normal logic programs.

The clause language is function-free Prolog with negation as failure,
numeric comparison literals, and constant lists (which only make sense as
the second argument of the ``member/2`` builtin):

    program  :=  { clause }
    clause   :=  atom "."  |  atom ":-" body "."
    body     :=  literal { "," literal }
    literal  :=  atom  |  "not" atom  |  Var cmpop number
    cmpop    :=  "=<" | "<" | ">=" | ">"
    term     :=  constant | Var | number | "[" [ constant { "," constant } ] "]"

``%`` starts a comment that runs to end of line.  ``true/0`` and
``member/2`` are builtins and cannot be redefined.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union


class FoldlpError(Exception):
    """Base class for every error this package raises on purpose."""


class LogicError(FoldlpError):
    pass


class ParseError(LogicError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class NotStratifiedError(LogicError):
    """Raised when a program has a cycle through negation."""

    def __init__(self, cycle: tuple[str, ...], message: str):
        super().__init__(message)
        self.cycle = cycle


# --------------------------------------------------------------------------
# Terms and formulas.  Everything is a frozen dataclass so clauses can live
# in sets and serve as dict keys.

@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class ConstList:
    items: tuple[Const, ...]


Term = Union[Const, Var, Num, ConstList]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def is_ground(self) -> bool:
        return not any(isinstance(a, Var) for a in self.args)


@dataclass(frozen=True)
class Pos:
    atom: Atom


@dataclass(frozen=True)
class Neg:
    atom: Atom


CMP_OPS = ("=<", "<", ">=", ">")


@dataclass(frozen=True)
class Cmp:
    """A comparison ``Var op number`` appearing in a clause body."""

    var: Var
    op: str
    value: float

    def holds(self, v: float) -> bool:
        if self.op == "=<":
            return v <= self.value
        if self.op == "<":
            return v < self.value
        if self.op == ">=":
            return v >= self.value
        if self.op == ">":
            return v > self.value
        raise LogicError(f"unknown comparison operator {self.op!r}")


Literal = Union[Pos, Neg, Cmp]

TRUE = Atom("true")
TRUE_LIT = Pos(TRUE)

BUILTINS: Mapping[str, int] = {"true": 0, "member": 2}


@dataclass(frozen=True)
class Clause:
    head: Atom
    body: tuple[Literal, ...] = ()

    def is_fact(self) -> bool:
        return all(lit == TRUE_LIT for lit in self.body)


@dataclass(frozen=True)
class Program:
    clauses: tuple[Clause, ...]
    # Stratum per predicate name; filled in by stratify().  Derived metadata,
    # so it does not participate in equality.
    strata: Mapping[str, int] | None = field(default=None, compare=False)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)


def make_program(clauses: Iterable[Clause]) -> Program:
    return Program(tuple(clauses))


# --------------------------------------------------------------------------
# Printing.  print/parse round-trip on ASTs; numbers always carry a decimal
# point so they cannot be mistaken for constants.

def term_to_text(t: Term) -> str:
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Num):
        return repr(t.value)
    if isinstance(t, ConstList):
        return "[" + ",".join(c.name for c in t.items) + "]"
    raise LogicError(f"not a term: {t!r}")


def atom_to_text(a: Atom) -> str:
    if not a.args:
        return a.pred
    return a.pred + "(" + ",".join(term_to_text(t) for t in a.args) + ")"


def literal_to_text(lit: Literal) -> str:
    if isinstance(lit, Pos):
        return atom_to_text(lit.atom)
    if isinstance(lit, Neg):
        return "not " + atom_to_text(lit.atom)
    if isinstance(lit, Cmp):
        return f"{lit.var.name} {lit.op} {repr(lit.value)}"
    raise LogicError(f"not a literal: {lit!r}")


def clause_to_text(c: Clause) -> str:
    if not c.body:
        return atom_to_text(c.head) + "."
    return atom_to_text(c.head) + " :- " + ", ".join(literal_to_text(l) for l in c.body) + "."


def program_to_text(p: Program) -> str:
    return "\n".join(clause_to_text(c) for c in p.clauses) + ("\n" if p.clauses else "")


# --------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>%[^\n]*)
    | (?P<number>-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)
    | (?P<name>[a-z][A-Za-z0-9_]*)
    | (?P<var>[A-Z_][A-Za-z0-9_]*)
    | (?P<neck>:-)
    | (?P<op>=<|>=|<|>)
    | (?P<punct>[()\[\],.])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup or ""
        tok_text = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, tok_text, line, m.start() - line_start + 1))
        nl = tok_text.count("\n")
        if nl:
            line += nl
            line_start = m.start() + tok_text.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


# --------------------------------------------------------------------------
# Parser: plain recursive descent over the token list.

class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.arities: dict[str, tuple[int, int, int]] = {}  # pred -> (arity, line, col)

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def _advance(self) -> _Token:
        tok = self.cur
        self.i += 1
        return tok

    def _expect(self, kind: str, text: str | None = None) -> _Token:
        tok = self.cur
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise ParseError(f"expected {want!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return self._advance()

    def _note_arity(self, atom: Atom, tok: _Token) -> None:
        if atom.pred in BUILTINS:
            if atom.arity != BUILTINS[atom.pred]:
                raise ParseError(
                    f"builtin {atom.pred}/{BUILTINS[atom.pred]} used with arity {atom.arity}",
                    tok.line, tok.col,
                )
            return
        seen = self.arities.get(atom.pred)
        if seen is None:
            self.arities[atom.pred] = (atom.arity, tok.line, tok.col)
        elif seen[0] != atom.arity:
            raise ParseError(
                f"predicate arity conflict: {atom.pred}/{atom.arity} here, "
                f"{atom.pred}/{seen[0]} at line {seen[1]}",
                tok.line, tok.col,
            )

    def parse_term(self) -> Term:
        tok = self.cur
        if tok.kind == "name":
            self._advance()
            return Const(tok.text)
        if tok.kind == "var":
            self._advance()
            return Var(tok.text)
        if tok.kind == "number":
            self._advance()
            return Num(float(tok.text))
        if tok.kind == "punct" and tok.text == "[":
            self._advance()
            items: list[Const] = []
            if not (self.cur.kind == "punct" and self.cur.text == "]"):
                while True:
                    el = self._expect("name")
                    items.append(Const(el.text))
                    if self.cur.kind == "punct" and self.cur.text == ",":
                        self._advance()
                        continue
                    break
            self._expect("punct", "]")
            return ConstList(tuple(items))
        raise ParseError(f"expected a term, found {tok.text or 'end of input'!r}", tok.line, tok.col)

    def parse_atom(self) -> Atom:
        tok = self._expect("name")
        args: list[Term] = []
        if self.cur.kind == "punct" and self.cur.text == "(":
            self._advance()
            while True:
                args.append(self.parse_term())
                if self.cur.kind == "punct" and self.cur.text == ",":
                    self._advance()
                    continue
                break
            self._expect("punct", ")")
        atom = Atom(tok.text, tuple(args))
        self._note_arity(atom, tok)
        return atom

    def parse_literal(self) -> Literal:
        tok = self.cur
        if tok.kind == "var":
            var = Var(self._advance().text)
            op_tok = self.cur
            if op_tok.kind != "op":
                raise ParseError(
                    f"expected a comparison operator after {var.name}, found {op_tok.text!r}",
                    op_tok.line, op_tok.col,
                )
            self._advance()
            num_tok = self._expect("number")
            return Cmp(var, op_tok.text, float(num_tok.text))
        if tok.kind == "name" and tok.text == "not":
            # 'not' could in principle be a predicate, but treating it as one
            # would make the grammar ambiguous, so it is reserved.
            nxt = self.tokens[self.i + 1]
            if nxt.kind == "name":
                self._advance()
                return Neg(self.parse_atom())
            raise ParseError("expected an atom after 'not'", tok.line, tok.col)
        return Pos(self.parse_atom())

    def parse_clause(self) -> Clause:
        head_tok = self.cur
        head = self.parse_atom()
        if head.pred in BUILTINS:
            raise ParseError(f"cannot redefine builtin {head.pred!r}", head_tok.line, head_tok.col)
        if head.pred == "not":
            raise ParseError("'not' is reserved", head_tok.line, head_tok.col)
        for arg in head.args:
            if isinstance(arg, ConstList):
                raise ParseError("list terms may not appear in clause heads", head_tok.line, head_tok.col)
        body: list[Literal] = []
        if self.cur.kind == "neck":
            self._advance()
            while True:
                body.append(self.parse_literal())
                if self.cur.kind == "punct" and self.cur.text == ",":
                    self._advance()
                    continue
                break
        self._expect("punct", ".")
        return Clause(head, tuple(body))

    def parse_program(self) -> Program:
        clauses: list[Clause] = []
        while self.cur.kind != "eof":
            clauses.append(self.parse_clause())
        return Program(tuple(clauses))


def parse_program(text: str) -> Program:
    return _Parser(text).parse_program()


def parse_clause(text: str) -> Clause:
    p = _Parser(text)
    clause = p.parse_clause()
    if p.cur.kind != "eof":
        raise ParseError(f"trailing input after clause: {p.cur.text!r}", p.cur.line, p.cur.col)
    return clause


def check_arities(program: Program) -> None:
    """Arity-conflict check for programs built in code rather than parsed."""
    seen: dict[str, int] = {}
    for c in program:
        for atom in _clause_atoms(c):
            if atom.pred in BUILTINS:
                if atom.arity != BUILTINS[atom.pred]:
                    raise LogicError(f"builtin {atom.pred} used with arity {atom.arity}")
                continue
            prev = seen.setdefault(atom.pred, atom.arity)
            if prev != atom.arity:
                raise LogicError(f"predicate arity conflict: {atom.pred}/{atom.arity} vs /{prev}")
        if c.head.pred in BUILTINS:
            raise LogicError(f"cannot redefine builtin {c.head.pred!r}")


def _clause_atoms(c: Clause) -> Iterator[Atom]:
    yield c.head
    for lit in c.body:
        if isinstance(lit, (Pos, Neg)):
            yield lit.atom


# --------------------------------------------------------------------------
# Stratification.  A normal program is stratifiable iff its predicate
# dependency graph has no cycle through a negative edge.  Strata are
# computed as the least fixpoint of
#
#     stratum(h) >= stratum(b)        for positive body literals b
#     stratum(h) >= stratum(b) + 1    for negated body literals b
#
# which diverges exactly when such a cycle exists.

def stratify(program: Program) -> Program:
    preds: set[str] = set()
    edges: list[tuple[str, str, bool]] = []  # (head, body-pred, negated)
    for c in program:
        preds.add(c.head.pred)
        for lit in c.body:
            if isinstance(lit, Cmp):
                continue
            if isinstance(lit, (Pos, Neg)):
                p = lit.atom.pred
                if p in BUILTINS:
                    continue
                preds.add(p)
                edges.append((c.head.pred, p, isinstance(lit, Neg)))

    strata = {p: 0 for p in preds}
    limit = len(preds) + 1
    changed = True
    while changed:
        changed = False
        for head, bodyp, negated in edges:
            need = strata[bodyp] + (1 if negated else 0)
            if strata[head] < need:
                strata[head] = need
                if strata[head] > limit:
                    cycle = _find_negative_cycle(preds, edges)
                    pretty = " -> ".join(cycle)
                    raise NotStratifiedError(cycle, f"program is not stratifiable: cycle {pretty}")
                changed = True
    return Program(program.clauses, strata=strata)


def _find_negative_cycle(preds: set[str], edges: list[tuple[str, str, bool]]) -> tuple[str, ...]:
    # Head depends on body-pred, so walk head -> body edges.
    succs: dict[str, list[tuple[str, bool]]] = {p: [] for p in preds}
    for head, bodyp, negated in edges:
        succs[head].append((bodyp, negated))

    sccs = _tarjan(preds, succs)
    comp = {p: i for i, scc in enumerate(sccs) for p in scc}
    for head, bodyp, negated in edges:
        if negated and comp[head] == comp[bodyp]:
            # Close the cycle: path bodyp -> ... -> head inside the SCC.
            path = _path_within(bodyp, head, succs, {p for p in preds if comp[p] == comp[head]})
            labels = [head, f"not {bodyp}"]
            for prev, cur in zip(path, path[1:]):
                sign = any(s == cur and n for s, n in succs[prev])
                labels.append(("not " if sign else "") + cur)
            return tuple(labels)
    raise AssertionError("stratification diverged but no negative cycle found")


def _path_within(src: str, dst: str, succs: dict[str, list[tuple[str, bool]]], allowed: set[str]) -> list[str]:
    stack = [(src, [src])]
    seen = {src}
    while stack:
        node, path = stack.pop()
        if node == dst:
            return path
        for nxt, _ in succs[node]:
            if nxt in allowed and nxt not in seen:
                seen.add(nxt)
                stack.append((nxt, path + [nxt]))
    return [src] if src == dst else [src, dst]


def _tarjan(nodes: set[str], succs: dict[str, list[tuple[str, bool]]]) -> list[list[str]]:
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    sccs: list[list[str]] = []
    counter = 0

    # Iterative Tarjan; recursion depth could hit Python's limit on long chains.
    for root in sorted(nodes):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, ei = work[-1]
            if ei == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            edges_out = succs.get(node, [])
            while ei < len(edges_out):
                nxt = edges_out[ei][0]
                ei += 1
                if nxt not in index:
                    work[-1] = (node, ei)
                    work.append((nxt, 0))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                scc = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    scc.append(w)
                    if w == node:
                        break
                sccs.append(scc)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return sccs
