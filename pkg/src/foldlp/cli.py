"""Command line interface.

Exit codes: 0 success, 1 usage errors, 2 data errors (missing or malformed
input files), 3 learner/engine errors (including failing golden checks).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .data import (
    DataError,
    accuracy,
    classify,
    crossval,
    load_csv,
    load_model,
    load_schema,
    propositionalize,
    save_model,
)
from .engine import cwa_negatives
from .golden import run_all
from .learner import fold
from .logic import (
    FoldlpError,
    ParseError,
    Program,
    parse_program,
    program_to_text,
)
from .numeric import foldr

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_ENGINE = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; we reserve 2 for data errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", metavar="CSV", help="dataset in CSV form")
    p.add_argument("--schema", metavar="FILE", help="schema file declaring column kinds")
    p.add_argument("--positive-label", metavar="VALUE", help="label value treated as positive")
    p.add_argument("--drop-missing", action="store_true", help="skip rows with missing cells")


def _add_learner_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--learner", choices=("fold", "foldr"), default="foldr",
                   help="categorical-only fold, or foldr with numeric splits (default)")
    p.add_argument("--compat-ge-print", action="store_true",
                   help="print winning 'A > v' thresholds inclusively as 'A >= next-value'")
    p.add_argument("--allow-recursion", action="store_true",
                   help="let the goal predicate itself appear as a candidate literal")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="foldlp", description=__doc__)
    parser.add_argument("--version", action="version", version=f"foldlp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_learn = sub.add_parser("learn", help="induce a program from data")
    _add_data_flags(p_learn)
    p_learn.add_argument("--background", metavar="FILE", help="background knowledge program")
    p_learn.add_argument("--examples", metavar="FILE", help="positive example facts")
    p_learn.add_argument("--negatives", metavar="FILE",
                         help="negative example facts (default: closed-world from background)")
    p_learn.add_argument("--goal", metavar="PRED", help="target predicate (inferred when unique)")
    _add_learner_flags(p_learn)
    p_learn.add_argument("--output", metavar="FILE", help="also save the model here")

    p_eval = sub.add_parser("eval", help="score a saved model on a dataset")
    p_eval.add_argument("--model", metavar="FILE", required=True, help="saved model file")
    _add_data_flags(p_eval)

    p_cv = sub.add_parser("crossval", help="seeded k-fold cross-validation")
    _add_data_flags(p_cv)
    _add_learner_flags(p_cv)
    p_cv.add_argument("--folds", type=int, default=10)
    p_cv.add_argument("--seed", type=int, default=0)

    p_gold = sub.add_parser("golden", help="re-run the built-in worked examples")
    p_gold.add_argument("--list", action="store_true", help="only list the case names")
    return parser


def _load_dataset(args):
    if not args.data:
        raise DataError("--data is required here")
    schema = load_schema(args.schema) if args.schema else None
    return load_csv(
        args.data,
        schema=schema,
        positive_label=args.positive_label,
        drop_missing=args.drop_missing,
    )


def _learner_fn(args):
    if args.learner == "fold":
        def run(background, examples):
            return fold(background, examples, allow_recursion=args.allow_recursion)
    else:
        def run(background, examples):
            return foldr(
                background,
                examples,
                allow_recursion=args.allow_recursion,
                compat_ge=args.compat_ge_print,
            )
    return run


def _read_fact_atoms(path: str, goal: str | None):
    program = parse_program(Path(path).read_text())
    atoms = []
    for c in program:
        if not c.is_fact() or not c.head.is_ground():
            raise DataError(f"{path}: expected ground facts only, found {c.head.pred}")
        atoms.append(c.head)
    if not atoms:
        raise DataError(f"{path}: no example facts found")
    preds = {a.pred for a in atoms}
    if goal is None:
        if len(preds) != 1:
            raise DataError(f"{path}: several predicates {sorted(preds)}; pick one with --goal")
        return atoms, atoms[0].pred
    if preds - {goal}:
        raise DataError(f"{path}: facts for {sorted(preds - {goal})} do not match goal {goal!r}")
    return atoms, goal


def cmd_learn(args) -> int:
    t0 = time.perf_counter()
    if args.data and (args.background or args.examples):
        raise DataError("use either --data or --background/--examples, not both")
    if args.data:
        ds = _load_dataset(args)
        background, examples = propositionalize(ds)
        goal = examples.goal
        source = args.data
    elif args.background and args.examples:
        background = parse_program(Path(args.background).read_text())
        pos, goal = _read_fact_atoms(args.examples, args.goal)
        if args.negatives:
            neg, _ = _read_fact_atoms(args.negatives, goal)
        else:
            neg = cwa_negatives(goal, background, pos)
        from .engine import ExampleSet

        examples = ExampleSet(tuple(pos), tuple(neg))
        source = args.examples
    else:
        raise DataError("need --data, or both --background and --examples")

    model = _learner_fn(args)(background, examples)
    elapsed = time.perf_counter() - t0
    sys.stdout.write(program_to_text(model))
    print(f"% {len(model.clauses)} clauses in {elapsed:.3f}s", file=sys.stderr)
    if args.output:
        save_model(
            args.output,
            model,
            meta={
                "tool": f"foldlp {__version__}",
                "goal": goal,
                "learner": args.learner,
                "source": str(source),
            },
        )
    return EXIT_OK


def cmd_eval(args) -> int:
    model, _meta = load_model(args.model)
    ds = _load_dataset(args)
    facts, _ = propositionalize(ds)
    goal = ds.schema.label.name
    predicted = classify(model, facts, goal, ds.subjects)
    truth = ds.labels()
    tp = sum(1 for s, y in zip(ds.subjects, truth) if y and s in predicted)
    tn = sum(1 for s, y in zip(ds.subjects, truth) if not y and s not in predicted)
    fp = sum(1 for s, y in zip(ds.subjects, truth) if not y and s in predicted)
    fn = sum(1 for s, y in zip(ds.subjects, truth) if y and s not in predicted)
    acc = (tp + tn) / len(ds)
    print(f"accuracy,{acc:.4f},tp,{tp},tn,{tn},fp,{fp},fn,{fn}")
    return EXIT_OK


def cmd_crossval(args) -> int:
    ds = _load_dataset(args)
    report = crossval(ds, _learner_fn(args), folds=args.folds, seed=args.seed)
    for i, acc in enumerate(report.accuracies):
        print(f"fold,{i},{acc:.4f}")
    print(report.line())
    return EXIT_OK


def cmd_golden(args) -> int:
    if args.list:
        from .golden import CASES

        for case in CASES:
            print(case.name)
        return EXIT_OK
    failures = 0
    for name, ok, detail in run_all():
        if ok:
            print(f"PASS {name}: {detail}")
        else:
            failures += 1
            print(f"FAIL {name}: {detail}")
    return EXIT_OK if failures == 0 else EXIT_ENGINE


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "learn": cmd_learn,
        "eval": cmd_eval,
        "crossval": cmd_crossval,
        "golden": cmd_golden,
    }
    try:
        return handlers[args.command](args)
    except (DataError, ParseError) as exc:
        print(f"foldlp: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"foldlp: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FoldlpError as exc:
        print(f"foldlp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
