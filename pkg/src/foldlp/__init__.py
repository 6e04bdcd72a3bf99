"""foldlp: FOLD / FOLD-R rule induction with a built-in stable-model engine.

Learns stratified normal logic programs ("defaults with exceptions") from
background knowledge and labelled examples, and evaluates them without any
external Prolog system.
"""

__version__ = "0.1.0"

from .logic import (  # noqa: E402
    Atom,
    Clause,
    Cmp,
    Const,
    ConstList,
    FoldlpError,
    LogicError,
    Neg,
    NotStratifiedError,
    Num,
    ParseError,
    Pos,
    Program,
    Var,
    clause_to_text,
    parse_clause,
    parse_program,
    program_to_text,
    stratify,
)
from .engine import (  # noqa: E402
    EngineError,
    ExampleSet,
    GroundingBlowupError,
    StableModel,
    UnsafeClauseError,
    covers,
    cwa_negatives,
    stable_model,
)
from .coverage import LearnerError, information_gain, laplace_gain  # noqa: E402
from .learner import LearnContext, NonTerminationError, fold  # noqa: E402
from .numeric import foldr, foldr_context  # noqa: E402
from .data import (  # noqa: E402
    DataError,
    Dataset,
    Schema,
    accuracy,
    crossval,
    load_csv,
    load_model,
    load_schema,
    loads_csv,
    propositionalize,
    save_model,
    split_folds,
)

__all__ = [
    "__version__",
    # logic
    "Atom", "Clause", "Cmp", "Const", "ConstList", "Neg", "Num", "Pos",
    "Program", "Var", "parse_program", "parse_clause", "program_to_text",
    "clause_to_text", "stratify",
    # engine
    "StableModel", "ExampleSet", "stable_model", "covers", "cwa_negatives",
    # learning
    "fold", "foldr", "foldr_context", "LearnContext",
    "information_gain", "laplace_gain",
    # data
    "Dataset", "Schema", "load_csv", "loads_csv", "load_schema",
    "propositionalize", "split_folds", "crossval", "accuracy",
    "save_model", "load_model",
    # errors
    "FoldlpError", "LogicError", "ParseError", "NotStratifiedError",
    "EngineError", "UnsafeClauseError", "GroundingBlowupError",
    "LearnerError", "NonTerminationError", "DataError",
]
