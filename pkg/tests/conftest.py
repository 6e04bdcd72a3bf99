from __future__ import annotations

import pathlib

import pytest

DATASETS = pathlib.Path(__file__).resolve().parent.parent / "datasets"

# Shared worked examples: a bird world where penguins are the exception, used
# across parser, engine, and learner tests.

BIRDS_BACKGROUND = """
bird(tweety).
bird(et).
cat(kitty).
penguin(polly).
bird(X) :- penguin(X).
"""

BIRDS_POSITIVES = ["fly(tweety)", "fly(et)"]
BIRDS_NEGATIVES = ["fly(polly)", "fly(kitty)"]


@pytest.fixture(scope="session")
def tennis_csv() -> pathlib.Path:
    path = DATASETS / "play_tennis.csv"
    assert path.exists()
    return path


@pytest.fixture(scope="session")
def iris_csv() -> pathlib.Path:
    path = DATASETS / "uci" / "iris.csv"
    assert path.exists()
    return path
