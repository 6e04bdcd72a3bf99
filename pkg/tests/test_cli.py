from __future__ import annotations

import subprocess
import sys
import textwrap

import pytest

from foldlp.cli import EXIT_DATA, EXIT_ENGINE, EXIT_OK, EXIT_USAGE, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def birds_files(tmp_path):
    background = tmp_path / "birds.pl"
    background.write_text(
        textwrap.dedent(
            """\
            bird(X) :- penguin(X).
            bird(tweety). bird(et).
            cat(kitty). penguin(polly).
            """
        )
    )
    examples = tmp_path / "fly.pl"
    examples.write_text("fly(tweety). fly(et).\n")
    return background, examples


# ---------------------------------------------------------------------------
# learn
# ---------------------------------------------------------------------------


def test_learn_from_programs(capsys, birds_files):
    background, examples = birds_files
    code, out, err = run_cli(
        capsys, "learn", "--background", str(background),
        "--examples", str(examples), "--learner", "fold",
    )
    assert code == EXIT_OK
    assert out == "fly(X) :- bird(X), not ab0(X).\nab0(X) :- penguin(X).\n"
    assert "2 clauses in" in err


def test_learn_with_explicit_negatives(capsys, birds_files, tmp_path):
    background, examples = birds_files
    negatives = tmp_path / "neg.pl"
    negatives.write_text("fly(polly). fly(kitty).\n")
    code, out, _ = run_cli(
        capsys, "learn", "--background", str(background),
        "--examples", str(examples), "--negatives", str(negatives),
        "--learner", "fold",
    )
    assert code == EXIT_OK and "ab0" in out


def test_learn_from_csv_and_save(capsys, tennis_csv, tmp_path):
    out_path = tmp_path / "model.pl"
    code, out, _ = run_cli(
        capsys, "learn", "--data", str(tennis_csv),
        "--compat-ge-print", "--output", str(out_path),
    )
    assert code == EXIT_OK
    assert "play(X) :- overcast(X)." in out
    assert "A >= 95.0" in out
    saved = out_path.read_text()
    assert "% goal: play" in saved and "% learner: foldr" in saved


def test_learn_compat_flag_changes_inequality(capsys, tennis_csv):
    _, plain, _ = run_cli(capsys, "learn", "--data", str(tennis_csv))
    _, compat, _ = run_cli(
        capsys, "learn", "--data", str(tennis_csv), "--compat-ge-print"
    )
    assert "A > 80.0" in plain and "A >= 95.0" in compat


def test_learn_fold_ignores_numeric_columns(capsys, tennis_csv):
    code, out, _ = run_cli(
        capsys, "learn", "--data", str(tennis_csv), "--learner", "fold"
    )
    assert code == EXIT_OK
    assert "temperature" not in out  # numeric features need foldr


def test_learn_rejects_mixed_input_styles(capsys, tennis_csv, birds_files):
    background, _ = birds_files
    code, _, err = run_cli(
        capsys, "learn", "--data", str(tennis_csv),
        "--background", str(background),
    )
    assert code == EXIT_DATA
    assert "not both" in err


def test_learn_needs_some_input(capsys):
    code, _, err = run_cli(capsys, "learn")
    assert code == EXIT_DATA


def test_learn_goal_mismatch(capsys, birds_files):
    background, examples = birds_files
    code, _, err = run_cli(
        capsys, "learn", "--background", str(background),
        "--examples", str(examples), "--goal", "swim",
    )
    assert code == EXIT_DATA and "swim" in err


# ---------------------------------------------------------------------------
# eval / crossval
# ---------------------------------------------------------------------------


def test_eval_round_trip(capsys, tennis_csv, tmp_path):
    model_path = tmp_path / "model.pl"
    run_cli(
        capsys, "learn", "--data", str(tennis_csv), "--output", str(model_path)
    )
    code, out, _ = run_cli(
        capsys, "eval", "--model", str(model_path), "--data", str(tennis_csv)
    )
    assert code == EXIT_OK
    assert out.strip() == "accuracy,1.0000,tp,9,tn,5,fp,0,fn,0"


def test_eval_missing_model_file(capsys, tennis_csv):
    code, _, err = run_cli(
        capsys, "eval", "--model", "/nonexistent.pl", "--data", str(tennis_csv)
    )
    assert code == EXIT_DATA


def test_eval_unstratifiable_model(capsys, tennis_csv, tmp_path):
    bad = tmp_path / "bad.pl"
    bad.write_text("play(X) :- sunny(X), not play(X).\n")
    code, _, err = run_cli(
        capsys, "eval", "--model", str(bad), "--data", str(tennis_csv)
    )
    assert code == EXIT_ENGINE


def test_crossval_output_shape(capsys, tennis_csv):
    code, out, _ = run_cli(
        capsys, "crossval", "--data", str(tennis_csv),
        "--folds", "7", "--seed", "3",
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 8
    assert all(l.startswith(f"fold,{i},") for i, l in enumerate(lines[:7]))
    assert lines[7].startswith("play_tennis,7,3,")


def test_crossval_rejects_bad_folds(capsys, tennis_csv):
    code, _, err = run_cli(
        capsys, "crossval", "--data", str(tennis_csv), "--folds", "100"
    )
    assert code == EXIT_DATA


# ---------------------------------------------------------------------------
# golden
# ---------------------------------------------------------------------------


def test_golden_all_pass(capsys):
    code, out, _ = run_cli(capsys, "golden")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 5
    assert all(l.startswith("PASS ") for l in lines)


def test_golden_list(capsys):
    code, out, _ = run_cli(capsys, "golden", "--list")
    assert code == EXIT_OK
    assert "penguins-dont-fly" in out.splitlines()


# ---------------------------------------------------------------------------
# usage errors and the installed entry point
# ---------------------------------------------------------------------------


def test_no_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE


def test_unknown_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["learn", "--frobnicate"])
    assert exc.value.code == EXIT_USAGE


def test_missing_required_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval"])  # --model is required
    assert exc.value.code == EXIT_USAGE


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "foldlp.cli", "golden", "--list"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == EXIT_OK
    assert "play-tennis-numeric" in proc.stdout
