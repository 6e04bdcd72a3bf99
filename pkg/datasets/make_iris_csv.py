#!/usr/bin/env python3
"""Regenerate uci/iris.csv from scikit-learn's bundled copy of the dataset.

The shipped CSV was produced by this script; run it again if you want to
verify the file or change the positive class.  The label column marks
versicolor as the positive class (the hardest one-versus-rest split of
the three).
"""

from pathlib import Path

from sklearn.datasets import load_iris


def main() -> None:
    iris = load_iris()
    out = Path(__file__).parent / "uci" / "iris.csv"
    lines = ["sepal_length:num,sepal_width:num,petal_length:num,petal_width:num,species:label=versicolor"]
    for row, target in zip(iris.data, iris.target):
        species = iris.target_names[target]
        cells = [f"{v:.1f}" for v in row]
        lines.append(",".join(cells + [species]))
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out} ({len(lines) - 1} rows)")


if __name__ == "__main__":
    main()
