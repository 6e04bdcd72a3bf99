#!/usr/bin/env python3
"""Convert the three credit-scoring data files into CSVs for this package.

Usage:
    python3 convert_credit.py australian.dat   -> credit_au.csv
    python3 convert_credit.py crx.data         -> credit_j.csv
    python3 convert_credit.py german.data      -> credit_g.csv

The source is recognized by its file name.  These three reproductions are
reported but not gated: the attribute semantics are anonymized in the
sources, so any binarization is a judgment call.  Missing values ('?') stay
empty so the loader treats the feature as absent.
"""

import csv
import sys
from pathlib import Path


def _write(out_name, header, rows):
    out = Path(__file__).resolve().parent / out_name
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {out} ({len(rows)} rows)")


def convert_australian(raw: Path) -> None:
    # 14 anonymized attributes, space-separated; columns 2,3,7,10,13,14 are
    # continuous (1-based), the rest categorical codes; class 1 is positive.
    numeric = {2, 3, 7, 10, 13, 14}
    header = [
        f"a{i}:{'num' if i in numeric else 'cat'}" for i in range(1, 15)
    ] + ["approved:label=1"]
    rows = []
    for line in raw.read_text().splitlines():
        cells = line.split()
        if not cells:
            continue
        rows.append(["" if c == "?" else c for c in cells])
    _write("credit_au.csv", header, rows)


def convert_crx(raw: Path) -> None:
    # 15 anonymized attributes, comma-separated; A2,A3,A8,A11,A14,A15 are
    # continuous; the class column holds '+' or '-'.
    numeric = {2, 3, 8, 11, 14, 15}
    header = [
        f"a{i}:{'num' if i in numeric else 'cat'}" for i in range(1, 16)
    ] + ["approved:label=+"]
    rows = []
    for line in raw.read_text().splitlines():
        cells = [c.strip() for c in line.split(",")]
        if len(cells) < 16:
            continue
        rows.append(["" if c == "?" else c for c in cells])
    _write("credit_j.csv", header, rows)


def convert_german(raw: Path) -> None:
    # 20 attributes, space-separated; columns 2,5,8,11,13,16,18 are numeric,
    # the rest qualitative codes; class 1 means good credit.
    numeric = {2, 5, 8, 11, 13, 16, 18}
    header = [
        f"a{i}:{'num' if i in numeric else 'cat'}" for i in range(1, 21)
    ] + ["good_credit:label=1"]
    rows = []
    for line in raw.read_text().splitlines():
        cells = line.split()
        if not cells:
            continue
        rows.append(cells)
    _write("credit_g.csv", header, rows)


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__)
        return 1
    raw = Path(sys.argv[1])
    name = raw.name.lower()
    if "australian" in name:
        convert_australian(raw)
    elif "crx" in name:
        convert_crx(raw)
    elif "german" in name:
        convert_german(raw)
    else:
        raise SystemExit(f"cannot recognize {raw.name}; see the usage notes")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
