#!/usr/bin/env python3
"""Convert the ecoli data file into ecoli.csv.

Usage: python3 convert_ecoli.py path/to/ecoli.data

The raw file is whitespace-separated: a sequence name, seven numeric
features, and the localization site.  The target is binarized as
"cytoplasm (cp) vs everything else", the largest class.  Sequence names are
dropped because they repeat; the loader numbers the rows instead.
"""

import csv
import sys
from pathlib import Path

FEATURES = ["mcg", "gvh", "lip", "chg", "aac", "alm1", "alm2"]


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__)
        return 1
    raw = Path(sys.argv[1])
    out = Path(__file__).resolve().parent / "ecoli.csv"

    rows = []
    for lineno, line in enumerate(raw.read_text().splitlines(), start=1):
        cells = line.split()
        if not cells:
            continue
        if len(cells) != 9:
            raise SystemExit(f"line {lineno}: expected 9 fields, got {len(cells)}")
        rows.append(cells[1:8] + [cells[8]])

    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"{f}:num" for f in FEATURES] + ["site:label=cp"])
        writer.writerows(rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
