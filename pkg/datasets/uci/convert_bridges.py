#!/usr/bin/env python3
"""Convert the Pittsburgh bridges data file into bridges.csv.

Usage: python3 convert_bridges.py path/to/bridges.data.version1

Thirteen comma-separated columns; '?' marks a missing value.  The nearly
binary through-vs-deck design column serves as the label (through is
positive); rows with a missing label are dropped, other missing cells stay
empty so the loader treats those features as absent.
"""

import csv
import sys
from pathlib import Path

COLUMNS = [
    ("bridge", "id"),
    ("river", "cat"),
    ("location", "cat"),
    ("erected", "num"),
    ("purpose", "cat"),
    ("length", "num"),
    ("lanes", "num"),
    ("clear_g", "cat"),
    ("t_or_d", "label=through"),
    ("material", "cat"),
    ("span", "cat"),
    ("rel_l", "cat"),
    ("type", "cat"),
]


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__)
        return 1
    raw = Path(sys.argv[1])
    out = Path(__file__).resolve().parent / "bridges.csv"

    label_idx = next(i for i, (_, k) in enumerate(COLUMNS) if k.startswith("label"))
    rows = []
    dropped = 0
    for lineno, line in enumerate(raw.read_text().splitlines(), start=1):
        cells = [c.strip() for c in line.split(",")]
        if len(cells) == 1 and not cells[0]:
            continue
        if len(cells) != len(COLUMNS):
            raise SystemExit(f"line {lineno}: expected {len(COLUMNS)} fields")
        if cells[label_idx] == "?":
            dropped += 1
            continue
        cells[label_idx] = cells[label_idx].lower()
        rows.append(["" if c == "?" else c for c in cells])

    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"{name}:{kind}" for name, kind in COLUMNS])
        writer.writerows(rows)
    print(f"wrote {out} ({len(rows)} rows, {dropped} unlabeled rows dropped)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
