#!/usr/bin/env python3
"""Convert the acute-inflammations data file into acute1.csv and acute2.csv.

Usage: python3 convert_acute.py path/to/diagnosis.data

The raw file is tab-separated, encoded as UTF-16, and writes temperatures
with a decimal comma.  It carries two diagnoses per row; acute1.csv keeps
the bladder-inflammation label, acute2.csv the nephritis label.
"""

import csv
import sys
from pathlib import Path

FEATURES = [
    ("temperature", "num"),
    ("nausea", "bool"),
    ("lumbar_pain", "bool"),
    ("urine_pushing", "bool"),
    ("micturition_pains", "bool"),
    ("urethra_burning", "bool"),
]


def _read_text(path: Path) -> str:
    data = path.read_bytes()
    for encoding in ("utf-16", "utf-8-sig", "latin-1"):
        try:
            return data.decode(encoding)
        except UnicodeError:
            continue
    raise SystemExit(f"cannot decode {path}")


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__)
        return 1
    raw = Path(sys.argv[1])
    here = Path(__file__).resolve().parent

    rows = []
    for line in _read_text(raw).splitlines():
        cells = line.strip().split("\t")
        if len(cells) != 8:
            if line.strip():
                raise SystemExit(f"unexpected line: {line!r}")
            continue
        temperature = cells[0].replace(",", ".")
        rows.append([temperature] + cells[1:])

    for idx, name in ((6, "acute1"), (7, "acute2")):
        out = here / f"{name}.csv"
        header = [f"{col}:{kind}" for col, kind in FEATURES]
        header.append("diagnosis:label=yes")
        with out.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for cells in rows:
                writer.writerow(cells[:6] + [cells[idx]])
        print(f"wrote {out} ({len(rows)} rows)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
