#!/usr/bin/env python3
"""Convert the labor-negotiations data file into labor.csv.

Usage: python3 convert_labor.py path/to/labor-neg.data

Expects the comma-separated distribution: sixteen attributes then the
good/bad outcome, with '?' for missing values (most rows have some).
Missing cells stay empty in the CSV so the loader treats the feature as
absent for that row.
"""

import csv
import sys
from pathlib import Path

COLUMNS = [
    ("duration", "num"),
    ("wage_increase_first_year", "num"),
    ("wage_increase_second_year", "num"),
    ("wage_increase_third_year", "num"),
    ("cost_of_living_adjustment", "cat"),
    ("working_hours", "num"),
    ("pension", "cat"),
    ("standby_pay", "num"),
    ("shift_differential", "num"),
    ("education_allowance", "bool"),
    ("statutory_holidays", "num"),
    ("vacation", "cat"),
    ("longterm_disability_assistance", "bool"),
    ("contribution_to_dental_plan", "cat"),
    ("bereavement_assistance", "bool"),
    ("contribution_to_health_plan", "cat"),
    ("outcome", "label=good"),
]


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__)
        return 1
    raw = Path(sys.argv[1])
    out = Path(__file__).resolve().parent / "labor.csv"

    rows = []
    for lineno, line in enumerate(raw.read_text().splitlines(), start=1):
        cells = [c.strip() for c in line.split(",")]
        if len(cells) == 1 and not cells[0]:
            continue
        if len(cells) != len(COLUMNS):
            raise SystemExit(
                f"line {lineno}: expected {len(COLUMNS)} fields, got {len(cells)}"
            )
        rows.append(["" if c == "?" else c.lower() for c in cells])

    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"{name}:{kind}" for name, kind in COLUMNS])
        writer.writerows(rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
