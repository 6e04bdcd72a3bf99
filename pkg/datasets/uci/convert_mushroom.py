#!/usr/bin/env python3
"""Convert the UCI mushroom data file into mushroom.csv for this package.

Usage: python3 convert_mushroom.py path/to/agaricus-lepiota.data

The raw file has one letter code per attribute; this script decodes every
code to its documented word so learned rules read e.g. ``odor_foul(X)``.
The decoded table is written next to this script as mushroom.csv with the
column kinds embedded in the header.  Missing stalk-root entries ('?') stay
missing, which the loader treats as "feature absent".
"""

import csv
import sys
from pathlib import Path

# Attribute order and letter codes follow the dataset's documentation.
ATTRIBUTES = [
    ("cap_shape", {"b": "bell", "c": "conical", "x": "convex", "f": "flat",
                   "k": "knobbed", "s": "sunken"}),
    ("cap_surface", {"f": "fibrous", "g": "grooves", "y": "scaly", "s": "smooth"}),
    ("cap_color", {"n": "brown", "b": "buff", "c": "cinnamon", "g": "gray",
                   "r": "green", "p": "pink", "u": "purple", "e": "red",
                   "w": "white", "y": "yellow"}),
    ("bruises", {"t": "bruises", "f": "no"}),
    ("odor", {"a": "almond", "l": "anise", "c": "creosote", "y": "fishy",
              "f": "foul", "m": "musty", "n": "none", "p": "pungent",
              "s": "spicy"}),
    ("gill_attachment", {"a": "attached", "d": "descending", "f": "free",
                         "n": "notched"}),
    ("gill_spacing", {"c": "close", "w": "crowded", "d": "distant"}),
    ("gill_size", {"b": "broad", "n": "narrow"}),
    ("gill_color", {"k": "black", "n": "brown", "b": "buff", "h": "chocolate",
                    "g": "gray", "r": "green", "o": "orange", "p": "pink",
                    "u": "purple", "e": "red", "w": "white", "y": "yellow"}),
    ("stalk_shape", {"e": "enlarging", "t": "tapering"}),
    ("stalk_root", {"b": "bulbous", "c": "club", "u": "cup", "e": "equal",
                    "z": "rhizomorphs", "r": "rooted"}),
    ("stalk_surface_above_ring", {"f": "fibrous", "y": "scaly", "k": "silky",
                                  "s": "smooth"}),
    ("stalk_surface_below_ring", {"f": "fibrous", "y": "scaly", "k": "silky",
                                  "s": "smooth"}),
    ("stalk_color_above_ring", {"n": "brown", "b": "buff", "c": "cinnamon",
                                "g": "gray", "o": "orange", "p": "pink",
                                "e": "red", "w": "white", "y": "yellow"}),
    ("stalk_color_below_ring", {"n": "brown", "b": "buff", "c": "cinnamon",
                                "g": "gray", "o": "orange", "p": "pink",
                                "e": "red", "w": "white", "y": "yellow"}),
    ("veil_type", {"p": "partial", "u": "universal"}),
    ("veil_color", {"n": "brown", "o": "orange", "w": "white", "y": "yellow"}),
    ("ring_number", {"n": "none", "o": "one", "t": "two"}),
    ("ring_type", {"c": "cobwebby", "e": "evanescent", "f": "flaring",
                   "l": "large", "n": "none", "p": "pendant", "s": "sheathing",
                   "z": "zone"}),
    ("spore_print_color", {"k": "black", "n": "brown", "b": "buff",
                           "h": "chocolate", "r": "green", "o": "orange",
                           "u": "purple", "w": "white", "y": "yellow"}),
    ("population", {"a": "abundant", "c": "clustered", "n": "numerous",
                    "s": "scattered", "v": "several", "y": "solitary"}),
    ("habitat", {"g": "grasses", "l": "leaves", "m": "meadows", "p": "paths",
                 "u": "urban", "w": "waste", "d": "woods"}),
]


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__)
        return 1
    raw = Path(sys.argv[1])
    out = Path(__file__).resolve().parent / "mushroom.csv"
    header = ["poisonous:label=true"] + [f"{name}:cat" for name, _ in ATTRIBUTES]

    rows = []
    for lineno, line in enumerate(raw.read_text().splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != len(ATTRIBUTES) + 1:
            raise SystemExit(f"line {lineno}: expected {len(ATTRIBUTES) + 1} fields")
        label = {"p": "true", "e": "false"}[cells[0]]
        decoded = [label]
        for (name, codes), code in zip(ATTRIBUTES, cells[1:]):
            decoded.append("" if code == "?" else codes[code])
        rows.append(decoded)

    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
