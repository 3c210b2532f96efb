#!/usr/bin/env python3
"""Download the UCI Soybean (small and large) data and write header CSVs.

Writes data/soybean-small.csv (46 rows) and data/soybean-large.csv
(.data and .test combined, 683 rows). Attribute cells stay integer codes,
"?" marks a missing cell, the class is the last column.

Without network access, pass --source-dir with the original UCI files
(soybean-small.data, soybean-large.data, soybean-large.test).
"""

import argparse
import csv
import pathlib
import sys
import urllib.request

BASE_URL = "https://archive.ics.uci.edu/ml/machine-learning-databases/soybean/"

ATTRIBUTES = [
    "date", "plant-stand", "precip", "temp", "hail", "crop-hist", "area-damaged",
    "severity", "seed-tmt", "germination", "plant-growth", "leaves", "leafspots-halo",
    "leafspots-marg", "leafspot-size", "leaf-shread", "leaf-malf", "leaf-mild", "stem",
    "lodging", "stem-cankers", "canker-lesion", "fruiting-bodies", "external-decay",
    "mycelium", "int-discolor", "sclerotia", "fruit-pods", "fruit-spots", "seed",
    "mold-growth", "seed-discolor", "seed-size", "shriveling", "roots",
]


def read_source(name, source_dir):
    if source_dir is not None:
        return (source_dir / name).read_text()
    with urllib.request.urlopen(BASE_URL + name, timeout=60) as response:
        return response.read().decode("ascii")


def rows_of(text):
    for line in text.splitlines():
        line = line.strip()
        if line:
            yield [cell.strip() for cell in line.split(",")]


def small_rows(text):
    out = []
    for cells in rows_of(text):
        if len(cells) != len(ATTRIBUTES) + 1:
            raise ValueError(f"soybean-small row has {len(cells)} cells")
        out.append(cells)
    return out


def large_rows(text):
    out = []
    for cells in rows_of(text):
        if len(cells) != len(ATTRIBUTES) + 1:
            raise ValueError(f"soybean-large row has {len(cells)} cells")
        out.append(cells[1:] + cells[:1])
    return out


def write_csv(path, rows):
    with path.open("w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(ATTRIBUTES + ["class"])
        writer.writerows(rows)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path(__file__).resolve().parent.parent / "data")
    parser.add_argument("--source-dir", type=pathlib.Path, default=None)
    args = parser.parse_args()

    try:
        small = small_rows(read_source("soybean-small.data", args.source_dir))
        large = large_rows(read_source("soybean-large.data", args.source_dir))
        large += large_rows(read_source("soybean-large.test", args.source_dir))
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_csv(args.out_dir / "soybean-small.csv", small)
    write_csv(args.out_dir / "soybean-large.csv", large)
    print(f"soybean-small.csv: {len(small)} rows")
    print(f"soybean-large.csv: {len(large)} rows")
    return 0


if __name__ == "__main__":
    sys.exit(main())
