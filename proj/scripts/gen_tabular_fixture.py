"""Synthetic two-class Gaussian population shaped like an ad-click table.

1000 rows, 500 per class, four continuous attributes with well separated
class means. Re-running with the committed seed reproduces the file.
"""
import csv
import pathlib

import numpy as np

SEED = 20240518
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures" / "adclick_synthetic.csv"

# (clicked mean, not-clicked mean, shared std)
ATTRS = {
    "Daily Time Spent on Site": (52.0, 77.0, 7.0),
    "Age": (41.0, 31.0, 5.0),
    "Area Income": (48000.0, 61000.0, 6000.0),
    "Daily Internet Usage": (145.0, 213.0, 18.0),
}


def main():
    rng = np.random.default_rng(SEED)
    rows = []
    for label in ["Clicked"] * 500 + ["Not clicked"] * 500:
        k = 0 if label == "Clicked" else 1
        row = [f"{rng.normal(m[k], m[2]):.2f}" for m in ATTRS.values()]
        rows.append(row + [label])
    order = rng.permutation(len(rows))
    with OUT.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", *ATTRS.keys(), "Clicked on Ad"])
        for i, idx in enumerate(order):
            w.writerow([f"c{i:04d}", *rows[idx]])


if __name__ == "__main__":
    main()
