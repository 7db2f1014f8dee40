"""30-vertex money-transfer multigraph with known features.

  p1-p2          two transfers between one pair: D = 2 for both, c = 0
  t1,t2,t3       triangle: c = 1
  h + l01..l12   hub with twelve payees and one payee-payee edge: D = 12, c = 1/66
  k1..k4         4-clique: D = 3, c = 1
  q1..q5         5-clique: D = 4, c = 1 (outside the clustering cap of its degree row)
  x1-x2          three transfers: D = 3, c = 0
  iso            no transfers: D = 0
"""
import itertools
import pathlib
import random

SEED = 3
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures" / "transfers_30.csv"


def main():
    edges = [("p1", "p2"), ("p2", "p1")]
    edges += [("t1", "t2"), ("t2", "t3"), ("t3", "t1")]
    leaves = [f"l{i:02d}" for i in range(1, 13)]
    edges += [("h", leaf) for leaf in leaves] + [("l01", "l02")]
    edges += list(itertools.combinations(["k1", "k2", "k3", "k4"], 2))
    edges += list(itertools.combinations(["q1", "q2", "q3", "q4", "q5"], 2))
    edges += [("x1", "x2")] * 3
    rng = random.Random(SEED)
    rng.shuffle(edges)
    with OUT.open("w") as f:
        f.write("source,target\n")
        for a, b in edges:
            f.write(f"{a},{b}\n")
        f.write("iso\n")


if __name__ == "__main__":
    main()
