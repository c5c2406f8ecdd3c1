#!/usr/bin/env python3
"""Writes the explicit-table corpus instances (uniform matroids with seeded
random multiplicities, and a ranked set with r(empty) = 1)."""
import itertools
import json
import random
import sys
from pathlib import Path


def key(subset):
    return ",".join(str(i) for i in subset)


def subsets(n):
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)


def uniform(name, k, n, rng, ambient=None):
    rank = {key(s): min(len(s), k) for s in subsets(n)}
    table = {key(s): rng.randint(1, 6) for s in subsets(n)}
    rep = {"kind": "explicit", "size": n, "rank": rank}
    if ambient is not None:
        rep["ambient_rank"] = ambient
    return {"name": name, "representation": rep, "multiplicity": {"kind": "explicit", "table": table}}


def shifted(name, n, rng):
    rank = {key(s): 1 + min(len(s), 2) for s in subsets(n)}
    table = {key(s): f"{rng.randint(-9, 9) or 1}/{rng.randint(1, 5)}" for s in subsets(n)}
    rep = {"kind": "explicit", "size": n, "rank": rank, "ambient_rank": 3}
    return {"name": name, "representation": rep, "multiplicity": {"kind": "explicit", "table": table}}


def main(out):
    rng = random.Random(20240611)
    docs = [
        uniform("u13", 1, 3, rng, ambient=1),
        uniform("u24", 2, 4, rng),
        uniform("u35", 3, 5, rng, ambient=4),
        shifted("rank-shift", 3, rng),
    ]
    for doc in docs:
        (out / f"{doc['name']}.json").write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "corpus"))
