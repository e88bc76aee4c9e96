#!/usr/bin/env python3
"""Merge-tree scaling benchmark on synthetic triangle strips.

Usage: python scripts/strip_benchmark.py [num_triangles]
"""
import sys
import time

from volopt import mergetree as mt
from volopt.synthetic import triangulated_strip


def main():
    triangles = int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000
    quads = triangles // 2
    t0 = time.time()
    f = triangulated_strip(quads)
    t1 = time.time()
    print(f"strip: {2 * quads:,} triangles, {len(f):,} simplices, built in {t1 - t0:.2f}s")
    forest = mt.compute_forest(f)
    t2 = time.time()
    unions = sum(1 for p in forest.tree_parent if p != forest.ROOT)
    print(f"compute_forest: {t2 - t1:.2f}s")
    print(f"unions: {unions:,}  cells: {len(forest.cell_indices):,}")
    print(f"finds: {forest.find_calls:,}  probes: {forest.probe_count:,}  "
          f"probes/find: {forest.probe_count / max(1, forest.find_calls):.2f}")


if __name__ == "__main__":
    main()
