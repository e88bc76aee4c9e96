#!/usr/bin/env python3
"""Sample a torus, print its prominent pairs, and reconstruct their volumes.

Usage: python scripts/torus_demo.py [n_points] [seed]
"""
import sys
import time

import numpy as np

import volopt as v
from volopt import alpha
from volopt.synthetic import torus_cloud


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 400
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 2
    t0 = time.time()
    pts = torus_cloud(n, seed=seed, big_radius=1.0, small_radius=0.4)
    f = alpha.build_alpha_filtration(alpha.PointCloud(pts))
    print(f"alpha filtration: {len(f)} simplices in {time.time() - t0:.1f}s")
    red = v.reduce(f)
    for q in (1, 2):
        pairs = [p for p in v.diagram(f, q, red) if not p.essential]
        pairs.sort(key=lambda p: p.persistence, reverse=True)
        print(f"\ndegree {q}: {len(pairs)} finite pairs, top 4 by persistence:")
        for p in pairs[:4]:
            print(f"  birth={p.birth_value:.4f} death={p.death_value:.4f} "
                  f"persistence={p.persistence:.4f} death_index={p.death_index}")
        best = pairs[0]
        t1 = time.time()
        ov = v.optimal_volume(f, best)
        print(f"  volume of the top pair: {len(ov.volume.terms)} simplices, "
              f"cycle {len(ov.cycle.terms)} simplices, "
              f"objective {ov.objective:.2f}, {time.time() - t1:.1f}s "
              f"(lp {ov.diagnostics['lp_columns']}x{ov.diagnostics['lp_rows']})")
    print(f"\ntotal {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
