"""Synthetic inputs for benchmarks and tests: triangle strips and torus samples."""
from __future__ import annotations

import numpy as np

from .simplicial import Filtration


def triangulated_strip(num_quads: int) -> Filtration:
    """Left-to-right strip of 2*num_quads triangles as a valid filtration.

    Vertices alternate bottom/top (b_i = 2i, t_i = 2i+1); quad i carries
    value i+1 and contributes two vertices, four edges, and two triangles.
    Built directly into flat arrays so million-triangle strips stay cheap.
    """
    m = num_quads
    i = np.arange(m, dtype=np.int64)
    b0, t0, b1, t1 = 2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3

    # per quad: verts [b1, t1], edges [(b0,b1),(t0,b1),(t0,t1),(b1,t1)],
    # triangles [(b0,t0,b1),(t0,b1,t1)]
    vals = np.repeat(i + 1.0, 8)
    lengths = np.array([1, 1, 2, 2, 2, 2, 3, 3])
    records = [
        b1[:, None],
        t1[:, None],
        np.stack([b0, b1], axis=1),
        np.stack([t0, b1], axis=1),
        np.stack([t0, t1], axis=1),
        np.stack([b1, t1], axis=1),
        np.stack([b0, t0, b1], axis=1),
        np.stack([t0, b1, t1], axis=1),
    ]
    per_quad = np.concatenate(records, axis=1)  # (m, 16)
    vflat = per_quad.reshape(-1)
    lens = np.tile(lengths, m)
    # prefix: b_0, t_0, edge (b_0, t_0) at value 0
    prefix_flat = np.array([0, 1, 0, 1], dtype=np.int64)
    prefix_lens = np.array([1, 1, 2])
    flat = np.concatenate([prefix_flat, vflat])
    all_lens = np.concatenate([prefix_lens, lens])
    offsets = np.concatenate([[0], np.cumsum(all_lens)])
    values = np.concatenate([np.zeros(3), vals])
    return Filtration(2, flat, offsets, values)


def torus_cloud(n: int, seed: int, big_radius: float = 1.0, small_radius: float = 0.4) -> np.ndarray:
    """n points area-uniform on a torus, via rejection on the minor angle."""
    rng = np.random.default_rng(seed)
    pts = np.empty((n, 3))
    got = 0
    while got < n:
        u = rng.uniform(0, 2 * np.pi, size=2 * (n - got))
        w = rng.uniform(0, 2 * np.pi, size=2 * (n - got))
        keep = rng.uniform(0, 1 + small_radius / big_radius, size=2 * (n - got)) \
            <= 1 + (small_radius / big_radius) * np.cos(w)
        u, w = u[keep], w[keep]
        take = min(len(u), n - got)
        r = big_radius + small_radius * np.cos(w[:take])
        pts[got : got + take, 0] = r * np.cos(u[:take])
        pts[got : got + take, 1] = r * np.sin(u[:take])
        pts[got : got + take, 2] = small_radius * np.sin(w[:take])
        got += take
    return pts


def circle_cloud(n: int, seed: int, radius: float = 1.0, noise: float = 0.02) -> np.ndarray:
    rng = np.random.default_rng(seed)
    ang = rng.uniform(0, 2 * np.pi, size=n)
    r = radius + rng.normal(0, noise, size=n)
    return np.stack([r * np.cos(ang), r * np.sin(ang)], axis=1)


def jittered_lattice(shape: tuple[int, int, int], seed: int, jitter: float = 0.05,
                     drop: float = 0.0) -> np.ndarray:
    """Cubic-ish lattice points with Gaussian noise, optionally thinned."""
    rng = np.random.default_rng(seed)
    xs, ys, zs = np.meshgrid(*(np.arange(s, dtype=float) for s in shape), indexing="ij")
    pts = np.stack([xs.ravel(), ys.ravel(), zs.ravel()], axis=1)
    pts += rng.normal(0, jitter, size=pts.shape)
    if drop > 0:
        keep = rng.uniform(size=len(pts)) >= drop
        pts = pts[keep]
    return pts
