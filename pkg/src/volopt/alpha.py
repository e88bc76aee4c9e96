"""(Weighted) alpha filtrations from small point clouds.

Delaunay simplices are found by the empty-circumsphere definition: every
candidate (n+1)-subset whose circumsphere (power sphere in the weighted case)
contains no other point strictly inside.  That is O(N^(n+2)) but exact and
dependency-free; for larger unweighted clouds a scipy.spatial fast path kicks
in, cross-checked against the brute-force oracle in the tests.

Filtration values are radii: a simplex enters the alpha complex at its
circumradius when its circumsphere is empty (the Gabriel case), otherwise at
the smallest value among its cofaces.  Weighted points use power spheres; the
squared power radius may be negative, so the value is sign(r2)*sqrt(|r2|),
which is monotone in r2 and reduces to the plain circumradius at weight zero.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .simplicial import Filtration, Simplex, canonical_sort

DEGENERACY_TOL = 1e-9
BRUTE_FORCE_LIMIT = {2: 120, 3: 45}


class DegeneracyError(ValueError):
    """Point configuration too degenerate for an unambiguous Delaunay complex."""

    def __init__(self, message: str, subset: tuple[int, ...] = ()):
        super().__init__(message)
        self.subset = subset


@dataclass
class PointCloud:
    points: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.points.ndim != 2 or self.points.shape[1] not in (2, 3):
            raise ValueError("points must be an (N, 2) or (N, 3) array")
        if self.weights is not None:
            self.weights = np.asarray(self.weights, dtype=np.float64)
            if self.weights.shape != (len(self.points),):
                raise ValueError("weights must match points")
        seen = {}
        for i, p in enumerate(map(tuple, self.points)):
            if p in seen:
                raise ValueError(f"duplicate points at ids {seen[p]} and {i}")
            seen[p] = i

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return len(self.points)

    def effective_weights(self) -> np.ndarray:
        if self.weights is None:
            return np.zeros(len(self.points))
        return self.weights

    def jittered(self, seed: int, scale: float = 1e-6) -> "PointCloud":
        rng = np.random.default_rng(seed)
        noise = rng.uniform(-scale, scale, size=self.points.shape)
        return PointCloud(self.points + noise, self.weights)


def load_points(path: str, weighted: bool = False) -> PointCloud:
    """One point per line, `x1 .. xn [weight]`; `#` starts a comment."""
    rows = []
    with open(path) as fh:
        for ln in fh:
            ln = ln.split("#", 1)[0].strip()
            if ln:
                rows.append([float(t) for t in ln.split()])
    if not rows:
        raise ValueError(f"no points in {path}")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("inconsistent column count in point file")
    arr = np.array(rows)
    if weighted:
        return PointCloud(arr[:, :-1], arr[:, -1])
    return PointCloud(arr)


def power_sphere(points: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, float]:
    """Center and squared radius of the smallest sphere orthogonal to the
    weighted vertices, with the center constrained to their affine hull.

    Solves 2 (p_i - p_0).(c - p_0) = |p_i - p_0|^2 - w_i + w_0 for the affine
    coordinates of c.  Unweighted input gives the ordinary circumsphere.
    """
    p0 = points[0]
    d = points[1:] - p0
    if len(d) == 0:
        return p0.copy(), -float(weights[0])
    gram = 2.0 * d @ d.T
    rhs = np.einsum("ij,ij->i", d, d) - weights[1:] + weights[0]
    try:
        lam = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        raise DegeneracyError("degenerate simplex (affinely dependent vertices)")
    c = p0 + lam @ d
    r2 = float(np.dot(c - p0, c - p0) - weights[0])
    return c, r2


def circumradius(points: np.ndarray) -> float:
    c, r2 = power_sphere(points, np.zeros(len(points)))
    return float(np.sqrt(max(r2, 0.0)))


def _signed_sqrt(r2: float) -> float:
    return float(np.sign(r2) * np.sqrt(abs(r2)))


def _delaunay_brute(pc: PointCloud) -> list[Simplex]:
    """All empty-(power-)sphere n-simplices, with degeneracy detection."""
    pts = pc.points
    w = pc.effective_weights()
    npts, n = pts.shape
    scale = float(np.abs(pts).max(initial=1.0))
    combos = np.array(list(itertools.combinations(range(npts), n + 1)), dtype=np.int64)
    accepted: list[Simplex] = []
    sq = np.einsum("ij,ij->i", pts, pts)
    chunk = 20_000
    for lo in range(0, len(combos), chunk):
        batch = combos[lo : lo + chunk]
        p = pts[batch]                      # (B, n+1, n)
        wb = w[batch]                       # (B, n+1)
        p0 = p[:, 0, :]
        d = p[:, 1:, :] - p0[:, None, :]    # (B, n, n)
        gram = 2.0 * np.einsum("bik,bjk->bij", d, d)
        rhs = np.einsum("bik,bik->bi", d, d) - wb[:, 1:] + wb[:, :1]
        det = np.linalg.det(gram)
        flat = np.abs(det) <= (1e-10 * (2 * scale * scale) ** n)
        lam = np.zeros_like(rhs)
        ok = ~flat
        if ok.any():
            lam[ok] = np.linalg.solve(gram[ok], rhs[ok][..., None])[..., 0]
        centers = p0 + np.einsum("bi,bij->bj", lam, d)
        r2 = np.einsum("bj,bj->b", centers - p0, centers - p0) - wb[:, 0]
        # power of every point w.r.t. each center, minus r2
        margins = (
            sq[None, :] - 2.0 * centers @ pts.T
            + np.einsum("bj,bj->b", centers, centers)[:, None]
            - w[None, :]
            - r2[:, None]
        )
        rows = np.arange(len(batch))[:, None]
        margins[rows, batch] = np.inf
        worst = margins.min(axis=1)
        tol = DEGENERACY_TOL * max(1.0, scale * scale)
        for bi in range(len(batch)):
            if flat[bi]:
                continue
            m = worst[bi]
            if m < -tol:
                continue
            if m <= tol:
                offender = int(margins[bi].argmin())
                subset = tuple(int(v) for v in batch[bi]) + (offender,)
                raise DegeneracyError(
                    f"{n + 2} points within {DEGENERACY_TOL} of a common "
                    f"(power) sphere: {subset}; retry with --jitter",
                    subset,
                )
            accepted.append(tuple(int(v) for v in batch[bi]))
    if not accepted:
        raise DegeneracyError(
            f"no non-degenerate {n}-simplex found: the point set is "
            "collinear/coplanar or too degenerate")
    return accepted


def _delaunay_scipy(pc: PointCloud) -> list[Simplex]:
    from scipy.spatial import Delaunay as SciPyDelaunay

    tri = SciPyDelaunay(pc.points)
    out = {tuple(sorted(int(v) for v in row)) for row in tri.simplices}
    return sorted(out)


def delaunay(pc: PointCloud, method: str = "auto") -> dict[int, list[Simplex]]:
    """Delaunay complex as a dim -> simplices mapping (face closure included)."""
    n = pc.dim
    if len(pc) < n + 1:
        raise ValueError(f"need at least {n + 1} points in dimension {n}")
    if method == "auto":
        small = len(pc) <= BRUTE_FORCE_LIMIT[n]
        method = "brute" if (small or pc.weights is not None) else "scipy"
    if method == "brute":
        top = _delaunay_brute(pc)
    elif method == "scipy":
        if pc.weights is not None:
            raise ValueError("the scipy fast path supports unweighted points only")
        top = _delaunay_scipy(pc)
    else:
        raise ValueError(f"unknown method {method!r}")
    complex_by_dim: dict[int, set[Simplex]] = {q: set() for q in range(n + 1)}
    complex_by_dim[n] = set(top)
    for s in top:
        for q in range(n):
            for face in itertools.combinations(s, q + 1):
                complex_by_dim[q].add(face)
    return {q: sorted(complex_by_dim[q]) for q in range(n + 1)}


def alpha_value(s: Simplex, pc: PointCloud, complex_by_dim: dict[int, list[Simplex]] | None = None) -> float:
    """Alpha entry value of one Delaunay simplex (mainly for spot checks)."""
    if complex_by_dim is None:
        complex_by_dim = delaunay(pc)
    values = _alpha_values(pc, complex_by_dim)
    key = tuple(s)
    if key not in values:
        raise KeyError(f"{key} is not in the Delaunay complex")
    return values[key]


def _alpha_values(pc: PointCloud, complex_by_dim: dict[int, list[Simplex]]) -> dict[Simplex, float]:
    pts = pc.points
    w = pc.effective_weights()
    n = pc.dim
    sq = np.einsum("ij,ij->i", pts, pts)
    scale = float(np.abs(pts).max(initial=1.0))
    tol = DEGENERACY_TOL * max(1.0, scale * scale)
    values: dict[Simplex, float] = {}
    coface_min: dict[Simplex, float] = {}
    for q in range(n, -1, -1):
        for s in complex_by_dim[q]:
            idx = np.array(s)
            c, r2 = power_sphere(pts[idx], w[idx])
            if q == n:
                gabriel = True  # empty by the Delaunay property
            else:
                power = sq - 2.0 * pts @ c + float(c @ c) - w
                power[idx] = np.inf
                gabriel = bool(power.min() >= r2 - tol)
            if gabriel:
                val = _signed_sqrt(r2)
            else:
                val = coface_min[s]
            # Gabriel circumradius can exceed a coface value only through
            # roundoff; clamp to keep face monotonicity exact.
            if s in coface_min:
                val = min(val, coface_min[s])
            values[s] = val
            if q > 0:
                for i in range(len(s)):
                    face = s[:i] + s[i + 1 :]
                    prev = coface_min.get(face)
                    coface_min[face] = val if prev is None else min(prev, val)
    return values


def build_alpha_filtration(pc: PointCloud, method: str = "auto") -> Filtration:
    """Delaunay + alpha values + canonical (value, dim, lex) ordering."""
    complex_by_dim = delaunay(pc, method)
    values = _alpha_values(pc, complex_by_dim)
    coords = {i: tuple(map(float, p)) for i, p in enumerate(pc.points)}
    weights = None
    if pc.weights is not None:
        weights = {i: float(v) for i, v in enumerate(pc.weights)}
    # drop coordinates of points hidden by the weighted Delaunay complex
    used = {v for s in values for v in s}
    coords = {i: c for i, c in coords.items() if i in used}
    if weights is not None:
        weights = {i: c for i, c in weights.items() if i in used}
    return canonical_sort(list(values.items()), pc.dim, coords, weights)
