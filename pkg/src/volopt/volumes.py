"""Optimal volumes, volume optimal cycles, children pairs, and optimal cycles.

For a finite pair (b, d) the optimal volume is the l1-smallest real chain
z = sigma_d + sum alpha_k sigma_k over the (q+1)-simplices strictly between
b and d, subject to dz vanishing on every q-simplex strictly between b and d,
and dz hitting sigma_b.  The last condition cannot be expressed in an LP
directly: the solver first drops it, and only when the unconstrained optimum
misses sigma_b does it re-solve twice with dz_b >= eps and dz_b <= -eps and
keep the better objective.

A locality radius keeps instances small: only simplices whose vertices lie
within distance r of the death simplex centroid take part, doubling r on
infeasibility.  Any solution of the restricted problem is feasible for the
full one because faces of in-radius simplices are in-radius.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import lp
from .simplicial import Chain, Filtration, REAL, boundary
from .reduction import PersistencePair

EPS_DEFAULT = 1e-6


class UnsupportedPairError(ValueError):
    """Volume requested for a pair with infinite death time."""


class VolumeInternalError(RuntimeError):
    """The volume LP failed in a way the theory says cannot happen."""


@dataclass
class VolumeLp:
    """Equality system for the volume problem plus its column legend."""

    a_eq: np.ndarray              # rows: constrained q-simplices, cols: free alphas
    b_eq: np.ndarray
    columns: list[int]            # LP column -> filtration index of a (q+1)-simplex
    rows: list[int]               # LP row -> filtration index of a q-simplex
    birth_row: np.ndarray         # coefficients of dz on sigma_b per column
    birth_const: float            # contribution of sigma_d to dz at sigma_b
    radius: float | None


@dataclass
class OptimalVolume:
    pair: PersistencePair
    volume: Chain                 # degree q+1, real, sigma_d coefficient 1
    cycle: Chain                  # = d(volume), support-pruned
    children: list[PersistencePair]
    objective: float
    radius_used: float | None
    retried_with_epsilon: bool
    diagnostics: dict = field(default_factory=dict)

    def to_json(self, f: Filtration) -> dict:
        def chain_json(ch: Chain) -> list[dict]:
            return [
                {"index": k, "vertices": list(f.simplex(k)), "coefficient": c}
                for k, c in sorted(ch.terms.items())
            ]

        return {
            "pair": self.pair.to_json(),
            "volume": chain_json(self.volume),
            "cycle": chain_json(self.cycle),
            "children": [p.to_json() for p in self.children],
            "objective": self.objective,
            "radius_used": self.radius_used,
            "retried_with_epsilon": self.retried_with_epsilon,
            "diagnostics": self.diagnostics,
        }


def _within_radius(f: Filtration, candidates: np.ndarray, center: np.ndarray, r: float) -> list[int]:
    out = []
    coords = f.vertex_coords
    for k in candidates:
        s = f.simplex(int(k))
        if all(np.linalg.norm(np.array(coords[v]) - center) <= r for v in s):
            out.append(int(k))
    return out


def death_simplex_geometry(f: Filtration, death_index: int) -> tuple[np.ndarray, float]:
    """Centroid of the death simplex and a default locality radius.

    The default is twice the largest vertex-to-centroid distance, which in
    particular keeps every face of the death simplex inside the ball.
    """
    coords = f.vertex_coords
    pts = np.array([coords[v] for v in f.simplex(death_index)], dtype=np.float64)
    centroid = pts.mean(axis=0)
    spread = float(np.linalg.norm(pts - centroid, axis=1).max())
    return centroid, max(2.0 * spread, 1e-12)


def assemble_volume_lp(f: Filtration, pair: PersistencePair, radius: float | None = None) -> VolumeLp:
    """Equation system of the volume problem restricted to a locality ball."""
    if pair.essential:
        raise UnsupportedPairError(
            f"pair born at {pair.birth_index} never dies; "
            "a volume optimal cycle is defined only for finite pairs")
    q = pair.degree
    b, d = pair.birth_index, pair.death_index
    in_window = lambda arr: arr[(arr > b) & (arr < d)]
    cand_cols = in_window(f.indices_of_dim(q + 1))
    cand_rows = in_window(f.indices_of_dim(q))
    if radius is not None and f.vertex_coords is None:
        raise ValueError("a locality radius needs vertex coordinates")
    if radius is not None:
        center, _ = death_simplex_geometry(f, d)
        cols = _within_radius(f, cand_cols, center, radius)
        rows = _within_radius(f, cand_rows, center, radius)
    else:
        cols = [int(k) for k in cand_cols]
        rows = [int(k) for k in cand_rows]
    row_pos = {k: i for i, k in enumerate(rows)}
    a = np.zeros((len(rows), len(cols)))
    rhs = np.zeros(len(rows))
    birth_row = np.zeros(len(cols))
    for j, col in enumerate(cols):
        s = f.simplex(col)
        for face_s, sign in boundary(s, REAL).items():
            k = f.index_of(face_s)
            i = row_pos.get(k)
            if i is not None:
                a[i, j] = sign
            elif k == b:
                birth_row[j] = sign
    birth_const = 0.0
    for face_s, sign in boundary(f.simplex(d), REAL).items():
        k = f.index_of(face_s)
        i = row_pos.get(k)
        if i is not None:
            rhs[i] = -sign
        elif k == b:
            birth_const = sign
    return VolumeLp(a, rhs, cols, rows, birth_row, birth_const, radius)


def _solve_volume(vlp: VolumeLp, eps_signed: float | None) -> lp.L1Solution:
    """Solve min sum|alpha|, optionally with dz_b >= eps or <= -eps via a slack."""
    if eps_signed is None:
        return lp.minimize_l1(vlp.a_eq, vlp.b_eq)
    n = len(vlp.columns)
    sign = 1.0 if eps_signed > 0 else -1.0
    # birth_row . alpha + birth_const = sign*(eps + slack), slack >= 0
    a = np.zeros((vlp.a_eq.shape[0] + 1, 2 * n + 1))
    a[: vlp.a_eq.shape[0], :n] = vlp.a_eq
    a[: vlp.a_eq.shape[0], n : 2 * n] = -vlp.a_eq
    a[-1, :n] = vlp.birth_row
    a[-1, n : 2 * n] = -vlp.birth_row
    a[-1, -1] = -sign
    rhs = np.concatenate([vlp.b_eq, [sign * abs(eps_signed) - vlp.birth_const]])
    c = np.concatenate([np.ones(2 * n), [0.0]])
    sol = lp._solve_standard(a, rhs, c)
    if sol.status != lp.OPTIMAL:
        return lp.L1Solution(sol.status, iterations=sol.iterations)
    x = sol.x[:n] - sol.x[n : 2 * n]
    return lp.L1Solution(lp.OPTIMAL, x, float(np.abs(x).sum()), sol.iterations)


def _boundary_chain_of_volume(f: Filtration, terms: dict[int, float], q: int) -> Chain:
    acc: dict[int, float] = {}
    for k, c in terms.items():
        s = f.simplex(k)
        for face_s, sign in boundary(s, REAL).items():
            i = f.index_of(face_s)
            acc[i] = acc.get(i, 0.0) + c * sign
    pruned = {i: c for i, c in acc.items() if abs(c) > lp.SUPPORT_TOL}
    return Chain(q, pruned, REAL)


def optimal_volume(
    f: Filtration,
    pair: PersistencePair,
    radius: float | None = None,
    eps: float = EPS_DEFAULT,
    full_diagram: list[PersistencePair] | None = None,
) -> OptimalVolume:
    """Optimal volume and volume optimal cycle of a finite pair.

    radius=None picks the default locality ball when coordinates exist and
    falls back to the unrestricted problem otherwise.  On infeasibility the
    radius doubles until it covers the whole complex; an unrestricted
    infeasibility is a genuine bug (a persistent volume always exists) and
    raises VolumeInternalError.
    """
    if pair.essential:
        raise UnsupportedPairError(
            f"pair born at {pair.birth_index} never dies; "
            "a volume optimal cycle is defined only for finite pairs")
    has_coords = f.vertex_coords is not None
    if has_coords:
        _, min_radius = death_simplex_geometry(f, pair.death_index)
        # anything smaller would let the death simplex poke out of the ball
        radius = min_radius if radius is None else max(radius, min_radius)
    diameter = f.bounding_box_diameter() if has_coords else None
    attempts = 0
    while True:
        vlp = assemble_volume_lp(f, pair, radius)
        sol = _solve_volume(vlp, None)
        attempts += 1
        if sol.status == lp.OPTIMAL:
            break
        if sol.status == lp.NUMERICAL_FAILURE:
            raise VolumeInternalError(f"LP solver failed numerically on pair {pair}")
        if radius is None:
            raise VolumeInternalError(
                f"volume LP infeasible for finite pair {pair} even without a "
                "radius bound; this contradicts the existence guarantee")
        radius = None if radius >= diameter else min(2.0 * radius, diameter)

    retried = False
    birth_coeff = float(vlp.birth_row @ sol.x + vlp.birth_const)
    if abs(birth_coeff) <= lp.SUPPORT_TOL:
        retried = True
        scale = max(1.0, abs(vlp.birth_const))
        plus = _solve_volume(vlp, eps * scale)
        minus = _solve_volume(vlp, -eps * scale)
        if plus.status != lp.OPTIMAL and minus.status != lp.OPTIMAL:
            raise VolumeInternalError(
                f"epsilon retries infeasible for pair {pair}; "
                "no persistent volume hits the birth simplex")
        if plus.status != lp.OPTIMAL:
            sol = minus
        elif minus.status != lp.OPTIMAL:
            sol = plus
        else:
            # smaller objective wins; near-ties go to the +eps branch
            sol = minus if minus.objective < plus.objective - 1e-9 else plus
        birth_coeff = float(vlp.birth_row @ sol.x + vlp.birth_const)

    terms = {pair.death_index: 1.0}
    for j, x in enumerate(sol.x):
        if abs(x) > lp.SUPPORT_TOL:
            terms[vlp.columns[j]] = float(x)
    volume = Chain(pair.degree + 1, terms, REAL)
    cycle = _boundary_chain_of_volume(f, terms, pair.degree)
    children: list[PersistencePair] = []
    if full_diagram is not None:
        children = children_pairs(f, volume, full_diagram, pair)
    ov = OptimalVolume(
        pair=pair,
        volume=volume,
        cycle=cycle,
        children=children,
        objective=1.0 + float(np.abs(sol.x).sum()),
        radius_used=radius,
        retried_with_epsilon=retried,
        diagnostics={
            "lp_columns": len(vlp.columns),
            "lp_rows": len(vlp.rows),
            "iterations": sol.iterations,
            "radius_attempts": attempts,
            "birth_coefficient": birth_coeff,
        },
    )
    _assert_volume_invariants(f, ov)
    return ov


def _assert_volume_invariants(f: Filtration, ov: OptimalVolume) -> None:
    pair = ov.pair
    if ov.volume.coefficient_of(pair.death_index) != 1.0:
        raise VolumeInternalError("death simplex coefficient is not 1")
    for k in ov.volume.terms:
        if not pair.birth_index < k <= pair.death_index:
            raise VolumeInternalError(f"volume simplex {k} outside ({pair.birth_index}, {pair.death_index}]")
    for k in ov.cycle.terms:
        if pair.birth_index < k < pair.death_index:
            raise VolumeInternalError(f"cycle hits window simplex {k}")
    if abs(ov.cycle.coefficient_of(pair.birth_index)) <= lp.SUPPORT_TOL:
        raise VolumeInternalError("cycle misses the birth simplex")


def children_pairs(
    f: Filtration,
    volume: Chain | OptimalVolume,
    full_diagram: list[PersistencePair],
    pair: PersistencePair | None = None,
) -> list[PersistencePair]:
    """Pairs of the same degree whose death simplex sits inside the volume."""
    if isinstance(volume, OptimalVolume):
        ch, pair = volume.volume, volume.pair
    else:
        ch = volume
        if pair is None:
            raise ValueError("pair required when passing a bare chain")
    support = set(ch.terms)
    out = [
        p for p in full_diagram
        if not p.essential and p.death_index in support and p.death_index != pair.death_index
    ]
    out.sort(key=lambda p: p.birth_index)
    return out


def optimal_cycle(f: Filtration, pair: PersistencePair) -> Chain:
    """l1-minimal real cycle representing the pair at its birth.

    Equivalent form of the classical localized-generator problem: minimize
    the l1 norm over real q-cycles of the birth prefix whose coefficient on
    the birth simplex is one.  Modulo that normalization the feasible set is
    exactly {representative + boundaries + still-alive generators}.
    """
    q = pair.degree
    b = pair.birth_index
    cols = [int(k) for k in f.indices_of_dim(q) if k < b]
    rows = [int(k) for k in f.indices_of_dim(q - 1) if k < b] if q > 0 else []
    row_pos = {k: i for i, k in enumerate(rows)}
    a = np.zeros((len(rows), len(cols)))
    rhs = np.zeros(len(rows))
    for j, col in enumerate(cols):
        for face_s, sign in boundary(f.simplex(col), REAL).items():
            i = row_pos.get(f.index_of(face_s))
            if i is not None:
                a[i, j] = sign
    for face_s, sign in boundary(f.simplex(b), REAL).items():
        i = row_pos.get(f.index_of(face_s))
        if i is not None:
            rhs[i] = -sign
    sol = lp.minimize_l1(a, rhs) if cols or rows else lp.L1Solution(lp.OPTIMAL, np.zeros(0), 0.0, 0)
    if sol.status != lp.OPTIMAL:
        raise VolumeInternalError(f"optimal cycle LP returned {sol.status} for pair {pair}")
    terms = {b: 1.0}
    for j, x in enumerate(sol.x):
        if abs(x) > lp.SUPPORT_TOL:
            terms[cols[j]] = float(x)
    return Chain(q, terms, REAL)


# -- verification ------------------------------------------------------------

def _real_boundary_matrix(f: Filtration, q: int) -> tuple[np.ndarray, dict[int, int], list[int]]:
    """Full real boundary matrix of degree q+1, cached on the filtration."""
    cache = getattr(f, "_real_boundary_cache", None)
    if cache is None:
        cache = f._real_boundary_cache = {}
    hit = cache.get(q)
    if hit is not None:
        return hit
    rows = [int(k) for k in f.indices_of_dim(q)]
    row_pos = {k: i for i, k in enumerate(rows)}
    cols = [int(k) for k in f.indices_of_dim(q + 1)]
    mat = np.zeros((len(rows), len(cols)))
    for j, col in enumerate(cols):
        for face_s, sign in boundary(f.simplex(col), REAL).items():
            mat[row_pos[f.index_of(face_s)], j] = sign
    cache[q] = (mat, row_pos, cols)
    return cache[q]


def _in_real_boundary_space(f: Filtration, z: Chain, k: int) -> bool:
    full, row_pos, cols = _real_boundary_matrix(f, z.degree)
    take = np.searchsorted(np.asarray(cols), k, side="right")
    mat = full[:, :take]
    vec = np.zeros(full.shape[0])
    for idx, c in z.terms.items():
        vec[row_pos[idx]] = c
    if mat.shape[1] == 0:
        return bool(np.abs(vec).max(initial=0.0) <= lp.SUPPORT_TOL)
    sol, *_ = np.linalg.lstsq(mat, vec, rcond=None)
    resid = np.abs(mat @ sol - vec).max(initial=0.0)
    return bool(resid <= lp.SUPPORT_TOL * (1.0 + np.abs(vec).max(initial=0.0)))


def check_real_cycle_conditions(f: Filtration, pair: PersistencePair, z: Chain) -> bool:
    """Real-coefficient version of the persistence-cycle conditions."""
    if not z.terms:
        return False
    if any(f.dim(k) != pair.degree for k in z.terms):
        return False
    bnd = _boundary_chain_of_volume(f, z.terms, pair.degree - 1)
    if bnd.terms:
        return False
    if abs(z.coefficient_of(pair.birth_index)) <= lp.SUPPORT_TOL:
        return False
    if z.max_index() > pair.birth_index:
        return False
    if pair.essential:
        return True
    if not _in_real_boundary_space(f, z, pair.death_index):
        return False
    if _in_real_boundary_space(f, z, pair.death_index - 1):
        return False
    return True


def check_persistent_volume(f: Filtration, pair: PersistencePair, z: Chain) -> bool:
    """Full persistent-volume check: shape, window, birth hit, and the
    boundary being a genuine persistence cycle for the pair."""
    if pair.essential or z.degree != pair.degree + 1:
        return False
    if abs(z.coefficient_of(pair.death_index) - 1.0) > lp.FEAS_TOL:
        return False
    if any(not pair.birth_index < k <= pair.death_index for k in z.terms):
        return False
    cycle = _boundary_chain_of_volume(f, z.terms, pair.degree)
    for k in cycle.terms:
        if pair.birth_index < k < pair.death_index:
            return False
    if abs(cycle.coefficient_of(pair.birth_index)) <= lp.SUPPORT_TOL:
        return False
    return check_real_cycle_conditions(f, pair, cycle)
