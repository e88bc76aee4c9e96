"""Simplices, chains, boundary operators, and filtrations.

A simplex is a strictly increasing tuple of non-negative vertex ids; the
sorted order fixes the orientation used for real coefficients.  A filtration
is a sequence of simplices, indexed 1..K, whose values are non-decreasing and
whose every prefix is closed under taking faces.  Chains are sparse mappings
from filtration index to coefficient (the standalone `boundary` of a bare
simplex, which has no index, maps faces to coefficients instead).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

Simplex = tuple[int, ...]

Z2 = "z2"
REAL = "real"


class FiltrationError(ValueError):
    """Raised for inputs that cannot form a valid filtration."""


def as_simplex(vertices: Iterable[int]) -> Simplex:
    s = tuple(int(v) for v in vertices)
    if not s:
        raise ValueError("simplex needs at least one vertex")
    if any(v < 0 for v in s):
        raise ValueError(f"negative vertex id in {s}")
    if any(s[i] >= s[i + 1] for i in range(len(s) - 1)):
        raise ValueError(f"vertices must be strictly increasing, got {s}")
    return s


def simplex_dim(s: Simplex) -> int:
    return len(s) - 1


def facets(s: Simplex) -> list[Simplex]:
    """Codimension-1 faces, in the order obtained by dropping vertex i."""
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1 :] for i in range(len(s))]


def boundary(s: Simplex, coeff_domain: str = REAL) -> dict[Simplex, float]:
    """Boundary of a bare simplex as a face -> coefficient mapping.

    Over the reals the face dropping vertex i gets sign (-1)^i; over Z2 every
    face gets coefficient 1.  Dimension-0 input yields the empty chain.
    """
    out: dict[Simplex, float] = {}
    if len(s) == 1:
        return out
    for i, f in enumerate(facets(s)):
        out[f] = 1 if coeff_domain == Z2 else (-1.0) ** i
    return out


def boundary_of_chain(terms: dict[Simplex, float], coeff_domain: str = REAL) -> dict[Simplex, float]:
    """Boundary of a simplex-keyed chain, dropping cancelled faces."""
    acc: dict[Simplex, float] = {}
    for s, c in terms.items():
        for f, sign in boundary(s, coeff_domain).items():
            acc[f] = acc.get(f, 0) + c * sign
    if coeff_domain == Z2:
        return {f: c % 2 for f, c in acc.items() if c % 2}
    return {f: c for f, c in acc.items() if c != 0}


@dataclass
class Chain:
    """Sparse chain over a filtration: index -> coefficient, plus its degree."""

    degree: int
    terms: dict[int, float]
    coeff_domain: str = REAL

    def coefficient_of(self, index: int) -> float:
        return self.terms.get(index, 0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.terms))

    def max_index(self) -> int:
        return max(self.terms) if self.terms else 0

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)


class Filtration:
    """Ordered simplicial filtration with optional vertex geometry.

    Storage is flat (one int array of concatenated vertex lists plus offsets)
    so that million-simplex filtrations stay cheap; simplex tuples are
    materialised on demand.  Indices are 1-based everywhere in the public API.
    """

    def __init__(
        self,
        ambient_dim: int,
        vertices_flat: np.ndarray,
        offsets: np.ndarray,
        values: np.ndarray,
        vertex_coords: dict[int, tuple[float, ...]] | None = None,
        vertex_weights: dict[int, float] | None = None,
    ):
        self.ambient_dim = int(ambient_dim)
        self._flat = np.asarray(vertices_flat, dtype=np.int64)
        self._off = np.asarray(offsets, dtype=np.int64)
        self.values = np.asarray(values, dtype=np.float64)
        self.vertex_coords = vertex_coords
        self.vertex_weights = vertex_weights
        self.dims = np.diff(self._off).astype(np.int8) - 1
        self._index_of: dict[Simplex, int] | None = None

    @classmethod
    def from_simplices(
        cls,
        simplices: Sequence[tuple[Simplex, float]],
        ambient_dim: int,
        vertex_coords: dict[int, tuple[float, ...]] | None = None,
        vertex_weights: dict[int, float] | None = None,
    ) -> "Filtration":
        flat: list[int] = []
        off = [0]
        vals = []
        for s, v in simplices:
            flat.extend(s)
            off.append(len(flat))
            vals.append(v)
        return cls(ambient_dim, np.array(flat, dtype=np.int64), np.array(off), np.array(vals),
                   vertex_coords, vertex_weights)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def size(self) -> int:
        return len(self.values)

    def simplex(self, index: int) -> Simplex:
        if not 1 <= index <= len(self):
            raise IndexError(f"filtration index {index} out of range 1..{len(self)}")
        return tuple(int(v) for v in self._flat[self._off[index - 1] : self._off[index]])

    def value(self, index: int) -> float:
        return float(self.values[index - 1])

    def dim(self, index: int) -> int:
        return int(self.dims[index - 1])

    def simplices(self) -> Iterator[tuple[int, Simplex]]:
        for k in range(1, len(self) + 1):
            yield k, self.simplex(k)

    def index_of(self, s: Simplex) -> int:
        if self._index_of is None:
            self._index_of = {self.simplex(k): k for k in range(1, len(self) + 1)}
        k = self._index_of.get(tuple(s))
        if k is None:
            raise KeyError(f"simplex {tuple(s)} not in filtration")
        return k

    def __contains__(self, s: Simplex) -> bool:
        try:
            self.index_of(s)
            return True
        except KeyError:
            return False

    def indices_of_dim(self, q: int) -> np.ndarray:
        """1-based indices of all q-simplices, ascending."""
        return np.nonzero(self.dims == q)[0] + 1

    def max_dim(self) -> int:
        return int(self.dims.max()) if len(self) else -1

    def coords_array(self) -> tuple[np.ndarray, dict[int, int]]:
        """Vertex coordinates as an array plus id -> row lookup."""
        if self.vertex_coords is None:
            raise FiltrationError("filtration has no vertex coordinates")
        ids = sorted(self.vertex_coords)
        pos = {vid: i for i, vid in enumerate(ids)}
        arr = np.array([self.vertex_coords[v] for v in ids], dtype=np.float64)
        return arr, pos

    def bounding_box_diameter(self) -> float:
        arr, _ = self.coords_array()
        return float(np.linalg.norm(arr.max(axis=0) - arr.min(axis=0)))

    def boundary_chain(self, index: int, coeff_domain: str = REAL) -> Chain:
        """Boundary of sigma_index as an index-keyed chain."""
        s = self.simplex(index)
        terms: dict[int, float] = {}
        for f, c in boundary(s, coeff_domain).items():
            terms[self.index_of(f)] = c
        return Chain(simplex_dim(s) - 1, terms, coeff_domain)


def validate_filtration(f: Filtration) -> ValidationReport:
    """Check index/value ordering, uniqueness, and prefix face closure."""
    violations: list[str] = []
    seen: dict[Simplex, int] = {}
    prev_val = -np.inf
    for k, s in f.simplices():
        if s in seen:
            violations.append(f"index {k}: simplex {s} already appeared at index {seen[s]}")
        else:
            seen[s] = k
        v = f.value(k)
        if v < prev_val:
            violations.append(f"index {k}: value {v} decreases below {prev_val}")
        prev_val = max(prev_val, v)
        for face in facets(s):
            j = seen.get(face)
            if j is None:
                violations.append(f"index {k}: face {face} of {s} missing from earlier prefix")
    return ValidationReport(not violations, violations)


def canonical_sort(
    raw: Sequence[tuple[Simplex, float]],
    ambient_dim: int,
    vertex_coords: dict[int, tuple[float, ...]] | None = None,
    vertex_weights: dict[int, float] | None = None,
) -> Filtration:
    """Order (simplex, value) pairs by (value, dim, lexicographic vertices).

    Raises FiltrationError when a face carries a strictly larger value than
    one of its cofaces, since no ordering could then satisfy face closure.
    """
    items = [(as_simplex(s), float(v)) for s, v in raw]
    value_of = {s: v for s, v in items}
    if len(value_of) != len(items):
        raise FiltrationError("duplicate simplex in input")
    for s, v in items:
        for face in facets(s):
            fv = value_of.get(face)
            if fv is None:
                raise FiltrationError(f"face {face} of {s} missing from input")
            if fv > v:
                raise FiltrationError(
                    f"face {face} has value {fv} > {v} of coface {s}; not filtration-compatible")
    items.sort(key=lambda it: (it[1], len(it[0]), it[0]))
    return Filtration.from_simplices(items, ambient_dim, vertex_coords, vertex_weights)


def cofaces(f: Filtration, s: Simplex, target_dim: int) -> list[int]:
    """Indices of all target_dim simplices of f having s as a face, ascending."""
    s = tuple(s)
    f.index_of(s)  # raises KeyError when absent
    sset = set(s)
    out = []
    for k in f.indices_of_dim(target_dim):
        t = f.simplex(int(k))
        if sset.issubset(t):
            out.append(int(k))
    return out


# ---------------------------------------------------------------------------
# FILT v1 text format
#
#   filt 1 <ambient_dim> <K>
#   <index> <value> <dim> <v0> ... <vdim>        (K lines, index ascending)
#   points                                        (optional section)
#   <id> <x1> ... <xn> [weight]                   (one per vertex id)
# ---------------------------------------------------------------------------

def write_filt(f: Filtration, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"filt 1 {f.ambient_dim} {len(f)}\n")
        for k, s in f.simplices():
            vs = " ".join(str(v) for v in s)
            fh.write(f"{k} {f.value(k):.17g} {f.dim(k)} {vs}\n")
        if f.vertex_coords is not None:
            fh.write("points\n")
            weights = f.vertex_weights or {}
            for vid in sorted(f.vertex_coords):
                xs = " ".join(f"{x:.17g}" for x in f.vertex_coords[vid])
                if vid in weights:
                    fh.write(f"{vid} {xs} {weights[vid]:.17g}\n")
                else:
                    fh.write(f"{vid} {xs}\n")


def read_filt(path: str) -> Filtration:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FiltrationError("empty FILT file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "filt" or head[1] != "1":
        raise FiltrationError(f"bad FILT header: {lines[0]!r}")
    ambient_dim, count = int(head[2]), int(head[3])
    simplices: list[tuple[Simplex, float]] = []
    coords: dict[int, tuple[float, ...]] = {}
    weights: dict[int, float] = {}
    in_points = False
    for ln in lines[1:]:
        if ln == "points":
            in_points = True
            continue
        parts = ln.split()
        if not in_points:
            idx, val, dim = int(parts[0]), float(parts[1]), int(parts[2])
            verts = as_simplex(parts[3 : 3 + dim + 1])
            if len(verts) != dim + 1:
                raise FiltrationError(f"simplex line {ln!r}: dim/vertex mismatch")
            if idx != len(simplices) + 1:
                raise FiltrationError(f"simplex line {ln!r}: expected index {len(simplices) + 1}")
            simplices.append((verts, val))
        else:
            vid = int(parts[0])
            rest = [float(x) for x in parts[1:]]
            if len(rest) == ambient_dim + 1:
                coords[vid] = tuple(rest[:-1])
                weights[vid] = rest[-1]
            elif len(rest) == ambient_dim:
                coords[vid] = tuple(rest)
            else:
                raise FiltrationError(f"points line {ln!r}: wrong coordinate count")
    if len(simplices) != count:
        raise FiltrationError(f"header promises {count} simplices, file has {len(simplices)}")
    f = Filtration.from_simplices(
        simplices, ambient_dim,
        coords or None, weights or None)
    report = validate_filtration(f)
    if not report.ok:
        raise FiltrationError("invalid filtration: " + "; ".join(report.violations[:5]))
    return f
