"""Z2 boundary-matrix reduction, persistence diagrams, and persistence cycles.

Columns are stored as Python integers used as bitmasks (bit k set means the
simplex with filtration index k participates), so column addition is a single
XOR on arbitrary-size ints.  The reduction keeps the change-of-basis matrix V
with R = D*V, which supplies cycle representatives for essential classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .simplicial import Chain, Filtration, Z2


def _mask_support(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _low(mask: int) -> int:
    """Largest set bit, 0 when the mask is empty."""
    return mask.bit_length() - 1 if mask else 0


@total_ordering
@dataclass(frozen=True)
class PersistencePair:
    degree: int
    birth_index: int
    death_index: int | None
    birth_value: float
    death_value: float | None

    @property
    def essential(self) -> bool:
        return self.death_index is None

    @property
    def zero_persistence(self) -> bool:
        return self.death_value is not None and self.death_value == self.birth_value

    @property
    def persistence(self) -> float:
        if self.essential:
            return float("inf")
        return self.death_value - self.birth_value

    def _key(self):
        return (self.degree, self.birth_index, self.death_index or 0)

    def __lt__(self, other) -> bool:
        return self._key() < other._key()

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "birth_index": self.birth_index,
            "death_index": self.death_index,
            "birth_value": self.birth_value,
            "death_value": self.death_value,
            "essential": self.essential,
        }


class ReducedMatrices:
    """Result of the left-to-right column reduction over Z2."""

    def __init__(self, f: Filtration, r_cols: list[int], v_cols: list[int], pivot: dict[int, int]):
        self.filtration = f
        self.r = r_cols  # 1-based: r[k] is the reduced column of sigma_k
        self.v = v_cols
        self.pivot = pivot  # low index -> column index owning that pivot

    def r_support(self, j: int) -> list[int]:
        return _mask_support(self.r[j])

    def v_support(self, j: int) -> list[int]:
        return _mask_support(self.v[j])

    def low(self, j: int) -> int | None:
        return _low(self.r[j]) if self.r[j] else None

    def in_boundary_space(self, mask: int, k: int) -> bool:
        """Is the Z2 cycle given by `mask` a boundary within the prefix X_k?

        Reduces against the stored R columns; their lows are pairwise
        distinct, so greedy elimination is exact.
        """
        while mask:
            l = _low(mask)
            j = self.pivot.get(l)
            if j is None or j > k:
                return False
            mask ^= self.r[j]
        return True


def reduce(f: Filtration) -> ReducedMatrices:
    """Standard persistence reduction: add earlier columns until lows differ."""
    size = len(f)
    r: list[int] = [0] * (size + 1)
    v: list[int] = [0] * (size + 1)
    pivot: dict[int, int] = {}
    for j in range(1, size + 1):
        col = 0
        s = f.simplex(j)
        if len(s) > 1:
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                col |= 1 << f.index_of(face)
        basis = 1 << j
        while col:
            l = _low(col)
            owner = pivot.get(l)
            if owner is None:
                pivot[l] = j
                break
            col ^= r[owner]
            basis ^= v[owner]
        r[j] = col
        v[j] = basis
    return ReducedMatrices(f, r, v, pivot)


def diagram(
    f: Filtration,
    q: int,
    reduced: ReducedMatrices | None = None,
    include_zero: bool = False,
) -> list[PersistencePair]:
    """Degree-q persistence pairs; zero-persistence pairs are filtered unless asked for."""
    red = reduced if reduced is not None else reduce(f)
    pairs: list[PersistencePair] = []
    paired_births = set()
    for j in range(1, len(f) + 1):
        if red.r[j] and f.dim(j) == q + 1:
            i = _low(red.r[j])
            paired_births.add(i)
            pairs.append(PersistencePair(q, i, j, f.value(i), f.value(j)))
    for i in range(1, len(f) + 1):
        if f.dim(i) == q and not red.r[i] and i not in red.pivot:
            pairs.append(PersistencePair(q, i, None, f.value(i), None))
    if not include_zero:
        pairs = [p for p in pairs if not p.zero_persistence]
    pairs.sort()
    return pairs


def find_pair(f: Filtration, red: ReducedMatrices, death_index: int) -> PersistencePair:
    """The finite pair whose death simplex has the given index."""
    if not 1 <= death_index <= len(f):
        raise KeyError(f"index {death_index} out of range")
    if not red.r[death_index]:
        raise KeyError(f"simplex {death_index} is a birth, not a death")
    b = _low(red.r[death_index])
    q = f.dim(death_index) - 1
    return PersistencePair(q, b, death_index, f.value(b), f.value(death_index))


def persistence_cycle(f: Filtration, pair: PersistencePair, reduced: ReducedMatrices | None = None) -> Chain:
    """A Z2 persistence cycle representing the pair.

    Finite pairs use the reduced column of the death simplex; essential pairs
    use the V column of the birth simplex, which is a cycle because its R
    column vanished.
    """
    red = reduced if reduced is not None else reduce(f)
    if pair.essential:
        if red.r[pair.birth_index]:
            raise KeyError(f"pair {pair} not found: birth column is not a cycle")
        mask = red.v[pair.birth_index]
    else:
        if not red.r[pair.death_index] or _low(red.r[pair.death_index]) != pair.birth_index:
            raise KeyError(f"pair {pair} not in diagram")
        mask = red.r[pair.death_index]
    return Chain(pair.degree, {k: 1 for k in _mask_support(mask)}, Z2)


def check_cycle_conditions(
    f: Filtration,
    pair: PersistencePair,
    z: Chain,
    reduced: ReducedMatrices | None = None,
) -> bool:
    """Verify that a Z2 chain is a persistence cycle for the pair.

    Checks: dz = 0; the support includes the birth simplex and nothing after
    it; and for finite pairs the cycle becomes a boundary exactly at the death
    prefix (membership decided against the reduced columns).
    """
    if not z.terms:
        return False
    if any(f.dim(k) != pair.degree for k in z.terms):
        return False
    bnd = 0
    for k in z.terms:
        s = f.simplex(k)
        for i in range(len(s)):
            if len(s) > 1:
                bnd ^= 1 << f.index_of(s[:i] + s[i + 1 :])
    if bnd:
        return False
    if pair.birth_index not in z.terms:
        return False
    if z.max_index() > pair.birth_index:
        return False
    if pair.essential:
        return True
    red = reduced if reduced is not None else reduce(f)
    mask = 0
    for k in z.terms:
        mask |= 1 << k
    if not red.in_boundary_space(mask, pair.death_index):
        return False
    if red.in_boundary_space(mask, pair.death_index - 1):
        return False
    return True


def diagram_json(f: Filtration, q: int, reduced: ReducedMatrices | None = None,
                 include_zero: bool = False) -> dict:
    return {
        "degree": q,
        "pairs": [p.to_json() for p in diagram(f, q, reduced, include_zero)],
    }
