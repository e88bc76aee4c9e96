"""Codimension-one persistence via the dual graph and union-find.

Sweeping the filtration from the last index down, every (n-1)-simplex joins
the two top-cells on its sides (the outside counts as one extra cell, sigma
infinity).  When the two cells lie in different trees, the root with the
smaller filtration index is attached under the larger one and the edge keeps
the facet index as its label.  Pairs, volumes, and the pair tree all read off
the resulting forest.

The reported tree stores exactly the parent chosen by that index rule; path
compression lives in a separate accelerator list so that shortcuts never
alter the reported structure.
"""
from __future__ import annotations

import numpy as np

from .simplicial import Filtration
from .reduction import PersistencePair

SIGMA_INF = -1  # public sentinel for the complement cell
_ROOT = -2


class SweepConditionError(ValueError):
    """The complex is not a codimension-one-sweepable triangulation."""


def _facet_and_cell_tables(f: Filtration):
    """Vectorised facet -> (cell slot, cell slot) matching.

    Returns (facet_indices ascending, left_slot, right_slot, cell_indices);
    slots index into cell_indices, and slot len(cell_indices) stands for
    sigma infinity (boundary facets).
    """
    n = f.ambient_dim
    facet_idx = f.indices_of_dim(n - 1)
    cell_idx = f.indices_of_dim(n)
    if len(cell_idx) == 0:
        raise SweepConditionError(f"no {n}-simplices present")
    off = f._off
    flat = f._flat
    if len(facet_idx):
        starts = off[facet_idx - 1]
        fac_rows = flat[starts[:, None] + np.arange(n)[None, :]]
    else:
        fac_rows = np.zeros((0, n), dtype=np.int64)
    cstarts = off[cell_idx - 1]
    cell_rows = flat[cstarts[:, None] + np.arange(n + 1)[None, :]]
    sub_rows = []
    for drop in range(n + 1):
        keep = [c for c in range(n + 1) if c != drop]
        sub_rows.append(cell_rows[:, keep])
    sub = np.concatenate(sub_rows, axis=0)                    # (T*(n+1), n)
    owner_slot = np.tile(np.arange(len(cell_idx)), n + 1)
    nverts = int(flat.max()) + 2 if len(flat) else 1
    if nverts ** n > 2 ** 62:
        raise SweepConditionError("vertex ids too large for facet hashing")

    def encode(rows: np.ndarray) -> np.ndarray:
        key = np.zeros(len(rows), dtype=np.int64)
        for c in range(rows.shape[1]):
            key = key * nverts + rows[:, c]
        return key

    fac_keys = encode(fac_rows)
    sub_keys = encode(sub)
    order = np.argsort(sub_keys, kind="stable")
    sub_sorted = sub_keys[order]
    owner_sorted = owner_slot[order]
    lo = np.searchsorted(sub_sorted, fac_keys, side="left")
    hi = np.searchsorted(sub_sorted, fac_keys, side="right")
    counts = hi - lo
    if len(counts) and (counts.min() < 1 or counts.max() > 2):
        bad_pos = int(np.argmax((counts < 1) | (counts > 2)))
        raise SweepConditionError(
            f"facet {int(facet_idx[bad_pos])} has {int(counts[bad_pos])} "
            "top-cell cofaces; expected 1 or 2")
    t = len(cell_idx)
    left = owner_sorted[lo] if len(counts) else np.zeros(0, dtype=np.int64)
    right = np.full(len(facet_idx), t, dtype=np.int64)
    two = counts == 2
    right[two] = owner_sorted[lo[two] + 1]
    return facet_idx, left, right, cell_idx


def dual_adjacency(f: Filtration) -> dict[int, tuple[int, int]]:
    """(n-1)-simplex index -> its one or two n-cell indices (SIGMA_INF pads)."""
    facet_idx, left, right, cell_idx = _facet_and_cell_tables(f)
    t = len(cell_idx)
    out = {}
    for i, k in enumerate(facet_idx):
        a = int(cell_idx[left[i]])
        b = SIGMA_INF if right[i] == t else int(cell_idx[right[i]])
        out[int(k)] = (a, b)
    return out


class PersistenceForest:
    """Result of the reverse sweep over one filtration."""

    ROOT = _ROOT

    def __init__(self, filtration: Filtration, cell_indices: np.ndarray,
                 tree_parent: list[int], edge_label: list[int], uf: list[int],
                 find_calls: int = 0, probe_count: int = 0):
        self.filtration = filtration
        self.cell_indices = cell_indices
        self.tree_parent = tree_parent
        self.edge_label = edge_label
        self._uf = uf
        self.find_calls = find_calls
        self.probe_count = probe_count

    @property
    def infinity_slot(self) -> int:
        return len(self.cell_indices)

    def slot_of(self, cell: int) -> int:
        if cell == SIGMA_INF:
            return self.infinity_slot
        i = int(np.searchsorted(self.cell_indices, cell))
        if i >= len(self.cell_indices) or self.cell_indices[i] != cell:
            raise KeyError(f"{cell} is not an n-cell of this filtration")
        return i

    def cell_of(self, slot: int) -> int:
        return SIGMA_INF if slot == self.infinity_slot else int(self.cell_indices[slot])

    def find_root(self, cell: int) -> int:
        """Root of the tree containing the cell, via the compressed accelerator."""
        return self.cell_of(self._find_slot(self.slot_of(cell)))

    def _find_slot(self, slot: int) -> int:
        uf = self._uf
        self.find_calls += 1
        root = slot
        while uf[root] != root:
            self.probe_count += 1
            root = uf[root]
        while uf[slot] != root:
            uf[slot], slot = root, uf[slot]
        return root

    def naive_root(self, cell: int) -> int:
        """Root by walking the reported tree edges; oracle for the accelerator."""
        slot = self.slot_of(cell)
        while self.tree_parent[slot] != _ROOT:
            slot = self.tree_parent[slot]
        return self.cell_of(slot)

    def parent_cell(self, cell: int) -> int | None:
        p = self.tree_parent[self.slot_of(cell)]
        return None if p == _ROOT else self.cell_of(p)

    def edges(self) -> list[tuple[int, int, int]]:
        """(child_cell, label, parent_cell) for every union edge."""
        out = []
        for slot in range(len(self.cell_indices)):
            p = self.tree_parent[slot]
            if p != _ROOT:
                out.append((self.cell_of(slot), self.edge_label[slot], self.cell_of(p)))
        return out

    def to_json(self, include_zero: bool = True) -> dict:
        f = self.filtration
        kids = _children_table(self)
        nodes = []
        for p in diagram_from_forest(self, include_zero=include_zero):
            parent = self.parent_cell(p.death_index)
            has_parent_pair = parent is not None and parent != SIGMA_INF \
                and self.parent_cell(parent) is not None
            nodes.append({
                "pair": p.to_json(),
                "parent_death_index": parent if has_parent_pair else None,
                "volume": sorted(volume_from_forest(self, p, kids)),
            })
        return {"degree": f.ambient_dim - 1, "nodes": nodes}


def compute_forest(f: Filtration) -> PersistenceForest:
    """Reverse sweep k = K..1 with path-compressed root lookups."""
    facet_idx, left_a, right_a, cell_idx = _facet_and_cell_tables(f)
    t = len(cell_idx)
    uf = list(range(t + 1))
    tree_parent = [_ROOT] * (t + 1)
    label = [0] * (t + 1)
    # sigma infinity compares greater than every filtration index
    cell_key = cell_idx.tolist() + [np.iinfo(np.int64).max]
    left = left_a.tolist()
    right = right_a.tolist()
    facets = facet_idx.tolist()
    probes = 0
    calls = 0
    for i in range(len(facets) - 1, -1, -1):
        x = left[i]
        root = x
        while uf[root] != root:
            probes += 1
            root = uf[root]
        while uf[x] != root:
            uf[x], x = root, uf[x]
        a = root
        x = right[i]
        root = x
        while uf[root] != root:
            probes += 1
            root = uf[root]
        while uf[x] != root:
            uf[x], x = root, uf[x]
        b = root
        calls += 2
        if a == b:
            continue
        child, parent = (a, b) if cell_key[a] < cell_key[b] else (b, a)
        tree_parent[child] = parent
        label[child] = facets[i]
        uf[child] = parent
    return PersistenceForest(f, cell_idx.astype(np.int64), tree_parent, label, uf,
                             find_calls=calls, probe_count=probes)


def diagram_from_forest(forest: PersistenceForest, include_zero: bool = True) -> list[PersistencePair]:
    """One degree-(n-1) pair per union edge: (label, child cell)."""
    f = forest.filtration
    q = f.ambient_dim - 1
    pairs = []
    for child, k, _parent in forest.edges():
        pairs.append(PersistencePair(q, k, child, f.value(k), f.value(child)))
    if not include_zero:
        pairs = [p for p in pairs if not p.zero_persistence]
    pairs.sort()
    return pairs


def _children_table(forest: PersistenceForest) -> list[list[int]]:
    kids: list[list[int]] = [[] for _ in range(len(forest.cell_indices) + 1)]
    for slot in range(len(forest.cell_indices)):
        p = forest.tree_parent[slot]
        if p != _ROOT:
            kids[p].append(slot)
    return kids


def volume_from_forest(forest: PersistenceForest, pair: PersistencePair,
                       _kids: list[list[int]] | None = None) -> set[int]:
    """Cells of the optimal volume: descendants of the death cell reachable
    through edges labelled above the birth index, the death cell included."""
    d_slot = forest.slot_of(pair.death_index)
    if forest.tree_parent[d_slot] == _ROOT or forest.edge_label[d_slot] != pair.birth_index:
        raise KeyError(f"{pair} is not an edge of this forest")
    kids = _children_table(forest) if _kids is None else _kids
    out = set()
    stack = [d_slot]
    while stack:
        slot = stack.pop()
        out.add(forest.cell_of(slot))
        for c in kids[slot]:
            if forest.edge_label[c] > pair.birth_index:
                stack.append(c)
    return out


def descendant_cells(forest: PersistenceForest, cell: int) -> set[int]:
    """All descendants regardless of labels, the cell included (oracle use)."""
    kids = _children_table(forest)
    out = set()
    stack = [forest.slot_of(cell)]
    while stack:
        slot = stack.pop()
        out.add(forest.cell_of(slot))
        stack.extend(kids[slot])
    return out


def persistence_tree(forest: PersistenceForest, include_zero: bool = True) -> dict[PersistencePair, PersistencePair | None]:
    """Pair-level tree: pair -> parent pair (None for the roots)."""
    f = forest.filtration
    q = f.ambient_dim - 1
    pair_of_cell: dict[int, PersistencePair] = {}
    for child, k, _parent in forest.edges():
        pair_of_cell[child] = PersistencePair(q, k, child, f.value(k), f.value(child))
    out: dict[PersistencePair, PersistencePair | None] = {}
    for child, _k, parent in forest.edges():
        out[pair_of_cell[child]] = pair_of_cell.get(parent)
    if not include_zero:
        def visible(p):
            while p is not None and p.zero_persistence:
                p = out[p]
            return p
        out = {p: visible(par) for p, par in out.items() if not p.zero_persistence}
    return out


def sweep_condition_report(f: Filtration) -> list[str]:
    """Checkable consequences of the sweep preconditions: every facet has one
    or two top cofaces and every lower simplex is a face one dimension up."""
    problems = []
    n = f.ambient_dim
    if f.max_dim() != n:
        problems.append(f"maximal simplex dimension {f.max_dim()} != ambient {n}")
        return problems
    try:
        _facet_and_cell_tables(f)
    except SweepConditionError as e:
        problems.append(str(e))
    face_of_higher: dict[int, set] = {q: set() for q in range(n)}
    for _k, s in f.simplices():
        if len(s) == 1:
            continue
        q = len(s) - 2
        for i in range(len(s)):
            face_of_higher[q].add(s[:i] + s[i + 1 :])
    for k, s in f.simplices():
        q = len(s) - 1
        if q < n and s not in face_of_higher[q]:
            problems.append(f"simplex {k} of dim {q} is not a face of any ({q + 1})-simplex")
    return problems
