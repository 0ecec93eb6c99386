"""Nerves, pullbacks, restrictions ``X_{|sigma}`` and under-categories ``X_{sigma/}``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import CapError, InputError
from ..fincat import FinCategory, FunctorData
from .sset import IntArray, SimplicialMap, SimplicialSet, simplex_map


def _lookup(sorted_keys: IntArray, queries: IntArray) -> IntArray:
    """Positions of ``queries`` in ``sorted_keys``; ``-1`` where absent."""
    pos = np.searchsorted(sorted_keys, queries)
    pos = np.minimum(pos, max(sorted_keys.size - 1, 0))
    hit = sorted_keys[pos] == queries if sorted_keys.size else np.zeros(queries.shape, dtype=bool)
    return np.where(hit, pos, -1)


class _RowIndex:
    """Lookup of integer rows in a lexicographically sorted row table."""

    def __init__(self, rows: IntArray, base: int):
        self.base = max(base, 1)
        self.width = rows.shape[1]
        if self.width and float(self.base) ** self.width >= 2.0 ** 62:
            raise InputError("nerve too large to index")
        self.keys = self.encode(rows)
        if self.keys.size > 1 and np.any(np.diff(self.keys) <= 0):
            raise AssertionError("rows are not strictly sorted")

    def encode(self, rows: IntArray) -> IntArray:
        key = np.zeros(rows.shape[0], dtype=np.int64)
        for k in range(rows.shape[1]):
            key = key * self.base + rows[:, k]
        return key

    def find(self, rows: IntArray) -> IntArray:
        return _lookup(self.keys, self.encode(rows))


# -- nerve ----------------------------------------------------------------


def _chains(C: FinCategory, cap: int) -> list[IntArray]:
    M = C.n_morphisms
    succ = [np.array(sorted(C.out_of(int(C.tgt[f]))), dtype=np.int64) for f in range(M)]
    sizes = np.array([s.size for s in succ], dtype=np.int64)
    chains = [np.arange(C.n_objects, dtype=np.int64).reshape(-1, 1),
              np.arange(M, dtype=np.int64).reshape(-1, 1)]
    for _ in range(2, cap + 1):
        prev = chains[-1]
        last = prev[:, -1]
        rows = np.repeat(prev, sizes[last], axis=0)
        nxt = np.concatenate([succ[f] for f in last]) if last.size else np.zeros(0, dtype=np.int64)
        chains.append(np.column_stack([rows, nxt]) if rows.size else np.zeros((0, prev.shape[1] + 1), dtype=np.int64))
    return chains[: cap + 1]


def nerve(C: FinCategory, cap: int) -> SimplicialSet:
    """d-cells are composable chains ``(f_1, ..., f_d)`` in lexicographic order.

    Vertices are objects and edges are morphisms. Degeneracies insert
    identities and exist exactly when ``C`` is unital.
    """
    if cap < 1:
        raise InputError("the nerve needs cap >= 1")
    chains = _chains(C, cap)
    M = C.n_morphisms
    table, src, tgt = C.table, C.src, C.tgt
    index = [None] + [_RowIndex(chains[d], M) for d in range(1, cap + 1)]
    faces = [np.zeros((C.n_objects, 0), dtype=np.int64), np.column_stack([tgt, src]).astype(np.int64)]
    for d in range(2, cap + 1):
        ch = chains[d]
        cols = []
        for i in range(d + 1):
            if i == 0:
                rows = ch[:, 1:]
            elif i == d:
                rows = ch[:, :-1]
            else:
                comp = table[ch[:, i], ch[:, i - 1]]
                rows = np.column_stack([ch[:, : i - 1], comp, ch[:, i + 1:]])
            cols.append(index[d - 1].find(rows))
        faces.append(np.column_stack(cols))
    degens = None
    if C.is_unital:
        ident = np.array([C.identity(x) for x in range(C.n_objects)], dtype=np.int64)
        degens = [ident.reshape(-1, 1)]
        for d in range(1, cap):
            ch = chains[d]
            objs = np.column_stack([src[ch[:, 0]], tgt[ch]])
            cols = []
            for j in range(d + 1):
                rows = np.column_stack([ch[:, :j], ident[objs[:, j]], ch[:, j:]])
                cols.append(index[d + 1].find(rows))
            degens.append(np.column_stack(cols))
    X = SimplicialSet(faces, degens, True, chains, "N(C)")
    X._cache["chain_index"] = index
    return X


def nerve_map(F: FunctorData, cap: int, X: SimplicialSet | None = None,
              Y: SimplicialSet | None = None) -> SimplicialMap:
    """``N(F): N(D) -> N(C)``; pass prebuilt nerves to share them."""
    X = nerve(F.domain, cap) if X is None else X
    Y = nerve(F.codomain, cap) if Y is None else Y
    mm = np.asarray(F.morphism_map, dtype=np.int64)
    levels = [np.asarray(F.object_map, dtype=np.int64)]
    index = Y._cache["chain_index"]
    for d in range(1, min(cap, X.cap, Y.cap) + 1):
        levels.append(index[d].find(mm[X.labels[d]]))
    return SimplicialMap(X, Y, levels)


# -- pullbacks ------------------------------------------------------------


@dataclass(eq=False)
class Pullback:
    """``X x_Y Z`` with cells ordered by ``(x, z)``."""

    sset: SimplicialSet
    p: SimplicialMap
    q: SimplicialMap
    left: list[IntArray]
    right: list[IntArray]

    def pr_left(self) -> SimplicialMap:
        return SimplicialMap(self.sset, self.p.domain, self.left)

    def pr_right(self) -> SimplicialMap:
        return SimplicialMap(self.sset, self.q.domain, self.right)

    def index(self, d: int, x, z) -> IntArray:
        n = self.q.domain.count(d)
        keys = self.left[d] * n + self.right[d]
        return _lookup(keys, np.asarray(x, dtype=np.int64) * n + np.asarray(z, dtype=np.int64))


def pullback(p: SimplicialMap, q: SimplicialMap) -> Pullback:
    if p.codomain is not q.codomain:
        raise InputError("pullback needs maps with a common codomain")
    X, Z = p.domain, q.domain
    cap = min(p.cap, q.cap)
    left, right, keys = [], [], []
    for d in range(cap + 1):
        px, qz = p.levels[d], q.levels[d]
        order = np.argsort(qz, kind="stable")
        sq = qz[order]
        lo = np.searchsorted(sq, px, "left")
        counts = np.searchsorted(sq, px, "right") - lo
        total = int(counts.sum())
        ll = np.repeat(np.arange(px.size, dtype=np.int64), counts)
        offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
        rr = order[np.repeat(lo, counts) + offsets].astype(np.int64)
        left.append(ll)
        right.append(rr)
        keys.append(ll * Z.count(d) + rr)
    faces = [np.zeros((left[0].size, 0), dtype=np.int64)]
    for d in range(1, cap + 1):
        q_keys = X.faces[d][left[d]] * Z.count(d - 1) + Z.faces[d][right[d]]
        faces.append(_lookup(keys[d - 1], q_keys))
    degens = None
    if X.is_simplicial and Z.is_simplicial:
        degens = []
        for d in range(cap):
            q_keys = X.degeneracies[d][left[d]] * Z.count(d + 1) + Z.degeneracies[d][right[d]]
            degens.append(_lookup(keys[d + 1], q_keys))
    P = SimplicialSet(faces, degens, X.truncated or Z.truncated or cap < max(X.cap, Z.cap),
                      None, f"{X.name} x {Z.name}")
    return Pullback(P, p, q, left, right)


def restriction(p: SimplicialMap, n: int, cell: int) -> Pullback:
    """``X_{|sigma} = X x_Y Delta^n`` for the ``n``-cell ``sigma`` of the codomain."""
    return pullback(p, simplex_map(p.codomain, n, cell, p.cap))


def restrict(p: SimplicialMap, n: int, cell: int) -> SimplicialMap:
    """The restricted map ``p_{|sigma}: X_{|sigma} -> Delta^n``."""
    return restriction(p, n, cell).pr_right()


def fiber(p: SimplicialMap, vertex: int) -> Pullback:
    """``X_{|v}``, the strict fiber over a vertex of the codomain."""
    return restriction(p, 0, vertex)


# -- under-categories -----------------------------------------------------


@dataclass(eq=False)
class UnderCategory:
    """``X_{sigma/}``; ``cells[l]`` lists the parent ``(n + l + 1)``-cells."""

    sset: SimplicialSet
    base: SimplicialSet
    n: int
    cell: int
    cells: list[IntArray]

    def projection(self) -> SimplicialMap:
        """Restriction to the back ``l + 1`` vertices."""
        X, n = self.base, self.n
        return SimplicialMap(self.sset, X, [X.back(n + l + 1, l)[c] for l, c in enumerate(self.cells)])

    def index(self, l: int, parents) -> IntArray:
        return _lookup(self.cells[l], np.asarray(parents, dtype=np.int64))


def under_category(X: SimplicialSet, n: int, cell: int, upto: int | None = None) -> UnderCategory:
    X.require(n)
    top = X.cap - n - 1
    if top < 0 or (upto is not None and upto > top):
        need = n + 1 + (0 if upto is None else upto)
        raise CapError(f"under-category at an {n}-cell needs cap >= {need}, have {X.cap}")
    if not 0 <= cell < X.count(n):
        raise InputError(f"no {n}-cell {cell}")
    cells = [np.flatnonzero(X.front(n + l + 1, n) == cell).astype(np.int64) for l in range(top + 1)]
    faces = [np.zeros((cells[0].size, 0), dtype=np.int64)]
    for l in range(1, top + 1):
        m = n + l + 1
        raw = X.faces[m][cells[l]][:, n + 1:]
        faces.append(_lookup(cells[l - 1], raw))
    degens = None
    if X.is_simplicial:
        degens = [_lookup(cells[l + 1], X.degeneracies[n + l + 1][cells[l]][:, n + 1:]) for l in range(top)]
    U = SimplicialSet(faces, degens, X.truncated, cells, f"{X.name}_{{{n}:{cell}/}}")
    return UnderCategory(U, X, n, cell, cells)


def under_map(p: SimplicialMap, U: UnderCategory, V: UnderCategory) -> SimplicialMap:
    """``X_{sigma/} -> Y_{p(sigma)/}`` induced by ``p``."""
    if int(p.levels[U.n][U.cell]) != V.cell or U.n != V.n:
        raise InputError("target under-category does not sit under p(sigma)")
    top = min(U.sset.cap, V.sset.cap)
    levels = [V.index(l, p.levels[U.n + l + 1][U.cells[l]]) for l in range(top + 1)]
    return SimplicialMap(U.sset, V.sset, levels)


def under_face_map(U: UnderCategory, V: UnderCategory, i: int) -> SimplicialMap:
    """Drop front vertex ``i``: ``X_{sigma/} -> X_{d_i sigma/}``."""
    if V.base is not U.base or V.n != U.n - 1:
        raise InputError("under-categories do not match")
    X = U.base
    top = min(U.sset.cap, V.sset.cap)
    levels = [V.index(l, X.faces[U.n + l + 1][U.cells[l], i]) for l in range(top + 1)]
    return SimplicialMap(U.sset, V.sset, levels)
