"""Dimension-capped simplicial and semi-simplicial sets stored extensionally.

Cells of degree ``d`` are the integers ``0..count(d)-1``. ``faces[d]`` is an
int64 array of shape ``(count(d), d + 1)`` whose column ``i`` is ``d_i``;
``degeneracies[d]`` (for ``d < cap``) has column ``j`` equal to ``s_j``.
Without degeneracies the object is semi-simplicial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np

from ..errors import CapError, InputError

IntArray = np.ndarray


def _empty(rows: int, cols: int) -> IntArray:
    return np.zeros((rows, cols), dtype=np.int64)


@dataclass(eq=False)
class SimplicialSet:
    faces: list[IntArray]
    degeneracies: list[IntArray] | None = None
    truncated: bool = True
    labels: list[Sequence[Hashable]] | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.faces:
            raise InputError("a simplicial set needs at least degree 0")
        vertices = np.asarray(self.faces[0], dtype=np.int64)
        if vertices.ndim != 2 or vertices.shape[1] != 0:
            raise InputError("faces[0] must have shape (vertex count, 0)")
        self.faces = [vertices] + [np.asarray(f, dtype=np.int64).reshape(-1, d + 1)
                                   for d, f in enumerate(self.faces[1:], start=1)]
        if self.degeneracies is not None:
            if len(self.degeneracies) != self.cap:
                raise InputError("degeneracies must be given for degrees 0..cap-1")
            self.degeneracies = [np.asarray(s, dtype=np.int64).reshape(-1, d + 1)
                                 for d, s in enumerate(self.degeneracies)]

    @property
    def cap(self) -> int:
        return len(self.faces) - 1

    @property
    def is_simplicial(self) -> bool:
        return self.degeneracies is not None

    def count(self, d: int) -> int:
        self.require(d)
        return self.faces[d].shape[0]

    def counts(self) -> list[int]:
        return [f.shape[0] for f in self.faces]

    def require(self, d: int) -> None:
        if d > self.cap:
            raise CapError(f"degree {d} requested but only degrees up to {self.cap} are stored")
        if d < 0:
            raise InputError(f"negative degree {d}")

    def face(self, d: int, i: int, cell) -> int:
        return self.faces[d][cell, i]

    # -- derived tables ---------------------------------------------------

    def vertices(self, d: int) -> IntArray:
        """Vertex ``k`` of every ``d``-cell, as an array of shape ``(count(d), d + 1)``."""
        self.require(d)
        key = ("vertices", d)
        if key not in self._cache:
            if d == 0:
                table = np.arange(self.count(0), dtype=np.int64).reshape(-1, 1)
            else:
                lower = self.vertices(d - 1)
                table = np.empty((self.count(d), d + 1), dtype=np.int64)
                table[:, :d] = lower[self.faces[d][:, d]]
                table[:, d] = lower[self.faces[d][:, 0], d - 1]
            self._cache[key] = table
        return self._cache[key]

    def front(self, d: int, k: int) -> IntArray:
        """Face on vertices ``0..k`` of every ``d``-cell."""
        self.require(d)
        idx = np.arange(self.count(d), dtype=np.int64)
        for m in range(d, k, -1):
            idx = self.faces[m][idx, m]
        return idx

    def back(self, d: int, k: int) -> IntArray:
        """Face on the last ``k + 1`` vertices of every ``d``-cell."""
        self.require(d)
        idx = np.arange(self.count(d), dtype=np.int64)
        for m in range(d, k, -1):
            idx = self.faces[m][idx, 0]
        return idx

    def nondegenerate(self, d: int) -> IntArray:
        """Boolean mask of cells outside the image of every degeneracy."""
        self.require(d)
        key = ("nondeg", d)
        if key not in self._cache:
            mask = np.ones(self.count(d), dtype=bool)
            if self.is_simplicial and d > 0:
                mask[self.degeneracies[d - 1].ravel()] = False
            self._cache[key] = mask
        return self._cache[key]

    def total_degeneracy(self, v: int, d: int) -> int:
        """The constant ``d``-cell at vertex ``v``."""
        if not self.is_simplicial:
            raise InputError("semi-simplicial sets have no degenerate cells")
        self.require(d)
        for m in range(d):
            v = self.degeneracies[m][v, 0]
        return int(v)

    def is_vertex_determined(self) -> bool:
        """Every cell is determined by its vertex sequence (true for nerves of posets)."""
        for d in range(self.cap + 1):
            table = self.vertices(d)
            if np.unique(table, axis=0).shape[0] != table.shape[0]:
                return False
        return True

    # -- validation -------------------------------------------------------

    def identity_violation(self) -> str | None:
        """First failing simplicial identity, or ``None``."""
        for d, f in enumerate(self.faces):
            if d and f.size and (f.min() < 0 or f.max() >= self.count(d - 1)):
                return f"face of a {d}-cell out of range"
        for d in range(2, self.cap + 1):
            f, g = self.faces[d], self.faces[d - 1]
            for i, j in itertools.combinations(range(d + 1), 2):
                bad = np.flatnonzero(g[f[:, j], i] != g[f[:, i], j - 1])
                if bad.size:
                    return f"d_{i} d_{j} != d_{j - 1} d_{i} on {d}-cell {bad[0]}"
        if not self.is_simplicial:
            return None
        for d, s in enumerate(self.degeneracies):
            if s.size and (s.min() < 0 or s.max() >= self.count(d + 1)):
                return f"degeneracy of a {d}-cell out of range"
        for d in range(self.cap):
            s, up = self.degeneracies[d], self.faces[d + 1]
            ident = np.arange(self.count(d))
            for j in range(d + 1):
                for i in range(d + 2):
                    lhs = up[s[:, j], i]
                    if i in (j, j + 1):
                        rhs = ident
                    elif i < j:
                        rhs = self.degeneracies[d - 1][self.faces[d][:, i], j - 1]
                    else:
                        rhs = self.degeneracies[d - 1][self.faces[d][:, i - 1], j]
                    bad = np.flatnonzero(lhs != rhs)
                    if bad.size:
                        return f"d_{i} s_{j} identity fails on {d}-cell {bad[0]}"
        for d in range(self.cap - 1):
            s, t = self.degeneracies[d], self.degeneracies[d + 1]
            for i in range(d + 1):
                for j in range(i, d + 1):
                    bad = np.flatnonzero(t[s[:, j], i] != t[s[:, i], j + 1])
                    if bad.size:
                        return f"s_{i} s_{j} != s_{j + 1} s_{i} on {d}-cell {bad[0]}"
        return None

    def validate(self) -> None:
        msg = self.identity_violation()
        if msg:
            raise InputError(msg)

    def __repr__(self) -> str:
        kind = "simplicial" if self.is_simplicial else "semi-simplicial"
        return f"<{kind} set {self.name or ''} cap={self.cap} counts={self.counts()}>"


@dataclass(eq=False)
class SimplicialMap:
    domain: SimplicialSet
    codomain: SimplicialSet
    levels: list[IntArray]

    def __post_init__(self):
        # fewer levels than the common cap give a map defined through a lower degree
        top = min(self.domain.cap, self.codomain.cap)
        if not self.levels:
            raise InputError("a map needs at least its level 0")
        self.levels = [np.asarray(lv, dtype=np.int64) for lv in self.levels[: top + 1]]

    @property
    def cap(self) -> int:
        return len(self.levels) - 1

    def __call__(self, d: int, cell):
        return self.levels[d][cell]

    def violation(self) -> str | None:
        X, Y = self.domain, self.codomain
        for d, lv in enumerate(self.levels):
            if lv.shape != (X.count(d),):
                return f"level {d} has the wrong length"
            if lv.size and (lv.min() < 0 or lv.max() >= Y.count(d)):
                return f"level {d} leaves the codomain"
        for d in range(1, self.cap + 1):
            lhs = self.levels[d - 1][X.faces[d]]
            rhs = Y.faces[d][self.levels[d]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                c, i = bad[0]
                return f"map does not commute with d_{i} on {d}-cell {c}"
        if X.is_simplicial and Y.is_simplicial:
            for d in range(self.cap):
                lhs = self.levels[d + 1][X.degeneracies[d]]
                rhs = Y.degeneracies[d][self.levels[d]]
                bad = np.argwhere(lhs != rhs)
                if bad.size:
                    c, j = bad[0]
                    return f"map does not commute with s_{j} on {d}-cell {c}"
        return None

    def validate(self) -> "SimplicialMap":
        msg = self.violation()
        if msg:
            raise InputError(msg)
        return self

    def is_injective(self) -> bool:
        return all(np.unique(lv).size == lv.size for lv in self.levels)

    def is_bijective(self) -> bool:
        return self.is_injective() and all(
            lv.size == self.codomain.count(d) for d, lv in enumerate(self.levels))


# -- generic builder ----------------------------------------------------


def build_sset(
    cells: Sequence[Sequence[Hashable]],
    face: Callable[[int, Hashable, int], Hashable],
    degeneracy: Callable[[int, Hashable, int], Hashable] | None = None,
    truncated: bool = True,
    name: str = "",
    validate: bool = True,
) -> SimplicialSet:
    """Index labelled cells and tabulate ``face(d, c, i)`` and ``degeneracy(d, c, j)``."""
    index = [{c: k for k, c in enumerate(level)} for level in cells]
    cap = len(cells) - 1
    faces = [_empty(len(cells[0]), 0)]
    try:
        for d in range(1, cap + 1):
            faces.append(np.array([[index[d - 1][face(d, c, i)] for i in range(d + 1)]
                                   for c in cells[d]], dtype=np.int64).reshape(-1, d + 1))
        degens = None
        if degeneracy is not None:
            degens = [np.array([[index[d + 1][degeneracy(d, c, j)] for j in range(d + 1)]
                                for c in cells[d]], dtype=np.int64).reshape(-1, d + 1)
                      for d in range(cap)]
    except KeyError as exc:
        raise InputError(f"face or degeneracy leaves the listed cells: {exc}") from None
    X = SimplicialSet(faces, degens, truncated, [list(level) for level in cells], name)
    if validate:
        X.validate()
    return X


# -- simplices, horns, boundaries ----------------------------------------


def _drop(t: tuple, i: int) -> tuple:
    return t[:i] + t[i + 1:]


def _repeat(t: tuple, j: int) -> tuple:
    return t[: j + 1] + t[j:]


def _simplex_sub(n: int, cap: int | None, keep: Callable[[frozenset], bool], name: str,
                 injective: bool = False) -> SimplicialSet:
    if n < 0:
        raise InputError("simplex dimension must be non-negative")
    cap = n if cap is None else cap
    if cap < 0:
        raise InputError("cap must be non-negative")
    gen = itertools.combinations if injective else itertools.combinations_with_replacement
    cells = [[t for t in gen(range(n + 1), d + 1) if keep(frozenset(t))] for d in range(cap + 1)]
    return build_sset(cells, lambda d, t, i: _drop(t, i),
                      None if injective else (lambda d, t, j: _repeat(t, j)),
                      truncated=not (injective and cap >= n), name=name)


def standard_simplex(n: int, cap: int | None = None) -> SimplicialSet:
    """``Delta^n``: d-cells are monotone maps ``[d] -> [n]`` in lexicographic order."""
    return _simplex_sub(n, cap, lambda s: True, f"Delta^{n}")


def injective_simplex(n: int, cap: int | None = None) -> SimplicialSet:
    """Semi-simplicial ``Delta^n``: only strictly monotone maps."""
    return _simplex_sub(n, cap, lambda s: True, f"Delta^{n}_inj", injective=True)


def boundary(n: int, cap: int | None = None) -> SimplicialSet:
    full = frozenset(range(n + 1))
    return _simplex_sub(n, cap, lambda s: s != full, f"dDelta^{n}")


def horn(n: int, k: int, cap: int | None = None) -> SimplicialSet:
    if not 0 <= k <= n:
        raise InputError(f"horn index {k} out of range 0..{n}")
    face_k = frozenset(range(n + 1)) - {k}
    return _simplex_sub(n, cap, lambda s: not face_k <= s, f"Lambda^{n}_{k}")


def simplex_cell(n: int, t: Sequence[int], cap: int | None = None) -> tuple[int, int]:
    """``(degree, index)`` of the monotone sequence ``t`` inside :func:`standard_simplex`."""
    t = tuple(t)
    if any(b < a for a, b in zip(t, t[1:])) or not t or not 0 <= t[0] <= t[-1] <= n:
        raise InputError(f"{t} is not a monotone sequence in [{n}]")
    d = len(t) - 1
    for k, s in enumerate(itertools.combinations_with_replacement(range(n + 1), d + 1)):
        if s == t:
            return d, k
    raise AssertionError("unreachable")


# -- operators ----------------------------------------------------------


def apply_operator(Y: SimplicialSet, n: int, cell: int, alpha: Sequence[int]) -> int:
    """``alpha^* y`` for a monotone ``alpha: [k] -> [n]``: faces first, then degeneracies."""
    alpha = tuple(alpha)
    image = sorted(set(alpha))
    if any(b < a for a, b in zip(alpha, alpha[1:])) or image[0] < 0 or image[-1] > n:
        raise InputError(f"{alpha} is not a monotone map into [{n}]")
    x, d = int(cell), n
    for j in range(n, -1, -1):
        if j not in image:
            x = int(Y.faces[d][x, j])
            d -= 1
    k = len(alpha) - 1
    if k > d:
        if not Y.is_simplicial:
            raise InputError("non-injective operator on a semi-simplicial set")
        Y.require(k)
    for p in range(k):
        if alpha[p] == alpha[p + 1]:
            x = int(Y.degeneracies[d][x, p])
            d += 1
    return x


def simplex_map(Y: SimplicialSet, n: int, cell: int, cap: int | None = None) -> SimplicialMap:
    """The map ``Delta^n -> Y`` classifying the ``n``-cell ``cell``."""
    Y.require(n)
    cap = Y.cap if cap is None else cap
    D = standard_simplex(n, cap) if Y.is_simplicial else injective_simplex(n, cap)
    levels = [np.array([apply_operator(Y, n, cell, t) for t in D.labels[d]], dtype=np.int64)
              for d in range(min(cap, Y.cap) + 1)]
    return SimplicialMap(D, Y, levels)


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, [np.arange(c, dtype=np.int64) for c in X.counts()])


def compose_maps(q: SimplicialMap, p: SimplicialMap) -> SimplicialMap:
    """``q o p``."""
    if p.codomain is not q.domain:
        raise InputError("maps are not composable")
    top = min(p.cap, q.cap)
    return SimplicialMap(p.domain, q.codomain, [q.levels[d][p.levels[d]] for d in range(top + 1)])


def to_point(X: SimplicialSet) -> SimplicialMap:
    pt = standard_simplex(0, X.cap) if X.is_simplicial else injective_simplex(0, X.cap)
    return SimplicialMap(X, pt, [np.zeros(c, dtype=np.int64) for c in X.counts()])


def opposite(X: SimplicialSet) -> SimplicialSet:
    """Same cells with face and degeneracy indices reversed."""
    faces = [f[:, ::-1].copy() for f in X.faces]
    degens = None if X.degeneracies is None else [s[:, ::-1].copy() for s in X.degeneracies]
    return SimplicialSet(faces, degens, X.truncated, X.labels, f"{X.name}^op")


def opposite_map(p: SimplicialMap) -> SimplicialMap:
    return SimplicialMap(opposite(p.domain), opposite(p.codomain), list(p.levels))


def truncate(X: SimplicialSet, cap: int) -> SimplicialSet:
    if cap > X.cap:
        raise CapError(f"cannot raise the cap from {X.cap} to {cap}")
    degens = None if X.degeneracies is None else X.degeneracies[:cap]
    labels = None if X.labels is None else X.labels[: cap + 1]
    return SimplicialSet(X.faces[: cap + 1], degens, True if cap < X.cap else X.truncated, labels, X.name)
