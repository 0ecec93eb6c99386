"""Integral homology of capped (semi-)simplicial sets via Smith normal form.

Simplicial input uses the normalized complex (nondegenerate cells as
generators), semi-simplicial input uses every cell. Matrix arithmetic is
done with Python integers, so pivots never overflow.

Homology in degree ``d`` needs cells of degree ``d + 1``; degrees at or
above the cap are refused rather than reported from truncated data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Sequence

import numpy as np

from .errors import CapError, InputError
from .finset import UnionFind
from .simplicial.sset import SimplicialMap, SimplicialSet

Entries = dict[tuple[int, int], int]


@dataclass
class ChainComplex:
    """``boundary[d]`` maps degree ``d`` generators to degree ``d - 1`` (``boundary[0]`` is empty)."""

    dims: list[int]
    boundary: list[Entries] = field(default_factory=list)

    def dense(self, d: int) -> list[list[int]]:
        rows, cols = (self.dims[d - 1] if d else 0), self.dims[d]
        M = [[0] * cols for _ in range(rows)]
        for (r, c), v in self.boundary[d].items():
            M[r][c] = v
        return M

    def square_violation(self) -> int | None:
        """First degree ``d`` with ``boundary[d-1] . boundary[d] != 0``."""
        for d in range(2, len(self.dims)):
            by_row: dict[int, list[tuple[int, int]]] = {}
            for (r, c), v in self.boundary[d - 1].items():
                by_row.setdefault(c, []).append((r, v))
            acc: Entries = {}
            for (mid, c), v in self.boundary[d].items():
                for r, w in by_row.get(mid, ()):
                    acc[(r, c)] = acc.get((r, c), 0) + w * v
            if any(acc.values()):
                return d
        return None


def generators(X: SimplicialSet, d: int, exclude: np.ndarray | None = None) -> np.ndarray:
    mask = X.nondegenerate(d).copy()
    if exclude is not None:
        mask[exclude] = False
    return np.flatnonzero(mask)


def chain_complex(X: SimplicialSet, top: int | None = None, relative_to: SimplicialMap | None = None) -> ChainComplex:
    """Chains through degree ``top`` (default ``X.cap``), optionally modulo an injective ``A -> X``."""
    top = X.cap if top is None else top
    X.require(top)
    if relative_to is not None:
        if relative_to.codomain is not X or not relative_to.is_injective():
            raise InputError("relative chains need an injective map into X")
        if relative_to.cap < top:
            raise CapError("the subobject is stored through a lower degree")
    gens, pos = [], []
    for d in range(top + 1):
        g = generators(X, d, None if relative_to is None else relative_to.levels[d])
        where = np.full(X.count(d), -1, dtype=np.int64)
        where[g] = np.arange(g.size)
        gens.append(g)
        pos.append(where)
    C = ChainComplex([g.size for g in gens], [{}])
    for d in range(1, top + 1):
        entries: Entries = {}
        faces = X.faces[d][gens[d]]
        for i in range(d + 1):
            sign = -1 if i % 2 else 1
            rows = pos[d - 1][faces[:, i]]
            for c, r in enumerate(rows.tolist()):
                if r >= 0:
                    v = entries.get((r, c), 0) + sign
                    if v:
                        entries[(r, c)] = v
                    else:
                        entries.pop((r, c), None)
        C.boundary.append(entries)
    bad = C.square_violation()
    if bad is not None:
        raise AssertionError(f"boundary squares to nonzero in degree {bad}; simplicial identities are broken")
    return C


# -- Smith normal form ---------------------------------------------------


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Invariant factors ``d_1 | d_2 | ...`` (all positive) and the rank, by dense elimination."""
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest leftover of row/column t onto the diagonal
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
        diag.append(abs(A[t][t]))
        t += 1
    return diag, len(diag)


def _bareiss_det(M: list[list[int]]) -> int:
    A = [row[:] for row in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def determinantal_factors(M: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors as ratios of gcds of k x k minors.

    Exponential in the matrix size; an elimination-free reference for
    :func:`smith_normal_form` on small matrices.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, _bareiss_det([[A[r][c] for c in cols] for r in rows]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def _sparse_factors(entries: Entries) -> list[int]:
    """Invariant factors via unit-pivot elimination, then dense SNF on the remainder."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
    units = 0
    pending = sorted(rows, key=lambda r: len(rows[r]), reverse=True)
    queued = set(pending)
    while pending:
        r = pending.pop()
        queued.discard(r)
        row = rows.get(r)
        if row is None:
            continue
        unit = [c for c, v in row.items() if v in (1, -1)]
        if not unit:
            continue
        c = min(unit, key=lambda k: len(cols[k]))
        v = row[c]
        for k in list(cols[c]):
            if k == r:
                continue
            other = rows[k]
            factor = other[c] * v
            for cc, vv in row.items():
                nv = other.get(cc, 0) - factor * vv
                if nv:
                    if cc not in other:
                        cols[cc].add(k)
                    other[cc] = nv
                elif cc in other:
                    del other[cc]
                    cols[cc].discard(k)
            if not other:
                del rows[k]
            elif k not in queued:
                pending.append(k)
                queued.add(k)
        for cc in row:
            cols[cc].discard(r)
        del rows[r]
        units += 1
    rest_rows = sorted(rows)
    rest_cols = sorted({c for row in rows.values() for c in row})
    cidx = {c: j for j, c in enumerate(rest_cols)}
    dense = [[0] * len(rest_cols) for _ in rest_rows]
    for i, r in enumerate(rest_rows):
        for c, v in rows[r].items():
            dense[i][cidx[c]] = v
    factors, _ = smith_normal_form(dense)
    return [1] * units + factors


def invariant_factors(entries: Entries, shape: tuple[int, int], method: str = "sparse") -> list[int]:
    if method == "sparse":
        return sorted(_sparse_factors(entries))
    if method == "dense":
        M = [[0] * shape[1] for _ in range(shape[0])]
        for (r, c), v in entries.items():
            M[r][c] = v
        return smith_normal_form(M)[0]
    if method == "minors":
        M = [[0] * shape[1] for _ in range(shape[0])]
        for (r, c), v in entries.items():
            M[r][c] = v
        return determinantal_factors(M)
    raise InputError(f"unknown method {method!r}")


# -- homology -------------------------------------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def _refuse(X: SimplicialSet, up_to: int) -> None:
    if up_to > X.cap - 1:
        raise CapError(f"homology through degree {up_to} needs cap >= {up_to + 1}, have {X.cap}")
    if up_to < 0:
        raise InputError("degree must be non-negative")


def homology(X: SimplicialSet, up_to: int, relative_to: SimplicialMap | None = None,
             method: str = "sparse") -> list[HomologyGroup]:
    """``H_0 .. H_up_to``; needs ``up_to <= X.cap - 1``."""
    _refuse(X, up_to)
    C = chain_complex(X, up_to + 1, relative_to)
    factors = [[]] + [invariant_factors(C.boundary[d], (C.dims[d - 1], C.dims[d]), method)
                      for d in range(1, up_to + 2)]
    out = []
    for d in range(up_to + 1):
        rank_in = len(factors[d])
        rank_out = len(factors[d + 1])
        torsion = tuple(sorted(f for f in factors[d + 1] if f > 1))
        out.append(HomologyGroup(C.dims[d] - rank_in - rank_out, torsion))
    return out


def format_homology(groups: Sequence[HomologyGroup]) -> str:
    return "\n".join(f"H_{d} = {g}" for d, g in enumerate(groups))


def components(X: SimplicialSet) -> int:
    """Number of path components, from the 1-skeleton."""
    uf = UnionFind(X.count(0))
    if X.cap >= 1:
        for a, b in X.faces[1].tolist():
            uf.union(a, b)
    return X.count(0) - uf.unions


def is_contractible_through(X: SimplicialSet, d: int) -> bool:
    """One path component, ``H_0 = Z`` and ``H_i = 0`` for ``1 <= i <= d``.

    This certifies homological contractibility only; higher homotopy is not
    examined.
    """
    _refuse(X, d)
    if components(X) != 1:
        return False
    H = homology(X, d)
    return H[0] == HomologyGroup(1) and all(g.is_trivial() for g in H[1:])


def is_homology_iso_through(i: SimplicialMap, d: int) -> bool:
    """``i: A -> X`` injective induces isomorphisms on ``H_0 .. H_d``.

    Uses the long exact sequence: this holds exactly when ``H_k(X, A) = 0``
    for ``k <= d`` and ``H_d(A)`` is abstractly isomorphic to ``H_d(X)``
    (a surjection between isomorphic finitely generated abelian groups is an
    isomorphism).
    """
    A, X = i.domain, i.codomain
    _refuse(X, d)
    _refuse(A, d)
    rel = homology(X, d, relative_to=i)
    if not all(g.is_trivial() for g in rel):
        return False
    return homology(A, d)[d] == homology(X, d)[d]
