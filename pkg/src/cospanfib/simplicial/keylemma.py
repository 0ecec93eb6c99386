"""The fiber-under-vertex object ``X_{|n} x_X X_{x/}`` and the comparison
``(X_{|sigma})_{(x,0)/} -> (X_{x/})_{|sigma}`` used to reduce the local case
to the global one."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import CapError, InputError
from .constructions import Pullback, fiber, pullback, restriction, under_category
from .sset import SimplicialMap, SimplicialSet, compose_maps, simplex_map


def key_lemma_object(p: SimplicialMap, x: int, last: int | None = None) -> Pullback:
    """``X_{|last} x_X X_{x/}``, pulled back along the back-face projection.

    ``last`` defaults to the final vertex of the codomain (``n`` for ``Delta^n``).
    """
    X, Y = p.domain, p.codomain
    if not 0 <= x < X.count(0):
        raise InputError(f"no vertex {x}")
    last = Y.count(0) - 1 if last is None else last
    F = fiber(p, last)
    U = under_category(X, 0, x)
    return pullback(F.pr_left(), U.projection())


def is_levelwise_iso(S: SimplicialSet, T: SimplicialSet, s: SimplicialMap, upto: int) -> bool:
    """``s`` is bijective in degrees ``0..upto`` and commutes with faces there."""
    if upto > min(S.cap, T.cap, s.cap):
        raise CapError(f"iso check through degree {upto} exceeds the stored cap")
    for l in range(upto + 1):
        lv = s.levels[l]
        if lv.size != T.count(l) or np.any(lv < 0) or np.unique(lv).size != lv.size:
            return False
        if l and np.any(T.faces[l][lv] != s.levels[l - 1][S.faces[l]]):
            return False
        if l and S.is_simplicial and T.is_simplicial:
            if np.any(s.levels[l][S.degeneracies[l - 1]] != T.degeneracies[l - 1][s.levels[l - 1]]):
                return False
    return True


@dataclass(eq=False)
class UnderIso:
    """Both sides of the comparison and the map between them."""

    source: SimplicialSet
    target: SimplicialSet
    map: SimplicialMap
    upto: int

    def holds(self) -> bool:
        return is_levelwise_iso(self.source, self.target, self.map, self.upto)


def under_iso(p: SimplicialMap, sigma: int, x: int, upto: int | None = None) -> UnderIso:
    """Build ``s: (X_{|sigma})_{(x,0)/} -> (X_{x/})_{|sigma}`` for an edge ``sigma``.

    The ``l``-cell ``(b, c)`` of the source, with ``b`` an ``(l+1)``-cell of X
    starting at ``x`` and ``c: Delta^{l+1} -> Delta^1`` starting at 0, goes to
    ``(b, c restricted to the back l+1 vertices)``. This is a bijection when
    maps into the codomain are determined by their vertices, which is
    required here.
    """
    X, Y = p.domain, p.codomain
    if not Y.is_vertex_determined():
        raise InputError("under_iso needs a codomain whose cells are determined by their vertices")
    if int(Y.faces[1][sigma, 1]) != int(p.levels[0][x]):
        raise InputError("x does not lie over the source of sigma")
    upto = X.cap - 2 if upto is None else upto
    if upto < 0 or upto > X.cap - 2:
        raise CapError(f"the comparison is defined through degree {X.cap - 2}, asked for {upto}")

    R = restriction(p, 1, sigma)
    D1 = R.q.domain
    x0 = int(R.index(0, x, 0))
    source = under_category(R.sset, 0, x0)

    U = under_category(X, 0, x)
    sig = simplex_map(Y, 1, sigma, X.cap)
    T = pullback(compose_maps(p, U.projection()), sig)

    code = {d: {tuple(t): k for k, t in enumerate(D1.labels[d])} for d in range(len(D1.labels))}
    levels = []
    for l in range(upto + 1):
        parents = source.cells[l]
        b = R.left[l + 1][parents]
        c_rows = [tuple(D1.labels[l + 1][k]) for k in R.right[l + 1][parents]]
        c_back = np.array([code[l][t[1:]] for t in c_rows], dtype=np.int64)
        u = U.index(l, b)
        levels.append(np.where(u < 0, -1, T.index(l, np.maximum(u, 0), c_back)))
    s = SimplicialMap(source.sset, T.sset, levels)
    return UnderIso(source.sset, T.sset, s, upto)


def under_iso_check(p: SimplicialMap, sigma: int, x: int, upto: int | None = None) -> bool:
    return under_iso(p, sigma, x, upto).holds()
