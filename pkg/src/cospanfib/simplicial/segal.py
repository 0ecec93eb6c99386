"""Discrete (level-wise set) semi-Segal conditions.

For sets, a homotopy Cartesian square is a square whose comparison map to
the strict pullback is a bijection, so every condition below is a fiber
bijection. Only faces are used; degeneracies are ignored.
"""

from __future__ import annotations

import numpy as np

from ..errors import CapError
from .sset import SimplicialMap, SimplicialSet


def _need2(X: SimplicialSet) -> None:
    if X.cap < 2:
        raise CapError("semi-Segal conditions need cells of degree 2")


def _bijects(images: np.ndarray, target: np.ndarray) -> bool:
    return images.size == np.unique(images).size == target.size and set(images.tolist()) == set(target.tolist())


def is_semi_segal(X: SimplicialSet, upto: int | None = None) -> bool:
    """The spine map ``X_n -> X_1 x_{X_0} ... x_{X_0} X_1`` is bijective for ``2 <= n <= upto``."""
    upto = X.cap if upto is None else min(upto, X.cap)
    tgt, src = X.faces[1][:, 0], X.faces[1][:, 1]
    for n in range(2, upto + 1):
        spine = np.column_stack([_edge(X, n, k) for k in range(n)])
        if np.unique(spine, axis=0).shape[0] != spine.shape[0]:
            return False
        # composable strings of n edges, counted by their last edge
        strings = np.ones(X.count(1), dtype=object)
        for _ in range(n - 1):
            into = np.zeros(X.count(0), dtype=object)
            np.add.at(into, tgt, strings)
            strings = into[src]
        if int(strings.sum()) != spine.shape[0]:
            return False
    return True


def _edge(X: SimplicialSet, n: int, k: int) -> np.ndarray:
    """Edge ``[k, k+1]`` of every ``n``-cell."""
    idx = np.arange(X.count(n))
    for m in range(n, k + 1, -1):
        idx = X.faces[m][idx, m]
    for m in range(k + 1, 1, -1):
        idx = X.faces[m][idx, 0]
    return idx


def is_equivalence_edge(X: SimplicialSet, e: int) -> bool:
    """Both ``d_1: X_2/e -> X_1/d_0e`` and ``d_1: e\\X_2 -> d_1e\\X_1`` are bijections."""
    _need2(X)
    f1, f2 = X.faces[1], X.faces[2]
    over = np.flatnonzero(f2[:, 0] == e)
    if not _bijects(f2[over, 1], np.flatnonzero(f1[:, 0] == f1[e, 0])):
        return False
    under = np.flatnonzero(f2[:, 2] == e)
    return _bijects(f2[under, 1], np.flatnonzero(f1[:, 1] == f1[e, 1]))


def equivalence_edges(X: SimplicialSet) -> np.ndarray:
    return np.array([is_equivalence_edge(X, e) for e in range(X.count(1))], dtype=bool)


def sS_cartesian_edge_failure(p: SimplicialMap, e: int, local: bool = False,
                              base_equivalences: np.ndarray | None = None) -> int | None:
    """First base 2-cell ``s`` (with ``d_0 s = p(e)``) where the square is not Cartesian.

    The square at ``s`` is Cartesian when ``d_1`` maps
    ``{tau : d_0 tau = e, p(tau) = s}`` bijectively onto
    ``{h : d_0 h = d_0 e, p(h) = d_1 s}``. The local variant only tests
    ``s`` whose ``d_2`` edge is an equivalence.
    """
    X, Y = p.domain, p.codomain
    _need2(X)
    _need2(Y)
    pe = int(p.levels[1][e])
    fx1, fx2, fy2 = X.faces[1], X.faces[2], Y.faces[2]
    if local and base_equivalences is None:
        base_equivalences = equivalence_edges(Y)
    taus = np.flatnonzero(fx2[:, 0] == e)
    hs = np.flatnonzero(fx1[:, 0] == fx1[e, 0])
    for s in np.flatnonzero(fy2[:, 0] == pe):
        if local and not base_equivalences[fy2[s, 2]]:
            continue
        dom = taus[p.levels[2][taus] == s]
        tgt = hs[p.levels[1][hs] == fy2[s, 1]]
        if not _bijects(fx2[dom, 1], tgt):
            return int(s)
    return None


def is_sS_cartesian_edge(p: SimplicialMap, e: int) -> bool:
    return sS_cartesian_edge_failure(p, e) is None


def is_sS_locally_cartesian_edge(p: SimplicialMap, e: int, base_equivalences: np.ndarray | None = None) -> bool:
    return sS_cartesian_edge_failure(p, e, True, base_equivalences) is None


def is_sS_cartesian_fibration(p: SimplicialMap, local: bool = False) -> bool:
    """Every ``(x, ebar)`` with ``d_0 ebar = p(x)`` has a (locally) Cartesian lift ending at ``x``."""
    X, Y = p.domain, p.codomain
    eq = equivalence_edges(Y) if local else None
    tgt = X.faces[1][:, 0]
    cache: dict[int, bool] = {}
    for eb in range(Y.count(1)):
        over = np.flatnonzero(p.levels[1] == eb)
        for x in np.flatnonzero(p.levels[0] == Y.faces[1][eb, 0]):
            ok = False
            for e in over[tgt[over] == x]:
                e = int(e)
                if e not in cache:
                    cache[e] = sS_cartesian_edge_failure(p, e, local, eq) is None
                if cache[e]:
                    ok = True
                    break
            if not ok:
                return False
    return True
