"""Exhaustive right-lifting searches against horns and simplex boundaries.

A map from ``Lambda^n_k`` (or ``dDelta^n``) into ``X`` is a compatible
family of ``(n-1)``-cells ``x_i``, one per present face, with
``d_i x_j = d_{j-1} x_i`` for ``i < j``. A lifting problem adds an
``n``-cell ``y`` of the base with ``p(x_i) = d_i y``; a filler is an
``n``-cell ``x`` over ``y`` with ``d_i x = x_i``.

All verdicts hold *up to the stated cap*: only horns and boundaries of
dimension at most ``cap`` are tested.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from ..errors import CapError, InputError
from .constructions import pullback, restriction, under_category, under_face_map, under_map
from .sset import IntArray, SimplicialMap, opposite_map


@dataclass(frozen=True)
class LiftingFailure:
    """An unfillable lifting square."""

    shape: str
    n: int
    target: int
    faces: tuple[tuple[int, int], ...] = field(default=())

    def __str__(self) -> str:
        fam = ", ".join(f"x{i}={x}" for i, x in self.faces)
        return f"no filler for {self.shape} over base {self.n}-cell {self.target} ({fam})"


def _check_cap(p: SimplicialMap, n: int) -> None:
    if n > p.cap:
        raise CapError(f"lifting in dimension {n} needs cap >= {n}, the map stores {p.cap}")


def _groups(values: IntArray):
    order = np.argsort(values, kind="stable")
    return order, values[order]


def lifting_problems(p: SimplicialMap, n: int, present: Sequence[int],
                     targets: IntArray | None = None,
                     face_masks: dict[int, IntArray] | None = None) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield ``(y, (x_i for i in present))`` for every lifting problem.

    ``targets`` restricts the base cells ``y``; ``face_masks[i]`` restricts
    the admissible ``x_i``.
    """
    _check_cap(p, n)
    X, Y = p.domain, p.codomain
    present = sorted(present)
    ys = np.arange(Y.count(n)) if targets is None else np.asarray(targets, dtype=np.int64)
    if n == 0:
        for y in ys:
            yield int(y), ()
        return
    lower = p.levels[n - 1]
    order, sorted_vals = _groups(lower)
    fx = X.faces[n - 1]
    masks = face_masks or {}
    for y in ys:
        want = Y.faces[n][y]
        cands = []
        for i in present:
            lo, hi = np.searchsorted(sorted_vals, want[i], "left"), np.searchsorted(sorted_vals, want[i], "right")
            c = np.sort(order[lo:hi])
            if i in masks:
                c = c[masks[i][c]]
            cands.append(c)
        if any(c.size == 0 for c in cands):
            continue
        chosen: list[int] = []

        def extend(pos: int):
            if pos == len(present):
                yield tuple(chosen)
                return
            j = present[pos]
            c = cands[pos]
            if n >= 2:
                for i, xi in zip(present[:pos], chosen):
                    c = c[fx[c, i] == fx[xi, j - 1]]
                    if c.size == 0:
                        return
            for xj in c:
                chosen.append(int(xj))
                yield from extend(pos + 1)
                chosen.pop()

        for fam in extend(0):
            yield int(y), fam


def _filler_keys(p: SimplicialMap, n: int, present: Sequence[int]) -> set:
    X = p.domain
    cols = X.faces[n][:, sorted(present)] if n else np.zeros((X.count(0), 0), dtype=np.int64)
    return {(int(y), tuple(map(int, row))) for y, row in zip(p.levels[n], cols)}


def find_lifting_failure(p: SimplicialMap, n: int, present: Sequence[int], shape: str,
                         targets: IntArray | None = None,
                         face_masks: dict[int, IntArray] | None = None) -> LiftingFailure | None:
    keys = _filler_keys(p, n, present)
    present = sorted(present)
    for y, fam in lifting_problems(p, n, present, targets, face_masks):
        if (y, fam) not in keys:
            return LiftingFailure(shape, n, y, tuple(zip(present, fam)))
    return None


def horn_failure(p: SimplicialMap, n: int, k: int, **kw) -> LiftingFailure | None:
    if not 0 <= k <= n:
        raise InputError(f"horn index {k} out of range 0..{n}")
    return find_lifting_failure(p, n, [i for i in range(n + 1) if i != k], f"Lambda^{n}_{k}", **kw)


def boundary_failure(p: SimplicialMap, n: int, **kw) -> LiftingFailure | None:
    return find_lifting_failure(p, n, list(range(n + 1)), f"dDelta^{n}", **kw)


def _cap_for(p: SimplicialMap, cap: int | None) -> int:
    if cap is None:
        return p.cap
    if cap > p.cap:
        raise CapError(f"cap {cap} exceeds the stored cap {p.cap}")
    return cap


def inner_fibration_failure(p: SimplicialMap, cap: int | None = None) -> LiftingFailure | None:
    cap = _cap_for(p, cap)
    for n in range(2, cap + 1):
        for k in range(1, n):
            w = horn_failure(p, n, k)
            if w:
                return w
    return None


def is_inner_fibration(p: SimplicialMap, cap: int | None = None) -> bool:
    return inner_fibration_failure(p, cap) is None


def trivial_kan_failure(p: SimplicialMap, cap: int | None = None) -> LiftingFailure | None:
    cap = _cap_for(p, cap)
    for n in range(cap + 1):
        w = boundary_failure(p, n)
        if w:
            return w
    return None


def is_trivial_kan(p: SimplicialMap, cap: int | None = None) -> bool:
    return trivial_kan_failure(p, cap) is None


# -- (co)Cartesian edges ------------------------------------------------


def _edge_cap(p: SimplicialMap, cap: int | None) -> int:
    cap = _cap_for(p, cap)
    if cap < 2:
        raise CapError("edge deciders need cap >= 2")
    return cap


def cocartesian_lifting_failure(p: SimplicialMap, f: int, cap: int | None = None,
                                local: bool = False) -> LiftingFailure | None:
    """``Lambda^n_0`` lifts whose edge ``[0,1]`` is ``f``, for ``2 <= n <= cap``.

    With ``local`` only base simplices whose back face ``[1..n]`` is totally
    degenerate are tested.
    """
    cap = _edge_cap(p, cap)
    X, Y = p.domain, p.codomain
    pf = int(p.levels[1][f])
    if local and not Y.is_simplicial:
        raise InputError("the local lifting form needs degeneracies in the base")
    for n in range(2, cap + 1):
        mask = X.front(n - 1, 1) == f
        ok_y = Y.front(n, 1) == pf
        if local:
            end = int(Y.faces[1][pf, 0])
            ok_y &= Y.back(n, n - 1) == Y.total_degeneracy(end, n - 1)
        w = find_lifting_failure(p, n, list(range(1, n + 1)), f"Lambda^{n}_0",
                                 targets=np.flatnonzero(ok_y), face_masks={n: mask})
        if w:
            return w
    return None


def cocartesian_comparison(p: SimplicialMap, f: int) -> SimplicialMap:
    """``X_{f/} -> X_{x/} x_{Y_{p(x)/}} Y_{p(f)/}`` for the edge ``f: x -> y``."""
    X, Y = p.domain, p.codomain
    x = int(X.faces[1][f, 1])
    pf, px = int(p.levels[1][f]), int(p.levels[0][x])
    Uf, Ux = under_category(X, 1, f), under_category(X, 0, x)
    Vf, Vx = under_category(Y, 1, pf), under_category(Y, 0, px)
    P = pullback(under_map(p, Ux, Vx), under_face_map(Vf, Vx, 1))
    to_x = under_face_map(Uf, Ux, 1)
    to_base = under_map(p, Uf, Vf)
    top = min(Uf.sset.cap, P.sset.cap)
    levels = [P.index(l, to_x.levels[l], to_base.levels[l]) for l in range(top + 1)]
    return SimplicialMap(Uf.sset, P.sset, levels)


def cocartesian_trivial_kan_failure(p: SimplicialMap, f: int, cap: int | None = None) -> LiftingFailure | None:
    """Boundary lifts for the comparison map, in dimensions ``0..cap-2``."""
    cap = _edge_cap(p, cap)
    return trivial_kan_failure(cocartesian_comparison(p, f), cap - 2)


def _restricted_edge(p: SimplicialMap, f: int) -> tuple[SimplicialMap, int]:
    """``p_{|p(f)}`` and the lift of ``f`` over the edge ``[0,1]`` of ``Delta^1``."""
    R = restriction(p, 1, int(p.levels[1][f]))
    D1 = R.q.domain
    e01 = [k for k, t in enumerate(D1.labels[1]) if tuple(t) == (0, 1)][0]
    g = int(R.index(1, f, e01))
    if g < 0:
        raise AssertionError("edge missing from its own restriction")
    return R.pr_right(), g


_MODES = ("trivial-kan", "lifting")


def cocartesian_edge_failure(p: SimplicialMap, f: int, cap: int | None = None,
                             mode: str = "lifting", local: bool = False) -> LiftingFailure | None:
    if mode not in _MODES:
        raise InputError(f"unknown mode {mode!r}; expected one of {_MODES}")
    cap = _edge_cap(p, cap)
    if mode == "lifting":
        return cocartesian_lifting_failure(p, f, cap, local=local)
    if local:
        p, f = _restricted_edge(p, f)
    return cocartesian_trivial_kan_failure(p, f, cap)


def is_cocartesian_edge(p: SimplicialMap, f: int, cap: int | None = None, mode: str = "lifting") -> bool:
    return cocartesian_edge_failure(p, f, cap, mode) is None


def is_locally_cocartesian_edge(p: SimplicialMap, f: int, cap: int | None = None,
                                mode: str = "lifting") -> bool:
    return cocartesian_edge_failure(p, f, cap, mode, local=True) is None


def is_cartesian_edge(p: SimplicialMap, f: int, cap: int | None = None, mode: str = "lifting") -> bool:
    """A coCartesian edge of ``p^op``: ``Lambda^n_n`` lifts with last edge ``f``."""
    return is_cocartesian_edge(opposite_map(p), f, cap, mode)


def is_locally_cartesian_edge(p: SimplicialMap, f: int, cap: int | None = None,
                              mode: str = "lifting") -> bool:
    return is_locally_cocartesian_edge(opposite_map(p), f, cap, mode)


def cocartesian_fibration_failure(p: SimplicialMap, cap: int | None = None, local: bool = False,
                                  mode: str = "lifting"):
    """Inner fibration plus a (locally) coCartesian lift of every base edge at every vertex.

    Returns ``None`` or a description of the first missing lift.
    """
    cap = _edge_cap(p, cap)
    w = inner_fibration_failure(p, cap)
    if w:
        return w
    X, Y = p.domain, p.codomain
    verdict: dict[int, bool] = {}
    src = X.faces[1][:, 1]
    for e in range(Y.count(1)):
        s = int(Y.faces[1][e, 1])
        over = np.flatnonzero(p.levels[1] == e)
        for x in np.flatnonzero(p.levels[0] == s):
            found = False
            for f in over[src[over] == x]:
                f = int(f)
                if f not in verdict:
                    verdict[f] = cocartesian_edge_failure(p, f, cap, mode, local) is None
                if verdict[f]:
                    found = True
                    break
            if not found:
                return f"no {'locally ' if local else ''}coCartesian lift of base edge {e} at vertex {x}"
    return None


def is_cocartesian_fibration(p: SimplicialMap, cap: int | None = None, local: bool = False,
                             mode: str = "lifting") -> bool:
    return cocartesian_fibration_failure(p, cap, local, mode) is None


def is_cartesian_fibration(p: SimplicialMap, cap: int | None = None, local: bool = False,
                           mode: str = "lifting") -> bool:
    return cocartesian_fibration_failure(opposite_map(p), cap, local, mode) is None
