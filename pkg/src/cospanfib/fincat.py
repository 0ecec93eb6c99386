"""Explicit finite categories, functors, and the discrete (co)Cartesian deciders.

Morphisms are indexed ``0..M-1``; composition lives in an ``M x M`` integer
table ``table[g, f] = g o f`` with ``-1`` on non-composable pairs. Labels of
objects and morphisms are arbitrary hashables, used for lookup and printing.
"""

from __future__ import annotations

import re
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from .errors import InputError


class FinCategory:
    """A finite, optionally non-unital category with a total composition table."""

    def __init__(
        self,
        objects: Sequence[Hashable],
        morphisms: Sequence[tuple[Hashable, Hashable, Hashable]],
        compose: Mapping[tuple[Hashable, Hashable], Hashable] | Callable[[Hashable, Hashable], Hashable],
        identities: Mapping[Hashable, Hashable] | None = None,
        *,
        validate: bool = True,
    ):
        self.objects = tuple(objects)
        self.obj_index = {x: i for i, x in enumerate(self.objects)}
        if len(self.obj_index) != len(self.objects):
            raise InputError("duplicate object labels")
        self.labels = tuple(m for m, _, _ in morphisms)
        self.mor_index = {m: i for i, m in enumerate(self.labels)}
        if len(self.mor_index) != len(self.labels):
            raise InputError("duplicate morphism labels")
        try:
            self.src = np.array([self.obj_index[s] for _, s, _ in morphisms], dtype=np.int64)
            self.tgt = np.array([self.obj_index[t] for _, _, t in morphisms], dtype=np.int64)
        except KeyError as exc:
            raise InputError(f"unknown object {exc.args[0]!r}") from None
        M = len(self.labels)
        self._homs: dict[tuple[int, int], list[int]] = {}
        self._out: list[list[int]] = [[] for _ in self.objects]
        self._in: list[list[int]] = [[] for _ in self.objects]
        for i in range(M):
            s, t = int(self.src[i]), int(self.tgt[i])
            self._homs.setdefault((s, t), []).append(i)
            self._out[s].append(i)
            self._in[t].append(i)
        self.table = np.full((M, M), -1, dtype=np.int64)
        for f in range(M):
            for g in self._out[int(self.tgt[f])]:
                gl, fl = self.labels[g], self.labels[f]
                try:
                    h = compose(gl, fl) if callable(compose) else compose[(gl, fl)]
                except KeyError:
                    raise InputError(f"composite {gl} * {fl} is undefined") from None
                if h not in self.mor_index:
                    raise InputError(f"composite {gl} * {fl} = {h!r} is not a morphism")
                self.table[g, f] = self.mor_index[h]
        if identities is None:
            self.identities = None
        else:
            try:
                self.identities = tuple(self.mor_index[identities[x]] for x in self.objects)
            except KeyError as exc:
                raise InputError(f"missing or unknown identity {exc.args[0]!r}") from None
        if validate:
            self.validate()

    # -- structure -----------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.labels)

    @property
    def is_unital(self) -> bool:
        return self.identities is not None

    def hom(self, x: int, y: int) -> list[int]:
        return self._homs.get((x, y), [])

    def out_of(self, x: int) -> list[int]:
        return self._out[x]

    def into(self, y: int) -> list[int]:
        return self._in[y]

    def compose(self, g: int, f: int) -> int:
        h = int(self.table[g, f])
        if h < 0:
            raise InputError(f"{self.labels[g]} and {self.labels[f]} are not composable")
        return h

    def identity(self, x: int) -> int:
        if self.identities is None:
            raise InputError("category is not unital")
        return self.identities[x]

    def obj(self, label: Hashable) -> int:
        try:
            return self.obj_index[label]
        except KeyError:
            raise InputError(f"unknown object {label!r}") from None

    def mor(self, label: Hashable) -> int:
        try:
            return self.mor_index[label]
        except KeyError:
            raise InputError(f"unknown morphism {label!r}") from None

    def validate(self) -> None:
        """Check sources/targets of composites, associativity and unit laws."""
        T = self.table
        M = self.n_morphisms
        g_idx, f_idx = np.nonzero(T >= 0)
        h = T[g_idx, f_idx]
        if np.any(self.src[h] != self.src[f_idx]) or np.any(self.tgt[h] != self.tgt[g_idx]):
            raise InputError("a composite has the wrong source or target")
        for k in range(M):
            hg = T[k]
            gs = np.flatnonzero(hg >= 0)
            if gs.size == 0:
                continue
            sub = T[gs]
            valid = sub >= 0
            rows, fs = np.nonzero(valid)
            left = T[k, sub[rows, fs]]
            right = T[hg[gs[rows]], fs]
            bad = np.flatnonzero(left != right)
            if bad.size:
                g, f = int(gs[rows[bad[0]]]), int(fs[bad[0]])
                raise InputError(
                    f"composition is not associative at ({self.labels[k]}, {self.labels[g]}, {self.labels[f]})"
                )
        if self.identities is not None:
            for x, e in enumerate(self.identities):
                if self.src[e] != x or self.tgt[e] != x:
                    raise InputError(f"identity of {self.objects[x]!r} is not an endomorphism")
                for f in self.out_of(x):
                    if T[f, e] != f:
                        raise InputError(f"right unit law fails for {self.labels[f]}")
                for f in self.into(x):
                    if T[e, f] != f:
                        raise InputError(f"left unit law fails for {self.labels[f]}")

    def __repr__(self) -> str:
        return f"FinCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"


class FunctorData:
    """A functor between finite categories, given on indices."""

    def __init__(self, domain: FinCategory, codomain: FinCategory, object_map: Sequence[int],
                 morphism_map: Sequence[int], *, validate: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.object_map = np.asarray(object_map, dtype=np.int64)
        self.morphism_map = np.asarray(morphism_map, dtype=np.int64)
        if validate:
            self.validate()

    @classmethod
    def from_labels(cls, domain: FinCategory, codomain: FinCategory,
                    obj_fn: Callable[[Hashable], Hashable], mor_fn: Callable[[Hashable], Hashable]) -> "FunctorData":
        return cls(domain, codomain, [codomain.obj(obj_fn(x)) for x in domain.objects],
                   [codomain.mor(mor_fn(m)) for m in domain.labels])

    def validate(self) -> None:
        E, B = self.domain, self.codomain
        if self.object_map.shape != (E.n_objects,) or self.morphism_map.shape != (E.n_morphisms,):
            raise InputError("functor maps have the wrong size")
        P, Pm = self.object_map, self.morphism_map
        if np.any(B.src[Pm] != P[E.src]) or np.any(B.tgt[Pm] != P[E.tgt]):
            raise InputError("functor does not preserve sources and targets")
        g, f = np.nonzero(E.table >= 0)
        if np.any(Pm[E.table[g, f]] != B.table[Pm[g], Pm[f]]):
            raise InputError("functor does not preserve composition")
        if E.is_unital and B.is_unital:
            for x, e in enumerate(E.identities):
                if Pm[e] != B.identities[P[x]]:
                    raise InputError(f"functor does not preserve the identity of {E.objects[x]!r}")

    def __call__(self, f: int) -> int:
        return int(self.morphism_map[f])

    def on_object(self, x: int) -> int:
        return int(self.object_map[x])


# -- constructions -----------------------------------------------------


def opposite_category(C: FinCategory) -> FinCategory:
    morphisms = [(m, C.objects[C.tgt[i]], C.objects[C.src[i]]) for i, m in enumerate(C.labels)]
    table = C.table

    def op_compose(g, f):
        return C.labels[table[C.mor_index[f], C.mor_index[g]]]

    ids = None if C.identities is None else {x: C.labels[e] for x, e in zip(C.objects, C.identities)}
    return FinCategory(C.objects, morphisms, op_compose, ids, validate=False)


def opposite_functor(P: FunctorData) -> FunctorData:
    return FunctorData(opposite_category(P.domain), opposite_category(P.codomain),
                       P.object_map, P.morphism_map, validate=False)


def poset_category(elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]) -> FinCategory:
    """Thin category of a finite poset; the arrow ``x -> y`` is labelled ``(x, y)``."""
    morphisms = [((x, y), x, y) for x in elements for y in elements if leq(x, y)]
    return FinCategory(
        elements,
        morphisms,
        lambda g, f: (f[0], g[1]),
        {x: (x, x) for x in elements},
    )


def ordinal(n: int) -> FinCategory:
    """The poset [n] = {0 < 1 < ... < n}."""
    return poset_category(list(range(n + 1)), lambda x, y: x <= y)


def cyclic_group(n: int) -> FinCategory:
    """Z/n as a one-object category; morphism ``k`` is addition of ``k``."""
    return FinCategory(["*"], [(k, "*", "*") for k in range(n)], lambda g, f: (g + f) % n, {"*": 0})


def product_category(C: FinCategory, D: FinCategory) -> FinCategory:
    """``C x D`` with object and morphism labels the pairs of labels."""
    objects = [(x, y) for x in C.objects for y in D.objects]
    morphisms = [((f, g), (C.objects[C.src[i]], D.objects[D.src[j]]), (C.objects[C.tgt[i]], D.objects[D.tgt[j]]))
                 for i, f in enumerate(C.labels) for j, g in enumerate(D.labels)]

    def comp(h, k):
        return (C.labels[C.table[C.mor_index[h[0]], C.mor_index[k[0]]]],
                D.labels[D.table[D.mor_index[h[1]], D.mor_index[k[1]]]])

    ids = None
    if C.is_unital and D.is_unital:
        ids = {(x, y): (C.labels[C.identity(C.obj_index[x])], D.labels[D.identity(D.obj_index[y])])
               for x, y in objects}
    return FinCategory(objects, morphisms, comp, ids)


def lax_grothendieck(fibers: Sequence[FinCategory],
                     push: Mapping[tuple[int, int], tuple[Callable, Callable]],
                     lax: Mapping[tuple[int, int, int], Callable] | None = None) -> FunctorData:
    """Total category of a normal lax functor ``[n] -> Cat`` with its projection to ``[n]``.

    ``push[(i, j)]`` is a pair ``(on objects, on morphisms)`` of label maps
    ``F_i -> F_j`` (identities when absent and ``i == j``); ``lax[(i, j, k)]``
    sends an object ``a`` of ``F_i`` to the label of the comparison
    ``phi_ik(a) -> phi_jk(phi_ij(a))`` in ``F_k`` (identity when absent).
    A morphism ``(i, a) -> (j, b)`` is a morphism ``phi_ij(a) -> b`` of ``F_j``.
    """
    n = len(fibers) - 1
    lax = lax or {}

    def phi(i, j):
        if (i, j) in push:
            return push[(i, j)]
        if i == j:
            return (lambda a: a), (lambda u: u)
        raise InputError(f"no pushforward for {i} -> {j}")

    def comparison(i, j, k, a):
        F = fibers[k]
        if (i, j, k) in lax:
            return lax[(i, j, k)](a)
        return F.labels[F.identity(F.obj(phi(i, k)[0](a)))]

    objects = [(i, a) for i, F in enumerate(fibers) for a in F.objects]
    morphisms = []
    for i, Fi in enumerate(fibers):
        for j in range(i, n + 1):
            Fj = fibers[j]
            for a in Fi.objects:
                pa = Fj.obj(phi(i, j)[0](a))
                for u in Fj.out_of(pa):
                    b = Fj.objects[Fj.tgt[u]]
                    morphisms.append(((i, a, j, b, Fj.labels[u]), (i, a), (j, b)))

    def comp(g, f):
        i, a, j, _, u = f
        _, _, k, c, v = g
        Fk = fibers[k]
        eta = Fk.mor(comparison(i, j, k, a))
        moved = Fk.mor(phi(j, k)[1](u))
        w = Fk.table[Fk.mor(v), Fk.table[moved, eta]]
        return (i, a, k, c, Fk.labels[w])

    ids = {(i, a): (i, a, i, a, F.labels[F.identity(F.obj(a))]) for i, F in enumerate(fibers) for a in F.objects}
    E = FinCategory(objects, morphisms, comp, ids)
    return FunctorData.from_labels(E, ordinal(n), lambda x: x[0], lambda m: (m[0], m[2]))


def terminal_category() -> FinCategory:
    return FinCategory(["*"], [("id", "*", "*")], lambda g, f: "id", {"*": "id"})


def to_terminal(C: FinCategory) -> FunctorData:
    return FunctorData(C, terminal_category(), [0] * C.n_objects, [0] * C.n_morphisms)


def identity_functor(C: FinCategory) -> FunctorData:
    return FunctorData(C, C, range(C.n_objects), range(C.n_morphisms))


def compose_functors(Q: FunctorData, P: FunctorData) -> FunctorData:
    return FunctorData(P.domain, Q.codomain, Q.object_map[P.object_map], Q.morphism_map[P.morphism_map])


def genuine_fiber(P: FunctorData, b: int) -> FinCategory:
    """Objects over ``b`` and the morphisms sent to ``id_b``."""
    E, B = P.domain, P.codomain
    if not 0 <= b < B.n_objects:
        raise InputError(f"object {b} not in the codomain")
    idb = B.identity(b)
    objs = [x for x in range(E.n_objects) if P.object_map[x] == b]
    mors = [f for f in range(E.n_morphisms) if P.morphism_map[f] == idb]
    keep = set(mors)
    ids = None
    if E.is_unital:
        ids = {E.objects[x]: E.labels[E.identities[x]] for x in objs}
    return FinCategory(
        [E.objects[x] for x in objs],
        [(E.labels[f], E.objects[E.src[f]], E.objects[E.tgt[f]]) for f in mors],
        lambda g, f: _checked_label(E, keep, E.table[E.mor_index[g], E.mor_index[f]]),
        ids,
    )


def _checked_label(E: FinCategory, keep: set[int], h: int):
    if h not in keep:
        raise InputError("fiber is not closed under composition")
    return E.labels[h]


# -- deciders ----------------------------------------------------------


def _post_composition_is_bijective(P: FunctorData, f: int, xp: int, over_source: int) -> bool:
    E = P.domain
    x, y = int(E.src[f]), int(E.tgt[f])
    Pm = P.morphism_map
    sources = [g for g in E.hom(xp, x) if Pm[g] == over_source]
    targets = {h for h in E.hom(xp, y) if Pm[h] == Pm[f]}
    images = [int(E.table[f, g]) for g in sources]
    return len(set(images)) == len(images) and set(images) == targets


def is_locally_cartesian_morphism(P: FunctorData, f: int) -> bool:
    """Post-composition with ``f`` is a fiberwise bijection over ``id_{P(x)}``."""
    E, B = P.domain, P.codomain
    if not (E.is_unital and B.is_unital):
        raise InputError("the locally Cartesian decider needs unital categories")
    x = int(E.src[f])
    b = int(P.object_map[x])
    idb = B.identity(b)
    return all(
        _post_composition_is_bijective(P, f, xp, idb)
        for xp in range(E.n_objects)
        if P.object_map[xp] == b
    )


def is_locally_cocartesian_morphism(P: FunctorData, f: int) -> bool:
    return is_locally_cartesian_morphism(opposite_functor(P), f)


def is_cartesian_morphism(P: FunctorData, f: int) -> bool:
    """Strong universal property: ``hom(z, x) -> hom(z, y) x_{hom(Pz, Py)} hom(Pz, Px)`` is bijective."""
    E, B = P.domain, P.codomain
    x, y = int(E.src[f]), int(E.tgt[f])
    Pm = P.morphism_map
    for z in range(E.n_objects):
        pairs = [(int(E.table[f, g]), int(Pm[g])) for g in E.hom(z, x)]
        expected = {
            (h, k)
            for h in E.hom(z, y)
            for k in B.hom(int(P.object_map[z]), int(P.object_map[x]))
            if B.table[Pm[f], k] == Pm[h]
        }
        if len(set(pairs)) != len(pairs) or set(pairs) != expected:
            return False
    return True


def is_cocartesian_morphism(P: FunctorData, f: int) -> bool:
    return is_cartesian_morphism(opposite_functor(P), f)


def _missing_lift(P: FunctorData, decide: Callable[[FunctorData, int], bool]) -> tuple[int, int] | None:
    """First (base morphism, object over its target) with no lift accepted by ``decide``."""
    E, B = P.domain, P.codomain
    verdict = [None] * E.n_morphisms
    for k in range(B.n_morphisms):
        b = int(B.tgt[k])
        for y in range(E.n_objects):
            if P.object_map[y] != b:
                continue
            found = False
            for f in E.into(y):
                if P.morphism_map[f] != k:
                    continue
                if verdict[f] is None:
                    verdict[f] = decide(P, f)
                if verdict[f]:
                    found = True
                    break
            if not found:
                return k, y
    return None


def _has_lifts(P: FunctorData, decide: Callable[[FunctorData, int], bool]) -> bool:
    return _missing_lift(P, decide) is None


FIBRATION_KINDS = ("locally-cartesian", "cartesian", "locally-cocartesian", "cocartesian")


def fibration_failure(P: FunctorData, kind: str) -> str | None:
    """``None`` when ``P`` is a fibration of the given kind, else the first missing lift."""
    if kind not in FIBRATION_KINDS:
        raise InputError(f"unknown fibration kind {kind!r}")
    co = kind.endswith("cocartesian")
    decide = is_locally_cartesian_morphism if kind.startswith("locally") else is_cartesian_morphism
    Q = opposite_functor(P) if co else P
    miss = _missing_lift(Q, decide)
    if miss is None:
        return None
    k, y = miss
    end = "source" if co else "target"
    return (f"no {kind.replace('-', ' ')} lift of base morphism {P.codomain.labels[k]} "
            f"at object {P.domain.objects[y]} over its {end}")


def is_locally_cartesian_fibration(P: FunctorData) -> bool:
    return _has_lifts(P, is_locally_cartesian_morphism)


def is_locally_cocartesian_fibration(P: FunctorData) -> bool:
    return _has_lifts(opposite_functor(P), is_locally_cartesian_morphism)


def is_cartesian_fibration(P: FunctorData) -> bool:
    return _has_lifts(P, is_cartesian_morphism)


def is_cocartesian_fibration(P: FunctorData) -> bool:
    return _has_lifts(opposite_functor(P), is_cartesian_morphism)


def terminal_objects(C: FinCategory) -> list[int]:
    return [t for t in range(C.n_objects) if all(len(C.hom(x, t)) == 1 for x in range(C.n_objects))]


def has_terminal(C: FinCategory) -> int | None:
    """First object ``t`` with exactly one morphism from every object, else ``None``."""
    ts = terminal_objects(C)
    return ts[0] if ts else None


# -- text format -------------------------------------------------------

_TOKEN = r"[^\s:=*()]+"
_OBJECTS_RE = re.compile(r"^objects\s*:(.*)$")
_MOR_RE = re.compile(rf"^({_TOKEN})\s*:\s*({_TOKEN})\s*->\s*({_TOKEN})$")
_COMP_RE = re.compile(rf"^({_TOKEN})\s*=\s*({_TOKEN})\s*\*\s*({_TOKEN})$")
_ID_RE = re.compile(rf"^id\(\s*({_TOKEN})\s*\)\s*=\s*({_TOKEN})$")


def _writable(token: str) -> bool:
    return bool(re.fullmatch(_TOKEN, token)) and "->" not in token and token != "objects"


def format_category(C: FinCategory) -> str:
    """Line format; labels that are not plain tokens are replaced by ``m<i>`` / ``o<i>``."""
    name = [str(m) if _writable(str(m)) else f"m{i}" for i, m in enumerate(C.labels)]
    obj = [str(x) if _writable(str(x)) else f"o{i}" for i, x in enumerate(C.objects)]
    if len(set(name)) != len(name) or len(set(obj)) != len(obj):
        name = [f"m{i}" for i in range(C.n_morphisms)]
        obj = [f"o{i}" for i in range(C.n_objects)]
    lines = ["objects: " + " ".join(obj)]
    for i in range(C.n_morphisms):
        lines.append(f"{name[i]}: {obj[C.src[i]]} -> {obj[C.tgt[i]]}")
    g_idx, f_idx = np.nonzero(C.table >= 0)
    for g, f in sorted(zip(g_idx.tolist(), f_idx.tolist()), key=lambda p: (p[1], p[0])):
        lines.append(f"{name[C.table[g, f]]} = {name[g]} * {name[f]}")
    if C.identities is not None:
        for x, e in enumerate(C.identities):
            lines.append(f"id({obj[x]}) = {name[e]}")
    return "\n".join(lines) + "\n"


def parse_category(text: str) -> FinCategory:
    """Parse the line format produced by :func:`format_category`."""
    objects: list[str] = []
    morphisms: list[tuple[str, str, str]] = []
    comp: dict[tuple[str, str], str] = {}
    ids: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _OBJECTS_RE.match(line):
            objects.extend(m.group(1).split())
        elif m := _ID_RE.match(line):
            if m.group(1) in ids:
                raise InputError(f"line {lineno}: identity of {m.group(1)} given twice")
            ids[m.group(1)] = m.group(2)
        elif m := _MOR_RE.match(line):
            morphisms.append((m.group(1), m.group(2), m.group(3)))
        elif m := _COMP_RE.match(line):
            key = (m.group(2), m.group(3))
            if key in comp and comp[key] != m.group(1):
                raise InputError(f"line {lineno}: conflicting composite for {key[0]} * {key[1]}")
            comp[key] = m.group(1)
        else:
            raise InputError(f"line {lineno}: cannot parse {raw.strip()!r}")
    known = set(objects)
    for name, s, t in morphisms:
        for x in (s, t):
            if x not in known:
                raise InputError(f"morphism {name}: unknown object {x}")
    return FinCategory(objects, morphisms, comp, ids or None)

