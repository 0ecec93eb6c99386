"""The acceptance suites behind ``cospanfib verify``.

Each suite returns a :class:`SuiteResult` whose ``lines`` are deterministic
for a fixed :class:`SuiteConfig`; timings are kept apart and only printed on
request. Fixture-parallel suites honour ``jobs`` and keep canonical order.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Callable

import numpy as np

from . import fincat
from .cospan import (
    Cospan,
    canonical_class,
    closed_count,
    compose,
    automorphism_order,
    enumerate_cospans,
    find_isomorphism,
    format_cospan,
    opposite,
    parse_cospan,
    random_cospan,
)
from .cospan_cats import build_red_inj_category, enumerate_hcsp_hom, is_locally_R_cartesian
from .errors import InputError
from .finset import Partition
from .fixtures import Fixture, corpus, fibration_fixtures, non_cocartesian
from .homology import (
    chain_complex,
    components,
    format_homology,
    homology,
    invariant_factors,
    is_contractible_through,
    is_homology_iso_through,
)
from .simplicial import lifting
from .simplicial.constructions import fiber, nerve, nerve_map, restrict
from .simplicial.keylemma import is_levelwise_iso, key_lemma_object, under_iso
from .simplicial.sset import SimplicialSet, boundary

# the cospans of the composition regression, as CLI literals
CLOSING_F = "csp a=0 b=1 n=1 R={{1}} la=[] lb=[1]"
CLOSING_G = "csp a=1 b=1 n=2 R={{1},{2}} la=[1] lb=[2]"
CLOSING_COMPOSITE = Cospan(0, 1, Partition(3, ((1, 2), (3,))), (), (1,))
CLOSING_REDUCED = "csp a=0 b=1 n=2 R={{1},{2}} la=[] lb=[2]"


@dataclass
class SuiteConfig:
    n: int = 2
    closed_bound: int = 3
    cap: int = 4
    seed: int = 0
    jobs: int = 1
    exhaustive_ends: int = 2
    exhaustive_carrier: int = 4
    exhaustive_total: int = 6
    random_triples: int = 10_000
    random_carrier: int = 8
    automorphism_carrier: int = 6


@dataclass
class SuiteResult:
    name: str
    ok: bool
    lines: list[str] = field(default_factory=list)
    counterexample: str | None = None
    seconds: float = 0.0

    def fail(self, counterexample: str) -> "SuiteResult":
        if self.ok:
            self.ok = False
            self.counterexample = counterexample
        return self


def _map(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# -- 1. strict associativity ---------------------------------------------


def associativity(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("associativity", True)
    ends, top, total = cfg.exhaustive_ends, cfg.exhaustive_carrier, cfg.exhaustive_total
    by: dict[tuple[int, int, int], list[Cospan]] = {}
    for a in range(ends + 1):
        for b in range(ends + 1):
            for f in enumerate_cospans(a, b, top):
                by.setdefault((a, b, f.carrier.n), []).append(f)
    checked = 0
    for A, B, C, D in itertools.product(range(ends + 1), repeat=4):
        for nf, ng, nh in itertools.product(range(top + 1), repeat=3):
            if nf + ng + nh > total:
                continue
            F, G, H = by.get((A, B, nf), []), by.get((B, C, ng), []), by.get((C, D, nh), [])
            if not (F and G and H):
                continue
            hg = [[compose(h, g) for g in G] for h in H]
            for f in F:
                for j, g in enumerate(G):
                    gf = compose(g, f)
                    for i, h in enumerate(H):
                        checked += 1
                        if compose(h, gf) != compose(hg[i][j], f):
                            return res.fail(f"f={f} g={g} h={h}")
    res.lines.append(f"exhaustive: ends <= {ends}, each carrier <= {top}, total carrier <= {total}: "
                     f"{checked} triples equal")
    rng = random.Random(cfg.seed)
    for _ in range(cfg.random_triples):
        a, b, c, d = (rng.randint(0, 3) for _ in range(4))
        f = random_cospan(rng, a, b, cfg.random_carrier)
        g = random_cospan(rng, b, c, cfg.random_carrier)
        h = random_cospan(rng, c, d, cfg.random_carrier)
        if compose(h, compose(g, f)) != compose(compose(h, g), f):
            return res.fail(f"seed={cfg.seed} f={f} g={g} h={h}")
    res.lines.append(f"random: seed={cfg.seed}, {cfg.random_triples} triples, carriers <= {cfg.random_carrier}: all equal")
    return res


# -- 2. the reduced-composite regression ---------------------------------


def reduced_composite(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("reduced-composite", True)
    f, g = parse_cospan(CLOSING_F), parse_cospan(CLOSING_G)
    h = compose(g, f)
    res.lines.append(f"g o f = {format_cospan(h)}")
    if h != CLOSING_COMPOSITE:
        return res.fail(f"composite differs from {format_cospan(CLOSING_COMPOSITE)}")
    if not (f.is_reduced() and g.is_reduced()):
        return res.fail("the inputs are expected to be reduced")
    iso = find_isomorphism(h, parse_cospan(CLOSING_REDUCED))
    if iso is None:
        return res.fail(f"no isomorphism onto {CLOSING_REDUCED}")
    res.lines.append(f"isomorphic to {CLOSING_REDUCED} via sigma={list(iso.sigma)}")
    if h.is_reduced() or closed_count(h) != 1:
        return res.fail("the composite should have exactly one closed component")
    res.lines.append("both factors reduced, composite not reduced (closed count 1)")
    return res


# -- 3. automorphism orders ----------------------------------------------


def automorphisms(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("automorphisms", True)
    ends, top = cfg.exhaustive_ends, cfg.automorphism_carrier
    checked = 0
    for a in range(ends + 1):
        for b in range(ends + 1):
            for f in enumerate_cospans(a, b, top):
                checked += 1
                if automorphism_order(f) != factorial(closed_count(f)):
                    return res.fail(format_cospan(f))
    res.lines.append(f"ends <= {ends}, carrier <= {top}: {checked} cospans with |Aut| = closed!")
    return res


# -- 4. locally R-Cartesian iff reduced ----------------------------------


def lcart_reduced(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("lcart-reduced", True)
    checked = 0
    for a in range(3):
        for b in range(3):
            for h in enumerate_hcsp_hom(a, b, 2):
                op = canonical_class(opposite(h.to_cospan()))
                for bound in range(1, 5):
                    checked += 1
                    got = is_locally_R_cartesian(h, bound)
                    if got != (h.closed == 0):
                        return res.fail(f"{h} bound={bound}: decided {got}")
                    if is_locally_R_cartesian(op, bound) != got:
                        return res.fail(f"{h} bound={bound}: opposite disagrees")
    res.lines.append(f"a, b <= 2, closed <= 2, bounds 1..4: {checked} decisions match reducedness and duality")
    return res


# -- 5. R is not Cartesian -----------------------------------------------


def non_cartesian(cfg: SuiteConfig) -> SuiteResult:
    from .cli import run

    res = SuiteResult("non-cartesian", True)
    h = format_cospan(compose(parse_cospan(CLOSING_G), parse_cospan(CLOSING_F)))
    for label, literal, want in (("f", CLOSING_F, 0), ("g", CLOSING_G, 0), ("g o f", h, 1)):
        code, out = run(["check-lcart", literal, "--bound", "3"])
        res.lines.append(f"check-lcart {label}: exit {code} ({out.strip().splitlines()[0]})")
        if code != want:
            res.fail(f"check-lcart on {literal} exited {code}, expected {want}")
    return res


# -- 6. terminal object of Csp^red,inj ------------------------------------


def terminal(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("terminal", True)
    for m in range(1, 5):
        C = build_red_inj_category(m)
        t = fincat.has_terminal(C)
        res.lines.append(f"m={m}: terminal object {None if t is None else C.objects[t]}")
        if t is None or C.objects[t] != 0:
            return res.fail(f"build_red_inj_category({m}) has no terminal 0")
    C = build_red_inj_category(2)
    got = len(C.hom(C.obj(2), C.obj(2)))
    want = sum(comb(2, k) ** 2 * factorial(k) for k in range(3))
    res.lines.append(f"|hom(2, 2)| = {got}, partial injections = {want}")
    if got != want:
        res.fail(f"|hom(2, 2)| = {got}")
    return res


# -- 7. decider agreement ------------------------------------------------

_PROPERTIES = ("locally coCartesian", "coCartesian", "locally Cartesian", "Cartesian")


def _fincat_verdicts(P, m: int) -> tuple[bool, ...]:
    return (fincat.is_locally_cocartesian_morphism(P, m), fincat.is_cocartesian_morphism(P, m),
            fincat.is_locally_cartesian_morphism(P, m), fincat.is_cartesian_morphism(P, m))


def _simplicial_verdicts(p, m: int, cap: int, mode: str) -> tuple[bool, ...]:
    return (lifting.is_locally_cocartesian_edge(p, m, cap, mode), lifting.is_cocartesian_edge(p, m, cap, mode),
            lifting.is_locally_cartesian_edge(p, m, cap, mode), lifting.is_cartesian_edge(p, m, cap, mode))


def _agreement_one(args: tuple[int, tuple[int, ...]]) -> tuple[str, int, str | None]:
    index, caps = args
    fx = corpus()[index]
    P = fx.functor()
    for cap in caps:
        p = nerve_map(P, cap)
        for m in range(P.domain.n_morphisms):
            want = _fincat_verdicts(P, m)
            for mode in ("lifting", "trivial-kan"):
                got = _simplicial_verdicts(p, m, cap, mode)
                if got != want:
                    k = next(i for i in range(4) if got[i] != want[i])
                    return fx.name, P.domain.n_morphisms, (
                        f"{fx.name} cap={cap} edge {P.domain.labels[m]}: {_PROPERTIES[k]} "
                        f"fincat={want[k]} {mode}={got[k]}")
    return fx.name, P.domain.n_morphisms, None


def agreement(cfg: SuiteConfig, caps: tuple[int, ...] = (3, 4)) -> SuiteResult:
    res = SuiteResult("agreement", True)
    results = _map(_agreement_one, [(i, caps) for i in range(len(corpus()))], cfg.jobs)
    for name, edges, bad in results:
        res.lines.append(f"{name}: {edges} edges, caps {','.join(map(str, caps))}: "
                         + ("agree" if bad is None else "DISAGREE"))
        if bad is not None:
            res.fail(bad)
    res.lines.append(f"{len(results)} functors, fincat = lifting = trivial-kan on {len(_PROPERTIES)} properties")
    return res


# -- 8. fiber-under-vertex objects ---------------------------------------------


@lru_cache(maxsize=None)
def _fibrations(n: int, closed_bound: int) -> tuple[Fixture, ...]:
    return tuple(fibration_fixtures(n, closed_bound))


def _key_lemma_one(args: tuple[int, int, int, int]) -> tuple[str, int, str | None]:
    index, n, closed_bound, cap = args
    fx = _fibrations(n, closed_bound)[index]
    p = nerve_map(fx.functor(), cap)
    for x in range(p.domain.count(0)):
        K = key_lemma_object(p, x).sset
        top = min(2, K.cap - 1)
        if not is_contractible_through(K, top):
            H = homology(K, top)
            return fx.name, p.domain.count(0), (f"{fx.name} vertex {x}: {components(K)} components, "
                                                + ", ".join(f"H_{d} = {g}" for d, g in enumerate(H)))
    return fx.name, p.domain.count(0), None


def key_lemma(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("key-lemma", True)
    fixtures = _fibrations(cfg.n, cfg.closed_bound)
    strict = {fx.name for fx in non_cocartesian(list(fixtures))}
    jobs = [(i, cfg.n, cfg.closed_bound, cfg.cap) for i in range(len(fixtures))]
    vertices = 0
    for name, count, bad in _map(_key_lemma_one, jobs, cfg.jobs):
        vertices += count
        if bad is not None:
            res.lines.append(f"{name}: FAILS")
            res.fail(bad)
    res.lines.append(f"{len(fixtures)} locally coCartesian fibrations over [n], n <= {cfg.n}, "
                     f"closed bound <= {cfg.closed_bound}, cap {cfg.cap}")
    res.lines.append(f"{vertices} vertices: fiber-under-vertex object connected with H_1 = H_2 = 0 (up to cap)")
    res.lines.append(f"{len(strict)} of them not coCartesian, e.g. {sorted(strict)[0] if strict else 'none'}")
    if not strict:
        res.fail("no fixture is locally coCartesian without being coCartesian")
    return res


# -- 9. the under-category comparison ------------------------------------


def _corrupted(T: SimplicialSet) -> SimplicialSet:
    faces = [f.copy() for f in T.faces]
    faces[1][0, 0] = (faces[1][0, 0] + 1) % T.count(0)
    degens = None if T.degeneracies is None else [s.copy() for s in T.degeneracies]
    return SimplicialSet(faces, degens, T.truncated, name="corrupted")


def under_iso_suite(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("under-iso", True)
    upto = cfg.cap - 2
    control = None
    for fx in corpus():
        p = nerve_map(fx.functor(), cfg.cap)
        Y = p.codomain
        if not Y.is_vertex_determined():
            res.lines.append(f"{fx.name}: not applicable, codomain cells are not determined by their vertices")
            continue
        checked = 0
        for s in range(Y.count(1)):
            for x in np.flatnonzero(p.levels[0] == Y.faces[1][s, 1]).tolist():
                u = under_iso(p, s, x, upto)
                checked += 1
                if not u.holds():
                    res.fail(f"{fx.name} edge {s} vertex {x}")
                if control is None and u.target.count(0) > 1 and u.target.count(1) > 0:
                    control = u
        res.lines.append(f"{fx.name}: {checked} comparisons bijective through degree {upto}")
    if control is None:
        return res.fail("no comparison large enough for the negative control")
    broken = is_levelwise_iso(control.source, _corrupted(control.target), control.map, control.upto)
    res.lines.append(f"negative control with one corrupted face: {'passes (BAD)' if broken else 'fails as expected'}")
    if broken:
        res.fail("the corrupted comparison was accepted")
    return res


# -- 10. fiber inclusions into restrictions -------------------------------


def _fiber_inclusion_one(args: tuple[int, int, int, int]) -> tuple[str, int, str | None]:
    index, n, closed_bound, cap = args
    fx = _fibrations(n, closed_bound)[index]
    p = nerve_map(fx.functor(), cap)
    Y = p.codomain
    checked = 0
    for d in range(1, fx.over + 1):
        for s in np.flatnonzero(Y.nondegenerate(d)).tolist():
            q = restrict(p, d, s)
            vertex_of = {tuple(t): k for k, t in enumerate(q.codomain.labels[0])}
            for v in (0, d):
                i = fiber(q, vertex_of[(v,)]).pr_left()
                checked += 1
                if not is_homology_iso_through(i, cap - 2):
                    return fx.name, checked, f"{fx.name} simplex {s} of degree {d}, vertex {v}"
    return fx.name, checked, None


def fiber_inclusions(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("fiber-inclusions", True)
    fixtures = _fibrations(cfg.n, cfg.closed_bound)
    jobs = [(i, cfg.n, cfg.closed_bound, cfg.cap) for i in range(len(fixtures))]
    total = 0
    for name, checked, bad in _map(_fiber_inclusion_one, jobs, cfg.jobs):
        total += checked
        if bad is not None:
            res.fail(bad)
    res.lines.append(f"{len(fixtures)} fixtures, {total} end-vertex fiber inclusions: "
                     f"homology isomorphisms in degrees <= {cfg.cap - 2}")
    return res


# -- 11. homology engine -------------------------------------------------


def _all_methods(X: SimplicialSet, up_to: int) -> tuple[str | None, list]:
    C = chain_complex(X, up_to + 1)
    for d in range(1, up_to + 2):
        shape = (C.dims[d - 1], C.dims[d])
        ref = invariant_factors(C.boundary[d], shape, "minors")
        for method in ("sparse", "dense"):
            if invariant_factors(C.boundary[d], shape, method) != ref:
                return f"degree {d}: {method} elimination disagrees with the minors", []
    return None, homology(X, up_to)


def homology_suite(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("homology", True)
    cases = [
        ("boundary of Delta^3", boundary(3), {2: "Z"}),
        ("nerve of Z/2 at cap 4", nerve(fincat.cyclic_group(2), 4), {1: "Z/2", 3: "Z/2"}),
    ]
    for name, X, want in cases:
        bad, H = _all_methods(X, X.cap - 1)
        if bad:
            return res.fail(f"{name}: {bad}")
        res.lines.append(f"{name}: " + format_homology(H).replace("\n", ", ") + " (three SNF methods agree)")
        for d, g in want.items():
            if str(H[d]) != g:
                res.fail(f"{name}: H_{d} = {H[d]}, expected {g}")
    return res


SUITES: dict[str, Callable[[SuiteConfig], SuiteResult]] = {
    "associativity": associativity,
    "reduced-composite": reduced_composite,
    "automorphisms": automorphisms,
    "lcart-reduced": lcart_reduced,
    "non-cartesian": non_cartesian,
    "terminal": terminal,
    "agreement": agreement,
    "key-lemma": key_lemma,
    "under-iso": under_iso_suite,
    "fiber-inclusions": fiber_inclusions,
    "homology": homology_suite,
}


def run_suite(name: str, cfg: SuiteConfig) -> SuiteResult:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    start = time.perf_counter()
    res = SUITES[name](cfg)
    res.seconds = time.perf_counter() - start
    return res
