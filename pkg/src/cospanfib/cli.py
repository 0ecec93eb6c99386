"""Command-line driver: ``cospanfib <subcommand> ...``.

Exit codes: 0 on success, 1 when a checked property fails (a counterexample
is printed), 2 on malformed input. ``--format=machine`` prints ``key=value``
lines instead of prose.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from math import factorial
from pathlib import Path
from typing import Sequence

from . import fincat
from .cospan import (
    Cospan,
    HClass,
    automorphism_order,
    canonical_class,
    closed_count,
    compose,
    format_cospan,
    format_hclass,
    parse_cospan,
    parse_hclass,
    reduce,
)
from .cospan_cats import (
    build_hcsp_saturated,
    build_red_category,
    build_red_inj_category,
    enumerate_hcsp_hom,
    fiber_R,
    functor_R,
    is_locally_R_cartesian,
    is_locally_R_cocartesian,
)
from .errors import CapError, InputError
from .fixtures import by_name, corpus, fibration_fixtures
from .homology import components, homology
from .simplicial import lifting
from .simplicial.constructions import nerve, nerve_map
from .simplicial.dump import format_sset, parse_sset
from .simplicial.keylemma import key_lemma_object
from .simplicial.sset import opposite_map
from .suites import SUITES, SuiteConfig, run_suite

TRUNCATION_NOTE = ("note: data is stored up to cap {cap}; verdicts cover lifting problems "
                   "and homology only in the degrees that fit below the cap")


@dataclass
class Report:
    """Ordered ``(key, value, prose)`` records; rendered as prose or ``key=value``."""

    records: list[tuple[str, str, str]] = field(default_factory=list)

    def add(self, key: str, value, text: str | None = None) -> None:
        value = _render(value)
        self.records.append((key, value, f"{key}: {value}" if text is None else text))

    def note(self, text: str) -> None:
        self.records.append(("", "", text))

    def render(self, machine: bool) -> str:
        if not machine:
            return "\n".join(t for _, _, t in self.records) + "\n"
        return "\n".join(f"{k}={v.replace(' ', '_')}" for k, v, _ in self.records if k) + "\n"


def _render(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


# -- input helpers -------------------------------------------------------


def _literal(text: str) -> str:
    """Inline literal, or the contents of a file given as ``@path``."""
    if text.startswith("@"):
        try:
            return Path(text[1:]).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {text[1:]}: {exc.strerror}") from None
    return text


def _cospan(text: str) -> Cospan:
    text = _literal(text).strip()
    if text.startswith("hcsp"):
        return parse_hclass(text).to_cospan()
    return parse_cospan(text)


def _hclass(text: str) -> HClass:
    text = _literal(text).strip()
    return parse_hclass(text) if text.startswith("hcsp") else canonical_class(parse_cospan(text))


def _int_args(spec: str, parts: list[str], count: int) -> list[int]:
    if len(parts) != count:
        raise InputError(f"{spec!r} expects {count} integer parameter(s)")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InputError(f"{spec!r}: parameters must be integers") from None


def _category(spec: str) -> fincat.FinCategory:
    """``red:m``, ``red-inj:m``, ``hcsp:m:N``, ``ordinal:n``, ``cyclic:n`` or a category file."""
    kind, *rest = spec.split(":")
    builders = {
        "red": (1, build_red_category),
        "red-inj": (1, build_red_inj_category),
        "hcsp": (2, build_hcsp_saturated),
        "ordinal": (1, fincat.ordinal),
        "cyclic": (1, fincat.cyclic_group),
    }
    if kind in builders:
        arity, fn = builders[kind]
        return fn(*_int_args(spec, rest, arity))
    return fincat.parse_category(_literal("@" + spec))


def _label(x) -> str:
    if isinstance(x, tuple):
        return "(" + ", ".join(map(_label, x)) + ")"
    return str(x)


def _fixture(name: str):
    try:
        return by_name(name)
    except KeyError:
        raise InputError(f"unknown fixture {name!r}; see 'cospanfib list-fixtures'") from None


# -- cospan level --------------------------------------------------------


def cmd_compose(args, rep: Report) -> int:
    maps = [_cospan(t) for t in args.cospans]
    h = maps[-1]
    for g in reversed(maps[:-1]):
        if g.a != h.b:
            raise InputError(f"cannot compose: {h.b} points meet {g.a}")
        h = compose(g, h)
    rep.add("composite", format_cospan(h))
    rep.add("reduced", h.is_reduced())
    rep.add("closed", closed_count(h))
    return 0


def cmd_canon(args, rep: Report) -> int:
    rep.add("class", format_hclass(canonical_class(_cospan(args.cospan))))
    return 0


def cmd_reduce(args, rep: Report) -> int:
    f = _cospan(args.cospan)
    rep.add("reduced_part", format_cospan(reduce(f)))
    rep.add("closed", closed_count(f))
    return 0


def cmd_auto_order(args, rep: Report) -> int:
    f = _cospan(args.cospan)
    order, k = automorphism_order(f), closed_count(f)
    rep.add("automorphisms", order)
    rep.add("closed", k)
    if order != factorial(k):
        rep.add("counterexample", f"|Aut| = {order} but closed! = {factorial(k)}")
        return 1
    return 0


def cmd_enum_hom(args, rep: Report) -> int:
    classes = enumerate_hcsp_hom(args.a, args.b, args.max_closed)
    rep.add("count", len(classes))
    for h in classes:
        rep.add("class", format_hclass(h), format_hclass(h))
    return 0


def cmd_fiber_R(args, rep: Report) -> int:
    g = functor_R(_hclass(args.morphism))
    rep.add("over", str(g))
    for h in fiber_R(g, args.max_closed):
        rep.add("class", format_hclass(h), format_hclass(h))
    return 0


def cmd_check_lcart(args, rep: Report) -> int:
    h = _hclass(args.cospan)
    decide = is_locally_R_cocartesian if args.co else is_locally_R_cartesian
    kind = "locally R-coCartesian" if args.co else "locally R-Cartesian"
    ok = decide(h, args.bound)
    rep.add(kind.replace(" ", "_"), ok, f"{kind}: {'yes' if ok else 'no'}")
    rep.add("bound", args.bound, f"(closed counts checked up to {args.bound})")
    if not ok:
        missing = [k for k in range(args.bound + 1) if k < h.closed]
        rep.add("counterexample", f"closed counts {missing} over {functor_R(h)} are not reached, "
                                  f"composition adds {h.closed}")
        return 1
    return 0


# -- fincat level ----------------------------------------------------------


def cmd_build_cat(args, rep: Report) -> int:
    C = _category(args.category)
    rep.add("objects", C.n_objects)
    rep.add("morphisms", C.n_morphisms)
    t = fincat.has_terminal(C)
    rep.add("terminal", "none" if t is None else C.objects[t])
    if args.output:
        Path(args.output).write_text(fincat.format_category(C))
        rep.add("written", args.output)
    elif args.dump:
        rep.note(fincat.format_category(C).rstrip())
    return 0


def cmd_check_fibration(args, rep: Report) -> int:
    P = _fixture(args.fixture).functor()
    code = 0
    for kind in fincat.FIBRATION_KINDS:
        bad = fincat.fibration_failure(P, kind)
        rep.add(kind.replace("-", "_"), bad is None, f"{kind} fibration: {'yes' if bad is None else 'no'}")
        if kind == args.require and bad is not None:
            rep.add("counterexample", bad)
            code = 1
    return code


# -- simplicial level ------------------------------------------------------


def cmd_nerve(args, rep: Report) -> int:
    if args.sset_out and not args.category:
        raise InputError("--output needs --category")
    X = nerve(_category(args.category), args.cap) if args.category else nerve_map(
        _fixture(args.fixture).functor(), args.cap).domain
    rep.add("cap", X.cap)
    rep.add("counts", ",".join(map(str, X.counts())))
    rep.add("nondegenerate", ",".join(str(int(X.nondegenerate(d).sum())) for d in range(X.cap + 1)))
    if args.sset_out:
        Path(args.sset_out).write_text(format_sset(X))
        rep.add("written", args.sset_out)
    rep.note(TRUNCATION_NOTE.format(cap=X.cap))
    return 0


def _edge_failure(p, f: int, args):
    # Cartesian edges of p are the coCartesian edges of its opposite
    q = p if args.co else opposite_map(p)
    return lifting.cocartesian_edge_failure(q, f, args.cap, args.mode, args.local)


def cmd_check_edge(args, rep: Report) -> int:
    fx = _fixture(args.fixture)
    P = fx.functor()
    p = nerve_map(P, args.cap)
    edges = range(P.domain.n_morphisms) if args.edge is None else [args.edge]
    if args.edge is not None and not 0 <= args.edge < p.domain.count(1):
        raise InputError(f"edge {args.edge} out of range 0..{p.domain.count(1) - 1}")
    kind = ("locally " if args.local else "") + ("coCartesian" if args.co else "Cartesian")
    rep.add("mode", args.mode)
    code = 0
    for f in edges:
        bad = _edge_failure(p, f, args)
        label = _label(P.domain.labels[f])
        rep.add(f"edge_{f}", bad is None, f"edge {f} {label}: {kind} up to cap {args.cap}: "
                                         f"{'yes' if bad is None else 'no'}")
        if bad is not None and args.edge is not None:
            rep.add("counterexample", bad)
            code = 1
    rep.note(TRUNCATION_NOTE.format(cap=args.cap))
    return code


def cmd_key_lemma(args, rep: Report) -> int:
    fx = _fixture(args.fixture)
    p = nerve_map(fx.functor(), args.cap)
    vertices = range(p.domain.count(0)) if args.vertex is None else [args.vertex]
    code = 0
    for x in vertices:
        K = key_lemma_object(p, x).sset
        top = K.cap - 1
        H = homology(K, top)
        pieces = components(K)
        ok = pieces == 1 and all(g.is_trivial() for g in H[1:])
        rep.add(f"vertex_{x}", ok, f"vertex {x}: {pieces} component(s), "
                                   + ", ".join(f"H_{d} = {g}" for d, g in enumerate(H))
                                   + f" (up to cap {K.cap})")
        if not ok and code == 0:
            rep.add("counterexample", f"vertex {x}")
            code = 1
    rep.note(TRUNCATION_NOTE.format(cap=args.cap))
    return code


def cmd_homology(args, rep: Report) -> int:
    sources = [s for s in (args.sset, args.category, args.fixture) if s]
    if len(sources) != 1:
        raise InputError("give exactly one of --sset, --category, --fixture")
    if args.sset:
        X = parse_sset(_literal("@" + args.sset))
    elif args.category:
        X = nerve(_category(args.category), args.cap)
    else:
        X = nerve_map(_fixture(args.fixture).functor(), args.cap).domain
    up_to = X.cap - 1 if args.up_to is None else args.up_to
    H = homology(X, up_to, method=args.method)
    for d, g in enumerate(H):
        rep.add(f"H_{d}", g, f"H_{d} = {g}")
    rep.note(f"(degrees 0..{up_to}, computed from cells up to cap {X.cap})")
    return 0


def cmd_list_fixtures(args, rep: Report) -> int:
    for fx in corpus():
        rep.add("corpus", fx.name, f"corpus: {fx.name}")
    for fx in fibration_fixtures():
        rep.add("fibration", fx.name, f"fibration: {fx.name}")
    return 0


def cmd_verify(args, rep: Report) -> int:
    cfg = SuiteConfig(n=args.n, closed_bound=args.closed_bound, cap=args.cap, seed=args.seed, jobs=args.jobs)
    if args.random_triples is not None:
        cfg.random_triples = args.random_triples
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rep.add("seed", cfg.seed)
    code = 0
    for name in names:
        res = run_suite(name, cfg)
        rep.add(f"{name}", "pass" if res.ok else "FAIL", f"[{'PASS' if res.ok else 'FAIL'}] {name}")
        for line in res.lines:
            rep.add(f"{name}_detail", line, "  " + line)
        if res.counterexample:
            rep.add(f"{name}_counterexample", res.counterexample, f"  counterexample: {res.counterexample}")
        if args.timings:
            rep.add(f"{name}_seconds", f"{res.seconds:.2f}", f"  time: {res.seconds:.2f} s")
        if not res.ok:
            code = 1
    return code


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cospanfib", description="Cospans, reduced cospans and fibration checks.")
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("compose", cmd_compose, "Compose cospans; 'compose h g f' prints h o g o f.")
    p.add_argument("cospans", nargs="+", help="cospan literals (csp ... or hcsp ...) or @file")
    for name, fn, text in (("canon", cmd_canon, "Canonical iso class of a cospan."),
                           ("reduce", cmd_reduce, "Reduced part of a cospan."),
                           ("auto-order", cmd_auto_order, "Count automorphisms by brute force.")):
        add(name, fn, text).add_argument("cospan")
    p = add("enum-hom", cmd_enum_hom, "List the classes of hCsp(a, b) with bounded closed count.")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--max-closed", type=int, default=2)
    p = add("fiber-R", cmd_fiber_R, "List the fiber of R over the reduced class of a cospan.")
    p.add_argument("morphism")
    p.add_argument("--max-closed", type=int, default=3)
    p = add("check-lcart", cmd_check_lcart, "Decide whether a cospan is locally R-Cartesian.")
    p.add_argument("cospan")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--co", action="store_true", help="decide locally R-coCartesian instead")

    p = add("build-cat", cmd_build_cat, "Build red:m, red-inj:m, hcsp:m:N, ordinal:n or cyclic:n.")
    p.add_argument("category")
    p.add_argument("--output", help="write the category in text form")
    p.add_argument("--dump", action="store_true", help="print the category in text form")
    p = add("check-fibration", cmd_check_fibration, "Report the four fibration properties of a fixture.")
    p.add_argument("fixture")
    p.add_argument("--require", choices=fincat.FIBRATION_KINDS, default="locally-cocartesian")

    p = add("nerve", cmd_nerve, "Cell counts of a capped nerve.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--category")
    src.add_argument("--fixture", help="the nerve of a fixture's domain")
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--output", dest="sset_out", help="write the nerve as a simplicial set dump")
    p = add("check-edge", cmd_check_edge, "Decide (locally) (co)Cartesian edges of a fixture's nerve.")
    p.add_argument("fixture")
    p.add_argument("--edge", type=int, help="one edge index; all edges by default")
    p.add_argument("--mode", choices=("lifting", "trivial-kan"), default="lifting")
    p.add_argument("--local", action="store_true")
    p.add_argument("--co", action="store_true", help="coCartesian instead of Cartesian")
    p.add_argument("--cap", type=int, default=4)
    p = add("key-lemma", cmd_key_lemma, "Connectivity and homology of the fiber-under-vertex objects.")
    p.add_argument("fixture")
    p.add_argument("--vertex", type=int)
    p.add_argument("--cap", type=int, default=4)
    p = add("homology", cmd_homology, "Integral homology below the cap.")
    p.add_argument("--sset", help="a simplicial set dump file")
    p.add_argument("--category")
    p.add_argument("--fixture")
    p.add_argument("--cap", type=int, default=4)
    p.add_argument("--up-to", type=int)
    p.add_argument("--method", choices=("sparse", "dense", "minors"), default="sparse")
    add("list-fixtures", cmd_list_fixtures, "Names accepted by --fixture.")

    p = add("verify", cmd_verify, "Run an acceptance suite, or all of them.")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--closed-bound", type=int, default=3)
    p.add_argument("--cap", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--random-triples", type=int)
    p.add_argument("--timings", action="store_true")
    for action in sub.choices.values():
        action.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS)
    return parser


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Execute one command; returns the exit code and the report text."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return (int(exc.code) if exc.code is not None else 0), ""
    rep = Report()
    try:
        code = args.fn(args, rep)
    except (InputError, CapError) as exc:
        return 2, f"error: {exc}\n"
    return code, rep.render(args.format == "machine")


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
