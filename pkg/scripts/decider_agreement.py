"""Edge-by-edge table of the categorical and simplicial (co)Cartesian deciders on the corpus."""

import argparse

from cospanfib import fincat
from cospanfib.fixtures import corpus
from cospanfib.simplicial import lifting, nerve_map

COLUMNS = ("lcoc", "coc", "lcar", "car")


def verdicts_fincat(P, m):
    return (fincat.is_locally_cocartesian_morphism(P, m), fincat.is_cocartesian_morphism(P, m),
            fincat.is_locally_cartesian_morphism(P, m), fincat.is_cartesian_morphism(P, m))


def verdicts_sset(p, m, cap, mode):
    return (lifting.is_locally_cocartesian_edge(p, m, cap, mode), lifting.is_cocartesian_edge(p, m, cap, mode),
            lifting.is_locally_cartesian_edge(p, m, cap, mode), lifting.is_cartesian_edge(p, m, cap, mode))


def fmt(v):
    return "".join("T" if x else "." for x in v)


def main(cap: int, verbose: bool) -> bool:
    mismatches = 0
    for fx in corpus():
        P = fx.functor()
        p = nerve_map(P, cap)
        for m in range(P.domain.n_morphisms):
            row = [verdicts_fincat(P, m)] + [verdicts_sset(p, m, cap, mode) for mode in ("lifting", "trivial-kan")]
            same = row[0] == row[1] == row[2]
            mismatches += not same
            if verbose or not same:
                print(f"{fx.name:24s} {str(P.domain.labels[m])[:40]:40s} " + " ".join(map(fmt, row))
                      + ("" if same else "  <-- mismatch"))
    print(f"columns {'/'.join(COLUMNS)} for fincat, lifting, trivial-kan; cap {cap}; mismatches: {mismatches}")
    return mismatches == 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int, default=4)
    ap.add_argument("--verbose", action="store_true")
    a = ap.parse_args()
    raise SystemExit(0 if main(a.cap, a.verbose) else 1)
