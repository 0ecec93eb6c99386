"""Sweep the fiber-under-vertex objects over generated fibrations.

Prints one line per fixture with its component count and homology at each
vertex, and marks fixtures that are locally but not globally coCartesian.
"""

import argparse
from dataclasses import dataclass

from cospanfib.fixtures import fibration_fixtures, non_cocartesian
from cospanfib.homology import components, homology
from cospanfib.simplicial import key_lemma_object, nerve_map


@dataclass
class SweepConfig:
    n: int = 2
    closed_bound: int = 3
    cap: int = 4


def sweep(cfg: SweepConfig) -> bool:
    fixtures = fibration_fixtures(cfg.n, cfg.closed_bound)
    strict = {fx.name for fx in non_cocartesian(fixtures)}
    ok = True
    for fx in fixtures:
        p = nerve_map(fx.functor(), cfg.cap)
        cells = []
        for x in range(p.domain.count(0)):
            K = key_lemma_object(p, x).sset
            H = homology(K, K.cap - 1)
            good = components(K) == 1 and all(g.is_trivial() for g in H[1:])
            ok &= good
            cells.append(f"{x}:{components(K)}c/" + ",".join(map(str, H[1:])) + ("" if good else "!"))
        tag = " (not coCartesian)" if fx.name in strict else ""
        print(f"{fx.name}{tag}: " + " ".join(cells))
    print(f"{len(fixtures)} fixtures, {len(strict)} not coCartesian, all contractible through cap: {ok}")
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--closed-bound", type=int, default=3)
    ap.add_argument("--cap", type=int, default=4)
    a = ap.parse_args()
    raise SystemExit(0 if sweep(SweepConfig(a.n, a.closed_bound, a.cap)) else 1)
