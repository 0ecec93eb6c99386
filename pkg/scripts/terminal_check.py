"""Terminal objects and hom-set sizes of reduced injective cospans, against partial-injection counts."""

import argparse
from math import comb, factorial

from cospanfib.cospan_cats import build_red_inj_category
from cospanfib.fincat import has_terminal


def partial_injections(a: int, b: int) -> int:
    return sum(comb(a, k) * comb(b, k) * factorial(k) for k in range(min(a, b) + 1))


def main(max_object: int) -> bool:
    ok = True
    for m in range(1, max_object + 1):
        C = build_red_inj_category(m)
        t = has_terminal(C)
        sizes = [[len(C.hom(a, b)) for b in range(m + 1)] for a in range(m + 1)]
        want = [[partial_injections(a, b) for b in range(m + 1)] for a in range(m + 1)]
        good = t is not None and C.objects[t] == 0 and sizes == want
        ok &= good
        print(f"m={m}: terminal={None if t is None else C.objects[t]} homs={sizes} match={sizes == want}")
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-object", type=int, default=4)
    raise SystemExit(0 if main(ap.parse_args().max_object) else 1)
