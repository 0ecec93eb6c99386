"""Plain-text dump of a simplicial set: counts, then one face/degeneracy table per degree.

::

    sset kind=simplicial cap=2 truncated=yes
    cells 0 3
    cells 1 5
    faces 1 1,0 2,1 ...
    degen 0 0 2 4
"""

from __future__ import annotations

import numpy as np

from ..errors import InputError
from .sset import SimplicialSet


def _rows(table: np.ndarray) -> str:
    return " ".join(",".join(map(str, r)) for r in table.tolist())


def format_sset(X: SimplicialSet) -> str:
    kind = "simplicial" if X.is_simplicial else "semi"
    lines = [f"sset kind={kind} cap={X.cap} truncated={'yes' if X.truncated else 'no'}"]
    lines += [f"cells {d} {c}" for d, c in enumerate(X.counts())]
    lines += [f"faces {d} {_rows(X.faces[d])}".rstrip() for d in range(1, X.cap + 1)]
    if X.is_simplicial:
        lines += [f"degen {d} {_rows(X.degeneracies[d])}".rstrip() for d in range(X.cap)]
    return "\n".join(lines) + "\n"


def _table(tokens: list[str], rows: int, width: int, what: str) -> np.ndarray:
    if len(tokens) != rows:
        raise InputError(f"{what}: expected {rows} rows, found {len(tokens)}")
    try:
        out = np.array([[int(v) for v in t.split(",")] for t in tokens], dtype=np.int64).reshape(rows, width)
    except ValueError:
        raise InputError(f"{what}: malformed row") from None
    return out


def parse_sset(text: str, validate: bool = True) -> SimplicialSet:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "sset":
        raise InputError("dump must start with an 'sset' header")
    try:
        head = dict(tok.split("=", 1) for tok in lines[0][1:])
        cap = int(head["cap"])
        kind = head["kind"]
    except (KeyError, ValueError):
        raise InputError("malformed 'sset' header") from None
    counts: dict[int, int] = {}
    faces: dict[int, list[str]] = {}
    degens: dict[int, list[str]] = {}
    for lineno, toks in enumerate(lines[1:], start=2):
        if len(toks) < 2 or toks[0] not in ("cells", "faces", "degen"):
            raise InputError(f"line {lineno}: unknown record {' '.join(toks)!r}")
        try:
            d = int(toks[1])
            if toks[0] == "cells":
                counts[d] = int(toks[2])
            else:
                (faces if toks[0] == "faces" else degens)[d] = toks[2:]
        except (ValueError, IndexError):
            raise InputError(f"line {lineno}: malformed record") from None
    if sorted(counts) != list(range(cap + 1)):
        raise InputError("cell counts must be given for degrees 0..cap")
    F = [np.zeros((counts[0], 0), dtype=np.int64)]
    F += [_table(faces.get(d, []), counts[d], d + 1, f"faces {d}") for d in range(1, cap + 1)]
    S = None
    if kind == "simplicial":
        S = [_table(degens.get(d, []), counts[d], d + 1, f"degen {d}") for d in range(cap)]
    elif kind != "semi":
        raise InputError(f"unknown kind {kind!r}")
    X = SimplicialSet(F, S, head.get("truncated", "yes") == "yes")
    if validate:
        X.validate()
    return X
