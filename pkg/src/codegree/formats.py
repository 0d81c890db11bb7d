"""Plain-text file formats.

3-graph (also used for Steiner systems)::

    n m
    a b c        # m lines, 0 <= a < b < c < n, lexicographically increasing

Graph: ``n m`` then ``a b`` lines under the same rules. Pair colouring:
``n s`` then ``C(n,2)`` lines ``a b colour`` with ``a < b``, each pair once.
Tournament: ``n`` then ``C(n,2)`` lines ``winner loser``.

Any malformed, out-of-order or duplicate line raises :class:`InputError`.
"""

from __future__ import annotations

from math import comb
from pathlib import Path

from .constructions import PairColouring, Tournament
from .hypergraph import InputError, PairGraph, TriSystem


def _lines(text: str) -> list[str]:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def _ints(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise InputError(f"line {lineno}: expected {count} integers, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InputError(f"line {lineno}: non-integer token in {line!r}") from None


def _parse_sorted_tuples(text: str, arity: int):
    lines = _lines(text)
    if not lines:
        raise InputError("empty file")
    n, m = _ints(lines[0], 2, 1)
    if n < 0 or m < 0:
        raise InputError("line 1: n and m must be non-negative")
    if len(lines) - 1 != m:
        raise InputError(f"header declares {m} edges but {len(lines) - 1} lines follow")
    out, prev = [], None
    for i, line in enumerate(lines[1:], start=2):
        t = tuple(_ints(line, arity, i))
        if any(a >= b for a, b in zip(t, t[1:])) or t[0] < 0 or t[-1] >= n:
            raise InputError(f"line {i}: {t} must be strictly increasing within 0..{n - 1}")
        if prev is not None and t <= prev:
            what = "duplicate" if t == prev else "out-of-order"
            raise InputError(f"line {i}: {what} edge {t}")
        out.append(t)
        prev = t
    return n, out


def parse_trisystem(text: str) -> TriSystem:
    n, edges = _parse_sorted_tuples(text, 3)
    return TriSystem(n, edges)


def format_trisystem(G: TriSystem) -> str:
    rows = [f"{G.n} {G.m}"] + [f"{a} {b} {c}" for a, b, c in G.edges]
    return "\n".join(rows) + "\n"


def parse_pairgraph(text: str) -> PairGraph:
    n, edges = _parse_sorted_tuples(text, 2)
    return PairGraph(n, edges)


def format_pairgraph(H: PairGraph) -> str:
    rows = [f"{H.n} {H.m}"] + [f"{a} {b}" for a, b in H.edges]
    return "\n".join(rows) + "\n"


def parse_colouring(text: str) -> PairColouring:
    lines = _lines(text)
    if not lines:
        raise InputError("empty file")
    n, s = _ints(lines[0], 2, 1)
    if len(lines) - 1 != comb(n, 2):
        raise InputError(f"expected {comb(n, 2)} pair lines, got {len(lines) - 1}")
    colours = {}
    for i, line in enumerate(lines[1:], start=2):
        a, b, col = _ints(line, 3, i)
        if not 0 <= a < b < n:
            raise InputError(f"line {i}: pair ({a}, {b}) must satisfy 0 <= a < b < n")
        if (a, b) in colours:
            raise InputError(f"line {i}: duplicate pair ({a}, {b})")
        colours[(a, b)] = col
    return PairColouring.from_pairs(n, s, colours)


def format_colouring(c: PairColouring) -> str:
    rows = [f"{c.n} {c.s}"]
    for a in range(c.n):
        for b in range(a + 1, c.n):
            rows.append(f"{a} {b} {int(c.table[a, b])}")
    return "\n".join(rows) + "\n"


def parse_tournament(text: str) -> Tournament:
    lines = _lines(text)
    if not lines:
        raise InputError("empty file")
    (n,) = _ints(lines[0], 1, 1)
    arcs = [tuple(_ints(line, 2, i)) for i, line in enumerate(lines[1:], start=2)]
    return Tournament.from_arcs(n, arcs)


def format_tournament(T: Tournament) -> str:
    rows = [f"{T.n}"] + [f"{w} {l}" for w, l in T.arcs()]
    return "\n".join(rows) + "\n"


def read_trisystem(path) -> TriSystem:
    return parse_trisystem(Path(path).read_text())


def write_trisystem(G: TriSystem, path) -> None:
    Path(path).write_text(format_trisystem(G))


def read_pairgraph(path) -> PairGraph:
    return parse_pairgraph(Path(path).read_text())


def read_colouring(path) -> PairColouring:
    return parse_colouring(Path(path).read_text())


def read_tournament(path) -> Tournament:
    return parse_tournament(Path(path).read_text())
