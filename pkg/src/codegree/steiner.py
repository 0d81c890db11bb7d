"""Steiner triple systems: certification and generation.

Systems on ``v`` points exist exactly when ``v = 1 or 3 (mod 6)``. We
generate them with the Bose construction (``v = 3 mod 6``) and the Skolem
construction (``v = 1 mod 6``); anything else can be loaded from a file and
certified with :func:`is_steiner`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .hypergraph import InputError, TriSystem, codegree

FANO_EDGES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


def is_steiner(G: TriSystem) -> bool:
    """True iff every pair of vertices lies in exactly one edge."""
    if 3 * G.m != G.n * (G.n - 1) // 2:
        return False
    return all(codegree(G, x, y) == 1 for x, y in combinations(range(G.n), 2))


@dataclass(frozen=True)
class SteinerSystem:
    """A 3-graph certified to cover every pair exactly once."""

    graph: TriSystem

    def __post_init__(self):
        if not isinstance(self.graph, TriSystem):
            raise InputError("SteinerSystem wraps a TriSystem")
        if not is_steiner(self.graph):
            raise InputError(f"not a Steiner triple system: {self.graph!r}")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edges(self):
        return self.graph.edges


def fano() -> SteinerSystem:
    return SteinerSystem(TriSystem(7, FANO_EDGES))


def _bose(v: int) -> list[tuple[int, int, int]]:
    # points (x, i) -> x + m*i with x in Z_m, i in Z_3; m odd
    m = v // 3
    half = (m + 1) // 2

    def op(x, y):
        return (x + y) * half % m

    def pt(x, i):
        return x + m * (i % 3)

    out = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for i in range(3):
        for x, y in combinations(range(m), 2):
            out.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    return out


def _skolem(v: int) -> list[tuple[int, int, int]]:
    # points (x, i) -> x + 2k*i, plus infinity = v - 1; half-idempotent
    # commutative quasigroup of order 2k from the addition table of Z_2k
    k = (v - 1) // 6
    m = 2 * k
    inf = v - 1

    def op(x, y):
        s = (x + y) % m
        return s // 2 if s % 2 == 0 else (s - 1) // 2 + k

    def pt(x, i):
        return x + m * (i % 3)

    out = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(k)]
    for x in range(k):
        for i in range(3):
            out.append((inf, pt(x + k, i), pt(x, i + 1)))
    for i in range(3):
        for x, y in combinations(range(m), 2):
            out.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    return out


def generate_sts(v: int) -> SteinerSystem:
    """A Steiner triple system on ``v`` points, ``v = 1 or 3 (mod 6)``."""
    if not isinstance(v, int) or v < 3 or v % 6 not in (1, 3):
        raise InputError(
            f"Steiner triple systems need v >= 3 with v = 1 or 3 (mod 6); got v={v}"
        )
    triples = _bose(v) if v % 6 == 3 else _skolem(v)
    return SteinerSystem(TriSystem(v, triples))


def large_sets_span(S: SteinerSystem | TriSystem, t: int) -> bool:
    """True iff every ``t``-subset of the points contains a triple of ``S``."""
    G = S.graph if isinstance(S, SteinerSystem) else S
    if not 1 <= t <= G.n:
        raise InputError(f"t must lie in 1..{G.n}, got {t}")
    edges = G.edge_set
    for X in combinations(range(G.n), t):
        if not any(tri in edges for tri in combinations(X, 3)):
            return False
    return True


def point_matching(S: SteinerSystem, p: int) -> list[tuple[int, int]]:
    """Pairs ``{a, b}`` with ``{p, a, b}`` a triple; a perfect matching of the rest."""
    if not 0 <= p < S.n:
        raise InputError(f"point {p} out of range")
    return sorted(tuple(v for v in t if v != p) for t in S.edges if p in t)
