"""Generators for the lower-bound 3-graphs and the operations used in their proofs.

Colouring-based constructions are vectorised over :func:`all_triples`, so a
random instance on a few dozen vertices costs milliseconds. Randomness comes
from :func:`make_rng`, a counter-based generator keyed by ``(seed, stream)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

import numpy as np

from .hypergraph import (
    InputError,
    PairGraph,
    TriSystem,
    _check_vertex,
    all_triples,
    induced,
)
from .steiner import SteinerSystem

DEFAULT_SEED = 20130101


def make_rng(seed: int = DEFAULT_SEED, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by ``(seed, stream)``.

    Distinct streams are independent, so trial ``i`` of an experiment can be
    drawn from ``make_rng(seed, i)`` on any worker in any order.
    """
    if seed < 0 or stream < 0:
        raise InputError("seed and stream must be non-negative")
    key = (seed % 2**64) | (stream % 2**64) << 64
    return np.random.Generator(np.random.Philox(key=key))


# ---- input types -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PairColouring:
    """Colouring of the pairs of ``0..n-1`` with colours ``1..s``.

    ``table`` is a symmetric ``n x n`` integer array; the diagonal is ignored.
    """

    n: int
    s: int
    table: np.ndarray

    def __post_init__(self):
        if self.s < 1:
            raise InputError("a colouring needs at least one colour")
        t = np.array(self.table, dtype=np.int64)
        if t.shape != (self.n, self.n):
            raise InputError(f"colour table must be {self.n}x{self.n}")
        np.fill_diagonal(t, 0)
        if not np.array_equal(t, t.T):
            raise InputError("colour table must be symmetric")
        iu = np.triu_indices(self.n, 1)
        vals = t[iu]
        if len(vals) and (vals.min() < 1 or vals.max() > self.s):
            raise InputError(f"pair colours must lie in 1..{self.s}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def from_pairs(cls, n: int, s: int, colours: dict) -> "PairColouring":
        """Build from ``{(i, j): colour}`` covering every pair exactly once."""
        t = np.zeros((n, n), dtype=np.int64)
        for (i, j), col in colours.items():
            _check_vertex(n, i)
            _check_vertex(n, j)
            if i == j:
                raise InputError(f"pair ({i}, {j}) is not two distinct vertices")
            if t[i, j]:
                raise InputError(f"pair ({i}, {j}) coloured twice")
            t[i, j] = t[j, i] = col
        if len(colours) != comb(n, 2):
            raise InputError(f"expected {comb(n, 2)} coloured pairs, got {len(colours)}")
        return cls(n, s, t)

    @classmethod
    def from_vector(cls, n: int, s: int, colours) -> "PairColouring":
        """Colours listed for the pairs in lexicographic order."""
        colours = np.asarray(colours, dtype=np.int64)
        if colours.shape != (comb(n, 2),):
            raise InputError(f"expected {comb(n, 2)} colours")
        t = np.zeros((n, n), dtype=np.int64)
        iu = np.triu_indices(n, 1)
        t[iu] = colours
        return cls(n, s, t + t.T)

    @classmethod
    def random(cls, n: int, s: int, rng: np.random.Generator) -> "PairColouring":
        return cls.from_vector(n, s, rng.integers(1, s + 1, size=comb(n, 2)))

    def colour(self, i: int, j: int) -> int:
        if i == j:
            raise InputError("a pair needs two distinct vertices")
        return int(self.table[i, j])

    def permuted(self, perm) -> "PairColouring":
        """Apply a colour relabelling ``perm[c-1]`` to every pair."""
        lut = np.concatenate([[0], np.asarray(perm, dtype=np.int64)])
        return PairColouring(self.n, self.s, lut[self.table])

    def __eq__(self, other):
        if not isinstance(other, PairColouring):
            return NotImplemented
        return self.n == other.n and self.s == other.s and np.array_equal(self.table, other.table)


@dataclass(frozen=True, eq=False)
class Tournament:
    """Orientation of every pair; ``beats[i, j]`` iff ``i -> j``."""

    n: int
    beats: np.ndarray

    def __post_init__(self):
        b = np.array(self.beats, dtype=bool)
        if b.shape != (self.n, self.n):
            raise InputError(f"orientation table must be {self.n}x{self.n}")
        off = ~np.eye(self.n, dtype=bool)
        if np.any(np.diag(b)) or not np.array_equal((b ^ b.T)[off], np.ones(off.sum(), bool)):
            raise InputError("each pair needs exactly one orientation")
        b.setflags(write=False)
        object.__setattr__(self, "beats", b)

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "Tournament":
        b = np.zeros((n, n), dtype=bool)
        seen = set()
        for w, l in arcs:
            _check_vertex(n, w)
            _check_vertex(n, l)
            key = (min(w, l), max(w, l))
            if w == l or key in seen:
                raise InputError(f"arc ({w}, {l}) repeats a pair or is a loop")
            seen.add(key)
            b[w, l] = True
        if len(seen) != comb(n, 2):
            raise InputError(f"expected {comb(n, 2)} arcs, got {len(seen)}")
        return cls(n, b)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Tournament":
        up = np.triu(rng.integers(0, 2, size=(n, n)).astype(bool), 1)
        low = np.triu(~up, 1).T
        return cls(n, up | low)

    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) if self.beats[i, j] else (j, i) for i, j in combinations(range(self.n), 2)]

    def as_colouring(self) -> PairColouring:
        """Colour 1 for ``i -> j`` and colour 2 for ``j -> i``, for ``i < j``."""
        t = np.where(self.beats, 1, 2)
        iu = np.triu_indices(self.n, 1)
        c = np.zeros((self.n, self.n), dtype=np.int64)
        c[iu] = t[iu]
        return PairColouring(self.n, 2, c + c.T)


@dataclass(frozen=True)
class BalancedPartition:
    """Contiguous balanced partition; the first ``n mod k`` parts are larger."""

    n: int
    k: int

    def __post_init__(self):
        if self.k < 1 or self.n < 0:
            raise InputError("partition needs k >= 1 and n >= 0")

    @property
    def sizes(self) -> list[int]:
        q, r = divmod(self.n, self.k)
        return [q + 1 if i < r else q for i in range(self.k)]

    def parts(self, vertices=None) -> list[list[int]]:
        vs = list(range(self.n)) if vertices is None else list(vertices)
        if len(vs) != self.n:
            raise InputError("vertex list length differs from n")
        out, start = [], 0
        for size in self.sizes:
            out.append(vs[start : start + size])
            start += size
        return out

    @property
    def assignment(self) -> np.ndarray:
        return np.repeat(np.arange(self.k), self.sizes)


def _triples_by_parts(part: np.ndarray):
    T = all_triples(len(part))
    P = part[T]
    return T, P[:, 0], P[:, 1], P[:, 2]


# ---- colouring constructions -------------------------------------------------


def from_colouring(c: PairColouring) -> TriSystem:
    """Edge ``ijk`` (``i<j<k``) iff ``c(ij) != c(ik)``; free of ``K_{s+2}``."""
    T = all_triples(c.n)
    t = c.table
    mask = t[T[:, 0], T[:, 1]] != t[T[:, 0], T[:, 2]]
    return TriSystem.from_mask(c.n, mask)


def from_tournament(T: Tournament) -> TriSystem:
    """Edge ``ijk`` (``i<j<k``) iff ``(i,j)`` and ``(i,k)`` are oriented oppositely."""
    tri = all_triples(T.n)
    b = T.beats
    mask = b[tri[:, 0], tri[:, 1]] != b[tri[:, 0], tri[:, 2]]
    return TriSystem.from_mask(T.n, mask)


def ramsey_construction(c: PairColouring) -> TriSystem:
    """Every triple whose three pairs are not all one colour; free of ``K_6``."""
    if c.s != 2:
        raise InputError(f"the Ramsey construction needs exactly 2 colours, got {c.s}")
    T = all_triples(c.n)
    t = c.table
    ab, ac, bc = t[T[:, 0], T[:, 1]], t[T[:, 0], T[:, 2]], t[T[:, 1], T[:, 2]]
    return TriSystem.from_mask(c.n, ~((ab == ac) & (ac == bc)))


def rainbow_construction(c: PairColouring) -> TriSystem:
    """Triples whose three pairs get three different colours.

    With ``s - 1`` colours the result contains no suspension of ``K_s``.
    """
    if c.s < 2:
        raise InputError("the rainbow construction needs at least 2 colours")
    T = all_triples(c.n)
    t = c.table
    ab, ac, bc = t[T[:, 0], T[:, 1]], t[T[:, 0], T[:, 2]], t[T[:, 1], T[:, 2]]
    return TriSystem.from_mask(c.n, (ab != ac) & (ab != bc) & (ac != bc))


# ---- Steiner-based constructions ----------------------------------------------


def _steiner_lookup(S: SteinerSystem) -> np.ndarray:
    v = S.n
    inS = np.zeros((v, v, v), dtype=bool)
    for a, b, c in S.edges:
        inS[a, b, c] = True
    return inS


def steiner_blowup(S: SteinerSystem, n: int) -> TriSystem:
    """Blow-up of a Steiner system on ``s-2`` points into ``n`` vertices.

    Over a balanced ``(s-2)``-partition the edges are every triple with two
    vertices in one part and one in another, and every transversal triple
    whose parts do not form a triple of ``S``. The result is ``K_s``-free.
    """
    if not isinstance(S, SteinerSystem):
        raise InputError("steiner_blowup needs a certified SteinerSystem")
    k = S.n
    s = k + 2
    if s < 5 or s % 6 not in (3, 5):
        raise InputError(f"s = {s} must be >= 5 and 3 or 5 (mod 6)")
    if n < k:
        raise InputError(f"need n >= s - 2 = {k}, got n={n}")
    part = BalancedPartition(n, k).assignment
    _, p, q, r = _triples_by_parts(part)
    # part indices are non-decreasing along each lexicographic triple
    transversal = (p != q) & (q != r)
    inS = _steiner_lookup(S)[p, q, r]
    two_in_one = ~transversal & ~((p == q) & (q == r))
    return TriSystem.from_mask(n, two_in_one | (transversal & ~inS))


def iterated_steiner(S: SteinerSystem, n: int) -> TriSystem:
    """Iterated blow-up of the complement of a Steiner system on ``2s-1`` points.

    Transversal triples over parts ``{i, j, k}`` not in ``S`` are edges, and
    the same is done recursively inside each part. Parts with fewer than
    ``2s-1`` vertices get no internal edges.
    """
    if not isinstance(S, SteinerSystem):
        raise InputError("iterated_steiner needs a certified SteinerSystem")
    k = S.n
    if k % 2 == 0:
        raise InputError("the Steiner system must have 2s - 1 points")
    s = (k + 1) // 2
    if s < 2 or s % 3 not in (1, 2):
        raise InputError(f"s = {s} must be >= 2 and 1 or 2 (mod 3)")
    if n < 0:
        raise InputError("n must be non-negative")
    non_s = [t for t in combinations(range(k), 3) if t not in S.graph.edge_set]
    edges: list[tuple[int, int, int]] = []

    def fill(vertices):
        if len(vertices) < k:
            return
        parts = BalancedPartition(len(vertices), k).parts(vertices)
        for i, j, l in non_s:
            edges.extend(product(parts[i], parts[j], parts[l]))
        for part in parts:
            fill(part)

    fill(list(range(n)))
    return TriSystem(n, edges)


# ---- structural constructions ---------------------------------------------------


def suspension(H: PairGraph) -> TriSystem:
    """Apex ``H.n`` joined to every edge of ``H``."""
    apex = H.n
    return TriSystem(H.n + 1, [(a, b, apex) for a, b in H.edges])


def cospan(H: TriSystem) -> TriSystem:
    """``H`` plus two new vertices ``H.n``, ``H.n + 1`` spanning every old vertex."""
    x, y = H.n, H.n + 1
    return TriSystem(H.n + 2, list(H.edges) + [(v, x, y) for v in range(H.n)])


def winding_tripartite(n: int) -> TriSystem:
    """Triples with two vertices in part ``i`` and one in part ``i+1 (mod 3)``."""
    if n < 3:
        raise InputError("winding_tripartite needs n >= 3")
    part = BalancedPartition(n, 3).assignment
    _, p, q, r = _triples_by_parts(part)
    # the two equal parts and the odd one out, for each triple
    pair_part = np.where(p == q, p, np.where(q == r, q, np.where(p == r, p, -1)))
    odd = np.where(p == q, r, np.where(q == r, p, q))
    mask = (pair_part >= 0) & (odd != pair_part) & (odd == (pair_part + 1) % 3)
    return TriSystem.from_mask(n, mask)


def complete_bipartite(n: int) -> TriSystem:
    """Every triple meeting both halves of a balanced bipartition."""
    part = BalancedPartition(n, 2).assignment
    _, p, q, r = _triples_by_parts(part)
    return TriSystem.from_mask(n, ~((p == q) & (q == r)))


def joint_restriction(G: TriSystem, x: int, y: int) -> TriSystem:
    """Sub-3-graph induced on the joint neighbourhood of ``x`` and ``y``."""
    _check_vertex(G.n, x)
    _check_vertex(G.n, y)
    if x == y:
        raise InputError("joint neighbourhood needs two distinct vertices")
    mask = G.nbr[x * G.n + y]
    return induced(G, [v for v in range(G.n) if mask >> v & 1])


def joint_neighbourhood(G: TriSystem, x: int, y: int) -> list[int]:
    mask = G.nbr[x * G.n + y]
    return [v for v in range(G.n) if mask >> v & 1]


# ---- random instances ------------------------------------------------------------


def random_colouring(n: int, s: int, seed: int = DEFAULT_SEED, stream: int = 0) -> PairColouring:
    return PairColouring.random(n, s, make_rng(seed, stream))


def random_tournament(n: int, seed: int = DEFAULT_SEED, stream: int = 0) -> Tournament:
    return Tournament.random(n, make_rng(seed, stream))
