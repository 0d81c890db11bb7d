"""3-uniform hypergraphs (3-graphs) and the queries everything else builds on.

Vertices are the dense integers ``0..n-1``. A :class:`TriSystem` keeps its
edges as a lexicographically sorted tuple of sorted triples; derived views
(colex bitset, pair-neighbourhood masks, codegree matrix) are computed on
first use and cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels


class InputError(ValueError):
    """Raised for malformed input: bad vertex indices, bad parameters, bad files."""


Triple = tuple[int, int, int]
Pair = tuple[int, int]


def triple_rank(a: int, b: int, c: int) -> int:
    """Colex rank of the sorted triple ``a < b < c``; independent of ``n``."""
    return a + b * (b - 1) // 2 + c * (c - 1) * (c - 2) // 6


def pair_rank(a: int, b: int) -> int:
    """Colex rank of the sorted pair ``a < b``."""
    return a + b * (b - 1) // 2


@lru_cache(maxsize=64)
def all_triples(n: int) -> np.ndarray:
    """All triples over ``0..n-1`` in lexicographic order, shape ``(C(n,3), 3)``."""
    if n < 3:
        return np.zeros((0, 3), dtype=np.int64)
    arr = np.fromiter(
        (v for t in combinations(range(n), 3) for v in t), dtype=np.int64, count=3 * comb(n, 3)
    ).reshape(-1, 3)
    arr.setflags(write=False)
    return arr


def _check_vertex(n: int, v: int) -> None:
    if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
        raise InputError(f"vertex {v!r} out of range for n={n}")


@dataclass(frozen=True, eq=False)
class TriSystem:
    """A 3-graph on vertices ``0..n-1``.

    Edges may be given in any order and orientation; they are normalised to
    sorted triples in lexicographic order. Duplicates are an error.
    """

    n: int
    edges: tuple[Triple, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise InputError(f"vertex count must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        norm = []
        for e in self.edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != 3 or len(set(t)) != 3:
                raise InputError(f"edge {tuple(e)!r} is not three distinct vertices")
            if t[0] < 0 or t[2] >= self.n:
                raise InputError(f"edge {t!r} out of range for n={self.n}")
            norm.append(t)
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise InputError(f"duplicate edge {a!r}")
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def _trusted(cls, n: int, edges: tuple[Triple, ...]) -> "TriSystem":
        # edges already sorted, distinct and in range
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "edges", edges)
        return obj

    @classmethod
    def from_mask(cls, n: int, mask: np.ndarray) -> "TriSystem":
        """Build from a boolean vector over :func:`all_triples` ``(n)``."""
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (comb(n, 3),):
            raise InputError(f"mask must have length C({n},3)={comb(n, 3)}")
        sel = all_triples(n)[mask]
        return cls._trusted(n, tuple(map(tuple, sel.tolist())))

    # ---- basic views -------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, TriSystem):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"TriSystem(n={self.n}, m={self.m})"

    @cached_property
    def edge_set(self) -> frozenset[Triple]:
        return frozenset(self.edges)

    @cached_property
    def bits(self) -> int:
        """Edge bitset indexed by :func:`triple_rank`."""
        out = 0
        for a, b, c in self.edges:
            out |= 1 << triple_rank(a, b, c)
        return out

    def has_edge(self, a: int, b: int, c: int) -> bool:
        a, b, c = sorted((a, b, c))
        if a == b or b == c or a < 0 or c >= self.n:
            return False
        return bool(self.bits >> triple_rank(a, b, c) & 1)

    @cached_property
    def edge_array(self) -> np.ndarray:
        arr = np.array(self.edges, dtype=np.int64).reshape(-1, 3)
        arr.setflags(write=False)
        return arr

    @cached_property
    def nbr(self) -> list[int]:
        """``nbr[x*n + y]``: bitmask of third vertices completing ``{x, y}``."""
        n = self.n
        out = [0] * (n * n)
        for a, b, c in self.edges:
            out[a * n + b] |= 1 << c
            out[b * n + a] |= 1 << c
            out[a * n + c] |= 1 << b
            out[c * n + a] |= 1 << b
            out[b * n + c] |= 1 << a
            out[c * n + b] |= 1 << a
        return out

    @cached_property
    def codegree_matrix(self) -> np.ndarray:
        """Symmetric ``n x n`` array of codegrees (zero diagonal)."""
        n = self.n
        e = self.edge_array
        flat = np.zeros(n * n, dtype=np.int64)
        if len(e):
            for i, j in ((0, 1), (0, 2), (1, 2)):
                flat += np.bincount(e[:, i] * n + e[:, j], minlength=n * n)
        mat = flat.reshape(n, n)
        mat = mat + mat.T
        mat.setflags(write=False)
        return mat

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for t in self.edges:
            for v in t:
                deg[v] += 1
        return tuple(deg)

    @cached_property
    def _max_codegree_per_vertex(self) -> tuple[int, ...]:
        if self.n == 0:
            return ()
        return tuple(int(x) for x in self.codegree_matrix.max(axis=1))


@dataclass(frozen=True, eq=False)
class PairGraph:
    """An ordinary graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[Pair, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise InputError(f"vertex count must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        norm = []
        for e in self.edges:
            p = tuple(sorted(int(v) for v in e))
            if len(p) != 2 or p[0] == p[1]:
                raise InputError(f"edge {tuple(e)!r} is not two distinct vertices")
            if p[0] < 0 or p[1] >= self.n:
                raise InputError(f"edge {p!r} out of range for n={self.n}")
            norm.append(p)
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise InputError(f"duplicate edge {a!r}")
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, PairGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"PairGraph(n={self.n}, m={self.m})"

    def degree_sum(self) -> int:
        return 2 * len(self.edges)


@dataclass(frozen=True)
class ForbiddenFamily:
    """A non-empty list of non-empty 3-graphs, optionally named."""

    members: tuple[TriSystem, ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise InputError("a forbidden family needs at least one member")
        for h in members:
            if not isinstance(h, TriSystem):
                raise InputError(f"family member {h!r} is not a TriSystem")
            if h.m == 0:
                raise InputError("family members must have at least one edge")
        names = tuple(self.names) or tuple(f"H{i}" for i in range(len(members)))
        if len(names) != len(members):
            raise InputError("one name per member")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "names", names)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __or__(self, other: "ForbiddenFamily") -> "ForbiddenFamily":
        return ForbiddenFamily(self.members + other.members, self.names + other.names)

    @property
    def label(self) -> str:
        return ",".join(self.names)


def complete(n: int) -> TriSystem:
    return TriSystem._trusted(n, tuple(combinations(range(n), 3)))


def empty(n: int) -> TriSystem:
    return TriSystem._trusted(n, ())


def complete_pairgraph(n: int) -> PairGraph:
    return PairGraph(n, tuple(combinations(range(n), 2)))


# ---- codegree queries ------------------------------------------------------


def codegree(G: TriSystem, x: int, y: int) -> int:
    _check_vertex(G.n, x)
    _check_vertex(G.n, y)
    if x == y:
        raise InputError("codegree needs two distinct vertices")
    return G.nbr[x * G.n + y].bit_count()


def min_codegree(G: TriSystem) -> int:
    if G.n < 2:
        raise InputError("minimum codegree needs at least two vertices")
    iu = np.triu_indices(G.n, 1)
    return int(G.codegree_matrix[iu].min())


def link_graph(G: TriSystem, x: int) -> PairGraph:
    """Pairs completing an edge with ``x``, relabelled order-preservingly."""
    _check_vertex(G.n, x)

    def relabel(v):
        return v - 1 if v > x else v

    pairs = []
    for t in G.edges:
        if x in t:
            u, w = (v for v in t if v != x)
            pairs.append((relabel(u), relabel(w)))
    return PairGraph(G.n - 1, tuple(pairs))


def induced(G: TriSystem, vertices: Iterable[int]) -> TriSystem:
    """Sub-3-graph induced on ``vertices``, relabelled order-preservingly."""
    vs = sorted(set(int(v) for v in vertices))
    for v in vs:
        _check_vertex(G.n, v)
    index = {v: i for i, v in enumerate(vs)}
    kept = tuple(
        (index[a], index[b], index[c])
        for a, b, c in G.edges
        if a in index and b in index and c in index
    )
    return TriSystem._trusted(len(vs), kept)


# ---- containment -----------------------------------------------------------


def _plan(G: TriSystem, H: TriSystem):
    """Vertex order and kernel plan for embedding ``H`` into ``G``.

    Pattern vertices go highest degree first, then greedily by how many
    edges and codegree constraints they close against already placed ones.
    """
    h = H.n
    degH = H.degrees
    codH = H.codegree_matrix
    maxcodH = H._max_codegree_per_vertex
    incident = [[] for _ in range(h)]
    for t in H.edges:
        for v in t:
            incident[v].append(t)

    order: list[int] = []
    placed = set()
    while len(order) < h:
        best, best_key = -1, None
        for u in range(h):
            if u in placed:
                continue
            closed = sum(1 for t in incident[u] if all(w == u or w in placed for w in t))
            linked = sum(1 for w in placed if codH[u, w] > 0)
            key = (closed, linked, degH[u], -u)
            if best_key is None or key > best_key:
                best, best_key = u, key
        order.append(best)
        placed.add(best)

    pos = {u: i for i, u in enumerate(order)}
    degG = G.degrees
    maxcodG = G._max_codegree_per_vertex
    plan = []
    for p, u in enumerate(order):
        mask = 0
        for v in range(G.n):
            if degG[v] >= degH[u] and maxcodG[v] >= maxcodH[u]:
                mask |= 1 << v
        back = []
        for t in incident[u]:
            others = [pos[w] for w in t if w != u]
            if all(q < p for q in others):
                back.append((others[0], others[1]))
        needs = [(pos[w], int(codH[u, w])) for w in order[:p] if codH[u, w] > 0]
        plan.append((mask, back, needs))
    return order, plan


def find_copy(G: TriSystem, H: TriSystem) -> tuple[int, ...] | None:
    """An injective map ``V(H) -> V(G)`` sending edges to edges, or ``None``.

    The map is returned as a tuple indexed by the vertices of ``H``.
    Containment is not necessarily induced.
    """
    if H.n > G.n:
        return None
    if H.m == 0:
        return tuple(range(H.n))
    if H.m > G.m:
        return None
    order, plan = _plan(G, H)
    img = _kernels.find_embedding(G.nbr, G.n, plan)
    if img is None:
        return None
    phi = [0] * H.n
    for u, v in zip(order, img):
        phi[u] = v
    return tuple(phi)


def iter_copies(G: TriSystem, H: TriSystem) -> Iterator[tuple[int, ...]]:
    """Every embedding of ``H`` into ``G`` (automorphic images included)."""
    if H.n > G.n:
        return
    order, plan = _plan(G, H)
    for img in _kernels.iter_embeddings(G.nbr, G.n, plan):
        phi = [0] * H.n
        for u, v in zip(order, img):
            phi[u] = v
        yield tuple(phi)


def contains(G: TriSystem, H: TriSystem) -> bool:
    if H.n < 1:
        raise InputError("pattern needs at least one vertex")
    return find_copy(G, H) is not None


def find_any(G: TriSystem, F: ForbiddenFamily) -> tuple[str, tuple[int, ...]] | None:
    """First family member found in ``G`` with its embedding."""
    for name, H in zip(F.names, F.members):
        phi = find_copy(G, H)
        if phi is not None:
            return name, phi
    return None


def contains_any(G: TriSystem, F: ForbiddenFamily) -> bool:
    return find_any(G, F) is not None


def find_clique(G: TriSystem, s: int) -> tuple[int, ...] | None:
    if s < 3:
        raise InputError("clique size must be at least 3")
    found = _kernels.find_clique(G.nbr, G.n, s)
    return tuple(found) if found is not None else None


def clique_number_at_least(G: TriSystem, s: int) -> bool:
    """True iff some ``s`` vertices span every one of their triples."""
    return find_clique(G, s) is not None


def is_embedding(G: TriSystem, H: TriSystem, phi: Sequence[int]) -> bool:
    """Check a claimed embedding directly against the edge sets."""
    if len(phi) != H.n or len(set(phi)) != H.n:
        return False
    if any(not 0 <= v < G.n for v in phi):
        return False
    return all(G.has_edge(phi[a], phi[b], phi[c]) for a, b, c in H.edges)
