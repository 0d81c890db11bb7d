"""Exact codegree thresholds and Turán numbers for small ``n``.

``coex_exact`` and ``ex_exact`` repeatedly ask the feasibility kernel for a
forbidden-free 3-graph beating the best witness so far; the last witness is
optimal once the kernel proves the next target infeasible. ``coex_naive``
and ``ex_naive`` enumerate every edge set and serve as the oracle.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from . import _kernels
from .hypergraph import (
    ForbiddenFamily,
    InputError,
    TriSystem,
    complete,
    empty,
    iter_copies,
    min_codegree,
    pair_rank,
)

NAIVE_MAX_N = 6
DEFAULT_BUDGET = 60.0


def default_budget() -> float:
    """Wall-clock budget in seconds; ``CODEGREE_BUDGET`` overrides the default."""
    raw = os.environ.get("CODEGREE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"CODEGREE_BUDGET must be a number of seconds, got {raw!r}") from None


class BudgetExceeded(Exception):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass
class SearchResult:
    kind: str
    n: int
    family: str
    value: int
    witness: TriSystem
    nodes_explored: int
    elapsed: float
    status: str = "exact"
    method: str = "search"

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "kind": self.kind,
            "n": self.n,
            "family": self.family,
            "value": self.value,
            "status": self.status,
            "method": self.method,
            "nodes_explored": self.nodes_explored,
            "witness": {"n": self.witness.n, "edges": [list(t) for t in self.witness.edges]},
        }
        if include_timing:
            out["elapsed"] = self.elapsed
        return out


class _Problem:
    """Triples in colex order with their pairs and the forbidden copies through them."""

    def __init__(self, n: int, F: ForbiddenFamily):
        self.n = n
        self.triples = [(a, b, c) for c in range(n) for b in range(c) for a in range(b)]
        index = {t: i for i, t in enumerate(self.triples)}
        self.n_pairs = n * (n - 1) // 2
        self.tri_pairs = [(pair_rank(a, b), pair_rank(a, c), pair_rank(b, c)) for a, b, c in self.triples]
        host = complete(n)
        copies = set()
        for H in F:
            for phi in iter_copies(host, H):
                copies.add(frozenset(index[tuple(sorted(phi[v] for v in e))] for e in H.edges))
        self.copy_triples = [sorted(c) for c in sorted(copies, key=sorted)]
        self.copies_of = [[] for _ in self.triples]
        for cid, c in enumerate(self.copy_triples):
            for t in c:
                self.copies_of[t].append(cid)

    def solve(self, d: int, e: int, deadline: float):
        force = d >= 1 or e >= 1
        status, state, nodes = _kernels.search_feasible(
            self.n_pairs, self.tri_pairs, self.copies_of, self.copy_triples, d, e, force, deadline
        )
        if status == _kernels.TIMEOUT:
            return None, nodes, True
        if status == _kernels.FOUND:
            G = TriSystem(self.n, [t for t, on in zip(self.triples, state) if on])
            return G, nodes, False
        return None, nodes, False


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise InputError(f"n must be an integer >= 2, got {n!r}")


def is_feasible(
    n: int, d: int, F: ForbiddenFamily, *, min_edges: int = 0, budget: float | None = None
) -> TriSystem | None:
    """An ``F``-free 3-graph on ``n`` vertices with minimum codegree ``>= d``, or ``None``.

    ``None`` is a proof of infeasibility. Raises :class:`BudgetExceeded` if the
    wall-clock budget runs out first.
    """
    _check_n(n)
    if not 0 <= d <= n - 2:
        raise InputError(f"d must lie in 0..{n - 2}, got {d}")
    if d == 0 and min_edges <= 0:
        return empty(n)  # family members all have edges
    budget = default_budget() if budget is None else budget
    deadline = time.monotonic() + budget if budget > 0 else 0.0
    G, nodes, timed_out = _Problem(n, F).solve(d, min_edges, deadline)
    if timed_out:
        raise BudgetExceeded(nodes)
    return G


def _ascend(kind: str, n: int, F: ForbiddenFamily, budget: float | None) -> SearchResult:
    _check_n(n)
    budget = default_budget() if budget is None else budget
    start = time.monotonic()
    deadline = start + budget if budget > 0 else 0.0
    problem = _Problem(n, F)

    def score(G):
        return min_codegree(G) if kind == "coex" else G.m

    best = empty(n)
    ceiling = n - 2 if kind == "coex" else len(problem.triples)
    nodes, status = 0, "exact"
    target = score(best) + 1
    while target <= ceiling:
        if kind == "coex":
            G, used, timed_out = problem.solve(target, 0, deadline)
        else:
            G, used, timed_out = problem.solve(0, target, deadline)
        nodes += used
        if timed_out:
            status = "incomplete"
            break
        if G is None:
            break
        best = G
        target = score(G) + 1
    return SearchResult(
        kind, n, F.label, score(best), best, nodes, time.monotonic() - start, status, "search"
    )


def coex_exact(n: int, F: ForbiddenFamily, budget: float | None = None) -> SearchResult:
    """Largest minimum codegree of an ``F``-free 3-graph on ``n`` vertices.

    On budget exhaustion the result has ``status == "incomplete"`` and its
    value is only a lower bound certified by the witness.
    """
    return _ascend("coex", n, F, budget)


def ex_exact(n: int, F: ForbiddenFamily, budget: float | None = None) -> SearchResult:
    """Largest edge count of an ``F``-free 3-graph on ``n`` vertices."""
    return _ascend("ex", n, F, budget)


# ---- brute-force oracle --------------------------------------------------------


def _enumerate(n: int, F: ForbiddenFamily):
    _check_n(n)
    if n > NAIVE_MAX_N:
        raise InputError(f"naive enumeration is limited to n <= {NAIVE_MAX_N}")
    triples = list(combinations(range(n), 3))
    bit = {t: 1 << i for i, t in enumerate(triples)}
    sets = np.arange(2 ** len(triples), dtype=np.uint32)
    free = np.ones(len(sets), dtype=bool)
    for H in F:
        copy_masks = set()
        for img in permutations(range(n), H.n):
            m = 0
            for a, b, c in H.edges:
                m |= bit[tuple(sorted((img[a], img[b], img[c])))]
            copy_masks.add(m)
        for m in copy_masks:
            free &= (sets & np.uint32(m)) != np.uint32(m)
    return triples, bit, sets, free


def _witness(n, triples, mask) -> TriSystem:
    return TriSystem(n, [t for i, t in enumerate(triples) if int(mask) >> i & 1])


def coex_naive(n: int, F: ForbiddenFamily) -> SearchResult:
    """Same contract as :func:`coex_exact`, by enumerating all ``2^C(n,3)`` edge sets."""
    start = time.monotonic()
    triples, bit, sets, free = _enumerate(n, F)
    mincod = np.full(len(sets), n, dtype=np.int64)
    for x, y in combinations(range(n), 2):
        pm = np.uint32(sum(bit[t] for t in triples if x in t and y in t))
        np.minimum(mincod, np.bitwise_count(sets & pm), out=mincod)
    cand = np.where(free, mincod, -1)
    i = int(np.argmax(cand))
    return SearchResult(
        "coex", n, F.label, int(cand[i]), _witness(n, triples, sets[i]),
        len(sets), time.monotonic() - start, "exact", "naive",
    )


def ex_naive(n: int, F: ForbiddenFamily) -> SearchResult:
    """Same contract as :func:`ex_exact`, by exhaustive enumeration."""
    start = time.monotonic()
    triples, _, sets, free = _enumerate(n, F)
    cand = np.where(free, np.bitwise_count(sets).astype(np.int64), -1)
    i = int(np.argmax(cand))
    return SearchResult(
        "ex", n, F.label, int(cand[i]), _witness(n, triples, sets[i]),
        len(sets), time.monotonic() - start, "exact", "naive",
    )
