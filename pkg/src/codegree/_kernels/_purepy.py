"""Pure-Python implementations of the search kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same results. Vertex sets are Python ints used as bitsets; ``nbr`` is
a flat list where ``nbr[x * n + y]`` is the set of vertices ``z`` with
``{x, y, z}`` an edge.
"""

from __future__ import annotations

import time

FOUND = 1
INFEASIBLE = 0
TIMEOUT = -1


def find_clique(nbr, n, s):
    """Return ``s`` vertices spanning a complete 3-graph, or ``None``."""
    if s > n:
        return None
    chosen = []

    def extend(cand, depth):
        if depth == s:
            return True
        if cand.bit_count() < s - depth:
            return False
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            nxt = cand
            for u in chosen:
                nxt &= nbr[u * n + v]
            chosen.append(v)
            if extend(nxt, depth + 1):
                return True
            chosen.pop()
            if cand.bit_count() < s - depth:
                return False
        return False

    if extend((1 << n) - 1, 0):
        return list(chosen)
    return None


def iter_embeddings(nbr, n, plan):
    """Yield every image list for a backtracking ``plan``.

    ``plan`` holds one ``(cand_mask, back_edges, pair_needs)`` entry per
    pattern position. ``back_edges`` are position pairs ``(i, j)`` that close
    an edge with the current position; ``pair_needs`` are ``(i, need)``
    minimum host codegrees between position ``i`` and the current one.
    """
    h = len(plan)
    img = [0] * h

    def rec(p, used):
        if p == h:
            yield list(img)
            return
        mask, back, needs = plan[p]
        cand = mask & ~used
        for i, j in back:
            cand &= nbr[img[i] * n + img[j]]
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            if all(nbr[img[i] * n + v].bit_count() >= need for i, need in needs):
                img[p] = v
                yield from rec(p + 1, used | low)

    yield from rec(0, 0)


def find_embedding(nbr, n, plan):
    return next(iter_embeddings(nbr, n, plan), None)


class _Timeout(Exception):
    pass


def search_feasible(n_pairs, tri_pairs, copies_of, copy_triples, d, e, force_first, deadline):
    """Depth-first search over triples for a forbidden-free edge set.

    Triples are decided in the order of ``tri_pairs`` (present before
    absent). A pair fails as soon as its codegree plus its undecided triples
    drops below ``d``; a branch fails when its edges plus the undecided
    triples drop below ``e``. ``copies_of[t]`` lists the forbidden copies
    (indices into ``copy_triples``) using triple ``t``.

    Returns ``(status, present, nodes)`` with ``present`` a 0/1 list when a
    witness was found. ``deadline`` is a ``time.monotonic()`` value or 0.
    """
    T = len(tri_pairs)
    codeg = [0] * n_pairs
    rem = [0] * n_pairs
    for ps in tri_pairs:
        for p in ps:
            rem[p] += 1
    if any(r < d for r in rem):
        return INFEASIBLE, None, 0
    state = [0] * T
    nodes = 0

    def closes_copy(t):
        for c in copies_of[t]:
            for u in copy_triples[c]:
                if u != t and not state[u]:
                    break
            else:
                return True
        return False

    def rec(t, edges):
        nonlocal nodes
        nodes += 1
        if deadline and not nodes & 0xFFF and time.monotonic() > deadline:
            raise _Timeout
        if edges + (T - t) < e:
            return False
        if t == T:
            return True
        ps = tri_pairs[t]
        if not closes_copy(t):
            state[t] = 1
            for p in ps:
                codeg[p] += 1
                rem[p] -= 1
            if rec(t + 1, edges + 1):
                return True
            state[t] = 0
            for p in ps:
                codeg[p] -= 1
                rem[p] += 1
        if force_first and t == 0:
            return False
        for p in ps:
            rem[p] -= 1
        ok = all(codeg[p] + rem[p] >= d for p in ps)
        if ok and rec(t + 1, edges):
            return True
        for p in ps:
            rem[p] += 1
        return False

    try:
        found = rec(0, 0)
    except _Timeout:
        return TIMEOUT, None, nodes
    if found:
        return FOUND, list(state), nodes
    return INFEASIBLE, None, nodes
