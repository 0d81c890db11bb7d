# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; see ``_purepy`` for the reference semantics.

Bitset kernels require ``n <= 64``; the dispatcher routes larger hosts to the
pure-Python versions.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, free
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

cdef enum:
    MAXV = 64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popcount(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline int lowbit(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


cdef uint64_t* _nbr_array(nbr, int n) except NULL:
    cdef uint64_t* out = <uint64_t*> malloc(max(n * n, 1) * sizeof(uint64_t))
    if out == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n * n):
        out[i] = <uint64_t> nbr[i]
    return out


# ---------------------------------------------------------------- cliques

cdef struct CliqueCtx:
    const uint64_t* nbr
    int n
    int s
    int chosen[MAXV]


cdef bint _clique_rec(CliqueCtx* ctx, uint64_t cand, int depth) noexcept nogil:
    cdef int v, k, need
    cdef uint64_t low, nxt
    if depth == ctx.s:
        return True
    need = ctx.s - depth
    if popcount(cand) < need:
        return False
    while cand:
        v = lowbit(cand)
        low = (<uint64_t> 1) << v
        cand ^= low
        nxt = cand
        for k in range(depth):
            nxt &= ctx.nbr[ctx.chosen[k] * ctx.n + v]
        ctx.chosen[depth] = v
        if _clique_rec(ctx, nxt, depth + 1):
            return True
        if popcount(cand) < need:
            return False
    return False


def find_clique(nbr, int n, int s):
    if s > n:
        return None
    if n > MAXV:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef CliqueCtx ctx
    cdef uint64_t* arr = _nbr_array(nbr, n)
    cdef uint64_t full = (~(<uint64_t> 0)) if n == 64 else (((<uint64_t> 1) << n) - 1)
    cdef bint ok
    ctx.nbr = arr
    ctx.n = n
    ctx.s = s
    try:
        with nogil:
            ok = _clique_rec(&ctx, full, 0)
        if ok:
            return [ctx.chosen[i] for i in range(s)]
        return None
    finally:
        free(arr)


# ------------------------------------------------------------- embeddings

cdef struct EmbedCtx:
    const uint64_t* nbr
    int n
    int h
    const uint64_t* mask
    const int* back_ptr
    const int* back_idx
    const int* need_ptr
    const int* need_idx
    int img[MAXV]


cdef bint _embed_rec(EmbedCtx* ctx, int p, uint64_t used) noexcept nogil:
    cdef int k, v, i, j
    cdef uint64_t cand, low
    cdef bint ok
    cdef int n = ctx.n
    if p == ctx.h:
        return True
    cand = ctx.mask[p] & ~used
    for k in range(ctx.back_ptr[p], ctx.back_ptr[p + 1]):
        i = ctx.back_idx[2 * k]
        j = ctx.back_idx[2 * k + 1]
        cand &= ctx.nbr[ctx.img[i] * n + ctx.img[j]]
    while cand:
        v = lowbit(cand)
        low = (<uint64_t> 1) << v
        cand ^= low
        ok = True
        for k in range(ctx.need_ptr[p], ctx.need_ptr[p + 1]):
            if popcount(ctx.nbr[ctx.img[ctx.need_idx[2 * k]] * n + v]) < ctx.need_idx[2 * k + 1]:
                ok = False
                break
        if ok:
            ctx.img[p] = v
            if _embed_rec(ctx, p + 1, used | low):
                return True
    return False


def find_embedding(nbr, int n, plan):
    if n > MAXV:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef int h = len(plan)
    if h > n:
        return None
    cdef int nb = 0, nn = 0, p, k
    for entry in plan:
        nb += len(entry[1])
        nn += len(entry[2])
    cdef uint64_t* arr = _nbr_array(nbr, n)
    cdef uint64_t* mask = <uint64_t*> malloc((h + 1) * sizeof(uint64_t))
    cdef int* back_ptr = <int*> malloc((h + 1) * sizeof(int))
    cdef int* back_idx = <int*> malloc((2 * nb + 1) * sizeof(int))
    cdef int* need_ptr = <int*> malloc((h + 1) * sizeof(int))
    cdef int* need_idx = <int*> malloc((2 * nn + 1) * sizeof(int))
    cdef EmbedCtx ctx
    cdef bint ok
    try:
        if not (mask and back_ptr and back_idx and need_ptr and need_idx):
            raise MemoryError()
        nb = 0
        nn = 0
        for p in range(h):
            m, back, needs = plan[p]
            mask[p] = <uint64_t> m
            back_ptr[p] = nb
            for i, j in back:
                back_idx[2 * nb] = i
                back_idx[2 * nb + 1] = j
                nb += 1
            need_ptr[p] = nn
            for i, need in needs:
                need_idx[2 * nn] = i
                need_idx[2 * nn + 1] = need
                nn += 1
        back_ptr[h] = nb
        need_ptr[h] = nn
        ctx.nbr = arr
        ctx.n = n
        ctx.h = h
        ctx.mask = mask
        ctx.back_ptr = back_ptr
        ctx.back_idx = back_idx
        ctx.need_ptr = need_ptr
        ctx.need_idx = need_idx
        with nogil:
            ok = _embed_rec(&ctx, 0, 0)
        if ok:
            return [ctx.img[k] for k in range(h)]
        return None
    finally:
        free(arr)
        free(mask)
        free(back_ptr)
        free(back_idx)
        free(need_ptr)
        free(need_idx)


# --------------------------------------------------------- feasibility DFS

cdef struct SearchCtx:
    int T
    const int* tri_pairs
    const int* cof_ptr
    const int* cof_idx
    const int* cp_ptr
    const int* cp_idx
    int* codeg
    int* rem
    char* state
    int d
    int e
    bint force_first
    double deadline
    int64_t nodes
    bint timed_out


cdef inline double _now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef bint _closes_copy(SearchCtx* ctx, int t) noexcept nogil:
    cdef int k, c, q, u
    cdef bint full
    for k in range(ctx.cof_ptr[t], ctx.cof_ptr[t + 1]):
        c = ctx.cof_idx[k]
        full = True
        for q in range(ctx.cp_ptr[c], ctx.cp_ptr[c + 1]):
            u = ctx.cp_idx[q]
            if u != t and not ctx.state[u]:
                full = False
                break
        if full:
            return True
    return False


cdef bint _search_rec(SearchCtx* ctx, int t, int edges) noexcept nogil:
    cdef int a, b, c
    ctx.nodes += 1
    if ctx.deadline > 0 and (ctx.nodes & 0xFFF) == 0 and _now() > ctx.deadline:
        ctx.timed_out = True
    if ctx.timed_out:
        return False
    if edges + (ctx.T - t) < ctx.e:
        return False
    if t == ctx.T:
        return True
    a = ctx.tri_pairs[3 * t]
    b = ctx.tri_pairs[3 * t + 1]
    c = ctx.tri_pairs[3 * t + 2]
    if not _closes_copy(ctx, t):
        ctx.state[t] = 1
        ctx.codeg[a] += 1; ctx.codeg[b] += 1; ctx.codeg[c] += 1
        ctx.rem[a] -= 1; ctx.rem[b] -= 1; ctx.rem[c] -= 1
        if _search_rec(ctx, t + 1, edges + 1):
            return True
        ctx.state[t] = 0
        ctx.codeg[a] -= 1; ctx.codeg[b] -= 1; ctx.codeg[c] -= 1
        ctx.rem[a] += 1; ctx.rem[b] += 1; ctx.rem[c] += 1
        if ctx.timed_out:
            return False
    if ctx.force_first and t == 0:
        return False
    ctx.rem[a] -= 1; ctx.rem[b] -= 1; ctx.rem[c] -= 1
    if (ctx.codeg[a] + ctx.rem[a] >= ctx.d and ctx.codeg[b] + ctx.rem[b] >= ctx.d
            and ctx.codeg[c] + ctx.rem[c] >= ctx.d):
        if _search_rec(ctx, t + 1, edges):
            return True
    ctx.rem[a] += 1; ctx.rem[b] += 1; ctx.rem[c] += 1
    return False


def search_feasible(int n_pairs, tri_pairs, copies_of, copy_triples, int d, int e,
                    bint force_first, double deadline):
    cdef int T = len(tri_pairs)
    cdef int ncop = len(copy_triples)
    cdef int total_cof = sum(len(x) for x in copies_of)
    cdef int total_cp = sum(len(x) for x in copy_triples)
    cdef int t, k, p, pos
    cdef SearchCtx ctx
    cdef bint found
    cdef int* tp = <int*> malloc((3 * T + 1) * sizeof(int))
    cdef int* cof_ptr = <int*> malloc((T + 1) * sizeof(int))
    cdef int* cof_idx = <int*> malloc((total_cof + 1) * sizeof(int))
    cdef int* cp_ptr = <int*> malloc((ncop + 1) * sizeof(int))
    cdef int* cp_idx = <int*> malloc((total_cp + 1) * sizeof(int))
    cdef int* codeg = <int*> calloc(n_pairs + 1, sizeof(int))
    cdef int* rem = <int*> calloc(n_pairs + 1, sizeof(int))
    cdef char* state = <char*> calloc(T + 1, sizeof(char))
    try:
        if not (tp and cof_ptr and cof_idx and cp_ptr and cp_idx and codeg and rem and state):
            raise MemoryError()
        for t in range(T):
            for k in range(3):
                p = tri_pairs[t][k]
                tp[3 * t + k] = p
                rem[p] += 1
        for p in range(n_pairs):
            if rem[p] < d:
                return 0, None, 0
        pos = 0
        for t in range(T):
            cof_ptr[t] = pos
            for k in copies_of[t]:
                cof_idx[pos] = k
                pos += 1
        cof_ptr[T] = pos
        pos = 0
        for k in range(ncop):
            cp_ptr[k] = pos
            for t in copy_triples[k]:
                cp_idx[pos] = t
                pos += 1
        cp_ptr[ncop] = pos
        ctx.T = T
        ctx.tri_pairs = tp
        ctx.cof_ptr = cof_ptr
        ctx.cof_idx = cof_idx
        ctx.cp_ptr = cp_ptr
        ctx.cp_idx = cp_idx
        ctx.codeg = codeg
        ctx.rem = rem
        ctx.state = state
        ctx.d = d
        ctx.e = e
        ctx.force_first = force_first
        ctx.deadline = deadline
        ctx.nodes = 0
        ctx.timed_out = False
        with nogil:
            found = _search_rec(&ctx, 0, 0)
        if ctx.timed_out:
            return -1, None, ctx.nodes
        if found:
            return 1, [int(state[t]) for t in range(T)], ctx.nodes
        return 0, None, ctx.nodes
    finally:
        free(tp)
        free(cof_ptr)
        free(cof_idx)
        free(cp_ptr)
        free(cp_idx)
        free(codeg)
        free(rem)
        free(state)
