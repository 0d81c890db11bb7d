"""Compare the compiled and pure-Python kernels on the three hot loops.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs on every available backend; the last column is the
speed-up of the compiled kernel over the fallback.
"""

import argparse
import time

from codegree import _kernels
from codegree.constructions import (
    complete_bipartite,
    from_colouring,
    make_rng,
    random_colouring,
    steiner_blowup,
    winding_tripartite,
)
from codegree.families import f32, fano_plane
from codegree.hypergraph import ForbiddenFamily, TriSystem, _plan, all_triples, complete
from codegree.search import _Problem
from codegree.steiner import generate_sts


def random_graph(n, p, seed):
    return TriSystem.from_mask(n, make_rng(seed, 7).random(len(all_triples(n))) < p)


def workloads():
    # clique: absent K5 in dense K5-free hosts forces a full search
    hosts = [from_colouring(random_colouring(40, 3, 1, i)) for i in range(5)]
    yield "clique K5 absent, n=40 x5", lambda k: [k.find_clique(G.nbr, G.n, 5) for G in hosts]

    blow = steiner_blowup(generate_sts(3), 30)
    yield "clique K5 absent, blow-up n=30", lambda k: k.find_clique(blow.nbr, blow.n, 5)

    # embeddings into pattern-free hosts exhaust the search tree
    bip = complete_bipartite(16)
    plan7 = _plan(bip, fano_plane())[1]
    yield "embed F7 absent, bipartite n=16", lambda k: k.find_embedding(bip.nbr, bip.n, plan7)

    wind = winding_tripartite(36)
    plan32 = _plan(wind, f32())[1]
    yield "embed F32 absent, winding n=36", lambda k: k.find_embedding(wind.nbr, wind.n, plan32)

    hits = [random_graph(14, 0.5, i) for i in range(20)]
    plans = [(G, _plan(G, fano_plane())[1]) for G in hits]
    yield "embed F7, random n=14 x20", lambda k: [k.find_embedding(G.nbr, G.n, p) for G, p in plans]

    for n, d, e in ((6, 2, 0), (7, 3, 0), (7, 0, 24)):
        P = _Problem(n, ForbiddenFamily((complete(4),)))
        yield (
            f"feasibility K4-free n={n} d={d} e={e}",
            lambda k, P=P, d=d, e=e: k.search_feasible(
                P.n_pairs, P.tri_pairs, P.copies_of, P.copy_triples, d, e, True, 0.0
            ),
        )


def timed(fn, kernel, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(kernel)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    kernels = _kernels.backends()
    names = sorted(kernels)
    print(f"{'workload':<40}" + "".join(f"{n:>12}" for n in names) + f"{'speed-up':>10}")
    for label, fn in workloads():
        times = {n: timed(fn, kernels[n], args.repeat) for n in names}
        row = f"{label:<40}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names)
        if "compiled" in times:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
