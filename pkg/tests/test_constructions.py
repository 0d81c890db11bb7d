from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codegree.constructions import (
    BalancedPartition,
    PairColouring,
    Tournament,
    complete_bipartite,
    cospan,
    from_colouring,
    from_tournament,
    iterated_steiner,
    joint_neighbourhood,
    joint_restriction,
    make_rng,
    rainbow_construction,
    ramsey_construction,
    random_colouring,
    random_tournament,
    steiner_blowup,
    suspension,
    winding_tripartite,
)
from codegree.families import f32, k4_minus
from codegree.hypergraph import (
    InputError,
    PairGraph,
    TriSystem,
    codegree,
    complete,
    complete_pairgraph,
    contains,
    empty,
    induced,
    link_graph,
    min_codegree,
)
from codegree.steiner import SteinerSystem, fano, generate_sts


def colouring(n, s, pairs):
    return PairColouring.from_pairs(n, s, pairs)


@st.composite
def colourings(draw, max_n=7, max_s=4):
    n = draw(st.integers(3, max_n))
    s = draw(st.integers(1, max_s))
    vec = draw(st.lists(st.integers(1, s), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return PairColouring.from_vector(n, s, vec)


@st.composite
def pairgraphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return PairGraph(n, chosen)


class TestInputs:
    def test_colouring_rejects_missing_pair(self):
        with pytest.raises(InputError):
            colouring(3, 2, {(0, 1): 1, (0, 2): 1})

    def test_colouring_rejects_out_of_range_colour(self):
        with pytest.raises(InputError):
            colouring(3, 2, {(0, 1): 1, (0, 2): 3, (1, 2): 1})

    def test_tournament_rejects_double_arc(self):
        with pytest.raises(InputError):
            Tournament.from_arcs(3, [(0, 1), (1, 0), (1, 2)])

    @pytest.mark.parametrize("n,k", [(7, 3), (6, 3), (14, 7), (5, 5), (2, 3)])
    def test_balanced_partition(self, n, k):
        P = BalancedPartition(n, k)
        sizes = P.sizes
        assert sum(sizes) == n and max(sizes) - min(sizes) <= 1
        assert sizes == sorted(sizes, reverse=True)
        assert sorted(v for part in P.parts() for v in part) == list(range(n))
        assert list(P.assignment) == [i for i, part in enumerate(P.parts()) for _ in part]

    def test_rng_streams_are_reproducible_and_distinct(self):
        a = make_rng(5, 3).integers(0, 2**32, 8)
        assert np.array_equal(a, make_rng(5, 3).integers(0, 2**32, 8))
        assert not np.array_equal(a, make_rng(5, 4).integers(0, 2**32, 8))
        assert not np.array_equal(a, make_rng(6, 3).integers(0, 2**32, 8))


class TestFromColouring:
    def test_single_triple(self):
        c = colouring(3, 2, {(0, 1): 1, (0, 2): 2, (1, 2): 1})
        assert from_colouring(c).edges == ((0, 1, 2),)

    def test_constant_colouring_is_empty(self):
        c = PairColouring.from_vector(6, 3, [2] * 15)
        assert from_colouring(c) == empty(6)

    def test_four_vertex_example(self):
        pairs = {(0, 1): 1, (0, 2): 2, (0, 3): 2, (1, 2): 1, (1, 3): 1, (2, 3): 1}
        c = colouring(4, 2, pairs)
        oracle = [(i, j, k) for i, j, k in combinations(range(4), 3) if pairs[(i, j)] != pairs[(i, k)]]
        assert oracle == [(0, 1, 2), (0, 1, 3)]
        assert from_colouring(c).edges == tuple(oracle)

    @given(colourings(), st.data())
    def test_colour_relabel_invariance(self, c, data):
        perm = data.draw(st.permutations(range(1, c.s + 1)))
        assert from_colouring(c.permuted(perm)) == from_colouring(c)

    @settings(deadline=None)
    @given(colourings(max_n=7, max_s=3))
    def test_clique_free(self, c):
        assert not contains(from_colouring(c), complete(c.s + 2))


class TestFromTournament:
    def test_transitive_is_empty(self):
        assert from_tournament(Tournament.from_arcs(3, [(0, 1), (0, 2), (1, 2)])) == empty(3)

    def test_cyclic_is_one_edge(self):
        T = Tournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
        assert from_tournament(T).edges == ((0, 1, 2),)

    @pytest.mark.parametrize("seed", range(10))
    def test_k4_free_on_ten(self, seed):
        assert not contains(from_tournament(random_tournament(10, seed)), complete(4))

    @given(st.integers(3, 9), st.integers(0, 2**32))
    def test_equals_induced_colouring(self, n, seed):
        T = random_tournament(n, seed)
        assert from_tournament(T) == from_colouring(T.as_colouring())


class TestRamsey:
    def test_monochromatic(self):
        assert ramsey_construction(PairColouring.from_vector(3, 2, [1, 1, 1])) == empty(3)

    def test_mixed(self):
        c = colouring(3, 2, {(0, 1): 1, (0, 2): 2, (1, 2): 1})
        assert ramsey_construction(c).edges == ((0, 1, 2),)

    def test_needs_two_colours(self):
        with pytest.raises(InputError):
            ramsey_construction(PairColouring.from_vector(3, 3, [1, 2, 3]))

    @pytest.mark.parametrize("seed", range(5))
    def test_k6_free_on_twelve(self, seed):
        assert not contains(ramsey_construction(random_colouring(12, 2, seed)), complete(6))

    @given(colourings(max_s=2).filter(lambda c: c.s == 2))
    def test_contains_colouring_construction(self, c):
        assert from_colouring(c).edge_set <= ramsey_construction(c).edge_set


class TestRainbow:
    def test_three_colours(self):
        assert rainbow_construction(PairColouring.from_vector(3, 3, [1, 2, 3])).m == 1

    def test_repeated_colour(self):
        assert rainbow_construction(PairColouring.from_vector(3, 3, [1, 2, 1])).m == 0

    @pytest.mark.parametrize("seed", range(5))
    def test_two_colours_is_k4_minus_free(self, seed):
        G = rainbow_construction(random_colouring(10, 2, seed))
        assert not contains(G, suspension(complete_pairgraph(3)))

    @settings(deadline=None, max_examples=50)
    @given(colourings(max_n=7, max_s=4).filter(lambda c: c.s >= 2))
    def test_suspension_free(self, c):
        assert not contains(rainbow_construction(c), suspension(complete_pairgraph(c.s + 1)))


class TestSteinerBlowup:
    def test_s5_n6(self):
        G = steiner_blowup(generate_sts(3), 6)
        parts = BalancedPartition(6, 3).assignment
        oracle = []
        for t in combinations(range(6), 3):
            ps = sorted(parts[v] for v in t)
            if len(set(ps)) == 2:
                oracle.append(t)
        assert G.edges == tuple(oracle) and G.m == 12
        assert min_codegree(G) == 6 - 6 // 3 - 2 == 2
        assert not contains(G, complete(5))

    def test_one_vertex_per_part_is_empty(self):
        assert steiner_blowup(generate_sts(3), 3) == empty(3)

    def test_fano_s9_n14(self):
        G = steiner_blowup(fano(), 14)
        assert min_codegree(G) == 14 - 2 - 2
        assert not contains(G, complete(9))

    @pytest.mark.parametrize("n", [6, 9, 12, 15])
    def test_codegree_formula(self, n):
        G = steiner_blowup(generate_sts(3), n)
        part = BalancedPartition(n, 3).assignment
        for x, y in combinations(range(n), 2):
            expected = n - n // 3 if part[x] == part[y] else n - n // 3 - 2
            assert codegree(G, x, y) == expected

    @pytest.mark.parametrize("n", [7, 8, 10, 11])
    def test_codegree_with_rounding(self, n):
        # parts of size floor(n/3) or ceil(n/3): one unit of slack per rounding
        G = steiner_blowup(generate_sts(3), n)
        assert n - -(-n // 3) - 2 <= min_codegree(G) <= n - n // 3 - 2 + 1

    def test_rejects_non_steiner(self):
        with pytest.raises(InputError):
            steiner_blowup(TriSystem(3, [(0, 1, 2)]), 6)

    def test_rejects_small_n(self):
        with pytest.raises(InputError):
            steiner_blowup(fano(), 5)


class TestIteratedSteiner:
    def test_s2_is_empty(self):
        for n in (3, 5, 9, 27):
            assert iterated_steiner(generate_sts(3), n) == empty(n)

    def test_fano_single_level(self):
        G = iterated_steiner(fano(), 7)
        assert G.m == 35 - 7
        assert G.edge_set == set(combinations(range(7), 3)) - set(fano().edges)

    def test_fano_n21_suspension_free(self):
        assert not contains(iterated_steiner(fano(), 21), suspension(complete_pairgraph(4)))

    def test_recursion_fills_parts(self):
        G = iterated_steiner(fano(), 49)
        assert induced(G, range(7)) == iterated_steiner(fano(), 7)

    def test_rejects_uncertified_input(self):
        with pytest.raises(InputError):
            iterated_steiner(fano().graph, 7)
        with pytest.raises(InputError):
            SteinerSystem(TriSystem(7, [(0, 1, 2)]))


class TestStructural:
    def test_suspension_of_triangle_is_k4_minus(self):
        assert suspension(complete_pairgraph(3)) == TriSystem(4, [(0, 1, 3), (0, 2, 3), (1, 2, 3)])
        assert contains(suspension(complete_pairgraph(3)), k4_minus())
        assert contains(k4_minus(), suspension(complete_pairgraph(3)))

    def test_suspension_of_empty(self):
        assert suspension(PairGraph(3)) == empty(4)

    def test_suspension_of_single_edge(self):
        assert suspension(PairGraph(2, [(0, 1)])) == TriSystem(3, [(0, 1, 2)])

    @given(pairgraphs())
    def test_link_of_suspension_apex(self, H):
        assert link_graph(suspension(H), H.n) == H

    def test_cospan_of_edge_is_f32(self):
        G = cospan(TriSystem(3, [(0, 1, 2)]))
        assert G == TriSystem(5, [(0, 1, 2), (0, 3, 4), (1, 3, 4), (2, 3, 4)])
        assert contains(G, f32()) and contains(f32(), G)

    def test_cospan_of_nothing(self):
        assert cospan(TriSystem(0)) == empty(2)

    def test_cospan_of_k4(self):
        G = cospan(complete(4))
        assert G.n == 6 and G.m == 8
        assert codegree(G, 4, 5) == 4

    def test_winding_six(self):
        G = winding_tripartite(6)
        expected = [(0, 1, 2), (0, 1, 3), (2, 3, 4), (2, 3, 5), (4, 5, 0), (4, 5, 1)]
        assert G == TriSystem(6, expected)
        assert not contains(G, f32())

    def test_winding_three_is_empty(self):
        assert winding_tripartite(3) == empty(3)

    @pytest.mark.parametrize("n", [6, 9, 12, 15, 30])
    def test_winding_codegree(self, n):
        # same-part pairs see the whole next part; cross pairs see the rest of one part
        assert min_codegree(winding_tripartite(n)) == n // 3 - 1

    def test_bipartite_codegree(self):
        for n in (6, 8, 10):
            assert min_codegree(complete_bipartite(n)) == n // 2


class TestJointRestriction:
    def test_cospan_returns_original(self):
        H = TriSystem(5, [(0, 1, 2), (1, 3, 4)])
        assert joint_restriction(cospan(H), 5, 6) == H

    def test_complete(self):
        assert joint_restriction(complete(5), 1, 3) == complete(3)

    def test_steiner_blowup_same_part(self):
        G = steiner_blowup(generate_sts(3), 6)
        gamma = joint_neighbourhood(G, 0, 1)
        assert gamma == [2, 3, 4, 5]
        expected = [tuple(v - 2 for v in t) for t in G.edges if set(t) <= set(gamma)]
        assert joint_restriction(G, 0, 1) == TriSystem(4, expected) == complete(4)

    def test_same_vertex_rejected(self):
        with pytest.raises(InputError):
            joint_restriction(complete(4), 1, 1)

    @settings(deadline=None, max_examples=40)
    @given(st.integers(5, 10), st.floats(0.3, 0.95), st.integers(0, 2**32))
    def test_codegree_loss_bound(self, n, p, seed):
        from codegree.hypergraph import all_triples

        G = TriSystem.from_mask(n, make_rng(seed).random(len(all_triples(n))) < p)
        for x, y in combinations(range(n), 2):
            gamma = joint_neighbourhood(G, x, y)
            R = joint_restriction(G, x, y)
            for a, b in combinations(range(len(gamma)), 2):
                lost = n - len(gamma)
                assert codegree(R, a, b) >= codegree(G, gamma[a], gamma[b]) - lost
