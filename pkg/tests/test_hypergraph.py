from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codegree.constructions import (
    complete_bipartite,
    from_colouring,
    random_colouring,
    ramsey_construction,
    steiner_blowup,
    suspension,
)
from codegree.families import fano_plane, single_edge
from codegree.hypergraph import (
    ForbiddenFamily,
    InputError,
    PairGraph,
    TriSystem,
    clique_number_at_least,
    codegree,
    complete,
    complete_pairgraph,
    contains,
    contains_any,
    empty,
    find_copy,
    is_embedding,
    link_graph,
    min_codegree,
    triple_rank,
)
from codegree.steiner import generate_sts
from tests.oracles import codegree_bf, contains_bf, has_clique_bf, min_codegree_bf


@st.composite
def trisystems(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_n, max_n))
    triples = list(combinations(range(n), 3))
    if not triples:
        return TriSystem(n)
    chosen = draw(st.lists(st.sampled_from(triples), unique=True, max_size=len(triples)))
    return TriSystem(n, chosen)


class TestTriSystem:
    def test_normalises_orientation_and_order(self):
        G = TriSystem(5, [(4, 2, 0), (0, 1, 2)])
        assert G.edges == ((0, 1, 2), (0, 2, 4))

    @pytest.mark.parametrize(
        "edges",
        [[(0, 1, 1)], [(0, 1, 5)], [(-1, 1, 2)], [(0, 1, 2), (2, 1, 0)], [(0, 1)]],
    )
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(InputError):
            TriSystem(5, edges)

    def test_colex_rank_is_a_bijection(self):
        ranks = sorted(triple_rank(*t) for t in combinations(range(9), 3))
        assert ranks == list(range(84))

    def test_bitset_matches_edges(self):
        G = TriSystem(6, [(0, 1, 2), (1, 3, 5)])
        assert G.has_edge(2, 1, 0) and G.has_edge(5, 3, 1)
        assert not G.has_edge(0, 1, 3)
        assert G.bits.bit_count() == 2

    def test_equality_and_hash(self):
        assert TriSystem(4, [(0, 1, 2)]) == TriSystem(4, [(2, 1, 0)])
        assert TriSystem(4, [(0, 1, 2)]) != TriSystem(5, [(0, 1, 2)])
        assert len({TriSystem(4, [(0, 1, 2)]), TriSystem(4, [(1, 0, 2)])}) == 1

    def test_family_rejects_empty_members(self):
        with pytest.raises(InputError):
            ForbiddenFamily((TriSystem(3),))
        with pytest.raises(InputError):
            ForbiddenFamily(())


class TestCodegree:
    def test_complete_on_four(self):
        assert codegree(complete(4), 0, 1) == 2

    def test_single_edge(self):
        assert codegree(TriSystem(3, [(0, 1, 2)]), 0, 1) == 1

    def test_balanced_bipartite_six(self):
        G = complete_bipartite(6)
        oracle_edges = [t for t in combinations(range(6), 3) if {0, 1, 2} & set(t) and {3, 4, 5} & set(t)]
        assert G.edges == tuple(oracle_edges)
        assert codegree(G, 0, 1) == codegree_bf(oracle_edges, 0, 1) == 3
        assert codegree(G, 0, 3) == codegree_bf(oracle_edges, 0, 3) == 4

    @pytest.mark.parametrize("x,y", [(0, 0), (0, 6), (-1, 2)])
    def test_bad_vertices(self, x, y):
        with pytest.raises(InputError):
            codegree(complete(6), x, y)

    def test_min_codegree_examples(self):
        assert min_codegree(empty(5)) == 0
        assert min_codegree(complete(6)) == 4
        G = complete_bipartite(6)
        assert min_codegree(G) == min_codegree_bf(6, G.edges) == 3

    def test_min_codegree_needs_two_vertices(self):
        with pytest.raises(InputError):
            min_codegree(empty(1))

    @given(trisystems(min_n=2))
    def test_codegree_sum_is_three_times_edges(self, G):
        total = sum(codegree(G, x, y) for x, y in combinations(range(G.n), 2))
        assert total == 3 * G.m

    @given(trisystems(min_n=2))
    def test_codegree_symmetric_and_bounded(self, G):
        for x, y in combinations(range(G.n), 2):
            c = codegree(G, x, y)
            assert c == codegree(G, y, x) == codegree_bf(G.edges, x, y)
            assert 0 <= c <= G.n - 2

    @given(trisystems(min_n=2))
    def test_min_codegree_complete_iff_n_minus_2(self, G):
        assert (min_codegree(G) == G.n - 2) == (G == complete(G.n))


class TestContains:
    def test_complete_in_itself(self):
        assert contains(complete(4), complete(4))

    def test_bipartite_is_fano_free(self):
        assert not contains(complete_bipartite(10), fano_plane())

    def test_steiner_blowup_has_no_k5(self):
        G = steiner_blowup(generate_sts(3), 9)
        assert not contains(G, complete(5))
        assert not has_clique_bf(9, G.edges, 5)

    def test_witness_is_an_embedding(self):
        G = complete(7)
        phi = find_copy(G, fano_plane())
        assert phi is not None and is_embedding(G, fano_plane(), phi)

    def test_pattern_with_more_vertices(self):
        assert not contains(complete(4), complete(5))

    def test_edgeless_pattern_needs_room_only(self):
        assert contains(empty(3), TriSystem(3))
        assert not contains(empty(2), TriSystem(3))

    def test_contains_any_examples(self):
        assert not contains_any(empty(6), ForbiddenFamily((single_edge(),)))
        assert contains_any(complete(6), ForbiddenFamily((complete(4),)))
        for seed in range(5):
            G = ramsey_construction(random_colouring(6, 2, seed))
            assert not contains_any(G, ForbiddenFamily((complete(6),)))

    @settings(max_examples=60, deadline=None)
    @given(trisystems(max_n=6, min_n=1), trisystems(max_n=4, min_n=1))
    def test_agrees_with_permutation_oracle(self, G, H):
        assert contains(G, H) == contains_bf(G.n, G.edges, H.n, H.edges)

    @given(trisystems(max_n=7, min_n=1))
    def test_reflexive(self, G):
        assert contains(G, G)

    @settings(deadline=None)
    @given(trisystems(max_n=7, min_n=3), trisystems(max_n=4, min_n=1), st.data())
    def test_monotone_under_edge_addition(self, G, H, data):
        if not contains(G, H):
            return
        missing = [t for t in combinations(range(G.n), 3) if t not in G.edge_set]
        extra = data.draw(st.lists(st.sampled_from(missing), unique=True) if missing else st.just([]))
        assert contains(TriSystem(G.n, list(G.edges) + extra), H)


class TestClique:
    def test_examples(self):
        assert clique_number_at_least(complete(6), 6)
        assert not clique_number_at_least(empty(6), 3)
        for seed in range(10):
            assert not clique_number_at_least(from_colouring(random_colouring(12, 2, seed)), 4)

    def test_small_s_rejected(self):
        with pytest.raises(InputError):
            clique_number_at_least(complete(4), 2)

    @settings(max_examples=150, deadline=None)
    @given(trisystems(max_n=8), st.integers(3, 6))
    def test_matches_general_containment(self, G, s):
        expected = has_clique_bf(G.n, G.edges, s)
        assert clique_number_at_least(G, s) == contains(G, complete(s)) == expected


class TestLinkGraph:
    def test_suspension_apex(self):
        tri = complete_pairgraph(3)
        assert link_graph(suspension(tri), 3) == tri

    def test_complete(self):
        assert link_graph(complete(5), 2) == complete_pairgraph(4)

    def test_vertex_outside_every_edge(self):
        assert link_graph(TriSystem(4, [(0, 1, 2)]), 3) == PairGraph(3)

    def test_relabels_in_order(self):
        assert link_graph(TriSystem(5, [(1, 2, 4)]), 2).edges == ((1, 3),)

    def test_bad_vertex(self):
        with pytest.raises(InputError):
            link_graph(complete(4), 4)

    @given(trisystems(min_n=1))
    def test_edge_count_is_vertex_degree(self, G):
        for x in range(G.n):
            L = link_graph(G, x)
            assert L.m == sum(1 for e in G.edges if x in e) == G.degrees[x]
            assert L.degree_sum() == 2 * G.degrees[x]
