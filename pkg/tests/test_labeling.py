import itertools

import pytest

import oracles
from gracelab.endograph import EndoFunction
from gracelab.labeling import (
    automorphisms,
    distinct_label_extrema,
    edge_labels,
    enumerate_grl,
    graceful_permutations,
    is_graceful,
    realizes_sequence,
    rho,
    search_graceful,
    star_sequence,
)
from gracelab.monoid import Permutation, enumerate_all_functions, enumerate_tree_functions

SIX = EndoFunction((0, 0, 0, 0, 3, 3))
PATH4 = EndoFunction((0, 0, 1, 2))


def ident(n):
    return Permutation(tuple(range(n)))


class TestEdgeLabels:
    def test_six_vertex(self):
        assert edge_labels(SIX, ident(6)) == (0, 1, 1, 2, 2, 3)

    def test_star_is_graceful(self):
        assert edge_labels(EndoFunction.constant(4), ident(4)) == (0, 1, 2, 3)
        assert is_graceful(EndoFunction.constant(4), ident(4))

    def test_path(self):
        s = Permutation((0, 3, 1, 2))
        assert edge_labels(PATH4, s) == (0, 1, 2, 3)
        assert is_graceful(PATH4, s)
        assert not is_graceful(PATH4, ident(4))
        assert edge_labels(PATH4, ident(4)) == (0, 1, 1, 1)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_oracle(self, n):
        for f in enumerate_all_functions(n):
            for s in itertools.permutations(range(n)):
                assert edge_labels(f, Permutation(s)) == oracles.labels(f.values, s)


class TestStarSequence:
    @pytest.mark.parametrize(
        "n,j,expected", [(6, 0, (0, 1, 2, 3, 4, 5)), (6, 1, (0, 1, 1, 2, 3, 4)), (4, 2, (0, 1, 1, 2))]
    )
    def test_values(self, n, j, expected):
        assert star_sequence(n, j) == expected

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            star_sequence(4, 3)


class TestSearch:
    def test_star_first_witness(self):
        for n in range(1, 7):
            res = search_graceful(EndoFunction.constant(n))
            assert res.found and is_graceful(EndoFunction.constant(n), res.witness)

    def test_path(self):
        res = search_graceful(PATH4)
        assert res.found and is_graceful(PATH4, res.witness)

    def test_exhaustive_count_matches_brute_force(self):
        for n in range(1, 7):
            for f in enumerate_tree_functions(n):
                res = search_graceful(f, exhaustive=True)
                sigmas = oracles.graceful_sigmas(f.values)
                assert res.solution_count == len(sigmas)
                assert res.witness.values == sigmas[0]

    def test_exhaustive_without_symmetry_agrees(self):
        for f in enumerate_tree_functions(6):
            a = search_graceful(f, exhaustive=True)
            b = search_graceful(f, exhaustive=True, symmetry=False)
            assert (a.solution_count, a.witness) == (b.solution_count, b.witness)

    def test_deterministic(self):
        f = EndoFunction((0, 0, 1, 1, 2, 4, 4, 0))
        assert search_graceful(f).witness == search_graceful(f).witness

    def test_attractive_non_tree(self):
        # relabeled trees keep working as long as the fixed point attracts everything
        f = EndoFunction((3, 3, 1, 3))
        res = search_graceful(f)
        assert res.found and is_graceful(f, res.witness)

    def test_rejects_cycles(self):
        with pytest.raises(ValueError):
            search_graceful(EndoFunction((1, 2, 0)))

    def test_all_trees_up_to_7(self):
        for n in range(1, 8):
            for f in enumerate_tree_functions(n):
                res = search_graceful(f)
                assert res.found and is_graceful(f, res.witness)


class TestRealizes:
    def test_graceful_sequence(self):
        res = realizes_sequence(PATH4, (0, 1, 2, 3))
        assert res.found

    def test_star_sequence(self):
        res = realizes_sequence(PATH4, (0, 1, 1, 2))
        assert res.found and edge_labels(PATH4, res.witness) == (0, 1, 1, 2)

    def test_all_zero(self):
        assert not realizes_sequence(PATH4, (0, 0, 0, 0)).found

    def test_out_of_range_label(self):
        assert not realizes_sequence(PATH4, (0, 1, 2, 9)).found

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            realizes_sequence(PATH4, (0, 1))

    def test_counts_against_brute_force(self):
        for n in range(2, 6):
            for f in enumerate_tree_functions(n):
                for j in range(n // 2 + 1):
                    target = star_sequence(n, j)
                    want = sum(1 for s in itertools.permutations(range(n)) if oracles.labels(f.values, s) == target)
                    res = realizes_sequence(f, target, exhaustive=True)
                    assert res.solution_count == want


class TestGrlAndAut:
    @pytest.mark.parametrize("n", range(2, 8))
    def test_star_has_two(self, n):
        assert enumerate_grl(EndoFunction.constant(n)).count == 2

    def test_path_matches_oracle(self):
        assert enumerate_grl(PATH4).count == oracles.grl_count(PATH4.values)

    def test_representatives_are_graceful(self):
        g = enumerate_grl(SIX)
        for h, s in zip(g.graphs, g.representatives):
            assert is_graceful(SIX, s)
            assert h.values == oracles.conj(SIX.values, s.values)

    def test_aut_examples(self):
        assert automorphisms(PATH4).order == 1
        assert automorphisms(EndoFunction.constant(4)).order == 6
        assert automorphisms(EndoFunction.identity(3)).order == 6
        assert automorphisms(SIX).is_group()

    @pytest.mark.parametrize("n", range(1, 6))
    def test_orbit_counting(self, n):
        for f in enumerate_tree_functions(n):
            grl, aut = enumerate_grl(f).count, automorphisms(f).order
            assert grl == oracles.grl_count(f.values)
            assert aut == oracles.aut_order(f.values)
            assert len(graceful_permutations(f)) == grl * aut
            assert 720 % aut == 0 or n < 6

    def test_orbit_counting_n6(self):
        for f in enumerate_tree_functions(6):
            assert len(graceful_permutations(f)) == enumerate_grl(f).count * automorphisms(f).order


class TestRho:
    def test_examples(self):
        r = rho(PATH4)
        assert r.rho == 1 and r.deleted == ((0, 0),)
        assert rho(EndoFunction.constant(4)).rho == 2
        assert rho(EndoFunction((1, 2, 0))).rho == 1

    def test_two_cycle_counts_once(self):
        assert rho(EndoFunction((1, 0))).rho == 1

    @pytest.mark.parametrize("n", range(1, 6))
    def test_oracle(self, n):
        for f in enumerate_all_functions(n):
            r = rho(f)
            assert r.rho == oracles.rho(f.values)
            assert len(r.deleted) == r.rho


class TestExtrema:
    def test_involution(self):
        assert distinct_label_extrema(EndoFunction((1, 0, 3, 2))).min == 1

    def test_three_cycle(self):
        assert distinct_label_extrema(EndoFunction((1, 2, 0))).max == 2

    @pytest.mark.parametrize("n", range(1, 5))
    def test_oracle(self, n):
        for f in enumerate_all_functions(n):
            e = distinct_label_extrema(f)
            assert (e.min, e.max) == oracles.extrema(f.values)
            assert oracles.distinct(f.values, e.argmin.values) == e.min
            assert oracles.distinct(f.values, e.argmax.values) == e.max

    @pytest.mark.parametrize("n", range(1, 8))
    def test_trees_reach_n(self, n):
        for f in enumerate_tree_functions(n):
            assert distinct_label_extrema(f).max == n

    def test_sampled_is_reproducible_and_inside(self):
        f = EndoFunction((0, 0, 1, 2, 3, 4, 5, 6, 7, 8))
        a = distinct_label_extrema(f, samples=100, seed=7)
        b = distinct_label_extrema(f, samples=100, seed=7)
        assert a == b and not a.exhaustive
        assert 1 <= a.min <= a.max <= f.n

    def test_large_needs_samples(self):
        with pytest.raises(ValueError):
            distinct_label_extrema(EndoFunction.constant(8))
