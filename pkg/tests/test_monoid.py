import itertools
import math
import random
from functools import reduce

import numpy as np
import pytest

import oracles
from gracelab.endograph import EndoFunction, compose, summarize
from gracelab.monoid import (
    Permutation,
    all_permutations,
    census,
    conjugate,
    enumerate_all_functions,
    enumerate_forest_functions,
    enumerate_tree_functions,
    family_members,
    inverse_table,
    lex_rank,
    lex_unrank,
    permutation_table,
    union_count,
    _closure_witness,
    verify_closure,
)

PATH4 = EndoFunction((0, 0, 1, 2))


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))

    def test_inverse(self):
        s = Permutation((2, 0, 3, 1))
        assert compose(s, s.inverse()) == EndoFunction.identity(4)

    def test_sign(self):
        assert Permutation((1, 0, 2)).sign() == -1
        assert Permutation((1, 2, 0)).sign() == 1

    def test_complement(self):
        assert Permutation.complement(4).values == (3, 2, 1, 0)


class TestLex:
    def test_anchors(self):
        assert lex_rank(Permutation((0, 1, 2, 3))) == 0
        assert lex_rank(Permutation((3, 2, 1, 0))) == 23
        assert lex_rank(Permutation((1, 0, 2))) == 2

    def test_unrank(self):
        assert lex_unrank(0, 5).values == (0, 1, 2, 3, 4)
        assert lex_unrank(119, 5).values == (4, 3, 2, 1, 0)
        assert lex_unrank(2, 3).values == (1, 0, 2)

    def test_unrank_out_of_range(self):
        with pytest.raises(ValueError):
            lex_unrank(6, 3)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_matches_sorted_order(self, n):
        for p in itertools.permutations(range(n)):
            assert lex_rank(Permutation(p)) == oracles.lex_position(p)

    def test_all_permutations_in_rank_order(self):
        assert [lex_rank(p) for p in all_permutations(5)] == list(range(120))


class TestConjugate:
    def test_identity(self):
        assert conjugate(PATH4, Permutation((0, 1, 2, 3))) == PATH4

    def test_path_example(self):
        h = conjugate(PATH4, Permutation((0, 3, 1, 2)))
        # renaming i -> sigma(i) sends the edges i -> f(i) to these
        assert sorted(h.edges()) == [(0, 0), (1, 3), (2, 1), (3, 0)]
        assert h.values == (0, 3, 1, 0)

    def test_round_trip(self):
        s = Permutation((2, 0, 3, 1))
        assert conjugate(conjugate(PATH4, s), s.inverse()) == PATH4

    @pytest.mark.parametrize("n", range(1, 5))
    def test_matches_oracle_and_keeps_shape(self, n):
        for f in enumerate_all_functions(n):
            for s in all_permutations(n):
                h = conjugate(f, s)
                assert h.values == oracles.conj(f.values, s.values)
                assert summarize(h) == summarize(f)


class TestEnumeration:
    def test_trees_small(self):
        assert [t.values for t in enumerate_tree_functions(3)] == [(0, 0, 0), (0, 0, 1)]
        assert [t.values for t in enumerate_tree_functions(1)] == [(0,)]

    def test_tree_count(self):
        assert sum(1 for _ in enumerate_tree_functions(8)) == 5040

    def test_forests_small(self):
        assert [t.values for t in enumerate_forest_functions(2)] == [(0, 0), (0, 1)]
        assert [t.values for t in enumerate_forest_functions(1)] == [(0,)]

    def test_forest_count(self):
        assert sum(1 for _ in enumerate_forest_functions(6)) == 720

    def test_tables(self):
        p, q = permutation_table(4), inverse_table(4)
        assert p.shape == (24, 4)
        assert (np.take_along_axis(p, q, axis=1) == np.arange(4)).all()
        assert not p.flags.writeable


class TestClosure:
    def test_forest_monoid(self):
        assert verify_closure("forest-monoid", 4)

    def test_tree_semigroup(self):
        res = verify_closure("tree-semigroup", 5)
        assert res.closed and not res.has_identity

    def test_no_odd_permutations(self):
        res = verify_closure("no-odd-permutations", 4)
        assert res.closed
        assert res.size == 4**4 - math.factorial(4) // 2

    def test_counterexample_reported(self):
        # {id, 3-cycle} misses the square of the 3-cycle
        rows = np.array([[0, 1, 2], [1, 2, 0]])
        assert _closure_witness(rows, 3) == (1, 1)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            verify_closure("semigroup-of-dreams", 3)

    @pytest.mark.parametrize("n", range(2, 5))
    def test_conjugated_monoids_closed_and_distinct(self, n):
        seen = set()
        for s in all_permutations(n):
            assert verify_closure("conjugated-forest", n, s)
            members = family_members("conjugated-forest", n, s)
            seen.add(frozenset(map(tuple, members.tolist())))
        assert len(seen) == math.factorial(n)


class TestCensus:
    @pytest.mark.parametrize("n,expected", [(2, 4), (3, 21), (4, 148), (5, 1415)])
    def test_union_count(self, n, expected):
        assert union_count(n) == expected
        assert (n + 1) ** (n - 1) + math.factorial(n) - 1 == expected

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_union_matches_oracle(self, n):
        assert union_count(n) == oracles.cayley_union(n)

    def test_sizes(self):
        c = census(4)
        assert (c.forest_monoid_size, c.tree_semigroup_size) == (24, 6)
        assert c.match
        assert all(v for v in c.closure_verified.values())

    def test_lower_bound_families_are_reported(self):
        lb = census(4).lower_bound
        assert lb["target_size"] == 7
        assert lb["claimed"] == 52
        # the three constructions give fewer closed families than the claimed count
        assert lb["distinct_closed"] == 34
        assert lb["met"] is False

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            census(8)


class TestTreeProducts:
    @pytest.mark.parametrize("n", range(1, 5))
    def test_every_product_of_n_minus_1_trees_is_zero(self, n):
        trees = list(enumerate_tree_functions(n))
        zero = EndoFunction.constant(n)
        for combo in itertools.product(trees, repeat=max(n - 1, 1)):
            assert reduce(compose, combo) == zero

    @pytest.mark.parametrize("n", [5, 6])
    def test_random_long_products_are_zero(self, n):
        rng = random.Random(n)
        trees = list(enumerate_tree_functions(n))
        zero = EndoFunction.constant(n)
        for _ in range(2000):
            combo = [rng.choice(trees) for _ in range(n - 1 + rng.randrange(3))]
            assert reduce(compose, combo) == zero

    def test_shorter_products_need_not_vanish(self):
        path = EndoFunction((0, 0, 1, 2, 3))
        assert reduce(compose, [path] * 3) != EndoFunction.constant(5)
