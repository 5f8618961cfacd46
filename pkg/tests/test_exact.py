"""Exact combinatorics: matching counts, component probabilities, thresholds."""

import math
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np
import pytest

from percolab.exact import (
    complete_multipartite,
    p_lower_threshold,
    pm_count_bruteforce,
    pm_count_tripartite,
    prob_large_component,
    small_component_prob,
    two_state_small_component_brute,
)
from percolab.graphs import complete_graph, custom_graph


class TestPLowerThreshold:
    def test_n1_is_zero(self):
        assert p_lower_threshold(1) == pytest.approx(0.0, abs=1e-15)

    def test_n2_value(self):
        # tan(pi/8) = sqrt(2) - 1, so the value is (1 - (sqrt(2)-1)^2)/2
        assert p_lower_threshold(2) == pytest.approx(math.sqrt(2) - 1, abs=1e-15)
        assert p_lower_threshold(2) == pytest.approx(0.41421356237309503, abs=1e-15)

    def test_large_n_limit(self):
        assert abs(p_lower_threshold(10**6) - 0.5) < 1e-11

    def test_monotone_increasing(self):
        vals = [p_lower_threshold(n) for n in range(1, 40)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            p_lower_threshold(0)


class TestComponentProbabilities:
    def test_frozen_rational_n3(self):
        # C(6,3) * ((3/10)/2)^3 = 20 * 27/8000 = 27/400
        assert small_component_prob(3, Fraction(7, 10)) == Fraction(27, 400)
        assert prob_large_component(3, Fraction(7, 10)) == Fraction(373, 400)
        assert float(prob_large_component(3, Fraction(7, 10))) == 0.9325

    def test_frozen_rational_n2(self):
        assert prob_large_component(2, Fraction(3, 5)) == Fraction(19, 25)
        assert float(prob_large_component(2, Fraction(3, 5))) == 0.76

    def test_p_one(self):
        for n in (1, 2, 5):
            assert prob_large_component(n, 1) == 1

    def test_float_input_is_exact_binary(self):
        # float p is converted via its exact binary expansion
        got = small_component_prob(2, 0.6)
        expect = Fraction(6) * ((1 - Fraction(0.6)) / 2) ** 2
        assert got == expect

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_nondecreasing_in_p(self):
        for n in (1, 2, 3, 4):
            grid = [Fraction(k, 40) for k in range(17, 41)]
            vals = [prob_large_component(n, q) for q in grid]
            assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_warns_below_threshold(self):
        with pytest.warns(UserWarning):
            small_component_prob(3, Fraction(1, 10))

    def test_domain_rejections(self):
        with pytest.raises(ValueError):
            small_component_prob(0, Fraction(1, 2))
        with pytest.raises(ValueError):
            small_component_prob(2, Fraction(3, 2))


class TestBruteForceAgreement:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("p", [Fraction(11, 20), Fraction(3, 5), Fraction(7, 10)])
    def test_formula_equals_state_enumeration(self, n, p):
        assert two_state_small_component_brute(n, p) == small_component_prob(n, p)

    def test_brute_rejects_large_n(self):
        with pytest.raises(ValueError):
            two_state_small_component_brute(7, Fraction(3, 5))


class TestPerfectMatchingFormula:
    @pytest.mark.parametrize(
        "parts,expect",
        [
            ((3, 3), 6),
            ((2, 2, 2), 8),
            ((2, 1, 1), 2),
            ((4, 4), 24),
            ((6, 6), 720),
            ((1, 1), 1),
            ((4, 3, 1), 4 * 3 * 2),  # 4!3!1!/(0!1!3!) = 24
        ],
    )
    def test_frozen_values(self, parts, expect):
        assert pm_count_tripartite(parts) == expect

    def test_balanced_bipartite_is_factorial(self):
        for n in range(1, 8):
            assert pm_count_tripartite((n, n)) == math.factorial(n)

    def test_rejects_more_than_three_parts(self):
        with pytest.raises(ValueError):
            pm_count_tripartite((1, 1, 1, 1))

    def test_rejects_oversized_part(self):
        with pytest.raises(ValueError):
            pm_count_tripartite((5, 1))

    def test_rejects_odd_total(self):
        with pytest.raises(ValueError):
            pm_count_tripartite((2, 1))

    def test_order_invariant(self):
        assert pm_count_tripartite((1, 2, 3)) == pm_count_tripartite((3, 2, 1))


class TestPerfectMatchingBruteForce:
    def test_k4(self):
        assert pm_count_bruteforce(complete_graph(4)) == 3

    def test_c4(self):
        G = custom_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)], "c4")
        assert pm_count_bruteforce(G) == 2

    def test_k33(self):
        assert pm_count_bruteforce(complete_multipartite((3, 3))) == 6

    def test_k6_double_factorial(self):
        # PM(K_{2m}) = (2m-1)!! -> 5!! = 15
        assert pm_count_bruteforce(complete_graph(6)) == 15

    def test_odd_graph_zero(self):
        assert pm_count_bruteforce(complete_graph(5)) == 0

    def test_no_edges_zero(self):
        assert pm_count_bruteforce(custom_graph(4, [], "e4")) == 0

    def test_size_guard(self):
        with pytest.raises(ValueError):
            pm_count_bruteforce(custom_graph(18, [], "big"))


def _profiles(total, max_parts=3):
    """All nonincreasing part profiles with <= max_parts nonzero parts."""
    n = total // 2
    out = []
    for k in (1, 2, 3):
        for combo in combinations_with_replacement(range(1, total + 1), k):
            if sum(combo) == total and max(combo) <= n:
                out.append(tuple(sorted(combo, reverse=True)))
    return sorted(set(out))


class TestMultipartiteProperties:
    def test_formula_matches_bruteforce_all_small_profiles(self):
        for total in (2, 4, 6, 8, 10):
            for parts in _profiles(total):
                G = complete_multipartite(parts)
                assert pm_count_tripartite(parts) == pm_count_bruteforce(G), parts

    def test_minimum_is_balanced_bipartite(self):
        # over all valid <= 3-part profiles of 2n vertices the matching
        # count is at least n!, with the balanced bipartite profile (n, n)
        # attaining it; the other minimisers are exactly the profiles with
        # a part of size n (every matching is then a bijection out of it)
        for total in (4, 6, 8, 10, 12):
            n = total // 2
            counts = {parts: pm_count_tripartite(parts) for parts in _profiles(total)}
            floor = math.factorial(n)
            assert all(c >= floor for c in counts.values())
            argmins = {parts for parts, c in counts.items() if c == floor}
            assert (n, n) in argmins
            assert argmins == {parts for parts in counts if max(parts) == n}

    def test_multipartite_graph_shape(self):
        G = complete_multipartite((2, 2, 2))
        assert G.n == 6
        assert G.edge_count == 12  # sum over part pairs of a_i * a_j
        assert pm_count_bruteforce(G) == 8
