import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from adcodes.codes import catalog
from adcodes.metrics import (
    codeword_count_estimate, fidelity_poly, optimal_t, rate,
)


class TestRate:
    def test_two_mode_distance_2_code(self):
        result = rate(catalog(1))
        assert result.k == 1.0
        assert abs(result.rate - 0.2153) < 5e-5

    def test_ten_word_code(self):
        result = rate(catalog(2))
        assert abs(result.rate - 0.2994) < 1e-3

    def test_single_word_code_has_zero_rate(self):
        from adcodes.codes import Code, Codeword
        code = Code((Codeword.uniform([(2, 2)]),), design_t=1)
        assert rate(code).rate == 0.0


def test_codeword_count_estimate():
    assert codeword_count_estimate(6, 3) == F(28, 3)
    # exact when n is coprime to m: every orbit then has full size m
    from adcodes.fock import orbits
    assert codeword_count_estimate(3, 3) < len(orbits(3, 3))
    assert codeword_count_estimate(5, 3) == len(orbits(5, 3))


class TestFidelity:
    def test_four_photon_one_loss(self):
        result = fidelity_poly(4, 1)
        assert result.coefficients() == [F(1), F(0), F(-6), F(8), F(-3)]
        assert result.leading_deficit == 6

    def test_leading_deficits(self):
        for n, t, deficit in [(4, 1, 6), (12, 1, 66), (9, 2, 84),
                              (16, 3, 1820), (50, 4, 2118760)]:
            assert fidelity_poly(n, t).leading_deficit == deficit

    def test_boundary_values(self):
        poly = fidelity_poly(9, 2).polynomial
        assert poly.eval_at(0) == 1
        assert poly.eval_at(1) == 0

    def test_domain(self):
        with pytest.raises(ValueError):
            fidelity_poly(4, 4)
        with pytest.raises(ValueError):
            fidelity_poly(4, -1)

    @given(st.integers(2, 30), st.data())
    def test_low_order_structure(self, n, data):
        t = data.draw(st.integers(0, min(n - 1, 4)))
        coeffs = fidelity_poly(n, t).coefficients()
        # flat through order t, then the deficit takes over
        assert coeffs[0] == 1
        assert all(c == 0 for c in coeffs[1:t + 1])
        assert coeffs[t + 1] == -math.comb(n, t + 1)

    @given(st.integers(2, 20), st.fractions(min_value=0, max_value=1,
                                            max_denominator=40))
    def test_is_a_probability(self, n, gamma):
        value = fidelity_poly(n, 1).polynomial.eval_at(gamma)
        assert 0 <= value <= 1

    def test_more_correction_never_hurts(self):
        g = F(1, 10)
        values = [fidelity_poly(9, t).polynomial.eval_at(g) for t in range(9)]
        assert values == sorted(values)


class TestOptimalT:
    def test_estimate_formula(self):
        result = optimal_t(gamma=0.01, f=1.0, alpha=2.0, l_o=1)
        expected = math.exp(-2.0) / 0.01
        assert result.t_opt == pytest.approx(expected)

    def test_neighbors_evaluate_fidelity(self):
        result = optimal_t(gamma=0.05, f=2.0, alpha=2.0, l_o=1)
        for t, (n_req, value) in result.neighbors.items():
            assert n_req == round(2.0 * t ** 2)
            assert 0 <= value <= 1

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            optimal_t(gamma=0.0, f=1.0, alpha=2.0, l_o=1)
        with pytest.raises(ValueError):
            optimal_t(gamma=0.1, f=1.0, alpha=1.0, l_o=1)
        with pytest.raises(ValueError):
            optimal_t(gamma=0.1, f=-1.0, alpha=2.0, l_o=1)
