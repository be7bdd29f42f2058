from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from adcodes.algebra import (
    FactorizationError, GammaPoly, Radical, format_poly, squarefree_decompose,
)


def sqrt(q):
    return Radical.sqrt_rational(q)


class TestSquarefree:
    def test_basic(self):
        assert squarefree_decompose(16) == (4, 1)
        assert squarefree_decompose(12) == (2, 3)
        assert squarefree_decompose(1) == (1, 1)
        assert squarefree_decompose(30) == (1, 30)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            squarefree_decompose(0)

    def test_factor_bound(self, monkeypatch):
        import adcodes.algebra as alg
        monkeypatch.setattr(alg, "FACTOR_BOUND", 10)
        p = 1009  # prime above the patched bound
        with pytest.raises(FactorizationError):
            squarefree_decompose(p * p * 13)


class TestRadical:
    def test_mul_collapses_to_integer(self):
        assert sqrt(2) * sqrt(8) == Radical.from_rational(4)

    def test_mul_halves(self):
        assert sqrt(F(1, 2)) * sqrt(F(1, 2)) == Radical.from_rational(F(1, 2))

    def test_difference_of_squares(self):
        assert (sqrt(2) + sqrt(3)) * (sqrt(2) - sqrt(3)) == Radical.from_rational(-1)

    def test_is_zero(self):
        assert (sqrt(2) - sqrt(2)).is_zero()
        assert not (sqrt(2) - sqrt(3)).is_zero()
        assert Radical().is_zero()

    def test_sqrt_roundtrip(self):
        assert sqrt(F(9, 4)).as_fraction() == F(3, 2)
        assert (sqrt(F(3, 7)) * sqrt(F(3, 7))).as_fraction() == F(3, 7)

    def test_division_single_kernel(self):
        assert sqrt(6) / sqrt(2) == sqrt(3)
        assert (sqrt(2) + sqrt(3)) / sqrt(2) == Radical.from_rational(1) + sqrt(F(3, 2))

    def test_irrational_refuses_fraction(self):
        with pytest.raises(ValueError):
            sqrt(2).as_fraction()


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
kernels = st.sampled_from([1, 2, 3, 5, 6, 7, 10])


@st.composite
def radicals(draw):
    n = draw(st.integers(1, 3))
    terms = {}
    for _ in range(n):
        terms[draw(kernels)] = draw(rationals)
    return Radical(terms)


class TestRadicalProperties:
    @given(radicals(), radicals(), radicals())
    def test_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @given(radicals(), radicals(), radicals())
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(radicals())
    def test_self_difference(self, x):
        assert (x - x).is_zero()

    @given(radicals())
    def test_canonicalization_idempotent(self, x):
        assert Radical(x.terms) == x


class TestGammaPoly:
    def test_expand_fidelity_shape(self):
        # (1-g)^4 + 4 g (1-g)^3, expected coefficients from a symbolic
        # binomial expansion done by hand
        p = GammaPoly.monomial(0, 8) + GammaPoly.monomial(2, 6, 4)
        assert p.expand() == [F(1), F(0), F(-6), F(8), F(-3)]

    def test_expand_trivial(self):
        assert GammaPoly.one().expand() == [F(1)]
        assert GammaPoly.monomial(4, 0).expand() == [F(0), F(0), F(1)]

    def test_expand_rejects_radicals(self):
        p = GammaPoly.constant(sqrt(2))
        with pytest.raises(ValueError):
            p.expand()

    def test_expand_rejects_half_powers(self):
        with pytest.raises(ValueError):
            GammaPoly.monomial(1, 0).expand()

    def test_eval(self):
        p = GammaPoly.from_coefficients([1, 0, -6, 8, -3])
        assert p.eval_at(0) == 1
        assert p.eval_at(F(1, 20)) == F(1577570, 1600000)
        assert (GammaPoly.monomial(2, 2)).eval_at(1) == 0

    def test_eval_domain(self):
        with pytest.raises(ValueError):
            GammaPoly.one().eval_at(F(3, 2))
        with pytest.raises(ValueError):
            GammaPoly.one().eval_at(-1)

    def test_monomial_vs_expanded_identity(self):
        # (1-g) as a monomial equals 1 - g in expanded form
        assert GammaPoly.monomial(0, 2) == GammaPoly.from_coefficients([1, -1])

    def test_half_power_zero_classes(self):
        # sqrt(g) and a plain constant cannot cancel
        p = GammaPoly.monomial(1, 0) - GammaPoly.one()
        assert not p.is_zero()
        assert (GammaPoly.monomial(1, 1) - GammaPoly.monomial(1, 1)).is_zero()

    @given(st.lists(rationals, min_size=0, max_size=5),
           st.fractions(min_value=0, max_value=1, max_denominator=30))
    def test_expand_consistent_with_eval(self, coeffs, gamma):
        p = GammaPoly.zero()
        for i, c in enumerate(coeffs):
            # alternate monomial bases to exercise the binomial expansion
            p = p + GammaPoly.monomial(2 * i, 2 * (i % 3), c)
        expanded = GammaPoly.from_coefficients(p.expand())
        assert expanded.eval_at(gamma) == p.eval_at(gamma)
        assert expanded == p


def test_format_poly():
    assert format_poly([F(1), F(0), F(-6), F(8), F(-3)]) == "1 - 6*g^2 + 8*g^3 - 3*g^4"
    assert format_poly([]) == "0"
