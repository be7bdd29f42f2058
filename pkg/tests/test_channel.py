import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from adcodes.algebra import GammaPoly, Radical
from adcodes.channel import (
    PureBranch, damp, enumerate_error_patterns, inner, kraus_apply, norm_sq,
    pattern_weight, patterns_up_to, superposition,
)
from adcodes.codes import catalog


def sqrt(q):
    return Radical.sqrt_rational(q)


def pure(*amps):
    return PureBranch.from_amplitudes(dict(amps))


class TestPatterns:
    def test_enumerate(self):
        assert enumerate_error_patterns(2, 0) == [(0, 0)]
        assert set(enumerate_error_patterns(2, 1)) == {(1, 0), (0, 1)}
        assert len(enumerate_error_patterns(3, 2)) == 6
        assert all(pattern_weight(p) == 2 for p in enumerate_error_patterns(3, 2))

    def test_patterns_up_to(self):
        ps = patterns_up_to(2, 2)
        assert len(ps) == 1 + 2 + 3
        assert ps[0] == (0, 0)


class TestKraus:
    def test_single_mode_amplitude(self):
        # one loss from |n>: amplitude sqrt(n) g^(1/2) (1-g)^((n-1)/2)
        b = kraus_apply(pure(((4,), Radical.from_rational(1))), (1,))
        assert b.terms == {(3,): GammaPoly.monomial(1, 3, sqrt(4))}

    def test_two_losses(self):
        b = kraus_apply(pure(((4,), Radical.from_rational(1))), (2,))
        assert b.terms == {(2,): GammaPoly.monomial(2, 2, sqrt(6))}

    def test_overdraw_vanishes(self):
        b = kraus_apply(pure(((1, 0), Radical.from_rational(1))), (0, 1))
        assert b.is_empty()

    def test_multimode_factorizes(self):
        b = kraus_apply(pure(((2, 2), Radical.from_rational(1))), (1, 1))
        assert b.terms == {(1, 1): GammaPoly.monomial(2, 2, sqrt(4))}

    def test_no_loss_norm(self):
        b = kraus_apply(pure(((2, 2), Radical.from_rational(1))), (0, 0))
        assert norm_sq(b) == GammaPoly.monomial(0, 8)

    def test_mode_count_mismatch(self):
        with pytest.raises(ValueError):
            kraus_apply(pure(((2, 2), Radical.from_rational(1))), (1,))


class TestInner:
    def test_orthogonal_supports(self):
        a = pure(((4, 0), Radical.from_rational(1)))
        b = pure(((2, 2), Radical.from_rational(1)))
        assert inner(a, b).is_zero()

    def test_damped_codeword_overlap_cancels(self):
        # the one-loss images of the two-codeword dual-rail-like words stay
        # orthogonal only through an exact radical cancellation
        code = catalog(1)
        w0 = code.codewords[0].as_branch()
        w1 = code.codewords[1].as_branch()
        for pattern in patterns_up_to(2, 1):
            assert inner(kraus_apply(w0, pattern),
                         kraus_apply(w1, pattern)).is_zero()

    def test_norm_of_uniform_word(self):
        w = catalog(1).codewords[0].as_branch()
        assert norm_sq(w) == GammaPoly.one()


class TestDampCompleteness:
    def test_fock_state(self):
        mixed = damp(pure(((3,), Radical.from_rational(1))))
        assert len(mixed.branches) == 4
        assert mixed.total_norm_sq() == GammaPoly.one()

    def test_codeword(self):
        mixed = damp(catalog(4).codewords[0].as_branch())
        assert mixed.total_norm_sq() == GammaPoly.one()

    def test_max_loss_truncates(self):
        mixed = damp(pure(((3,), Radical.from_rational(1))), max_loss=1)
        assert set(mixed.branches) == {(0,), (1,)}

    @settings(max_examples=25, deadline=None)
    @given(st.data())
    def test_random_states(self, data):
        m = data.draw(st.integers(1, 3))
        k = data.draw(st.integers(1, 3))
        support = data.draw(st.lists(
            st.tuples(*[st.integers(0, 4)] * m), min_size=k, max_size=k,
            unique=True))
        raw = data.draw(st.lists(st.integers(1, 9), min_size=len(support),
                                 max_size=len(support)))
        total = sum(raw)
        amps = {q: sqrt(F(w, total)) * (1 if i % 2 else -1)
                for i, (q, w) in enumerate(zip(support, raw))}
        state = PureBranch.from_amplitudes(amps)
        assert norm_sq(state) == GammaPoly.one()
        assert damp(state).total_norm_sq() == GammaPoly.one()


class TestMerging:
    def test_proportional_branches_combine(self):
        # for (|01> + |10>)/sqrt2 both single-loss branches land on |00>
        # with equal amplitude, so they merge into one branch scaled sqrt2
        state = pure(((0, 1), sqrt(F(1, 2))), ((1, 0), sqrt(F(1, 2))))
        mixed = damp(state)
        merged = mixed.merged()
        groups = {g.patterns for g in merged}
        assert ((1, 0), (0, 1)) in groups or ((0, 1), (1, 0)) in groups
        # merging preserves the total squared norm
        total = GammaPoly.zero()
        for g in merged:
            total = total + norm_sq(g.branch)
        assert total == mixed.total_norm_sq()

    def test_distinct_branches_stay_apart(self):
        state = catalog(1).codewords[0].as_branch()
        mixed = damp(state, max_loss=1)
        merged = mixed.merged()
        assert all(len(g.patterns) == 1 for g in merged)


def test_superposition():
    code = catalog(1)
    state = superposition([
        (sqrt(F(1, 2)), code.codewords[0].as_branch()),
        (sqrt(F(1, 2)), code.codewords[1].as_branch()),
    ])
    assert norm_sq(state) == GammaPoly.one()


def test_branch_count_bounded_by_occupancy_box():
    state = catalog(3).codewords[0].as_branch()
    mixed = damp(state)
    assert len(mixed.branches) <= 7 ** 3
    rng = random.Random(7)
    gamma = F(rng.randint(1, 9), 10)
    assert mixed.total_norm_sq().eval_at(gamma) == 1
