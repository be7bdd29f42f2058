import math
from fractions import Fraction as F

import pytest

from adcodes.algebra import Radical
from adcodes.codes import Code, Codeword, catalog
from adcodes.channel import norm_sq
from adcodes.metrics import fidelity_poly
from adcodes.simulate import (
    RecoveryError, branch_distribution, build_recovery, encode,
    exact_success_probability, run_monte_carlo,
)

EQUAL = [(F(1, 2), 1), (F(1, 2), 1)]


class TestRecovery:
    def test_syndrome_count(self):
        recovery = build_recovery(catalog(1), 1)
        assert set(recovery.patterns()) == {(0, 0), (1, 0), (0, 1)}
        assert set(recovery.g_values) == set(recovery.syndromes)

    def test_three_mode_syndromes(self):
        recovery = build_recovery(catalog(4), 2)
        assert len(recovery.patterns()) == 1 + 3 + 6

    def test_refuses_broken_code(self):
        bad = Code((Codeword.uniform([(1, 1)]), Codeword.uniform([(2, 2)])),
                   design_t=1)
        with pytest.raises(RecoveryError, match="violated"):
            build_recovery(bad, 1)


class TestExactSuccess:
    def test_matches_closed_form(self):
        # the per-code damped norms and the binomial polynomial are computed
        # by different routes; they must agree at any gamma
        for i, t in [(1, 1), (4, 2), (7, 2), (9, 3)]:
            code = catalog(i)
            g = F(1, 20)
            expected = fidelity_poly(code.total_photons, t).polynomial.eval_at(g)
            assert exact_success_probability(code, t, g) == expected

    def test_known_value(self):
        assert exact_success_probability(catalog(1), 1, F(1, 20)) == \
            F(157757, 160000)

    def test_edge_gammas(self):
        assert exact_success_probability(catalog(1), 1, 0) == 1
        assert exact_success_probability(catalog(1), 1, 1) == 0


class TestEncode:
    def test_normalized(self):
        from adcodes.algebra import GammaPoly
        state = encode(catalog(1), EQUAL)
        assert norm_sq(state) == GammaPoly.one()

    def test_rejects_unnormalized_weights(self):
        with pytest.raises(ValueError):
            encode(catalog(1), [(F(1, 2), 1), (F(1, 3), 1)])
        with pytest.raises(ValueError):
            encode(catalog(1), [(F(1), 1)])

    def test_signs_enter_amplitudes(self):
        plus = encode(catalog(1), [(F(1, 2), 1), (F(1, 2), 1)])
        minus = encode(catalog(1), [(F(1, 2), 1), (F(1, 2), -1)])
        assert plus.terms[(2, 2)] == -minus.terms[(2, 2)]


class TestBranchDistribution:
    def test_probabilities_sum_to_one(self):
        dist = branch_distribution(catalog(1), EQUAL, F(1, 10))
        total = Radical()
        for _, prob in dist:
            total = total + prob
        assert total.as_fraction() == 1

    def test_correctable_mass_is_input_independent(self):
        g = F(1, 10)
        expected = exact_success_probability(catalog(1), 1, g)
        for weights in ([(F(1), 1), (F(0), 1)], EQUAL,
                        [(F(1, 3), 1), (F(2, 3), -1)]):
            dist = branch_distribution(catalog(1), weights, g)
            mass = Radical()
            for pattern, prob in dist:
                if sum(pattern) <= 1:
                    mass = mass + prob
            assert mass.as_fraction() == expected, weights

    def test_ordered_by_weight(self):
        dist = branch_distribution(catalog(1), EQUAL, F(1, 10))
        weights = [sum(p) for p, _ in dist]
        assert weights == sorted(weights)


class TestMonteCarlo:
    def test_reproducible(self):
        a = run_monte_carlo(catalog(1), 1, EQUAL, F(1, 20), 50_000, seed=42)
        b = run_monte_carlo(catalog(1), 1, EQUAL, F(1, 20), 50_000, seed=42)
        assert a == b

    def test_seed_changes_draws(self):
        a = run_monte_carlo(catalog(1), 1, EQUAL, F(1, 20), 50_000, seed=1)
        b = run_monte_carlo(catalog(1), 1, EQUAL, F(1, 20), 50_000, seed=2)
        assert a.successes != b.successes

    def test_estimate_near_exact(self):
        result = run_monte_carlo(catalog(1), 1, EQUAL, F(1, 20), 200_000, seed=7)
        exact = float(result.exact_fidelity)
        sigma = math.sqrt(exact * (1 - exact) / result.shots)
        assert abs(result.estimated_fidelity - exact) < 4 * sigma

    def test_counts_account_for_every_shot(self):
        result = run_monte_carlo(catalog(1), 1, EQUAL, F(1, 20), 10_000, seed=3)
        assert sum(result.pattern_counts.values()) == result.shots

    def test_no_damping_always_succeeds(self):
        result = run_monte_carlo(catalog(1), 1, EQUAL, F(0), 1_000, seed=0)
        assert result.successes == 1_000
        assert result.exact_fidelity == 1

    def test_confidence_band_across_seeds(self):
        # estimator calibration: at a 99% band, at most a few of 30
        # independent seeds may fall outside
        g = F(1, 20)
        shots = 20_000
        exact = float(exact_success_probability(catalog(1), 1, g))
        sigma = math.sqrt(exact * (1 - exact) / shots)
        inside = 0
        for seed in range(30):
            r = run_monte_carlo(catalog(1), 1, EQUAL, g, shots, seed)
            if abs(r.estimated_fidelity - exact) <= 2.576 * sigma:
                inside += 1
        assert inside >= 27
