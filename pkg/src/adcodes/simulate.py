"""Channel-plus-recovery simulation.

Once a code passes both correction conditions at t, every loss pattern of
weight at most t is a detectable syndrome with a codeword-independent branch
probability, and the syndrome-conditioned unitary restores the encoded
superposition exactly.  Success of a shot therefore reduces to whether the
realized pattern has weight <= t, which keeps the simulator fully exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import channel, criteria
from .algebra import GammaPoly, Radical
from .channel import ErrorPattern, PureBranch, pattern_weight
from .codes import Code


class RecoveryError(ValueError):
    """The code fails a correction condition; recovery cannot be built."""


@dataclass
class RecoveryMap:
    code: Code
    t: int
    #: pattern -> damped (unnormalized) codeword branches, in codeword order
    syndromes: dict[ErrorPattern, list[PureBranch]]
    #: pattern -> common squared norm of every damped codeword
    g_values: dict[ErrorPattern, GammaPoly]

    def patterns(self) -> list[ErrorPattern]:
        return list(self.syndromes)


def build_recovery(code: Code, t: int) -> RecoveryMap:
    """Syndrome table over all patterns of weight <= t; exact precondition check."""
    ortho = criteria.check_orthogonality(code, t)
    nondef = criteria.check_nondeformation(code, t)
    for report in (ortho, nondef):
        if not report.passed:
            witness = report.violations[0].detail if report.violations else report.reason
            raise RecoveryError(f"{report.check} violated: {witness}")
    syndromes = {
        pattern: [channel.kraus_apply(cw.as_branch(), pattern)
                  for cw in code.codewords]
        for pattern in channel.patterns_up_to(code.m, t)
    }
    return RecoveryMap(code, t, syndromes, nondef.g_values)


def exact_success_probability(code: Code, t: int, gamma) -> Fraction:
    """Probability that the realized loss pattern is correctable.

    Computed from the code's own damped norms (not the closed-form binomial
    polynomial), so it doubles as an independent cross-check of that formula.
    Independent of the encoded superposition by the norm-equality condition.
    """
    recovery = build_recovery(code, t)
    total = GammaPoly.zero()
    for g in recovery.g_values.values():
        total = total + g
    return total.eval_at(Fraction(gamma))


def encode(code: Code, weights: list[tuple[Fraction, int]]) -> PureBranch:
    """Encoded state sum_l sign_l * sqrt(w_l) |word_l> from squared weights."""
    if len(weights) != len(code.codewords):
        raise ValueError(
            f"{len(weights)} coefficients for {len(code.codewords)} codewords")
    total = sum((Fraction(w) for w, _ in weights), Fraction(0))
    if total != 1:
        raise ValueError(f"squared input coefficients sum to {total}, not 1")
    parts = []
    for (w, sign), cw in zip(weights, code.codewords):
        if w == 0:
            continue
        amp = Radical.sqrt_rational(w)
        if sign < 0:
            amp = -amp
        parts.append((amp, cw.as_branch()))
    return channel.superposition(parts)


@dataclass
class SimulationResult:
    shots: int
    successes: int
    estimated_fidelity: float
    exact_fidelity: Fraction
    seed: int
    gamma: Fraction
    #: realized shot counts per error pattern, correctable syndromes first
    pattern_counts: dict[ErrorPattern, int] = field(default_factory=dict)


def branch_distribution(code: Code, weights: list[tuple[Fraction, int]],
                        gamma: Fraction) -> list[tuple[ErrorPattern, Radical]]:
    """Exact per-pattern probabilities for the encoded input, weight-ordered."""
    mixed = channel.damp(encode(code, weights))
    out = []
    for pattern in sorted(mixed.branches, key=lambda p: (pattern_weight(p), p)):
        prob = channel.norm_sq(mixed.branches[pattern]).eval_radical(gamma)
        out.append((pattern, prob))
    return out


def run_monte_carlo(code: Code, t: int, weights: list[tuple[Fraction, int]],
                    gamma, shots: int, seed: int) -> SimulationResult:
    """Sample error patterns from the exact branch distribution.

    Per-shot randomness comes from a counter-based generator keyed by the
    seed, so shot i sees the i-th counter output regardless of batching; a
    fixed (seed, shots) pair is bit-reproducible.  A shot succeeds iff its
    pattern has weight <= t; heavier patterns count as failures even if they
    happen to land back inside the code space.
    """
    gamma = Fraction(gamma)
    exact = exact_success_probability(code, t, gamma)
    # drop patterns of exactly zero probability (e.g. every loss at gamma=0)
    # so the cumulative thresholds are strictly increasing
    dist = [(p, prob) for p, prob in branch_distribution(code, weights, gamma)
            if not prob.is_zero()]

    # cumulative thresholds on the 64-bit lattice; exact when the cumulative
    # probabilities are rational, float-rounded (error < 1e-15) otherwise
    cumulative = Radical()
    thresholds = []
    n_correctable = sum(1 for p, _ in dist if pattern_weight(p) <= t)
    for _, prob in dist:
        cumulative = cumulative + prob
        if cumulative.is_rational():
            c = cumulative.as_fraction()
            thresholds.append((c.numerator << 64) // c.denominator)
        else:
            thresholds.append(min(2**64 - 1, int(float(cumulative) * 2.0**64)))
    thresholds[-1] = 2**64  # the distribution sums to 1 exactly

    rng = np.random.Generator(np.random.Philox(key=seed))
    draws = rng.integers(0, 2**64, size=shots, dtype=np.uint64)
    # the final edge is 2**64 (out of uint64 range); every draw falls below it
    idx = np.searchsorted(np.array(thresholds[:-1], dtype=np.uint64),
                          draws, side="right")
    counts = np.bincount(idx, minlength=len(dist))
    pattern_counts = {p: int(c) for (p, _), c in zip(dist, counts)}
    successes = int(counts[:n_correctable].sum())

    return SimulationResult(
        shots=shots,
        successes=successes,
        estimated_fidelity=successes / shots if shots else float("nan"),
        exact_fidelity=exact,
        seed=seed,
        gamma=gamma,
        pattern_counts=pattern_counts,
    )
