"""Rate and fidelity figures of merit.

For any code meeting both correction conditions at t, the post-correction
fidelity depends only on the total photon number and t:
F(g) = sum_{s=0..t} C(N,s) g^s (1-g)^(N-s) = 1 - C(N,t+1) g^(t+1) + O(g^(t+2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import GammaPoly
from .codes import Code
from .fock import partition_count


@dataclass(frozen=True)
class RateResult:
    k: float
    denominator: float
    rate: float


def rate(code: Code) -> RateResult:
    """Encoded qubits per qubit-equivalent of the bosonic Hilbert space."""
    k = math.log2(len(code.codewords))
    denominator = code.m * math.log2(code.total_photons + 1)
    return RateResult(k, denominator, k / denominator)


def codeword_count_estimate(n: int, m: int) -> Fraction:
    """Approximate orbit count P(n, m)/m; exact when n is coprime to m."""
    return Fraction(partition_count(n, m), m)


@dataclass(frozen=True)
class FidelityResult:
    polynomial: GammaPoly
    leading_deficit: int
    total_photons: int
    t: int

    def coefficients(self) -> list[Fraction]:
        return self.polynomial.expand()


def fidelity_poly(total_photons: int, t: int) -> FidelityResult:
    """Probability that at most t photons are lost from N, exactly in gamma.

    The no-loss branch is included: the sum runs over s = 0..t, which is what
    makes F(0) = 1 and the leading deficit equal C(N, t+1).
    """
    if not 0 <= t < total_photons:
        raise ValueError(f"need 0 <= t < N, got t={t}, N={total_photons}")
    poly = GammaPoly.zero()
    for s in range(t + 1):
        poly = poly + GammaPoly.monomial(2 * s, 2 * (total_photons - s),
                                         math.comb(total_photons, s))
    return FidelityResult(poly, math.comb(total_photons, t + 1), total_photons, t)


@dataclass(frozen=True)
class OptimalTResult:
    t_opt: float
    #: integer t near the optimum -> (N used, fidelity at the given gamma)
    neighbors: dict[int, tuple[int, float]]


def optimal_t(gamma: float, f: float, alpha: float, l_o: int) -> OptimalTResult:
    """Closed-form estimate of the loss count maximizing fidelity.

    Assumes the required photon number scales as N ~ f * l_o * t**alpha; the
    estimate is (e^-alpha / (gamma f l_o))^(1/(alpha-1)).  Neighboring integer
    t values are evaluated through the exact fidelity polynomial.
    """
    if not 0 < gamma < 1:
        raise ValueError(f"gamma must be in (0, 1), got {gamma}")
    if f <= 0 or l_o < 1:
        raise ValueError(f"need f > 0 and l_o >= 1, got ({f}, {l_o})")
    if alpha <= 1:
        raise ValueError(f"need alpha > 1, got {alpha}")
    t_opt = (math.exp(-alpha) / (gamma * f * l_o)) ** (1.0 / (alpha - 1.0))
    neighbors: dict[int, tuple[int, float]] = {}
    for t in {max(1, math.floor(t_opt)), max(1, math.ceil(t_opt))}:
        n_req = round(f * l_o * t**alpha)
        if n_req > t:
            value = fidelity_poly(n_req, t).polynomial.eval_float(gamma)
            neighbors[t] = (n_req, value)
    return OptimalTResult(t_opt, neighbors)
