"""The amplitude-damping channel on multimode photon-number states.

Losing k photons from a mode holding n maps |n> to |n-k> with amplitude
sqrt(C(n,k)) * gamma^(k/2) * (1-gamma)^((n-k)/2).  A multimode error pattern
applies one such effect per mode; the damped state is a tensor sum of one
unnormalized pure branch per pattern, whose squared norm is its probability.

Half-integer powers of gamma and (1-gamma) ride on the amplitudes as doubled
integer exponents inside GammaPoly, so every computation stays exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .algebra import GammaPoly, Radical
from .fock import OccupationVector, row_sum

ErrorPattern = tuple[int, ...]


def pattern_weight(pattern: ErrorPattern) -> int:
    return sum(pattern)


def enumerate_error_patterns(m: int, s: int) -> list[ErrorPattern]:
    """All m-mode loss patterns of total weight exactly s, lexicographic."""
    if s < 0 or m < 1:
        raise ValueError(f"need s >= 0 and m >= 1, got ({m}, {s})")
    from .fock import iter_qcs

    return list(iter_qcs(s, m))


def patterns_up_to(m: int, t: int) -> list[ErrorPattern]:
    """Union of K(s) for s = 0..t, ordered by weight then lexicographically."""
    out: list[ErrorPattern] = []
    for s in range(t + 1):
        out.extend(enumerate_error_patterns(m, s))
    return out


class PureBranch:
    """An unnormalized pure state: amplitude per occupation vector.

    Amplitudes are GammaPoly values (usually a single monomial carrying the
    half-powers of gamma and (1-gamma) picked up from the Kraus effects).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[OccupationVector, GammaPoly] | None = None):
        self._terms = {
            q: a for q, a in (terms or {}).items() if not a.is_zero()
        }

    @classmethod
    def from_amplitudes(cls, amps: Mapping[OccupationVector, Radical]) -> "PureBranch":
        return cls({q: GammaPoly.constant(a) for q, a in amps.items()})

    @property
    def terms(self) -> dict[OccupationVector, GammaPoly]:
        return dict(self._terms)

    def is_empty(self) -> bool:
        return not self._terms

    def support(self) -> frozenset[OccupationVector]:
        return frozenset(self._terms)

    def modes(self) -> int:
        for q in self._terms:
            return len(q)
        return 0

    def scaled(self, factor: Radical | GammaPoly) -> "PureBranch":
        if isinstance(factor, Radical):
            factor = GammaPoly.constant(factor)
        return PureBranch({q: a * factor for q, a in self._terms.items()})

    def __add__(self, other: "PureBranch") -> "PureBranch":
        out = dict(self._terms)
        for q, a in other._terms.items():
            out[q] = out[q] + a if q in out else a
        return PureBranch(out)

    def __repr__(self):
        inner = " + ".join(f"({a})|{''.join(map(str, q)) if all(n < 10 for n in q) else q}>"
                           for q, a in self._terms.items())
        return inner or "0"


def inner(left: PureBranch, right: PureBranch) -> GammaPoly:
    """Exact inner product; amplitudes are real, so no conjugation is needed."""
    total = GammaPoly.zero()
    small, big = (left, right) if len(left._terms) <= len(right._terms) else (right, left)
    for q, a in small._terms.items():
        b = big._terms.get(q)
        if b is not None:
            total = total + a * b
    return total


def norm_sq(branch: PureBranch) -> GammaPoly:
    return inner(branch, branch)


def kraus_apply(state: PureBranch, pattern: ErrorPattern) -> PureBranch:
    """Apply the loss pattern to each component of a pure state.

    |n1..nm> maps to |n1-k1 .. nm-km> with amplitude multiplied by
    prod_j sqrt(C(nj, kj)) * gamma^(s/2) * (1-gamma)^((RS-s)/2); components
    with any kj > nj vanish and the branch may come out empty.
    """
    import math

    s = pattern_weight(pattern)
    out: dict[OccupationVector, GammaPoly] = {}
    for q, amp in state._terms.items():
        if len(q) != len(pattern):
            raise ValueError(f"pattern length {len(pattern)} != mode count {len(q)}")
        if any(k > n for n, k in zip(q, pattern)):
            continue
        comb = 1
        for n, k in zip(q, pattern):
            comb *= math.comb(n, k)
        factor = GammaPoly.monomial(s, row_sum(q) - s, Radical.sqrt_rational(comb))
        new_q = tuple(n - k for n, k in zip(q, pattern))
        term = amp * factor
        out[new_q] = out[new_q] + term if new_q in out else term
    return PureBranch(out)


@dataclass
class MergedBranch:
    """A group of error patterns whose branches were combined into one state."""

    patterns: tuple[ErrorPattern, ...]
    branch: PureBranch


@dataclass
class MixedState:
    """Tensor sum of pure branches, one per error pattern."""

    branches: dict[ErrorPattern, PureBranch] = field(default_factory=dict)

    def total_norm_sq(self) -> GammaPoly:
        total = GammaPoly.zero()
        for branch in self.branches.values():
            total = total + norm_sq(branch)
        return total

    def merged(self) -> list[MergedBranch]:
        """Combine proportional branches with identical support.

        Two branches a[psi> and b[psi> merge to sqrt(|a|^2+|b|^2)[psi>; the
        proportionality test is exact via single-kernel Radical ratios and is
        only attempted when it stays within the representable amplitudes.
        """
        groups: list[MergedBranch] = []
        for pattern in sorted(self.branches, key=lambda p: (pattern_weight(p), p)):
            branch = self.branches[pattern]
            for i, group in enumerate(groups):
                lam = _proportionality_ratio(group.branch, branch)
                if lam is None:
                    continue
                blowup = (1 + lam * lam).sqrt()  # rational under the ratio test
                groups[i] = MergedBranch(
                    group.patterns + (pattern,), group.branch.scaled(blowup)
                )
                break
            else:
                groups.append(MergedBranch((pattern,), branch))
        return groups


def _proportionality_ratio(base: PureBranch, other: PureBranch) -> Radical | None:
    """Return lambda with other = lambda * base, or None if not detectable.

    Requires identical supports, matching gamma exponents, and single-kernel
    coefficients so that lambda is a constant Radical with rational square.
    """
    if base.support() != other.support() or base.is_empty():
        return None
    lam: Radical | None = None
    for q, amp_base in base._terms.items():
        amp_other = other._terms[q]
        mb, mo = amp_base.monomials, amp_other.monomials
        if len(mb) != 1 or len(mo) != 1:
            return None
        (key_b, coeff_b), = mb.items()
        (key_o, coeff_o), = mo.items()
        if key_b != key_o:
            return None
        if len(coeff_b.terms) != 1 or len(coeff_o.terms) != 1:
            return None
        ratio = coeff_o / coeff_b
        if not (ratio * ratio).is_rational():
            return None
        if lam is None:
            lam = ratio
        elif lam != ratio:
            return None
    return lam


def damp(state: PureBranch, max_loss: int | None = None) -> MixedState:
    """Damp a pure state, producing one branch per error pattern.

    Patterns are enumerated within the per-mode occupancy box (anything
    outside annihilates every component).  max_loss truncates to patterns of
    total weight <= max_loss; None keeps every non-vanishing pattern, in which
    case the branch squared norms sum to 1 exactly for a normalized input.
    """
    if state.is_empty():
        return MixedState({})
    m = state.modes()
    caps = [0] * m
    for q in state._terms:
        for j, n in enumerate(q):
            caps[j] = max(caps[j], n)
    branches: dict[ErrorPattern, PureBranch] = {}
    for pattern in itertools.product(*(range(c + 1) for c in caps)):
        if max_loss is not None and pattern_weight(pattern) > max_loss:
            continue
        branch = kraus_apply(state, pattern)
        if not branch.is_empty():
            branches[pattern] = branch
    return MixedState(branches)


def superposition(parts: Iterable[tuple[Radical, PureBranch]]) -> PureBranch:
    """Linear combination sum_i coeff_i * branch_i."""
    total = PureBranch({})
    for coeff, branch in parts:
        total = total + branch.scaled(coeff)
    return total
