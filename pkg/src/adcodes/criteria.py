"""Error-correction conditions for damped bosonic codes.

Two exact conditions must hold for every loss pattern of weight up to t:
all damped codewords for distinct (codeword, pattern) pairs are mutually
orthogonal, and the damped squared norm is a pattern-only constant across
codewords.  The column-moment equalities and the pairwise-distance test are
the fast sufficient routes for the same conditions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import channel
from .algebra import GammaPoly
from .channel import ErrorPattern, pattern_weight, patterns_up_to
from .codes import Code
from .fock import distance


@dataclass(frozen=True)
class Violation:
    kind: str  # orthogonality | nondeformation | moment | distance | structural
    detail: str


@dataclass
class CriteriaReport:
    check: str
    passed: bool
    violations: list[Violation] = field(default_factory=list)
    not_applicable: bool = False
    reason: str = ""
    #: per-pattern common damped squared norm, when the check computes it
    g_values: dict[ErrorPattern, GammaPoly] = field(default_factory=dict)
    min_distance: Fraction | None = None


def _structural_report(check: str, code: Code) -> CriteriaReport | None:
    issues = code.structural_issues()
    blocking = [v for v in issues if "row sums differ" not in v]
    if blocking:
        return CriteriaReport(
            check, False, [Violation("structural", v) for v in blocking])
    return None


def _damped_family(code: Code, t: int):
    patterns = patterns_up_to(code.m, t)
    return [
        (l, pattern, channel.kraus_apply(cw.as_branch(), pattern))
        for l, cw in enumerate(code.codewords)
        for pattern in patterns
    ]


def check_orthogonality(code: Code, t: int) -> CriteriaReport:
    """All damped codewords for distinct (codeword, pattern) pairs orthogonal."""
    bad = _structural_report("orthogonality", code)
    if bad:
        return bad
    family = _damped_family(code, t)
    violations = []
    for (l1, k1, b1), (l2, k2, b2) in itertools.combinations(family, 2):
        if b1.support().isdisjoint(b2.support()):
            continue
        overlap = channel.inner(b1, b2)
        if not overlap.is_zero():
            violations.append(Violation(
                "orthogonality",
                f"<word {l1}|A({k1})+A({k2})|word {l2}> = {overlap}"))
    return CriteriaReport("orthogonality", not violations, violations)


def check_nondeformation(code: Code, t: int) -> CriteriaReport:
    """The damped squared norm g(pattern) is identical for every codeword."""
    bad = _structural_report("nondeformation", code)
    if bad:
        return bad
    violations = []
    g_values: dict[ErrorPattern, GammaPoly] = {}
    branches = [cw.as_branch() for cw in code.codewords]
    for pattern in patterns_up_to(code.m, t):
        norms = [channel.norm_sq(channel.kraus_apply(b, pattern)) for b in branches]
        g_values[pattern] = norms[0]
        for l, g in enumerate(norms[1:], start=1):
            if g != norms[0]:
                violations.append(Violation(
                    "nondeformation",
                    f"pattern {pattern}: word 0 gives {norms[0]}, "
                    f"word {l} gives {g}"))
    return CriteriaReport("nondeformation", not violations, violations,
                          g_values=g_values)


MomentTable = dict[int, dict[tuple[int, ...], Fraction]]


def moment_table(code: Code, t: int) -> MomentTable:
    """Weighted column moments sum_i mu_i * prod_{j in J} n_ij per codeword.

    Keyed by codeword index, then by the column multiset J (|J| = 1..t,
    nondecreasing tuple of zero-based columns); the empty multiset maps to the
    weight sum by the normalization convention.
    """
    table: MomentTable = {}
    for l, cw in enumerate(code.codewords):
        entry: dict[tuple[int, ...], Fraction] = {(): cw.weight_sum()}
        for size in range(1, t + 1):
            for cols in itertools.combinations_with_replacement(range(code.m), size):
                total = Fraction(0)
                for r in cw.rows:
                    prod = r.weight
                    for j in cols:
                        prod *= r.qcs[j]
                    total += prod
                entry[cols] = total
        table[l] = entry
    return table


def check_moments(code: Code, t: int) -> CriteriaReport:
    """Sufficient condition: column moments up to order t equal across codewords.

    Only applies when every QCS in every codeword has the same total photon
    number; otherwise the report is marked not_applicable.
    """
    bad = _structural_report("moments", code)
    if bad:
        return bad
    if not code.has_equal_row_sums():
        return CriteriaReport("moments", False, not_applicable=True,
                              reason="row sums differ; moment condition does not apply")
    table = moment_table(code, t)
    violations = []
    base = table[0]
    for l in range(1, len(code.codewords)):
        for cols, value in table[l].items():
            if value != base[cols]:
                violations.append(Violation(
                    "moment",
                    f"columns {cols}: word 0 gives {base[cols]}, word {l} gives {value}"))
    return CriteriaReport("moments", not violations, violations)


def theorem2_check(code: Code, t: int) -> CriteriaReport:
    """Distance route: min cross-codeword QCS distance > t implies orthogonality.

    Valid only for nonnegative amplitudes, where zero overlap after up to t
    losses is equivalent to the distance bound.
    """
    bad = _structural_report("distance", code)
    if bad:
        return bad
    if any(r.sign < 0 for cw in code.codewords for r in cw.rows):
        return CriteriaReport("distance", False, not_applicable=True,
                              reason="signed amplitudes; distance test does not apply")
    violations = []
    best: Fraction | None = None
    for (l1, a), (l2, b) in itertools.combinations(enumerate(code.codewords), 2):
        for u in a.support():
            for v in b.support():
                dd = distance(u, v)
                if best is None or dd < best:
                    best = dd
                if dd <= t:
                    violations.append(Violation(
                        "distance",
                        f"D({u}, {v}) = {dd} <= t = {t} "
                        f"(words {l1}, {l2})"))
    return CriteriaReport("distance", not violations, violations,
                          min_distance=best)


def verify(code: Code, t: int) -> dict[str, CriteriaReport]:
    """Run every criterion; the two exact checks decide correctability."""
    return {
        "orthogonality": check_orthogonality(code, t),
        "nondeformation": check_nondeformation(code, t),
        "moments": check_moments(code, t),
        "distance": theorem2_check(code, t),
    }


def passes(code: Code, t: int) -> bool:
    reports = verify(code, t)
    return reports["orthogonality"].passed and reports["nondeformation"].passed


def verify_numeric(code: Code, t: int, gamma: float,
                   tol: float = 1e-12) -> dict[str, CriteriaReport]:
    """Floating-point cross-check of the two exact conditions at one gamma.

    Exists to sanity-check the exact engine; never the source of truth.
    """
    reports = {}
    bad = _structural_report("orthogonality", code)
    if bad:
        return {"orthogonality": bad,
                "nondeformation": _structural_report("nondeformation", code)}
    family = _damped_family(code, t)
    violations = []
    for (l1, k1, b1), (l2, k2, b2) in itertools.combinations(family, 2):
        value = channel.inner(b1, b2).eval_float(gamma)
        if abs(value) > tol:
            violations.append(Violation(
                "orthogonality",
                f"<word {l1}|A({k1})+A({k2})|word {l2}> = {value:.3e} at gamma={gamma}"))
    reports["orthogonality"] = CriteriaReport(
        "orthogonality", not violations, violations)
    violations = []
    branches = [cw.as_branch() for cw in code.codewords]
    for pattern in patterns_up_to(code.m, t):
        norms = [channel.norm_sq(channel.kraus_apply(b, pattern)).eval_float(gamma)
                 for b in branches]
        for l, g in enumerate(norms[1:], start=1):
            if abs(g - norms[0]) > tol:
                violations.append(Violation(
                    "nondeformation",
                    f"pattern {pattern}: {norms[0]:.6e} vs {g:.6e} (word {l})"))
    reports["nondeformation"] = CriteriaReport(
        "nondeformation", not violations, violations)
    return reports


def binomial_row_identity(qcs: tuple[int, ...], s: int) -> bool:
    """sum over weight-s patterns of prod_j C(n_j, k_j) == C(row sum, s)."""
    total = 0
    for pattern in channel.enumerate_error_patterns(len(qcs), s):
        prod = 1
        for n, k in zip(qcs, pattern):
            prod *= math.comb(n, k)
        total += prod
    return total == math.comb(sum(qcs), s)
