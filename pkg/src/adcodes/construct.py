"""Code construction: cyclic-orbit families, reversal pairs, weight solving.

Balanced codes correcting one loss come from equal-weight superpositions over
the cyclic-shift orbits of Q(n, m) with occupations scaled by d; two-loss
codes pair the orbit of a tuple with the orbit of its reversal.  For general
supports, the weights are solved exactly from the moment-equality equations.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .codes import Code, Codeword, Row
from .fock import OccupationVector, cyclic_orbit, distance, orbits, partition_count, scale


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitCodeFamily:
    n: int
    m: int
    d: int
    code: Code

    @property
    def codewords(self):
        return self.code.codewords


def build_t1_family(n: int, m: int, d: int) -> OrbitCodeFamily:
    """One equal-weight codeword per cyclic orbit of Q(n, m), scaled by d.

    Every row sums to n*d, and each column mean is d*n/m in every codeword,
    so the family meets the single-loss moment condition; distances between
    distinct scaled QCS are multiples of d, covering losses up to d-1.
    """
    if n < 0 or m < 1:
        raise ConstructionError(f"need n >= 0 and m >= 1, got ({n}, {m})")
    if d < 2:
        raise ConstructionError(f"need d >= 2 for a t=1 family, got d={d}")
    words = tuple(
        Codeword.uniform([scale(x, d) for x in orbit])
        for orbit in orbits(n, m)
    )
    code = Code(words, design_t=1, name=f"t1-n{n}-m{m}-d{d}")
    return OrbitCodeFamily(n, m, d, code)


def build_t2_pair(x: OccupationVector, d: int) -> Code:
    """Pair the scaled cyclic orbit of x with the orbit of its reversal.

    Valid for more than two modes; d >= 3 gives the two-loss distance
    guarantee, smaller d is admitted with a downgrade warning (the code then
    only separates codewords up to d-1 losses).
    """
    x = tuple(x)
    if len(x) <= 2:
        raise ConstructionError(f"need more than 2 modes, got {len(x)}")
    if d < 1:
        raise ConstructionError(f"need d >= 1, got d={d}")
    if d < 3:
        warnings.warn(
            f"d={d} < 3: the pair only guarantees orthogonality for t <= {d - 1}",
            stacklevel=2)
    rev = x[::-1]
    forward = cyclic_orbit(x)
    if rev in forward:
        raise ConstructionError(
            f"{x} is palindromic under cyclic shifts; the reversal orbit collides")
    backward = cyclic_orbit(rev)
    words = (
        Codeword.uniform([scale(y, d) for y in forward]),
        Codeword.uniform([scale(y, d) for y in backward]),
    )
    label = "".join(map(str, x)) if all(v < 10 for v in x) else str(x)
    return Code(words, design_t=2, name=f"t2-x{label}-d{d}")


# ---------------------------------------------------------------------------
# exact weight solving


@dataclass
class WeightSolveResult:
    status: str  # solved | infeasible | underdetermined_resolved
    weights: list[list[Fraction]] = field(default_factory=list)
    residual_constraints: int = 0
    message: str = ""
    warnings: list[str] = field(default_factory=list)

    def as_code(self, supports: list[list[OccupationVector]], t: int,
                name: str = "solved") -> Code:
        if self.status == "infeasible":
            raise ConstructionError(f"no weights found: {self.message}")
        words = tuple(
            Codeword(tuple(Row(tuple(q), w) for q, w in zip(sup, ws)))
            for sup, ws in zip(supports, self.weights)
        )
        return Code(words, design_t=t, name=name)


def _rref(rows: list[list[Fraction]], ncols: int):
    """Reduced row echelon form in place; returns pivot column per pivot row."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def _shift(particular: list[Fraction], null_basis: list[list[Fraction]],
           coeffs) -> list[Fraction]:
    point = list(particular)
    for coeff, vec in zip(coeffs, null_basis):
        if coeff:
            point = [p + coeff * v for p, v in zip(point, vec)]
    return point


def _positive_point(particular: list[Fraction],
                    null_basis: list[list[Fraction]],
                    max_denominator: int = 10_000) -> list[Fraction] | None:
    """Deterministic search for a strictly positive solution of the system.

    The free coordinates are steered toward the analytic center of the
    positivity polytope with a float linear program, then snapped to nearby
    bounded-denominator rationals and re-verified in exact arithmetic.
    """
    if all(v > 0 for v in particular):
        return particular
    if not null_basis:
        return None

    import numpy as np
    from scipy.optimize import linprog

    nvars = len(particular)
    nfree = len(null_basis)
    directions = np.array([[float(v[i]) for v in null_basis]
                           for i in range(nvars)])
    base = np.array([float(v) for v in particular])
    # maximize the smallest entry: max eps s.t. base + directions@t >= eps
    lp = linprog(c=[0.0] * nfree + [-1.0],
                 A_ub=np.hstack([-directions, np.ones((nvars, 1))]),
                 b_ub=base,
                 bounds=[(None, None)] * nfree + [(None, 1.0)])
    if lp.status == 0 and lp.x is not None and lp.x[-1] > 0:
        for bound in (10, 100, 1_000, max_denominator):
            coeffs = [Fraction(x).limit_denominator(bound) for x in lp.x[:nfree]]
            point = _shift(particular, null_basis, coeffs)
            if all(v > 0 for v in point):
                return point

    # coarse exact fallback grid
    grid = sorted({Fraction(p, q) for q in range(1, 13)
                   for p in range(-2 * q, 2 * q + 1)},
                  key=lambda f: (abs(f), f < 0, f.denominator))
    for trial, combo in enumerate(itertools.product(grid, repeat=nfree)):
        if trial > 200_000:
            break
        point = _shift(particular, null_basis, combo)
        if all(v > 0 for v in point):
            return point
    return None


def solve_unbalanced_weights(supports: list[list[OccupationVector]],
                             t: int) -> WeightSolveResult:
    """Solve the moment-equality and normalization equations for the weights.

    Variables are the squared weights of every QCS over all codewords; the
    equations force each column multiset moment up to order t to agree across
    codewords and each codeword to normalize to 1.  Solved exactly over the
    rationals; strictly positive weights are required.
    """
    supports = [[tuple(q) for q in sup] for sup in supports]
    if len(supports) < 1 or any(not sup for sup in supports):
        raise ConstructionError("need at least one nonempty support")
    m = len(supports[0][0])
    if any(len(q) != m for sup in supports for q in sup):
        raise ConstructionError("inconsistent mode counts in supports")

    result_warnings = []
    for (i, a), (j, b) in itertools.combinations(enumerate(supports), 2):
        dmin = min(distance(u, v) for u in a for v in b)
        if dmin <= t:
            result_warnings.append(
                f"supports {i} and {j} have distance {dmin} <= t={t}; "
                "orthogonality after damping is not guaranteed")

    offsets = []
    nvars = 0
    for sup in supports:
        offsets.append(nvars)
        nvars += len(sup)

    rows: list[list[Fraction]] = []
    # normalization per codeword
    for l, sup in enumerate(supports):
        row = [Fraction(0)] * (nvars + 1)
        for i in range(len(sup)):
            row[offsets[l] + i] = Fraction(1)
        row[nvars] = Fraction(1)
        rows.append(row)
    # moment equality of every codeword against the first
    for size in range(1, t + 1):
        for cols in itertools.combinations_with_replacement(range(m), size):
            for l in range(1, len(supports)):
                row = [Fraction(0)] * (nvars + 1)
                for i, q in enumerate(supports[0]):
                    prod = Fraction(1)
                    for j in cols:
                        prod *= q[j]
                    row[offsets[0] + i] = -prod
                for i, q in enumerate(supports[l]):
                    prod = Fraction(1)
                    for j in cols:
                        prod *= q[j]
                    row[offsets[l] + i] = prod
                rows.append(row)

    n_equations = len(rows)
    pivots = _rref(rows, nvars)
    rank = len(pivots)
    for row in rows[rank:]:
        if row[nvars] != 0:
            return WeightSolveResult(
                "infeasible", residual_constraints=n_equations - rank,
                message="moment equalities are inconsistent on these supports",
                warnings=result_warnings)

    free_cols = [c for c in range(nvars) if c not in pivots]
    particular = [Fraction(0)] * nvars
    for r, c in enumerate(pivots):
        particular[c] = rows[r][nvars]
    null_basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * nvars
        vec[fc] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -rows[r][fc]
        null_basis.append(vec)

    point = _positive_point(particular, null_basis)
    if point is None:
        return WeightSolveResult(
            "infeasible", residual_constraints=n_equations - rank,
            message="no strictly positive weight assignment found "
                    "(bounded search over the solution space)",
            warnings=result_warnings)

    weights = [
        point[offsets[l]:offsets[l] + len(sup)]
        for l, sup in enumerate(supports)
    ]
    status = "solved" if not free_cols else "underdetermined_resolved"
    return WeightSolveResult(status, weights,
                             residual_constraints=n_equations - rank,
                             warnings=result_warnings)


def existence_min_N(l_o: int, t: int, m: int) -> int:
    """Smallest total photon number guaranteed to admit an (l_o+1)-word code.

    Counts variables against constraints: enough distinct QCS at separation
    t+1 must exist to absorb the moment equations plus normalizations.
    """
    if l_o < 1 or t < 0 or m < 1:
        raise ValueError(f"need l_o >= 1, t >= 0, m >= 1, got ({l_o}, {t}, {m})")
    needed = 1 + l_o + l_o * sum(partition_count(s, m) for s in range(t + 1))
    n = 1
    while partition_count(n, m) < needed:
        n += 1
    return n * (t + 1)
