"""Combinatorics of multimode photon-number states.

A quasi-classical state (QCS) is represented by its occupation vector, a plain
tuple of nonnegative integers, one entry per mode.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

OccupationVector = tuple[int, ...]


def row_sum(x: OccupationVector) -> int:
    """Total photon number of a QCS."""
    return sum(x)


def partition_count(n: int, m: int) -> int:
    """Number of ordered partitions of n into m nonnegative parts, C(n+m-1, m-1)."""
    if n < 0 or m < 1:
        raise ValueError(f"need n >= 0 and m >= 1, got ({n}, {m})")
    return math.comb(n + m - 1, m - 1)


def iter_qcs(n: int, m: int) -> Iterator[OccupationVector]:
    """Yield all occupation vectors with m modes and total n, lexicographically."""
    if m == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in iter_qcs(n - first, m - 1):
            yield (first,) + rest


def enumerate_qcs(n: int, m: int) -> list[OccupationVector]:
    """All of Q(n, m), lexicographically sorted and duplicate-free."""
    if n < 0 or m < 1:
        raise ValueError(f"need n >= 0 and m >= 1, got ({n}, {m})")
    return list(iter_qcs(n, m))


def distance(u: OccupationVector, v: OccupationVector) -> Fraction:
    """Half the L1 distance between occupation vectors.

    Integer-valued when the row sums agree; half-integers are possible
    otherwise, hence the Fraction return type.
    """
    if len(u) != len(v):
        raise ValueError(f"mode count mismatch: {len(u)} vs {len(v)}")
    return Fraction(sum(abs(a - b) for a, b in zip(u, v)), 2)


def cyclic_orbit(x: OccupationVector) -> list[OccupationVector]:
    """Distinct cyclic shifts of x, in shift order starting from x itself.

    The orbit size always divides the mode count.
    """
    orbit = [x]
    shifted = x[1:] + x[:1]
    while shifted != x:
        orbit.append(shifted)
        shifted = shifted[1:] + shifted[:1]
    return orbit


def scale(x: OccupationVector, d: int) -> OccupationVector:
    """Multiply every occupation number by d; pairwise distances scale by d."""
    if d < 1:
        raise ValueError(f"scale factor must be positive, got {d}")
    return tuple(n * d for n in x)


def orbits(n: int, m: int) -> list[list[OccupationVector]]:
    """Partition Q(n, m) into cyclic-shift orbits, ordered by smallest member."""
    seen: set[OccupationVector] = set()
    out: list[list[OccupationVector]] = []
    for x in iter_qcs(n, m):
        if x in seen:
            continue
        orb = cyclic_orbit(x)
        seen.update(orb)
        out.append(orb)
    return out
