import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from adcodes.fock import (
    cyclic_orbit, distance, enumerate_qcs, iter_qcs, orbits, partition_count,
    row_sum, scale,
)


class TestEnumeration:
    def test_counts(self):
        assert partition_count(4, 2) == 5
        assert partition_count(9, 2) == 10
        assert partition_count(3, 3) == 10
        assert partition_count(0, 3) == 1

    def test_count_formula(self):
        for n in range(7):
            for m in range(1, 5):
                assert partition_count(n, m) == math.comb(n + m - 1, m - 1)

    def test_enumerate_matches_count(self):
        qcs = enumerate_qcs(4, 3)
        assert len(qcs) == partition_count(4, 3)
        assert len(set(qcs)) == len(qcs)
        assert all(sum(q) == 4 and len(q) == 3 for q in qcs)

    def test_lexicographic_order(self):
        qcs = enumerate_qcs(2, 2)
        assert qcs == [(0, 2), (1, 1), (2, 0)]
        assert qcs == sorted(qcs)

    def test_iter_is_lazy_equivalent(self):
        assert list(iter_qcs(3, 2)) == enumerate_qcs(3, 2)


class TestDistance:
    def test_examples(self):
        assert distance((4, 0), (0, 4)) == 4
        assert distance((4, 0), (2, 2)) == 2
        assert distance((3, 0, 6), (0, 6, 3)) == 6
        assert distance((9, 0), (3, 6)) == 6

    def test_half_integer(self):
        assert distance((1, 0), (0, 0)) == F(1, 2)

    @given(st.lists(st.integers(0, 9), min_size=1, max_size=5), st.data())
    def test_metric_axioms(self, u, data):
        m = len(u)
        v = data.draw(st.lists(st.integers(0, 9), min_size=m, max_size=m))
        w = data.draw(st.lists(st.integers(0, 9), min_size=m, max_size=m))
        u, v, w = tuple(u), tuple(v), tuple(w)
        assert distance(u, v) >= 0
        assert (distance(u, v) == 0) == (u == v)
        assert distance(u, v) == distance(v, u)
        assert distance(u, w) <= distance(u, v) + distance(v, w)


class TestOrbits:
    def test_cyclic_orbit(self):
        assert cyclic_orbit((1, 0, 2)) == [(1, 0, 2), (0, 2, 1), (2, 1, 0)]
        assert cyclic_orbit((1, 1, 1)) == [(1, 1, 1)]
        assert cyclic_orbit((2, 0, 2, 0)) == [(2, 0, 2, 0), (0, 2, 0, 2)]

    def test_orbits_partition_qcs(self):
        for n, m in [(4, 2), (4, 3), (6, 3), (3, 4)]:
            all_orbits = orbits(n, m)
            flat = [q for orbit in all_orbits for q in orbit]
            assert sorted(flat) == enumerate_qcs(n, m)

    def test_orbit_sizes_divide_m(self):
        for orbit in orbits(6, 4):
            assert 4 % len(orbit) == 0

    def test_known_orbit_count(self):
        # the n=4, m=3 orbit family underlying the ten-codeword example
        assert len(orbits(4, 3)) == 5
        assert len(orbits(2, 3)) == 2


def test_scale():
    assert scale((1, 0, 2), 3) == (3, 0, 6)
    assert row_sum(scale((1, 2), 5)) == 15
    with pytest.raises(ValueError):
        scale((1, 0), 0)
