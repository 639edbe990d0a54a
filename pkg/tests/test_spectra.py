import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rightangled.core import BadParameter
from rightangled.lobachevsky import v_oct
from rightangled.spectra import (GluingSchedule, MissingVolumes, OutOfRange,
                                 TermBudget, Unreachable,
                                 approximation_schedule, classify,
                                 discreteness_bound, distinct_count,
                                 repeated_sum_convergence, spectrum_points,
                                 spectrum_table, weighted_average_check)
from rightangled.volumes import landmark_constants


class TestSpectrumTable:
    def test_ideal_row(self):
        row = spectrum_table("ideal", 10, {"x": 8.137885, "y": 8.612415})
        assert (row.count, row.distinct) == (2, 2)
        assert row.min_omega == pytest.approx(0.8137885)
        assert row.max_omega == pytest.approx(0.8612415)
        assert not row.partial

    def test_equal_volumes_collapse(self):
        row = spectrum_table("ideal", 12,
                             {"x": 10.991587, "y": 10.9915871, "z": 11.0})
        assert row.count == 3 and row.distinct == 2

    def test_ideal_missing_raises(self):
        with pytest.raises(MissingVolumes):
            spectrum_table("ideal", 10, {"x": 8.1, "y": None})

    def test_compact_partial(self):
        row = spectrum_table("compact", 28,
                             {"x": 7.563249, "y": None, "z": None})
        assert row.partial and row.count == 3 and row.distinct == 1

    def test_empty_row(self):
        row = spectrum_table("ideal", 7, {})
        assert (row.count, row.distinct) == (0, 0)
        assert row.min_omega is None

    def test_distinct_count_tolerance(self):
        assert distinct_count([1.0, 1.0 + 5e-7, 2.0]) == 2
        assert distinct_count([1.0, 1.0 + 5e-6, 2.0]) == 3
        assert distinct_count([]) == 0

    def test_spectrum_points_sorted(self):
        pts = spectrum_points("ideal", [("b", 10, 9.0), ("a", 10, 8.0),
                                        ("c", 12, None)])
        assert [p.code for p in pts] == ["a", "b", "c"]
        assert pts[0].omega == pytest.approx(0.8)
        assert pts[0].omega_tilde == pytest.approx(8.0 / 7)
        assert pts[2].omega is None


class TestWeightedAverage:
    def test_equal_summands(self):
        assert weighted_average_check((3, 1.221287), (3, 1.221287)) == \
            pytest.approx(1.221287)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(1, 100), st.floats(1, 100),
           st.floats(0.1, 2.0), st.floats(0.1, 2.0))
    def test_matches_sum(self, v1, v2, a, b):
        # glue: total volume v1*a + v2*b over reduced count v1 + v2
        expect = (v1 * a + v2 * b) / (v1 + v2)
        assert weighted_average_check((v1, a), (v2, b)) == \
            pytest.approx(expect, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(1, 100), st.floats(1, 100),
           st.floats(0.1, 2.0), st.floats(0.1, 2.0))
    def test_between_summands(self, v1, v2, a, b):
        w = weighted_average_check((v1, a), (v2, b))
        assert min(a, b) - 1e-12 <= w <= max(a, b) + 1e-12


class TestDiscretenessBound:
    def test_exact_values(self):
        vo = v_oct()
        assert discreteness_bound(vo / 6, "ideal") == 6
        assert discreteness_bound(vo / 5, "ideal") == 10

    def test_monotone(self):
        vo = v_oct()
        prev = 0
        for t in [0.62, 0.70, 0.80, 0.90]:
            b = discreteness_bound(t, "ideal")
            assert b >= prev
            prev = b

    def test_out_of_range(self):
        vo = v_oct()
        with pytest.raises(OutOfRange):
            discreteness_bound(vo / 4, "ideal")
        with pytest.raises(OutOfRange):
            discreteness_bound(0.1, "ideal")
        with pytest.raises(OutOfRange):
            discreteness_bound(vo / 32, "compact")

    def test_compact_value(self):
        vo = v_oct()
        assert discreteness_bound(5 * vo / 192, "compact") == \
            math.floor(8 * vo / (vo - 32 * 5 * vo / 192))


class TestSchedule:
    def test_degenerate_targets(self):
        s = approximation_schedule(1.2, (5, 1.2), (7, 1.5))
        assert s.pairs == ((1, 0),) and s.predicted == 1.2
        s = approximation_schedule(1.5, (5, 1.2), (7, 1.5))
        assert s.pairs == ((0, 1),) and s.predicted == 1.5

    def test_simple_ratio(self):
        s = approximation_schedule(2 / 3, (5, 0.0), (5, 1.0))
        assert s.pairs[-1] == (1, 2)
        assert s.predicted == pytest.approx(2 / 3, abs=1e-12)

    def test_unreachable(self):
        with pytest.raises(Unreachable):
            approximation_schedule(2.0, (5, 1.2), (7, 1.5))

    def test_term_budget(self):
        with pytest.raises(TermBudget):
            approximation_schedule(1.3, (5, 1.2), (7, 1.5),
                                   eps=1e-18, max_terms=2)

    def test_pairs_coprime(self):
        s = approximation_schedule(1.4, (17, 1.2420364), (40, 1.7))
        for k, m in s.pairs:
            assert math.gcd(k, m) == 1

    def test_exact_rational_recheck(self):
        s = approximation_schedule(1.4, (17, 1.2420364), (40, 1.7))
        k, m = s.pairs[-1]
        v1, a = s.p1
        v2, b = s.p2
        exact = (Fraction(k) * Fraction(v1) * Fraction(a) +
                 Fraction(m) * Fraction(v2) * Fraction(b)) / \
                (Fraction(k) * Fraction(v1) + Fraction(m) * Fraction(v2))
        assert abs(float(exact) - s.predicted) < 1e-12

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0.925, 1.82))
    def test_reaches_ideal_dense_targets(self, t):
        lm = landmark_constants()
        # antiprism-style low end, high-omega summand at the top end
        s = approximation_schedule(t, (37, lm["f"] + 0.005), (40, 1.832),
                                   eps=1e-4, max_terms=40)
        assert abs(s.predicted - t) <= 1e-4


class TestRepeatedSum:
    def test_ideal_a3(self):
        seq = repeated_sum_convergence((3, 7.327725 / 6), 2, "ideal")
        assert seq[1] == pytest.approx(7.327725 / 9, abs=1e-12)

    def test_compact_l5(self):
        seq = repeated_sum_convergence((10, 4.3062076 / 10), 2, "compact")
        assert seq[1] == pytest.approx(0.28708050666, abs=1e-9)

    def test_strictly_increasing_to_limit(self):
        ot = 1.3
        seq = repeated_sum_convergence((7, ot), 200, "ideal")
        assert all(b > a for a, b in zip(seq, seq[1:]))
        assert all(x < ot for x in seq)
        assert abs(seq[-1] - ot) < ot * 3 / (200 * 7)

    def test_m1_is_omega(self):
        seq = repeated_sum_convergence((5, 1.0), 1, "ideal")
        assert seq == [pytest.approx(5 / 8)]


class TestClassify:
    def test_regions(self):
        assert classify(0.610643, "ideal") == "discrete"
        assert classify(1.0, "ideal") == "dense"
        assert classify(0.5, "ideal") == "below"
        assert classify(1.9, "ideal") == "above"
        assert classify(0.2, "compact") == "unknown_gap"
        assert classify(0.05, "compact") == "below"
        assert classify(0.1, "compact") == "discrete"
        assert classify(0.5, "compact") == "dense"
        assert classify(0.7, "compact") == "above"

    def test_boundaries(self):
        lm = landmark_constants()
        assert classify(lm["d"], "ideal") == "discrete"
        assert classify(lm["f"], "ideal") == "dense"
        assert classify(lm["k"], "ideal") == "dense"
        assert classify(lm["a"], "compact") == "discrete"
        assert classify(lm["b"], "compact") == "unknown_gap"
        assert classify(lm["c"], "compact") == "dense"
        assert classify(lm["e"], "compact") == "dense"

    def test_negative_rejected(self):
        with pytest.raises(BadParameter):
            classify(-0.1, "ideal")
