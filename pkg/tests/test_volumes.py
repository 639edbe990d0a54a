import math

import mpmath as mp
import pytest

from rightangled.core import BadParameter
from rightangled.lobachevsky import v_oct, v_tet
from rightangled.volumes import (antiprism_volume, atkinson_bounds,
                                 landmark_constants, lobell_theta,
                                 lobell_volume, normalized, tower_volume,
                                 vd_from_omega)


class TestClosedForms:
    def test_octahedron(self):
        assert antiprism_volume(3).value == pytest.approx(v_oct(), abs=1e-14)

    def test_a4(self):
        assert antiprism_volume(4).value == pytest.approx(
            6.023046020047189, abs=1e-12)

    def test_lobell5(self):
        # six-decimal references truncate; the full value is 4.3062076007...
        assert lobell_volume(5).value == pytest.approx(
            4.306207600730809, abs=1e-12)

    def test_lobell6_equals_a4(self):
        assert lobell_volume(6).value == pytest.approx(
            antiprism_volume(4).value, abs=1e-13)

    def test_lobell6_equals_a4_high_precision(self):
        a = lobell_volume(6, 60).value
        b = antiprism_volume(4, 60).value
        with mp.workdps(70):
            assert abs(a - b) < mp.mpf(10) ** -58

    def test_antiprism_monotone(self):
        vols = [antiprism_volume(n).value for n in range(3, 12)]
        assert vols == sorted(vols)

    def test_antiprism_asymptotics(self):
        # vol A(n)/n -> 2 Lambda(pi/4) * 2 = v_oct / 2
        assert antiprism_volume(4000).value / 4000 == pytest.approx(
            v_oct() / 2, rel=1e-5)

    def test_lobell_theta_range(self):
        for n in range(5, 40):
            th = lobell_theta(n)
            assert 0 < th < math.pi / 2

    def test_tower_additive(self):
        assert tower_volume(5, 3).value == pytest.approx(
            3 * lobell_volume(5).value, abs=1e-12)
        assert tower_volume(6, 1).method == "additive"

    def test_bad_parameters(self):
        with pytest.raises(BadParameter):
            antiprism_volume(2)
        with pytest.raises(BadParameter):
            lobell_volume(4)
        with pytest.raises(BadParameter):
            tower_volume(5, 0)


class TestNormalized:
    def test_omega(self):
        nv = normalized(antiprism_volume(4), 8, "ideal")
        assert nv.omega == pytest.approx(0.752880752505899, abs=1e-12)
        assert nv.omega_tilde == pytest.approx(
            antiprism_volume(4).value / 5, abs=1e-12)

    def test_tilde_none_at_offset(self):
        assert normalized(1.0, 3, "ideal").omega_tilde is None
        assert normalized(1.0, 10, "compact").omega_tilde is None

    def test_vd(self):
        assert vd_from_omega(0.5) == 3.0
        with pytest.raises(BadParameter):
            vd_from_omega(-1)


class TestBounds:
    def test_ideal_equality_at_6(self):
        lo, hi = atkinson_bounds(6, "ideal")
        assert lo == pytest.approx(hi, abs=1e-13)
        assert lo == pytest.approx(v_oct(), abs=1e-13)

    def test_ideal_sandwich_antiprisms(self):
        for n in range(3, 12):
            lo, hi = atkinson_bounds(2 * n, "ideal")
            v = antiprism_volume(n).value
            assert lo <= v + 1e-12 and v <= hi + 1e-12

    def test_compact_sandwich_lobell(self):
        for n in range(5, 12):
            lo, hi = atkinson_bounds(4 * n, "compact")
            v = lobell_volume(n).value
            assert lo <= v <= hi

    def test_domain(self):
        with pytest.raises(BadParameter):
            atkinson_bounds(5, "ideal")
        with pytest.raises(BadParameter):
            atkinson_bounds(19, "compact")


class TestLandmarks:
    def test_values(self):
        lm = landmark_constants()
        vo, vt = v_oct(), v_tet()
        assert lm["a"] == pytest.approx(5 * vo / 192, abs=1e-14)
        assert lm["b"] == pytest.approx(vo / 32, abs=1e-14)
        assert lm["c"] == pytest.approx(5 * vt / 16, abs=1e-14)
        assert lm["d"] == pytest.approx(vo / 6, abs=1e-14)
        assert lm["e"] == pytest.approx(5 * vt / 8, abs=1e-14)
        assert lm["f"] == pytest.approx(vo / 4, abs=1e-14)
        assert lm["g"] == pytest.approx(vo / 3, abs=1e-14)
        assert lm["h"] == pytest.approx(5 * vt / 3, abs=1e-14)
        assert lm["k"] == pytest.approx(vo / 2, abs=1e-14)

    def test_increasing(self):
        lm = landmark_constants()
        vals = [lm[x] for x in "abcdefghk"]
        assert vals == sorted(vals)
