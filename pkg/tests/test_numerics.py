import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from rightangled.lobachevsky import (DegenerateShape, PrecisionSpec,
                                     PrecisionUnattainable, bloch_wigner,
                                     check_identity_eq8, check_identity_eq9,
                                     ideal_tet_volume, lobachevsky,
                                     lobachevsky_fourier, v_oct, v_tet)

angles = st.floats(min_value=-10.0, max_value=10.0,
                   allow_nan=False, allow_infinity=False)


class TestLobachevsky:
    def test_reference_value(self):
        # Lambda(pi/4) = v_oct / 8
        assert lobachevsky(math.pi / 4) == pytest.approx(
            0.4579827970886095, abs=1e-15)

    def test_zeros(self):
        for t in (0.0, math.pi / 2, math.pi, -math.pi / 2):
            assert abs(lobachevsky(t)) < 1e-15

    @settings(max_examples=200, deadline=None)
    @given(angles)
    def test_fourier_oracle(self, t):
        assert lobachevsky(t) == pytest.approx(
            lobachevsky_fourier(t), abs=2e-9)

    @settings(max_examples=100, deadline=None)
    @given(angles)
    def test_odd(self, t):
        assert lobachevsky(-t) == pytest.approx(-lobachevsky(t), abs=1e-14)

    @settings(max_examples=100, deadline=None)
    @given(angles)
    def test_periodic(self, t):
        assert lobachevsky(t + math.pi) == pytest.approx(
            lobachevsky(t), abs=1e-13)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(min_value=-1.5, max_value=1.5))
    def test_duplication(self, t):
        # Lambda(2t) = 2 Lambda(t) + 2 Lambda(t + pi/2)
        lhs = lobachevsky(2 * t)
        rhs = 2 * lobachevsky(t) + 2 * lobachevsky(t + math.pi / 2)
        assert lhs == pytest.approx(rhs, abs=1e-13)

    def test_double_vs_mp(self):
        for t in (0.1, 0.7, 1.3, math.pi / 4, 2.9):
            hi = lobachevsky(t, 30)
            assert float(hi) == pytest.approx(lobachevsky(t), abs=1e-14)

    def test_high_precision_stable(self):
        a = lobachevsky(mp.pi / 4, 60)
        b = lobachevsky(mp.pi / 4, 80)
        with mp.workdps(70):
            assert abs(a - b) < mp.mpf(10) ** -58

    def test_precision_spec(self):
        assert lobachevsky(1.0, PrecisionSpec(15)) == lobachevsky(1.0)
        with pytest.raises(PrecisionUnattainable):
            lobachevsky(1.0, 0)
        with pytest.raises(PrecisionUnattainable):
            lobachevsky(1.0, 10 ** 9)


class TestConstants:
    def test_v_oct(self):
        assert v_oct() == pytest.approx(3.663862376708876, abs=1e-14)

    def test_v_tet(self):
        assert v_tet() == pytest.approx(1.014941606409654, abs=1e-14)

    def test_50_digit_v_oct(self):
        s = mp.nstr(v_oct(55), 50)
        assert s.startswith("3.6638623767088760602")


class TestTetrahedra:
    def test_regular_tet_cross_ratio(self):
        z = complex(0.5, math.sqrt(3) / 2)
        assert ideal_tet_volume(z).value == pytest.approx(
            v_tet(), abs=1e-13)

    def test_degenerate(self):
        res = ideal_tet_volume(0.5)
        assert res.degenerate and res.value == 0.0
        with pytest.raises(DegenerateShape):
            ideal_tet_volume(1.0)

    def test_bloch_wigner_symmetries(self):
        z = complex(0.3, 0.8)
        d = bloch_wigner(z)
        # six-fold symmetry of the Bloch-Wigner function
        assert bloch_wigner(1 - 1 / z) == pytest.approx(d, abs=1e-13)
        assert bloch_wigner(1 / (1 - z)) == pytest.approx(d, abs=1e-13)
        assert bloch_wigner(1 / z) == pytest.approx(-d, abs=1e-13)
        assert bloch_wigner(z.conjugate()) == pytest.approx(-d, abs=1e-13)

    def test_signed(self):
        assert bloch_wigner(complex(0.5, 0.5)) > 0
        assert bloch_wigner(complex(0.5, -0.5)) < 0
        assert bloch_wigner(2.0) == 0.0


class TestIdentities:
    def test_eq8_agrees_50_digits(self):
        v = check_identity_eq8(50)
        assert v.verdict == "agree"
        assert v.agree_digits >= 50

    def test_eq8_printed_string(self):
        v = check_identity_eq8(50)
        digits = v.lhs.replace(".", "")[:50]
        assert digits == ("60230460200471888236341893146167"
                          "971154980290247224")[:50]

    def test_eq9_agrees_30_digits(self):
        v = check_identity_eq9(30)
        assert v.verdict == "agree"
        assert v.agree_digits >= 30

    def test_too_few_digits_rejected(self):
        with pytest.raises(PrecisionUnattainable):
            check_identity_eq8(2)
