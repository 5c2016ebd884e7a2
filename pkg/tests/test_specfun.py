"""Special-function accuracy against frozen high-precision oracles and identities."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lemniscate.specfun import (
    ConvergenceError,
    erfc_complex,
    gamma_fn,
    hermite_poly,
    lower_reg_gamma,
    mittag_leffler,
    mittag_leffler_scaled,
    upper_reg_gamma_int,
)

SQRT_PI = math.sqrt(math.pi)


class TestGamma:
    def test_gamma_one(self):
        assert gamma_fn(1.0) == 1.0

    def test_gamma_half(self):
        assert abs(gamma_fn(0.5) - SQRT_PI) < 1e-15

    def test_gamma_7_3_recurrence_oracle(self):
        # 6.3*5.3*...*1.3*Gamma(1.3), computed at 35 digits and frozen
        assert abs(gamma_fn(7.3) - 1271.423633663909273058) < 1e-13 * 1271.4

    def test_pole_raises(self):
        for x in (0.0, -1.0, -7.0):
            with pytest.raises(ValueError):
                gamma_fn(x)

    def test_relative_error_on_range(self):
        # recurrence-consistency sweep: Gamma(x+1) = x Gamma(x)
        for x in np.linspace(-0.95, 49.0, 197):
            if abs(x) < 1e-9 or (x < 0 and abs(x - round(x)) < 1e-9):
                continue
            lhs = gamma_fn(x + 1.0)
            rhs = x * gamma_fn(x)
            assert abs(lhs - rhs) <= 1e-13 * abs(lhs)


class TestLowerRegGamma:
    def test_c1_closed_form(self):
        x = 2.0
        assert abs(lower_reg_gamma(1.0, x) - (1.0 - math.exp(-x))) < 1e-14

    def test_zero_argument(self):
        assert lower_reg_gamma(0.5, 0.0) == 0.0

    def test_quadrature_oracle(self):
        # adaptive integration of t^{c-1} e^{-t} on [0, x] / Gamma(c), frozen
        assert abs(lower_reg_gamma(2.5, 3.7) - 0.807449566920604244989) < 1e-11

    def test_real_axis_against_scipy(self):
        from scipy.special import gammainc

        for c in (0.25, 0.5, 1.5, 3.0, 7.5):
            for x in np.linspace(0.01, 100.0, 57):
                mine = lower_reg_gamma(c, float(x))
                ref = gammainc(c, x)
                assert abs(mine - ref) <= 1e-11 * max(abs(ref), 1e-12)

    def test_recurrence_property(self):
        # P(c+1,x) = P(c,x) - e^{-x} x^c / Gamma(c+1)
        rng = np.random.default_rng(7)
        for _ in range(300):
            c = rng.uniform(-0.9, 5.0)
            if abs(c) < 0.03 or abs(c + 1.0) < 0.03:
                continue
            x = rng.uniform(0.01, 100.0)
            lhs = lower_reg_gamma(c + 1.0, x)
            rhs = lower_reg_gamma(c, x) - math.exp(-x + c * math.log(x)) / gamma_fn(c + 1.0)
            assert abs(lhs - rhs) <= 1e-11 * max(abs(lhs), 1e-12)

    def test_mittag_leffler_link(self):
        # P(c,x) = x^c e^{-x} E_{1,1+c}(x)
        for c in (-0.9, -0.4, 0.5, 1.7, 3.0):
            for x in np.linspace(0.05, 20.0, 41):
                lhs = lower_reg_gamma(c, float(x))
                rhs = math.exp(-x + c * math.log(x)) * mittag_leffler(1.0, 1.0 + c, float(x))
                assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), 1e-12)

    def test_complex_argument(self):
        # frozen mpmath value for P(1.5, 2+1j)
        val = lower_reg_gamma(1.5, 2 + 1j)
        ref = 0.8189093590817352 + 0.19925902823070538j
        assert abs(val - ref) < 1e-12

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            lower_reg_gamma(-1.5, 1.0)
        with pytest.raises(ValueError):
            lower_reg_gamma(0.0, 1.0)


class TestUpperRegGammaInt:
    def test_single_term(self):
        for z in (0.3, 2 + 1j, -0.7):
            assert abs(upper_reg_gamma_int(1, z) - np.exp(-np.complex128(z))) < 1e-14

    def test_at_zero(self):
        for n in (1, 4, 17):
            assert upper_reg_gamma_int(n, 0.0) == 1.0

    def test_recurrence(self):
        # Q(n+1,z) = Q(n,z) + z^n e^{-z} / n!
        rng = np.random.default_rng(3)
        for _ in range(100):
            n = int(rng.integers(1, 40))
            z = complex(rng.uniform(0, 30), rng.uniform(-5, 5))
            lhs = upper_reg_gamma_int(n + 1, z)
            rhs = upper_reg_gamma_int(n, z) + z**n * np.exp(-z) / gamma_fn(n + 1.0)
            assert abs(lhs - rhs) <= 1e-13 * max(abs(lhs), 1e-300)

    def test_complement_with_lower(self):
        # Q(n,z) + P(n,z) = 1 on the real axis
        for n in (1, 2, 5, 11):
            for x in np.linspace(0.0, 40.0, 23):
                q = upper_reg_gamma_int(n, float(x))
                p = lower_reg_gamma(float(n), float(x)) if x > 0 else 0.0
                assert abs(q + p - 1.0) <= 1e-12


class TestErfcComplex:
    def test_at_zero(self):
        assert erfc_complex(0.0) == 1.0

    def test_odd_symmetry(self):
        z = 0.3 + 0.7j
        assert abs(erfc_complex(z) + erfc_complex(-z) - 2.0) < 1e-13

    def test_real_value_oracle(self):
        # 30+ digit Taylor oracle, frozen
        assert abs(erfc_complex(1.5) - 0.03389485352468927293302) < 1e-12 * 0.034

    def test_complex_value_oracle(self):
        ref = -0.5530544734703330401415 - 0.435664363413166499429j
        assert abs(erfc_complex(0.8 + 1.1j) - ref) < 1e-12

    def test_real_axis_sweep(self):
        from scipy.special import erfc as scipy_erfc

        for x in np.linspace(-8.0, 8.0, 161):
            mine = erfc_complex(float(x))
            ref = scipy_erfc(x)
            assert abs(mine - ref) <= 1e-12 * abs(ref) + 1e-14

    def test_faddeeva_oracle_moderate_imag(self):
        # independent route: erfc(z) = exp(-z^2) w(iz)
        from scipy.special import wofz

        rng = np.random.default_rng(11)
        for _ in range(300):
            z = complex(rng.uniform(-6, 6), rng.uniform(-2.5, 2.5))
            ref = np.exp(-z * z) * wofz(1j * z)
            mine = erfc_complex(z)
            assert abs(mine - ref) <= 1e-10 * abs(ref)

    @given(
        st.floats(-4.0, 4.0, allow_nan=False),
        st.floats(-4.0, 4.0, allow_nan=False),
    )
    @settings(max_examples=80, deadline=None)
    def test_conjugation_symmetry(self, x, y):
        z = complex(x, y)
        a = erfc_complex(np.conj(z))
        b = np.conj(erfc_complex(z))
        assert abs(a - b) <= 1e-12 * max(abs(a), 1.0)


class TestMittagLeffler:
    def test_exponential_case(self):
        for x in (0.0, 0.5, 3.0, 20.0):
            assert abs(mittag_leffler(1.0, 1.0, x) - math.exp(x)) <= 1e-12 * math.exp(x)

    def test_shifted_exponential(self):
        x = 3.0
        ref = 6.361845641062555913643  # (e^3 - 1)/3, frozen
        assert abs(mittag_leffler(1.0, 2.0, x) - ref) <= 1e-12 * ref

    def test_frozen_value(self):
        # 35-digit series oracle for E_{1/2, 4/5}(2.2)
        ref = 346.6184423496728572175
        assert abs(mittag_leffler(0.5, 0.8, 2.2) - ref) <= 1e-10 * ref

    def test_splitting_identity_paper_point(self):
        # sum_l x^l E_{1,(c+l+1)/d}(x^d) = E_{1/d,(1+c)/d}(x) at d=2, c=0.5, x=1.7
        d, c, x = 2, 0.5, 1.7
        lhs = sum(x**l * mittag_leffler(1.0, (c + l + 1.0) / d, x**d) for l in range(d))
        rhs = mittag_leffler(1.0 / d, (1.0 + c) / d, x)
        assert abs(lhs - rhs) <= 1e-10 * abs(rhs)

    @pytest.mark.parametrize("d", [2, 3])
    @pytest.mark.parametrize("c", [-0.5, 0.5, 1.0, 2.0])
    def test_splitting_identity_scaled_grid(self, d, c):
        # scaled by e^{-x^d}: identical relative error, representable for x up to 10
        for x in np.linspace(0.0, 10.0, 41):
            x = float(x)
            damp = math.exp(-min(x**d, 700.0))
            lhs = sum(
                x**l * mittag_leffler_scaled(1.0, (c + l + 1.0) / d, x**d)
                for l in range(d)
            )
            rhs = mittag_leffler_scaled(1.0 / d, (1.0 + c) / d, x)
            assert abs(lhs - rhs) <= 1e-10 * max(abs(rhs), damp)

    def test_channels_against_closed_forms_across_switch(self):
        # E_{1,1}(x)=e^x, E_{1,2}(x)=(e^x-1)/x, E_{1/2,1}(x)=e^{x^2}erfc(-x):
        # exact references on both sides of the series/asymptotic switch
        for x in (34.0, 36.0, 60.0):
            assert abs(mittag_leffler(1.0, 1.0, x) - math.exp(x)) <= 1e-10 * math.exp(x)
            ref = (math.exp(x) - 1.0) / x
            assert abs(mittag_leffler(1.0, 2.0, x) - ref) <= 1e-10 * ref
        for x in (5.5, 6.5, 12.0):  # switch for alpha=1/2 sits at x = sqrt(35)
            ref = math.exp(x * x) * erfc_complex(-x)
            assert abs(mittag_leffler(0.5, 1.0, x) - ref) <= 1e-10 * ref

    def test_overflow_signalled(self):
        with pytest.raises(OverflowError):
            mittag_leffler(0.5, 1.0, 40.0**2)

    def test_scaled_matches_unscaled(self):
        for (al, be, x) in [(1.0, 0.7, 12.0), (0.5, 0.75, 7.0), (1 / 3, 0.5, 3.6)]:
            a = mittag_leffler_scaled(al, be, x)
            b = math.exp(-(x ** (1 / al))) * mittag_leffler(al, be, x)
            assert abs(a - b) <= 1e-12 * abs(a)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            mittag_leffler(0.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            mittag_leffler(1.0, 1.0, -1.0)


class TestHermite:
    def test_low_orders(self):
        z = 0.37 - 1.1j
        assert hermite_poly(0, z) == 1.0
        assert abs(hermite_poly(1, z) - 2 * z) < 1e-15
        assert abs(hermite_poly(2, z) - (4 * z * z - 2)) < 1e-14

    def test_rodrigues_oracle(self):
        # H_5(x) = 32x^5 - 160x^3 + 120x, expanded symbolically
        assert abs(hermite_poly(5, 1.2) - (-52.85376)) < 1e-12 * 52.85

    def test_derivative_recurrence(self):
        # H_j'(z) = 2j H_{j-1}(z) via centred finite differences
        h = 1e-5
        for j in (1, 3, 6, 10):
            for z in (0.4, -1.3, 2.2):
                fd = (hermite_poly(j, z + h) - hermite_poly(j, z - h)) / (2 * h)
                ref = 2 * j * hermite_poly(j - 1, z)
                assert abs(fd - ref) <= 1e-6 * max(abs(ref), 1.0)
