"""Tests for the imaginary coordinate shift: polynomial action, pairing
Hermiticity, potential-level verdicts, and the Morse variable conjugation."""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pseudospec.potentials import (
    HarmonicShifted,
    KhareMandal,
    MorseComplex,
    natural_domain,
    pseudo_shift_angle,
)
from pseudospec.shiftop import (
    Gaussian,
    GaussianTimesPoly,
    check_pseudo_hermitian,
    hermiticity_defect,
    morse_variable_conjugation,
    shift_pairing_values,
    shift_polynomial,
)
from pseudospec.special import PolyCoeffs

# reference values computed at 50-digit working precision
PAIRING_0_5 = 1.886767302976543573209  # sqrt(pi) * exp(0.5^2/4)
PAIRING_1 = 2.275875794468747235520
PAIRING_2 = 4.818029094698722057122
MORSE_Z_3_4_AT_0_25 = 4.672804698428429209471 - 6.230406264571238945961j


class TestShiftPolynomial:
    def test_cubic_by_hand(self):
        # (x + i/2)^3 - 2(x + i/2) expanded by hand
        p = PolyCoeffs((0.0, -2.0, 0.0, 1.0))
        q = shift_polynomial(p, 0.5)
        assert q.coeffs == (-1.125j, -2.75 + 0.0j, 1.5j, 1.0 + 0.0j)

    def test_zero_shift_is_identity(self):
        p = PolyCoeffs((1.0 + 2.0j, 0.5, 3.0))
        assert shift_polynomial(p, 0.0).coeffs == p.coeffs

    def test_constant_polynomial(self):
        p = PolyCoeffs((4.0 + 1.0j,))
        assert shift_polynomial(p, 2.3).coeffs == p.coeffs

    def test_round_trip(self):
        # shift-then-unshift amplifies rounding by ~(1+|theta|)^deg, so the
        # 1e-13 coefficient-wise bound is meaningful only for |theta| <= 1
        rng = np.random.default_rng(20260821)
        for _ in range(20):
            deg = int(rng.integers(0, 9))
            c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
            theta = float(rng.uniform(-1.0, 1.0))
            p = PolyCoeffs(tuple(c))
            back = shift_polynomial(shift_polynomial(p, theta), -theta)
            bc = np.array(back.coeffs)
            pc = np.array(p.coeffs[: len(back.coeffs)])
            assert bc.shape == pc.shape
            assert np.max(np.abs(bc - pc)) <= 1e-13 * max(1.0, np.max(np.abs(pc)))

    def test_linearity(self):
        p = PolyCoeffs((1.0, -2.0, 0.0, 1.0j))
        q = PolyCoeffs((0.0, 3.0, 2.0))
        both = PolyCoeffs(
            tuple(
                (p.coeffs[k] if k < len(p.coeffs) else 0)
                + 2j * (q.coeffs[k] if k < len(q.coeffs) else 0)
                for k in range(4)
            )
        )
        lhs = np.array(shift_polynomial(both, 0.8).coeffs)
        sp = np.array(shift_polynomial(p, 0.8).coeffs)
        sq = np.array(shift_polynomial(q, 0.8).coeffs)
        rhs = sp + 2j * np.concatenate([sq, np.zeros(1)])
        assert np.max(np.abs(lhs - rhs)) < 1e-14

    def test_commutes_with_derivative(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            deg = int(rng.integers(1, 9))
            c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
            theta = float(rng.uniform(-2.0, 2.0))
            p = PolyCoeffs(tuple(c))
            a = np.array(shift_polynomial(p.derivative(), theta).coeffs)
            b = np.array(shift_polynomial(p, theta).derivative().coeffs)
            n = min(a.size, b.size)
            assert np.max(np.abs(a[:n] - b[:n])) <= 1e-13 * max(
                1.0, np.max(np.abs(a))
            )

    def test_evaluates_to_shifted_argument(self):
        p = PolyCoeffs((2.0, 0.0, -1.0, 0.5j))
        q = shift_polynomial(p, 1.3)
        for x in (-1.7, 0.0, 2.2):
            assert_allclose(q(x), p(x + 1.3j), rtol=1e-14, atol=1e-14)


class TestPairingHermiticity:
    def test_gaussian_closed_form(self):
        g = Gaussian()
        for theta, want in [(0.5, PAIRING_0_5), (1.0, PAIRING_1), (2.0, PAIRING_2)]:
            lhs, rhs = shift_pairing_values(g, g, theta)
            assert_allclose(lhs.value, want, rtol=1e-9)
            assert_allclose(rhs.value, want, rtol=1e-9)

    def test_gaussian_defect(self):
        g = Gaussian()
        for theta in (0.5, 1.0, 2.0):
            assert hermiticity_defect(g, g, theta) <= 1e-8

    def test_poly_weighted_defect(self):
        u = GaussianTimesPoly(PolyCoeffs((1.0, 0.0, 1.0)))
        g = Gaussian()
        assert hermiticity_defect(u, g, 1.0) <= 1e-8
        assert hermiticity_defect(u, u, 1.5) <= 1e-8

    def test_shifted_center_defect(self):
        u = Gaussian(center=0.3 + 0.2j)
        assert hermiticity_defect(u, Gaussian(), 1.0) <= 1e-8

    def test_width_validation(self):
        with pytest.raises(ValueError, match="width"):
            Gaussian(width=0.0)
        with pytest.raises(ValueError, match="width"):
            GaussianTimesPoly(PolyCoeffs((1.0,)), width=-2.0)


class TestPotentialVerdict:
    def test_morse_correct_angle(self):
        spec = MorseComplex(3.0, 4.0, 5.0)
        theta = pseudo_shift_angle(spec)
        lo, hi = natural_domain(spec)
        verdict = check_pseudo_hermitian(spec, theta, np.linspace(lo, hi, 101))
        assert verdict.passed
        assert verdict.max_residual <= 1e-10 * verdict.scale
        assert verdict.theta_used == theta
        assert verdict.grid_points == 101

    def test_morse_wrong_angle(self):
        spec = MorseComplex(3.0, 4.0, 5.0)
        theta = pseudo_shift_angle(spec)
        lo, hi = natural_domain(spec)
        verdict = check_pseudo_hermitian(spec, theta + 0.1, np.linspace(lo, hi, 101))
        assert not verdict.passed
        assert verdict.max_residual > 1e-3 * verdict.scale

    def test_harmonic_and_pole_families(self):
        ho = HarmonicShifted(1.0, 0.7)
        v = check_pseudo_hermitian(ho, pseudo_shift_angle(ho), np.linspace(-12, 12, 101))
        assert v.passed
        km = KhareMandal(2.0, 1.0)
        v2 = check_pseudo_hermitian(km, pseudo_shift_angle(km), np.linspace(-4, 4, 101))
        assert v2.passed

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError, match="grid"):
            check_pseudo_hermitian(MorseComplex(3.0, 4.0, 5.0), 1.0, [])


class TestMorseVariableConjugation:
    def test_unit_case(self):
        shifted, conjugated = morse_variable_conjugation(1.0, 1.0, 0.0)
        assert_allclose(shifted, 2.0 - 2.0j, rtol=1e-14)
        assert_allclose(conjugated, 2.0 - 2.0j, rtol=1e-14)

    def test_three_four_case(self):
        shifted, conjugated = morse_variable_conjugation(3.0, 4.0, 0.25)
        assert_allclose(shifted, MORSE_Z_3_4_AT_0_25, rtol=1e-14)
        assert_allclose(conjugated, MORSE_Z_3_4_AT_0_25, rtol=1e-14)
        assert abs(shifted - conjugated) <= 1e-14 * abs(shifted)

    def test_positive_a_required(self):
        with pytest.raises(ValueError, match="A"):
            morse_variable_conjugation(0.0, 1.0, 0.0)
