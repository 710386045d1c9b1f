"""Tests for closed-form bound spectra and eigenfunctions."""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pseudospec.potentials import (
    EckartShifted,
    HarmonicShifted,
    KhareMandal,
    MorseComplex,
    MorseGeneral,
    evaluate,
)
from pseudospec.spectra import (
    BoundState,
    NonRealParameterError,
    eckart_spectrum,
    ho_spectrum,
    morse_spectrum,
    morse_wavefunction,
)


def ode_residual(state, spec, kappa, xs, h=1e-3):
    """max |(-kappa psi'' + (V - E) psi)| / max|psi| with a 5-point stencil."""
    psis = np.array([state.psi(x) for x in xs])
    scale = float(np.max(np.abs(psis)))
    worst = 0.0
    for x in xs:
        st = np.array([state.psi(x + k * h) for k in (-2, -1, 0, 1, 2)])
        d2 = (-st[0] + 16 * st[1] - 30 * st[2] + 16 * st[3] - st[4]) / (12 * h * h)
        v = evaluate(spec, complex(x))
        worst = max(worst, abs(-kappa * d2 + (v - state.energy) * st[2]))
    return worst / scale


class TestMorseSpectrum:
    def test_flagship_energies(self):
        states = morse_spectrum(MorseComplex(3.0, 4.0, 5.0))
        assert [s.n for s in states] == [0, 1, 2, 3, 4]
        want = [-25.0, -16.0, -9.0, -4.0, -1.0]
        for s, e in zip(states, want):
            assert_allclose(s.energy.real, e, rtol=1e-12)
            assert s.energy.imag == 0.0

    def test_general_parameter_cases(self):
        got = [s.energy.real for s in morse_spectrum(MorseGeneral(4.0, 12.0))]
        assert_allclose(got, [-6.25, -2.25, -0.25], rtol=1e-12)
        got = [s.energy.real for s in morse_spectrum(MorseGeneral(4.0, 14.0))]
        assert_allclose(got, [-9.0, -4.0, -1.0], rtol=1e-12)

    def test_single_shallow_state(self):
        states = morse_spectrum(MorseGeneral(4.0, 4.0))
        assert len(states) == 1
        assert_allclose(states[0].energy.real, -0.25, rtol=1e-12)

    def test_empty_spectra(self):
        assert morse_spectrum(MorseGeneral(4.0, 2.0)) == []
        assert morse_spectrum(MorseGeneral(4.0, 1.0)) == []

    def test_depends_only_on_effective_parameter(self):
        a = [s.energy for s in morse_spectrum(MorseComplex(3.0, 4.0, 5.0))]
        b = [s.energy for s in morse_spectrum(MorseComplex(5.0, 0.0, 5.0))]
        c = [s.energy for s in morse_spectrum(MorseComplex(1.0, 2.0, 5.0))]
        assert a == b == c

    def test_non_real_parameter_refused(self):
        with pytest.raises(NonRealParameterError, match="not real"):
            morse_spectrum(MorseGeneral(4.0, 7.0 + 2.0j))

    def test_wrong_family_refused(self):
        with pytest.raises(TypeError, match="Morse"):
            morse_spectrum(HarmonicShifted(0.0, 0.7))


class TestMorseWavefunction:
    SPEC = MorseComplex(3.0, 4.0, 5.0)

    def test_ground_state_closed_form(self):
        state = morse_spectrum(self.SPEC)[0]
        for x in (-1.0, 0.0, 0.5 + 0.3j, 2.0):
            z = 2.0 * complex(3.0, 4.0) * np.exp(-np.asarray(x, complex))
            want = z**5.0 * np.exp(-0.5 * z)
            assert_allclose(state.psi(x), complex(want), rtol=1e-12)

    def test_ode_residual(self):
        states = morse_spectrum(self.SPEC)
        xs = np.linspace(-1.0, 8.0, 50)
        assert ode_residual(states[2], self.SPEC, 1.0, xs) <= 1e-6

    def test_tails_vanish(self):
        state = morse_spectrum(self.SPEC)[2]
        assert abs(state.psi(30.0)) < 1e-30
        assert state.psi(-50.0) == 0.0

    def test_overflow_raises(self):
        state = morse_spectrum(self.SPEC)[0]
        wim = -(math.pi / 2 + 0.01 - math.atan2(4.0, 3.0))
        with pytest.raises(OverflowError, match="overflow"):
            state.psi(complex(-300.0, wim))

    def test_scalar_and_array_forms(self):
        state = morse_spectrum(self.SPEC)[1]
        v = state.psi(1.0)
        assert isinstance(v, complex)
        arr = state.psi(np.array([0.5, 1.0, 1.5]))
        assert arr.shape == (3,)
        assert_allclose(arr[1], v, rtol=1e-15)

    def test_wrapper_checks_family(self):
        state = morse_spectrum(self.SPEC)[0]
        assert morse_wavefunction(state, 1.0) == state.psi(1.0)
        ho_state = ho_spectrum(HarmonicShifted(0.0, 0.0), 0)[0]
        with pytest.raises(TypeError, match="Morse"):
            morse_wavefunction(ho_state, 1.0)


class TestHOSpectrum:
    def test_levels(self):
        states = ho_spectrum(HarmonicShifted(1.0, 0.7), 5)
        assert [s.energy for s in states] == [complex(n + 0.5) for n in range(6)]

    def test_shift_independent(self):
        specs = [
            HarmonicShifted(0.0, 0.0),
            HarmonicShifted(0.0, 0.7),
            HarmonicShifted(1.0, 0.7),
        ]
        seqs = [[s.energy for s in ho_spectrum(sp, 5)] for sp in specs]
        assert seqs[0] == seqs[1] == seqs[2]

    def test_hermite_gaussian_forms(self):
        spec = HarmonicShifted(1.0, 0.7)
        states = ho_spectrum(spec, 2)
        for x in (-0.5, 0.0, 1.3):
            y = x - 1.0 - 0.7j
            g = np.exp(-0.5 * y * y)
            assert_allclose(states[0].psi(x), g, rtol=1e-12)
            assert_allclose(states[1].psi(x), 2.0 * y * g, rtol=1e-12)
            assert_allclose(states[2].psi(x), (4.0 * y * y - 2.0) * g, rtol=1e-12)

    def test_ode_residual(self):
        spec = HarmonicShifted(1.0, 0.7)
        state = ho_spectrum(spec, 3)[3]
        assert ode_residual(state, spec, 0.5, np.linspace(-4.0, 6.0, 50)) <= 1e-6

    def test_validation(self):
        with pytest.raises(ValueError, match="kappa"):
            ho_spectrum(HarmonicShifted(0.0, 0.7, kappa=1.0), 3)
        with pytest.raises(ValueError, match="n_max"):
            ho_spectrum(HarmonicShifted(0.0, 0.7), -1)
        with pytest.raises(TypeError, match="HarmonicShifted"):
            ho_spectrum(MorseComplex(3.0, 4.0, 5.0), 3)

    def test_overflow_raises(self):
        state = ho_spectrum(HarmonicShifted(1.0, 0.7), 0)[0]
        with pytest.raises(OverflowError, match="overflow"):
            state.psi(complex(1.0, 40.7))


class TestEckartSpectrum:
    def test_two_level_case(self):
        states = eckart_spectrum(EckartShifted(6.0, 0.0, 0.0))
        assert [s.n for s in states] == [0, 1]
        assert_allclose([s.energy.real for s in states], [-4.0, -1.0], rtol=1e-12)
        assert all(s.energy.imag == 0.0 for s in states)

    def test_threshold_state_excluded(self):
        # alpha = 2 puts n = 1 exactly at zero energy; only n = 0 remains
        states = eckart_spectrum(EckartShifted(2.0, 0.0, 0.0))
        assert len(states) == 1
        assert_allclose(states[0].energy.real, -1.0, rtol=1e-12)

    def test_shift_independent(self):
        a = [s.energy for s in eckart_spectrum(EckartShifted(6.0, 0.0, 0.0))]
        b = [s.energy for s in eckart_spectrum(EckartShifted(6.0, 0.5, 0.4))]
        assert a == b

    def test_sech_power_forms(self):
        spec = EckartShifted(6.0, 0.5, 0.4)
        states = eckart_spectrum(spec)
        for x in (-1.0, 0.2, 1.7):
            y = x - 0.5 - 0.4j
            sech = 1.0 / np.cosh(y)
            assert_allclose(states[0].psi(x), sech**2.0, rtol=1e-12)
            assert_allclose(states[1].psi(x), 3.0 * sech * np.tanh(y), rtol=1e-12)

    def test_ode_residuals(self):
        spec = EckartShifted(6.0, 0.5, 0.4)
        xs = np.linspace(-3.0, 4.0, 50)
        for state in eckart_spectrum(spec):
            assert ode_residual(state, spec, 1.0, xs) <= 1e-6

    def test_validation(self):
        with pytest.raises(ValueError, match="kappa"):
            eckart_spectrum(EckartShifted(6.0, 0.0, 0.0, kappa=0.5))
        with pytest.raises(TypeError, match="Eckart"):
            eckart_spectrum(MorseComplex(3.0, 4.0, 5.0))


class TestBoundStateGenerics:
    def test_no_closed_form_family(self):
        state = BoundState(n=0, energy=0.0 + 0.0j, spec=KhareMandal(2.0, 1.0))
        with pytest.raises(TypeError, match="closed-form"):
            state.psi(0.0)
