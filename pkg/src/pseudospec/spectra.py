"""Closed-form bound-state spectra and eigenfunctions for the catalog
families.

Energies are exact arithmetic in the family parameters; eigenfunctions are
returned unnormalized as evaluable closed forms (normalization constants are
a quadrature question, not a spectral one). The strict bound-count
inequalities exclude threshold states, which are not normalizable.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .potentials import (
    EckartShifted,
    HarmonicShifted,
    MorseComplex,
    MorseGeneral,
    PotentialSpec,
    morse_effective_C,
)
from .special import laguerre

__all__ = [
    "NonRealParameterError",
    "BoundState",
    "morse_spectrum",
    "morse_wavefunction",
    "ho_spectrum",
    "eckart_spectrum",
]

# threshold states sit exactly at the edge of the counting inequality;
# anything closer than this to the edge is excluded
_EDGE_TOL = 1e-12


class NonRealParameterError(ValueError):
    """The parameter controlling the bound spectrum came out non-real, so
    the real closed form does not apply."""


@dataclass(frozen=True)
class BoundState:
    """One bound level: quantum number, energy, and the family spec, which
    together determine the closed-form eigenfunction."""

    n: int
    energy: complex
    spec: PotentialSpec

    def psi(self, w):
        """Unnormalized eigenfunction at complex argument (scalar or array);
        evaluation at shifted argument is analytic continuation of the
        closed form."""
        scalar = np.isscalar(w) or getattr(w, "ndim", 0) == 0
        ww = np.asarray(w, dtype=np.complex128)
        flat = ww.reshape(-1)
        if isinstance(self.spec, (MorseComplex, MorseGeneral)):
            out = _morse_psi(self.spec, self.n, flat)
        elif isinstance(self.spec, HarmonicShifted):
            out = _ho_psi(self.spec, self.n, flat)
        elif isinstance(self.spec, EckartShifted):
            out = _eckart_psi(self.spec, self.n, flat)
        else:
            raise TypeError(
                f"no closed-form eigenfunctions for {type(self.spec).__name__}"
            )
        out = out.reshape(ww.shape)
        return complex(out[()]) if scalar else out


def _real_effective_C(spec) -> float:
    c = morse_effective_C(spec)
    if abs(c.imag) > 1e-10:
        raise NonRealParameterError(
            f"effective bound-state parameter {c} is not real; "
            "the real-spectrum closed form does not apply"
        )
    return c.real


def morse_spectrum(spec: PotentialSpec) -> list[BoundState]:
    """All bound levels -(n - C)^2 for n = 0, 1, ... strictly below
    C = V2/(2 sqrt(V1)) - 1/2; empty when C <= 0."""
    if not isinstance(spec, (MorseComplex, MorseGeneral)):
        raise TypeError(f"expected a Morse family, got {type(spec).__name__}")
    c = _real_effective_C(spec)
    states = []
    n = 0
    while c - n > _EDGE_TOL:
        states.append(BoundState(n=n, energy=complex(-((c - n) ** 2)), spec=spec))
        n += 1
    return states


def _morse_psi(spec, n: int, w: np.ndarray) -> np.ndarray:
    c = _real_effective_C(spec)
    sq = cmath.sqrt(complex(spec.v1))
    out = np.zeros(w.shape, dtype=np.complex128)
    # z = 2 sqrt(V1) e^-w; skip points where the e^-z/2 factor has already
    # driven the value below double resolution, and points where z itself
    # would overflow
    log_absz = math.log(2.0 * abs(sq)) - w.real
    live = np.flatnonzero(log_absz <= 700.0)
    z = 2.0 * sq * np.exp(-w[live])
    keep = z.real <= 1450.0
    z = z[keep]
    live = live[keep]
    with np.errstate(over="ignore", invalid="ignore"):
        out[live] = z ** (c - n) * np.exp(-0.5 * z) * laguerre(n, 2.0 * c - 2 * n, z)
    if not np.all(np.isfinite(out)):
        raise OverflowError("eigenfunction overflows double range at the given points")
    return out


def morse_wavefunction(state: BoundState, x) -> complex:
    """Eigenfunction z^(C-n) e^(-z/2) L_n^(2C-2n)(z) at z = 2 sqrt(V1) e^-x."""
    if not isinstance(state.spec, (MorseComplex, MorseGeneral)):
        raise TypeError(f"expected a Morse bound state, got {type(state.spec).__name__}")
    return state.psi(x)


def ho_spectrum(spec: PotentialSpec, n_max: int) -> list[BoundState]:
    """Levels n + 1/2 for n = 0..n_max; independent of the complex shift of
    the oscillator center."""
    if not isinstance(spec, HarmonicShifted):
        raise TypeError(f"expected HarmonicShifted, got {type(spec).__name__}")
    if spec.kappa != 0.5:
        raise ValueError(
            f"the n + 1/2 closed form holds for kappa = 1/2, got kappa = {spec.kappa}"
        )
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    return [
        BoundState(n=n, energy=complex(n + 0.5), spec=spec) for n in range(n_max + 1)
    ]


def _hermite(n: int, y: np.ndarray) -> np.ndarray:
    if n == 0:
        return np.ones_like(y)
    hm = np.ones_like(y)
    h = 2.0 * y
    for k in range(1, n):
        hm, h = h, 2.0 * y * h - 2.0 * k * hm
    return h


def _ho_psi(spec, n: int, w: np.ndarray) -> np.ndarray:
    y = w - spec.beta - 1j * spec.gamma
    with np.errstate(over="ignore", invalid="ignore"):
        out = _hermite(n, y) * np.exp(-0.5 * y * y)
    if not np.all(np.isfinite(out)):
        raise OverflowError("eigenfunction overflows double range at the given points")
    return out


def eckart_spectrum(spec: PotentialSpec) -> list[BoundState]:
    """Levels -(s - n)^2 with s = (sqrt(1 + 4 alpha) - 1)/2, for n = 0, 1, ...
    strictly below s; the zero-energy level at n = s exactly is excluded."""
    if not isinstance(spec, EckartShifted):
        raise TypeError(f"expected EckartShifted, got {type(spec).__name__}")
    if spec.kappa != 1.0:
        raise ValueError(
            f"this closed form holds for kappa = 1, got kappa = {spec.kappa}"
        )
    s = 0.5 * (math.sqrt(1.0 + 4.0 * spec.alpha) - 1.0)
    states = []
    n = 0
    while s - n > _EDGE_TOL:
        states.append(BoundState(n=n, energy=complex(-((s - n) ** 2)), spec=spec))
        n += 1
    return states


def _gegenbauer(n: int, lam: float, t: np.ndarray) -> np.ndarray:
    if n == 0:
        return np.ones_like(t)
    cm = np.ones_like(t)
    cc = 2.0 * lam * t
    for k in range(1, n):
        cm, cc = cc, (2.0 * (k + lam) * t * cc - (k + 2.0 * lam - 1.0) * cm) / (k + 1)
    return cc


def _eckart_psi(spec, n: int, w: np.ndarray) -> np.ndarray:
    y = w - spec.beta - 1j * spec.gamma
    s = 0.5 * (math.sqrt(1.0 + 4.0 * spec.alpha) - 1.0)
    mu = s - n
    # log cosh via the side with decaying exponential, stable for any |Re y|
    ya = np.where(y.real >= 0.0, y, -y)
    logcosh = ya - math.log(2.0) + np.log(1.0 + np.exp(-2.0 * ya))
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.exp(-mu * logcosh) * _gegenbauer(n, mu + 0.5, np.tanh(y))
    if not np.all(np.isfinite(out)):
        raise OverflowError("eigenfunction overflows double range at the given points")
    return out
