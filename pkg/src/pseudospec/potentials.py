"""Potential families on the real line with complex parameters or complex
coordinate shifts, plus the imaginary-shift angle under which each family
satisfies V(x + i*theta) = conj(V(x)).

Families (catalog names in FAMILIES):
  morse-complex   (A+iB)^2 e^(-2x) - (2C+1)(A+iB) e^(-x),       A > 0
  morse-general   V1 e^(-2x) - V2 e^(-x),                        complex V1, V2
  ho-shifted      (1/2)(x - beta - i*gamma)^2                    (kappa = 1/2)
  eckart-shifted  -alpha sech^2(x - beta - i*gamma),             alpha > 0
  khare-mandal    [zeta*cosh(2x) - iM]^2

The Hamiltonian convention is H = kappa p^2 + V with kappa = 1 meaning
hbar = 1 = 2m and kappa = 1/2 meaning hbar = 1 = m.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "NoKnownShiftError",
    "BranchAmbiguityError",
    "PotentialSpec",
    "MorseComplex",
    "MorseGeneral",
    "HarmonicShifted",
    "EckartShifted",
    "KhareMandal",
    "FAMILIES",
    "from_params",
    "evaluate",
    "pseudo_shift_angle",
    "morse_effective_C",
    "real_imag_parts",
    "natural_domain",
]


class NoKnownShiftError(ValueError):
    """No shift angle theta with V(x+i*theta) = conj(V(x)) is known."""


class BranchAmbiguityError(ValueError):
    """Both square-root branches of V1 have zero real part."""


_EXP_ARG_MAX = 709.0  # log of the largest double


@dataclass(frozen=True)
class PotentialSpec:
    """Base for all families. kappa is the coefficient of p^2."""

    # keyword-only so subclasses keep their natural positional parameters
    kappa: float = field(default=1.0, kw_only=True)

    def __post_init__(self):
        if self.kappa not in (1.0, 0.5):
            raise ValueError(f"kappa must be 1 or 1/2, got {self.kappa}")

    # subclasses implement _value on a complex ndarray
    def _value(self, w: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def value(self, w):
        scalar = np.isscalar(w) or getattr(w, "ndim", 0) == 0
        ww = np.asarray(w, dtype=np.complex128)
        out = self._value(ww)
        if not np.all(np.isfinite(out)):
            raise OverflowError(
                f"{type(self).__name__} overflows double range on the given points"
            )
        return complex(out[()]) if scalar else out


@dataclass(frozen=True)
class MorseComplex(PotentialSpec):
    A: float = 1.0
    B: float = 0.0
    C: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if not (self.A > 0):
            raise ValueError(f"A must be positive, got {self.A}")

    @property
    def v1(self) -> complex:
        return complex(self.A, self.B) ** 2

    @property
    def v2(self) -> complex:
        return (2 * self.C + 1) * complex(self.A, self.B)

    def _value(self, w):
        if np.any(-2.0 * w.real > _EXP_ARG_MAX):
            raise OverflowError("exp(-2x) exceeds double range at the given points")
        e = np.exp(-w)
        return self.v1 * e * e - self.v2 * e


@dataclass(frozen=True)
class MorseGeneral(PotentialSpec):
    V1: complex = 1.0 + 0.0j
    V2: complex = 0.0 + 0.0j

    def __post_init__(self):
        super().__post_init__()
        if self.V1 == 0:
            raise ValueError("V1 must be nonzero")

    @property
    def v1(self) -> complex:
        return complex(self.V1)

    @property
    def v2(self) -> complex:
        return complex(self.V2)

    def _value(self, w):
        if np.any(-2.0 * w.real > _EXP_ARG_MAX):
            raise OverflowError("exp(-2x) exceeds double range at the given points")
        e = np.exp(-w)
        return self.v1 * e * e - self.v2 * e


@dataclass(frozen=True)
class HarmonicShifted(PotentialSpec):
    kappa: float = field(default=0.5, kw_only=True)
    beta: float = 0.0
    gamma: float = 0.0

    def _value(self, w):
        y = w - self.beta - 1j * self.gamma
        return 0.5 * y * y


@dataclass(frozen=True)
class EckartShifted(PotentialSpec):
    alpha: float = 1.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        super().__post_init__()
        if not (self.alpha > 0):
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    def _value(self, w):
        y = w - self.beta - 1j * self.gamma
        # cosh overflows past |Re y| ~ 710; sech^2 is below double tiny long
        # before that, so clamp the far tails to exactly 0
        big = np.abs(y.real) > 350.0
        s = np.zeros_like(y)
        s[~big] = 1.0 / np.cosh(y[~big])
        return -self.alpha * s * s


@dataclass(frozen=True)
class KhareMandal(PotentialSpec):
    zeta: float = 1.0
    M: float = 0.0

    def __post_init__(self):
        super().__post_init__()
        if self.zeta == 0:
            raise ValueError("zeta must be nonzero")

    def _value(self, w):
        if np.any(2.0 * np.abs(w.real) > _EXP_ARG_MAX / 2):
            raise OverflowError("cosh(2x)^2 exceeds double range at the given points")
        t = self.zeta * np.cosh(2.0 * w) - 1j * self.M
        return t * t


FAMILIES = {
    "morse-complex": MorseComplex,
    "morse-general": MorseGeneral,
    "ho-shifted": HarmonicShifted,
    "eckart-shifted": EckartShifted,
    "khare-mandal": KhareMandal,
}


def from_params(name: str, **params) -> PotentialSpec:
    """Build a spec from its catalog name and keyword parameters."""
    try:
        cls = FAMILIES[name]
    except KeyError:
        raise ValueError(
            f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}"
        ) from None
    return cls(**params)


def evaluate(spec: PotentialSpec, w):
    """V(w) at complex argument, scalar or array."""
    return spec.value(w)


def evaluate_on_grid(spec: PotentialSpec, w) -> np.ndarray:
    """Vectorized evaluate that names the first offending point on overflow."""
    pts = np.asarray(w, dtype=np.complex128)
    try:
        return np.asarray(spec.value(pts))
    except OverflowError:
        for p in pts.ravel():
            try:
                spec.value(complex(p))
            except OverflowError:
                raise OverflowError(
                    f"{type(spec).__name__} overflows double range at grid point "
                    f"{complex(p)}"
                ) from None
        raise


def pseudo_shift_angle(spec: PotentialSpec) -> float:
    """The shift angle theta with V(x + i*theta) = conj(V(x)) on the real line.

    Raises NoKnownShiftError for MorseGeneral parameters whose two exponential
    terms demand incompatible angles.
    """
    if isinstance(spec, MorseComplex):
        return 2.0 * math.atan2(spec.B, spec.A)
    if isinstance(spec, MorseGeneral):
        v1, v2 = spec.v1, spec.v2
        if v2 == 0:
            # only the e^{-2x} term constrains theta: theta = arg(V1) mod pi
            return _arg(v1)
        theta = 2.0 * _arg(v2)
        # the e^{-2x} term independently requires theta = arg(V1) mod pi;
        # reduce the mismatch to (-pi/2, pi/2] and compare angles directly
        delta = math.remainder(theta - _arg(v1), math.pi)
        if abs(delta) > 1e-12:
            raise NoKnownShiftError(
                f"the shift angles demanded by V1 and V2 differ by {abs(delta):.3e} "
                f"for {spec}"
            )
        return theta
    if isinstance(spec, (HarmonicShifted, EckartShifted)):
        return 2.0 * spec.gamma
    if isinstance(spec, KhareMandal):
        return math.pi / 2.0
    raise TypeError(f"unsupported spec type {type(spec).__name__}")


def _arg(v: complex) -> float:
    return math.atan2(v.imag, v.real)


def morse_effective_C(spec: PotentialSpec) -> complex:
    """V2/(2 sqrt(V1)) - 1/2, the parameter governing the Morse bound spectrum
    -(n - C)^2 for n < C.

    The square root takes the branch with Re > 0; if both branches have zero
    real part (V1 negative real) raises BranchAmbiguityError.
    """
    if not isinstance(spec, (MorseComplex, MorseGeneral)):
        raise TypeError(f"effective C is defined for Morse families, got {type(spec).__name__}")
    v1, v2 = spec.v1, spec.v2
    root = cmath.sqrt(v1)  # principal branch: Re >= 0
    if root.real == 0.0:
        raise BranchAmbiguityError(
            f"Re sqrt(V1) = 0 under both branches for V1 = {v1}"
        )
    return v2 / (2.0 * root) - 0.5


def real_imag_parts(spec: PotentialSpec, x_grid):
    """Pointwise (Re V, Im V) on a real grid, for plotting and diagnostics."""
    x = np.asarray(x_grid, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("grid must be finite")
    v = spec.value(x)
    v = np.asarray(v, dtype=np.complex128)
    return v.real.copy(), v.imag.copy()


def natural_domain(spec: PotentialSpec) -> tuple[float, float]:
    """Default truncation interval used by grids and quadrature defaults.

    Morse: [-4, 14], with the left edge pulled in if |V1| is so large that
    |V| would exceed 1e6 there. Shifted HO / Eckart: [-12, 12].
    Khare-Mandal: [-4, 4] (cosh^2 growth).
    """
    if isinstance(spec, (MorseComplex, MorseGeneral)):
        lim = 0.5 * math.log(max(abs(spec.v1), 1e-300) / 1e6)
        return (max(-4.0, lim), 14.0)
    if isinstance(spec, (HarmonicShifted, EckartShifted)):
        return (-12.0, 12.0)
    if isinstance(spec, KhareMandal):
        return (-4.0, 4.0)
    raise TypeError(f"unsupported spec type {type(spec).__name__}")
