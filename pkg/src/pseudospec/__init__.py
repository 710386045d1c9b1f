"""Complex one-dimensional potentials with real spectra: closed-form and
grid eigensolvers, imaginary-shift conjugation checks, and orthogonality
integrals, with a reproducible CLI."""

from .potentials import (
    BranchAmbiguityError,
    EckartShifted,
    FAMILIES,
    HarmonicShifted,
    KhareMandal,
    MorseComplex,
    MorseGeneral,
    NoKnownShiftError,
    PotentialSpec,
    evaluate,
    from_params,
    morse_effective_C,
    natural_domain,
    pseudo_shift_angle,
    real_imag_parts,
)
from .quadrature import (
    IntegralResult,
    NonConvergenceError,
    OrthogonalityReport,
    eta_orthogonality_matrix,
    integrate_line,
    laguerre_overlap_exact,
    laguerre_overlap_quadrature,
    pt_orthogonality_matrix,
)
from .shiftop import (
    Gaussian,
    GaussianTimesPoly,
    PseudoHermVerdict,
    check_pseudo_hermitian,
    hermiticity_defect,
    morse_variable_conjugation,
    shift_polynomial,
)
from .special import (
    GammaPoleError,
    PolyCoeffs,
    SeriesConvergenceError,
    gamma,
    hyp1f1,
    laguerre,
    laguerre_coeffs,
)
from .spectra import (
    BoundState,
    NonRealParameterError,
    eckart_spectrum,
    ho_spectrum,
    morse_spectrum,
    morse_wavefunction,
)
from .backend import available_backends, current_backend, set_backend
from .gridsolver import (
    Discretization,
    EigenConvergenceError,
    SpectrumResult,
    build_hamiltonian,
    convergence_study,
    eig_general,
    imag_tol,
    solve_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "BranchAmbiguityError",
    "EckartShifted",
    "FAMILIES",
    "HarmonicShifted",
    "KhareMandal",
    "MorseComplex",
    "MorseGeneral",
    "NoKnownShiftError",
    "PotentialSpec",
    "evaluate",
    "from_params",
    "morse_effective_C",
    "natural_domain",
    "pseudo_shift_angle",
    "real_imag_parts",
    "IntegralResult",
    "NonConvergenceError",
    "OrthogonalityReport",
    "eta_orthogonality_matrix",
    "integrate_line",
    "laguerre_overlap_exact",
    "laguerre_overlap_quadrature",
    "pt_orthogonality_matrix",
    "Gaussian",
    "GaussianTimesPoly",
    "PseudoHermVerdict",
    "check_pseudo_hermitian",
    "hermiticity_defect",
    "morse_variable_conjugation",
    "shift_polynomial",
    "GammaPoleError",
    "PolyCoeffs",
    "SeriesConvergenceError",
    "gamma",
    "hyp1f1",
    "laguerre",
    "laguerre_coeffs",
    "BoundState",
    "NonRealParameterError",
    "eckart_spectrum",
    "ho_spectrum",
    "morse_spectrum",
    "morse_wavefunction",
    "available_backends",
    "current_backend",
    "set_backend",
    "Discretization",
    "EigenConvergenceError",
    "SpectrumResult",
    "build_hamiltonian",
    "convergence_study",
    "eig_general",
    "imag_tol",
    "solve_spectrum",
    "__version__",
]
