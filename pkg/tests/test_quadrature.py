"""Tests for adaptive integration and the two Laguerre overlap-integral routes."""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pseudospec.quadrature import (
    NonConvergenceError,
    integrate_line,
    laguerre_overlap_exact,
    laguerre_overlap_quadrature,
)

# reference values computed at 50-digit working precision
SQRT_PI = 1.772453850905516027298
GAMMA_0_6 = 1.489192248812817102394


class TestIntegrateLine:
    def test_gaussian_full_line(self):
        res = integrate_line(lambda x: np.exp(-x * x), (-math.inf, math.inf))
        assert_allclose(res.value, SQRT_PI, rtol=1e-13)
        assert res.method == "tanh-sinh"
        assert res.evaluations > 0
        assert res.condition == 1.0
        assert res.trusted

    def test_halfline_gamma_six(self):
        res = integrate_line(lambda z: z**5 * np.exp(-z), (0.0, math.inf))
        assert_allclose(res.value, 120.0, rtol=1e-12)

    def test_left_halfline_exponential(self):
        res = integrate_line(lambda x: np.exp(x), (-math.inf, 0.0))
        assert_allclose(res.value, 1.0, rtol=1e-12)

    def test_finite_interval_sine(self):
        res = integrate_line(lambda x: np.sin(x), (0.0, math.pi))
        assert_allclose(res.value, 2.0, rtol=1e-13)

    def test_finite_endpoint_singularity(self):
        # x^(-1/2) is integrable at 0; accuracy there is limited by the
        # innermost representable abscissas, so ask for a modest tolerance
        res = integrate_line(lambda x: 1.0 / np.sqrt(x), (0.0, 1.0), tol=1e-9)
        assert_allclose(res.value, 2.0, atol=5e-8)

    def test_complex_integrand(self):
        res = integrate_line(
            lambda x: (1.0 + 2.0j) * np.exp(-x * x), (-math.inf, math.inf)
        )
        assert_allclose(res.value, (1.0 + 2.0j) * SQRT_PI, rtol=1e-13)

    def test_error_estimate_is_honest(self):
        res = integrate_line(lambda x: np.exp(-x * x), (-math.inf, math.inf))
        assert abs(res.value - SQRT_PI) <= max(res.abs_error_estimate, 1e-14)

    def test_gauss_legendre_method(self):
        res = integrate_line(
            lambda x: np.exp(-x * x),
            (-math.inf, math.inf),
            method="gauss-legendre",
        )
        assert_allclose(res.value, SQRT_PI, rtol=1e-13)
        assert res.method == "gauss-legendre"
        res2 = integrate_line(
            lambda z: z**5 * np.exp(-z), (0.0, math.inf), method="gauss-legendre"
        )
        assert_allclose(res2.value, 120.0, rtol=1e-11)

    def test_unknown_method_rejected(self):
        with pytest.raises(ValueError, match="method"):
            integrate_line(lambda x: x, (0.0, 1.0), method="romberg")

    def test_invalid_domain_rejected(self):
        with pytest.raises(ValueError, match="domain"):
            integrate_line(lambda x: x, (1.0, 1.0))
        with pytest.raises(ValueError, match="domain"):
            integrate_line(lambda x: x, (2.0, -1.0))

    def test_interior_jump_does_not_converge(self):
        cut = 1.0 / math.sqrt(2.0)
        with pytest.raises(NonConvergenceError) as excinfo:
            integrate_line(
                lambda x: np.where(x < cut, 1.0, 0.0), (0.0, 1.0), tol=1e-14
            )
        err = excinfo.value
        assert "tol=1e-14" in str(err)
        levels = [entry[0] for entry in err.trace]
        assert levels == list(range(13))
        last_level, last_value, last_err = err.trace[-1]
        assert abs(last_value - cut) < 1e-3
        assert math.isfinite(last_err)
        assert err.trace[0][2] == math.inf

    def test_non_finite_integrand_rejected(self):
        def bad(x):
            return np.where(np.abs(x - 0.5) < 0.2, np.nan, 1.0)

        with pytest.raises(ValueError, match="non-finite"):
            integrate_line(bad, (0.0, 1.0))


class TestOverlapQuadrature:
    def test_ground_state_is_gamma(self):
        res = laguerre_overlap_quadrature(0, 0, 3.0)
        assert_allclose(res.value, 120.0, rtol=1e-12)
        res_small = laguerre_overlap_quadrature(0, 0, 0.3)
        assert_allclose(res_small.value, GAMMA_0_6, rtol=1e-12)

    def test_adjacent_pair_cancels(self):
        res = laguerre_overlap_quadrature(0, 1, 3.0)
        assert abs(res.value) <= 1e-11

    def test_diagonal_closed_forms(self):
        # Gamma(2c-2n) (2c-2n)_n^2 / n! evaluated by hand for each case
        for n, c, want in [
            (1, 3.0, 30.0),
            (2, 4.0, 90.0),
            (3, 4.0, 10.0),
            (4, 5.5, 70.0),
            (5, 8.0, 55440.0),
        ]:
            res = laguerre_overlap_quadrature(n, n, c)
            assert_allclose(res.value, want, rtol=1e-12, err_msg=f"n={n}, c={c}")

    def test_symmetric_in_m_n(self):
        # symmetry holds to 1e-12 in the integral's natural units (the
        # geometric mean of the diagonals); raw off-diagonals at large c sit
        # on ~1e12 of integrand mass, so absolute comparison is meaningless
        for m, n, c in [(2, 4, 5.5), (0, 1, 3.0), (1, 3, 8.0), (0, 5, 8.0)]:
            a = laguerre_overlap_quadrature(m, n, c).value
            b = laguerre_overlap_quadrature(n, m, c).value
            dm = abs(laguerre_overlap_quadrature(m, m, c).value)
            dn = abs(laguerre_overlap_quadrature(n, n, c).value)
            scale = max(1.0, math.sqrt(dm * dn))
            assert abs(a - b) <= 1e-12 * scale

    def test_gauss_legendre_route(self):
        res = laguerre_overlap_quadrature(2, 2, 4.0, method="gauss-legendre")
        assert_allclose(res.value, 90.0, rtol=1e-11)
        assert res.method == "gauss-legendre"

    def test_non_integrable_rejected(self):
        with pytest.raises(ValueError, match="integrable"):
            laguerre_overlap_quadrature(5, 5, 3.0)
        with pytest.raises(ValueError, match="integrable"):
            laguerre_overlap_quadrature(5, 4, 3.0)

    def test_bad_indices_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            laguerre_overlap_quadrature(-1, 0, 3.0)
        with pytest.raises(ValueError, match="non-negative"):
            laguerre_overlap_quadrature(0, 2.5, 3.0)


class TestOverlapExact:
    def test_single_term_is_gamma(self):
        from pseudospec.special import gamma

        for c in (3.0, 4.0, 5.5, 8.0):
            res = laguerre_overlap_exact(0, 0, c)
            assert_allclose(res.value, gamma(2.0 * c), rtol=1e-13)
            assert res.method == "gamma-expansion"
            assert res.evaluations == 0

    def test_small_case_exact_zero(self):
        # 15 Gamma(15) and Gamma(16) are both exactly representable, so the
        # two-term sum cancels to exactly zero
        res = laguerre_overlap_exact(1, 0, 3.0)
        assert res.value == 0.0
        assert res.condition == math.inf
        assert not res.trusted

    def test_well_conditioned_diagonal(self):
        res = laguerre_overlap_exact(5, 5, 8.0)
        assert res.trusted
        assert res.condition < 1e6
        assert_allclose(res.value, 55440.0, rtol=1e-10)
        assert abs(res.value - 55440.0) <= res.abs_error_estimate

    def test_cancellation_flagged_untrusted(self):
        # the true value is 0; rounding noise from ~1e11-sized terms survives,
        # and the error estimate must cover it
        res = laguerre_overlap_exact(2, 3, 8.0)
        assert not res.trusted
        assert res.condition > 1e12
        assert abs(res.value) <= res.abs_error_estimate

    def test_non_integrable_rejected(self):
        with pytest.raises(ValueError, match="integrable"):
            laguerre_overlap_exact(5, 5, 3.0)


class TestTwoRouteAgreement:
    # representative sample; the full grid runs in the acceptance suite
    PAIRS = [
        (0, 0, 3.0),
        (1, 1, 4.0),
        (2, 1, 4.0),
        (3, 3, 4.0),
        (3, 1, 5.0),
        (4, 2, 5.5),
        (5, 5, 8.0),
        (0, 5, 8.0),
    ]

    def test_routes_agree(self):
        for m, n, c in self.PAIRS:
            quad = laguerre_overlap_quadrature(m, n, c)
            exact = laguerre_overlap_exact(m, n, c)
            dm = abs(laguerre_overlap_quadrature(m, m, c).value)
            dn = abs(laguerre_overlap_quadrature(n, n, c).value)
            scale = max(1.0, abs(quad.value), abs(exact.value), math.sqrt(dm * dn))
            assert abs(quad.value - exact.value) <= 1e-10 * scale, (m, n, c)
