import math

import numpy as np
import pytest
import scipy.special as sp

from conftest import fd1
from susypiv.errors import NotConverged, PoleAtB
from susypiv.specfun import (
    DEFAULT_CONTROL,
    SeriesControl,
    erf_c,
    hermite,
    hyp1f1,
    hyp1f1_deriv,
    hyp1f1_info,
)


class TestKummer:
    def test_empty_sum(self):
        for a, b in [(0.3 + 1j, 0.7), (-2.0, 1.5), (5.0, 0.25 - 0.5j)]:
            assert hyp1f1(a, b, 0.0) == 1.0

    def test_exponential_reduction(self):
        z = 1 + 1j
        assert abs(hyp1f1(1.0, 1.0, z) - np.exp(z)) < 1e-14 * abs(np.exp(z))

    def test_terminating_polynomial(self):
        z = 0.8 - 2.3j
        assert hyp1f1(-1.0, 0.5, z) == 1.0 - 2.0 * z

    def test_kummer_transformation(self, rng):
        # both sides by independent series summation
        worst = 0.0
        for _ in range(200):
            a = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            b = complex(rng.uniform(0.3, 4.3), rng.uniform(-4, 4))
            z = complex(rng.uniform(-6, 6), rng.uniform(-6, 6))
            lhs = hyp1f1(a, b, z)
            rhs = np.exp(z) * hyp1f1(b - a, b, -z)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
        assert worst < 1e-8

    def test_pole_at_b(self):
        with pytest.raises(PoleAtB):
            hyp1f1(0.5, -1.0, 0.3)

    def test_pole_avoided_by_termination(self):
        z = 0.7 - 0.2j
        val = hyp1f1(-2.0, -2.0, z)
        assert abs(val - (1 + z + z**2 / 2)) < 1e-15

    def test_not_converged(self):
        with pytest.raises(NotConverged):
            hyp1f1(0.5, 1.5, 40.0, SeriesControl(max_terms=10))

    def test_array_argument(self):
        z = np.array([0.0, 1.0, 1j])
        vals = hyp1f1(1.0, 1.0, z)
        np.testing.assert_allclose(vals, np.exp(z), rtol=1e-14)

    def test_control_validation(self):
        with pytest.raises(ValueError):
            SeriesControl(max_terms=0)
        with pytest.raises(ValueError):
            SeriesControl(rel_tol=1.5)
        with pytest.raises(ValueError):
            SeriesControl(consecutive_small=1)

    def test_error_estimate_covers_truth(self):
        # cancellation-heavy point; truth via the Kummer-transformed route
        val, err, terms, max_term = hyp1f1_info(0.5, 1.5, -20.0 + 5j)
        other = np.exp(-20.0 + 5j) * hyp1f1(1.0, 1.5, 20.0 - 5j)
        assert abs(val - other) < max(err, 1e-15 * abs(val))
        assert max_term > abs(val)  # the trust-region diagnostic is meaningful


class TestKummerDerivative:
    def test_order_zero(self):
        z = 0.4 + 0.9j
        assert hyp1f1_deriv(0.3, 0.7, z, 0) == hyp1f1(0.3, 0.7, z)

    def test_first_derivative_at_origin(self):
        a, b = 0.3 - 1.1j, 0.7 + 0.2j
        assert abs(hyp1f1_deriv(a, b, 0.0, 1) - a / b) < 1e-15

    def test_against_finite_differences(self, rng):
        worst = 0.0
        for _ in range(50):
            a = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            b = complex(rng.uniform(0.4, 3), rng.uniform(-1, 1))
            z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            exact = hyp1f1_deriv(a, b, z, 1)
            approx = fd1(lambda w: hyp1f1(a, b, w), z)
            worst = max(worst, abs(exact - approx) / max(1.0, abs(exact)))
        assert worst < 1e-6

    def test_vanishing_high_order_of_polynomial(self):
        # derivative order beyond the terminating degree is exactly zero
        assert hyp1f1_deriv(-1.0, 0.5, 2.0, 2) == 0.0


class TestHermite:
    def test_base_case(self):
        for z in (0.0, 1.3, 2 - 1j):
            assert hermite(0, z) == 1.0

    def test_h2_frozen(self):
        assert hermite(2, 1 + 1j) == -2 + 8j

    def test_derivative_identity(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 9))
            z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            exact = 2 * n * hermite(n - 1, z)
            approx = fd1(lambda w: hermite(n, w), z)
            assert abs(exact - approx) <= 1e-6 * max(1.0, abs(exact))

    @pytest.mark.parametrize("n", range(11))
    def test_exact_integer_coefficients(self, n):
        # explicit monomial expansion with exact integer arithmetic
        coeffs = {}
        for m in range(n // 2 + 1):
            power = n - 2 * m
            coeffs[power] = (-1) ** m * math.factorial(n) // (
                math.factorial(m) * math.factorial(power)
            ) * 2**power
        for z in (2, -3, 5):
            exact = sum(c * z**p for p, c in coeffs.items())
            assert hermite(n, complex(z)) == exact


class TestErf:
    def test_zero(self):
        assert erf_c(0.0) == 0.0

    def test_parity(self):
        z = 0.7 + 0.3j
        assert abs(erf_c(-z) + erf_c(z)) < 1e-15

    def test_against_independent_taylor(self):
        # (2/sqrt(pi)) * integral of the Gaussian Taylor series over [0, 1]
        acc, term = 0.0, 1.0
        for m in range(60):
            acc += term / (2 * m + 1)
            term *= -1.0 / (m + 1)
        oracle = 2.0 / math.sqrt(math.pi) * acc
        assert abs(erf_c(1.0) - oracle) < 1e-10

    def test_real_axis_stays_real(self):
        x = np.linspace(-6.0, 6.0, 41)
        assert np.max(np.abs(erf_c(x.astype(complex)).imag)) < 1e-12

    def test_route_crossover_consistency(self, rng):
        # series route vs Faddeeva route on the shared annulus
        for _ in range(20):
            r = rng.uniform(4.0, 6.3)
            phi = rng.uniform(0, 2 * np.pi)
            z = r * np.exp(1j * phi)
            series = (2.0 / np.sqrt(np.pi)) * z * hyp1f1(0.5, 1.5, -z * z)
            assert abs(series - sp.erf(z)) < 1e-10 * max(1.0, abs(series))

    def test_large_argument_uses_stable_route(self):
        z = 9.0 + 3.0j
        assert abs(erf_c(z) - sp.erf(z)) == 0.0
