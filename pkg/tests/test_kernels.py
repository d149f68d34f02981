"""Backend equivalence and an independent high-precision oracle."""

import numpy as np
import pytest

from susypiv import _kernels_py as fallback

compiled = pytest.importorskip("susypiv._kernels", reason="compiled kernels not built")
mpmath = pytest.importorskip("mpmath")


def _random_cases(n, zmax, seed=3):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        a = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        b = complex(rng.uniform(0.4, 3), rng.uniform(-1, 1))
        z = rng.uniform(-zmax, zmax, 8) + 1j * rng.uniform(-zmax, zmax, 8)
        yield a, b, z


def test_backends_agree():
    for a, b, z in _random_cases(12, 25.0):
        vc, sc, tc, mc = compiled.kummer_series(a, b, z, 2000, 1e-14, 3)
        vp, sp_, tp, mp_ = fallback.kummer_series(a, b, z, 2000, 1e-14, 3)
        assert (sc == sp_).all()
        assert np.max(np.abs(vc - vp) / np.abs(vp)) < 1e-12


def test_against_mpmath():
    mpmath.mp.dps = 40
    for a, b, z in _random_cases(6, 25.0, seed=11):
        for kern in (compiled, fallback):
            vals, status, _, _ = kern.kummer_series(a, b, z, 2000, 1e-14, 3)
            assert (status == 0).all()
            for zi, vi in zip(z, vals):
                ref = complex(mpmath.hyp1f1(mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(zi)))
                assert abs(vi - ref) / abs(ref) < 1e-13


def test_terminating_polynomial_is_exact():
    z = np.array([2 + 1j, -3.5j, 0.25])
    for kern in (compiled, fallback):
        vals, status, terms, _ = kern.kummer_series(-1.0, 0.5, z, 2000, 1e-14, 3)
        assert (status == 0).all()
        np.testing.assert_array_equal(vals, 1.0 - 2.0 * z)


def test_numerator_zero_before_denominator_pole():
    # a = b = -2: the series must terminate without touching the (b)_m zero
    z = np.array([0.7 - 0.2j])
    for kern in (compiled, fallback):
        vals, status, _, _ = kern.kummer_series(-2.0, -2.0, z, 2000, 1e-14, 3)
        assert status[0] == 0
        assert abs(vals[0] - (1 + z[0] + z[0] ** 2 / 2)) < 1e-15


def test_not_converged_status():
    z = np.array([40.0 + 0j])
    for kern in (compiled, fallback):
        _, status, _, _ = kern.kummer_series(0.5, 1.5, z, 10, 1e-14, 3)
        assert status[0] == 1


def test_hermite_backends_agree():
    rng = np.random.default_rng(5)
    z = rng.uniform(-4, 4, 32) + 1j * rng.uniform(-4, 4, 32)
    for n in (0, 1, 2, 7, 12):
        np.testing.assert_allclose(
            compiled.hermite_values(n, z), fallback.hermite_values(n, z), rtol=1e-13
        )


def test_cancellation_accuracy():
    # classic stress: summing exp(-25)-type alternating series head on
    mpmath.mp.dps = 40
    z = np.array([-25.0 + 0j, -20.0 + 12.0j])
    for kern in (compiled, fallback):
        vals, status, _, max_mag = kern.kummer_series(0.5, 1.5, z, 2000, 1e-14, 3)
        assert (status == 0).all()
        assert max_mag[0] > 1e7  # the cancellation is real
        for zi, vi in zip(z, vals):
            ref = complex(mpmath.hyp1f1(0.5, 1.5, mpmath.mpc(zi)))
            assert abs(vi - ref) / abs(ref) < 1e-13
