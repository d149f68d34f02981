import numpy as np
import pytest

from susypiv.oscillator import Frequency


@pytest.fixture
def freq6():
    return Frequency(np.pi / 6)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def fd1(f, z, h=1e-3):
    """First derivative oracle: 5-point central step plus one Richardson level.

    Steps along the real direction, which is enough for the analytic
    functions under test.
    """

    def stencil(hh):
        return (f(z - 2 * hh) - 8 * f(z - hh) + 8 * f(z + hh) - f(z + 2 * hh)) / (12 * hh)

    return (16 * stencil(h / 2) - stencil(h)) / 15


def fd2(f, z, h=1e-3):
    """Second derivative oracle, same construction."""

    def stencil(hh):
        return (
            -f(z - 2 * hh) + 16 * f(z - hh) - 30 * f(z) + 16 * f(z + hh) - f(z + 2 * hh)
        ) / (12 * hh * hh)

    return (16 * stencil(h / 2) - stencil(h)) / 15
