"""Hand-derived partner potentials and states used as regression targets.

Each formula here is an independent algebraic route to something the
Wronskian engine also computes; agreement between the two routes is part of
the verification suite.  All Hermite arguments are sqrt(omega) x.
"""

import numpy as np

from .oscillator import Frequency
from .specfun import erf_c, hermite

_SQRT_PI = np.sqrt(np.pi)


def bound_even_partner(j: int, freq: Frequency, x):
    """First-order partner from the even bound seed H_{2j}; j = 0 is a pure shift."""
    omega = freq.omega
    xf = np.asarray(x, dtype=float)
    base = 0.5 * omega**2 * xf**2 + omega
    if j == 0:
        return base + np.zeros_like(xf)
    y = freq.sqrt_omega * xf
    h2j = hermite(2 * j, y)
    ratio_1 = hermite(2 * j - 1, y) / h2j
    bracket = -2.0 * j * ratio_1**2
    if j >= 1:
        bracket = bracket + (2 * j - 1) * hermite(2 * j - 2, y) / h2j
    return base - 8.0 * j * omega * bracket


def bound_odd_partner(j: int, freq: Frequency, x):
    """First-order partner from the odd bound seed H_{2j+1}; singular at x = 0."""
    omega = freq.omega
    xf = np.asarray(x, dtype=float)
    y = freq.sqrt_omega * xf
    h = hermite(2 * j + 1, y)
    bracket = -(2 * j + 1) * (hermite(2 * j, y) / h) ** 2
    if j >= 1:
        bracket = bracket + 2 * j * hermite(2 * j - 1, y) / h
    return 0.5 * omega**2 * xf**2 + omega - 4.0 * (2 * j + 1) * omega * bracket


def ams_partner(nu, freq: Frequency, x):
    """Displacement-isospectral family from the below-ground-level seed.

    V = omega^2 x^2/2 - omega - d/dx [N/D] with N = (2 nu/sqrt(pi)) e^{-omega x^2}
    and D = 1 + (nu/sqrt(omega)) erf(sqrt(omega) x); note D' = N, so the
    derivative expands to N'/D - (N/D)^2 with N' = -2 omega x N.
    """
    omega = freq.omega
    xf = np.asarray(x, dtype=float)
    n_term = (2.0 * nu / _SQRT_PI) * np.exp(-omega * xf**2)
    d_term = 1.0 + (nu / freq.sqrt_omega) * erf_c(freq.sqrt_omega * xf)
    frac = n_term / d_term
    return 0.5 * omega**2 * xf**2 - omega - (-2.0 * omega * xf * frac - frac**2)


def bound_even_transformed(j: int, n: int, freq: Frequency, x):
    """Partner eigenstate (up to a constant) for the even bound seed, n != 2j."""
    xf = np.asarray(x, dtype=float)
    y = freq.sqrt_omega * xf
    gauss = np.exp(-0.5 * freq.omega * xf**2)
    lead = 4.0 * j * (hermite(2 * j - 1, y) / hermite(2 * j, y)) * hermite(n, y) if j >= 1 else 0.0
    tail = 2.0 * n * hermite(n - 1, y) if n >= 1 else 0.0
    return (lead - tail) * gauss


def bound_odd_transformed(j: int, n: int, freq: Frequency, x):
    """Half-line partner eigenstate (label n, energy (2n + 3/2) omega), n != j."""
    xf = np.asarray(x, dtype=float)
    y = freq.sqrt_omega * xf
    gauss = np.exp(-0.5 * freq.omega * xf**2)
    lead = (4 * j + 2) * (hermite(2 * j, y) / hermite(2 * j + 1, y)) * hermite(2 * n + 1, y)
    return (lead - (4 * n + 2) * hermite(2 * n, y)) * gauss


def connected_pair_wronskian(u, du, epsilon1, freq: Frequency, x):
    """Wronskian of (u, a^- u) up to its constant factor 1/sqrt(2)."""
    omega = freq.omega
    xf = np.asarray(x, dtype=float)
    return (omega**2 * xf**2 + omega - 2.0 * epsilon1) * u**2 - du**2


def second_order_partner(u, du, epsilon1, freq: Frequency, x):
    """k = 2 partner potential from the connected-pair Wronskian, analytically.

    W' and W'' follow from u'' = (omega^2 x^2 - 2 eps) u, giving a route that
    never touches the determinant machinery.
    """
    omega = freq.omega
    xf = np.asarray(x, dtype=float)
    w = connected_pair_wronskian(u, du, epsilon1, freq, x)
    dw = 2.0 * omega**2 * xf * u**2 + 2.0 * omega * u * du
    d2w = (
        2.0 * omega**2 * u**2
        + 4.0 * omega**2 * xf * u * du
        + 2.0 * omega * du**2
        + 2.0 * omega * (omega**2 * xf**2 - 2.0 * epsilon1) * u**2
    )
    return 0.5 * omega**2 * xf**2 - d2w / w + (dw / w) ** 2
