"""Complex-argument special functions backing every seed solution.

All evaluation funnels through the dd series kernel (compiled when
available).  The Kummer function keeps the textbook series semantics: exact
terminating polynomial for non-positive-integer numerator parameter, a
stopping rule controlled by SeriesControl otherwise, and explicit errors for
the denominator pole and non-convergence.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.special as sp

from ._backend import kernels
from .errors import NotConverged, PoleAtB

# Beyond this |z|^2 the direct erf series costs more accuracy than the
# Faddeeva-based evaluation; both routes overlap on a wide annulus and are
# cross-checked in the test suite.
ERF_SERIES_MAX_ZSQ = 40.0

_DD_EPS = 2.0 ** -104  # accumulator precision of the series kernel


@dataclass(frozen=True)
class SeriesControl:
    """Stopping policy for the Kummer series.

    The sum stops once `consecutive_small` successive terms are below
    rel_tol * |partial sum|; a single small term is not trusted because
    complex-phase cancellation makes individual terms dip spuriously.
    """

    max_terms: int = 2000
    rel_tol: float = 1e-14
    consecutive_small: int = 3

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.consecutive_small < 2:
            raise ValueError("consecutive_small must be >= 2")


DEFAULT_CONTROL = SeriesControl()


class KummerInfo(NamedTuple):
    value: complex
    error_estimate: float
    terms: int
    max_term: float


def _is_nonpositive_integer(w, tol: float = 0.0) -> bool:
    w = complex(w)
    if abs(w.imag) > tol:
        return False
    r = round(w.real)
    return r <= 0 and abs(w.real - r) <= tol


def _as_points(x):
    """Promote scalar-or-array input to a 1-d array; remember the shape."""
    arr = np.asarray(x)
    scalar = arr.ndim == 0
    return np.atleast_1d(arr), scalar, arr.shape


def _check_admissible(a, b):
    if _is_nonpositive_integer(b):
        terminates_first = _is_nonpositive_integer(a) and (-a.real) <= (-complex(b).real)
        if not terminates_first:
            raise PoleAtB(f"1F1 denominator parameter b={b} is a non-positive integer")


def _kummer(a, b, z, ctl: SeriesControl):
    pts, scalar, shape = _as_points(np.asarray(z, dtype=np.complex128))
    values, status, terms, max_mag = kernels.kummer_series(
        complex(a), complex(b), pts.ravel(), ctl.max_terms, ctl.rel_tol, ctl.consecutive_small
    )
    if (status != 0).any():
        bad = pts.ravel()[status != 0]
        raise NotConverged(
            f"1F1({a}, {b}; z) did not meet the stopping rule within "
            f"{ctl.max_terms} terms at z={bad[0]} "
            "(shrink |z| or evaluate the alternate seed branch)"
        )
    values = values.reshape(shape) if not scalar else values[0]
    return values, terms, max_mag


def hyp1f1(a, b, z, ctl: SeriesControl = DEFAULT_CONTROL):
    """Kummer confluent hypergeometric function 1F1(a, b; z), complex args.

    `z` may be a scalar or an ndarray.  Raises PoleAtB when b is a
    non-positive integer and the series does not terminate first, and
    NotConverged when the stopping rule is not met within ctl.max_terms.
    """
    a = complex(a)
    b = complex(b)
    _check_admissible(a, b)
    values, _, _ = _kummer(a, b, z, ctl)
    return values


def hyp1f1_info(a, b, z, ctl: SeriesControl = DEFAULT_CONTROL) -> KummerInfo:
    """hyp1f1 at a single point plus an absolute-error estimate.

    The estimate combines the truncation bound implied by the stopping rule
    with the cancellation floor 2**-104 * max|term|; it is trustworthy while
    the floor stays below rel_tol * |value| (the series trust region).
    """
    a = complex(a)
    b = complex(b)
    _check_admissible(a, b)
    values, terms, max_mag = _kummer(a, b, complex(z), ctl)
    value = complex(values)
    err = ctl.rel_tol * abs(value) + _DD_EPS * float(max_mag[0]) * np.sqrt(float(terms[0]))
    return KummerInfo(value, float(err), int(terms[0]), float(max_mag[0]))


def pochhammer(w, m: int) -> complex:
    """Rising factorial (w)_m for small non-negative integer m."""
    out = complex(1.0)
    w = complex(w)
    for i in range(m):
        out *= w + i
    return out


def hyp1f1_deriv(a, b, z, m: int, ctl: SeriesControl = DEFAULT_CONTROL):
    """m-th derivative of 1F1 in z: (a)_m/(b)_m * 1F1(a+m, b+m; z)."""
    if m < 0:
        raise ValueError("derivative order must be non-negative")
    if m == 0:
        return hyp1f1(a, b, z, ctl)
    num = pochhammer(a, m)
    den = pochhammer(b, m)
    if den == 0:
        raise PoleAtB(f"(b)_{m} vanishes for b={b}")
    if num == 0:
        pts, scalar, shape = _as_points(np.asarray(z, dtype=np.complex128))
        zeros = np.zeros(shape, dtype=np.complex128)
        return complex(0.0) if scalar else zeros
    return (num / den) * hyp1f1(complex(a) + m, complex(b) + m, z, ctl)


def hermite(n: int, z):
    """Physicists' Hermite polynomial H_n at complex argument, exact recurrence."""
    if n < 0:
        raise ValueError("Hermite order must be non-negative")
    pts, scalar, shape = _as_points(np.asarray(z, dtype=np.complex128))
    values = kernels.hermite_values(n, pts.ravel()).reshape(shape)
    return complex(values) if scalar else values


def erf_c(z, ctl: SeriesControl = DEFAULT_CONTROL):
    """Error function of complex argument.

    On |z|^2 <= ERF_SERIES_MAX_ZSQ this is the defining odd series
    (2z/sqrt(pi)) * 1F1(1/2, 3/2; -z^2); beyond, the Faddeeva-based scipy
    evaluation takes over (the series route would burn its precision budget
    on cancellation there).
    """
    pts, scalar, shape = _as_points(np.asarray(z, dtype=np.complex128))
    zsq = pts * pts
    out = np.empty_like(pts)
    near = np.abs(zsq) <= ERF_SERIES_MAX_ZSQ
    if near.any():
        series = hyp1f1(0.5, 1.5, -zsq[near], ctl)
        out[near] = (2.0 / np.sqrt(np.pi)) * pts[near] * series
    if (~near).any():
        out[~near] = sp.erf(pts[~near])
    out = out.reshape(shape)
    return complex(out) if scalar else out
