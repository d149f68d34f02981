"""Numpy fallback for the hot series kernels.

Same contract as the compiled module susypiv._kernels: a Kummer series
summed in double-double (~31 significant digits) and the Hermite recurrence,
both batched over the argument array.  The extra precision is not optional:
summing 1F1 at complex argument z loses roughly |z|*(1 - cos(arg z)) / ln(10)
digits to cancellation, which already exceeds double precision for the
|z| <= 25 windows the self-checks run on.

Double-double values are (hi, lo) pairs of float64 arrays; complex
double-double values are ((re_hi, re_lo), (im_hi, im_lo)).  Error-free
transforms use Dekker splitting since numpy exposes no fma.
"""

import numpy as np

BACKEND = "python"

STATUS_OK = 0
STATUS_NOT_CONVERGED = 1
STATUS_NON_FINITE = 2

_SPLITTER = 134217729.0  # 2**27 + 1, valid while |a| < ~1e292


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    err = b - (s - a)
    return s, err


def _two_prod(a, b):
    p = a * b
    ta = _SPLITTER * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLITTER * b
    bhi = tb - (tb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    e = e + x[1] + y[1]
    return _quick_two_sum(s, e)


def _dd_neg(x):
    return (-x[0], -x[1])


def _dd_sub(x, y):
    return _dd_add(x, _dd_neg(y))


def _dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    e = e + (x[0] * y[1] + x[1] * y[0])
    return _quick_two_sum(p, e)


def _dd_div(x, y):
    q1 = x[0] / y[0]
    r = _dd_sub(x, _dd_mul(y, (q1, np.zeros_like(q1))))
    q2 = r[0] / y[0]
    r = _dd_sub(r, _dd_mul(y, (q2, np.zeros_like(q2))))
    q3 = r[0] / y[0]
    s, e = _quick_two_sum(q1, q2)
    return _dd_add((s, e), (q3, np.zeros_like(q3)))


def _cdd_from_complex(z):
    z = np.asarray(z, dtype=np.complex128)
    zero = np.zeros(z.shape)
    return ((z.real.astype(np.float64), zero.copy()), (z.imag.astype(np.float64), zero.copy()))


def _cdd_add(x, y):
    return (_dd_add(x[0], y[0]), _dd_add(x[1], y[1]))


def _cdd_mul(x, y):
    re = _dd_sub(_dd_mul(x[0], y[0]), _dd_mul(x[1], y[1]))
    im = _dd_add(_dd_mul(x[0], y[1]), _dd_mul(x[1], y[0]))
    return (re, im)


def _cdd_div(x, y):
    den = _dd_add(_dd_mul(y[0], y[0]), _dd_mul(y[1], y[1]))
    re = _dd_add(_dd_mul(x[0], y[0]), _dd_mul(x[1], y[1]))
    im = _dd_sub(_dd_mul(x[1], y[0]), _dd_mul(x[0], y[1]))
    return (_dd_div(re, den), _dd_div(im, den))


def _cdd_where(mask, x, y):
    out = []
    for xc, yc in zip(x, y):
        out.append((np.where(mask, xc[0], yc[0]), np.where(mask, xc[1], yc[1])))
    return tuple(out)


def _cdd_scalar_shift(w, m):
    """Complex scalar w plus integer m as an exact complex double-double."""
    hi, lo = _two_sum(np.float64(w.real), np.float64(m))
    return ((hi, lo), (np.float64(w.imag), np.float64(0.0)))


def kummer_series(a, b, z, max_terms, rel_tol, consecutive_small):
    """Sum 1F1(a, b; z) termwise over an array of arguments.

    Stops a lane once `consecutive_small` successive terms fall below
    rel_tol * |partial sum|.  Returns (values, status, terms, max_mag) where
    max_mag is the largest term magnitude seen (the cancellation budget:
    the achievable absolute accuracy is about 2**-104 * max_mag).
    """
    a = complex(a)
    b = complex(b)
    z = np.ascontiguousarray(z, dtype=np.complex128)
    n = z.shape[0]

    zc = _cdd_from_complex(z)
    one = np.ones(n)
    zero = np.zeros(n)
    term = ((one.copy(), zero.copy()), (zero.copy(), zero.copy()))
    total = ((one.copy(), zero.copy()), (zero.copy(), zero.copy()))

    done = np.zeros(n, dtype=bool)
    status = np.zeros(n, dtype=np.uint8)
    terms_used = np.ones(n, dtype=np.int64)
    max_mag = np.ones(n)
    small_count = np.zeros(n, dtype=np.int64)

    for m in range(max_terms - 1):
        if a + m == 0:
            # numerator Pochhammer hit zero: the series is an exact polynomial
            status[~done] = STATUS_OK
            done[:] = True
            break
        a_m = _cdd_scalar_shift(a, m)
        b_m = _cdd_scalar_shift(b, m)
        bc_a = ((np.broadcast_to(a_m[0][0], n), np.broadcast_to(a_m[0][1], n)),
                (np.broadcast_to(a_m[1][0], n), np.broadcast_to(a_m[1][1], n)))
        bc_b = ((np.broadcast_to(b_m[0][0], n), np.broadcast_to(b_m[0][1], n)),
                (np.broadcast_to(b_m[1][0], n), np.broadcast_to(b_m[1][1], n)))

        nxt = _cdd_mul(term, bc_a)
        nxt = _cdd_div(nxt, bc_b)
        nxt = _cdd_mul(nxt, zc)
        inv = ((np.full(n, float(m + 1)), zero), (zero, zero))
        nxt = _cdd_div(nxt, inv)
        term = _cdd_where(done, term, nxt)

        new_total = _cdd_add(total, nxt)
        total = _cdd_where(done, total, new_total)

        mag = np.hypot(nxt[0][0], nxt[1][0])
        tot_mag = np.hypot(total[0][0], total[1][0])
        active = ~done

        bad = active & ~np.isfinite(mag)
        status[bad] = STATUS_NON_FINITE
        done |= bad

        np.maximum(max_mag, np.where(active, mag, 0.0), out=max_mag)
        terms_used[active] = m + 2

        small = mag <= rel_tol * np.maximum(tot_mag, np.finfo(float).tiny)
        small_count = np.where(active & small, small_count + 1, np.where(active, 0, small_count))
        terminated = active & (mag == 0.0)
        converged = active & ((small_count >= consecutive_small) | terminated)
        done |= converged
        if done.all():
            break

    status[~done] = STATUS_NOT_CONVERGED
    values = (total[0][0] + total[0][1]) + 1j * (total[1][0] + total[1][1])
    return values, status, terms_used, max_mag


def hermite_values(n, z):
    """Hermite polynomial of complex argument by the three-term recurrence."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    if n == 0:
        return np.ones_like(z)
    h_prev = np.ones_like(z)
    h = 2.0 * z
    for k in range(1, n):
        h_prev, h = h, 2.0 * z * h - 2.0 * k * h_prev
    return h
