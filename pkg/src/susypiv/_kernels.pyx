# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled series kernels: double-double Kummer sum and Hermite recurrence.

Twin of susypiv._kernels_py with identical call signatures and status codes.
Error-free products use the C99 fma; the term recurrence and accumulator run
entirely in double-double so the cancellation loss of the 1F1 sum at complex
argument stays ~2**-104 * max|term| instead of ~2**-52 * max|term|.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fma, hypot, isfinite

BACKEND = "compiled"

STATUS_OK = 0
STATUS_NOT_CONVERGED = 1
STATUS_NON_FINITE = 2

cdef int _OK = 0
cdef int _NOT_CONVERGED = 1
cdef int _NON_FINITE = 2


cdef struct dd:
    double hi
    double lo


cdef struct cdd:
    dd re
    dd im


cdef inline dd two_sum(double a, double b) noexcept nogil:
    cdef dd r
    cdef double bb
    r.hi = a + b
    bb = r.hi - a
    r.lo = (a - (r.hi - bb)) + (b - bb)
    return r


cdef inline dd quick_two_sum(double a, double b) noexcept nogil:
    cdef dd r
    r.hi = a + b
    r.lo = b - (r.hi - a)
    return r


cdef inline dd dd_add(dd x, dd y) noexcept nogil:
    cdef dd s = two_sum(x.hi, y.hi)
    return quick_two_sum(s.hi, s.lo + x.lo + y.lo)


cdef inline dd dd_sub(dd x, dd y) noexcept nogil:
    cdef dd s = two_sum(x.hi, -y.hi)
    return quick_two_sum(s.hi, s.lo + x.lo - y.lo)


cdef inline dd dd_mul(dd x, dd y) noexcept nogil:
    cdef double p = x.hi * y.hi
    cdef double e = fma(x.hi, y.hi, -p)
    return quick_two_sum(p, e + (x.hi * y.lo + x.lo * y.hi))


cdef inline dd dd_mul_d(dd x, double c) noexcept nogil:
    cdef double p = x.hi * c
    cdef double e = fma(x.hi, c, -p)
    return quick_two_sum(p, e + x.lo * c)


cdef inline dd dd_div(dd x, dd y) noexcept nogil:
    cdef double q1, q2, q3
    cdef dd r, s
    q1 = x.hi / y.hi
    r = dd_sub(x, dd_mul_d(y, q1))
    q2 = r.hi / y.hi
    r = dd_sub(r, dd_mul_d(y, q2))
    q3 = r.hi / y.hi
    s = quick_two_sum(q1, q2)
    return dd_add(s, dd_from(q3))


cdef inline dd dd_from(double a) noexcept nogil:
    cdef dd r
    r.hi = a
    r.lo = 0.0
    return r


cdef inline cdd cdd_from(double re, double im) noexcept nogil:
    cdef cdd r
    r.re = dd_from(re)
    r.im = dd_from(im)
    return r


cdef inline cdd cdd_add(cdd x, cdd y) noexcept nogil:
    cdef cdd r
    r.re = dd_add(x.re, y.re)
    r.im = dd_add(x.im, y.im)
    return r


cdef inline cdd cdd_mul(cdd x, cdd y) noexcept nogil:
    cdef cdd r
    r.re = dd_sub(dd_mul(x.re, y.re), dd_mul(x.im, y.im))
    r.im = dd_add(dd_mul(x.re, y.im), dd_mul(x.im, y.re))
    return r


cdef inline cdd cdd_div(cdd x, cdd y) noexcept nogil:
    cdef dd den = dd_add(dd_mul(y.re, y.re), dd_mul(y.im, y.im))
    cdef cdd r
    r.re = dd_div(dd_add(dd_mul(x.re, y.re), dd_mul(x.im, y.im)), den)
    r.im = dd_div(dd_sub(dd_mul(x.im, y.re), dd_mul(x.re, y.im)), den)
    return r


cdef inline cdd cdd_shift(double wre, double wim, double m) noexcept nogil:
    # complex scalar + integer m, exactly
    cdef cdd r
    r.re = two_sum(wre, m)
    r.im = dd_from(wim)
    return r


cdef int _kummer_one(double complex a, double complex b, double complex z,
                     int max_terms, double rel_tol, int consecutive_small,
                     double complex *out, long *terms, double *max_mag) noexcept nogil:
    cdef cdd term = cdd_from(1.0, 0.0)
    cdef cdd total = cdd_from(1.0, 0.0)
    cdef cdd zc = cdd_from(z.real, z.imag)
    cdef cdd am, bm
    cdef double mag, tot_mag, mmax = 1.0
    cdef int m, small_count = 0
    cdef int used = 1

    for m in range(max_terms - 1):
        am = cdd_shift(a.real, a.imag, <double> m)
        if am.re.hi == 0.0 and am.re.lo == 0.0 and am.im.hi == 0.0 and am.im.lo == 0.0:
            # numerator Pochhammer hit zero: the series is an exact polynomial
            out[0] = (total.re.hi + total.re.lo) + 1j * (total.im.hi + total.im.lo)
            terms[0] = used
            max_mag[0] = mmax
            return _OK
        bm = cdd_shift(b.real, b.imag, <double> m)
        term = cdd_mul(term, am)
        term = cdd_div(term, bm)
        term = cdd_mul(term, zc)
        term = cdd_div(term, cdd_from(<double> (m + 1), 0.0))
        total = cdd_add(total, term)
        used = m + 2

        mag = hypot(term.re.hi, term.im.hi)
        if not isfinite(mag):
            out[0] = (total.re.hi + total.re.lo) + 1j * (total.im.hi + total.im.lo)
            terms[0] = used
            max_mag[0] = mmax
            return _NON_FINITE
        if mag > mmax:
            mmax = mag
        tot_mag = hypot(total.re.hi, total.im.hi)
        if mag == 0.0:
            small_count = consecutive_small
        elif mag <= rel_tol * tot_mag:
            small_count += 1
        else:
            small_count = 0
        if small_count >= consecutive_small:
            out[0] = (total.re.hi + total.re.lo) + 1j * (total.im.hi + total.im.lo)
            terms[0] = used
            max_mag[0] = mmax
            return _OK

    out[0] = (total.re.hi + total.re.lo) + 1j * (total.im.hi + total.im.lo)
    terms[0] = used
    max_mag[0] = mmax
    return _NOT_CONVERGED


def kummer_series(a, b, z, max_terms, rel_tol, consecutive_small):
    """Sum 1F1(a, b; z) termwise over an array of arguments.

    Returns (values, status, terms, max_mag); see susypiv._kernels_py for the
    stopping-rule contract.
    """
    cdef double complex ac = a
    cdef double complex bc = b
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t n = zz.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] values = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] status = np.empty(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] terms = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] max_mag = np.empty(n, dtype=np.float64)
    cdef int mt = max_terms
    cdef double tol = rel_tol
    cdef int cs = consecutive_small
    cdef Py_ssize_t i
    cdef double complex val
    cdef long nt
    cdef double mm

    with nogil:
        for i in range(n):
            status[i] = <unsigned char> _kummer_one(ac, bc, zz[i], mt, tol, cs, &val, &nt, &mm)
            values[i] = val
            terms[i] = nt
            max_mag[i] = mm
    return values, status, terms, max_mag


def hermite_values(n, z):
    """Hermite polynomial of complex argument by the three-term recurrence."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t npts = zz.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(npts, dtype=np.complex128)
    cdef int order = n
    cdef Py_ssize_t i
    cdef int k
    cdef double complex h_prev, h, h_next, zi

    with nogil:
        for i in range(npts):
            zi = zz[i]
            if order == 0:
                out[i] = 1.0
                continue
            h_prev = 1.0
            h = 2.0 * zi
            for k in range(1, order):
                h_next = 2.0 * zi * h - 2.0 * k * h_prev
                h_prev = h
                h = h_next
            out[i] = h
    return out
