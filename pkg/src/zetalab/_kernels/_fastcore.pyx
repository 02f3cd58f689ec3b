# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Hardy Z, Euler-Maclaurin zeta, Z^2 quadrature.

Same contract as the reference backend, with the inner loops in C.  The
coefficient tables are read from the shared Python modules at import
time so both backends evaluate the same series.
"""

import numpy as np

from libc.math cimport ceil, cos, exp, fabs, log, pow, sin, sqrt

from .constants import EM_C, EM_RATIO, GAUSS_W, KRONROD_W, KRONROD_X, MAX_EM_TERMS
from .rs_tables import REMAINDER_CHEB

BACKEND_NAME = "fast"

cdef double TWO_PI = 6.283185307179586476925287
cdef double EPS = 2.220446049250313e-16
cdef double PI_8 = 0.39269908169872415480783042290994

cdef int MAX_EM = MAX_EM_TERMS
cdef double EM_C_A[30]
cdef double EM_RATIO_A[30]
for _i, _v in enumerate(EM_C):
    EM_C_A[_i] = _v
for _i, _v in enumerate(EM_RATIO):
    EM_RATIO_A[_i] = _v

# symmetric 15-node G7K15 layout, same ordering as the reference backend
cdef double XK[15]
cdef double WK[15]
cdef double WG[15]
for _i in range(7):
    XK[_i] = -KRONROD_X[_i]
    XK[14 - _i] = KRONROD_X[_i]
    WK[_i] = KRONROD_W[_i]
    WK[14 - _i] = KRONROD_W[_i]
    WG[_i] = 0.0
    WG[14 - _i] = 0.0
XK[7] = 0.0
WK[7] = KRONROD_W[7]
WG[7] = 0.0
for _i, _g in enumerate((0, 1, 2, 3, 2, 1, 0)):
    WG[1 + 2 * _i] = GAUSS_W[_g]

cdef int N_CHEB = len(REMAINDER_CHEB)
cdef int CHEB_OFF[8]
cdef double CHEB_FLAT[512]
CHEB_OFF[0] = 0
for _i, _tab in enumerate(REMAINDER_CHEB):
    CHEB_OFF[_i + 1] = CHEB_OFF[_i] + len(_tab)
    if CHEB_OFF[_i + 1] > 512:
        raise ImportError("remainder table overflow")
    for _j, _v in enumerate(_tab):
        CHEB_FLAT[CHEB_OFF[_i] + _j] = _v


cdef inline double complex cis(double x) noexcept nogil:
    return cos(x) + 1j * sin(x)


cdef inline double complex cexp_z(double complex z) noexcept nogil:
    return exp(z.real) * cis(z.imag)


cdef inline double _theta_c(double t) noexcept nogil:
    cdef double tau = t / TWO_PI
    return 0.5 * t * log(tau) - 0.5 * t - PI_8 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t)


cdef inline double _cheb_c(int j, double x) noexcept nogil:
    cdef double b0 = 0.0, b1 = 0.0, tmp
    cdef int k
    for k in range(CHEB_OFF[j + 1] - 1, CHEB_OFF[j], -1):
        tmp = 2.0 * x * b0 - b1 + CHEB_FLAT[k]
        b1 = b0
        b0 = tmp
    return x * b0 - b1 + CHEB_FLAT[CHEB_OFF[j]]


cdef double _rs_z_c(double t, int order) noexcept nogil:
    cdef double tau = t / TWO_PI
    cdef double rt = sqrt(tau)
    cdef long n_main = <long> rt
    cdef double p = rt - n_main
    cdef double th = _theta_c(t)
    cdef double acc = 0.0
    cdef long n
    for n in range(1, n_main + 1):
        acc += cos(th - t * log(<double> n)) / sqrt(<double> n)
    cdef double x = 2.0 * p - 1.0
    cdef double rem = 0.0
    cdef double tf = 1.0
    cdef int j
    for j in range(order + 1):
        if j >= N_CHEB:
            break
        rem += _cheb_c(j, x) * tf
        tf /= rt
    cdef double sign = 1.0 if n_main % 2 == 1 else -1.0
    return 2.0 * acc + sign * rem / sqrt(rt)


def theta(double t):
    """Riemann-Siegel theta, asymptotic series through the t^-3 term."""
    return _theta_c(t)


def rs_z(double t, int order):
    """Hardy Z(t) by the Riemann-Siegel formula with `order` correction terms."""
    return _rs_z_c(t, order)


def rs_z_vec(t, int order=4):
    """Vectorized Riemann-Siegel Z over an ndarray of t."""
    arr = np.ascontiguousarray(np.asarray(t, dtype=np.float64))
    shape = arr.shape
    cdef double[::1] tv = arr.ravel()
    out = np.empty(tv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(tv.shape[0]):
        ov[i] = _rs_z_c(tv[i], order)
    return out.reshape(shape)


cdef inline long _em_nsum_c(double t) noexcept nogil:
    cdef long n = <long> ceil(fabs(t))
    return n if n > 20 else 20


cdef double complex _em_value_c(double sigma, double t, int terms, long n) noexcept nogil:
    """Euler-Maclaurin zeta value for t >= 0 with a fixed main-sum cutoff."""
    cdef double complex s = sigma + 1j * t
    cdef double complex total = 0.0
    cdef long m
    cdef double lm
    for m in range(1, n):
        lm = log(<double> m)
        total += exp(-sigma * lm) * cis(-t * lm)
    cdef double lg = log(<double> n)
    cdef double complex npow = cexp_z(-s * lg)
    total += npow * n / (s - 1.0) + 0.5 * npow
    cdef double complex term = EM_C_A[0] * s * npow / n
    cdef double nsq = (<double> n) * (<double> n)
    cdef int j
    for j in range(1, terms + 1):
        total += term
        term = term * (EM_RATIO_A[j - 1] / nsq) * (s + (2 * j - 1)) * (s + 2 * j)
    return total


cdef double _em_err_c(double sigma, double t, int terms, long n) noexcept nogil:
    """Tail bound matching the reference backend's estimate."""
    cdef double complex s = sigma + 1j * t
    cdef double lg = log(<double> n)
    cdef double complex npow = cexp_z(-s * lg)
    cdef double complex term = EM_C_A[0] * s * npow / n
    cdef double nsq = (<double> n) * (<double> n)
    cdef int j
    for j in range(1, terms + 1):
        term = term * (EM_RATIO_A[j - 1] / nsq) * (s + (2 * j - 1)) * (s + 2 * j)
    return abs(term) * abs(s + 2 * terms + 1) / (sigma + 2 * terms + 1)


def em_zeta(double sigma, double t, int terms, long nsum=0):
    """zeta(sigma + i t) by Euler-Maclaurin; returns (value, abs error estimate).

    Schwarz reflection is applied for t < 0 so conjugate symmetry is exact.
    """
    if t < 0.0:
        v, e = em_zeta(sigma, -t, terms, nsum)
        return v.conjugate(), e
    if terms > MAX_EM - 1:
        terms = MAX_EM - 1
    cdef long n = nsum if nsum > 0 else _em_nsum_c(t)
    return _em_value_c(sigma, t, terms, n), _em_err_c(sigma, t, terms, n)


def em_zeta_deriv(double sigma, double t, int terms, long nsum=0):
    """Term-wise derivative of the Euler-Maclaurin sum; (value, error estimate)."""
    if t < 0.0:
        v, e = em_zeta_deriv(sigma, -t, terms, nsum)
        return v.conjugate(), e
    if terms > MAX_EM - 1:
        terms = MAX_EM - 1
    cdef long n = nsum if nsum > 0 else _em_nsum_c(t)
    cdef double complex s = sigma + 1j * t
    cdef double complex total = 0.0
    cdef long m
    cdef double lm
    for m in range(1, n):
        lm = log(<double> m)
        total += -lm * exp(-sigma * lm) * cis(-t * lm)
    cdef double lg = log(<double> n)
    cdef double complex npow = cexp_z(-s * lg)
    total += -lg * npow * n / (s - 1.0) - npow * n / ((s - 1.0) * (s - 1.0))
    total += -0.5 * lg * npow
    cdef double complex term = EM_C_A[0] * s * npow / n
    cdef double complex hsum = 1.0 / s
    cdef double nsq = (<double> n) * (<double> n)
    cdef double complex dtail = 0.0
    cdef int j
    for j in range(1, terms + 1):
        dtail += term * (hsum - lg)
        term = term * (EM_RATIO_A[j - 1] / nsq) * (s + (2 * j - 1)) * (s + 2 * j)
        hsum += 1.0 / (s + (2 * j - 1)) + 1.0 / (s + 2 * j)
    total += dtail
    est = abs(term) * (abs(hsum - lg) + 1.0) * abs(s + 2 * terms + 1) / (sigma + 2 * terms + 1)
    return total, est


def em_zeta_many(sigma, t, int terms, long nsum=0):
    """Vectorized Euler-Maclaurin zeta for arrays sigma, t (t >= 0 required)."""
    sig = np.asarray(sigma, dtype=np.float64)
    tt = np.asarray(t, dtype=np.float64)
    if terms > MAX_EM - 1:
        terms = MAX_EM - 1
    s = sig + 1j * tt
    cdef long n
    if nsum > 0:
        n = nsum
    elif tt.size:
        n = _em_nsum_c(float(tt.max()))
    else:
        n = 20
    out = np.empty(s.shape, dtype=np.complex128)
    sflat = np.ascontiguousarray(s.ravel())
    cdef double complex[::1] sv = sflat
    oflat = out.ravel()
    cdef double complex[::1] ov = oflat
    cdef Py_ssize_t i
    for i in range(sv.shape[0]):
        ov[i] = _em_value_c(sv[i].real, sv[i].imag, terms, n)
    return out


def hardy_z(double t, double crossover, int order, int terms):
    """Z(t); Riemann-Siegel above the crossover, rotated Euler-Maclaurin below."""
    if t >= crossover:
        return _rs_z_c(t, order)
    if terms > MAX_EM - 1:
        terms = MAX_EM - 1
    cdef double complex v = _em_value_c(0.5, t, terms, _em_nsum_c(t))
    return (cexp_z(1j * _theta_c(t)) * v).real


cdef double _z_sq_c(double t, double crossover, int order, int terms) noexcept nogil:
    cdef double z
    cdef double complex v
    if t >= crossover:
        z = _rs_z_c(t, order)
        return z * z
    v = _em_value_c(0.5, t, terms, _em_nsum_c(t))
    return v.real * v.real + v.imag * v.imag


def z_sq(double t, double crossover, int order, int terms):
    """Z(t)^2 = |zeta(1/2+it)|^2; valid for all t >= 0 (no theta below t=1)."""
    if terms > MAX_EM - 1:
        terms = MAX_EM - 1
    return _z_sq_c(t, crossover, order, terms)


cdef void _panel_c(double *fv, double a, double b, double *out) noexcept nogil:
    """G7K15 on one panel; writes (value, error, resabs) into out[0..2]."""
    cdef double h = 0.5 * (b - a)
    cdef double resk = 0.0, resg = 0.0, resabs = 0.0, resasc = 0.0
    cdef int i
    for i in range(15):
        resk += WK[i] * fv[i]
        resg += WG[i] * fv[i]
        resabs += WK[i] * fabs(fv[i])
    resk *= h
    resg *= h
    resabs *= h
    cdef double mean = resk / (b - a)
    for i in range(15):
        resasc += WK[i] * fabs(fv[i] - mean)
    resasc *= h
    cdef double err = fabs(resk - resg)
    cdef double scale
    if resasc != 0.0 and err != 0.0:
        scale = pow(200.0 * err / resasc, 1.5)
        err = resasc * (scale if scale < 1.0 else 1.0)
    if resabs > 2.2250738585072014e-308 / (50.0 * EPS):
        if err < 50.0 * EPS * resabs:
            err = 50.0 * EPS * resabs
    out[0] = resk
    out[1] = err
    out[2] = resabs


def integrate_z_sq(double a, double b, double tol, double crossover, int order, int terms, int depth_limit=40):
    """Adaptive G7K15 of Z^2 over [a, b]; returns (value, err, evals, status).

    status 0 on convergence, 1 if the bisection depth limit was hit.
    Panels are processed left to right so the accumulation order (and the
    result bits) do not depend on evaluation history.
    """
    if b <= a:
        return 0.0, 0.0, 0, 0
    if terms > MAX_EM - 1:
        terms = MAX_EM - 1
    cdef double total = 0.0
    cdef double errsum = 0.0
    cdef long evals = 0
    cdef int status = 0
    cdef double fv[15]
    cdef double res[3]
    cdef double lo, hi, ptol, mid, h
    cdef int depth, i
    stack = [(a, b, tol, 0)]
    while stack:
        lo, hi, ptol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        h = 0.5 * (hi - lo)
        with nogil:
            for i in range(15):
                fv[i] = _z_sq_c(mid + h * XK[i], crossover, order, terms)
            _panel_c(fv, lo, hi, res)
        evals += 15
        if res[1] <= ptol or depth >= depth_limit:
            if depth >= depth_limit and res[1] > ptol:
                status = 1
            total += res[0]
            errsum += res[1]
        else:
            stack.append((mid, hi, 0.5 * ptol, depth + 1))
            stack.append((lo, mid, 0.5 * ptol, depth + 1))
    return total, errsum, evals, status
