"""Pure-Python (numpy) kernels: Hardy Z, Euler-Maclaurin zeta, Z^2 quadrature.

This module is the fallback backend; the compiled extension implements the
same contract.  All functions are pure and deterministic.  Inner loops are
vectorized where the access pattern allows it, so the fallback stays usable
for full pipeline runs, just slower than the compiled core.
"""

import cmath
import math

import numpy as np

from .constants import EM_C, EM_RATIO, GAUSS_W, KRONROD_W, KRONROD_X, MAX_EM_TERMS
from .rs_tables import REMAINDER_CHEB

BACKEND_NAME = "pure"

_TWO_PI = 2.0 * math.pi
_EPS = 2.220446049250313e-16

# Symmetric 15-node layout on [-1, 1]; Gauss nodes sit at odd indices.
_XK = np.array([-x for x in KRONROD_X[:7]] + [0.0] + list(reversed(KRONROD_X[:7])))
_WK = np.array(list(KRONROD_W[:7]) + [KRONROD_W[7]] + list(reversed(KRONROD_W[:7])))
_WG15 = np.zeros(15)
_WG15[1:14:2] = [GAUSS_W[i] for i in (0, 1, 2, 3, 2, 1, 0)]

_CHEB = [np.array(tab) for tab in REMAINDER_CHEB]


def theta(t):
    """Riemann-Siegel theta, asymptotic series through the t^-3 term."""
    tau = t / _TWO_PI
    return (
        0.5 * t * math.log(tau)
        - 0.5 * t
        - math.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t * t)
    )


def _theta_vec(t):
    tau = t / _TWO_PI
    return 0.5 * t * np.log(tau) - 0.5 * t - math.pi / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t**3)


def _cheb_eval(coeffs, x):
    """Clenshaw on [-1, 1]; works for scalars and arrays."""
    b0 = b1 = 0.0
    for c in coeffs[:0:-1]:
        b0, b1 = 2.0 * x * b0 - b1 + c, b0
    return x * b0 - b1 + coeffs[0]


def rs_z(t, order):
    """Hardy Z(t) by the Riemann-Siegel formula with `order` correction terms."""
    tau = t / _TWO_PI
    rt = math.sqrt(tau)
    n_main = int(rt)
    p = rt - n_main
    th = theta(t)
    acc = 0.0
    for n in range(1, n_main + 1):
        acc += math.cos(th - t * math.log(n)) / math.sqrt(n)
    x = 2.0 * p - 1.0
    rem = 0.0
    tf = 1.0
    for j in range(order + 1):
        rem += _cheb_eval(REMAINDER_CHEB[j], x) * tf
        tf /= rt
    sign = 1.0 if (n_main % 2 == 1) else -1.0
    return 2.0 * acc + sign * rem / math.sqrt(rt)


def rs_z_vec(t, order=4):
    """Vectorized Riemann-Siegel Z over an ndarray of t."""
    t = np.asarray(t, dtype=float)
    tau = t / _TWO_PI
    rt = np.sqrt(tau)
    n_main = rt.astype(int)
    th = _theta_vec(t)
    out = np.zeros_like(t)
    # main sum grouped by constant N (N changes rarely within a panel)
    for nv in np.unique(n_main):
        m = n_main == nv
        ns = np.arange(1, nv + 1, dtype=float)
        ph = th[m, None] - t[m, None] * np.log(ns)[None, :]
        out[m] = 2.0 * (np.cos(ph) / np.sqrt(ns)).sum(axis=1)
    p = rt - n_main
    x = 2.0 * p - 1.0
    rem = _cheb_eval(_CHEB[0], x)
    tf = 1.0 / rt
    for j in range(1, order + 1):
        rem = rem + _cheb_eval(_CHEB[j], x) * tf
        tf = tf / rt
    sign = np.where(n_main % 2 == 1, 1.0, -1.0)
    return out + sign * rem / np.sqrt(rt)


def _em_nsum(t):
    return max(20, int(math.ceil(abs(t))))


def em_zeta(sigma, t, terms, nsum=0):
    """zeta(sigma + i t) by Euler-Maclaurin; returns (value, abs error estimate).

    Schwarz reflection is applied for t < 0 so conjugate symmetry is exact.
    """
    if t < 0.0:
        v, e = em_zeta(sigma, -t, terms, nsum)
        return v.conjugate(), e
    terms = min(terms, MAX_EM_TERMS - 1)
    n = nsum if nsum > 0 else _em_nsum(t)
    s = complex(sigma, t)
    ns = np.arange(1, n, dtype=float)
    total = complex(np.exp(-s * np.log(ns)).sum()) if n > 1 else 0.0
    lg = math.log(n)
    npow = cmath.exp(-s * lg)  # n^-s
    total += npow * n / (s - 1.0) + 0.5 * npow
    # Bernoulli tail by multiplicative recurrence; avoids explicit Pochhammer
    term = EM_C[0] * s * npow / n
    nsq = float(n) * float(n)
    for j in range(1, terms + 1):
        total += term
        term *= EM_RATIO[j - 1] * (s + (2 * j - 1)) * (s + 2 * j) / nsq
    est = abs(term) * abs(s + 2 * terms + 1) / (sigma + 2 * terms + 1)
    return total, est


def em_zeta_deriv(sigma, t, terms, nsum=0):
    """Term-wise derivative of the Euler-Maclaurin sum; (value, error estimate)."""
    if t < 0.0:
        v, e = em_zeta_deriv(sigma, -t, terms, nsum)
        return v.conjugate(), e
    terms = min(terms, MAX_EM_TERMS - 1)
    n = nsum if nsum > 0 else _em_nsum(t)
    s = complex(sigma, t)
    ns = np.arange(1, n, dtype=float)
    lns = np.log(ns)
    total = complex((-lns * np.exp(-s * lns)).sum()) if n > 1 else 0.0
    lg = math.log(n)
    npow = cmath.exp(-s * lg)
    total += -lg * npow * n / (s - 1.0) - npow * n / ((s - 1.0) * (s - 1.0))
    total += -0.5 * lg * npow
    term = EM_C[0] * s * npow / n
    hsum = 1.0 / s  # sum of 1/(s+i) over the rising-factorial indices
    nsq = float(n) * float(n)
    dtail = 0.0
    for j in range(1, terms + 1):
        dtail += term * (hsum - lg)
        term *= EM_RATIO[j - 1] * (s + (2 * j - 1)) * (s + 2 * j) / nsq
        hsum += 1.0 / (s + (2 * j - 1)) + 1.0 / (s + 2 * j)
    total += dtail
    est = abs(term) * (abs(hsum - lg) + 1.0) * abs(s + 2 * terms + 1) / (sigma + 2 * terms + 1)
    return total, est


def em_zeta_many(sigma, t, terms, nsum=0):
    """Vectorized Euler-Maclaurin zeta for arrays sigma, t (t >= 0 required)."""
    sigma = np.asarray(sigma, dtype=float)
    t = np.asarray(t, dtype=float)
    terms = min(terms, MAX_EM_TERMS - 1)
    n = nsum if nsum > 0 else max(20, int(math.ceil(t.max()))) if t.size else 20
    s = sigma + 1j * t
    out = np.zeros(s.shape, dtype=complex)
    ns = np.arange(1, n, dtype=float)
    lns = np.log(ns)
    flat = s.ravel()
    chunk = max(1, int(4_000_000 // max(1, len(ns))))
    for i in range(0, flat.size, chunk):
        part = flat[i : i + chunk]
        out.ravel()[i : i + chunk] = np.exp(-part[:, None] * lns[None, :]).sum(axis=1)
    lg = math.log(n)
    npow = np.exp(-s * lg)
    out += npow * n / (s - 1.0) + 0.5 * npow
    term = EM_C[0] * s * npow / n
    nsq = float(n) * float(n)
    for j in range(1, terms + 1):
        out += term
        term = term * (EM_RATIO[j - 1] / nsq) * (s + (2 * j - 1)) * (s + 2 * j)
    return out


def hardy_z(t, crossover, order, terms):
    """Z(t); Riemann-Siegel above the crossover, rotated Euler-Maclaurin below."""
    if t >= crossover:
        return rs_z(t, order)
    v, _ = em_zeta(0.5, t, terms)
    return (cmath.exp(1j * theta(t)) * v).real


def z_sq(t, crossover, order, terms):
    """Z(t)^2 = |zeta(1/2+it)|^2; valid for all t >= 0 (no theta below t=1)."""
    if t >= crossover:
        z = rs_z(t, order)
        return z * z
    v, _ = em_zeta(0.5, t, terms)
    return abs(v) ** 2


def _z_sq_nodes(ts, crossover, order, terms):
    """Vector z_sq over a small node array (one quadrature panel)."""
    ts = np.asarray(ts, dtype=float)
    out = np.empty_like(ts)
    hi = ts >= crossover
    if hi.any():
        z = rs_z_vec(ts[hi], order)
        out[hi] = z * z
    lo = ~hi
    if lo.any():
        v = em_zeta_many(np.full(lo.sum(), 0.5), ts[lo], terms)
        out[lo] = np.abs(v) ** 2
    return out


def _panel(fv, a, b):
    """G7K15 on one panel given the 15 node values; (value, error, resabs)."""
    h = 0.5 * (b - a)
    resk = h * float(_WK @ fv)
    resg = h * float(_WG15 @ fv)
    resabs = h * float(_WK @ np.abs(fv))
    mean = resk / (b - a)
    resasc = h * float(_WK @ np.abs(fv - mean))
    err = abs(resk - resg)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > 2.2250738585072014e-308 / (50.0 * _EPS):
        err = max(err, 50.0 * _EPS * resabs)
    return resk, err, resabs


def integrate_z_sq(a, b, tol, crossover, order, terms, depth_limit=40):
    """Adaptive G7K15 of Z^2 over [a, b]; returns (value, err, evals, status).

    status 0 on convergence, 1 if the bisection depth limit was hit.
    Panels are processed left to right so the accumulation order (and the
    result bits) do not depend on evaluation history.
    """
    if b <= a:
        return 0.0, 0.0, 0, 0
    total = 0.0
    errsum = 0.0
    evals = 0
    status = 0
    stack = [(a, b, tol, 0)]
    while stack:
        lo, hi, ptol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        h = 0.5 * (hi - lo)
        ts = mid + h * _XK
        fv = _z_sq_nodes(ts, crossover, order, terms)
        evals += 15
        val, err, _ = _panel(fv, lo, hi)
        if err <= ptol or depth >= depth_limit:
            if depth >= depth_limit and err > ptol:
                status = 1
            total += val
            errsum += err
        else:
            stack.append((mid, hi, 0.5 * ptol, depth + 1))
            stack.append((lo, mid, 0.5 * ptol, depth + 1))
    return total, errsum, evals, status
