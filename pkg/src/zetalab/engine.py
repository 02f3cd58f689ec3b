"""Zeta evaluation engine.

Wraps the kernel backends in a configured, domain-checked API.  On the
critical line the engine switches between the Riemann-Siegel formula
(large t) and Euler-Maclaurin summation (small t) at a configurable
crossover; off the line it always uses Euler-Maclaurin, which is valid
throughout the strip 0 < sigma <= 3 handled here.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from ._kernels.constants import MAX_EM_TERMS
from .errors import AccuracyWarning, ConfigError, EngineDomainError, PoleError

TWO_PI = 2.0 * math.pi

# Empirical remainder envelopes for the Riemann-Siegel formula by
# correction order: |error| <= RS_ERR_COEF[j] * tau**-((2j+3)/4) with
# tau = t/2pi.  Measured against a high-precision oracle over
# t in [60, 3000] and padded by ~1.5x.
RS_ERR_COEF = (4.0e-2, 8.0e-3, 7.0e-4, 7.0e-4, 2.5e-4)


@dataclass
class EngineConfig:
    target_rel_error: float = 1e-10
    euler_maclaurin_terms: int = 12
    riemann_siegel_correction_order: int = 4
    crossover_t: float = 500.0
    t_max_engine: float = 1.0e5

    def __post_init__(self):
        if not (0 < self.target_rel_error < 1):
            raise ConfigError("target_rel_error must lie in (0, 1)")
        if not (1 <= self.euler_maclaurin_terms < MAX_EM_TERMS):
            raise ConfigError(
                "euler_maclaurin_terms must lie in [1, %d]" % (MAX_EM_TERMS - 1)
            )
        if self.riemann_siegel_correction_order not in (0, 1, 2, 3, 4):
            raise ConfigError("riemann_siegel_correction_order must be 0..4")
        if self.crossover_t < 30.0:
            # below this the main-sum length floor(sqrt(t/2pi)) is so short
            # that no tabulated correction order rescues the formula
            raise ConfigError("crossover_t must be >= 30")
        if self.t_max_engine <= 0:
            raise ConfigError("t_max_engine must be positive")


class ZetaEngine:
    """Stateless evaluator; all tuning lives in the EngineConfig."""

    def __init__(self, config=None):
        self.config = config if config is not None else EngineConfig()
        self._xo = self.config.crossover_t
        self._order = self.config.riemann_siegel_correction_order
        self._terms = self.config.euler_maclaurin_terms

    # -- error model ---------------------------------------------------

    def rs_error_estimate(self, t):
        tau = t / TWO_PI
        return RS_ERR_COEF[self._order] * tau ** (-(2 * self._order + 3) / 4.0)

    def _warn_if_loose(self, what, value, est):
        if est > self.config.target_rel_error * (1.0 + abs(value)):
            # keep the message stable so the warning registry collapses
            # repeats from the same call site; the _with_error variants
            # expose the actual estimate
            warnings.warn(
                "%s: error estimate exceeds target_rel_error" % what,
                AccuracyWarning,
                stacklevel=3,
            )

    # -- critical line -------------------------------------------------

    def theta(self, t):
        """Riemann-Siegel theta via its asymptotic expansion (t >= 1)."""
        if t < 1.0:
            raise EngineDomainError("theta requires t >= 1, got %r" % (t,))
        return K.theta(t)

    def hardy_z_with_error(self, t):
        if t < 1.0:
            raise EngineDomainError("hardy_z requires t >= 1, got %r" % (t,))
        if t >= self._xo:
            val = K.rs_z(t, self._order)
            return val, self.rs_error_estimate(t)
        v, e = K.em_zeta(0.5, t, self._terms)
        val = (cmath.exp(1j * K.theta(t)) * v).real
        return val, e

    def hardy_z(self, t):
        val, est = self.hardy_z_with_error(t)
        self._warn_if_loose("hardy_z", val, est)
        return val

    def z_squared(self, t):
        """Z(t)^2 = |zeta(1/2 + it)|^2, valid for all t >= 0."""
        if t < 0.0:
            raise EngineDomainError("z_squared requires t >= 0, got %r" % (t,))
        return K.z_sq(t, self._xo, self._order, self._terms)

    def z_squared_many(self, ts):
        """Vectorized Z^2 over an array of heights.

        Fast path only when every point sits above the crossover, which
        is where all ladder chains live; otherwise falls back pointwise.
        """
        ts = np.asarray(ts, dtype=float)
        if ts.size and ts.min() < 0.0:
            raise EngineDomainError("z_squared_many requires t >= 0")
        if ts.size == 0 or ts.min() >= self._xo:
            z = K.rs_z_vec(ts, self._order)
            return z * z
        return np.array([self.z_squared(float(t)) for t in ts])

    def zeta_critical_line(self, t):
        """zeta(1/2 + it) as exp(-i theta(t)) * Z(t); |zeta| == |Z| exactly."""
        return cmath.exp(-1j * self.theta(t)) * self.hardy_z(t)

    # -- strip ---------------------------------------------------------

    def _check_strip(self, s):
        sigma, t = s.real, s.imag
        if not (0.0 < sigma <= 3.0):
            raise EngineDomainError(
                "real part must lie in (0, 3], got %r" % (sigma,)
            )
        if abs(t) > self.config.t_max_engine:
            raise EngineDomainError(
                "|Im s| exceeds t_max_engine=%g" % self.config.t_max_engine
            )
        if abs(s - 1.0) < 1e-12:
            raise PoleError("zeta has a pole at s = 1")

    def zeta_strip_with_error(self, s):
        s = complex(s)
        self._check_strip(s)
        v, e = K.em_zeta(s.real, s.imag, self._terms)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise EngineDomainError("non-finite value at s = %r" % (s,))
        return v, e

    def zeta_strip(self, s):
        v, e = self.zeta_strip_with_error(s)
        self._warn_if_loose("zeta_strip", abs(v), e)
        return v

    def zeta_strip_refined(self, s):
        """Re-evaluation with doubled truncation, for independent checks."""
        s = complex(s)
        self._check_strip(s)
        nsum = max(40, 2 * math.ceil(abs(s.imag)))
        terms = min(2 * self._terms, MAX_EM_TERMS - 1)
        v, _ = K.em_zeta(s.real, s.imag, terms, nsum=nsum)
        return v

    def zeta_strip_many(self, ss):
        """Vectorized zeta over an array of strip points (no warnings)."""
        ss = np.asarray(ss, dtype=complex)
        for s in ss.ravel():
            self._check_strip(s)
        t = ss.imag
        neg = t < 0.0
        vals = K.em_zeta_many(ss.real, np.abs(t), self._terms)
        return np.where(neg, np.conjugate(vals), vals)

    def zeta_derivative_with_error(self, s):
        s = complex(s)
        self._check_strip(s)
        v, e = K.em_zeta_deriv(s.real, s.imag, self._terms)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise EngineDomainError("non-finite derivative at s = %r" % (s,))
        return v, e

    def zeta_derivative(self, s):
        v, e = self.zeta_derivative_with_error(s)
        self._warn_if_loose("zeta_derivative", abs(v), e)
        return v
