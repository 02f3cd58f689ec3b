"""Adaptive Gauss-Kronrod quadrature and the cached Hardy integral.

The table object here is the backbone of everything downstream: it
produces A(T), the integral of Z(t)^2 from 0 to T, through a two-level
cache with *canonical* evaluation rules.  Canonical means the value
returned for a given T depends only on (T, tolerance, engine config),
never on which queries happened first, so warm and cold runs agree to
the last bit.
"""

import json
import math
import os
import threading
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from ._kernels.constants import GAUSS_W, KRONROD_W, KRONROD_X
from .engine import TWO_PI, ZetaEngine
from .errors import ConvergenceError, EngineDomainError, QuadratureError

EULER_GAMMA = 0.5772156649015328606

# full 15-point symmetric arrays; Gauss nodes sit at the odd indices
_XK = np.array([-x for x in KRONROD_X[:7]] + [0.0] + list(reversed(KRONROD_X[:7])))
_WK = np.array(list(KRONROD_W[:7]) + [KRONROD_W[7]] + list(reversed(KRONROD_W[:7])))
_WG15 = np.zeros(15)
_WG15[1:14:2] = [GAUSS_W[i] for i in (0, 1, 2, 3, 2, 1, 0)]
_EPS = np.finfo(float).eps


@dataclass
class IntegralResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def _panel(fv, a, b):
    """G7K15 estimates on one panel from the 15 function values."""
    h = 0.5 * (b - a)
    resk = h * float(np.dot(_WK, fv))
    resg = h * float(np.dot(_WG15, fv))
    resabs = abs(h) * float(np.dot(_WK, np.abs(fv)))
    mean = resk / (b - a)
    resasc = abs(h) * float(np.dot(_WK, np.abs(fv - mean)))
    err = abs(resk - resg)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > 2.2250738585072014e-308 / (50.0 * _EPS):
        err = max(err, 50.0 * _EPS * resabs)
    return resk, err


def integrate(f, a, b, tol, depth_limit=40):
    """Adaptive G7K15 for a vectorized callable f: ndarray -> ndarray.

    Splits left-first with the tolerance halved at each subdivision, so
    the traversal (and hence the result) is a pure function of the
    inputs.  Raises ConvergenceError when the depth limit is hit.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise QuadratureError("non-finite integration bounds")
    if a == b:
        return IntegralResult(0.0, 0.0, 0)
    if a > b:
        raise QuadratureError("reversed interval [%g, %g]" % (a, b))
    total = 0.0
    errsum = 0.0
    evals = 0
    stack = [(a, b, tol, 0)]
    while stack:
        x0, x1, tloc, depth = stack.pop()
        mid = 0.5 * (x0 + x1)
        half = 0.5 * (x1 - x0)
        fv = np.asarray(f(mid + half * _XK), dtype=float)
        if fv.shape != (15,):
            raise QuadratureError("integrand must map 15 nodes to 15 values")
        if not np.all(np.isfinite(fv)):
            raise QuadratureError("non-finite integrand value in [%g, %g]" % (x0, x1))
        evals += 15
        val, err = _panel(fv, x0, x1)
        if err <= tloc or half <= abs(mid) * _EPS:
            total += val
            errsum += err
            continue
        if depth >= depth_limit:
            raise ConvergenceError(
                "depth limit %d reached on [%g, %g] (panel error %.3e, need %.3e)"
                % (depth_limit, x0, x1, err, tloc)
            )
        # push right first so the left half is processed next
        stack.append((mid, x1, 0.5 * tloc, depth + 1))
        stack.append((x0, mid, 0.5 * tloc, depth + 1))
    return IntegralResult(total, errsum, evals)


def hardy_asymptotic(T):
    """Classical leading behaviour of A(T); used for sanity ratios only."""
    if T <= 0.0:
        return 0.0
    return T * math.log(T) - (1.0 + math.log(TWO_PI) - 2.0 * EULER_GAMMA) * T


class HardyIntegralTable:
    """A(T) = integral of Z^2 over [0, T] with a two-level canonical cache.

    Level one: checkpoints at multiples of 50, *defined* as the running
    sum of level-two cells.  Level two: per-block fine grids of 100
    half-unit cells, built lazily, each integrated at tol/100.  A query
    inside a block adds whole cells up to the last half-unit boundary
    below T plus one short gap integral with a tolerance fixed by the
    gap length alone.  No query order can change any stored number.
    """

    CHECKPOINT_SPACING = 50.0
    FINE_STEP = 0.5
    CELLS_PER_BLOCK = 100

    def __init__(self, engine=None, tol=1e-9, depth_limit=40):
        if tol <= 0.0:
            raise QuadratureError("tol must be positive")
        self.engine = engine if engine is not None else ZetaEngine()
        self.tol = float(tol)
        self.depth_limit = int(depth_limit)
        self._lock = threading.RLock()
        self._checkpoints = [0.0]
        self._checkpoint_errs = [0.0]
        self._fine = {}
        self._fine_errs = {}
        self._evals = 0
        self._blocks_built = 0
        self._loaded_checkpoints = 0

    @property
    def cache_stats(self):
        """Deterministic cache counters for run reports."""
        with self._lock:
            return {
                "checkpoint_blocks": len(self._checkpoints) - 1,
                "loaded_checkpoint_blocks": self._loaded_checkpoints,
                "fine_blocks_built": self._blocks_built,
            }

    # -- cache construction -------------------------------------------

    def _kernel_cell(self, a, b, tloc):
        cfg = self.engine.config
        val, err, ev, status = K.integrate_z_sq(
            a, b, tloc,
            cfg.crossover_t, cfg.riemann_siegel_correction_order,
            cfg.euler_maclaurin_terms, self.depth_limit,
        )
        self._evals += ev
        if status != 0:
            raise ConvergenceError(
                "Hardy cell [%g, %g] hit the subdivision depth limit" % (a, b)
            )
        return val, err

    def _fine_block(self, m):
        if m in self._fine:
            return self._fine[m]
        self._ensure_checkpoint(m)
        t0 = self.CHECKPOINT_SPACING * m
        cum = np.zeros(self.CELLS_PER_BLOCK + 1)
        errs = np.zeros(self.CELLS_PER_BLOCK + 1)
        celltol = self.tol / self.CELLS_PER_BLOCK
        for j in range(self.CELLS_PER_BLOCK):
            a = t0 + self.FINE_STEP * j
            val, err = self._kernel_cell(a, a + self.FINE_STEP, celltol)
            cum[j + 1] = cum[j] + val
            errs[j + 1] = errs[j] + err
        self._fine[m] = cum
        self._fine_errs[m] = errs
        self._blocks_built += 1
        if len(self._checkpoints) == m + 1:
            self._checkpoints.append(self._checkpoints[m] + cum[-1])
            self._checkpoint_errs.append(self._checkpoint_errs[m] + errs[-1])
        return cum

    def _ensure_checkpoint(self, m):
        while len(self._checkpoints) <= m:
            self._fine_block(len(self._checkpoints) - 1)

    # -- queries -------------------------------------------------------

    def value_with_error(self, T):
        T = float(T)
        if T < 0.0:
            raise EngineDomainError("A(T) requires T >= 0, got %r" % (T,))
        if T > self.engine.config.t_max_engine:
            raise EngineDomainError(
                "T exceeds t_max_engine=%g" % self.engine.config.t_max_engine
            )
        if T == 0.0:
            return 0.0, 0.0
        with self._lock:
            m = int(T // self.CHECKPOINT_SPACING)
            r = T - self.CHECKPOINT_SPACING * m
            if r == 0.0:
                self._ensure_checkpoint(m)
                return self._checkpoints[m], self._checkpoint_errs[m]
            cum = self._fine_block(m)
            j = int(r // self.FINE_STEP)
            gap_a = self.CHECKPOINT_SPACING * m + self.FINE_STEP * j
            base = self._checkpoints[m] + cum[j]
            base_err = self._checkpoint_errs[m] + self._fine_errs[m][j]
            gap = T - gap_a
            if gap <= 0.0:
                return base, base_err
            gap_tol = self.tol * max(gap, 0.05) / self.CHECKPOINT_SPACING
            val, err = self._kernel_cell(gap_a, T, gap_tol)
            return base + val, base_err + err

    def value(self, T):
        return self.value_with_error(T)[0]

    def stats(self):
        with self._lock:
            return {
                "evaluations": self._evals,
                "blocks_built": self._blocks_built,
                "checkpoints": len(self._checkpoints) - 1,
                "loaded_checkpoints": self._loaded_checkpoints,
            }

    # -- persistence ---------------------------------------------------

    def _fingerprint(self):
        cfg = self.engine.config
        return {
            "tol": self.tol,
            "crossover_t": cfg.crossover_t,
            "rs_order": cfg.riemann_siegel_correction_order,
            "em_terms": cfg.euler_maclaurin_terms,
        }

    def save(self, path, extra=None):
        """Atomically write the checkpoint level (fine grids stay in RAM).

        `extra` lets a wrapper (the ladder) share the file by adding its
        own calibration header; those keys are matched back on load.
        """
        with self._lock:
            payload = dict(self._fingerprint())
            payload["format"] = 1
            payload["checkpoints"] = [float(x) for x in self._checkpoints]
        if extra:
            payload.update(extra)
        tmp = "%s.tmp.%d" % (path, os.getpid())
        with open(tmp, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path, engine=None, tol=1e-9, depth_limit=40, require=None):
        """Load checkpoints if the file matches the requested setup.

        Any mismatch (or unreadable file) silently yields a fresh table;
        a stale cache must never contaminate a run.  `require` adds
        caller-owned header keys to the fingerprint check.
        """
        table = cls(engine=engine, tol=tol, depth_limit=depth_limit)
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return table
        fp = table._fingerprint()
        if require:
            fp = dict(fp, **require)
        if any(data.get(k) != v for k, v in fp.items()):
            return table
        pts = data.get("checkpoints")
        if not isinstance(pts, list) or not pts or pts[0] != 0.0:
            return table
        vals = [float(x) for x in pts]
        if any(b < a for a, b in zip(vals, vals[1:])):
            return table
        table._checkpoints = vals
        # per-block budget bound: each block contributes at most ~tol
        table._checkpoint_errs = [tol * k for k in range(len(vals))]
        table._loaded_checkpoints = len(vals) - 1
        return table


_default_table = None
_default_lock = threading.Lock()


def hardy_integral(T, table=None):
    """A(T) through the given table, or a process-wide default one."""
    global _default_table
    if table is None:
        with _default_lock:
            if _default_table is None:
                _default_table = HardyIntegralTable()
            table = _default_table
    return table.value(T)
