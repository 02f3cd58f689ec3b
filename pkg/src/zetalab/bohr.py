"""Roots of zeta(s) = a inside narrow vertical strips.

The solver locates a-points by the argument principle: an adaptive walk
around a rectangle's boundary accumulates the phase of zeta(s) - a, and
the winding count says how many roots sit inside.  Windows of fixed
height are swept upward until one winds, the lowest root is isolated by
bisection in t, then Newton (with a winding-guided rectangle shrink as
fallback) polishes it to root tolerance.  Everything is deterministic:
the same strip, target and tolerances always return the same point.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BoundaryRootError,
    BracketingError,
    LayoutInvalidError,
    MismatchedInputsError,
    NotFoundError,
)

DEFAULT_T_START = 10.0
DEFAULT_T_MAX = 5000.0
DEFAULT_WINDOW = 10.0
ROOT_TOL_BOHR = 1e-10
BOUNDARY_EPS = 1e-6
WINDING_INT_TOL = 0.05
INIT_STEP = 0.25
PERTURB = 1e-4
ISOLATE_HEIGHT = 0.25


@dataclass(frozen=True)
class StripLayout:
    """Three graft strips between sigma1 and sigma2, each of half-width
    delta around its center; the centers must be separated enough that
    the strips and their margins never touch."""

    sigma1: float = 0.60
    sigma0: tuple = (0.65, 0.75, 0.85)
    sigma2: float = 0.90
    delta: float = 0.02

    def __post_init__(self):
        if len(self.sigma0) != 3:
            raise LayoutInvalidError("sigma0 must hold exactly three centers")
        checks = [
            (self.delta > 0.0, "delta > 0"),
            (0.5 < self.sigma1, "1/2 < sigma1"),
            (self.sigma2 < 1.0, "sigma2 < 1"),
            (self.sigma1 < self.sigma0[0] - self.delta,
             "sigma1 < sigma0^1 - delta"),
            (self.sigma0[0] + self.delta < self.sigma0[1] - self.delta,
             "sigma0^1 + delta < sigma0^2 - delta"),
            (self.sigma0[1] + self.delta < self.sigma0[2] - self.delta,
             "sigma0^2 + delta < sigma0^3 - delta"),
            (self.sigma0[2] + self.delta < self.sigma2,
             "sigma0^3 + delta < sigma2"),
        ]
        for ok, name in checks:
            if not ok:
                raise LayoutInvalidError("layout violates %s" % name)


@dataclass(frozen=True)
class Strip:
    index: int
    center: float
    delta: float

    @property
    def lo(self):
        return self.center - self.delta

    @property
    def hi(self):
        return self.center + self.delta


def build_strips(layout):
    return tuple(
        Strip(index=j + 1, center=c, delta=layout.delta)
        for j, c in enumerate(layout.sigma0)
    )


@dataclass
class GraftPoint:
    w: complex
    a_target: float
    strip_index: int
    residual: float
    t_found: float

    def to_dict(self):
        return {
            "re": self.w.real,
            "im": self.w.imag,
            "a_target": self.a_target,
            "strip_index": self.strip_index,
            "residual": self.residual,
        }


def _walk_boundary(engine, rect, a, boundary_eps):
    """Total phase change of zeta - a around rect, or None on suspicion
    that a root sits on (or hugs) the boundary."""
    slo, shi, tlo, thi = rect
    corners = [
        complex(slo, tlo),
        complex(shi, tlo),
        complex(shi, thi),
        complex(slo, thi),
        complex(slo, tlo),
    ]
    pts = []
    for c0, c1 in zip(corners, corners[1:]):
        n = max(1, int(math.ceil(abs(c1 - c0) / INIT_STEP)))
        for i in range(n):
            pts.append(c0 + (c1 - c0) * (i / n))
    pts.append(corners[-1])
    vals = engine.zeta_strip_many(np.array(pts)) - a

    for _ in range(60):
        absv = np.abs(vals)
        if absv.min() < 1e-12 * (1.0 + abs(a)):
            return None
        ratio = vals[1:] / vals[:-1]
        dph = np.angle(ratio)
        bad = np.nonzero(np.abs(dph) >= 0.5 * math.pi)[0]
        if len(bad) == 0:
            return float(np.sum(dph))
        gaps = np.abs(np.diff(np.array(pts)))
        if gaps[bad].min() <= boundary_eps:
            return None
        mids = [(pts[i] + pts[i + 1]) / 2.0 for i in bad]
        mvals = engine.zeta_strip_many(np.array(mids)) - a
        new_pts, new_vals = [], []
        bset = {int(i): j for j, i in enumerate(bad)}
        for i in range(len(pts)):
            new_pts.append(pts[i])
            new_vals.append(vals[i])
            if i in bset:
                new_pts.append(mids[bset[i]])
                new_vals.append(mvals[bset[i]])
        pts = new_pts
        vals = np.array(new_vals)
    return None


def winding_number(engine, rect, a, boundary_eps=BOUNDARY_EPS):
    """Number of roots of zeta(s) = a strictly inside rect.

    A root sitting on the boundary defeats the argument principle; the
    rectangle is nudged a few times before giving up on that.
    """
    slo, shi, tlo, thi = rect
    if not (slo < shi and tlo < thi):
        raise MismatchedInputsError("empty rectangle %r" % (rect,))
    if tlo <= 0.0:
        raise MismatchedInputsError("rectangle must sit at t > 0")
    for attempt in range(4):
        eps = PERTURB * attempt
        r = (slo - eps, shi + eps, tlo - eps * (1 if tlo > 1.0 else 0), thi + eps)
        total = _walk_boundary(engine, r, a, boundary_eps)
        if total is None:
            continue
        wind = total / (2.0 * math.pi)
        n = round(wind)
        if abs(wind - n) <= WINDING_INT_TOL:
            return int(n)
    raise BoundaryRootError(
        "winding count unstable for a=%g on %r; root on boundary suspected"
        % (a, rect)
    )


def _newton_polish(engine, a, w, root_tol, box):
    slo, shi, tlo, thi = box
    for _ in range(50):
        fv = engine.zeta_strip_with_error(w)[0] - a
        if abs(fv) <= root_tol:
            return w, abs(fv)
        dv = engine.zeta_derivative_with_error(w)[0]
        if dv == 0.0:
            return None
        w = w - fv / dv
        if not (slo - 0.5 <= w.real <= shi + 0.5 and tlo - 2.0 <= w.imag <= thi + 2.0):
            return None
    return None


def _shrink_to_root(engine, a, rect):
    """Winding-guided shrink; keeps the lowest-t root of the rectangle."""
    slo, shi, tlo, thi = rect
    for _ in range(120):
        if max(shi - slo, thi - tlo) < 1e-8:
            return rect
        if thi - tlo >= shi - slo:
            tm = 0.5 * (tlo + thi)
            if winding_number(engine, (slo, shi, tlo, tm), a) >= 1:
                thi = tm
            else:
                tlo = tm
        else:
            sm = 0.5 * (slo + shi)
            if winding_number(engine, (slo, sm, tlo, thi), a) >= 1:
                shi = sm
            else:
                slo = sm
    return (slo, shi, tlo, thi)


def _extract_lowest(engine, a, strip, rect, root_tol):
    slo, shi, tlo, thi = rect
    # t-bisection toward the lowest winding window
    while thi - tlo > ISOLATE_HEIGHT:
        tm = 0.5 * (tlo + thi)
        if winding_number(engine, (slo, shi, tlo, tm), a) >= 1:
            thi = tm
        else:
            tlo = tm
    box = (slo, shi, tlo, thi)
    w0 = complex(0.5 * (slo + shi), 0.5 * (tlo + thi))
    hit = _newton_polish(engine, a, w0, root_tol, box)
    if hit is not None:
        w, res = hit
        inside = slo <= w.real <= shi and tlo - 1e-9 <= w.imag <= thi + 1e-9
        if inside:
            return GraftPoint(w=w, a_target=a, strip_index=strip.index,
                              residual=res, t_found=w.imag)
    # Newton escaped or stalled: shrink the box until it cannot miss
    sl, sh, tl, th = _shrink_to_root(engine, a, box)
    w0 = complex(0.5 * (sl + sh), 0.5 * (tl + th))
    hit = _newton_polish(engine, a, w0, root_tol, (sl, sh, tl, th))
    if hit is None:
        raise BracketingError(
            "failed to polish the a-point for a=%g in strip %d" % (a, strip.index)
        )
    w, res = hit
    return GraftPoint(w=w, a_target=a, strip_index=strip.index,
                      residual=res, t_found=w.imag)


def find_a_point(engine, a, strip, t_start=DEFAULT_T_START, t_max=DEFAULT_T_MAX,
                 h_w=DEFAULT_WINDOW, root_tol=ROOT_TOL_BOHR):
    """Lowest-t root of zeta(s) = a inside the strip above t_start."""
    if a == 0.0:
        raise MismatchedInputsError("a must be nonzero")
    if not (t_start > 0.0 and t_max > t_start):
        raise MismatchedInputsError("need 0 < t_start < t_max")
    t0 = t_start
    while t0 < t_max:
        t1 = min(t0 + h_w, t_max)
        rect = (strip.lo, strip.hi, t0, t1)
        if winding_number(engine, rect, a) >= 1:
            return _extract_lowest(engine, a, strip, rect, root_tol)
        t0 = t1
    raise NotFoundError(
        "no root of zeta(s) = %g found in strip %d below t = %g"
        % (a, strip.index, t_max),
        a=a,
        strip_index=strip.index,
        t_max=t_max,
    )


def next_a_point(engine, a, strip, after, t_max=DEFAULT_T_MAX,
                 h_w=DEFAULT_WINDOW, root_tol=ROOT_TOL_BOHR):
    """The next root strictly above a previously found one."""
    return find_a_point(engine, a, strip, t_start=after + 1e-6, t_max=t_max,
                        h_w=h_w, root_tol=root_tol)


def verify_graft(engine, graft):
    """Independent residual from the doubled-truncation evaluation."""
    return abs(engine.zeta_strip_refined(graft.w) - graft.a_target)
