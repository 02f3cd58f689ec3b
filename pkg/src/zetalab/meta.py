"""Crossbreeding of factorization certificates into hybrid identities.

A certificate pins one function's transported mean to a ratio product of
Z~^2 values.  Combining certificates that share the same base window (L, U)
eliminates the window mean and leaves identities among the products and the
trig factors at the base points: a sum form equal to 1, a difference form
equal to sin(2U)/2U, and a three-family form closing on the cos 2t term.
Replacing each Z~^2 by |zeta(1/2+it)|^2 gives the asymptotic counterparts,
which hold only up to the accumulated omega-ratio drift, so those are judged
against a loose envelope rather than a fixed exact tolerance.

Grafting goes one step further: the trig factors themselves are realized as
off-critical-line values |zeta(w_l)| = a_l with w_l found in three disjoint
vertical strips.  Substituting the grafted values into the hybrid forms
yields the exact and asymptotic meta identities (THM1/THM2, COR1..COR4) and,
after multiplying through by the shared beta product, the denominator-free
secondary form (SEC).

The _LITERAL equation variants record an alternative reading of two of the
formulas (w_1 repeated in the sum form; the third family's critical-line
factor in the middle term of the k=1 secondary form).  They are evaluated
for the record and excluded from any gating.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .bohr import (
    DEFAULT_T_MAX,
    DEFAULT_T_START,
    DEFAULT_WINDOW,
    ROOT_TOL_BOHR,
    build_strips,
    find_a_point,
)
from .errors import (
    AccuracyWarning,
    MismatchedInputsError,
    NotFoundError,
    ZetaLabError,
)
from .factorization import COS2, COS2T, SIN2, factorize
from .identity import EquationId, make_report

QUARTER_PI = math.pi / 4.0

DEFAULT_EXACT_TOL = 1e-6
DEFAULT_ENVELOPE = 0.05
DEFAULT_GRAFT_TOL = 1e-8
DEFAULT_MIN_GAP = 1e-6

# ~9 ulp at pi/4 scale; a gap condition below this cannot distinguish
# adjacent representable values, so it holds vacuously.
GAP_FLOOR = 1e-15

DEFAULT_L = 100
DEFAULT_K_TRIPLE = (2, 2, 2)
DEFAULT_U_GRID = (math.pi / 16.0, math.pi / 10.0, math.pi / 8.0)


# -- grids and graft sets ---------------------------------------------


@dataclass(frozen=True)
class UGrid:
    """Strictly increasing U values in (0, pi/4) with guarded gaps."""

    values: tuple
    min_gap: float = DEFAULT_MIN_GAP

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        gap = float(self.min_gap)
        object.__setattr__(self, "min_gap", gap)
        if not vals:
            raise MismatchedInputsError("U grid is empty")
        if not gap > 0.0:
            raise MismatchedInputsError("min_gap must be positive, got %r" % gap)
        if gap < GAP_FLOOR:
            warnings.warn(
                "min_gap below float64 spacing at pi/4 scale; gap constraints "
                "are not enforceable at working precision",
                AccuracyWarning,
                stacklevel=2,
            )
        if not vals[0] > gap:
            raise MismatchedInputsError(
                "U_1 = %.6g does not clear min_gap %.3g" % (vals[0], gap)
            )
        for a, b in zip(vals, vals[1:]):
            if not b - a > gap:
                raise MismatchedInputsError(
                    "U grid gap %.6g at %.6g below min_gap %.3g" % (b - a, a, gap)
                )
        if not QUARTER_PI - vals[-1] > gap:
            raise MismatchedInputsError(
                "U_n0 = %.6g does not clear pi/4 by min_gap %.3g" % (vals[-1], gap)
            )

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class GraftSet:
    """Three same-window certificates with their strip roots attached.

    a_values are the trig factors at the base points of the three
    certificates, in family order: sin^2(alpha_0^1), cos^2(alpha_0^2),
    cos(2 alpha_0^3).  grafts[l] realizes a_values[l] as zeta(w) = a
    inside strip l+1.
    """

    n: int
    U_n: float
    certs: tuple
    a_values: tuple
    grafts: tuple

    def __post_init__(self):
        if len(self.certs) != 3 or len(self.a_values) != 3 or len(self.grafts) != 3:
            raise MismatchedInputsError("graft set needs exactly three families")
        for a in self.a_values:
            if not 0.0 < a < 1.0:
                raise MismatchedInputsError(
                    "graft target %.6g outside (0, 1)" % a
                )
        for pos, g in enumerate(self.grafts):
            if g.strip_index != pos + 1:
                raise MismatchedInputsError(
                    "graft %d sits in strip %d" % (pos + 1, g.strip_index)
                )

    def to_dict(self):
        return {
            "n": self.n,
            "U_n": self.U_n,
            "a_values": [float(a) for a in self.a_values],
            "certificates": [c.to_dict() for c in self.certs],
            "grafts": [g.to_dict() for g in self.grafts],
        }


# -- products over a certificate's chain nodes ------------------------


def zeta_ratio_product(cert, engine):
    """prod over r of |zeta(1/2+i alpha_r)|^2 / |zeta(1/2+i beta_r)|^2."""
    za = engine.z_squared_many(np.asarray(cert.alphas[1:], dtype=float))
    zb = engine.z_squared_many(np.asarray(cert.betas, dtype=float))
    return float(np.prod(za) / np.prod(zb))


def numerator_product(cert, engine):
    """prod over r of |zeta(1/2+i alpha_r)|^2, r = 1..k."""
    za = engine.z_squared_many(np.asarray(cert.alphas[1:], dtype=float))
    return float(np.prod(za))


def beta_product(cert, engine):
    """prod over r of |zeta(1/2+i beta_r)|^2; depends only on (L, U, k)."""
    zb = engine.z_squared_many(np.asarray(cert.betas, dtype=float))
    return float(np.prod(zb))


def _f0(cert):
    # trig factor at the base point; periodicity makes the raw argument fine
    return float(cert.f.evaluator(cert.alphas[0]))


def _expect_kind(cert, fid, role):
    if cert.f.tag != fid.tag:
        raise MismatchedInputsError(
            "%s certificate must be %r, got %r" % (role, fid.tag, cert.f.tag)
        )


def _shared_frame(*certs):
    L, U = certs[0].L, certs[0].U
    for c in certs[1:]:
        if c.L != L or c.U != U:
            raise MismatchedInputsError(
                "certificates do not share (L, U): (%r, %r) vs (%r, %r)"
                % (L, U, c.L, c.U)
            )
    if not 0.0 < U < QUARTER_PI:
        raise MismatchedInputsError(
            "hybrid assembly needs U in (0, pi/4), got %.6g" % U
        )
    return L, U


# -- equation shapes --------------------------------------------------

_SUM_FORMS = frozenset(
    {
        EquationId.ECHF1,
        EquationId.ACHF1,
        EquationId.THM2,
        EquationId.THM2_LITERAL,
        EquationId.COR1,
    }
)
_THREE_FORMS = frozenset(
    {
        EquationId.ECHF2,
        EquationId.ACHF2,
        EquationId.THM1,
        EquationId.COR2,
        EquationId.SEC,
        EquationId.SEC_LITERAL,
    }
)


def equation_sides(equation_id, products, factors, target=None):
    """(lhs, rhs) of an equation's shape from ratio products and factors.

    products[l] multiplies factors[l]; family order is sin^2, cos^2,
    cos 2t.  For the grafted forms the factors are |zeta(w_l)| instead of
    the trig values; the shapes are identical.  `target` supplies the
    right-hand constant of the DIFF form.  Setting every product to 1
    reduces each shape to the underlying trigonometric identity, which is
    what the pure-math tests check.
    """
    eq = EquationId(equation_id)
    if eq is EquationId.DIFF:
        if target is None:
            raise MismatchedInputsError("DIFF needs its target value")
        return products[1] * factors[1] - products[0] * factors[0], float(target)
    if eq in _SUM_FORMS:
        return products[0] * factors[0] + products[1] * factors[1], 1.0
    if eq in _THREE_FORMS:
        lhs = products[1] * factors[1] - products[0] * factors[0]
        return lhs, products[2] * factors[2]
    if eq is EquationId.COR3:
        return products[1] * factors[1], 0.5 + 0.5 * products[2] * factors[2]
    if eq is EquationId.COR4:
        return products[0] * factors[0], 0.5 - 0.5 * products[2] * factors[2]
    raise MismatchedInputsError("equation %r has no assembled shape" % equation_id)


# -- exact hybrid assemblies ------------------------------------------


def assemble_echf1(c1, c2, tol=DEFAULT_EXACT_TOL):
    """Sum form: P1 sin^2(a0^1) + P2 cos^2(a0^2) against 1."""
    _expect_kind(c1, SIN2, "first")
    _expect_kind(c2, COS2, "second")
    _shared_frame(c1, c2)
    lhs, rhs = equation_sides(
        EquationId.ECHF1,
        (c1.lhs_product, c2.lhs_product),
        (_f0(c1), _f0(c2)),
    )
    return make_report(
        EquationId.ECHF1, lhs, rhs, tol, {"certs": [c1.to_dict(), c2.to_dict()]}
    )


def assemble_diff(c1, c2, tol=DEFAULT_EXACT_TOL):
    """Difference form: cos^2 term minus sin^2 term against sin(2U)/2U."""
    _expect_kind(c1, SIN2, "first")
    _expect_kind(c2, COS2, "second")
    _L, U = _shared_frame(c1, c2)
    lhs, rhs = equation_sides(
        EquationId.DIFF,
        (c1.lhs_product, c2.lhs_product),
        (_f0(c1), _f0(c2)),
        target=COS2T.mean_closed(U),
    )
    return make_report(
        EquationId.DIFF, lhs, rhs, tol, {"certs": [c1.to_dict(), c2.to_dict()]}
    )


def assemble_echf2(c1, c2, c3, tol=DEFAULT_EXACT_TOL):
    """Three-family form closing the difference on the cos 2t term."""
    _expect_kind(c1, SIN2, "first")
    _expect_kind(c2, COS2, "second")
    _expect_kind(c3, COS2T, "third")
    _shared_frame(c1, c2, c3)
    lhs, rhs = equation_sides(
        EquationId.ECHF2,
        (c1.lhs_product, c2.lhs_product, c3.lhs_product),
        (_f0(c1), _f0(c2), _f0(c3)),
    )
    return make_report(
        EquationId.ECHF2,
        lhs,
        rhs,
        tol,
        {"certs": [c1.to_dict(), c2.to_dict(), c3.to_dict()]},
    )


def assemble_achf(certs, variant, engine, envelope=DEFAULT_ENVELOPE):
    """Asymptotic counterpart: Z~^2 ratios replaced by |zeta(1/2+it)|^2.

    The omega factors no longer cancel, so the identity holds only up to
    their accumulated drift; the report is judged against `envelope`.
    """
    eq = EquationId(variant)
    if eq is EquationId.ACHF1:
        if len(certs) != 2:
            raise MismatchedInputsError("ACHF1 takes exactly two certificates")
        c1, c2 = certs
        _expect_kind(c1, SIN2, "first")
        _expect_kind(c2, COS2, "second")
        _shared_frame(c1, c2)
        lhs, rhs = equation_sides(
            eq,
            (zeta_ratio_product(c1, engine), zeta_ratio_product(c2, engine)),
            (_f0(c1), _f0(c2)),
        )
    elif eq is EquationId.ACHF2:
        if len(certs) != 3:
            raise MismatchedInputsError("ACHF2 takes exactly three certificates")
        c1, c2, c3 = certs
        _expect_kind(c1, SIN2, "first")
        _expect_kind(c2, COS2, "second")
        _expect_kind(c3, COS2T, "third")
        _shared_frame(c1, c2, c3)
        lhs, rhs = equation_sides(
            eq,
            (
                zeta_ratio_product(c1, engine),
                zeta_ratio_product(c2, engine),
                zeta_ratio_product(c3, engine),
            ),
            (_f0(c1), _f0(c2), _f0(c3)),
        )
    else:
        raise MismatchedInputsError("variant must be ACHF1 or ACHF2, got %r" % variant)
    return make_report(
        eq, lhs, rhs, envelope, {"certs": [c.to_dict() for c in certs]}
    )


# -- grafting ---------------------------------------------------------


def graft_targets(certs):
    """Validated (a_1, a_2, a_3) trig targets of a same-window triple."""
    if len(certs) != 3:
        raise MismatchedInputsError("graft takes exactly three certificates")
    c1, c2, c3 = certs
    _expect_kind(c1, SIN2, "first")
    _expect_kind(c2, COS2, "second")
    _expect_kind(c3, COS2T, "third")
    _shared_frame(c1, c2, c3)

    a1, a2, a3 = _f0(c1), _f0(c2), _f0(c3)
    if not 0.0 < a1 < 0.5:
        raise MismatchedInputsError("a_1 = %.6g outside (0, 1/2)" % a1)
    if not 0.5 < a2 < 1.0:
        raise MismatchedInputsError("a_2 = %.6g outside (1/2, 1)" % a2)
    if not 0.0 < a3 < 1.0:
        raise MismatchedInputsError("a_3 = %.6g outside (0, 1)" % a3)
    return a1, a2, a3


def attempt_grafts(
    a_values,
    layout,
    engine,
    t_start=DEFAULT_T_START,
    t_max=DEFAULT_T_MAX,
    h_w=DEFAULT_WINDOW,
    root_tol=ROOT_TOL_BOHR,
    graft_tol=DEFAULT_GRAFT_TOL,
):
    """Per-strip searches for the three targets.

    Returns (points, failures): points[l] is a GraftPoint or None,
    failures[l] the NotFoundError for that strip or None.  Partial
    outcomes are kept so a scan can report which strips succeeded even
    when the set as a whole cannot be completed.
    """
    strips = build_strips(layout)
    points, failures = [], []
    for a, strip in zip(a_values, strips):
        try:
            gp = find_a_point(
                engine,
                a,
                strip,
                t_start=t_start,
                t_max=t_max,
                h_w=h_w,
                root_tol=root_tol,
            )
        except NotFoundError as exc:
            points.append(None)
            failures.append(exc)
            continue
        if gp.residual > graft_tol:
            warnings.warn(
                "graft residual above target in strip %d" % strip.index,
                AccuracyWarning,
                stacklevel=2,
            )
        points.append(gp)
        failures.append(None)
    return points, failures


def graft(
    certs,
    layout,
    engine,
    n=0,
    t_start=DEFAULT_T_START,
    t_max=DEFAULT_T_MAX,
    h_w=DEFAULT_WINDOW,
    root_tol=ROOT_TOL_BOHR,
    graft_tol=DEFAULT_GRAFT_TOL,
):
    """Attach strip roots zeta(w_l) = a_l to a same-window triple.

    a_1 = sin^2(alpha_0^1) lands in (0, 1/2), a_2 = cos^2(alpha_0^2) in
    (1/2, 1), a_3 = cos(2 alpha_0^3) in (0, 1); each is realized in its
    own strip, lowest root first.  A strip search that exhausts t_max
    raises NotFoundError; grid drivers record it and move on.
    """
    a_values = graft_targets(certs)
    points, failures = attempt_grafts(
        a_values,
        layout,
        engine,
        t_start=t_start,
        t_max=t_max,
        h_w=h_w,
        root_tol=root_tol,
        graft_tol=graft_tol,
    )
    for exc in failures:
        if exc is not None:
            raise exc

    return GraftSet(
        n=int(n),
        U_n=float(certs[0].U),
        certs=tuple(certs),
        a_values=a_values,
        grafts=tuple(points),
    )


def _strip_moduli(gs, engine):
    # fresh |zeta(w_l)|, not the stored targets; the graft residual is the gap
    return tuple(abs(engine.zeta_strip_refined(g.w)) for g in gs.grafts)


def meta_exact(gs, engine, tol=DEFAULT_EXACT_TOL):
    """Exact grafted identities: (THM1, THM2, THM2_LITERAL reports).

    THM1 is the three-family form with |zeta(w_l)| substituted for the
    trig factors; THM2 the sum form.  The literal variant repeats w_1 in
    both sum terms and is reported without being gated on.
    """
    P = tuple(c.lhs_product for c in gs.certs)
    zw = _strip_moduli(gs, engine)
    inputs = {"graft_set": gs.to_dict()}

    lhs1, rhs1 = equation_sides(EquationId.THM1, P, zw)
    thm1 = make_report(EquationId.THM1, lhs1, rhs1, tol, inputs)

    lhs2, rhs2 = equation_sides(EquationId.THM2, P, zw)
    thm2 = make_report(EquationId.THM2, lhs2, rhs2, tol, inputs)

    lhsl, rhsl = equation_sides(EquationId.THM2_LITERAL, P, (zw[0], zw[0]))
    thm2_lit = make_report(EquationId.THM2_LITERAL, lhsl, rhsl, tol, inputs)

    return thm1, thm2, thm2_lit


def meta_asymptotic(gs, engine, envelope=DEFAULT_ENVELOPE):
    """Asymptotic grafted identities: (COR1, COR2, COR3, COR4 reports)."""
    Q = tuple(zeta_ratio_product(c, engine) for c in gs.certs)
    zw = _strip_moduli(gs, engine)
    inputs = {"graft_set": gs.to_dict()}

    reports = []
    for eq in (EquationId.COR1, EquationId.COR2, EquationId.COR3, EquationId.COR4):
        lhs, rhs = equation_sides(eq, Q, zw)
        reports.append(make_report(eq, lhs, rhs, envelope, inputs))
    return tuple(reports)


def secondary_reports(gs, engine, envelope=DEFAULT_ENVELOPE):
    """(SEC, SEC_LITERAL or None) from an equal-k graft set.

    With k_1 = k_2 = k_3 the beta chains coincide, so multiplying the
    COR2 relation through by the common beta product leaves numerator-only
    products.  SEC's tolerance is envelope times that product and its
    verdict must agree with COR2's up to rounding at the boundary.  The
    k=1 literal variant puts the third family's critical-line factor in
    the middle term; it is reported, never gated on.
    """
    c1, c2, c3 = gs.certs
    if not c1.k == c2.k == c3.k:
        raise MismatchedInputsError("secondary form needs equal k across families")
    # identical beta chains across the three certificates by construction
    if not c1.betas == c2.betas == c3.betas:
        raise MismatchedInputsError("beta chains differ across equal-k certificates")

    B = beta_product(c1, engine)
    N = tuple(numerator_product(c, engine) for c in (c1, c2, c3))
    zw = _strip_moduli(gs, engine)
    inputs = {"graft_set": gs.to_dict(), "beta_product": B}

    lhs, rhs = equation_sides(EquationId.SEC, N, zw)
    sec = make_report(EquationId.SEC, lhs, rhs, envelope * B, inputs)

    sec_lit = None
    if c1.k == 1:
        lhsl, rhsl = equation_sides(EquationId.SEC_LITERAL, (N[2], N[1], N[2]), zw)
        sec_lit = make_report(EquationId.SEC_LITERAL, lhsl, rhsl, envelope * B, inputs)

    return sec, sec_lit


def meta_secondary(
    L,
    U,
    k,
    layout,
    lt,
    envelope=DEFAULT_ENVELOPE,
    t_start=DEFAULT_T_START,
    t_max=DEFAULT_T_MAX,
    h_w=DEFAULT_WINDOW,
    root_tol=ROOT_TOL_BOHR,
):
    """Equal-k pipeline: (SEC, COR2, SEC_LITERAL or None) at one window."""
    k = int(k)
    engine = lt.hardy.engine
    c1 = factorize(SIN2, L, U, k, lt)
    c2 = factorize(COS2, L, U, k, lt)
    c3 = factorize(COS2T, L, U, k, lt)
    gs = graft(
        (c1, c2, c3),
        layout,
        engine,
        t_start=t_start,
        t_max=t_max,
        h_w=h_w,
        root_tol=root_tol,
    )
    cor2 = meta_asymptotic(gs, engine, envelope=envelope)[1]
    sec, sec_lit = secondary_reports(gs, engine, envelope=envelope)
    return sec, cor2, sec_lit


# -- grid driver ------------------------------------------------------


def scan_u_grid(
    grid,
    L=DEFAULT_L,
    k_triple=DEFAULT_K_TRIPLE,
    layout=None,
    lt=None,
    exact_tol=DEFAULT_EXACT_TOL,
    envelope=DEFAULT_ENVELOPE,
    t_start=DEFAULT_T_START,
    t_max=DEFAULT_T_MAX,
    h_w=DEFAULT_WINDOW,
    root_tol=ROOT_TOL_BOHR,
    include_secondary=False,
):
    """Run certificates, hybrids, grafts, and meta identities per U_n.

    Returns one bundle dict per grid value, in grid order.  The hybrid
    reports stand on the certificates alone, so they are kept even when
    a strip search comes up empty; the grafted identities need all three
    strips and appear only then.  Failed strip searches land verbatim in
    the bundle's graft_errors.  A failure before the certificates exist
    (a degenerate denominator, say) is recorded on the bundle's error
    field and the scan continues.
    """
    if lt is None:
        raise MismatchedInputsError("scan_u_grid needs a ladder table")
    if layout is None:
        raise MismatchedInputsError("scan_u_grid needs a strip layout")
    if not isinstance(grid, UGrid):
        grid = UGrid(values=tuple(grid))
    k1, k2, k3 = (int(v) for v in k_triple)
    engine = lt.hardy.engine

    bundles = []
    for n, U in enumerate(grid.values, start=1):
        bundle = {
            "L": int(L),
            "U_n": float(U),
            "k1": k1,
            "k2": k2,
            "k3": k3,
            "certificates": [],
            "grafts": [],
            "reports": [],
        }
        try:
            c1 = factorize(SIN2, L, U, k1, lt)
            c2 = factorize(COS2, L, U, k2, lt)
            c3 = factorize(COS2T, L, U, k3, lt)
            bundle["certificates"] = [c.to_dict() for c in (c1, c2, c3)]
            reports = [
                assemble_echf1(c1, c2, tol=exact_tol),
                assemble_diff(c1, c2, tol=exact_tol),
                assemble_echf2(c1, c2, c3, tol=exact_tol),
                assemble_achf((c1, c2), EquationId.ACHF1, engine, envelope=envelope),
                assemble_achf(
                    (c1, c2, c3), EquationId.ACHF2, engine, envelope=envelope
                ),
            ]
            a_values = graft_targets((c1, c2, c3))
            points, failures = attempt_grafts(
                a_values,
                layout,
                engine,
                t_start=t_start,
                t_max=t_max,
                h_w=h_w,
                root_tol=root_tol,
            )
            bundle["grafts"] = [g.to_dict() for g in points if g is not None]
            missing = [str(exc) for exc in failures if exc is not None]
            if missing:
                bundle["graft_errors"] = missing
            else:
                gs = GraftSet(
                    n=n,
                    U_n=float(U),
                    certs=(c1, c2, c3),
                    a_values=a_values,
                    grafts=tuple(points),
                )
                reports.extend(meta_exact(gs, engine, tol=exact_tol))
                reports.extend(meta_asymptotic(gs, engine, envelope=envelope))
                if include_secondary and k1 == k2 == k3:
                    sec, sec_lit = secondary_reports(gs, engine, envelope=envelope)
                    reports.append(sec)
                    if sec_lit is not None:
                        reports.append(sec_lit)
            bundle["reports"] = [r.to_dict() for r in reports]
        except ZetaLabError as exc:
            bundle["error"] = "%s: %s" % (type(exc).__name__, exc)
        bundles.append(bundle)
    return bundles
