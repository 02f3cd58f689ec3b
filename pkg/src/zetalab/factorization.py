"""Factorization certificates built on reverse ladder chains.

For a nonnegative test function f on the base segment [pi L, pi L + U],
the transported integrand G(t) = f(phi1^k(t)) w(t) with the chain weight
w(t) = prod_j Z~^2(phi1^j(t)) integrates over the depth-k reverse segment
to the plain base integral of f, and w alone integrates to U.  Applying
the integral mean value theorem to G and to w yields interior points
xi* and eta* whose descending ladder chains give the alpha and beta
nodes; the ratio of the two chain products then factorizes the base mean
of f divided by f(alpha_0).  A certificate records the nodes and both
sides so the identity can be re-verified from scratch.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateDenominatorError,
    MismatchedInputsError,
    NoBracketError,
)
from .identity import EquationId, IdentityReport, inputs_digest, make_report
from .ladder import Segment
from .quadrature import integrate

DEGENERATE_EPS = 1e-12
DEFAULT_MVP_TOL = 1e-10
DEFAULT_CERT_TOL = 1e-6
MAX_CHAIN_DEPTH = 5
SCAN_CELLS = 1024
SCAN_RAISE = 8


@dataclass(frozen=True)
class FunctionId:
    """A named base function with its admissible width bound.

    mean_closed maps U to the exact mean over [pi L, pi L + U]; the four
    canonical functions are pi-periodic so the mean is L-free.  Custom
    functions leave it None and fall back to quadrature on the base.
    """

    tag: str
    u_max: float
    evaluator: object = field(compare=False, repr=False)
    mean_closed: object = field(compare=False, repr=False, default=None)


def _sin_ratio(U):
    return math.sin(2.0 * U) / (2.0 * U)


SIN2 = FunctionId("sin2", math.pi / 2, lambda t: np.sin(t) ** 2,
                  lambda U: 0.5 * (1.0 - _sin_ratio(U)))
COS2 = FunctionId("cos2", math.pi / 2, lambda t: np.cos(t) ** 2,
                  lambda U: 0.5 * (1.0 + _sin_ratio(U)))
COS2T = FunctionId("cos2t", math.pi / 4, lambda t: np.cos(2.0 * t),
                   lambda U: _sin_ratio(U))
UNIT = FunctionId("unit", math.pi / 2, lambda t: np.ones_like(t),
                  lambda U: 1.0)

CANONICAL = {f.tag: f for f in (SIN2, COS2, COS2T, UNIT)}


def custom_function(tag, u_max, evaluator):
    """Wrap a user-supplied base function; admissibility is sampled at
    factorize time on the actual base segment."""
    if tag in CANONICAL:
        raise MismatchedInputsError("tag %r is reserved" % tag)
    if not (0.0 < u_max <= math.pi / 2):
        raise MismatchedInputsError("u_max must lie in (0, pi/2]")
    return FunctionId(tag, u_max, evaluator, None)


# -- mean value points ------------------------------------------------


@dataclass(frozen=True)
class MVPResult:
    xi: float
    mean: float
    value: float
    residual: float
    multiplicity: int


class _Scan:
    def __init__(self, mean, brackets, multiplicity, constant, midpoint):
        self.mean = mean
        self.brackets = brackets
        self.multiplicity = multiplicity
        self.constant = constant
        self.midpoint = midpoint


def _scan_mean(g, seg, tol):
    """Compute the mean of g over seg and bracket every crossing.

    Brackets are (lo, hi, sign_at_lo) cells ordered left to right; an
    exact grid hit degenerates to a zero-width bracket.  One resolution
    raise is attempted before giving up on a non-constant g.
    """
    length = seg.length
    quad = integrate(g, seg.lo, seg.hi, 0.1 * tol * length)
    mean = quad.value / length
    vtol = tol * (1.0 + abs(mean))
    cells = SCAN_CELLS
    for attempt in range(2):
        xs = np.linspace(seg.lo, seg.hi, cells + 1)
        gv = np.asarray(g(xs), dtype=float)
        d = gv - mean
        brackets = []
        for i in range(cells):
            if d[i] == 0.0:
                brackets.append((xs[i], xs[i], 0.0))
            elif d[i] * d[i + 1] < 0.0:
                brackets.append((xs[i], xs[i + 1], d[i]))
        if d[cells] == 0.0:
            brackets.append((xs[cells], xs[cells], 0.0))
        if brackets:
            return _Scan(mean, brackets, len(brackets), False, None)
        if np.max(np.abs(d)) <= vtol:
            # flat to tolerance: every point is a mean value point
            return _Scan(mean, [], 0, True, 0.5 * (seg.lo + seg.hi))
        cells *= SCAN_RAISE
    raise NoBracketError(
        "no mean crossing found on [%g, %g] at %d cells" % (seg.lo, seg.hi, cells)
    )


def _refine(g, mean, vtol, lo, hi, sign_lo):
    """Bisect one bracket down to the value condition."""
    if lo == hi:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            return mid
        dm = float(np.asarray(g(np.array([mid])), dtype=float)[0]) - mean
        if abs(dm) <= vtol:
            return mid
        if (dm > 0.0) == (sign_lo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def locate_mean_value(g, seg, tol=DEFAULT_MVP_TOL, which=0):
    """Leftmost (or `which`-th) interior point where g meets its mean.

    The stopping rule lives in function-value space: the returned xi
    satisfies |g(xi) - mean| <= tol * (1 + |mean|) unless the bracket
    collapses to machine width first.
    """
    scan = _scan_mean(g, seg, tol)
    if scan.constant:
        if which > 0:
            raise NoBracketError("constant integrand has a single canonical point")
        xi = scan.midpoint
    else:
        if which >= len(scan.brackets):
            raise NoBracketError(
                "only %d mean crossings available" % len(scan.brackets)
            )
        lo, hi, sign_lo = scan.brackets[which]
        vtol = tol * (1.0 + abs(scan.mean))
        xi = _refine(g, scan.mean, vtol, lo, hi, sign_lo)
    val = float(np.asarray(g(np.array([xi])), dtype=float)[0])
    return MVPResult(
        xi=xi,
        mean=scan.mean,
        value=val,
        residual=abs(val - scan.mean),
        multiplicity=scan.multiplicity,
    )


def mean_value_point(g, seg, tol=DEFAULT_MVP_TOL):
    return locate_mean_value(g, seg, tol).xi


# -- certificates -----------------------------------------------------


@dataclass
class FactorizationCertificate:
    f: FunctionId
    L: int
    U: float
    k: int
    chain: object
    alphas: list
    betas: list
    xi_star: float
    eta_star: float
    lhs_product: float
    rhs_closed_form: float
    residual: float
    ivt_multiplicity: int

    def to_dict(self):
        return {
            "f": self.f.tag,
            "L": self.L,
            "U": self.U,
            "k": self.k,
            "alphas": [float(a) for a in self.alphas],
            "betas": [float(b) for b in self.betas],
            "xi_star": self.xi_star,
            "eta_star": self.eta_star,
            "lhs": self.lhs_product,
            "rhs": self.rhs_closed_form,
            "residual": self.residual,
            "ivt_multiplicity": self.ivt_multiplicity,
        }


def _check_admissible(f, base):
    """Sampled C~0 gate for custom functions: continuous was promised,
    nonnegative and not identically zero we can actually check."""
    xs = np.linspace(base.lo, base.hi, 257)
    fv = np.asarray(f.evaluator(xs), dtype=float)
    if not np.all(np.isfinite(fv)):
        raise MismatchedInputsError("custom function %r is not finite on base" % f.tag)
    if np.min(fv) < -DEGENERATE_EPS:
        raise MismatchedInputsError(
            "custom function %r is negative on the base segment" % f.tag
        )
    if np.max(fv) <= DEGENERATE_EPS:
        raise MismatchedInputsError(
            "custom function %r vanishes identically on the base segment" % f.tag
        )


def factorize(f, L, U, k, lt, mvp_tol=DEFAULT_MVP_TOL, k0=MAX_CHAIN_DEPTH):
    """Build the k-step factorization certificate for f on [pi L, pi L + U]."""
    if not isinstance(f, FunctionId):
        raise MismatchedInputsError("f must be a FunctionId")
    if int(L) != L:
        raise MismatchedInputsError("base index L must be an integer")
    L = int(L)
    if L < lt.l0:
        raise MismatchedInputsError("base index L=%d below floor %g" % (L, lt.l0))
    if not (0.0 < U < f.u_max):
        raise MismatchedInputsError(
            "width U=%g outside (0, %g) for %s" % (U, f.u_max, f.tag)
        )
    if not (1 <= k <= k0):
        raise MismatchedInputsError("depth k=%d outside [1, %d]" % (k, k0))

    proxy = lt.chain_proxy(L, U, k)
    chain = proxy.chain
    base, top = chain.base, chain.top
    if f.mean_closed is None:
        _check_admissible(f, base)

    # beta side depends only on (L, U, k); shared across every f
    key = (L, U, k)
    cached = lt.beta_cache.get(key)
    if cached is None:
        mvp_w = locate_mean_value(proxy.weight, top, mvp_tol)
        cached = {
            "eta_star": mvp_w.xi,
            "beta_chain": lt.phi_chain(mvp_w.xi, k),
            "mean_w": mvp_w.mean,
        }
        lt.beta_cache[key] = cached
    eta_star = cached["eta_star"]
    beta_chain = cached["beta_chain"]

    def g_vec(ts):
        fv = np.asarray(f.evaluator(proxy.base_points(ts)), dtype=float)
        return fv * proxy.weight(ts)

    scan = _scan_mean(g_vec, top, mvp_tol)
    vtol = mvp_tol * (1.0 + abs(scan.mean))
    n_brackets = len(scan.brackets) if not scan.constant else 1
    xi_star = alpha_chain = None
    for which in range(n_brackets):
        if scan.constant:
            xi = scan.midpoint
        else:
            lo, hi, sign_lo = scan.brackets[which]
            xi = _refine(g_vec, scan.mean, vtol, lo, hi, sign_lo)
        cand_chain = lt.phi_chain(xi, k)
        den = float(np.asarray(f.evaluator(np.array([cand_chain[k]])), dtype=float)[0])
        if abs(den) > DEGENERATE_EPS:
            xi_star, alpha_chain, f_alpha0 = xi, cand_chain, den
            break
    if xi_star is None:
        raise DegenerateDenominatorError(
            "f(alpha_0) vanishes at every mean crossing for %s on (L=%d, U=%g, k=%d)"
            % (f.tag, L, U, k)
        )

    # descending chains: alpha_chain[j] = phi1^j(xi*), so alpha_r = chain[k-r]
    alphas = [alpha_chain[k - r] for r in range(k + 1)]
    betas = [beta_chain[k - r] for r in range(1, k + 1)]

    # G(xi*) = f(alpha_0) w(xi*) equals mean_G, w(eta*) equals mean_w,
    # and mean_G / mean_w is the base mean of f; so the Z~^2 ratio
    # product alone already matches mean_f / f(alpha_0)
    num = lt.chain_weight(xi_star, k, chain=alpha_chain)
    den_w = lt.chain_weight(eta_star, k, chain=beta_chain)
    lhs = num / den_w

    if f.mean_closed is not None:
        mean_f = f.mean_closed(U)
    else:
        mean_f = integrate(f.evaluator, base.lo, base.hi, 0.1 * mvp_tol * U).value / U
    rhs = mean_f / f_alpha0

    return FactorizationCertificate(
        f=f,
        L=L,
        U=U,
        k=k,
        chain=chain,
        alphas=alphas,
        betas=betas,
        xi_star=xi_star,
        eta_star=eta_star,
        lhs_product=lhs,
        rhs_closed_form=rhs,
        residual=abs(lhs - rhs),
        ivt_multiplicity=scan.multiplicity,
    )


def verify_certificate(cert, lt, cert_tol=DEFAULT_CERT_TOL):
    """Re-derive both sides of a certificate from its stored nodes.

    The chain is rebuilt, node membership in the reverse segments is
    rechecked, the products are recomputed from fresh Z evaluations, and
    the right side comes from fresh quadrature rather than the stored
    closed form.  Tampered nodes must surface as FAIL, not an exception.
    """
    engine = lt.hardy.engine
    k = cert.k
    chain = lt.reverse_chain(cert.L, cert.U, k)
    slack = 10.0 * lt.root_tol
    member_ok = True
    for r in range(k + 1):
        seg = chain[r]
        if not (seg.lo - slack <= cert.alphas[r] <= seg.hi + slack):
            member_ok = False
    for r in range(1, k + 1):
        seg = chain[r]
        if not (seg.lo - slack <= cert.betas[r - 1] <= seg.hi + slack):
            member_ok = False

    # fresh products off the stored nodes; descending order for weights
    a_desc = list(reversed(cert.alphas))
    b_desc = list(reversed(cert.betas)) + [lt.phi1(cert.betas[0])]
    num = den = 1.0
    for j in range(k):
        num *= engine.z_squared(a_desc[j]) / lt.h_prime(a_desc[j + 1])
        den *= engine.z_squared(b_desc[j]) / lt.h_prime(b_desc[j + 1])

    f_alpha0 = float(
        np.asarray(cert.f.evaluator(np.array([cert.alphas[0]])), dtype=float)[0]
    )
    digest_src = cert.to_dict()
    if abs(f_alpha0) <= DEGENERATE_EPS or den == 0.0:
        return IdentityReport(
            equation_id=EquationId.FACT,
            lhs=float("nan"),
            rhs=float("nan"),
            residual=float("inf"),
            tolerance=cert_tol,
            verdict="FAIL",
            inputs_digest=inputs_digest(digest_src),
        )
    lhs = num / den
    base = chain.base
    quad = integrate(
        lambda ts: np.asarray(cert.f.evaluator(ts), dtype=float),
        base.lo,
        base.hi,
        0.01 * cert_tol * cert.U,
    )
    rhs = quad.value / (cert.U * f_alpha0)
    report = make_report(EquationId.FACT, lhs, rhs, cert_tol, digest_src)
    if not member_ok and report.verdict == "PASS":
        report = IdentityReport(
            equation_id=report.equation_id,
            lhs=report.lhs,
            rhs=report.rhs,
            residual=report.residual,
            tolerance=report.tolerance,
            verdict="FAIL",
            inputs_digest=report.inputs_digest,
        )
    return report
