"""Jacob's ladder: the step map phi1, reverse iterations, and weights.

With A(T) the Hardy integral and H(x) = x ln x + (gamma - ln 2pi) x + c0,
the ladder map is phi1 = H^{-1} o A.  Under this operational definition
phi1'(t) = Z^2(t) / H'(phi1(t)) = Z~^2(t) exactly, which is what makes
iterated substitution work: integrating f(phi1(t)) Z~^2(t) over a
segment equals integrating f over the segment one level down.  Reverse
iterations (phi1_inverse) climb the other way and generate the segment
chains that factorization certificates live on.

All root finding stops in function-value space (residual below a fixed
fraction of root_tol scaled by the target), so downstream identities
inherit one consistent accuracy scale even where Z^2 nearly vanishes.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import TWO_PI
from .errors import (
    BracketingError,
    ChainOverlapError,
    EngineDomainError,
    MismatchedInputsError,
    SearchWindowExhaustedError,
)
from .quadrature import EULER_GAMMA, HardyIntegralTable, integrate

LN_TWO_PI = math.log(TWO_PI)


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    depth: int = 0

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise MismatchedInputsError(
                "segment needs lo < hi, got [%r, %r]" % (self.lo, self.hi)
            )
        if self.depth < 0:
            raise MismatchedInputsError("segment depth must be >= 0")

    @property
    def length(self):
        return self.hi - self.lo

    def contains(self, x):
        return self.lo <= x <= self.hi


@dataclass
class SegmentChain:
    """Base segment plus its reverse iterates, strictly ascending."""

    base: Segment
    iterates: list

    def __post_init__(self):
        segs = [self.base] + list(self.iterates)
        for r, seg in enumerate(segs):
            if seg.depth != r:
                raise MismatchedInputsError(
                    "segment at position %d carries depth %d" % (r, seg.depth)
                )
        for prev, cur in zip(segs, segs[1:]):
            if cur.lo <= prev.hi:
                raise ChainOverlapError(
                    "reverse iterates at depths %d and %d are not disjoint: "
                    "[%g, %g] then [%g, %g]"
                    % (prev.depth, cur.depth, prev.lo, prev.hi, cur.lo, cur.hi),
                    segments=(prev, cur),
                )

    def __len__(self):
        return 1 + len(self.iterates)

    def __getitem__(self, r):
        if r == 0:
            return self.base
        return self.iterates[r - 1]

    @property
    def top(self):
        return self[len(self) - 1]


class ChainProxy:
    """Barycentric Chebyshev interpolants of phi1^j on a top segment.

    Direct chain evaluation inside a quadrature is ruinously slow (every
    phi1 call re-integrates a Hardy-table gap), so the composite maps
    psi_j = phi1^j are tabulated once at Chebyshev-Lobatto nodes from
    real ladder evaluations and then interpolated.  Each depth is fitted
    independently from exact values, so interpolation errors do not
    compound through the composition.  The fit is trusted only after
    off-node probes agree with the real chain; otherwise the node count
    escalates, and as a last resort evaluation falls back to real phi1.
    """

    # absolute node accuracy; chain weights amplify node error by the
    # local log-derivative of Z^2, so this keeps w good to ~1e-8
    PROBE_TOL = 2e-10
    MAX_NODES = 2049

    def __init__(self, lt, chain):
        self.lt = lt
        self.chain = chain
        top = chain.top
        self.lo, self.hi = top.lo, top.hi
        self.depth = top.depth
        self.exact = False
        n = 128
        while True:
            self._build(n)
            err = self._probe_error()
            if err <= self.PROBE_TOL:
                break
            if 2 * n + 1 > self.MAX_NODES:
                # interpolation not trustworthy; degrade to real calls
                self.exact = True
                break
            n *= 2

    def _build(self, n):
        lt = self.lt
        half = 0.5 * (self.hi - self.lo)
        mid = 0.5 * (self.hi + self.lo)
        # ascending Lobatto nodes; endpoints are exact chain endpoints
        xs = mid - half * np.cos(np.pi * np.arange(n + 1) / n)
        xs[0], xs[-1] = self.lo, self.hi
        vals = np.empty((self.depth + 1, n + 1))
        vals[0] = xs
        hints = {}
        for i, t in enumerate(xs):
            cur = float(t)
            for j in range(self.depth):
                cur = lt.phi1(cur, hint=hints.get(j))
                hints[j] = cur
                vals[j + 1, i] = cur
        w = np.ones(n + 1)
        w[1::2] = -1.0
        w[0] *= 0.5
        w[-1] *= 0.5
        self._xs, self._vals, self._w = xs, vals, w

    def _bary(self, ts, j):
        ts = np.asarray(ts, dtype=float)
        out = np.empty(ts.shape)
        vals = self._vals[j]
        # chunked to bound the (queries x nodes) temporary
        step = max(1, 262144 // len(self._xs))
        for s in range(0, len(ts), step):
            q = ts[s:s + step]
            d = q[:, None] - self._xs[None, :]
            hit = d == 0.0
            d[hit] = 1.0
            c = self._w / d
            res = (c @ vals) / c.sum(axis=1)
            rows = hit.any(axis=1)
            if rows.any():
                res[rows] = vals[hit.argmax(axis=1)[rows]]
            out[s:s + step] = res
        return out

    def _probe_error(self):
        ts = self.lo + (self.hi - self.lo) * (np.arange(25) + 0.381966) / 25.0
        worst = 0.0
        for t in ts:
            cur = float(t)
            for j in range(1, self.depth + 1):
                approx = float(self._bary(np.array([t]), j)[0])
                cur = self.lt.phi1(cur, hint=approx)
                worst = max(worst, abs(approx - cur))
        return worst

    def chains(self, ts):
        """Per-depth arrays [ts, psi_1(ts), ..., psi_k(ts)]."""
        ts = np.asarray(ts, dtype=float)
        if self.exact:
            out = [ts]
            hints = {}
            for j in range(self.depth):
                nxt = np.array(
                    [self.lt.phi1(float(t), hint=hints.get(j)) for t in out[-1]]
                )
                if len(nxt):
                    hints[j] = float(nxt[-1])
                out.append(nxt)
            return out
        return [ts] + [self._bary(ts, j) for j in range(1, self.depth + 1)]

    def weight(self, ts):
        """Vectorized chain weight prod_j Z~^2(psi_j) on the top segment."""
        chs = self.chains(ts)
        engine = self.lt.hardy.engine
        w = np.ones(len(chs[0]))
        for j in range(self.depth):
            w *= engine.z_squared_many(chs[j]) / self.lt.h_prime_many(chs[j + 1])
        return w

    def base_points(self, ts):
        return self.chains(ts)[self.depth]


@dataclass
class LadderTable:
    hardy: HardyIntegralTable
    gamma_euler: float = EULER_GAMMA
    c0: float = 0.0
    root_tol: float = 1e-10
    l0: float = 100.0
    beta_cache: dict = field(default_factory=dict, repr=False, compare=False)
    proxy_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.root_tol <= 0.0:
            raise MismatchedInputsError("root_tol must be positive")
        if self.l0 < 10.0:
            # H is monotone only from ~1.3 up; 10 leaves a wide margin
            raise MismatchedInputsError("l0 must be >= 10")

    # -- the primitive H ----------------------------------------------

    def h(self, x):
        return x * math.log(x) + (self.gamma_euler - LN_TWO_PI) * x + self.c0

    def h_prime(self, x):
        return math.log(x) + 1.0 + self.gamma_euler - LN_TWO_PI

    def h_prime_many(self, xs):
        return np.log(xs) + (1.0 + self.gamma_euler - LN_TWO_PI)

    def _ftol(self, target):
        # one decade under root_tol, scaled like the value being matched
        return 0.1 * self.root_tol * (1.0 + abs(target))

    def h_inverse(self, y, hint=None):
        """Solve h(x) = y for x >= 2 by safeguarded Newton.

        h costs two logs, so this converges to machine level regardless
        of root_tol; a loose stop here would leave hint-dependent jitter
        in phi1 that everything downstream would inherit.
        """
        lo = 2.0
        hi = hint if hint is not None and hint > lo else 16.0
        for _ in range(200):
            if self.h(hi) >= y:
                break
            hi *= 2.0
        else:
            raise BracketingError("h_inverse could not bracket y=%g" % y)
        if self.h(lo) > y:
            raise BracketingError("h_inverse target below h(2): y=%g" % y)
        ftol = 1e-14 * (1.0 + abs(y))
        x = hint if hint is not None and lo < hint < hi else 0.5 * (lo + hi)
        for _ in range(200):
            r = self.h(x) - y
            if abs(r) <= ftol:
                return x
            if r > 0.0:
                hi = x
            else:
                lo = x
            xn = x - r / self.h_prime(x)
            if not (lo < xn < hi):
                xn = 0.5 * (lo + hi)
            if xn == x:
                return x
            x = xn
        raise BracketingError("h_inverse failed to converge for y=%g" % y)

    # -- the ladder map -----------------------------------------------

    def phi1(self, T, hint=None):
        if T < self.l0:
            raise EngineDomainError("phi1 requires T >= l0=%g, got %r" % (self.l0, T))
        return self.h_inverse(self.hardy.value(T), hint=hint)

    def phi1_inverse(self, y, hint=None):
        """The unique x > y with phi1(x) = y, i.e. A(x) = h(y).

        The A-space residual rho maps to a defect of only rho / H' in
        phi1(x), and chain endpoints inherit that defect into the base
        window the closed forms integrate over, so this solve pushes
        well below the root_tol contract, down toward the few-ulp floor
        of A itself.
        """
        if y < self.l0:
            raise EngineDomainError(
                "phi1_inverse requires y >= l0=%g, got %r" % (self.l0, y)
            )
        target = self.h(y)
        ftol = max(1e-11, 8.0 * 2.220446049250313e-16 * (1.0 + abs(target)))
        A = self.hardy.value
        t_cap = self.hardy.engine.config.t_max_engine
        lo = y
        if A(lo) > target + ftol:
            raise BracketingError(
                "A(%g) already exceeds h(%g); ladder positivity violated" % (y, y)
            )
        hi = hint if hint is not None and hint > lo else 1.1 * lo
        for _ in range(200):
            if hi > t_cap:
                raise SearchWindowExhaustedError(
                    "phi1_inverse(%g) would exceed t_max_engine=%g" % (y, t_cap)
                )
            if A(hi) >= target:
                break
            hi = 1.2 * hi
        else:
            raise BracketingError("phi1_inverse: no upper bracket for y=%g" % y)
        x = hint if hint is not None and lo < hint < hi else 0.5 * (lo + hi)
        engine = self.hardy.engine
        best_x, best_r = x, float("inf")
        for _ in range(300):
            r = A(x) - target
            if abs(r) < best_r:
                best_x, best_r = x, abs(r)
            if abs(r) <= ftol:
                return x
            if r > 0.0:
                hi = x
            else:
                lo = x
            # Newton on A has slope Z^2, which can vanish near zeros of Z;
            # fall back to bisection whenever the step is not trustworthy
            deriv = engine.z_squared(x)
            if deriv > 1e-12:
                xn = x - r / deriv
                if not (lo < xn < hi):
                    xn = 0.5 * (lo + hi)
            else:
                xn = 0.5 * (lo + hi)
            if xn == x or not (lo < xn < hi):
                # interval collapsed to machine width; best point wins
                return best_x
            x = xn
        return best_x

    # -- derived quantities -------------------------------------------

    def omega(self, t, phi=None):
        """The ladder weight denominator H'(phi1(t))."""
        if phi is None:
            phi = self.phi1(t)
        return self.h_prime(phi)

    def z_tilde_sq(self, t, phi=None):
        """Z~^2(t) = Z^2(t) / H'(phi1(t)); equals phi1'(t)."""
        return self.hardy.engine.z_squared(t) / self.omega(t, phi=phi)

    def phi_chain(self, x, k):
        """[x, phi1(x), ..., phi1^k(x)], strictly descending."""
        chain = [float(x)]
        hint = None
        for _ in range(k):
            nxt = self.phi1(chain[-1], hint=hint)
            chain.append(nxt)
            hint = nxt
        return chain

    def chain_weight(self, t, depth, chain=None):
        """Product of Z~^2 over the first `depth` ladder steps at t."""
        if chain is None:
            chain = self.phi_chain(t, depth)
        if len(chain) < depth + 1:
            raise MismatchedInputsError("chain too short for depth %d" % depth)
        w = 1.0
        engine = self.hardy.engine
        for j in range(depth):
            w *= engine.z_squared(chain[j]) / self.h_prime(chain[j + 1])
        return w

    def reverse_chain(self, L, U, k):
        """SegmentChain with base [pi L, pi L + U] and k reverse iterates.

        L is the integer base index; disjointness of consecutive iterates
        is checked on construction and reported, not assumed.
        """
        if int(L) != L:
            raise MismatchedInputsError("base index L must be an integer")
        L = int(L)
        if math.pi * L < self.l0:
            raise EngineDomainError("base pi*L=%g below l0=%g" % (math.pi * L, self.l0))
        if not (0.0 < U < math.pi / 2):
            raise MismatchedInputsError("chain width U must lie in (0, pi/2)")
        if k < 0:
            raise MismatchedInputsError("chain depth k must be >= 0")
        lo = math.pi * L
        hi = lo + U
        base = Segment(lo, hi, 0)
        iterates = []
        for r in range(1, k + 1):
            lo = self.phi1_inverse(lo, hint=None)
            hi = self.phi1_inverse(hi, hint=lo + (hi - lo))
            iterates.append(Segment(lo, hi, r))
        return SegmentChain(base, iterates)

    def chain_proxy(self, L, U, depth):
        """Cached ChainProxy for the reverse chain of [pi L, pi L + U]."""
        key = (int(L), float(U), int(depth))
        proxy = self.proxy_cache.get(key)
        if proxy is None:
            proxy = ChainProxy(self, self.reverse_chain(L, U, depth))
            self.proxy_cache[key] = proxy
        return proxy

    def transported_integral(self, f, L, U, depth, tol=1e-9):
        """Integral of f(phi1^depth(t)) * chain weight over the depth-th
        reverse iterate of [pi L, pi L + U].

        By substitution this equals the plain integral of f over the base
        segment; kept as a method so tests can check exactly that.
        """
        proxy = self.chain_proxy(L, U, depth)
        top = proxy.chain.top

        def integrand(ts):
            fv = np.asarray(f(proxy.base_points(ts)), dtype=float)
            return fv * proxy.weight(ts)

        return integrate(integrand, top.lo, top.hi, tol)

    # -- persistence ---------------------------------------------------

    def _extras(self):
        return {
            "gamma_euler": self.gamma_euler,
            "c0": self.c0,
            "root_tol": self.root_tol,
        }

    def save(self, path):
        """Write the Hardy checkpoints plus the ladder calibration header."""
        self.hardy.save(path, extra=self._extras())

    @classmethod
    def load(cls, path, engine=None, tol=1e-9, depth_limit=40, **kwargs):
        """Load a ladder sharing the Hardy table file; any calibration
        mismatch discards the cached checkpoints."""
        table = cls(hardy=HardyIntegralTable(engine=engine, tol=tol,
                                            depth_limit=depth_limit), **kwargs)
        loaded = HardyIntegralTable.load(path, engine=engine, tol=tol,
                                         depth_limit=depth_limit,
                                         require=table._extras())
        table.hardy = loaded
        return table
