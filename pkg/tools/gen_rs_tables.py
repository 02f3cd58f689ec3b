#!/usr/bin/env python3
"""Regenerate the Chebyshev tables for the Riemann-Siegel remainder terms.

The Z-function is computed as

    Z(t) = 2 * sum_{n<=N} cos(theta(t) - t*log n)/sqrt(n)
           + (-1)^(N-1) * tau^(-1/4) * sum_j C_j(p) * tau^(-j/2)

with tau = t/(2*pi), N = floor(sqrt(tau)), p = sqrt(tau) - N.  The remainder
coefficient functions C_j(p) are universal; this script recovers them
numerically by least squares against a high-precision Euler-Maclaurin oracle
evaluated at families of heights sharing the same fractional part p, then fits
each C_j by a Chebyshev series on p in [0, 1].

Output: src/zetalab/_kernels/rs_tables.py (frozen float tables, both backends
read it at import).  Dev-only script; requires mpmath.  Runtime ~ a few
minutes.
"""

import argparse
import math
import sys
import time
from pathlib import Path

import mpmath as mp

# Heights tau = (m + p)^2 used for the per-p least squares.  x = 1/(m+p) stays
# small enough that truncating the expansion at degree FIT_DEG leaves
# contamination below ~1e-11.
M_VALUES = [24, 27, 30, 34, 38, 43, 48, 54, 61, 69, 78]
FIT_DEG = 7          # powers x^0 .. x^7 in the least squares
KEEP_ORDERS = 5      # C_0 .. C_4 are written out
N_PNODES = 64
CHEB_TRIM = 1e-13


def em_zeta_half(t, dps=40):
    """zeta(1/2 + i t) by Euler-Maclaurin at high precision."""
    with mp.workdps(dps):
        s = mp.mpc(mp.mpf("0.5"), t)
        N = int(mp.ceil(1.2 * t)) + 10
        total = mp.mpc(0)
        for n in range(1, N):
            total += mp.power(n, -s)
        total += mp.power(N, 1 - s) / (s - 1)
        total += mp.power(N, -s) / 2
        # Bernoulli tail; poch is updated termwise to avoid huge intermediates
        term_base = mp.power(N, -s) / N
        poch = s
        Nsq = mp.mpf(N) ** 2
        for j in range(1, 26):
            total += mp.bernoulli(2 * j) / mp.factorial(2 * j) * poch * term_base
            poch *= (s + 2 * j - 1) * (s + 2 * j)
            term_base /= Nsq
        return +total


def theta_exact(t, dps=40):
    with mp.workdps(dps):
        return mp.im(mp.loggamma(mp.mpf("0.25") + 0.5j * mp.mpf(t))) - mp.mpf(t) / 2 * mp.log(mp.pi)


def z_exact(t, dps=40):
    th = theta_exact(t, dps)
    with mp.workdps(dps):
        return mp.re(mp.expj(th) * em_zeta_half(t, dps))


def remainder_scaled(p, m, dps=40):
    """R(t) * (-1)^(N-1) * tau^(1/4) at tau = (m+p)^2, i.e. sum_j C_j(p) x^j."""
    with mp.workdps(dps):
        a = mp.mpf(m) + p
        tau = a * a
        t = 2 * mp.pi * tau
        th = theta_exact(t, dps)
        main = mp.mpf(0)
        for n in range(1, m + 1):
            main += mp.cos(th - t * mp.log(n)) / mp.sqrt(n)
        R = z_exact(t, dps) - 2 * main
        return R * (-1) ** (m - 1) * mp.power(tau, mp.mpf("0.25"))


def fit_p_node(p, dps=40):
    """Least-squares C_0..C_FIT_DEG at one p value."""
    rows, rhs = [], []
    for m in M_VALUES:
        x = 1 / (mp.mpf(m) + p)
        rows.append([x ** j for j in range(FIT_DEG + 1)])
        rhs.append(remainder_scaled(p, m, dps))
    with mp.workdps(dps):
        A = mp.matrix(rows)
        b = mp.matrix(rhs)
        coeffs = mp.qr_solve(A, b)[0]
    return [float(coeffs[j]) for j in range(KEEP_ORDERS)]


def cheb_nodes(n):
    return [0.5 * (1 + math.cos(math.pi * (2 * i + 1) / (2 * n))) for i in range(n)]


def cheb_fit(nodes, values, trim):
    """Chebyshev coefficients on [0,1] through the given node values."""
    import numpy as np

    x = 2 * np.asarray(nodes) - 1
    deg = len(nodes) - 1
    coeffs = np.polynomial.chebyshev.chebfit(x, np.asarray(values), deg)
    keep = len(coeffs)
    while keep > 1 and abs(coeffs[keep - 1]) < trim:
        keep -= 1
    return [float(c) for c in coeffs[:keep]]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "src/zetalab/_kernels/rs_tables.py"))
    ap.add_argument("--dps", type=int, default=40)
    args = ap.parse_args()

    t0 = time.time()
    nodes = cheb_nodes(N_PNODES)
    per_order = [[] for _ in range(KEEP_ORDERS)]
    for i, p in enumerate(nodes):
        cs = fit_p_node(mp.mpf(p), args.dps)
        for j in range(KEEP_ORDERS):
            per_order[j].append(cs[j])
        if (i + 1) % 8 == 0:
            print(f"  node {i+1}/{N_PNODES}  ({time.time()-t0:.0f}s)", file=sys.stderr)

    tables = [cheb_fit(nodes, vals, CHEB_TRIM) for vals in per_order]
    for j, tab in enumerate(tables):
        print(f"C{j}: {len(tab)} chebyshev coeffs, max node value {max(abs(v) for v in per_order[j]):.3e}")

    out = Path(args.out)
    with out.open("w") as fh:
        fh.write('"""Chebyshev tables (on [0,1]) for the Riemann-Siegel remainder terms.\n\n')
        fh.write("Generated by tools/gen_rs_tables.py; do not edit by hand.\n")
        fh.write('"""\n\n')
        fh.write("REMAINDER_CHEB = [\n")
        for tab in tables:
            fh.write("    [\n")
            for v in tab:
                fh.write(f"        {v!r},\n")
            fh.write("    ],\n")
        fh.write("]\n")
    print(f"wrote {out} in {time.time()-t0:.0f}s")


if __name__ == "__main__":
    main()
