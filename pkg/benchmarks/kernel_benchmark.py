"""Compare the compiled kernel backend against the pure-numpy reference.

Runs the three hot paths (pointwise Riemann-Siegel Z, batched
Euler-Maclaurin zeta, adaptive Z^2 integration) on fixed workloads and
reports best-of-five wall times plus the max cross-backend deviation.

Usage: python -m benchmarks.kernel_benchmark  (or run the file directly)
"""

import time

import numpy as np

from zetalab._kernels import reference

try:
    from zetalab._kernels import _fastcore
except ImportError:
    _fastcore = None

CROSSOVER = 500.0
ORDER = 4
TERMS = 12
REPEATS = 5


def _best_of(fn, *args):
    best = float("inf")
    out = None
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        out = fn(*args)
        dt = time.perf_counter() - t0
        if dt < best:
            best = dt
    return best, out


def _row(name, t_pure, t_fast, dev):
    if t_fast is None:
        print("%-24s %10.3f ms %12s %12s  dev %s" % (name, 1e3 * t_pure, "-", "-", dev))
    else:
        print(
            "%-24s %10.3f ms %9.3f ms %9.1fx  dev %s"
            % (name, 1e3 * t_pure, 1e3 * t_fast, t_pure / t_fast, dev)
        )


def bench_rs_z_vec():
    ts = np.linspace(300.0, 1800.0, 20000)
    tp, vp = _best_of(reference.rs_z_vec, ts, ORDER)
    if _fastcore is None:
        _row("rs_z_vec[20k]", tp, None, "n/a")
        return
    tf, vf = _best_of(_fastcore.rs_z_vec, ts, ORDER)
    dev = float(np.abs(vp - vf).max())
    _row("rs_z_vec[20k]", tp, tf, "%.2e" % dev)


def bench_em_zeta_many():
    n = 1500
    sig = np.full(n, 0.65)
    ts = np.linspace(5.0, 240.0, n)
    tp, vp = _best_of(reference.em_zeta_many, sig, ts, TERMS)
    if _fastcore is None:
        _row("em_zeta_many[1.5k]", tp, None, "n/a")
        return
    tf, vf = _best_of(_fastcore.em_zeta_many, sig, ts, TERMS)
    dev = float(np.abs(vp - vf).max())
    _row("em_zeta_many[1.5k]", tp, tf, "%.2e" % dev)


def bench_integrate():
    args = (314.0, 330.0, 1e-10, CROSSOVER, ORDER, TERMS)
    tp, rp = _best_of(reference.integrate_z_sq, *args)
    if _fastcore is None:
        _row("integrate_z_sq[16]", tp, None, "n/a")
        return
    tf, rf = _best_of(_fastcore.integrate_z_sq, *args)
    dev = abs(rp[0] - rf[0])
    _row("integrate_z_sq[16]", tp, tf, "%.2e" % dev)
    print(
        "  integral value %.15g (pure) vs %.15g (fast), %d evals each"
        % (rp[0], rf[0], rp[2])
    )


def main():
    print("kernel backend benchmark (best of %d)" % REPEATS)
    if _fastcore is None:
        print("compiled backend not built; timing the reference only")
    print("%-24s %13s %12s %10s" % ("case", "pure", "fast", "speedup"))
    bench_rs_z_vec()
    bench_em_zeta_many()
    bench_integrate()


if __name__ == "__main__":
    main()
