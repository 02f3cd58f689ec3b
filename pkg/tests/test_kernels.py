"""Kernel backends: oracle values, invariants, and cross-backend parity."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab._kernels import reference

try:
    from zetalab._kernels import _fastcore
except ImportError:
    _fastcore = None

needs_fast = pytest.mark.skipif(
    _fastcore is None, reason="compiled backend not built"
)

# frozen against mpmath (dps=30)
THETA_100 = 87.97216523178721962548313
Z_1000 = 0.997794637521586613986
Z_4000 = -0.04784745842093374414498
ZETA_2 = 1.644934066848226436472415
ZETA_075_20 = complex(0.5846814242960431599883, -0.8432855290922587117396)

CROSS = 500.0
ORDER = 4
TERMS = 12


class TestReference:
    def test_theta_oracle(self):
        assert abs(reference.theta(100.0) - THETA_100) < 1e-12

    def test_rs_z_oracle(self):
        # order-4 remainder at t=1000 is ~6e-11
        assert abs(reference.rs_z(1000.0, ORDER) - Z_1000) < 5e-10
        assert abs(reference.rs_z(4000.0, ORDER) - Z_4000) < 5e-11

    def test_em_zeta_oracle(self):
        v, est = reference.em_zeta(2.0, 0.0, TERMS)
        assert abs(v - ZETA_2) < 1e-12
        v, est = reference.em_zeta(0.75, 20.0, TERMS)
        assert abs(v - ZETA_075_20) < 1e-10
        assert est < 1e-10

    def test_em_zeta_conjugate_symmetry(self):
        vp, _ = reference.em_zeta(0.7, 35.0, TERMS)
        vn, _ = reference.em_zeta(0.7, -35.0, TERMS)
        assert vn == vp.conjugate()

    def test_em_zeta_deriv_oracle(self):
        v, _ = reference.em_zeta_deriv(2.0, 0.0, TERMS)
        assert abs(v - (-0.9375482543158437537025741)) < 1e-12

    def test_rs_z_vec_matches_scalar(self):
        ts = np.linspace(600.0, 900.0, 50)
        vec = reference.rs_z_vec(ts, ORDER)
        for t, v in zip(ts, vec):
            assert abs(v - reference.rs_z(float(t), ORDER)) < 1e-12

    def test_em_zeta_many_matches_scalar(self):
        ts = np.linspace(10.0, 60.0, 7)
        sig = np.full(7, 0.8)
        vals = reference.em_zeta_many(sig, ts, TERMS)
        # the batch shares one truncation cutoff taken from max(t)
        n = max(20, int(math.ceil(ts.max())))
        for t, v in zip(ts, vals):
            sv, _ = reference.em_zeta(0.8, float(t), TERMS, nsum=n)
            assert abs(v - sv) < 1e-13

    def test_hardy_z_continuity_at_crossover(self):
        lo = reference.hardy_z(CROSS - 1e-9, CROSS, ORDER, TERMS)
        hi = reference.hardy_z(CROSS + 1e-9, CROSS, ORDER, TERMS)
        assert abs(hi - lo) < 1e-8

    def test_z_sq_crossover_consistency(self):
        # both branches evaluate |zeta(1/2+it)|^2; they must agree to the
        # riemann-siegel remainder scale at the switch height
        for t in (CROSS - 0.25, CROSS + 0.25):
            a = reference.z_sq(t, 1e9, ORDER, TERMS)  # force EM
            b = reference.z_sq(t, 0.0, ORDER, TERMS)  # force RS
            assert abs(a - b) < 5e-9

    @given(st.floats(min_value=0.0, max_value=5000.0))
    @settings(max_examples=40, deadline=None)
    def test_z_sq_nonnegative(self, t):
        assert reference.z_sq(t, CROSS, ORDER, TERMS) >= 0.0

    @given(
        st.floats(min_value=10.0, max_value=4000.0),
        st.floats(min_value=0.5, max_value=500.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_theta_strictly_increasing(self, t, dt):
        assert reference.theta(t + dt) > reference.theta(t)

    def test_integrate_basic(self):
        val, err, evals, status = reference.integrate_z_sq(
            300.0, 330.0, 1e-9, CROSS, ORDER, TERMS
        )
        assert status == 0
        assert evals % 15 == 0
        assert err < 1e-8
        # additivity within the reported error budget
        v1, e1, _, _ = reference.integrate_z_sq(300.0, 313.7, 1e-9, CROSS, ORDER, TERMS)
        v2, e2, _, _ = reference.integrate_z_sq(313.7, 330.0, 1e-9, CROSS, ORDER, TERMS)
        assert abs(val - (v1 + v2)) <= err + e1 + e2 + 1e-12

    def test_integrate_empty_interval(self):
        assert reference.integrate_z_sq(10.0, 10.0, 1e-9, CROSS, ORDER, TERMS) == (
            0.0,
            0.0,
            0,
            0,
        )

    def test_integrate_depth_limit_status(self):
        _, _, _, status = reference.integrate_z_sq(
            300.0, 330.0, 1e-30, CROSS, ORDER, TERMS, depth_limit=2
        )
        assert status == 1

    def test_integrate_deterministic(self):
        a = reference.integrate_z_sq(250.0, 280.0, 1e-10, CROSS, ORDER, TERMS)
        b = reference.integrate_z_sq(250.0, 280.0, 1e-10, CROSS, ORDER, TERMS)
        assert a == b


@needs_fast
class TestParity:
    """The compiled backend must track the reference bit-for-bit where the
    arithmetic order is identical, and to ~1 ulp where summation order
    differs (numpy pairwise vs sequential)."""

    def test_theta(self):
        for t in (15.0, 100.0, 777.7, 4999.0):
            assert _fastcore.theta(t) == reference.theta(t)

    def test_rs_z(self):
        for t in (510.0, 1000.0, 2500.0, 4292.75):
            assert _fastcore.rs_z(t, ORDER) == reference.rs_z(t, ORDER)

    def test_rs_z_vec(self):
        ts = np.linspace(520.0, 1800.0, 400)
        d = np.abs(_fastcore.rs_z_vec(ts, ORDER) - reference.rs_z_vec(ts, ORDER))
        assert d.max() < 5e-12

    def test_em_zeta(self):
        for sigma, t in ((0.5, 30.0), (0.75, 20.0), (0.63, 4292.75), (2.0, 0.0)):
            vf, ef = _fastcore.em_zeta(sigma, t, TERMS)
            vr, er = reference.em_zeta(sigma, t, TERMS)
            assert abs(vf - vr) <= 1e-14 * (1.0 + abs(vr))
            assert abs(ef - er) <= 1e-10 * (1.0 + er)

    def test_em_zeta_negative_t(self):
        vf, _ = _fastcore.em_zeta(0.7, -35.0, TERMS)
        vr, _ = reference.em_zeta(0.7, -35.0, TERMS)
        assert abs(vf - vr) < 1e-14

    def test_em_zeta_deriv(self):
        for sigma, t in ((0.9, 50.0), (2.0, 0.0), (0.6, 120.0)):
            vf, _ = _fastcore.em_zeta_deriv(sigma, t, TERMS)
            vr, _ = reference.em_zeta_deriv(sigma, t, TERMS)
            assert abs(vf - vr) <= 1e-13 * (1.0 + abs(vr))

    def test_em_zeta_many(self):
        sig = np.linspace(0.55, 0.95, 9)
        ts = np.linspace(5.0, 200.0, 9)
        df = _fastcore.em_zeta_many(sig, ts, TERMS)
        dr = reference.em_zeta_many(sig, ts, TERMS)
        assert np.abs(df - dr).max() < 1e-13

    def test_hardy_z_and_z_sq(self):
        for t in (3.0, 30.0, 499.0, 501.0, 2000.0):
            assert (
                abs(
                    _fastcore.hardy_z(t, CROSS, ORDER, TERMS)
                    - reference.hardy_z(t, CROSS, ORDER, TERMS)
                )
                < 1e-12
            )
            zf = _fastcore.z_sq(t, CROSS, ORDER, TERMS)
            zr = reference.z_sq(t, CROSS, ORDER, TERMS)
            assert abs(zf - zr) <= 1e-12 * (1.0 + zr)

    def test_integrate(self):
        rf = _fastcore.integrate_z_sq(300.0, 330.0, 1e-10, CROSS, ORDER, TERMS)
        rr = reference.integrate_z_sq(300.0, 330.0, 1e-10, CROSS, ORDER, TERMS)
        assert abs(rf[0] - rr[0]) <= 1e-12 * (1.0 + abs(rr[0]))
        assert rf[2] == rr[2]  # same panel subdivision, same eval count
        assert rf[3] == rr[3]

    def test_backend_names(self):
        assert reference.BACKEND_NAME == "pure"
        assert _fastcore.BACKEND_NAME == "fast"
