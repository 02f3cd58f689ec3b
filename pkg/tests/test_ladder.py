"""Ladder calibration: H, phi1, reverse chains, transported integrals."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab.ladder import EULER_GAMMA, LN_TWO_PI


class TestH:
    def test_h_formula(self, lt):
        for x in (10.0, 50.0, 314.0):
            want = x * math.log(x) + (EULER_GAMMA - LN_TWO_PI) * x + lt.c0
            assert abs(lt.h(x) - want) < 1e-12 * (1.0 + abs(want))

    def test_h_prime_formula(self, lt):
        x = 123.0
        want = math.log(x) + 1.0 + EULER_GAMMA - LN_TWO_PI
        assert abs(lt.h_prime(x) - want) < 1e-13

    def test_h_prime_many(self, lt):
        xs = np.array([20.0, 100.0, 900.0])
        vals = lt.h_prime_many(xs)
        for x, v in zip(xs, vals):
            # np.log and math.log may differ in the last ulp
            assert abs(v - lt.h_prime(float(x))) < 1e-14

    @given(st.floats(min_value=15.0, max_value=3000.0))
    @settings(max_examples=30, deadline=None)
    def test_h_inverse_roundtrip(self, lt, x):
        y = lt.h(x)
        back = lt.h_inverse(y)
        assert abs(back - x) < 1e-8


class TestPhi1:
    def test_phi1_below_identity(self, lt):
        for T in (350.0, 700.0, 1500.0):
            p = lt.phi1(T)
            assert p < T
            assert p > 0.0

    def test_phi1_satisfies_defining_equation(self, lt):
        # phi1 = H^{-1} . A  so  H(phi1(T)) = A(T)
        T = 640.0
        assert abs(lt.h(lt.phi1(T)) - lt.hardy.value(T)) < 1e-7

    def test_phi1_increasing(self, lt):
        ts = [320.0 + 40.0 * j for j in range(10)]
        vals = [lt.phi1(t) for t in ts]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_phi1_inverse_roundtrip(self, lt):
        for T in (330.0, 520.0, 940.0):
            y = lt.phi1(T)
            assert abs(lt.phi1_inverse(y) - T) < 1e-7

    def test_phi_chain_descends(self, lt):
        chain = lt.phi_chain(1000.0, 3)
        assert len(chain) == 4
        assert chain[0] == 1000.0
        assert all(b < a for a, b in zip(chain, chain[1:]))

    def test_z_tilde_sq_is_weighted_z_sq(self, lt, engine):
        t = 800.0
        phi = lt.phi1(t)
        want = engine.z_squared(t) / lt.omega(t, phi=phi)
        assert abs(lt.z_tilde_sq(t) - want) < 1e-12 * (1.0 + want)


class TestChains:
    def test_reverse_chain_shape(self, lt):
        chain = lt.reverse_chain(100, 0.5, 3)
        assert len(chain) == 4
        base = chain[0]
        assert abs(base.lo - math.pi * 100) < 1e-12
        assert abs(base.length - 0.5) < 1e-12
        # reverse iterates climb
        for r in range(1, 4):
            assert chain[r].lo > chain[r - 1].hi or chain[r].lo > chain[r - 1].lo

    def test_reverse_chain_maps_down(self, lt):
        chain = lt.reverse_chain(100, 0.5, 2)
        # phi1 maps the depth-r segment onto the depth-(r-1) segment
        seg1, seg0 = chain[1], chain[0]
        assert abs(lt.phi1(seg1.lo) - seg0.lo) < 1e-6
        assert abs(lt.phi1(seg1.hi) - seg0.hi) < 1e-6

    def test_chain_proxy_cached(self, lt):
        p1 = lt.chain_proxy(100, 0.5, 2)
        p2 = lt.chain_proxy(100, 0.5, 2)
        assert p1 is p2

    def test_proxy_weight_matches_exact(self, lt):
        depth = 2
        proxy = lt.chain_proxy(100, 0.5, depth)
        top = proxy.chain.top
        ts = np.linspace(top.lo + 1e-6, top.hi - 1e-6, 9)
        w_proxy = proxy.weight(ts)
        for t, w in zip(ts, w_proxy):
            assert abs(w - lt.chain_weight(float(t), depth)) < 1e-8 * (1.0 + abs(w))

    def test_proxy_base_points_descend_to_base(self, lt):
        proxy = lt.chain_proxy(100, 0.5, 2)
        top = proxy.chain.top
        base = proxy.chain[0]
        ts = np.linspace(top.lo + 1e-9, top.hi - 1e-9, 5)
        for b in proxy.base_points(ts):
            assert base.lo - 1e-7 <= b <= base.hi + 1e-7


class TestTransportedIntegral:
    @pytest.mark.parametrize("depth", [1, 2])
    def test_substitution_identity_sin2(self, lt, depth):
        from zetalab.quadrature import integrate

        L, U = 100, math.pi / 8
        base_lo = math.pi * L
        base = integrate(lambda ts: np.sin(ts) ** 2, base_lo, base_lo + U, 1e-12)
        got = lt.transported_integral(lambda ts: np.sin(ts) ** 2, L, U, depth)
        assert abs(got.value - base.value) < 1e-7

    def test_substitution_identity_unit(self, lt):
        got = lt.transported_integral(lambda ts: np.ones_like(ts), 100, 0.4, 2)
        assert abs(got.value - 0.4) < 1e-7

    def test_depth_zero_is_plain_integral(self, lt):
        got = lt.transported_integral(lambda ts: np.ones_like(ts), 100, 0.3, 0)
        assert abs(got.value - 0.3) < 1e-9
