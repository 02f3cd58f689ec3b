"""Hybrid assembly, grafting, and the meta identities."""

import dataclasses
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab import (
    EquationId,
    GraftSet,
    UGrid,
    assemble_achf,
    assemble_diff,
    assemble_echf1,
    assemble_echf2,
    factorize,
    graft,
    meta_asymptotic,
    meta_exact,
    meta_secondary,
    scan_u_grid,
)
from zetalab.errors import AccuracyWarning, MismatchedInputsError, NotFoundError
from zetalab.factorization import COS2, COS2T, SIN2
from zetalab.meta import (
    GAP_FLOOR,
    QUARTER_PI,
    attempt_grafts,
    beta_product,
    equation_sides,
    graft_targets,
    secondary_reports,
)

L0 = 100
U0 = 0.70
K0 = 2


@pytest.fixture(scope="module")
def certs(lt):
    return (
        factorize(SIN2, L0, U0, K0, lt),
        factorize(COS2, L0, U0, K0, lt),
        factorize(COS2T, L0, U0, K0, lt),
    )


@pytest.fixture(scope="module")
def gs(certs, layout, engine):
    return graft(certs, layout, engine)


class TestUGrid:
    def test_default_shape(self):
        g = UGrid(values=(0.2, 0.3, 0.4))
        assert len(g) == 3
        assert list(g) == [0.2, 0.3, 0.4]
        assert g[1] == 0.3

    def test_empty_rejected(self):
        with pytest.raises(MismatchedInputsError):
            UGrid(values=())

    def test_zero_gap_rejected(self):
        with pytest.raises(MismatchedInputsError):
            UGrid(values=(0.2, 0.3), min_gap=0.0)

    def test_subfloat_gap_warns(self):
        with pytest.warns(AccuracyWarning):
            UGrid(values=(0.2, 0.3), min_gap=0.5 * GAP_FLOOR)

    def test_first_value_needs_clearance(self):
        with pytest.raises(MismatchedInputsError):
            UGrid(values=(1e-9, 0.3))

    def test_tight_interior_gap_rejected(self):
        with pytest.raises(MismatchedInputsError):
            UGrid(values=(0.3, 0.3 + 1e-7))

    def test_decreasing_rejected(self):
        with pytest.raises(MismatchedInputsError):
            UGrid(values=(0.3, 0.2))

    def test_quarter_pi_clearance(self):
        with pytest.raises(MismatchedInputsError):
            UGrid(values=(QUARTER_PI - 1e-9,))


class TestEquationShapes:
    """With every ratio product forced to 1 the shapes collapse to plain
    trigonometry; any drift here is an assembly bug, not a numerics one."""

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=0.0, max_value=2.0 * math.pi))
    def test_unit_product_reductions(self, t):
        s2, c2, c2t = math.sin(t) ** 2, math.cos(t) ** 2, math.cos(2.0 * t)
        ones = (1.0, 1.0, 1.0)
        lhs, rhs = equation_sides(EquationId.ECHF1, ones, (s2, c2))
        assert abs(lhs - rhs) < 1e-15
        lhs, rhs = equation_sides(EquationId.ECHF2, ones, (s2, c2, c2t))
        assert abs(lhs - rhs) < 1e-15
        lhs, rhs = equation_sides(EquationId.DIFF, ones, (s2, c2), target=c2t)
        assert abs(lhs - rhs) < 1e-15
        lhs, rhs = equation_sides(EquationId.COR3, ones, (s2, c2, c2t))
        assert abs(lhs - rhs) < 1e-15
        lhs, rhs = equation_sides(EquationId.COR4, ones, (s2, c2, c2t))
        assert abs(lhs - rhs) < 1e-15

    def test_diff_needs_target(self):
        with pytest.raises(MismatchedInputsError):
            equation_sides(EquationId.DIFF, (1.0, 1.0), (0.3, 0.7))

    def test_unassembled_equation_rejected(self):
        with pytest.raises(MismatchedInputsError):
            equation_sides(EquationId.FACT, (1.0,), (1.0,))


class TestAssemblers:
    def test_exact_hybrids_pass(self, certs):
        c1, c2, c3 = certs
        r1 = assemble_echf1(c1, c2)
        rd = assemble_diff(c1, c2)
        r2 = assemble_echf2(c1, c2, c3)
        for r in (r1, rd, r2):
            assert r.verdict == "PASS"
            assert r.residual < 1e-8
        assert r1.equation_id is EquationId.ECHF1
        assert rd.equation_id is EquationId.DIFF
        assert r2.equation_id is EquationId.ECHF2

    def test_asymptotic_hybrids_pass(self, certs, engine):
        c1, c2, c3 = certs
        a1 = assemble_achf((c1, c2), EquationId.ACHF1, engine)
        a2 = assemble_achf((c1, c2, c3), EquationId.ACHF2, engine)
        assert a1.verdict == "PASS" and a1.residual < 0.05
        assert a2.verdict == "PASS" and a2.residual < 0.05
        # the omega drift keeps these from collapsing to the exact forms
        assert a1.residual > 1e-9

    def test_mixed_depths_assemble(self, lt):
        c1 = factorize(SIN2, L0, 0.5, 1, lt)
        c2 = factorize(COS2, L0, 0.5, 2, lt)
        c3 = factorize(COS2T, L0, 0.5, 3, lt)
        r = assemble_echf2(c1, c2, c3)
        assert r.verdict == "PASS"
        assert r.residual < 1e-8

    def test_family_order_enforced(self, certs):
        c1, c2, c3 = certs
        with pytest.raises(MismatchedInputsError):
            assemble_echf1(c2, c1)
        with pytest.raises(MismatchedInputsError):
            assemble_echf2(c1, c3, c2)

    def test_shared_frame_enforced(self, certs, lt):
        c1 = factorize(SIN2, L0, 0.5, 2, lt)
        with pytest.raises(MismatchedInputsError):
            assemble_echf1(c1, certs[1])

    def test_achf_arity_and_variant(self, certs, engine):
        c1, c2, c3 = certs
        with pytest.raises(MismatchedInputsError):
            assemble_achf((c1,), EquationId.ACHF1, engine)
        with pytest.raises(MismatchedInputsError):
            assemble_achf((c1, c2), EquationId.ACHF2, engine)
        with pytest.raises(MismatchedInputsError):
            assemble_achf((c1, c2), EquationId.THM1, engine)

    def test_tampered_base_point_fails(self, certs):
        c1, c2 = certs[0], certs[1]
        bad = dataclasses.replace(
            c1, alphas=[c1.alphas[0] + 0.03] + list(c1.alphas[1:])
        )
        r = assemble_echf1(bad, c2)
        assert r.verdict == "FAIL"


class TestGraftTargets:
    def test_ranges(self, certs):
        a1, a2, a3 = graft_targets(certs)
        assert 0.0 < a1 < 0.5
        assert 0.5 < a2 < 1.0
        assert 0.0 < a3 < 1.0
        c1, c2, c3 = certs
        assert a1 == pytest.approx(math.sin(c1.alphas[0]) ** 2, abs=1e-15)
        assert a2 == pytest.approx(math.cos(c2.alphas[0]) ** 2, abs=1e-15)
        assert a3 == pytest.approx(math.cos(2.0 * c3.alphas[0]), abs=1e-15)

    def test_arity_and_order(self, certs):
        c1, c2, c3 = certs
        with pytest.raises(MismatchedInputsError):
            graft_targets((c1, c2))
        with pytest.raises(MismatchedInputsError):
            graft_targets((c2, c1, c3))


class TestGraft:
    def test_set_shape(self, gs, certs):
        assert gs.U_n == U0
        assert gs.certs == certs
        assert [g.strip_index for g in gs.grafts] == [1, 2, 3]
        for a, g in zip(gs.a_values, gs.grafts):
            assert g.a_target == a
            assert g.residual < 1e-8

    def test_known_roots(self, gs):
        # the a targets are pinned only to the mvp root tolerance, and the
        # root position amplifies that by 1/|zeta'|, so anchor loosely
        w1, w2, w3 = (g.w for g in gs.grafts)
        assert abs(w1 - (0.652535533596792 + 21.05830723604978j)) < 1e-6
        assert abs(w2 - (0.7515968372804772 + 127.8431274329988j)) < 1e-6
        assert abs(w3 - (0.8304589496190323 + 182.25645378146794j)) < 1e-6

    def test_to_dict_serializes(self, gs):
        d = gs.to_dict()
        assert set(d) == {"n", "U_n", "a_values", "certificates", "grafts"}
        json.dumps(d)

    def test_shuffled_grafts_rejected(self, gs):
        with pytest.raises(MismatchedInputsError):
            GraftSet(
                n=gs.n,
                U_n=gs.U_n,
                certs=gs.certs,
                a_values=gs.a_values,
                grafts=(gs.grafts[1], gs.grafts[0], gs.grafts[2]),
            )

    def test_low_ceiling_raises_with_context(self, certs, layout, engine):
        with pytest.raises(NotFoundError) as exc:
            graft(certs, layout, engine, t_max=15.0)
        assert exc.value.strip_index == 1
        assert exc.value.t_max == 15.0

    def test_partial_attempt(self, certs, layout, engine):
        a_values = graft_targets(certs)
        points, failures = attempt_grafts(a_values, layout, engine, t_max=150.0)
        assert points[0] is not None and points[1] is not None
        assert points[2] is None
        assert failures[0] is None and failures[1] is None
        assert failures[2].strip_index == 3


class TestMetaExact:
    def test_theorems_pass(self, gs, engine):
        thm1, thm2, lit = meta_exact(gs, engine)
        assert thm1.equation_id is EquationId.THM1
        assert thm2.equation_id is EquationId.THM2
        assert thm1.verdict == "PASS" and thm1.residual < 1e-6
        assert thm2.verdict == "PASS" and thm2.residual < 1e-6
        # the literal sum repeats w_1 and misses by roughly cos^2 - sin^2
        assert lit.equation_id is EquationId.THM2_LITERAL
        assert lit.verdict == "FAIL"
        assert lit.residual > 0.1

    def test_substitution_coherence(self, gs, certs, engine):
        # swapping trig factors for |zeta(w)| can move the residual by at
        # most the graft gaps scaled by the certificate products
        thm1 = meta_exact(gs, engine)[0]
        echf2 = assemble_echf2(*certs)
        budget = echf2.residual + 1e-12
        for c, g in zip(certs, gs.grafts):
            gap = abs(abs(engine.zeta_strip_refined(g.w)) - g.a_target)
            budget += abs(c.lhs_product) * gap
        assert thm1.residual <= budget


class TestMetaAsymptotic:
    def test_corollaries_pass(self, gs, engine):
        reports = meta_asymptotic(gs, engine)
        ids = [r.equation_id for r in reports]
        assert ids == [
            EquationId.COR1,
            EquationId.COR2,
            EquationId.COR3,
            EquationId.COR4,
        ]
        for r in reports:
            assert r.verdict == "PASS"
            assert r.residual < 0.05

    def test_split_recombines(self, gs, engine):
        cor1, _, cor3, cor4 = meta_asymptotic(gs, engine)
        assert abs((cor3.lhs + cor4.lhs) - cor1.lhs) < 1e-12
        assert abs((cor3.rhs + cor4.rhs) - 1.0) < 1e-12


class TestSecondary:
    def test_equal_k_agreement(self, gs, engine):
        sec, lit = secondary_reports(gs, engine)
        cor2 = meta_asymptotic(gs, engine)[1]
        assert sec.equation_id is EquationId.SEC
        assert sec.verdict == cor2.verdict == "PASS"
        # multiplying through by the beta product is exact cancellation
        B = beta_product(gs.certs[0], engine)
        assert sec.tolerance == pytest.approx(0.05 * B, rel=1e-12)
        assert sec.residual == pytest.approx(B * cor2.residual, rel=1e-9)
        assert lit is None  # literal variant only exists at k = 1

    def test_k1_pipeline_emits_literal(self, layout, lt):
        sec, cor2, lit = meta_secondary(L0, U0, 1, layout, lt)
        assert sec.verdict == "PASS"
        assert cor2.verdict == "PASS"
        assert lit is not None
        assert lit.equation_id is EquationId.SEC_LITERAL
        assert math.isfinite(lit.residual)

    def test_mixed_k_rejected(self, gs, lt, engine):
        c1 = factorize(SIN2, L0, U0, 1, lt)
        mixed = GraftSet(
            n=gs.n,
            U_n=gs.U_n,
            certs=(c1, gs.certs[1], gs.certs[2]),
            a_values=gs.a_values,
            grafts=gs.grafts,
        )
        with pytest.raises(MismatchedInputsError):
            secondary_reports(mixed, engine)


class TestScan:
    def test_full_bundles(self, layout, lt):
        bundles = scan_u_grid(
            UGrid((0.65, 0.70)),
            L=L0,
            k_triple=(2, 2, 2),
            layout=layout,
            lt=lt,
            include_secondary=True,
        )
        assert [b["U_n"] for b in bundles] == [0.65, 0.70]
        want = {
            "ECHF1", "DIFF", "ECHF2", "ACHF1", "ACHF2",
            "THM1", "THM2", "THM2_LITERAL",
            "COR1", "COR2", "COR3", "COR4", "SEC",
        }
        for b in bundles:
            assert "graft_errors" not in b
            assert len(b["certificates"]) == 3
            assert len(b["grafts"]) == 3
            got = {r["equation_id"] for r in b["reports"]}
            assert got == want
            json.dumps(b)

    def test_partial_bundle_keeps_hybrids(self, layout, lt):
        b = scan_u_grid(
            (U0,), L=L0, k_triple=(2, 2, 2), layout=layout, lt=lt, t_max=150.0
        )[0]
        assert len(b["grafts"]) == 2
        assert len(b["graft_errors"]) == 1
        got = {r["equation_id"] for r in b["reports"]}
        assert got == {"ECHF1", "DIFF", "ECHF2", "ACHF1", "ACHF2"}

    def test_requires_table_and_layout(self, layout, lt):
        with pytest.raises(MismatchedInputsError):
            scan_u_grid((U0,), layout=layout, lt=None)
        with pytest.raises(MismatchedInputsError):
            scan_u_grid((U0,), layout=None, lt=lt)
