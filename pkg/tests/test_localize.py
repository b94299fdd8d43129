from fractions import Fraction
from itertools import product

import pytest

from adebps.catalog import e8_a5_descriptor, e8_a5_marking
from adebps.folding import LiftedDivisor, bps_table, lift
from adebps.localize import (
    DescriptorError,
    GeometryDescriptor,
    Incidence,
    SCurve,
    SPoint,
    YPoint,
    bps_from_localization,
    chern_character_at,
    curve_contribution,
    ext_decompose,
    format_descriptor,
    line_bundle_on_curve,
    line_bundle_weight_at_point,
    parse_descriptor,
    point_contribution,
    total_chi,
    validate_descriptor,
)
from adebps.symring import LaurentPoly, RatFn, VirtualCharacter, euler_class, expfactor
from adebps.verify import GOLDEN_CH, GOLDEN_CONTRIBUTIONS, GOLDEN_SUMMANDS, REFERENCE_CLASSES


@pytest.fixture(scope="module")
def m():
    return e8_a5_marking()


@pytest.fixture(scope="module")
def g():
    return e8_a5_descriptor()


@pytest.fixture(scope="module")
def top(m):
    return lift((3, 5, 4, 3), m)


def s_point(g, name):
    return next(q for q in g.s_points if q.name == name)


class TestValidation:
    def test_builtin_clean(self, g, m):
        assert validate_descriptor(g, m) == []

    def test_bad_canonical_sum(self, g, m):
        broken = GeometryDescriptor(
            (YPoint("P1", (5, 1, -2)),) + g.y_points[1:], g.s_points, g.s_curves
        )
        with pytest.raises(DescriptorError, match="sum"):
            validate_descriptor(broken, m)

    def test_end_weights_must_cancel(self, g, m):
        pts = tuple(
            SPoint("Q1", (4, -3), "P1", (Incidence("E1", 4),)) if q.name == "Q1" else q
            for q in g.s_points
        )
        with pytest.raises(DescriptorError, match="do not cancel"):
            validate_descriptor(GeometryDescriptor(g.y_points, pts, g.s_curves), m)

    def test_unknown_label(self, g, m):
        pts = g.s_points + (SPoint("Qx", (1, 0), "P1", (Incidence("F9", 1),)),)
        with pytest.raises(DescriptorError):
            validate_descriptor(GeometryDescriptor(g.y_points, pts, g.s_curves), m)

    def test_soft_warning_for_odd_weight_sum(self, g, m):
        pts = tuple(
            SPoint("Q4", (3, -1), "P4", (Incidence("F4", 3),)) if q.name == "Q4" else q
            for q in g.s_points
        )
        warnings = validate_descriptor(GeometryDescriptor(g.y_points, pts, g.s_curves), m)
        assert any("Q4" in w for w in warnings)


class TestLineBundleData:
    def test_longest_root_point_weights(self, g, m, top):
        got = {q.name: line_bundle_weight_at_point(top, q, g, m) for q in g.s_points}
        assert got == {"Q1": -10, "Q1'": -6, "Q2": -6, "Q2'": -6, "Q3": -6, "Q3'": -6, "Q4": -6}

    def test_zero_divisor(self, g, m):
        zero = LiftedDivisor((0,) * 8, (), (), 0)
        for q in g.s_points:
            assert line_bundle_weight_at_point(zero, q, g, m) == 0
        assert line_bundle_on_curve(zero, g.s_curves[0], g, m) == (0, 0)

    def test_longest_root_on_curve(self, g, m, top):
        assert line_bundle_on_curve(top, g.s_curves[0], g, m) == (-6, 0)

    def test_degree_one_case(self, g, m):
        lft = lift((1, 2, 2, 1), m)
        w, d = line_bundle_on_curve(lft, g.s_curves[0], g, m)
        assert d == 1 and w == -3

    def test_inconsistent_crossings_detected(self, g, m, top):
        bad = SCurve("E3", "P", 1, -2, (Incidence("F2", 1), Incidence("F3", 2)))
        broken = GeometryDescriptor(g.y_points, g.s_points, (bad,))
        with pytest.raises(DescriptorError, match="inconsistent"):
            line_bundle_on_curve(top, bad, broken, m)

    def test_unknown_point_rejected(self, g, m, top):
        stray = SPoint("Qx", (1, 2), "P1", ())
        with pytest.raises(DescriptorError, match="unknown point"):
            line_bundle_weight_at_point(top, stray, g, m)


class TestPointContributions:
    def test_golden_summands(self, g, m, top):
        for q in g.s_points:
            assert point_contribution(top, q, g, m) == GOLDEN_SUMMANDS[q.name]

    def test_degenerate_weight_rejected(self, g, m, top):
        stray = SPoint("Qx", (0, 2), "P1", ())
        broken = GeometryDescriptor(g.y_points, g.s_points + (stray,), g.s_curves)
        with pytest.raises(DescriptorError, match="tangent weight 0"):
            point_contribution(top, stray, broken, m)


class TestCurveContribution:
    def test_longest_root(self, g, m, top):
        # P sees only the fixed curve, so its character is the curve summand
        got = curve_contribution(top, g.s_curves[0], g, m)
        assert got == RatFn(LaurentPoly({-8: 1, -6: -1, -2: -1, 0: 1}))

    def test_zero_divisor(self, g, m):
        zero = LiftedDivisor((0,) * 8, (), (), 0)
        assert curve_contribution(zero, g.s_curves[0], g, m) == RatFn(0)

    def test_zero_normal_weight_rejected(self, g, m, top):
        bad = SCurve("E3", "P", 0, -2, ())
        broken = GeometryDescriptor(g.y_points, g.s_points, (bad,))
        with pytest.raises(DescriptorError, match="normal weight 0"):
            curve_contribution(top, bad, broken, m)


class TestCharacters:
    def test_golden_characters(self, g, m, top):
        for p in g.y_points:
            assert chern_character_at(p, top, g, m) == RatFn(GOLDEN_CH[p.name])

    def test_golden_point_totals(self, g, m, top):
        for p in g.y_points:
            ch = chern_character_at(p, top, g, m)
            pref = LaurentPoly.one()
            for w in p.weights:
                pref = pref * expfactor(-w)
            assert ch.dual() * ch / RatFn(pref) == RatFn(GOLDEN_CONTRIBUTIONS[p.name])

    def test_reference_totals(self, g, m):
        for cls, total, _, _, _ in REFERENCE_CLASSES:
            assert total_chi(lift(cls, m), g, m) == VirtualCharacter(total)

    def test_symmetric_points_for_longest_root(self, g, m, top):
        # all restriction weights of the longest-root lift equal -6, so the
        # two middle points see identical data; for general classes the
        # characters differ (the class may not even reach both points)
        p2 = g.y_point("P2")
        p3 = g.y_point("P3")
        assert chern_character_at(p2, top, g, m) == chern_character_at(p3, top, g, m)
        small = lift((0, 1, 0, 0), m)
        assert chern_character_at(p3, small, g, m) == RatFn(0)

    def test_totals_vanish_at_one_with_unit_ends(self, g, m):
        for rec in bps_table(m):
            chi = total_chi(lift(rec.cls, m), g, m)
            assert chi.evaluate(Fraction(1)) == 0
            assert chi.coefficient(0) == 1
            assert chi.coefficient(3) == -1


class TestExtDecompose:
    def test_rigid_class(self):
        dec = ext_decompose(VirtualCharacter({0: 1, 3: -1}))
        assert dec.ext1 == VirtualCharacter() and dec.ext2 == VirtualCharacter()

    def test_half_class(self):
        dec = ext_decompose(VirtualCharacter({0: 1, 2: -1, 1: 1, 3: -1}))
        assert dec.ext2 == VirtualCharacter({1: 1})
        assert dec.ext1 == VirtualCharacter({2: 1})

    def test_four_class(self):
        dec = ext_decompose(VirtualCharacter({0: 1, 1: -2, 2: 2, 3: -1}))
        assert dec.ext2 == VirtualCharacter({2: 2})
        assert dec.ext1 == VirtualCharacter({1: 2})

    def test_rebuild_identity(self):
        for _, total, _, _, _ in REFERENCE_CLASSES:
            chi = VirtualCharacter(total)
            assert ext_decompose(chi).chi() == chi

    def test_weight_zero_residue_rejected(self):
        with pytest.raises(ValueError, match="weight-0"):
            ext_decompose(VirtualCharacter({0: 2, 3: -1}))
        with pytest.raises(ValueError, match="weight-0 residue"):
            ext_decompose(VirtualCharacter({0: 1, 3: -2}), serre_weight=0)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            ext_decompose(VirtualCharacter({0: 1, 1: -1, 3: -1}))


class TestInvariants:
    def test_reference_classes(self, g, m):
        for cls, _, _, _, n in REFERENCE_CLASSES:
            assert bps_from_localization(cls, m, g) == n

    def test_full_table_agreement(self, g, m):
        for rec in bps_table(m):
            assert bps_from_localization(rec.cls, m, g) == rec.invariant

    def test_non_root_class_rejected(self, g, m):
        with pytest.raises(ValueError, match="positive root"):
            bps_from_localization((6, 0, 0, 6), m, g)

    def test_zero_class_rejected(self, g, m):
        with pytest.raises(ValueError):
            bps_from_localization((0, 0, 0, 0), m, g)


class TestEulerRows:
    def test_reference_euler_rows(self, g, m):
        for cls, _, row2, row1, n in REFERENCE_CLASSES:
            dec = ext_decompose(total_chi(lift(cls, m), g, m))
            e2, e1 = euler_class(dec.ext2), euler_class(dec.ext1)
            assert (e2.scalar, e2.degree) == row2
            assert (e1.scalar, e1.degree) == row1
            assert Fraction(e2.scalar, e1.scalar) == n


class TestDescriptorFormat:
    def test_roundtrip(self, g):
        assert parse_descriptor(format_descriptor(g)) == g

    def test_comments_and_blanks(self, g):
        text = "# header comment\n\n" + format_descriptor(g)
        assert parse_descriptor(text) == g

    @pytest.mark.parametrize(
        "text",
        [
            "Y-POINTS\nP1 1 1 1\n",  # missing version
            "DESCRIPTOR-VERSION 2\n",  # unsupported version
            "DESCRIPTOR-VERSION 1\nCANONICAL-WEIGHT -3\nY-POINTS\nP1 1 1\n",  # short row
            "DESCRIPTOR-VERSION 1\nCANONICAL-WEIGHT -3\nP1 1 1 1\n",  # outside a section
            "DESCRIPTOR-VERSION 1\nY-POINTS\nP1 1 1 1\n",  # missing canonical weight
            "DESCRIPTOR-VERSION 1\nCANONICAL-WEIGHT -3\nS-POINTS\nQ1 1 2 P1 F1\n",  # bad incidence
        ],
    )
    def test_bad_inputs(self, text):
        with pytest.raises(DescriptorError):
            parse_descriptor(text)

    def test_custom_descriptor_runs(self, m, g, tmp_path):
        # a descriptor loaded from disk behaves exactly like the built-in one
        path = tmp_path / "e8.desc"
        path.write_text(format_descriptor(g), encoding="utf-8")
        loaded = parse_descriptor(path.read_text(encoding="utf-8"))
        assert bps_from_localization((2, 4, 3, 2), m, loaded) == Fraction(2)


def test_non_image_scan_squares(m):
    image = {rec.cls for rec in bps_table(m)}
    for cls in product(range(7), repeat=4):
        if not any(cls) or cls in image:
            continue
        assert lift(cls, m).self_pairing <= -4
