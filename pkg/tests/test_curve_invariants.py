from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from curve_invariants import (
    CASE_ZE0_NEGATIVE,
    CASE_ZE0_ZERO,
    CompleteIntersectionCurve,
    Hyperelliptic,
    PlaneCurve,
    a_invariant,
    binom,
    blowup_closed_form,
    br_bounds,
    gonality,
    h0_h1,
    pg_blowdown,
    pinkham_pg,
    q_k_maximal,
    upper_bracket,
)
from errors import ParameterRangeError, UnsupportedVariantError


def test_binom():
    assert binom(5, 2) == 10
    assert binom(-1, 2) == 0
    assert binom(2, 3) == 0


@pytest.mark.parametrize("alpha, expected", [(Fraction(4, 3), 2), (2, 3), (0, 1), (Fraction(-1, 2), 0)])
def test_upper_bracket(alpha, expected):
    assert upper_bracket(alpha) == expected


class TestCurveModels:
    def test_plane_genus(self):
        assert [PlaneCurve(d).genus for d in range(3, 7)] == [1, 3, 6, 10]

    def test_complete_intersection(self):
        C = CompleteIntersectionCurve((3, 2))
        assert C.degrees == (2, 3)
        assert (C.n, C.degree, C.a_invariant, C.genus) == (3, 6, 1, 4)

    def test_bad_models(self):
        with pytest.raises(ParameterRangeError):
            PlaneCurve(0)
        with pytest.raises(ParameterRangeError):
            Hyperelliptic(1)
        with pytest.raises(ParameterRangeError):
            CompleteIntersectionCurve(())


class TestCohomology:
    def test_plane_quartic(self):
        assert h0_h1(PlaneCurve(4), 0) == (1, 3)
        assert h0_h1(PlaneCurve(4), 1) == (3, 1)
        assert h0_h1(PlaneCurve(4), 2) == (6, 0)

    def test_hyperelliptic(self):
        assert h0_h1(Hyperelliptic(3), 1) == (2, 2)
        assert h0_h1(Hyperelliptic(3), 3) == (4, 0)

    def test_negative_multiple(self):
        with pytest.raises(ParameterRangeError):
            h0_h1(PlaneCurve(4), -1)

    def test_complete_intersection_unsupported(self):
        with pytest.raises(UnsupportedVariantError):
            h0_h1(CompleteIntersectionCurve((2, 2)), 1)

    @pytest.mark.parametrize("curve, expected", [
        (PlaneCurve(4), 4), (PlaneCurve(5), 10), (Hyperelliptic(3, 3), 3), (Hyperelliptic(2, 2), 2),
        (Hyperelliptic(3, 1), 6),
    ])
    def test_geometric_genus(self, curve, expected):
        assert pinkham_pg(curve) == expected

    def test_a_invariants(self):
        assert a_invariant(PlaneCurve(5)) == 2
        assert a_invariant(Hyperelliptic(5, 2)) == 2
        assert a_invariant(CompleteIntersectionCurve((2, 3))) == 1

    @pytest.mark.parametrize('d', range(3, 10))
    def test_maximal_ideal_sequence(self, d):
        assert [q_k_maximal(PlaneCurve(d), n) for n in range(d + 1)] == [binom(d - n, 3) for n in range(d + 1)]


@given(d=st.integers(1, 15), n=st.integers(0, 40))
def test_riemann_roch_plane(d, n):
    C = PlaneCurve(d)
    h0, h1 = h0_h1(C, n)
    assert h0 - h1 == n * C.degree - C.genus + 1


@given(g=st.integers(2, 12), b=st.integers(1, 6), n=st.integers(0, 30))
def test_riemann_roch_hyperelliptic(g, b, n):
    C = Hyperelliptic(g, b)
    h0, h1 = h0_h1(C, n)
    assert h0 - h1 == n * C.degree - C.genus + 1
    assert h0 >= 0 and h1 >= 0


class TestBounds:
    def test_gonality(self):
        assert gonality(PlaneCurve(5)).value == 4
        assert gonality(Hyperelliptic(4)).value == 2
        assert not gonality(CompleteIntersectionCurve((2, 2))).exact

    @pytest.mark.parametrize('d', range(4, 11))
    def test_plane_curve_bound(self, d):
        assert br_bounds(PlaneCurve(d)).br_upper_bound == d - 1

    @pytest.mark.parametrize('g', range(2, 9))
    def test_hyperelliptic_bound(self, g):
        assert br_bounds(Hyperelliptic(g)).br_upper_bound == g + 1

    def test_complete_intersection_bound(self):
        report = br_bounds(CompleteIntersectionCurve((2, 2)), CASE_ZE0_NEGATIVE)
        assert report.ci_bound == 2
        assert report.nr_m_prediction == 2

    def test_zero_case(self):
        assert br_bounds(PlaneCurve(4), CASE_ZE0_ZERO, d=4).br_upper_bound == 3
        with pytest.raises(ParameterRangeError):
            br_bounds(PlaneCurve(4), CASE_ZE0_ZERO)

    def test_unknown_case(self):
        with pytest.raises(UnsupportedVariantError):
            br_bounds(PlaneCurve(4), 'ZE0>0')


class TestBlowupFamily:
    def test_blowdown(self):
        assert pg_blowdown(4, 1) == 3
        assert pg_blowdown(3, 2) == 1
        assert pg_blowdown(5, 1) is None
        with pytest.raises(ParameterRangeError):
            pg_blowdown(2, 1)

    def test_quartic_prediction(self):
        prediction = blowup_closed_form(4, 1)
        assert (prediction.q_value, prediction.nr, prediction.br, prediction.colength) == (3, 2, 2, 8)
        assert not prediction.pg_ideal

    def test_pg_ideal_from_r(self):
        assert blowup_closed_form(4, 2).pg_ideal
        assert blowup_closed_form(4, 2).q_value == 4

    def test_clamp(self):
        assert blowup_closed_form(4, 3).q_value == blowup_closed_form(4, 5).q_value == pinkham_pg(PlaneCurve(4))
