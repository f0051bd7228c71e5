import math
import pytest
from hypothesis import given, strategies as st

from geometry.algebra import SU2Element, su2_inv, su2_mul, random_su2
from geometry.geodesics import geodesic_point, cut_time_bound
from distance.su2_distance import (
    CaseLabel, F1, F2, t1, t2, beta_bound, t1_derivative, solve_monotone,
    classify_su2, distance_su2, distance_su2_pair, system_residuals,
)
from utils.errors import DomainViolation, TargetOutOfRange
from tests.strategies import su2_elements, generic_su2_elements

ASIN_08 = math.asin(0.8)
abs_values = st.floats(min_value=0.01, max_value=0.99)


class TestLengthFunctions:
    def test_t1_values(self):
        assert t1(0.0, 0.6) == pytest.approx(2 * ASIN_08, abs=1e-12)
        assert t1(0.75, 0.6) == pytest.approx(0.8 * math.pi, abs=1e-12)
        assert t1(-0.75, 0.6) == pytest.approx(0.8 * math.pi, abs=1e-12)
        mid = t1(0.5, 0.6)
        assert 2 * ASIN_08 < mid < 0.8 * math.pi
        assert t1(-0.5, 0.6) == mid

    def test_t2_values(self):
        assert t2(0.0, 0.6) == pytest.approx(2 * (math.pi - ASIN_08), abs=1e-12)
        assert t2(0.75, 0.6) == pytest.approx(0.8 * math.pi, abs=1e-12)

    def test_f_values(self):
        assert F1(0.0, 0.6) == 0.0
        assert F2(0.0, 0.6) == 0.0
        assert F1(0.75, 0.6) == pytest.approx(0.2 * math.pi, abs=1e-12)
        assert F2(0.75, 0.6) == pytest.approx(0.8 * math.pi, abs=1e-12)
        assert F1(-0.3, 0.6) == pytest.approx(-F1(0.3, 0.6), abs=1e-14)

    def test_beta_outside_domain(self):
        with pytest.raises(DomainViolation):
            t1(0.76, 0.6)
        with pytest.raises(DomainViolation):
            beta_bound(1.0)

    def test_beta_bound(self):
        assert beta_bound(0.6) == pytest.approx(0.75, rel=1e-15)

    @given(abs_values, st.floats(min_value=0.0, max_value=1.0))
    def test_sum_identities(self, abs_a, fraction):
        beta = fraction * beta_bound(abs_a)
        omega = math.sqrt(1.0 + beta * beta)
        assert t1(beta, abs_a) + t2(beta, abs_a) == pytest.approx(2 * math.pi / omega, abs=1e-12)
        assert F2(beta, abs_a) - F1(beta, abs_a) == pytest.approx(math.pi * beta / omega, abs=1e-12)

    @given(abs_values, st.floats(min_value=0.05, max_value=0.95))
    def test_t1_derivative_matches_difference(self, abs_a, fraction):
        beta = fraction * beta_bound(abs_a)
        h = 1e-6 * max(1.0, beta_bound(abs_a))
        numeric = (t1(beta + h, abs_a) - t1(beta - h, abs_a)) / (2 * h)
        assert t1_derivative(beta, abs_a) == pytest.approx(numeric, rel=1e-4, abs=1e-6)
        assert t1_derivative(beta, abs_a) > 0.0


class TestSolveMonotone:
    def test_zero_target(self):
        assert solve_monotone(F1, 0.6, 0.0) == 0.0
        assert solve_monotone(F2, 0.6, 0.0) == 0.0

    def test_endpoint_target(self):
        assert solve_monotone(F1, 0.6, 0.2 * math.pi) == pytest.approx(0.75, abs=1e-9)

    def test_interior_target(self):
        beta = solve_monotone(F1, 0.6, 0.3)
        assert abs(F1(beta, 0.6) - 0.3) <= 1e-12

    def test_out_of_range(self):
        with pytest.raises(TargetOutOfRange):
            solve_monotone(F1, 0.6, 1.0)


class TestGoldenValues:
    @pytest.mark.parametrize("g, t, case", [
        ((1, 0, 0, 0), 0.0, CaseLabel.CASE2_ABSAONE),
        ((0, 0, 1, 0), math.pi, CaseLabel.CASE1_AZERO),
        ((0, 0, -0.6, 0.8), math.pi, CaseLabel.CASE1_AZERO),
        ((0, 1, 0, 0), math.pi * math.sqrt(3.0), CaseLabel.CASE2_ABSAONE),
        ((-1, 0, 0, 0), 2 * math.pi, CaseLabel.CASE2_ABSAONE),
        ((0.6, 0, 0.8, 0), 2 * ASIN_08, CaseLabel.CASE4_SHORT),
        ((0.6, 0, 0, 0.8), 2 * ASIN_08, CaseLabel.CASE4_SHORT),
        ((-0.6, 0, 0.8, 0), 2 * (math.pi - ASIN_08), CaseLabel.CASE5_LONG),
    ])
    def test_values(self, g, t, case):
        result = distance_su2(SU2Element(*g))
        assert result.t == pytest.approx(t, abs=1e-9)
        assert result.case_label is case

    def test_identity_has_no_parameters(self):
        result = distance_su2(SU2Element(1, 0, 0, 0))
        assert result.beta is None and result.phi0 is None and result.params is None

    def test_case4_and_case5_have_zero_beta(self):
        assert distance_su2(SU2Element(0.6, 0, 0.8, 0)).beta == 0.0
        assert distance_su2(SU2Element(-0.6, 0, 0.8, 0)).beta == 0.0

    def test_boundary_case(self):
        a = 0.5 * complex(math.sin(math.pi / 4), math.cos(math.pi / 4))
        result = distance_su2(SU2Element.from_complex(a, complex(math.sqrt(0.75), 0.0)))
        assert result.case_label is CaseLabel.CASE3_BOUNDARY
        assert result.t == pytest.approx(math.pi * math.sqrt(0.75), abs=1e-9)
        assert result.beta == pytest.approx(beta_bound(0.5), abs=1e-12)

    @pytest.mark.parametrize("abs_a", [0.1, 0.3, 0.5, 0.7, 0.9])
    @pytest.mark.parametrize("offset", [2e-9, -2e-9, 1e-8, -1e-8])
    def test_continuous_across_boundary(self, abs_a, offset):
        # on the boundary Re(A) = |A| sin(pi |A| / 2)
        a_re = abs_a * math.sin(0.5 * math.pi * abs_a) + offset
        a_im = math.sqrt((abs_a - a_re) * (abs_a + a_re))
        g = SU2Element(a_re, a_im, math.sqrt((1.0 - abs_a) * (1.0 + abs_a)), 0.0)
        result = distance_su2(g)
        expected_case = CaseLabel.CASE4_SHORT if offset > 0 else CaseLabel.CASE5_LONG
        assert result.case_label is expected_case
        assert result.t == pytest.approx(math.pi * math.sqrt(1.0 - abs_a * abs_a), abs=1e-6)

    def test_case2_beta_sign(self):
        g = SU2Element(math.cos(1.0), math.sin(1.0), 0.0, 0.0)
        result = distance_su2(g)
        omega = math.sqrt(1 + result.beta ** 2)
        assert result.beta > 0
        assert -math.cos(math.pi * result.beta / omega) == pytest.approx(g.a_re, abs=1e-12)
        assert math.sin(math.pi * result.beta / omega) == pytest.approx(g.a_im, abs=1e-12)

    def test_as_dict(self):
        record = distance_su2(SU2Element(0, 0, 1, 0)).as_dict()
        assert record == {'t': math.pi, 'case': 'Case1_Azero', 'beta': 0.0, 'phi0': 0.0}


class TestProperties:
    @given(generic_su2_elements())
    def test_geodesic_reaches_target(self, g):
        result = distance_su2(g)
        if result.params is None:
            return
        assert 0.0 <= result.t <= cut_time_bound(result.beta) + 1e-12
        assert geodesic_point(result.params, result.t).max_deviation(g) <= 1e-7

    @given(su2_elements())
    def test_within_diameter(self, g):
        assert 0.0 <= distance_su2(g).t <= 2 * math.pi + 1e-12

    @given(su2_elements())
    def test_inverse_symmetry(self, g):
        assert distance_su2(g).t == pytest.approx(distance_su2(su2_inv(g)).t, abs=1e-10)

    @given(su2_elements(), st.floats(min_value=-math.pi, max_value=math.pi))
    def test_invariant_under_vertical_rotation(self, g, psi):
        # conjugation by exp(psi k) only rotates B
        rotated = SU2Element.from_complex(g.a, g.b * complex(math.cos(psi), math.sin(psi)))
        assert distance_su2(rotated).t == pytest.approx(distance_su2(g).t, abs=1e-10)

    def test_system_residuals(self, rng):
        checked = 0
        for g in random_su2(rng, 200):
            result = distance_su2(g)
            if result.case_label in (CaseLabel.CASE4_SHORT, CaseLabel.CASE5_LONG):
                assert max(abs(r) for r in system_residuals(g, result)) <= 1e-10
                checked += 1
        assert checked > 150

    def test_system_residuals_reject_other_cases(self):
        g = SU2Element(0, 0, 1, 0)
        with pytest.raises(ValueError):
            system_residuals(g, distance_su2(g))

    def test_classification_bands(self):
        assert classify_su2(SU2Element(1e-13, 0, 1, 0)) is CaseLabel.CASE1_AZERO
        assert classify_su2(SU2Element(0.6, 0, 0.8, 0)) is CaseLabel.CASE4_SHORT


class TestPairs:
    def test_same_element(self):
        g = SU2Element(0.6, 0, 0, 0.8)
        assert distance_su2_pair(g, g) == pytest.approx(0.0, abs=1e-7)

    def test_from_identity(self):
        h = SU2Element(-0.6, 0, 0.8, 0)
        assert distance_su2_pair(SU2Element(1, 0, 0, 0), h) == pytest.approx(distance_su2(h).t, abs=1e-12)

    def test_triangle_inequality(self, rng):
        g, h, k = (random_su2(rng, 200) for _ in range(3))
        for a, b, c in zip(g, h, k):
            assert distance_su2_pair(a, c) <= distance_su2_pair(a, b) + distance_su2_pair(b, c) + 1e-9

    def test_left_invariance(self, rng):
        for a, b, c in zip(*(random_su2(rng, 50) for _ in range(3))):
            shifted = distance_su2_pair(su2_mul(c, a), su2_mul(c, b))
            assert shifted == pytest.approx(distance_su2_pair(a, b), abs=1e-9)
