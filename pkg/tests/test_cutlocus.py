import math
import numpy as np
import pytest
from hypothesis import given, strategies as st

from geometry.algebra import SU2Element, SO3Element, klein_omega, random_su2
from distance.cutlocus import (
    CutLocusTag, classify_cut_locus_so3, conjugate_locus_so3, cut_locus_residuals, in_cut_locus_su2_L2,
)
from tests.strategies import axis1_rotation

angles = st.floats(min_value=-math.pi, max_value=math.pi)


def _sym_su2(arg_b: float, abs_a: float, sign: float = 1.0) -> SU2Element:
    abs_b = math.sqrt((1.0 - abs_a) * (1.0 + abs_a))
    return SU2Element(0.0, sign * abs_a, abs_b * math.cos(arg_b), abs_b * math.sin(arg_b))


class TestSO3Examples:
    @pytest.mark.parametrize("matrix, tag", [
        (np.eye(3), CutLocusTag.NOT_CUT),
        (np.diag([-1.0, 1.0, -1.0]), CutLocusTag.SYM),
        (axis1_rotation(math.pi / 3), CutLocusTag.LOC),
        (axis1_rotation(math.pi), CutLocusTag.SYM),
    ])
    def test_tags(self, matrix, tag):
        assert classify_cut_locus_so3(SO3Element(matrix)).tag is tag

    def test_klein_image_of_pure_imaginary_a(self):
        C = klein_omega(SU2Element(0.0, 0.5, math.sqrt(0.75), 0.0))
        result = classify_cut_locus_so3(C)
        assert result.tag is CutLocusTag.SYM
        assert result.witness['involution_residual'] <= 1e-12

    def test_generic_rotation_is_not_cut(self):
        C = klein_omega(SU2Element(0.6, 0.0, 0.8, 0.0))
        assert classify_cut_locus_so3(C).tag is CutLocusTag.NOT_CUT

    def test_residuals(self):
        residuals = cut_locus_residuals(SO3Element(axis1_rotation(math.pi / 3)))
        assert residuals['block_residual'] == 0.0
        assert residuals['involution_residual'] > 0.1


class TestSU2Predicate:
    @pytest.mark.parametrize("g, tag", [
        ((1, 0, 0, 0), CutLocusTag.NOT_CUT),
        ((0, 0.5, math.sqrt(0.75), 0), CutLocusTag.SYM),
        ((math.cos(0.4), math.sin(0.4), 0, 0), CutLocusTag.LOC),
        ((0, 1, 0, 0), CutLocusTag.SYM),
        ((0, -1, 0, 0), CutLocusTag.SYM),
        ((-1, 0, 0, 0), CutLocusTag.NOT_CUT),
        ((0.6, 0, 0.8, 0), CutLocusTag.NOT_CUT),
    ])
    def test_tags(self, g, tag):
        assert in_cut_locus_su2_L2(SU2Element(*g)) is tag


class TestConsistency:
    def test_random_elements_agree_with_images(self, rng):
        for g in random_su2(rng, 1000):
            assert classify_cut_locus_so3(klein_omega(g)).tag is in_cut_locus_su2_L2(g)

    @given(angles, st.floats(min_value=0.0, max_value=1.0), st.sampled_from([1.0, -1.0]))
    def test_symmetric_family(self, arg_b, abs_a, sign):
        g = _sym_su2(arg_b, abs_a, sign)
        C = klein_omega(g)
        assert in_cut_locus_su2_L2(g) is CutLocusTag.SYM
        assert classify_cut_locus_so3(C).tag is CutLocusTag.SYM
        # involutions other than E have trace -1
        assert np.trace(C.m) == pytest.approx(-1.0, abs=1e-12)

    @given(angles.filter(lambda a: 1e-6 < abs(a) < math.pi - 1e-6 and abs(abs(a) - 0.5 * math.pi) > 1e-6))
    def test_local_family(self, alpha):
        g = SU2Element(math.cos(alpha), math.sin(alpha), 0.0, 0.0)
        C = klein_omega(g)
        assert in_cut_locus_su2_L2(g) is CutLocusTag.LOC
        assert classify_cut_locus_so3(C).tag is CutLocusTag.LOC

    @given(st.tuples(st.floats(-1.0, 1.0), st.floats(-1.0, 1.0), st.floats(-1.0, 1.0))
           .filter(lambda v: sum(x * x for x in v) > 1e-2))
    def test_every_half_turn_is_symmetric(self, axis):
        n = np.array(axis) / np.linalg.norm(axis)
        C = SO3Element(2.0 * np.outer(n, n) - np.eye(3))
        assert np.trace(C.m) == pytest.approx(-1.0, abs=1e-12)
        assert classify_cut_locus_so3(C).tag is CutLocusTag.SYM

    @pytest.mark.parametrize("matrix", [
        np.diag([-1.0, -1.0, 1.0]), np.diag([-1.0, 1.0, -1.0]), np.diag([1.0, -1.0, -1.0]),
    ])
    def test_diagonal_half_turns_are_symmetric(self, matrix):
        assert classify_cut_locus_so3(SO3Element(matrix)).tag is CutLocusTag.SYM


class TestConjugateLocus:
    def test_rotation_about_axis1(self):
        assert conjugate_locus_so3(SO3Element(axis1_rotation(1.0)))

    def test_not_conjugate(self):
        assert not conjugate_locus_so3(SO3Element(np.eye(3)))
        assert not conjugate_locus_so3(SO3Element(np.diag([-1.0, 1.0, -1.0])))
        assert not conjugate_locus_so3(SO3Element(np.diag([-1.0, -1.0, 1.0])))
        assert not conjugate_locus_so3(klein_omega(SU2Element(0.6, 0.0, 0.8, 0.0)))
