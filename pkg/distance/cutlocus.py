"""
Cut-locus strata of SO(3) and their counterparts on SU(2).

On SO(3) the cut locus of E splits into the symmetric part (involutions,
M^2 = E, M != E) and the local part (rotations about the first axis,
M = block-diag(1, R), M != E). The symmetric part is tested first, so the
half-turn about the first axis is reported as Sym.
"""
import logging
from enum import Enum
from dataclasses import dataclass, field
import numpy as np

from geometry.algebra import SU2Element, SO3Element

logger = logging.getLogger(__name__)

MEMBERSHIP_TOL = 1e-9
IDENTITY_TOL = 1e-12

_AXIS1 = np.array([1.0, 0.0, 0.0])


class CutLocusTag(str, Enum):
    NOT_CUT = "NotCut"
    SYM = "Sym"
    LOC = "Loc"


@dataclass(frozen=True)
class CutLocusClass:
    tag: CutLocusTag
    witness: dict = field(default_factory=dict)


def cut_locus_residuals(C: SO3Element) -> dict:
    """Max-norm residuals of M^2 = E and of the block form with first row/column (1, 0, 0)."""
    m = C.m
    involution = float(np.max(np.abs(m @ m - np.eye(3))))
    block = float(max(np.max(np.abs(m[0, :] - _AXIS1)), np.max(np.abs(m[:, 0] - _AXIS1))))
    return {'involution_residual': involution, 'block_residual': block}


def classify_cut_locus_so3(C: SO3Element) -> CutLocusClass:
    residuals = cut_locus_residuals(C)
    if C.is_identity(IDENTITY_TOL):
        tag = CutLocusTag.NOT_CUT
    elif residuals['involution_residual'] <= MEMBERSHIP_TOL:
        tag = CutLocusTag.SYM
    elif residuals['block_residual'] <= MEMBERSHIP_TOL:
        tag = CutLocusTag.LOC
    else:
        tag = CutLocusTag.NOT_CUT
    logger.debug(f"classify_cut_locus_so3: {tag.value} {residuals}")
    return CutLocusClass(tag, residuals)


def in_cut_locus_su2_L2(g: SU2Element) -> CutLocusTag:
    """
    Cut-locus predicate for the double cover (lens-space order 2).
    Sym: Re(A) = 0. Loc: B = 0 with Im(A) != 0. Sym takes precedence, so
    (+-i, 0) is reported as Sym rather than Loc even though it satisfies both
    conditions. This keeps the predicate equal to the SO(3) classification of
    its image, the half-turn diag(1, -1, -1).
    """
    if abs(g.a_re) <= MEMBERSHIP_TOL:
        return CutLocusTag.SYM
    if g.abs_b <= MEMBERSHIP_TOL and abs(g.a_im) > MEMBERSHIP_TOL:
        return CutLocusTag.LOC
    return CutLocusTag.NOT_CUT


def conjugate_locus_so3(C: SO3Element) -> bool:
    return classify_cut_locus_so3(C).tag is CutLocusTag.LOC
