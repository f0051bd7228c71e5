"""
Group and Lie-algebra arithmetic for SU(2) and SO(3).

An element of SU(2) is stored as the pair (A, B) of complex numbers standing
for the matrix [[A, B], [-conj(B), conj(A)]] with |A|^2 + |B|^2 = 1.
The Lie algebra su(2) uses the basis

    p1 = 1/2 [[0, 1], [-1, 0]],  p2 = 1/2 [[0, i], [i, 0]],  k = 1/2 [[i, 0], [0, -i]]

with [p1, p2] = k, [p2, k] = p1, [k, p1] = p2; so(3) uses the basis a, b, c of
infinitesimal rotations in the (1,2), (1,3) and (2,3) coordinate planes.
The Klein epimorphism sends (p1, p2, k) to (-b, a, c).
"""
import math
import logging
from dataclasses import dataclass
import numpy as np

from utils.errors import InvariantViolation

logger = logging.getLogger(__name__)

VALIDATION_TOL = 1e-9


@dataclass(frozen=True)
class SU2Element:
    a_re: float
    a_im: float
    b_re: float
    b_im: float

    def __post_init__(self):
        values = (self.a_re, self.a_im, self.b_re, self.b_im)
        if not all(math.isfinite(v) for v in values):
            raise InvariantViolation('unit-norm', float('inf'), f"non-finite component in {values}")
        norm_sq = sum(v * v for v in values)
        residual = abs(norm_sq - 1.0)
        if residual > VALIDATION_TOL:
            raise InvariantViolation('unit-norm', residual, f"|A|^2+|B|^2 = {norm_sq!r}")
        norm = math.sqrt(norm_sq)
        for name, v in zip(('a_re', 'a_im', 'b_re', 'b_im'), values):
            object.__setattr__(self, name, float(v) / norm)

    @classmethod
    def from_complex(cls, a: complex, b: complex) -> "SU2Element":
        return cls(a.real, a.imag, b.real, b.imag)

    @property
    def a(self) -> complex:
        return complex(self.a_re, self.a_im)

    @property
    def b(self) -> complex:
        return complex(self.b_re, self.b_im)

    @property
    def abs_a(self) -> float:
        return math.hypot(self.a_re, self.a_im)

    @property
    def abs_b(self) -> float:
        return math.hypot(self.b_re, self.b_im)

    def __neg__(self) -> "SU2Element":
        return SU2Element(-self.a_re, -self.a_im, -self.b_re, -self.b_im)

    def as_array(self) -> np.ndarray:
        return np.array([self.a_re, self.a_im, self.b_re, self.b_im])

    def max_deviation(self, other: "SU2Element") -> float:
        return float(np.max(np.abs(self.as_array() - other.as_array())))


@dataclass(frozen=True, eq=False)
class SO3Element:
    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        if m.shape != (3, 3):
            raise InvariantViolation('rotation', float('inf'), f"expected a 3x3 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvariantViolation('rotation', float('inf'), "non-finite matrix entry")
        orth_residual = float(np.max(np.abs(m.T @ m - np.eye(3))))
        if orth_residual > VALIDATION_TOL:
            raise InvariantViolation('orthogonality', orth_residual, "M^T M != I")
        det_residual = abs(float(np.linalg.det(m)) - 1.0)
        if det_residual > VALIDATION_TOL:
            raise InvariantViolation('determinant', det_residual, "det(M) != 1")
        m.flags.writeable = False
        object.__setattr__(self, 'm', m)

    def __getitem__(self, index):
        return float(self.m[index])

    def c(self, i: int, j: int) -> float:
        """Entry c_ij with 1-based indices."""
        return float(self.m[i - 1, j - 1])

    @property
    def T(self) -> "SO3Element":
        return SO3Element(self.m.T)

    def __matmul__(self, other: "SO3Element") -> "SO3Element":
        return SO3Element(self.m @ other.m)

    def __eq__(self, other) -> bool:
        return isinstance(other, SO3Element) and bool(np.array_equal(self.m, other.m))

    def __hash__(self):
        return hash(self.m.tobytes())

    def max_deviation(self, other: "SO3Element") -> float:
        return float(np.max(np.abs(self.m - other.m)))

    def is_identity(self, tol: float = 1e-12) -> bool:
        return float(np.max(np.abs(self.m - np.eye(3)))) < tol


@dataclass(frozen=True)
class AlgebraVector:
    """Coefficients in the basis (p1, p2, k) of su(2) or (a, b, c) of so(3)."""
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise ValueError(f"Error: AlgebraVector components must be finite, got {(self.x, self.y, self.z)}")

    @property
    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)


SU2_IDENTITY = SU2Element(1.0, 0.0, 0.0, 0.0)
SO3_IDENTITY = SO3Element(np.eye(3))


def su2_mul(g: SU2Element, h: SU2Element) -> SU2Element:
    # (A, B)(C, D) = (AC - B conj(D), AD + B conj(C))
    a, b, c, d = g.a, g.b, h.a, h.b
    return SU2Element.from_complex(a * c - b * d.conjugate(), a * d + b * c.conjugate())


def su2_inv(g: SU2Element) -> SU2Element:
    return SU2Element(g.a_re, -g.a_im, -g.b_re, -g.b_im)


def su2_to_matrix(g: SU2Element) -> np.ndarray:
    a, b = g.a, g.b
    return np.array([[a, b], [-b.conjugate(), a.conjugate()]], dtype=complex)


def algebra_matrix(v: AlgebraVector) -> np.ndarray:
    """x p1 + y p2 + z k as a 2x2 skew-Hermitian matrix."""
    return 0.5 * np.array([[1j * v.z, v.x + 1j * v.y],
                           [-v.x + 1j * v.y, -1j * v.z]], dtype=complex)


def lie_bracket(u: AlgebraVector, v: AlgebraVector) -> AlgebraVector:
    # the structure constants of (p1, p2, k) are those of the cross product
    return AlgebraVector(u.y * v.z - u.z * v.y,
                         u.z * v.x - u.x * v.z,
                         u.x * v.y - u.y * v.x)


def su2_exp(v: AlgebraVector, t: float) -> SU2Element:
    """exp(t (x p1 + y p2 + z k)) in closed form."""
    if not math.isfinite(t):
        raise ValueError(f"Error: su2_exp needs a finite t, got {t}")
    omega = v.norm
    if omega == 0.0:
        return SU2_IDENTITY
    half = 0.5 * t * omega
    scale = math.sin(half) / omega
    return SU2Element(math.cos(half), v.z * scale, v.x * scale, v.y * scale)


def so3_hat(v: AlgebraVector) -> np.ndarray:
    """x a + y b + z c as a skew-symmetric matrix."""
    return np.array([[0.0, -v.x, -v.y],
                     [v.x, 0.0, -v.z],
                     [v.y, v.z, 0.0]])


def so3_exp(v: AlgebraVector, t: float) -> SO3Element:
    """exp(t (x a + y b + z c)) by the Rodrigues formula."""
    omega = v.norm
    if omega == 0.0 or t == 0.0:
        return SO3_IDENTITY
    k = so3_hat(v) / omega
    angle = t * omega
    m = np.eye(3) + math.sin(angle) * k + (1.0 - math.cos(angle)) * (k @ k)
    return SO3Element(m)


def klein_omega_components(a1, a2, b1, b2) -> np.ndarray:
    """
    Klein matrix for (arrays of) A = a1 + i a2, B = b1 + i b2.
    Returns an array of shape (..., 3, 3).
    """
    a1, a2, b1, b2 = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (a1, a2, b1, b2)))
    m = np.empty(a1.shape + (3, 3))
    m[..., 0, 0] = a1 * a1 + a2 * a2 - b1 * b1 - b2 * b2
    m[..., 0, 1] = 2.0 * (a2 * b1 - b2 * a1)
    m[..., 0, 2] = 2.0 * (a2 * b2 + b1 * a1)
    m[..., 1, 0] = 2.0 * (a2 * b1 + b2 * a1)
    m[..., 1, 1] = a1 * a1 - a2 * a2 + b1 * b1 - b2 * b2
    m[..., 1, 2] = 2.0 * (b1 * b2 - a1 * a2)
    m[..., 2, 0] = 2.0 * (a2 * b2 - b1 * a1)
    m[..., 2, 1] = 2.0 * (b2 * b1 + a2 * a1)
    m[..., 2, 2] = a1 * a1 - a2 * a2 - b1 * b1 + b2 * b2
    return m


def klein_omega(g: SU2Element) -> SO3Element:
    return SO3Element(klein_omega_components(g.a_re, g.a_im, g.b_re, g.b_im))


def _quaternion_of(C: SO3Element) -> np.ndarray:
    """
    (A1, A2, B1, B2) with Klein matrix C, anchored on the component of largest
    modulus so that no division by a small number occurs.
    """
    c = C.m
    squares = np.array([
        1.0 + c[0, 0] + c[1, 1] + c[2, 2],
        1.0 + c[0, 0] - c[1, 1] - c[2, 2],
        1.0 - c[0, 0] + c[1, 1] - c[2, 2],
        1.0 - c[0, 0] - c[1, 1] + c[2, 2],
    ])
    # products 4 q_i q_j read off the off-diagonal entries
    a1a2 = c[2, 1] - c[1, 2]
    a1b1 = c[0, 2] - c[2, 0]
    a1b2 = c[1, 0] - c[0, 1]
    a2b1 = c[0, 1] + c[1, 0]
    a2b2 = c[0, 2] + c[2, 0]
    b1b2 = c[1, 2] + c[2, 1]

    anchor = int(np.argmax(squares))
    q_anchor = 0.5 * math.sqrt(max(0.0, float(squares[anchor])))
    scale = 1.0 / (4.0 * q_anchor)
    if anchor == 0:
        q = [q_anchor, a1a2 * scale, a1b1 * scale, a1b2 * scale]
    elif anchor == 1:
        q = [a1a2 * scale, q_anchor, a2b1 * scale, a2b2 * scale]
    elif anchor == 2:
        q = [a1b1 * scale, a2b1 * scale, q_anchor, b1b2 * scale]
    else:
        q = [a1b2 * scale, a2b2 * scale, b1b2 * scale, q_anchor]
    q = np.array(q, dtype=float)

    # canonical sign: first non-zero of (A1, A2, B1, B2) positive, i.e.
    # Re(A) >= 0 and Im(A) >= 0 when Re(A) = 0
    leading = q[np.nonzero(q)[0][0]]
    return q if leading > 0 else -q


def canonical_a(C: SO3Element) -> tuple[float, float]:
    """Re(A), Im(A) of the canonical lift: Re(A) >= 0, Im(A) signed like c32 - c23."""
    q = _quaternion_of(C)
    return float(q[0]), float(q[1])


def lift_so3(C: SO3Element) -> tuple[SU2Element, SU2Element]:
    """
    The two preimages of C under the Klein map: the canonical lift (A, B)
    with Re(A) >= 0, and its negation (-A, -B).
    """
    lift = SU2Element(*_quaternion_of(C).tolist())
    logger.debug(f"lift_so3: A=({lift.a_re:.6g},{lift.a_im:.6g}) B=({lift.b_re:.6g},{lift.b_im:.6g})")
    return lift, -lift


def random_su2(rng: np.random.Generator, n: int) -> list[SU2Element]:
    """n elements from normalized Gaussian quaternions."""
    q = rng.normal(size=(n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    return [SU2Element(*row) for row in q.tolist()]


def random_so3(rng: np.random.Generator, n: int) -> list[SO3Element]:
    return [klein_omega(g) for g in random_su2(rng, n)]
