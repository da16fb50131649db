"""Tridiagonal matrix representation and the constructors of its families.

J_n has zero main diagonal, A_n = J_n + x E_n has diagonal (x, -x, x, ...),
B_n has diagonal (x, y, x, y, ...). E_n = diag(1, -1, 1, ...) is never stored;
it only exists as ``apply_sign_involution``.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from tridiag.errors import (
    LengthMismatch,
    NonFiniteEntry,
    NonZeroDiagonalInput,
    ZeroOffDiagonal,
)


def _frozen_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteEntry(f"{name} contains NaN or infinite entries")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TridiagonalMatrix:
    """An n x n tridiagonal matrix stored by its three diagonals.

    ``sub[k]`` sits at row k+1, column k; ``sup[k]`` at row k, column k+1.
    The irreducibility flag is computed here and never taken from input.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    irreducible: bool = field(init=False)

    def __post_init__(self):
        sub = _frozen_array(self.sub, "sub")
        diag = _frozen_array(self.diag, "diag")
        sup = _frozen_array(self.sup, "sup")
        if diag.size < 1:
            raise LengthMismatch("matrix order must be at least 1")
        if sub.size != diag.size - 1 or sup.size != diag.size - 1:
            raise LengthMismatch(
                f"expected {diag.size - 1} off-diagonal entries, "
                f"got sub={sub.size}, sup={sup.size}"
            )
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "sup", sup)
        object.__setattr__(self, "irreducible", bool(np.all(sub != 0) and np.all(sup != 0)))

    @property
    def n(self) -> int:
        return self.diag.size

    @property
    def products(self) -> np.ndarray:
        """The coupling products a_k c_k, the only off-diagonal data χ depends on."""
        return self.sub * self.sup

    @property
    def frobenius(self) -> float:
        return float(np.sqrt(sum(np.sum(np.abs(d) ** 2) for d in (self.sub, self.diag, self.sup))))

    @classmethod
    def from_diagonals(cls, sub, diag, sup) -> "TridiagonalMatrix":
        return cls(sub=sub, diag=diag, sup=sup)

    @classmethod
    def from_dense(cls, M) -> "TridiagonalMatrix":
        """Read the three diagonals of a square array; other entries must be zero."""
        M = np.asarray(M, dtype=np.complex128)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise LengthMismatch(f"expected a square array, got shape {M.shape}")
        band = np.diag(M), np.diag(M, -1), np.diag(M, 1)
        rest = M - np.diag(band[0]) - np.diag(band[1], -1) - np.diag(band[2], 1)
        if np.any(rest != 0):
            raise LengthMismatch("array has entries outside the three central diagonals")
        return cls(sub=band[1], diag=band[0], sup=band[2])

    def with_diagonal(self, diag) -> "TridiagonalMatrix":
        return TridiagonalMatrix(sub=self.sub, diag=diag, sup=self.sup)

    def has_zero_diagonal(self) -> bool:
        return bool(np.all(self.diag == 0))


class DiagonalShape(str, Enum):
    ZERO = "zero"
    ALTERNATING = "alternating"
    TWO_PERIODIC = "two_periodic"
    OTHER = "other"


@dataclass(frozen=True)
class PerturbationParams:
    """The diagonal values of B_n: x at odd positions, y at even positions."""

    x: complex
    y: complex

    def __post_init__(self):
        x, y = complex(self.x), complex(self.y)
        if not (np.isfinite(x) and np.isfinite(y)):
            raise NonFiniteEntry("perturbation parameters must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def half_difference(self) -> complex:
        """(x - y)/2, the parameter of the alternating matrix B is a shift of."""
        return (self.x - self.y) / 2

    @property
    def half_sum(self) -> complex:
        """(x + y)/2, the shift carrying σ(A) onto σ(B)."""
        return (self.x + self.y) / 2


# =============================================================================
# CONSTRUCTORS
# =============================================================================

def make_zero_diag(sub, sup) -> TridiagonalMatrix:
    """Build the irreducible zero-diagonal matrix J_n.

    Args:
        sub: subdiagonal a_1..a_{n-1}
        sup: superdiagonal c_1..c_{n-1}

    Returns:
        J_n with zero main diagonal

    Raises:
        LengthMismatch: lengths differ or are empty
        ZeroOffDiagonal: some a_k or c_k is zero
    """
    sub = np.asarray(sub, dtype=np.complex128).reshape(-1)
    sup = np.asarray(sup, dtype=np.complex128).reshape(-1)
    if sub.size != sup.size:
        raise LengthMismatch(f"sub has {sub.size} entries but sup has {sup.size}")
    if sub.size < 1:
        raise LengthMismatch("J_n needs at least one off-diagonal pair (n >= 2)")
    if np.any(sub == 0) or np.any(sup == 0):
        raise ZeroOffDiagonal("every sub- and superdiagonal entry must be nonzero")
    return TridiagonalMatrix(sub=sub, diag=np.zeros(sub.size + 1), sup=sup)


def require_zero_diagonal(J: TridiagonalMatrix):
    if not J.has_zero_diagonal():
        raise NonZeroDiagonalInput("expected a matrix with zero main diagonal")
    if not J.irreducible:
        raise ZeroOffDiagonal("expected an irreducible matrix")


def sign_pattern(n: int) -> np.ndarray:
    """Diagonal of E_n: (1, -1, 1, ...)."""
    return np.where(np.arange(n) % 2 == 0, 1.0, -1.0)


def make_alternating(J: TridiagonalMatrix, x: complex) -> TridiagonalMatrix:
    """A_n = J_n + x E_n."""
    require_zero_diagonal(J)
    return J.with_diagonal(complex(x) * sign_pattern(J.n))


def make_two_periodic(J: TridiagonalMatrix, p: PerturbationParams) -> TridiagonalMatrix:
    """B_n = J_n + (x-y)/2 E_n + (x+y)/2 I_n, i.e. diagonal (x, y, x, y, ...)."""
    require_zero_diagonal(J)
    diag = np.where(np.arange(J.n) % 2 == 0, p.x, p.y).astype(np.complex128)
    return J.with_diagonal(diag)


def sylvester_kac(N: int) -> TridiagonalMatrix:
    """(N+1) x (N+1) Sylvester–Kac matrix: sup (1..N), sub (N..1), zero diagonal."""
    if N < 1:
        raise LengthMismatch(f"Sylvester–Kac order must be at least 1, got {N}")
    k = np.arange(1, N + 1, dtype=float)
    return make_zero_diag(sub=k[::-1], sup=k)


def kac_principal(N: int) -> TridiagonalMatrix:
    """Leading N x N principal submatrix of K_N (N >= 2)."""
    if N < 2:
        raise LengthMismatch(f"principal Kac submatrix needs N >= 2, got {N}")
    return leading_principal(sylvester_kac(N), N)


def leading_principal(T: TridiagonalMatrix, k: int) -> TridiagonalMatrix:
    if not 1 <= k <= T.n:
        raise LengthMismatch(f"leading block order {k} outside 1..{T.n}")
    return TridiagonalMatrix(sub=T.sub[: k - 1], diag=T.diag[:k], sup=T.sup[: k - 1])


def strip_diagonal(T: TridiagonalMatrix) -> TridiagonalMatrix:
    """The zero-diagonal matrix with T's off-diagonals."""
    return make_zero_diag(T.sub, T.sup)


def nilpotent_example() -> TridiagonalMatrix:
    """5 x 5 zero-diagonal matrix whose only eigenvalue is 0."""
    return make_zero_diag(sub=[1, 1, 1, 1], sup=[1, 1, -4, 2])


def apply_sign_involution(v) -> np.ndarray:
    """E_n v: component i multiplied by (-1)**i (0-based)."""
    v = np.asarray(v, dtype=np.complex128)
    if v.size == 0:
        raise LengthMismatch("sign involution needs a nonempty vector")
    return v * sign_pattern(v.shape[0]).reshape((-1,) + (1,) * (v.ndim - 1))


def materialize_dense(T: TridiagonalMatrix) -> np.ndarray:
    """Full n x n complex array with the three diagonals placed."""
    return np.diag(T.diag) + np.diag(T.sub, -1) + np.diag(T.sup, 1)


def diagonal_shape(T: TridiagonalMatrix, tol: float = 0.0) -> tuple[DiagonalShape, PerturbationParams | None]:
    """Classify T's main diagonal.

    Args:
        T: matrix to inspect
        tol: absolute tolerance for equality of diagonal entries

    Returns:
        (shape, params) where params holds the detected (x, y) for the
        zero, alternating and two-periodic shapes, and None otherwise
    """
    d = T.diag
    if np.all(np.abs(d) <= tol):
        return DiagonalShape.ZERO, PerturbationParams(0, 0)
    x = d[0]
    y = d[1] if T.n > 1 else -x
    if not (np.all(np.abs(d[0::2] - x) <= tol) and np.all(np.abs(d[1::2] - y) <= tol)):
        return DiagonalShape.OTHER, None
    if abs(x + y) <= tol:
        return DiagonalShape.ALTERNATING, PerturbationParams(x, -x)
    return DiagonalShape.TWO_PERIODIC, PerturbationParams(x, y)
