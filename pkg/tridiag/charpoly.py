"""Characteristic polynomials by the three-term recurrence.

    χ_{k+1}(z) = (z - b_{k+1}) χ_k(z) - a_k c_k χ_{k-1}(z),   χ_{-1} = 0, χ_0 = 1

Coefficients are stored in ascending degree. No scaling is applied: orders
around 60 with large entries overflow, desk-scale use (n <= 32) does not.
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from tridiag.config import DEFAULT_TOLERANCES
from tridiag.core import TridiagonalMatrix
from tridiag.errors import ParityViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CharPoly:
    """Monic polynomial, ascending coefficients, degree equal to the matrix order."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        return P.polyval(z, self.coeffs)


@dataclass(frozen=True, eq=False)
class ParityFactorization:
    """χ(z) = p(z**2) for even order, χ(z) = z p(z**2) for odd order."""

    reduced: np.ndarray
    odd: bool

    def __post_init__(self):
        r = np.array(self.reduced, dtype=np.complex128).reshape(-1)
        r.flags.writeable = False
        object.__setattr__(self, "reduced", r)


def char_poly_sequence(T: TridiagonalMatrix) -> list[CharPoly]:
    """χ_0, χ_1, ..., χ_n of all leading principal submatrices of T."""
    prev = np.zeros(1, dtype=np.complex128)  # χ_{-1}
    cur = np.ones(1, dtype=np.complex128)  # χ_0
    out = [CharPoly(cur)]
    products = T.products
    for k in range(T.n):
        # z χ_k - b_{k+1} χ_k
        nxt = np.zeros(k + 2, dtype=np.complex128)
        nxt[1:] = cur
        nxt[: k + 1] -= T.diag[k] * cur
        if k > 0:
            nxt[: prev.size] -= products[k - 1] * prev
        prev, cur = cur, nxt
        out.append(CharPoly(cur))
    return out


def char_poly(T: TridiagonalMatrix) -> CharPoly:
    """det(zI - T) as a monic CharPoly."""
    return char_poly_sequence(T)[-1]


def evaluate(p: CharPoly, z):
    return p(z)


def parity_split(p: CharPoly, tol: float = DEFAULT_TOLERANCES.parity) -> ParityFactorization:
    """Factor out the spectral parity of a zero-diagonal characteristic polynomial.

    Args:
        p: characteristic polynomial of a zero-diagonal matrix
        tol: wrong-parity coefficients must be at most tol * max|coeff|

    Returns:
        ParityFactorization with the reduced polynomial in w = z**2

    Raises:
        ParityViolation: a wrong-parity coefficient exceeds the tolerance
    """
    c = p.coeffs
    odd = p.degree % 2 == 1
    keep = c[1::2] if odd else c[0::2]
    drop = c[0::2] if odd else c[1::2]
    scale = np.max(np.abs(c))
    worst = float(np.max(np.abs(drop))) if drop.size else 0.0
    if worst > tol * scale:
        raise ParityViolation(
            f"wrong-parity coefficient of size {worst:.3e} exceeds {tol:.1e} x {scale:.3e}"
        )
    logger.debug("parity split of degree %d: largest wrong-parity coefficient %.3e", p.degree, worst)
    return ParityFactorization(reduced=keep, odd=odd)


def reconstruct(pf: ParityFactorization) -> CharPoly:
    """Rebuild χ from its parity factorization."""
    degree = 2 * (pf.reduced.size - 1) + (1 if pf.odd else 0)
    c = np.zeros(degree + 1, dtype=np.complex128)
    c[(1 if pf.odd else 0)::2] = pf.reduced
    return CharPoly(c)


def determinant(T: TridiagonalMatrix) -> complex:
    """det T = (-1)**n χ_n(0), running the recurrence at z = 0 only."""
    prev, cur = 0j, 1 + 0j
    products = T.products
    for k in range(T.n):
        nxt = -T.diag[k] * cur
        if k > 0:
            nxt -= products[k - 1] * prev
        prev, cur = cur, nxt
    return complex((-1) ** T.n * cur)
