"""Brute-force verification path.

Everything here works on dense arrays: Hessenberg reduction followed by a
complex single-shift QR iteration, LU determinants, bottleneck matching of
eigenvalue multisets and residuals of chains. None of it calls the
characteristic-polynomial or root-finding code.
"""

import logging
import warnings
from dataclasses import asdict, dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, hessenberg, lu_factor
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from tridiag.config import DEFAULT_TOLERANCES, Tolerances
from tridiag.core import TridiagonalMatrix, make_alternating, materialize_dense, sign_pattern
from tridiag.eigvec import left_scaling
from tridiag.errors import LengthMismatch, NoConvergence, TotalMismatch
from tridiag.roots import Spectrum, cluster

logger = logging.getLogger(__name__)

_EXCEPTIONAL_EVERY = 10


@dataclass(frozen=True)
class ResidualReport:
    max_eigen_residual: float = 0.0
    max_chain_residual: float = 0.0
    spectrum_match_distance: float = 0.0
    identity_deviation: float = 0.0
    passed: bool = True

    def combine(self, other: "ResidualReport") -> "ResidualReport":
        """Worst of both reports."""
        return ResidualReport(
            max_eigen_residual=max(self.max_eigen_residual, other.max_eigen_residual),
            max_chain_residual=max(self.max_chain_residual, other.max_chain_residual),
            spectrum_match_distance=max(self.spectrum_match_distance, other.spectrum_match_distance),
            identity_deviation=max(self.identity_deviation, other.identity_deviation),
            passed=self.passed and other.passed,
        )

    def to_dict(self) -> dict:
        return asdict(self)


def _dense(T) -> np.ndarray:
    if isinstance(T, TridiagonalMatrix):
        return materialize_dense(T)
    M = np.asarray(T, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise LengthMismatch(f"expected a square matrix, got shape {M.shape}")
    return M


# =============================================================================
# EIGENVALUES
# =============================================================================

def _givens(a: complex, b: complex) -> tuple[complex, complex]:
    """(c, s) with [[conj(c), conj(s)], [-s, c]] @ [a, b] = [r, 0]."""
    r = np.hypot(abs(a), abs(b))
    if r == 0:
        return 1.0 + 0j, 0j
    return a / r, b / r


def _wilkinson_shift(W: np.ndarray) -> complex:
    """Eigenvalue of the trailing 2 x 2 block closest to its last diagonal entry."""
    a, b, c, d = W[-2, -2], W[-2, -1], W[-1, -2], W[-1, -1]
    half_tr = (a + d) / 2
    disc = np.sqrt(((a - d) / 2) ** 2 + b * c)
    s1, s2 = half_tr + disc, half_tr - disc
    return s1 if abs(s1 - d) <= abs(s2 - d) else s2


def _qr_step(W: np.ndarray, shift: complex):
    """One shifted QR sweep W - σI = QR, W <- RQ + σI, in place on a Hessenberg window."""
    m = W.shape[0]
    W[np.diag_indices(m)] -= shift
    rotations = []
    for k in range(m - 1):
        c, s = _givens(W[k, k], W[k + 1, k])
        top, bottom = W[k, k:].copy(), W[k + 1, k:].copy()
        W[k, k:] = np.conj(c) * top + np.conj(s) * bottom
        W[k + 1, k:] = -s * top + c * bottom
        rotations.append((c, s))
    for k, (c, s) in enumerate(rotations):
        rows = slice(0, k + 2)
        left, right = W[rows, k].copy(), W[rows, k + 1].copy()
        W[rows, k] = c * left + s * right
        W[rows, k + 1] = -np.conj(s) * left + np.conj(c) * right
    W[np.diag_indices(m)] += shift


def hessenberg_qr_eigenvalues(M, tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """All eigenvalues of a square complex matrix, repeated by multiplicity.

    Raises:
        NoConvergence: an eigenvalue did not deflate within the iteration cap
    """
    H = np.array(hessenberg(_dense(M)), dtype=np.complex128)
    n = H.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.complex128)
    eps = np.finfo(float).eps
    norm = max(np.linalg.norm(H), np.finfo(float).tiny)
    eig = np.empty(n, dtype=np.complex128)
    hi, its = n - 1, 0
    while hi >= 0:
        lo = hi
        while lo > 0:
            sub = abs(H[lo, lo - 1])
            scale = abs(H[lo, lo]) + abs(H[lo - 1, lo - 1])
            if sub <= tolerances.deflation * scale or sub <= eps * norm:
                H[lo, lo - 1] = 0
                break
            lo -= 1
        if lo == hi:
            eig[hi] = H[hi, hi]
            hi -= 1
            its = 0
            continue
        if its >= tolerances.max_iter:
            raise NoConvergence(f"QR iteration did not deflate row {hi} in {its} sweeps")
        its += 1
        window = H[lo:hi + 1, lo:hi + 1]
        if its % _EXCEPTIONAL_EVERY == 0:
            shift = window[-1, -1] + 0.75 * abs(window[-1, -2])
            logger.debug("exceptional shift at row %d after %d sweeps", hi, its)
        else:
            shift = _wilkinson_shift(window)
        _qr_step(window, shift)
    return eig


def dense_eigen(M, radius: float | None = None, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
    """Spectrum of a dense (or tridiagonal) matrix by Hessenberg QR.

    Args:
        M: square complex array or TridiagonalMatrix, n <= 64
        radius: clustering radius; the roots-module default when None
        tolerances: deflation threshold and iteration cap

    Returns:
        Spectrum with n eigenvalues clustered into multiplicities
    """
    return cluster(hessenberg_qr_eigenvalues(M, tolerances), radius)


def match_spectra(s1: Spectrum, s2: Spectrum) -> float:
    """Smallest achievable maximum distance over perfect matchings of two multisets.

    Raises:
        TotalMismatch: the multisets have different sizes
    """
    a, b = s1.values(), s2.values()
    if a.size != b.size:
        raise TotalMismatch(f"cannot match {a.size} eigenvalues against {b.size}")
    if a.size == 0:
        return 0.0
    dist = np.abs(a[:, None] - b[None, :])

    # greedy upper bound
    taken = np.zeros(b.size, dtype=bool)
    greedy = 0.0
    for i in range(a.size):
        row = np.where(taken, np.inf, dist[i])
        j = int(np.argmin(row))
        taken[j] = True
        greedy = max(greedy, float(row[j]))

    candidates = np.unique(dist[dist <= greedy])
    lo, hi = 0, candidates.size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        graph = csr_matrix((dist <= candidates[mid]).astype(np.int8))
        if np.all(maximum_bipartite_matching(graph, perm_type="column") >= 0):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


# =============================================================================
# DETERMINANTS AND IDENTITIES
# =============================================================================

def dense_determinant(M) -> complex:
    """det by LU with partial pivoting."""
    A = _dense(M)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(A, check_finite=False)
    swaps = int(np.sum(piv != np.arange(piv.size)))
    return complex((-1) ** swaps * np.prod(np.diag(lu)))


def check_square_identity(J: TridiagonalMatrix, x: complex,
                          tolerances: Tolerances = DEFAULT_TOLERANCES) -> ResidualReport:
    """A**2 against J**2 + x**2 I, entrywise, for A = J + x E."""
    x = complex(x)
    A = materialize_dense(make_alternating(J, x))
    Jd = materialize_dense(J)
    deviation = float(np.max(np.abs(A @ A - (Jd @ Jd + x * x * np.eye(J.n)))))
    scale = max(float(np.max(np.abs(A))) ** 2, np.finfo(float).tiny)
    return ResidualReport(identity_deviation=deviation, passed=deviation <= tolerances.square * scale)


def check_anticommutation(J: TridiagonalMatrix) -> float:
    """max |J E + E J|; exactly 0 for a zero diagonal."""
    Jd = materialize_dense(J)
    e = sign_pattern(J.n)
    return float(np.max(np.abs(Jd * e[None, :] + e[:, None] * Jd)))


def check_similarity(T: TridiagonalMatrix) -> float:
    """max |D^{-1} T D - T^T| relative to max |T| for the left scaling D."""
    d = left_scaling(T).d
    Td = materialize_dense(T)
    deviation = np.max(np.abs(Td * d[None, :] / d[:, None] - Td.T))
    return float(deviation / max(np.max(np.abs(Td)), np.finfo(float).tiny))


def chain_residuals(T, chain) -> tuple[float, float]:
    """Relative residuals of a Jordan chain of T (of T^T for left chains).

    Returns:
        (||(T-μ)v_0|| / (||T||_F ||v_0||),
         max_j ||(T-μ)v_j - v_{j-1}|| / (||T||_F max(||v_j||, ||v_{j-1}||)))
    """
    M = _dense(T)
    if chain.left:
        M = M.T
    scale = max(np.linalg.norm(M), np.finfo(float).tiny)
    shifted = M - chain.eigenvalue * np.eye(M.shape[0])
    v = chain.vectors
    eigen = np.linalg.norm(shifted @ v[0]) / (scale * np.linalg.norm(v[0]))
    worst = 0.0
    for j in range(1, v.shape[0]):
        r = np.linalg.norm(shifted @ v[j] - v[j - 1])
        worst = max(worst, r / (scale * max(np.linalg.norm(v[j]), np.linalg.norm(v[j - 1]))))
    return float(eigen), float(worst)
