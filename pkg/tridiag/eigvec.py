"""Eigenvectors and first generalized eigenvectors of J_n, A_n and B_n.

Chains of J come from forward recurrences; chains of A are fixed linear
combinations of J's chains at ±λ_k; chains of B are those of A at parameter
(x-y)/2 with the eigenvalue shifted. Left chains follow from the diagonal
similarity D^{-1} T D = T^T.

The chain for -λ is always obtained from the one for λ by ``reflect_chain``:
the combination formulas rely on u^{(-λ)} = E u^{(λ)} holding exactly.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from tridiag.config import DEFAULT_TOLERANCES, Tolerances
from tridiag.core import PerturbationParams, TridiagonalMatrix, apply_sign_involution, require_zero_diagonal
from tridiag.errors import ChainBreak, DegenerateMu, InsufficientChain, NotAnEigenvalue
from tridiag.spectra import PairedSpectrum, is_degenerate

logger = logging.getLogger(__name__)

# the ±x chains use u_0..u_3 of J at 0 and no more
_ZERO_CHAIN_DEPTH = 4


@dataclass(frozen=True, eq=False)
class JordanChain:
    """v_0 (eigenvector), v_1, ... for one eigenvalue, stored row-wise.

    ``left`` marks a chain of T^T, i.e. row vectors of T.
    """

    eigenvalue: complex
    vectors: np.ndarray
    left: bool = field(default=False)

    def __post_init__(self):
        v = np.array(self.vectors, dtype=np.complex128)
        if v.ndim == 1:
            v = v.reshape(1, -1)
        if v.shape[0] < 1 or not np.any(v[0]):
            raise ChainBreak("a Jordan chain needs a nonzero eigenvector")
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "eigenvalue", complex(self.eigenvalue))

    @property
    def matrix_order(self) -> int:
        return self.vectors.shape[1]

    @property
    def depth(self) -> int:
        return self.vectors.shape[0]

    def __getitem__(self, j: int) -> np.ndarray:
        return self.vectors[j]


@dataclass(frozen=True)
class CombinationCoefficients:
    """v^{(μ)} = α u^{(λ)} + β u^{(-λ)} and v^{(-μ)} = γ u^{(λ)} + δ u^{(-λ)}."""

    alpha: complex
    beta: complex
    gamma: complex
    delta: complex


@dataclass(frozen=True, eq=False)
class LeftScaling:
    """Diagonal of D with d_1 = 1, d_{k+1} = d_k a_k / c_k."""

    d: np.ndarray

    def __post_init__(self):
        d = np.array(self.d, dtype=np.complex128).reshape(-1)
        if np.any(d == 0):
            raise ChainBreak("left scaling needs an irreducible matrix")
        d.flags.writeable = False
        object.__setattr__(self, "d", d)


# =============================================================================
# CHAINS OF J
# =============================================================================

def _forward_solve(T: TridiagonalMatrix, lam: complex, rhs: np.ndarray, first: complex) -> tuple[np.ndarray, complex]:
    """Solve rows 1..n-1 of (T - λI) w = rhs with w_1 fixed; return w and the last-row residual."""
    n = T.n
    a, b, c = T.sub, T.diag, T.sup
    w = np.zeros(n, dtype=np.complex128)
    w[0] = first
    for k in range(n - 1):
        acc = rhs[k] - (b[k] - lam) * w[k]
        if k > 0:
            acc -= a[k - 1] * w[k - 1]
        w[k + 1] = acc / c[k]
    last = (b[n - 1] - lam) * w[n - 1] - rhs[n - 1]
    if n > 1:
        last += a[n - 2] * w[n - 2]
    return w, complex(last)


def eigenvector_j(T: TridiagonalMatrix, lam: complex, tol: float = DEFAULT_TOLERANCES.residual) -> np.ndarray:
    """The eigenvector of an irreducible T for λ, with first component 1.

    Args:
        T: irreducible tridiagonal matrix (any diagonal)
        lam: eigenvalue of T
        tol: last-row residual bound relative to ||T||_F ||u||

    Returns:
        u with u_1 = 1

    Raises:
        NotAnEigenvalue: the recurrence does not close on the last row
    """
    if not T.irreducible:
        raise ChainBreak("eigenvectors by recurrence need an irreducible matrix")
    lam = complex(lam)
    u, residual = _forward_solve(T, lam, np.zeros(T.n, dtype=np.complex128), 1.0)
    bound = tol * T.frobenius * np.linalg.norm(u)
    if not abs(residual) <= bound:
        raise NotAnEigenvalue(f"{lam:.6g} is not an eigenvalue: last-row residual {abs(residual):.3e} > {bound:.3e}")
    return u


def jordan_chain_j(T: TridiagonalMatrix, lam: complex, depth: int,
                   tol: float = DEFAULT_TOLERANCES.residual) -> JordanChain:
    """Jordan chain of T at λ of the given depth.

    Each generalized vector solves (T - λI) w = v_{j-1} by forward recurrence
    with w_1 = 0; the last row checks consistency.

    Raises:
        NotAnEigenvalue: λ is not an eigenvalue
        ChainBreak: the chain ends before the requested depth
    """
    if depth < 1:
        raise ChainBreak(f"chain depth must be positive, got {depth}")
    lam = complex(lam)
    vectors = [eigenvector_j(T, lam, tol)]
    for j in range(1, depth):
        prev = vectors[-1]
        w, residual = _forward_solve(T, lam, prev, 0.0)
        bound = tol * T.frobenius * max(np.linalg.norm(w), np.linalg.norm(prev))
        if not abs(residual) <= bound:
            raise ChainBreak(f"no generalized eigenvector of order {j} at {lam:.6g} (residual {abs(residual):.3e})")
        vectors.append(w)
    return JordanChain(lam, np.array(vectors))


def reflect_chain(chain: JordanChain) -> JordanChain:
    """Chain of a zero-diagonal J at -λ: v_j -> (-1)**j E v_j."""
    signs = (-1.0) ** np.arange(chain.depth)
    reflected = apply_sign_involution(chain.vectors.T).T * signs[:, None]
    return JordanChain(-chain.eigenvalue, reflected, left=chain.left)


def normalize_chain(chain: JordanChain) -> JordanChain:
    """Scale the whole chain so the first nonzero component of v_0 is exactly 1."""
    v0 = chain.vectors[0]
    peak = np.max(np.abs(v0))
    first = v0[np.flatnonzero(np.abs(v0) > 1e-14 * peak)[0]]
    return JordanChain(chain.eigenvalue, chain.vectors / first, left=chain.left)


# =============================================================================
# CHAINS OF A_n = J_n + x E_n
# =============================================================================

def branch_mu(lam: complex, x: complex) -> complex:
    """sqrt(λ**2 + x**2) on the branch with |λ + μ| >= |λ - μ|."""
    mu = complex(np.sqrt(lam * lam + x * x))
    if abs(lam + mu) < abs(lam - mu):
        mu = -mu
    return mu


def combination_coefficients(lam: complex, x: complex,
                             degen: float = DEFAULT_TOLERANCES.degen) -> tuple[complex, CombinationCoefficients]:
    """μ and the coefficients with α = δ = 1, β = -γ = x/(λ+μ).

    Raises:
        DegenerateMu: λ = 0, or μ = 0 (x = ±iλ); other constructions apply there
    """
    lam, x = complex(lam), complex(x)
    if lam == 0:
        raise DegenerateMu("λ = 0: use the ±x construction")
    if is_degenerate(lam, x, degen):
        raise DegenerateMu(f"μ = 0 at λ={lam:.6g}, x={x:.6g}: use the zero-μ construction")
    mu = branch_mu(lam, x)
    beta = x / (lam + mu)
    return mu, CombinationCoefficients(alpha=1.0, beta=beta, gamma=-beta, delta=1.0)


def eigenvector_a_generic(u_plus, u_minus, lam: complex, x: complex, sign: int = 1,
                          degen: float = DEFAULT_TOLERANCES.degen) -> tuple[complex, np.ndarray]:
    """Eigenvector of A_n for ±μ from the J-eigenvectors at ±λ.

    Args:
        u_plus: eigenvector of J at λ
        u_minus: eigenvector of J at -λ, equal to E u_plus
        lam: nonzero eigenvalue of J
        x: alternating diagonal parameter
        sign: +1 for μ, -1 for -μ

    Returns:
        (sign * μ, v)
    """
    mu, cc = combination_coefficients(lam, x, degen)
    u_plus = np.asarray(u_plus, dtype=np.complex128)
    u_minus = np.asarray(u_minus, dtype=np.complex128)
    if sign > 0:
        return mu, cc.alpha * u_plus + cc.beta * u_minus
    return -mu, cc.gamma * u_plus + cc.delta * u_minus


def gen_eigenvector_a_generic(chain_plus: JordanChain, chain_minus: JordanChain, lam: complex, x: complex,
                              sign: int = 1, degen: float = DEFAULT_TOLERANCES.degen) -> np.ndarray:
    """First generalized eigenvector of A_n at ±μ from J-chains of depth 2 at ±λ.

    Raises:
        InsufficientChain: either chain is shorter than 2
        DegenerateMu: as for ``eigenvector_a_generic``
    """
    if chain_plus.depth < 2 or chain_minus.depth < 2:
        raise InsufficientChain("generalized eigenvectors at ±μ need chains of depth 2 at ±λ")
    mu, cc = combination_coefficients(lam, x, degen)
    lam = complex(lam)
    up0, up1 = chain_plus[0], chain_plus[1]
    um0, um1 = chain_minus[0], chain_minus[1]
    b = cc.beta
    if sign > 0:
        return (up0 - b * um0) / (2 * lam) + (mu / lam) * (up1 - b * um1)
    return -(b * up0 + um0) / (2 * lam) + (mu / lam) * (b * up1 + um1)


def eigenvector_a_zero_mu(u_plus, u_minus, lam: complex, branch: int = 1) -> JordanChain:
    """Chain of length 2 at eigenvalue 0 of A_n when x = branch * iλ.

    v_0 = u^{(λ)} ± i u^{(-λ)},  v_1 = (u^{(λ)} ∓ i u^{(-λ)}) / (2λ)
    """
    u_plus = np.asarray(u_plus, dtype=np.complex128)
    u_minus = np.asarray(u_minus, dtype=np.complex128)
    s = 1j if branch > 0 else -1j
    v0 = u_plus + s * u_minus
    v1 = (u_plus - s * u_minus) / (2 * complex(lam))
    return JordanChain(0j, np.array([v0, v1]))


def zero_mu_branch(lam: complex, x: complex) -> int:
    """+1 when x is closer to iλ than to -iλ."""
    return 1 if abs(x - 1j * lam) <= abs(x + 1j * lam) else -1


def eigenvector_a_pm_x(chain0: JordanChain, x: complex, plus_depth: int | None = None,
                       minus_depth: int | None = None) -> tuple[JordanChain, JordanChain | None]:
    """Chains of A_{2l+1} at +x and -x from the chain u_0, u_1, ... of J at 0.

        v_0^{(x)}  = u_0                    v_1^{(x)}  = u_1 + 2x u_2
        v_0^{(-x)} = u_0 - 2x u_1           v_1^{(-x)} = u_1 - 2x u_2 + 4x**2 u_3

    Args:
        chain0: Jordan chain of J at 0
        x: alternating diagonal parameter
        plus_depth, minus_depth: requested depths (at most 2); None takes
            whatever chain0 supports

    Returns:
        (chain at x, chain at -x or None when chain0 has length 1)

    Raises:
        InsufficientChain: a requested vector needs more of chain0
    """
    x = complex(x)
    u = chain0.vectors
    plus_avail = 2 if chain0.depth >= 3 else 1
    minus_avail = 2 if chain0.depth >= 4 else (1 if chain0.depth >= 2 else 0)
    plus_depth = plus_avail if plus_depth is None else plus_depth
    minus_depth = minus_avail if minus_depth is None else minus_depth
    if plus_depth > plus_avail or minus_depth > minus_avail:
        raise InsufficientChain(
            f"chain at 0 of length {chain0.depth} gives depth {plus_avail} at +x and {minus_avail} at -x"
        )

    plus = [u[0]]
    if plus_depth >= 2:
        plus.append(u[1] + 2 * x * u[2])
    plus_chain = JordanChain(x, np.array(plus[:max(plus_depth, 1)]))
    if minus_depth < 1:
        return plus_chain, None
    minus = [u[0] - 2 * x * u[1]]
    if minus_depth >= 2:
        minus.append(u[1] - 2 * x * u[2] + 4 * x * x * u[3])
    return plus_chain, JordanChain(-x, np.array(minus))


def zero_chain_depth(ps: PairedSpectrum) -> int:
    """Length of the J-chain at 0 needed for the ±x chains (0 for even order)."""
    if ps.n % 2 == 0:
        return 0
    return min(ps.zero_mult, _ZERO_CHAIN_DEPTH)


def alternating_chains(J: TridiagonalMatrix, ps: PairedSpectrum, x: complex,
                       tolerances: Tolerances = DEFAULT_TOLERANCES) -> list[JordanChain]:
    """Every chain (depth at most 2) of A_n = J_n + x E_n, normalized.

    Pairs with x = ±iλ use the zero-μ construction, other pairs the generic
    one, and the zero eigenvalue of odd-order J the ±x construction.
    """
    require_zero_diagonal(J)
    x = complex(x)
    chains = []
    for e in ps.pairs:
        lam = e.value
        depth = min(e.mult, 2)
        plus = jordan_chain_j(J, lam, depth, tolerances.residual)
        minus = reflect_chain(plus)
        if is_degenerate(lam, x, tolerances.degen):
            chains.append(eigenvector_a_zero_mu(plus[0], minus[0], lam, zero_mu_branch(lam, x)))
            continue
        for sign in (1, -1):
            mu, v0 = eigenvector_a_generic(plus[0], minus[0], lam, x, sign, tolerances.degen)
            vectors = [v0]
            if depth == 2:
                vectors.append(gen_eigenvector_a_generic(plus, minus, lam, x, sign, tolerances.degen))
            chains.append(JordanChain(mu, np.array(vectors)))
    depth0 = zero_chain_depth(ps)
    if depth0:
        chain0 = jordan_chain_j(J, 0.0, depth0, tolerances.residual)
        at_x, at_minus_x = eigenvector_a_pm_x(chain0, x)
        chains.append(at_x)
        if at_minus_x is not None:
            chains.append(at_minus_x)
    logger.debug("built %d chain(s) of A_%d at x=%s", len(chains), J.n, x)
    return [normalize_chain(c) for c in chains]


# =============================================================================
# CHAINS OF B_n AND LEFT CHAINS
# =============================================================================

def chains_b_from_a(chains: list[JordanChain], p: PerturbationParams) -> list[JordanChain]:
    """Chains of B_n from those of A_n at parameter (x-y)/2: same vectors, eigenvalue + (x+y)/2."""
    shift = p.half_sum
    return [JordanChain(c.eigenvalue + shift, c.vectors, left=c.left) for c in chains]


def two_periodic_chains(J: TridiagonalMatrix, ps: PairedSpectrum, p: PerturbationParams,
                        tolerances: Tolerances = DEFAULT_TOLERANCES) -> list[JordanChain]:
    return chains_b_from_a(alternating_chains(J, ps, p.half_difference, tolerances), p)


def left_scaling(T: TridiagonalMatrix) -> LeftScaling:
    """D with D^{-1} T D = T^T for irreducible T."""
    ratios = T.sub / T.sup
    return LeftScaling(np.concatenate([[1.0 + 0j], np.cumprod(ratios)]))


def left_chain(T: TridiagonalMatrix, chain: JordanChain) -> JordanChain:
    """Left chain ũ_j = D^{-1} u_j, a Jordan chain of T^T."""
    d = left_scaling(T).d
    return JordanChain(chain.eigenvalue, chain.vectors / d[None, :], left=True)
