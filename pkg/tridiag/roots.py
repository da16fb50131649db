"""Polynomial roots and their clustering into eigenvalues with multiplicities.

Roots are found by simultaneous Aberth–Ehrlich iteration from a jittered
circle of radius 1 + max|coeff|, with a Durand–Kerner pass as fallback and a
short Newton polish at the end.
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from tridiag.charpoly import CharPoly
from tridiag.config import DEFAULT_TOLERANCES
from tridiag.errors import NoConvergence, PairingFailure

logger = logging.getLogger(__name__)

# Fixed seed for the angular jitter of the starting circle; results are reproducible.
_JITTER_SEED = 20190503
_NEWTON_STEPS = 5


@dataclass(frozen=True)
class SpectrumEntry:
    value: complex
    mult: int


@dataclass(frozen=True)
class Spectrum:
    """Multiset of eigenvalues as (value, multiplicity) entries."""

    entries: tuple[SpectrumEntry, ...]

    @property
    def total(self) -> int:
        return sum(e.mult for e in self.entries)

    def values(self) -> np.ndarray:
        """All eigenvalues repeated by multiplicity."""
        if not self.entries:
            return np.zeros(0, dtype=np.complex128)
        return np.concatenate(
            [np.full(e.mult, e.value, dtype=np.complex128) for e in self.entries]
        )

    def sorted(self) -> "Spectrum":
        """Entries ordered by (real, imaginary) part."""
        return Spectrum(tuple(sorted(self.entries, key=lambda e: (e.value.real, e.value.imag))))

    @classmethod
    def from_pairs(cls, pairs) -> "Spectrum":
        return cls(tuple(SpectrumEntry(complex(v), int(m)) for v, m in pairs))


# =============================================================================
# ROOT FINDING
# =============================================================================

def _residual_scale(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """max|c| Σ |z|**k: normwise bound, so exact zero coefficients still admit a tolerance."""
    return np.max(np.abs(coeffs)) * P.polyval(np.abs(z), np.ones(coeffs.size))


def _starting_points(coeffs: np.ndarray) -> np.ndarray:
    d = coeffs.size - 1
    radius = 1.0 + np.max(np.abs(coeffs[:-1]))
    jitter = np.random.default_rng(_JITTER_SEED).uniform(-0.1, 0.1, d)
    angles = 2 * np.pi * (np.arange(d) + 0.25 + jitter) / d
    return radius * np.exp(1j * angles)


def _aberth(coeffs, z, max_iter):
    deriv = P.polyder(coeffs)
    for it in range(max_iter):
        pv = P.polyval(z, coeffs)
        dpv = P.polyval(z, deriv)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pv / dpv
            step = ratio / (1.0 - ratio * inv.sum(axis=1))
            # Durand–Kerner correction where the Aberth denominator vanishes
            weierstrass = pv / np.prod(diff, axis=1)
        step = np.where(np.isfinite(step), step, weierstrass)
        if not np.all(np.isfinite(step)):
            return z, it, False
        z = z - step
        if _settled(coeffs, z, step):
            return z, it + 1, True
    return z, max_iter, False


def _settled(coeffs, z, step) -> bool:
    """Steps at rounding level, or residuals at the rounding floor of evaluation."""
    eps = np.finfo(float).eps
    if np.all(np.abs(step) <= 4 * eps * (1.0 + np.abs(z))):
        return True
    return _residuals_ok(coeffs, z, 2 * coeffs.size * eps)


def _durand_kerner(coeffs, z, max_iter):
    for it in range(max_iter):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = P.polyval(z, coeffs) / np.prod(diff, axis=1)
        if not np.all(np.isfinite(step)):
            return z, it, False
        z = z - step
        if _settled(coeffs, z, step):
            return z, it + 1, True
    return z, max_iter, False


def _newton_polish(coeffs, z):
    deriv = P.polyder(coeffs)
    for _ in range(_NEWTON_STEPS):
        pv = P.polyval(z, coeffs)
        dpv = P.polyval(z, deriv)
        with np.errstate(divide="ignore", invalid="ignore"):
            trial = z - pv / dpv
        better = np.isfinite(trial) & (np.abs(P.polyval(trial, coeffs)) < np.abs(pv))
        z = np.where(better, trial, z)
    return z


def _residuals_ok(coeffs, z, tol) -> bool:
    return bool(np.all(np.abs(P.polyval(z, coeffs)) <= tol * _residual_scale(coeffs, z)))


def find_roots(p: CharPoly | np.ndarray, tol: float = DEFAULT_TOLERANCES.root,
               max_iter: int = DEFAULT_TOLERANCES.max_iter) -> np.ndarray:
    """All complex roots of a monic polynomial, repeated by multiplicity.

    Args:
        p: CharPoly or ascending coefficient array with leading coefficient 1
        tol: accepted |p(root)| relative to max|c| Σ|root|**k
        max_iter: iteration cap for each simultaneous method

    Returns:
        Array of degree-many root approximations

    Raises:
        NoConvergence: neither method met the residual bound within the cap
    """
    coeffs = np.asarray(p.coeffs if isinstance(p, CharPoly) else p, dtype=np.complex128)
    d = coeffs.size - 1
    if d < 1:
        return np.zeros(0, dtype=np.complex128)
    if d == 1:
        return np.array([-coeffs[0] / coeffs[1]])

    start = _starting_points(coeffs)
    z, iterations, converged = _aberth(coeffs, start, max_iter)
    if not converged and not _residuals_ok(coeffs, z, tol):
        logger.info("Aberth iteration stalled after %d steps, trying Durand–Kerner", iterations)
        z, iterations, converged = _durand_kerner(coeffs, start, max_iter)
    z = _newton_polish(coeffs, z)
    if not _residuals_ok(coeffs, z, tol):
        raise NoConvergence(f"root finder did not reach residual {tol:.1e} in {max_iter} iterations")
    if not converged:
        # typical for multiple roots: linear convergence, accepted on residual
        logger.debug("accepted roots of degree-%d polynomial by residual", d)
    return z


def deflate_zero_roots(coeffs, tol: float = DEFAULT_TOLERANCES.zero_coeff) -> tuple[np.ndarray, int]:
    """Strip trailing coefficients that vanish relative to the largest one.

    Returns:
        (deflated ascending coefficients, number of zero roots removed)
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    scale = np.max(np.abs(c))
    k = 0
    while k < c.size - 1 and abs(c[k]) <= tol * scale:
        k += 1
    if k:
        logger.debug("deflated %d zero root(s)", k)
    return c[k:], k


# =============================================================================
# CLUSTERING
# =============================================================================

def default_radius(roots, tolerances=DEFAULT_TOLERANCES) -> float:
    """max(cluster_abs, cluster_rel * max|root|)."""
    roots = np.asarray(roots)
    peak = float(np.max(np.abs(roots))) if roots.size else 0.0
    return max(tolerances.cluster_abs, tolerances.cluster_rel * peak)


def cluster(roots, radius: float | None = None) -> Spectrum:
    """Single-linkage clustering of roots into (mean, count) entries.

    Args:
        roots: root approximations with repetition
        radius: linkage distance; default_radius(roots) when None
    """
    z = np.asarray(roots, dtype=np.complex128).reshape(-1)
    if z.size == 0:
        return Spectrum(())
    if radius is None:
        radius = default_radius(z)
    entries = [
        SpectrumEntry(complex(z[idx].mean()), len(idx))
        for idx in cluster_indices(z, radius)
    ]
    return Spectrum(tuple(entries))


def cluster_indices(values, radius: float) -> list[list[int]]:
    """Single-linkage groups of indices, in order of first appearance."""
    values = np.asarray(values, dtype=np.complex128).reshape(-1)
    linked = np.abs(values[:, None] - values[None, :]) <= radius
    label = -np.ones(values.size, dtype=int)
    groups = []
    for seed in range(values.size):
        if label[seed] >= 0:
            continue
        label[seed] = len(groups)
        group, stack = [seed], [seed]
        while stack:
            i = stack.pop()
            for j in np.flatnonzero(linked[i] & (label < 0)):
                label[j] = len(groups)
                group.append(int(j))
                stack.append(j)
        groups.append(sorted(group))
    return groups


def refine_cluster(coeffs, s: Spectrum, radius: float) -> Spectrum:
    """Polish each m-fold centroid as the simple root of the (m-1)-th derivative.

    A centroid that Newton moves farther than radius is kept as it was.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    entries = []
    for e in s.entries:
        d = P.polyder(coeffs, e.mult - 1)
        dd = P.polyder(d)
        z = complex(e.value)
        fz = complex(P.polyval(z, d))
        for _ in range(_NEWTON_STEPS):
            dfz = complex(P.polyval(z, dd))
            if fz == 0 or dfz == 0:
                break
            trial = z - fz / dfz
            ft = complex(P.polyval(trial, d))
            if not np.isfinite(trial) or abs(ft) >= abs(fz):
                break
            z, fz = trial, ft
        if abs(z - e.value) > radius:
            z = complex(e.value)
        entries.append(SpectrumEntry(z, e.mult))
    return Spectrum(tuple(entries))


def symmetrize_pm(s: Spectrum, tol: float) -> Spectrum:
    """Enforce exact ± pairing on the spectrum of a zero-diagonal matrix.

    Entries within tol of zero become exactly 0. Every other entry (λ, m) is
    matched with an entry near -λ of the same multiplicity; both are replaced
    by ±(λ - μ)/2 where μ is the partner.

    Raises:
        PairingFailure: a nonzero entry has no partner within tol
    """
    zero_mult = 0
    pending = []
    for e in s.entries:
        if abs(e.value) <= tol:
            zero_mult += e.mult
        else:
            pending.append(e)

    out = []
    used = [False] * len(pending)
    for i, e in enumerate(pending):
        if used[i]:
            continue
        used[i] = True
        best, best_dist = None, np.inf
        for j in range(len(pending)):
            if used[j] or pending[j].mult != e.mult:
                continue
            dist = abs(pending[j].value + e.value)
            if dist < best_dist:
                best, best_dist = j, dist
        if best is None or best_dist > tol:
            raise PairingFailure(f"eigenvalue {e.value:.6g} (mult {e.mult}) has no partner near its negation")
        used[best] = True
        lam = (e.value - pending[best].value) / 2
        out.append(SpectrumEntry(lam, e.mult))
        out.append(SpectrumEntry(-lam, e.mult))
    if zero_mult:
        out.append(SpectrumEntry(0j, zero_mult))
    return Spectrum(tuple(out))
