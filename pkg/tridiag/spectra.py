"""Closed-form spectral and determinant mappings σ(J) -> σ(A), σ(B).

Only the zero-diagonal problem is ever solved. With μ_k = sqrt(λ_k**2 + x**2):

    σ(A_2l)   = {±μ_k}
    σ(A_2l+1) = {±μ_k} ∪ {x (mult r+1), -x (mult r)}   where 0 has mult 2r+1 in σ(J)
    σ(B_n)    = (x+y)/2 + σ(A_n) evaluated at parameter (x-y)/2

A pair with x**2 == -λ_k**2 collapses to the eigenvalue 0 of multiplicity 2r.
"""

import logging
from dataclasses import dataclass

import numpy as np

from tridiag.charpoly import char_poly, parity_split
from tridiag.config import DEFAULT_TOLERANCES, Tolerances
from tridiag.core import PerturbationParams, TridiagonalMatrix, require_zero_diagonal
from tridiag.errors import OddOrder, ParityError
from tridiag.roots import (
    Spectrum,
    SpectrumEntry,
    cluster,
    cluster_indices,
    default_radius,
    deflate_zero_roots,
    find_roots,
    refine_cluster,
    symmetrize_pm,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairedSpectrum:
    """σ(J_n) as one representative per ± pair plus the multiplicity of 0.

    Representatives have positive real part, or zero real part and positive
    imaginary part.
    """

    pairs: tuple[SpectrumEntry, ...]
    zero_mult: int
    n: int

    def __post_init__(self):
        paired = 2 * sum(e.mult for e in self.pairs)
        if paired + self.zero_mult != self.n:
            raise ParityError(f"2 x {paired // 2} paired + {self.zero_mult} zero != order {self.n}")
        if self.n % 2 == 0 and self.zero_mult:
            raise ParityError(f"even order {self.n} cannot have the eigenvalue 0")
        if self.n % 2 == 1 and self.zero_mult % 2 == 0:
            raise ParityError(f"odd order {self.n} needs odd zero multiplicity, got {self.zero_mult}")

    @property
    def half_order(self) -> int:
        return self.n // 2

    @property
    def zero_chain_rank(self) -> int:
        """r with zero_mult = 2r + 1 (0 for even order)."""
        return max(self.zero_mult - 1, 0) // 2


def _is_representative(value: complex) -> bool:
    return value.real > 0 or (value.real == 0 and value.imag > 0)


def pair_spectrum(s: Spectrum, n: int) -> PairedSpectrum:
    """Group a negation-closed spectrum into ± pairs.

    Raises:
        ParityError: zero multiplicity incompatible with n, or totals disagree
    """
    zero_mult = 0
    pairs = []
    for e in s.entries:
        if e.value == 0:
            zero_mult += e.mult
        elif _is_representative(e.value):
            pairs.append(SpectrumEntry(e.value, e.mult))
    return PairedSpectrum(pairs=tuple(pairs), zero_mult=zero_mult, n=n)


def solve_zero_diagonal(J: TridiagonalMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> PairedSpectrum:
    """σ(J_n) through the characteristic polynomial in w = z**2.

    Args:
        J: irreducible zero-diagonal matrix
        tolerances: numeric gates

    Returns:
        PairedSpectrum of J
    """
    require_zero_diagonal(J)
    pf = parity_split(char_poly(J), tolerances.parity)
    reduced, zero_w = deflate_zero_roots(pf.reduced, tolerances.zero_coeff)
    w = find_roots(reduced, tolerances.root, tolerances.max_iter)
    w_radius = default_radius(w, tolerances)
    clusters = refine_cluster(reduced, cluster(w, w_radius), w_radius)
    entries = []
    for e in clusters.entries:
        lam = complex(np.sqrt(e.value))
        entries.append(SpectrumEntry(lam, e.mult))
        entries.append(SpectrumEntry(-lam, e.mult))
    zero_mult = 2 * zero_w + int(pf.odd)
    if zero_mult:
        entries.append(SpectrumEntry(0j, zero_mult))
    radius = default_radius([e.value for e in entries], tolerances)
    s = symmetrize_pm(merge_spectrum(entries, radius), radius)
    ps = pair_spectrum(s, J.n)
    logger.debug("σ(J_%d): %d pair(s), zero multiplicity %d", J.n, len(ps.pairs), ps.zero_mult)
    return ps


def expand_paired(ps: PairedSpectrum) -> Spectrum:
    """The plain spectrum {±λ_k} ∪ {0}."""
    entries = []
    for e in ps.pairs:
        entries.append(SpectrumEntry(e.value, e.mult))
        entries.append(SpectrumEntry(-e.value, e.mult))
    if ps.zero_mult:
        entries.append(SpectrumEntry(0j, ps.zero_mult))
    return Spectrum(tuple(entries))


def lambdas(ps: PairedSpectrum) -> np.ndarray:
    """λ_1..λ_l (l = floor(n/2)) with multiplicity, zeros included for odd n."""
    vals = [e.value for e in ps.pairs for _ in range(e.mult)]
    vals += [0j] * ps.zero_chain_rank
    return np.array(vals, dtype=np.complex128)


def merge_spectrum(entries, radius: float | None = None) -> Spectrum:
    """Merge entries closer than radius, summing multiplicities.

    Singletons keep their value bit-for-bit; merged groups take the
    multiplicity-weighted mean.
    """
    entries = [e for e in entries if e.mult > 0]
    if not entries:
        return Spectrum(())
    values = np.array([e.value for e in entries], dtype=np.complex128)
    mults = np.array([e.mult for e in entries])
    if radius is None:
        radius = default_radius(values)
    groups = cluster_indices(values, radius)
    merged = []
    for idx in groups:
        if len(idx) == 1:
            merged.append(entries[idx[0]])
            continue
        m = int(mults[idx].sum())
        merged.append(SpectrumEntry(complex(np.sum(values[idx] * mults[idx]) / m), m))
    return Spectrum(tuple(merged))


def is_degenerate(lam: complex, x: complex, tol: float = DEFAULT_TOLERANCES.degen) -> bool:
    """x**2 == -λ**2 within tol * (|x|**2 + |λ|**2 + 1)."""
    return abs(x * x + lam * lam) <= tol * (abs(x) ** 2 + abs(lam) ** 2 + 1)


def _alternating_entries(ps: PairedSpectrum, x: complex, degen: float) -> list[SpectrumEntry]:
    entries = []
    for e in ps.pairs:
        lam = e.value
        if is_degenerate(lam, x, degen):
            logger.info("x**2 = -λ**2 at λ=%s: 0 is an eigenvalue of multiplicity %d", lam, 2 * e.mult)
            entries.append(SpectrumEntry(0j, 2 * e.mult))
            continue
        mu = lam if x == 0 else complex(np.sqrt(lam * lam + x * x))
        entries.append(SpectrumEntry(mu, e.mult))
        entries.append(SpectrumEntry(-mu, e.mult))
    if ps.n % 2 == 1:
        r = ps.zero_chain_rank
        entries.append(SpectrumEntry(x, r + 1))
        if r >= 1:
            entries.append(SpectrumEntry(-x, r))
    return entries


def map_to_alternating(ps: PairedSpectrum, x: complex, tolerances: Tolerances = DEFAULT_TOLERANCES,
                       radius: float | None = None) -> Spectrum:
    """σ(A_n) for A_n = J_n + x E_n from σ(J_n).

    Args:
        ps: paired spectrum of J_n
        x: alternating diagonal parameter
        tolerances: degeneracy and clustering gates
        radius: merge radius; the roots-module default when None

    Returns:
        Spectrum with total multiplicity n
    """
    x = complex(x)
    entries = _alternating_entries(ps, x, tolerances.degen)
    if radius is None:
        radius = default_radius([e.value for e in entries], tolerances)
    return merge_spectrum(entries, radius)


def map_to_two_periodic(ps: PairedSpectrum, p: PerturbationParams,
                        tolerances: Tolerances = DEFAULT_TOLERANCES,
                        radius: float | None = None) -> Spectrum:
    """σ(B_n): σ(A_n) at parameter (x-y)/2, shifted by (x+y)/2.

    Coincident values are merged after the shift, with the default radius
    taken from the shifted values.
    """
    shift = p.half_sum
    entries = [
        SpectrumEntry(e.value + shift, e.mult)
        for e in _alternating_entries(ps, p.half_difference, tolerances.degen)
    ]
    if radius is None:
        radius = default_radius([e.value for e in entries], tolerances)
    return merge_spectrum(entries, radius)


# =============================================================================
# DETERMINANTS
# =============================================================================

def det_j_even(J: TridiagonalMatrix) -> complex:
    """det J_2l = (-1)**l Π a_{2k-1} c_{2k-1}.

    Raises:
        OddOrder: J has odd order (its determinant is 0)
    """
    require_zero_diagonal(J)
    if J.n % 2:
        raise OddOrder(f"closed-form determinant needs even order, got {J.n}")
    l = J.n // 2
    return complex((-1) ** l * np.prod(J.products[0::2]))


def det_alternating(ps: PairedSpectrum, x: complex) -> complex:
    """det A_2l = (-1)**l Π(x**2 + λ_k**2); odd order gains a factor x."""
    x = complex(x)
    lam = lambdas(ps)
    det = (-1) ** ps.half_order * np.prod(x * x + lam * lam)
    if ps.n % 2:
        det *= x
    return complex(det)


def det_two_periodic(ps: PairedSpectrum, p: PerturbationParams) -> complex:
    """det B_2l = Π(xy - λ_k**2); odd order gains a factor x."""
    lam = lambdas(ps)
    det = np.prod(p.x * p.y - lam * lam)
    if ps.n % 2:
        det *= p.x
    return complex(det)
