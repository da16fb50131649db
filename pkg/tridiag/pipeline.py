"""Shape-dispatching operations shared by the command line and the tool server."""

import logging

import numpy as np

from tridiag.charpoly import determinant
from tridiag.config import DEFAULT_TOLERANCES, Tolerances
from tridiag.core import (
    DiagonalShape,
    PerturbationParams,
    TridiagonalMatrix,
    diagonal_shape,
    kac_principal,
    make_two_periodic,
    nilpotent_example,
    strip_diagonal,
    sylvester_kac,
)
from tridiag.corpus import random_params, random_zero_diag
from tridiag.eigvec import (
    JordanChain,
    alternating_chains,
    jordan_chain_j,
    left_chain,
    normalize_chain,
    reflect_chain,
    two_periodic_chains,
)
from tridiag.errors import InputError, UnsupportedShape
from tridiag.roots import Spectrum
from tridiag.spectra import (
    PairedSpectrum,
    det_alternating,
    det_j_even,
    det_two_periodic,
    expand_paired,
    map_to_alternating,
    map_to_two_periodic,
    solve_zero_diagonal,
)

logger = logging.getLogger(__name__)

# shapes each requested interpretation accepts
_ACCEPTS = {
    DiagonalShape.ZERO: {DiagonalShape.ZERO},
    DiagonalShape.ALTERNATING: {DiagonalShape.ZERO, DiagonalShape.ALTERNATING},
    DiagonalShape.TWO_PERIODIC: {DiagonalShape.ZERO, DiagonalShape.ALTERNATING, DiagonalShape.TWO_PERIODIC},
}


def resolve_shape(T: TridiagonalMatrix, requested: str | DiagonalShape | None = None
                  ) -> tuple[DiagonalShape, PerturbationParams]:
    """Detect T's diagonal shape, or check it against an explicit override.

    Raises:
        UnsupportedShape: the diagonal is not two-periodic, or does not fit the override
    """
    detected, params = diagonal_shape(T)
    if detected is DiagonalShape.OTHER:
        raise UnsupportedShape("mapped methods need a zero, alternating or two-periodic main diagonal")
    if requested in (None, "auto"):
        return detected, params
    shape = DiagonalShape(requested)
    if detected not in _ACCEPTS.get(shape, set()):
        raise UnsupportedShape(f"diagonal is {detected.value}, cannot be treated as {shape.value}")
    return shape, params


def mapped_spectrum(T: TridiagonalMatrix, shape: str | DiagonalShape | None = None,
                    tolerances: Tolerances = DEFAULT_TOLERANCES,
                    radius: float | None = None) -> tuple[DiagonalShape, PairedSpectrum, Spectrum]:
    """σ(T) by solving only the zero-diagonal problem and mapping.

    Returns:
        (shape used, paired spectrum of the underlying J, spectrum of T)
    """
    shape, params = resolve_shape(T, shape)
    ps = solve_zero_diagonal(strip_diagonal(T), tolerances)
    if shape is DiagonalShape.ZERO:
        return shape, ps, expand_paired(ps)
    if shape is DiagonalShape.ALTERNATING:
        return shape, ps, map_to_alternating(ps, params.x, tolerances, radius)
    return shape, ps, map_to_two_periodic(ps, params, tolerances, radius)


def closed_form_determinant(T: TridiagonalMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> complex | None:
    """det T from σ(J) for the mapped shapes, None for any other diagonal."""
    try:
        shape, params = resolve_shape(T)
    except UnsupportedShape:
        return None
    J = strip_diagonal(T)
    if shape is DiagonalShape.ZERO:
        return det_j_even(J) if J.n % 2 == 0 else 0j
    ps = solve_zero_diagonal(J, tolerances)
    if shape is DiagonalShape.ALTERNATING:
        return det_alternating(ps, params.x)
    return det_two_periodic(ps, params)


def determinants(T: TridiagonalMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> dict:
    return {
        "recurrence": determinant(T),
        "closed_form": closed_form_determinant(T, tolerances),
    }


def zero_diagonal_chains(J: TridiagonalMatrix, ps: PairedSpectrum,
                         tolerances: Tolerances = DEFAULT_TOLERANCES) -> list[JordanChain]:
    """Full Jordan chains of J at every eigenvalue; -λ chains by reflection."""
    chains = []
    for e in ps.pairs:
        chain = jordan_chain_j(J, e.value, e.mult, tolerances.residual)
        chains += [chain, reflect_chain(chain)]
    if ps.zero_mult:
        chains.append(jordan_chain_j(J, 0.0, ps.zero_mult, tolerances.residual))
    return [normalize_chain(c) for c in chains]


def chains_for(T: TridiagonalMatrix, shape: str | DiagonalShape | None = None, left: bool = False,
               tolerances: Tolerances = DEFAULT_TOLERANCES) -> tuple[DiagonalShape, list[JordanChain]]:
    """Right chains of T (then left chains when requested) for the mapped shapes."""
    shape, params = resolve_shape(T, shape)
    J = strip_diagonal(T)
    ps = solve_zero_diagonal(J, tolerances)
    if shape is DiagonalShape.ZERO:
        chains = zero_diagonal_chains(J, ps, tolerances)
    elif shape is DiagonalShape.ALTERNATING:
        chains = alternating_chains(J, ps, params.x, tolerances)
    else:
        chains = two_periodic_chains(J, ps, params, tolerances)
    if left:
        chains += [left_chain(T, c) for c in chains]
    logger.info("%d chain(s) for a %s diagonal of order %d", len(chains), shape.value, T.n)
    return shape, chains


# "nilpotent-example" is an alias of "paper-example"
GEN_KINDS = ("random-j", "random-b", "sylvester-kac", "kac-principal", "paper-example", "nilpotent-example")


def generate(kind: str, n: int | None = None, seed: int = 7,
             x: complex | None = None, y: complex | None = None) -> TridiagonalMatrix:
    """Build a named matrix; random kinds draw from ``default_rng(seed)``.

    Raises:
        InputError: unknown kind, missing or too small n
    """
    if kind in ("paper-example", "nilpotent-example"):
        return nilpotent_example()
    if kind not in GEN_KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(GEN_KINDS)}")
    if n is None:
        raise InputError(f"kind {kind!r} needs n")
    if kind == "sylvester-kac":
        return sylvester_kac(n)
    if kind == "kac-principal":
        return kac_principal(n)
    if n < 2:
        raise InputError(f"random matrices need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    J = random_zero_diag(rng, n)
    if kind == "random-j":
        return J
    drawn = random_params(rng)
    return make_two_periodic(J, PerturbationParams(drawn.x if x is None else x, drawn.y if y is None else y))
