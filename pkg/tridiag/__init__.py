"""Spectra, determinants and Jordan chains of tridiagonal matrices with two-periodic diagonal."""

from tridiag.charpoly import CharPoly, ParityFactorization, char_poly, determinant, parity_split
from tridiag.config import DEFAULT_TOLERANCES, Tolerances, load_tolerances
from tridiag.core import (
    DiagonalShape,
    PerturbationParams,
    TridiagonalMatrix,
    apply_sign_involution,
    make_alternating,
    make_two_periodic,
    make_zero_diag,
    materialize_dense,
    nilpotent_example,
    sylvester_kac,
)
from tridiag.eigvec import (
    JordanChain,
    eigenvector_j,
    jordan_chain_j,
    left_chain,
    reflect_chain,
)
from tridiag.errors import InputError, NumericalError, TridiagError
from tridiag.oracle import ResidualReport, dense_determinant, dense_eigen, match_spectra
from tridiag.roots import Spectrum, SpectrumEntry, cluster, find_roots, symmetrize_pm
from tridiag.spectra import (
    PairedSpectrum,
    det_alternating,
    det_j_even,
    det_two_periodic,
    map_to_alternating,
    map_to_two_periodic,
    pair_spectrum,
    solve_zero_diagonal,
)

__all__ = [
    "CharPoly",
    "DEFAULT_TOLERANCES",
    "DiagonalShape",
    "InputError",
    "JordanChain",
    "NumericalError",
    "PairedSpectrum",
    "ParityFactorization",
    "PerturbationParams",
    "ResidualReport",
    "Spectrum",
    "SpectrumEntry",
    "Tolerances",
    "TridiagError",
    "TridiagonalMatrix",
    "apply_sign_involution",
    "char_poly",
    "cluster",
    "dense_determinant",
    "dense_eigen",
    "det_alternating",
    "det_j_even",
    "det_two_periodic",
    "determinant",
    "eigenvector_j",
    "find_roots",
    "jordan_chain_j",
    "left_chain",
    "load_tolerances",
    "make_alternating",
    "make_two_periodic",
    "make_zero_diag",
    "map_to_alternating",
    "map_to_two_periodic",
    "match_spectra",
    "materialize_dense",
    "nilpotent_example",
    "pair_spectrum",
    "parity_split",
    "reflect_chain",
    "solve_zero_diagonal",
    "sylvester_kac",
    "symmetrize_pm",
]
