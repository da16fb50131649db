"""JSON schemas shared by the command line and the tool server.

Complex numbers are [re, im] pairs of floats. Floats are written with
Python's shortest round-trip repr, and keys keep insertion order, so equal
inputs give byte-identical documents.
"""

import json
from numbers import Number

import numpy as np

from tridiag.charpoly import CharPoly
from tridiag.core import TridiagonalMatrix
from tridiag.eigvec import JordanChain
from tridiag.errors import LengthMismatch, MatrixParseError
from tridiag.roots import Spectrum, SpectrumEntry
from tridiag.spectra import PairedSpectrum


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def complex_from_json(value) -> complex:
    """Accept [re, im] or a bare real number."""
    if isinstance(value, bool):
        raise MatrixParseError(f"expected a number or [re, im], got {value!r}")
    if isinstance(value, Number):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
        isinstance(v, Number) and not isinstance(v, bool) for v in value
    ):
        return complex(value[0], value[1])
    raise MatrixParseError(f"expected a number or [re, im], got {value!r}")


def _vector_to_json(v) -> list[list[float]]:
    return [complex_to_json(z) for z in np.asarray(v).reshape(-1)]


def _vector_from_json(values, name: str) -> np.ndarray:
    if not isinstance(values, list):
        raise MatrixParseError(f"'{name}' must be a list")
    return np.array([complex_from_json(v) for v in values], dtype=np.complex128)


def matrix_to_json(T: TridiagonalMatrix) -> dict:
    return {
        "n": T.n,
        "sub": _vector_to_json(T.sub),
        "diag": _vector_to_json(T.diag),
        "sup": _vector_to_json(T.sup),
    }


def matrix_from_json(obj) -> TridiagonalMatrix:
    """Parse the matrix schema {"n", "sub", "diag", "sup"}.

    Raises:
        MatrixParseError: missing keys or malformed numbers
        LengthMismatch: lengths disagree with n
    """
    if not isinstance(obj, dict):
        raise MatrixParseError("matrix document must be a JSON object")
    missing = [k for k in ("n", "sub", "diag", "sup") if k not in obj]
    if missing:
        raise MatrixParseError(f"matrix document lacks {', '.join(missing)}")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixParseError(f"'n' must be a positive integer, got {n!r}")
    diag = _vector_from_json(obj["diag"], "diag")
    if diag.size != n:
        raise LengthMismatch(f"'diag' has {diag.size} entries, expected n={n}")
    return TridiagonalMatrix(
        sub=_vector_from_json(obj["sub"], "sub"),
        diag=diag,
        sup=_vector_from_json(obj["sup"], "sup"),
    )


def polynomial_to_json(p: CharPoly) -> dict:
    return {"coeffs": _vector_to_json(p.coeffs)}


def _entry_to_json(e: SpectrumEntry) -> dict:
    return {"value": complex_to_json(e.value), "mult": int(e.mult)}


def spectrum_to_json(s: Spectrum) -> dict:
    return {"entries": [_entry_to_json(e) for e in s.sorted().entries]}


def spectrum_from_json(obj) -> Spectrum:
    try:
        return Spectrum(tuple(
            SpectrumEntry(complex_from_json(e["value"]), int(e["mult"])) for e in obj["entries"]
        ))
    except (KeyError, TypeError) as e:
        raise MatrixParseError(f"malformed spectrum document: {e}") from e


def paired_to_json(ps: PairedSpectrum) -> dict:
    return {
        "n": ps.n,
        "zero_mult": ps.zero_mult,
        "pairs": [_entry_to_json(e) for e in sorted(ps.pairs, key=lambda e: (e.value.real, e.value.imag))],
    }


def chain_to_json(chain: JordanChain) -> dict:
    doc = {
        "eigenvalue": complex_to_json(chain.eigenvalue),
        "vectors": [_vector_to_json(v) for v in chain.vectors],
    }
    if chain.left:
        doc["left"] = True
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixParseError(f"invalid JSON: {e}") from e
