"""MCP server exposing the tridiagonal spectral operations as tools."""

import logging

from mcp.server.fastmcp import FastMCP

from tridiag import codec
from tridiag.config import default_seed, load_tolerances
from tridiag.core import PerturbationParams, nilpotent_example
from tridiag.corpus import run_verification
from tridiag.errors import TridiagError
from tridiag.oracle import dense_determinant, dense_eigen
from tridiag.pipeline import chains_for, determinants, generate, mapped_spectrum
from tridiag.spectra import map_to_alternating, map_to_two_periodic, solve_zero_diagonal

logger = logging.getLogger(__name__)

mcp = FastMCP("tridiag_mcp")

# Verification runs triggered from a client are capped to keep tool calls short
MAX_TOOL_COUNT = 500


def _error(e: Exception) -> dict:
    return {"error": f"{type(e).__name__}: {e}"}


@mcp.tool()
async def generate_matrix(kind: str, n: int | None = None, seed: int | None = None) -> dict:
    """Build a matrix in the JSON matrix schema.

    Args:
        kind: 'random-j', 'random-b', 'sylvester-kac', 'kac-principal' or 'paper-example'
        n: order for the random kinds, N for the Kac kinds
        seed: random seed (default from TRIDIAG_SEED)

    Returns:
        {"n", "sub", "diag", "sup"} with complex entries as [re, im]
    """
    seed = default_seed() if seed is None else seed
    try:
        doc = codec.matrix_to_json(generate(kind, n, seed))
    except TridiagError as e:
        return _error(e)
    if kind.startswith("random"):
        doc["seed"] = seed
    return doc


@mcp.tool()
async def compute_spectrum(matrix: dict, method: str = "mapped") -> dict:
    """Spectrum of a matrix, by the closed-form mapping or the dense oracle.

    Args:
        matrix: matrix JSON
        method: 'mapped' (zero, alternating or two-periodic diagonal) or 'oracle'

    Returns:
        {"method", "entries": [{"value", "mult"}]} ("shape" too for the mapped method)
    """
    try:
        T = codec.matrix_from_json(matrix)
        tolerances = load_tolerances()
        if method == "oracle":
            return {"method": "oracle", **codec.spectrum_to_json(dense_eigen(T, tolerances=tolerances))}
        if method != "mapped":
            return {"error": f"Invalid method: {method}. Use 'mapped' or 'oracle'"}
        shape, _, s = mapped_spectrum(T, tolerances=tolerances)
        return {"method": "mapped", "shape": shape.value, **codec.spectrum_to_json(s)}
    except TridiagError as e:
        return _error(e)


@mcp.tool()
async def map_spectrum(matrix: dict, x: list[float], y: list[float] | None = None) -> dict:
    """Map σ(J) of a zero-diagonal matrix to σ(A) (x only) or σ(B) (x and y).

    Args:
        matrix: zero-diagonal matrix JSON
        x: [re, im] of the diagonal parameter at odd positions
        y: [re, im] of the parameter at even positions; omit for the alternating diagonal
    """
    try:
        J = codec.matrix_from_json(matrix)
        tolerances = load_tolerances()
        ps = solve_zero_diagonal(J, tolerances)
        xv = codec.complex_from_json(x)
        if y is None:
            mapped = map_to_alternating(ps, xv, tolerances)
        else:
            mapped = map_to_two_periodic(ps, PerturbationParams(xv, codec.complex_from_json(y)), tolerances)
        return {"paired": codec.paired_to_json(ps), "spectrum": codec.spectrum_to_json(mapped)}
    except TridiagError as e:
        return _error(e)


@mcp.tool()
async def compute_determinant(matrix: dict) -> dict:
    """Determinant by recurrence, by closed form (mapped shapes only) and by LU."""
    try:
        T = codec.matrix_from_json(matrix)
        dets = determinants(T, load_tolerances())
        closed = dets["closed_form"]
        return {
            "recurrence": codec.complex_to_json(dets["recurrence"]),
            "closed_form": None if closed is None else codec.complex_to_json(closed),
            "dense": codec.complex_to_json(dense_determinant(T)),
        }
    except TridiagError as e:
        return _error(e)


@mcp.tool()
async def compute_chains(matrix: dict, left: bool = False) -> dict:
    """Eigenvectors and first generalized eigenvectors of a mapped-shape matrix.

    Args:
        matrix: matrix JSON with zero, alternating or two-periodic diagonal
        left: also return left chains (rows of the matrix)
    """
    try:
        T = codec.matrix_from_json(matrix)
        shape, chains = chains_for(T, left=left, tolerances=load_tolerances())
        return {"shape": shape.value, "chains": [codec.chain_to_json(c) for c in chains]}
    except TridiagError as e:
        return _error(e)


@mcp.tool()
async def verify_corpus(count: int = 20, nmax: int = 8, seed: int | None = None) -> dict:
    """Run the seeded verification corpus and return the aggregated report.

    Args:
        count: number of random instances (at most 500)
        nmax: largest order
        seed: seed of the corpus generator
    """
    if not 0 <= count <= MAX_TOOL_COUNT:
        return {"error": f"count must be between 0 and {MAX_TOOL_COUNT}"}
    if nmax < 2:
        return {"error": "nmax must be at least 2"}
    seed = default_seed() if seed is None else seed
    logger.info("verify_corpus count=%d nmax=%d seed=%d", count, nmax, seed)
    result = run_verification(count, nmax, seed, load_tolerances())
    return result.to_dict()


@mcp.resource("tridiag://example/nilpotent5")
async def read_nilpotent_example() -> str:
    """The 5 x 5 zero-diagonal matrix whose characteristic polynomial is z**5."""
    return codec.dumps(codec.matrix_to_json(nilpotent_example()))


if __name__ == "__main__":
    mcp.run(transport='stdio')
