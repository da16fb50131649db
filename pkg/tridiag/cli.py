"""Command-line front end.

    python app.py gen sylvester-kac --n 3 > k3.json
    python app.py spectrum --in k3.json --method mapped
    python app.py verify --count 200 --nmax 12 --seed 7

Documents go to standard output as JSON; diagnostics and logs go to standard
error. Exit codes: 0 success, 1 failed verification or numerical failure,
2 usage or input error.
"""

import argparse
import logging
import sys
from pathlib import Path

from tridiag import codec
from tridiag.config import default_seed, load_tolerances, log_level
from tridiag.core import PerturbationParams, require_zero_diagonal
from tridiag.corpus import SYLVESTER_KAC_MAX, run_benchmark, run_verification
from tridiag.errors import InputError, NumericalError
from tridiag.oracle import dense_determinant, dense_eigen
from tridiag.pipeline import GEN_KINDS, chains_for, determinants, generate, mapped_spectrum
from tridiag.spectra import map_to_alternating, map_to_two_periodic, solve_zero_diagonal

logger = logging.getLogger("tridiag")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
SHAPES = ("auto", "zero", "alternating", "two_periodic")


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _orders_arg(text: str) -> list[int]:
    try:
        orders = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated orders, got {text!r}") from None
    if not orders or min(orders) < 2:
        raise argparse.ArgumentTypeError("orders must be integers >= 2")
    return orders


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", type=Path, help="matrix JSON file (default: standard input)")
    common.add_argument("--seed", type=int, default=None, help="seed of the random generator (default: TRIDIAG_SEED or 7)")
    common.add_argument("--tol", type=float, default=None, help="spectrum matching tolerance")
    common.add_argument("--residual-tol", type=float, default=None, help="relative residual gate for chains")
    common.add_argument("--cluster-radius", type=float, default=None, help="fixed clustering radius")
    common.add_argument("--shape", choices=SHAPES, default="auto", help="override diagonal-shape detection")
    common.add_argument("--json", action="store_true", default=True, help="JSON output (the only format)")
    common.add_argument("--log-level", default=None, help="logging level for standard error")

    parser = argparse.ArgumentParser(
        prog="tridiag",
        description="Spectra, determinants and Jordan chains of tridiagonal matrices with two-periodic diagonal.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="emit a matrix")
    gen.add_argument("kind", choices=GEN_KINDS)
    gen.add_argument("--n", type=int, default=None, help="order (random kinds) or N (Kac kinds)")
    gen.add_argument("--x", type=_complex_arg, default=None)
    gen.add_argument("--y", type=_complex_arg, default=None)

    spectrum = sub.add_parser("spectrum", parents=[common], help="spectrum of a matrix")
    spectrum.add_argument("--method", choices=("mapped", "oracle"), default="mapped")

    mapping = sub.add_parser("map", parents=[common], help="map σ(J) to σ(A) or σ(B)")
    mapping.add_argument("--x", type=_complex_arg, required=True)
    mapping.add_argument("--y", type=_complex_arg, default=None, help="omit for the alternating diagonal")

    eigvec = sub.add_parser("eigvec", parents=[common], help="Jordan chains of a matrix")
    eigvec.add_argument("--left", action="store_true", help="also emit left chains")

    sub.add_parser("det", parents=[common], help="determinant by recurrence, closed form and LU")

    verify = sub.add_parser("verify", parents=[common], help="run the seeded verification corpus")
    verify.add_argument("--count", type=int, default=200)
    verify.add_argument("--nmax", type=int, default=12)
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--kac-max", type=int, default=SYLVESTER_KAC_MAX, help="largest N of the K_N checks")

    bench = sub.add_parser("bench", parents=[common], help="time the mapped path against the oracle")
    bench.add_argument("--orders", type=_orders_arg, default=[4, 8, 12, 16])
    bench.add_argument("--repeats", type=int, default=5)
    return parser


def _configure_logging(level: str | None) -> bool:
    name = (level or log_level()).upper()
    if not isinstance(logging.getLevelName(name), int):
        return False
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.handlers[:] = [handler]
    logger.setLevel(name)
    logger.propagate = False
    return True


def _read_matrix(args):
    text = args.input.read_text(encoding="utf-8") if args.input else sys.stdin.read()
    return codec.matrix_from_json(codec.loads(text))


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_gen(args, tolerances) -> tuple[dict, int]:
    seed = default_seed() if args.seed is None else args.seed
    T = generate(args.kind, args.n, seed, args.x, args.y)
    doc = codec.matrix_to_json(T)
    if args.kind.startswith("random"):
        doc["seed"] = seed
    return doc, EXIT_OK


def cmd_spectrum(args, tolerances) -> tuple[dict, int]:
    T = _read_matrix(args)
    if args.method == "oracle":
        s = dense_eigen(T, args.cluster_radius, tolerances)
        return {"method": "oracle", **codec.spectrum_to_json(s)}, EXIT_OK
    shape, _, s = mapped_spectrum(T, args.shape, tolerances, args.cluster_radius)
    return {"method": "mapped", "shape": shape.value, **codec.spectrum_to_json(s)}, EXIT_OK


def cmd_map(args, tolerances) -> tuple[dict, int]:
    J = _read_matrix(args)
    require_zero_diagonal(J)
    ps = solve_zero_diagonal(J, tolerances)
    if args.y is None:
        mapped = map_to_alternating(ps, args.x, tolerances, args.cluster_radius)
    else:
        mapped = map_to_two_periodic(ps, PerturbationParams(args.x, args.y), tolerances, args.cluster_radius)
    return {"paired": codec.paired_to_json(ps), "spectrum": codec.spectrum_to_json(mapped)}, EXIT_OK


def cmd_eigvec(args, tolerances) -> tuple[dict, int]:
    T = _read_matrix(args)
    shape, chains = chains_for(T, args.shape, args.left, tolerances)
    return {"shape": shape.value, "chains": [codec.chain_to_json(c) for c in chains]}, EXIT_OK


def cmd_det(args, tolerances) -> tuple[dict, int]:
    T = _read_matrix(args)
    dets = determinants(T, tolerances)
    closed = dets["closed_form"]
    return {
        "recurrence": codec.complex_to_json(dets["recurrence"]),
        "closed_form": None if closed is None else codec.complex_to_json(closed),
        "dense": codec.complex_to_json(dense_determinant(T)),
    }, EXIT_OK


def cmd_verify(args, tolerances) -> tuple[dict, int]:
    seed = default_seed() if args.seed is None else args.seed
    if args.count < 0 or args.nmax < 2:
        raise InputError("verify needs --count >= 0 and --nmax >= 2")
    result = run_verification(args.count, args.nmax, seed, tolerances, args.workers, args.kac_max)
    return result.to_dict(), EXIT_OK if result.report.passed else EXIT_FAILED


def cmd_bench(args, tolerances) -> tuple[dict, int]:
    seed = default_seed() if args.seed is None else args.seed
    table = run_benchmark(args.orders, args.repeats, seed, tolerances)
    rows = [
        {"n": int(r["n"]), "mapped_s": float(r["mapped_s"]), "oracle_s": float(r["oracle_s"]),
         "speedup": float(r["speedup"])}
        for r in table.to_dict("records")
    ]
    return {"seed": seed, "repeats": args.repeats, "rows": rows}, EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "spectrum": cmd_spectrum,
    "map": cmd_map,
    "eigvec": cmd_eigvec,
    "det": cmd_det,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    if not _configure_logging(args.log_level):
        print(f"error: unknown log level {args.log_level!r}", file=sys.stderr)
        return EXIT_USAGE
    tolerances = load_tolerances().with_overrides(match=args.tol, residual=args.residual_tol)

    try:
        doc, code = COMMANDS[args.command](args, tolerances)
    except (InputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as e:
        print(f"numerical failure: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED
    sys.stdout.write(codec.dumps(doc) + "\n")
    return code
