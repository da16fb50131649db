"""Seeded random corpus, the verification run and the timing benchmark.

Every random draw comes from one ``numpy.random.default_rng(seed)`` generator
and happens before any instance is evaluated, so results do not depend on
the number of workers. Per-instance records are tabulated with pandas.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import pandas as pd

from tridiag.charpoly import determinant
from tridiag.config import DEFAULT_TOLERANCES, Tolerances
from tridiag.core import (
    PerturbationParams,
    TridiagonalMatrix,
    make_alternating,
    make_two_periodic,
    make_zero_diag,
    sylvester_kac,
)
from tridiag.eigvec import alternating_chains, jordan_chain_j, left_chain, reflect_chain, two_periodic_chains
from tridiag.errors import TridiagError
from tridiag.oracle import (
    ResidualReport,
    chain_residuals,
    check_anticommutation,
    check_similarity,
    check_square_identity,
    dense_determinant,
    dense_eigen,
    hessenberg_qr_eigenvalues,
    match_spectra,
)
from tridiag.roots import Spectrum, SpectrumEntry, default_radius
from tridiag.spectra import (
    det_alternating,
    det_j_even,
    det_two_periodic,
    expand_paired,
    lambdas,
    map_to_alternating,
    map_to_two_periodic,
    solve_zero_diagonal,
)

logger = logging.getLogger(__name__)

# Off-diagonal moduli are drawn from [OFFDIAG_MIN, OFFDIAG_MAX]
OFFDIAG_MIN = 0.1
OFFDIAG_MAX = 2.0
PARAM_MAX = 2.0
DEGENERATE_EVERY = 10
SYLVESTER_KAC_MAX = 15
DEGENERATE_CLUSTER_SUM = 1e-6


@dataclass(frozen=True, eq=False)
class Instance:
    index: int
    J: TridiagonalMatrix
    params: PerturbationParams
    degenerate: bool
    kind: str = "random"


@dataclass(frozen=True, eq=False)
class VerificationResult:
    seed: int
    count: int
    nmax: int
    report: ResidualReport
    records: pd.DataFrame

    def failures(self) -> list[dict]:
        failed = self.records.loc[~self.records["passed"], ["index", "kind", "reason"]]
        return [
            {"index": int(row["index"]), "kind": str(row["kind"]), "reason": str(row["reason"])}
            for row in failed.to_dict("records")
        ]

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "nmax": self.nmax,
            **self.report.to_dict(),
            "failures": self.failures(),
        }


# =============================================================================
# GENERATORS
# =============================================================================

def random_offdiagonal(rng: np.random.Generator, size: int) -> np.ndarray:
    """Entries with modulus uniform in [0.1, 2] and uniform phase."""
    modulus = rng.uniform(OFFDIAG_MIN, OFFDIAG_MAX, size)
    phase = rng.uniform(0, 2 * np.pi, size)
    return modulus * np.exp(1j * phase)


def random_zero_diag(rng: np.random.Generator, n: int) -> TridiagonalMatrix:
    return make_zero_diag(random_offdiagonal(rng, n - 1), random_offdiagonal(rng, n - 1))


def random_param(rng: np.random.Generator) -> complex:
    """A complex number with modulus uniform in [0, 2]."""
    return complex(rng.uniform(0, PARAM_MAX) * np.exp(1j * rng.uniform(0, 2 * np.pi)))


def random_params(rng: np.random.Generator) -> PerturbationParams:
    return PerturbationParams(random_param(rng), random_param(rng))


def build_corpus(count: int, nmax: int, seed: int) -> list[Instance]:
    """Random zero-diagonal J with n in 2..nmax and random (x, y).

    Every tenth instance also carries a degenerate check at x = ±iλ_k.
    """
    if nmax < 2:
        raise ValueError(f"nmax must be at least 2, got {nmax}")
    rng = np.random.default_rng(seed)
    corpus = []
    for index in range(count):
        n = int(rng.integers(2, nmax + 1))
        corpus.append(Instance(
            index=index,
            J=random_zero_diag(rng, n),
            params=random_params(rng),
            degenerate=index % DEGENERATE_EVERY == 0,
        ))
    return corpus


def multiple_pair_cases() -> list[Instance]:
    """Degenerate checks at x = +iλ and x = -iλ for a λ of multiplicity 2.

    χ = (z**2 - 1)**2, so λ = 1 carries a Jordan block of size 2.
    """
    J = make_zero_diag([1, 1, 1], [-1, 4, -1])
    params = PerturbationParams(0.5, -0.25j)
    return [
        Instance(index=index, J=J, params=params, degenerate=True, kind="multiple")
        for index in (0, DEGENERATE_EVERY)
    ]


# =============================================================================
# CHECKS
# =============================================================================

def recurrence_magnitude(T: TridiagonalMatrix) -> float:
    """The determinant recurrence run on moduli with all signs positive; bounds |det T|."""
    prev, cur = 0.0, 1.0
    products = np.abs(T.products)
    for k in range(T.n):
        nxt = abs(T.diag[k]) * cur
        if k > 0:
            nxt += products[k - 1] * prev
        prev, cur = cur, nxt
    return cur


def _relative(a: complex, b: complex, scale: float) -> float:
    diff = abs(a - b)
    return 0.0 if diff == 0 else diff / max(scale, np.finfo(float).tiny)


class _Checks:
    """Collects one instance's measurements and the names of failed gates."""

    def __init__(self):
        self.values = {}
        self.reasons = []

    def gate(self, name: str, value: float, limit: float):
        self.record(name, value)
        if not value <= limit:
            self.reasons.append(f"{name} {value:.3e} > {limit:.1e}")

    def record(self, name: str, value: float):
        self.values[name] = max(self.values.get(name, 0.0), float(value))

    def flag(self, name: str, ok: bool):
        self.values[name] = bool(ok)
        if not ok:
            self.reasons.append(name)


def _check_chains(checks: _Checks, T: TridiagonalMatrix, chains, tol: float):
    for chain in chains:
        eigen, link = chain_residuals(T, chain)
        checks.gate("eigen_residual", eigen, tol)
        checks.gate("chain_residual", link, tol)


def degenerate_choice(index: int, ps) -> tuple[int, int]:
    """(k, sign) of the degenerate parameter x = sign * iλ_k for a corpus index.

    Consecutive degenerate instances alternate the sign; every second one
    moves on to the next pair, so each λ_k is tried with both signs.
    """
    slot = index // DEGENERATE_EVERY
    return (slot // 2) % len(ps.pairs), 1 if slot % 2 == 0 else -1


def _check_degenerate(checks: _Checks, J: TridiagonalMatrix, ps, index: int, tolerances: Tolerances):
    k, sign = degenerate_choice(index, ps)
    lam = ps.pairs[k].value
    mult = ps.pairs[k].mult
    x = sign * 1j * lam
    mapped = map_to_alternating(ps, x, tolerances)
    radius = default_radius(mapped.values(), tolerances)
    zero = sum(e.mult for e in mapped.entries if abs(e.value) <= radius)
    checks.flag("degenerate_zero_mult", zero == 2 * mult)
    A = make_alternating(J, x)
    eig = hessenberg_qr_eigenvalues(A, tolerances)
    nearest = eig[np.argsort(np.abs(eig))[: 2 * mult]]
    checks.gate("degenerate_cluster_sum", abs(np.sum(nearest)), DEGENERATE_CLUSTER_SUM * max(1.0, abs(lam)))
    _check_chains(checks, A, alternating_chains(J, ps, x, tolerances), tolerances.residual)


def evaluate_instance(inst: Instance, tolerances: Tolerances = DEFAULT_TOLERANCES) -> dict:
    """Run every oracle comparison and invariant on one corpus instance."""
    J, p = inst.J, inst.params
    checks = _Checks()
    try:
        ps = solve_zero_diagonal(J, tolerances)
        spec_j = expand_paired(ps)
        values = spec_j.values()
        checks.flag("negation_closed", np.array_equal(np.sort(values), np.sort(-values)))
        checks.gate("match_j", match_spectra(spec_j, dense_eigen(J, tolerances=tolerances)), tolerances.match)

        B = make_two_periodic(J, p)
        mapped = map_to_two_periodic(ps, p, tolerances)
        checks.gate("match_b", match_spectra(mapped, dense_eigen(B, tolerances=tolerances)), tolerances.match)

        lam = lambdas(ps)
        det_scale = np.prod(abs(p.x) * abs(p.y) + np.abs(lam) ** 2) * (abs(p.x) if J.n % 2 else 1.0)
        checks.gate("det_b_rel", _relative(det_two_periodic(ps, p), dense_determinant(B), det_scale),
                    tolerances.det_rel)
        checks.gate("det_dense_rel",
                    _relative(determinant(B), dense_determinant(B), recurrence_magnitude(B)),
                    tolerances.det_dense_rel)
        if J.n % 2 == 0:
            det_j = determinant(J)
            checks.gate("det_j_rel", _relative(det_j_even(J), det_j, abs(det_j)), tolerances.det_j_rel)

        x = p.x
        A = make_alternating(J, x)
        alt_scale = np.prod(abs(x) ** 2 + np.abs(lam) ** 2) * (abs(x) if J.n % 2 else 1.0)
        checks.gate("det_a_rel", _relative(det_alternating(ps, x), dense_determinant(A), alt_scale),
                    tolerances.det_rel)
        square = check_square_identity(J, x, tolerances)
        checks.record("square_identity", square.identity_deviation)
        checks.flag("square_identity_ok", square.passed)
        checks.gate("anticommutation", check_anticommutation(J), 0.0)
        checks.gate("similarity", check_similarity(B), tolerances.square * 4)

        for e in ps.pairs:
            chain = jordan_chain_j(J, e.value, min(e.mult, 2), tolerances.residual)
            _check_chains(checks, J, [chain, reflect_chain(chain)], tolerances.residual)
        _check_chains(checks, A, alternating_chains(J, ps, x, tolerances), tolerances.residual)
        b_chains = two_periodic_chains(J, ps, p, tolerances)
        _check_chains(checks, B, b_chains, tolerances.residual)
        _check_chains(checks, B, [left_chain(B, c) for c in b_chains], tolerances.residual)

        if inst.degenerate and ps.pairs:
            _check_degenerate(checks, J, ps, inst.index, tolerances)
    except TridiagError as e:
        checks.reasons.append(f"{type(e).__name__}: {e}")

    return {
        "index": inst.index,
        "kind": inst.kind,
        "n": J.n,
        **checks.values,
        "passed": not checks.reasons,
        "reason": "; ".join(checks.reasons),
    }


def evaluate_sylvester_kac(N: int, tolerances: Tolerances = DEFAULT_TOLERANCES) -> dict:
    """σ(K_N) = {-N, -N+2, ..., N} through both the mapped path and the oracle."""
    K = sylvester_kac(N)
    expected = Spectrum(tuple(SpectrumEntry(complex(v), 1) for v in range(-N, N + 1, 2)))
    checks = _Checks()
    try:
        checks.gate("match_j", match_spectra(expand_paired(solve_zero_diagonal(K, tolerances)), expected), 1e-6)
        checks.gate("match_oracle", match_spectra(dense_eigen(K, tolerances=tolerances), expected), 1e-6)
    except TridiagError as e:
        checks.reasons.append(f"{type(e).__name__}: {e}")
    return {
        "index": N,
        "kind": "sylvester-kac",
        "n": K.n,
        **checks.values,
        "passed": not checks.reasons,
        "reason": "; ".join(checks.reasons),
    }


def _column_max(df: pd.DataFrame, column: str) -> float:
    if column not in df:
        return 0.0
    value = df[column].max()
    return 0.0 if pd.isna(value) else float(value)


def summarize(records: pd.DataFrame) -> ResidualReport:
    """Worst values over all records."""
    return ResidualReport(
        max_eigen_residual=_column_max(records, "eigen_residual"),
        max_chain_residual=_column_max(records, "chain_residual"),
        spectrum_match_distance=max(_column_max(records, "match_b"), _column_max(records, "match_j")),
        identity_deviation=max(_column_max(records, "square_identity"), _column_max(records, "anticommutation")),
        passed=bool(records["passed"].all()),
    )


def run_verification(count: int = 200, nmax: int = 12, seed: int = 7,
                     tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1,
                     sylvester_kac_max: int = SYLVESTER_KAC_MAX) -> VerificationResult:
    """Evaluate the seeded corpus, the multiple-pair cases and the Sylvester–Kac fixed points.

    Args:
        count: number of random instances
        nmax: largest matrix order
        seed: seed of the single generator
        tolerances: numeric gates
        workers: thread count for instance evaluation
        sylvester_kac_max: largest N of the K_N checks (0 skips them)

    Returns:
        VerificationResult with the aggregated report and one record per check
    """
    corpus = build_corpus(count, nmax, seed) + multiple_pair_cases()
    logger.info("verifying %d instance(s), n <= %d, seed %d", count, nmax, seed)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda inst: evaluate_instance(inst, tolerances), corpus))
    else:
        rows = [evaluate_instance(inst, tolerances) for inst in corpus]
    rows += [evaluate_sylvester_kac(N, tolerances) for N in range(1, sylvester_kac_max + 1)]

    records = pd.DataFrame(rows).sort_values(["kind", "index"], kind="stable").reset_index(drop=True)
    report = summarize(records)
    failed = int((~records["passed"]).sum())
    if failed:
        logger.warning("%d of %d check record(s) failed", failed, len(records))
    return VerificationResult(seed=seed, count=count, nmax=nmax, report=report, records=records)


# =============================================================================
# BENCHMARK
# =============================================================================

def run_benchmark(orders, repeats: int = 5, seed: int = 7,
                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> pd.DataFrame:
    """Mean seconds per instance of the mapped path and the dense oracle for B_n."""
    rng = np.random.default_rng(seed)
    rows = []
    for n in orders:
        for _ in range(repeats):
            J = random_zero_diag(rng, n)
            p = random_params(rng)
            start = time.perf_counter()
            map_to_two_periodic(solve_zero_diagonal(J, tolerances), p, tolerances)
            mapped = time.perf_counter() - start
            B = make_two_periodic(J, p)
            start = time.perf_counter()
            dense_eigen(B, tolerances=tolerances)
            oracle = time.perf_counter() - start
            rows.append({"n": n, "mapped_s": mapped, "oracle_s": oracle})
    table = pd.DataFrame(rows).groupby("n", as_index=False)[["mapped_s", "oracle_s"]].mean()
    table["speedup"] = table["oracle_s"] / table["mapped_s"]
    return table
