"""Tolerances and defaults, overridable through the environment (.env supported)."""

import os
from dataclasses import dataclass, fields, replace

from dotenv import load_dotenv

load_dotenv(override=True)

# =============================================================================
# DEFAULTS
# =============================================================================
# Every numeric gate used by the library. Override with TRIDIAG_<FIELD>,
# e.g. TRIDIAG_MATCH=1e-6 in the environment or in a .env file.
ENV_PREFIX = "TRIDIAG_"

DEFAULT_SEED = 7
DEFAULT_LOG_LEVEL = "WARNING"


@dataclass(frozen=True)
class Tolerances:
    """Numeric gates shared by every module.

    Attributes:
        parity: relative size allowed for wrong-parity coefficients
        degen: relative gate for detecting x**2 == -lambda**2
        residual: relative residual gate for eigenvectors and chains
        match: spectrum matching distance accepted by the oracle checks
        root: relative residual bound accepted by the root finder
        max_iter: iteration cap of the root finder and of the QR sweep factor
        cluster_abs: absolute floor of the clustering radius
        cluster_rel: clustering radius relative to the largest root
        zero_coeff: relative size below which trailing coefficients are zero
        deflation: QR subdiagonal deflation threshold (relative to row scale)
        square: relative deviation accepted for A**2 == J**2 + x**2 I
        det_rel: relative error accepted for closed-form vs dense determinants
        det_j_rel: relative error accepted for det(J_2l) vs the recurrence
        det_dense_rel: relative error accepted for the recurrence vs LU determinant
    """

    parity: float = 1e-10
    degen: float = 1e-10
    residual: float = 1e-8
    match: float = 1e-7
    root: float = 1e-12
    max_iter: int = 500
    cluster_abs: float = 1e-8
    cluster_rel: float = 1e-6
    zero_coeff: float = 1e-13
    deflation: float = 1e-13
    square: float = 1e-12
    det_rel: float = 1e-9
    det_j_rel: float = 1e-12
    det_dense_rel: float = 1e-10

    def with_overrides(self, **overrides) -> "Tolerances":
        """Return a copy with the given non-None fields replaced."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _read_env(name: str, cast):
    raw = os.getenv(ENV_PREFIX + name.upper())
    if raw is None or raw.strip() == "":
        return None
    try:
        return cast(raw)
    except ValueError:
        raise ValueError(f"Invalid value for {ENV_PREFIX}{name.upper()}: {raw!r}") from None


def load_tolerances() -> Tolerances:
    """Build Tolerances from defaults and the current environment.

    Returns:
        Tolerances with every TRIDIAG_<FIELD> variable applied
    """
    overrides = {}
    for f in fields(Tolerances):
        cast = int if f.type in (int, "int") else float
        value = _read_env(f.name, cast)
        if value is not None:
            overrides[f.name] = value
    return Tolerances().with_overrides(**overrides)


def default_seed() -> int:
    value = _read_env("seed", int)
    return DEFAULT_SEED if value is None else value


def log_level() -> str:
    return os.getenv(ENV_PREFIX + "LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()


DEFAULT_TOLERANCES = Tolerances()
