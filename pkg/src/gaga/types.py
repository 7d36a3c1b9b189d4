"""Shared domain types: problems, solver configuration, estimates."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DimensionError, InvalidInput


FIXED = "fixed"
ESTIMATED = "estimated"


def _as_1d(v, name):
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class RegressionProblem:
    """A dense linear regression instance y = X b + noise.

    ``noise_variance`` is set only when the noise level is known a priori.
    """

    design: np.ndarray
    response: np.ndarray
    noise_variance: Optional[float] = None

    def __post_init__(self):
        x = np.asarray(self.design, dtype=float)
        if x.ndim != 2:
            raise DimensionError(f"design must be a matrix, got shape {x.shape}")
        y = _as_1d(self.response, "response")
        n, p = x.shape
        if n < 1 or p < 1:
            raise InvalidInput(f"need n >= 1 and p >= 1, got {n}x{p}")
        if y.shape[0] != n:
            raise DimensionError(f"response length {y.shape[0]} != row count {n}")
        if not np.all(np.isfinite(x)) or not np.all(np.isfinite(y)):
            raise InvalidInput("design/response contain non-finite entries")
        if self.noise_variance is not None and not self.noise_variance > 0:
            raise InvalidInput("noise_variance must be positive when given")
        object.__setattr__(self, "design", x)
        object.__setattr__(self, "response", y)

    @property
    def n(self) -> int:
        return self.design.shape[0]

    @property
    def p(self) -> int:
        return self.design.shape[1]


@dataclass(frozen=True)
class GagaConfig:
    """Solver configuration.

    ``tuning_clamp`` and ``rank_tolerance`` may be None, meaning scale-relative
    defaults are derived from the gram diagonal at fit time
    (1e12 * max diag and 1e-10 * max diag respectively).
    """

    iterations: int = 50
    alpha: float = 2.0
    variance_mode: str = FIXED
    tuning_clamp: Optional[float] = None
    rank_tolerance: Optional[float] = None
    record_trace: bool = False

    def __post_init__(self):
        if self.iterations < 1:
            raise InvalidInput("iterations must be >= 1")
        if not self.alpha > 1:
            raise InvalidInput("alpha must be > 1")
        if self.variance_mode not in (FIXED, ESTIMATED):
            raise InvalidInput(f"unknown variance_mode {self.variance_mode!r}")
        if self.tuning_clamp is not None and not self.tuning_clamp > 0:
            raise InvalidInput("tuning_clamp must be positive")
        if self.rank_tolerance is not None and not self.rank_tolerance > 0:
            raise InvalidInput("rank_tolerance must be positive")


@dataclass(frozen=True)
class IterationRecord:
    """One solver iteration snapshot (kept only when tracing is on)."""

    iteration: int
    tuning: np.ndarray
    beta: np.ndarray
    variance: float
    variance_floored: bool = False


@dataclass(frozen=True)
class SignalEstimate:
    """Final estimate: coefficients after truncation, support mask, per-coefficient
    tuning weights (b^K / alpha) and the variance used for truncation."""

    coefficients: np.ndarray
    support: np.ndarray
    tuning: np.ndarray
    estimated_variance: float
    trace: Optional[tuple] = None

    def __post_init__(self):
        coef = _as_1d(self.coefficients, "coefficients")
        sup = np.asarray(self.support, dtype=bool)
        tun = _as_1d(self.tuning, "tuning")
        if not (coef.shape == sup.shape == tun.shape):
            raise DimensionError("coefficients/support/tuning length mismatch")
        if np.any(coef[~sup] != 0.0):
            raise InvalidInput("coefficients outside the support must be exactly zero")
        if np.any(tun < 0):
            raise InvalidInput("tuning weights must be nonnegative")
        object.__setattr__(self, "coefficients", coef)
        object.__setattr__(self, "support", sup)
        object.__setattr__(self, "tuning", tun)


@dataclass(frozen=True)
class GramSystem:
    """Precomputed normal-equation pieces: X'X (symmetrized), X'y and y'y."""

    gram: np.ndarray
    cross: np.ndarray
    response_sq_norm: float

    @property
    def p(self) -> int:
        return self.gram.shape[0]


@dataclass(frozen=True)
class SolverState:
    """State carried between solver iterations."""

    iteration: int
    tuning: np.ndarray
    beta: np.ndarray
    inv_diag: np.ndarray
    variance: float
    variance_floored: bool = False
