"""Alternating signal / tuning-weight solver with hard truncation.

Each iteration ridge-solves for the signal under per-coefficient penalties,
then refreshes every penalty from the fresh estimate and the inverse diagonal.
After K iterations the penalties are divided by alpha, the signal is re-solved,
and coefficients falling under the variance-gap threshold are zeroed.
"""

import dataclasses

import numpy as np

from .errors import SingularGram, SingularSystem
from .linalg import build_gram, inverse_diagonal, spd_solve_with_inverse_diagonal
from .types import (
    ESTIMATED,
    FIXED,
    GagaConfig,
    GramSystem,
    IterationRecord,
    RegressionProblem,
    SignalEstimate,
    SolverState,
)


def resolve_tuning_clamp(config: GagaConfig, gram_system: GramSystem) -> float:
    if config.tuning_clamp is not None:
        return config.tuning_clamp
    # Uncapped weights on dead coordinates grow geometrically and overflow;
    # anything this large is indistinguishable after truncation.
    return 1e12 * float(np.max(np.diagonal(gram_system.gram)))


def variance_floor(gram_system: GramSystem, n_obs: int) -> float:
    return 1e-12 * (gram_system.response_sq_norm / n_obs + 1.0)


def initial_state(p: int) -> SolverState:
    return SolverState(
        iteration=0,
        tuning=np.zeros(p),
        beta=np.zeros(p),
        inv_diag=np.full(p, np.nan),
        variance=1.0,
    )


def estimate_variance_residual(beta, problem: RegressionProblem) -> float:
    """Mean squared residual (X beta - y)'(X beta - y) / n."""
    r = problem.design @ np.asarray(beta, dtype=float) - problem.response
    return float(r @ r) / problem.n


def estimate_variance_em(state: SolverState, gram_system: GramSystem, n: int) -> float:
    """Expected residual sum of squares under the current posterior, / n.

    (y'y - 2 b'X'y + b'X'Xb + var * tr(D X'X)) / n, with
    tr(D X'X) = p - sum_j D_jj * penalty_j since D = (X'X + B)^-1.
    """
    g, c = gram_system.gram, gram_system.cross
    beta = state.beta
    trace_term = gram_system.p - float(state.inv_diag @ state.tuning)
    rss = (
        gram_system.response_sq_norm
        - 2.0 * float(beta @ c)
        + float(beta @ (g @ beta))
        + state.variance * trace_term
    )
    return rss / n


def gaga_step(
    state: SolverState,
    gram_system: GramSystem,
    config: GagaConfig,
    n_obs: int,
    tuning_clamp: float = None,
) -> SolverState:
    """Advance one iteration: solve for the signal under the incoming penalties,
    then refresh penalties and (optionally) the noise variance."""
    if tuning_clamp is None:
        tuning_clamp = resolve_tuning_clamp(config, gram_system)
    beta, inv_diag = spd_solve_with_inverse_diagonal(
        gram_system.gram, state.tuning, gram_system.cross,
        rank_tolerance=config.rank_tolerance,
    )
    new_tuning = np.minimum(
        tuning_clamp, config.alpha / (beta * beta / state.variance + inv_diag)
    )
    floored = False
    if config.variance_mode == ESTIMATED:
        interim = SolverState(
            iteration=state.iteration,
            tuning=state.tuning,
            beta=beta,
            inv_diag=inv_diag,
            variance=state.variance,
        )
        var = estimate_variance_em(interim, gram_system, n_obs)
        floor = variance_floor(gram_system, n_obs)
        if var < floor:
            var = floor
            floored = True
    else:
        var = state.variance
    return SolverState(
        iteration=state.iteration + 1,
        tuning=new_tuning,
        beta=beta,
        inv_diag=inv_diag,
        variance=var,
        variance_floored=floored,
    )


def hard_truncate(
    beta_star, tuning_star, gram_system: GramSystem, variance: float,
    rank_tolerance=None,
) -> SignalEstimate:
    """Zero every coefficient whose square falls below the variance gap
    var * ((X'X)^-1_jj - (X'X + B*)^-1_jj)."""
    beta_star = np.asarray(beta_star, dtype=float)
    tuning_star = np.asarray(tuning_star, dtype=float)
    try:
        unpenalized = inverse_diagonal(
            gram_system.gram, np.zeros(gram_system.p), rank_tolerance=rank_tolerance
        )
    except SingularSystem as exc:
        raise SingularGram(
            f"X'X singular at pivot {exc.pivot}; truncation needs its inverse diagonal"
        ) from exc
    penalized = inverse_diagonal(
        gram_system.gram, tuning_star, rank_tolerance=rank_tolerance
    )
    threshold = variance * (unpenalized - penalized)
    keep = beta_star * beta_star >= threshold
    coef = np.where(keep, beta_star, 0.0)
    return SignalEstimate(
        coefficients=coef,
        support=keep,
        tuning=tuning_star,
        estimated_variance=variance,
    )


def fit_gram(gram_system: GramSystem, n_obs: int, config: GagaConfig) -> SignalEstimate:
    """Run the solver given precomputed normal-equation pieces."""
    clamp = resolve_tuning_clamp(config, gram_system)
    state = initial_state(gram_system.p)
    trace = [] if config.record_trace else None
    for _ in range(config.iterations):
        state = gaga_step(state, gram_system, config, n_obs, tuning_clamp=clamp)
        if trace is not None:
            trace.append(
                IterationRecord(
                    iteration=state.iteration,
                    tuning=state.tuning,
                    beta=state.beta,
                    variance=state.variance,
                    variance_floored=state.variance_floored,
                )
            )
    b_star = state.tuning / config.alpha
    beta_star, _ = spd_solve_with_inverse_diagonal(
        gram_system.gram, b_star, gram_system.cross,
        rank_tolerance=config.rank_tolerance,
    )
    final_var = state.variance if config.variance_mode == ESTIMATED else 1.0
    estimate = hard_truncate(
        beta_star, b_star, gram_system, final_var,
        rank_tolerance=config.rank_tolerance,
    )
    if trace is not None:
        estimate = dataclasses.replace(estimate, trace=tuple(trace))
    return estimate


def gaga_fit(problem: RegressionProblem, config: GagaConfig = None) -> SignalEstimate:
    """Fit the full pipeline on a regression problem."""
    if config is None:
        config = GagaConfig()
    return fit_gram(build_gram(problem), problem.n, config)
