"""QR-accelerated variant: reorder columns by least-squares magnitude, rotate
into an orthogonal basis, run the solver there (diagonal systems only), and
back-substitute through the triangular factor.

The fit path keeps the orthogonal factor in raw Householder form and applies
it to the response directly; only Q'y and R are ever needed. ``plan_qr``
materializes Q for callers that want the factors themselves.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack, solve_triangular

from .errors import InvalidInput, RankDeficient, SingularSystem
from .linalg import build_gram, default_rank_tolerance, spd_solve_with_inverse_diagonal
from .solver import fit_gram
from .types import GagaConfig, GramSystem, RegressionProblem, SignalEstimate


@dataclass(frozen=True)
class QrPlan:
    """Column ordering plus sign-fixed thin QR of the reordered design."""

    permutation: np.ndarray
    q_factor: np.ndarray
    r_factor: np.ndarray
    ols: np.ndarray


def _ols_permutation(problem: RegressionProblem, rank_tolerance):
    if problem.p > problem.n:
        raise InvalidInput("need p <= n for the QR variant")
    gs = build_gram(problem)
    try:
        ols, _ = spd_solve_with_inverse_diagonal(
            gs.gram, np.zeros(problem.p), gs.cross, rank_tolerance=rank_tolerance
        )
    except SingularSystem as exc:
        raise RankDeficient(pivot=exc.pivot) from exc
    # Stable sort keeps original order on |ols| ties.
    perm = np.argsort(-np.abs(ols), kind="stable")
    if rank_tolerance is None:
        rank_tolerance = default_rank_tolerance(np.abs(np.diagonal(gs.gram)))
    return gs, ols, perm, rank_tolerance


def _check_rank(r_diag, rank_tolerance):
    small = np.flatnonzero(r_diag * r_diag <= rank_tolerance)
    if small.size:
        raise RankDeficient(pivot=int(small[0]))


def plan_qr(problem: RegressionProblem, rank_tolerance: float = None) -> QrPlan:
    """Least-squares estimate, magnitude ordering, and sign-fixed thin QR."""
    _, ols, perm, rank_tolerance = _ols_permutation(problem, rank_tolerance)
    x_new = problem.design[:, perm]
    q, r = np.linalg.qr(x_new, mode="reduced")
    signs = np.where(np.diagonal(r) < 0, -1.0, 1.0)
    q = q * signs
    r = signs[:, None] * r
    _check_rank(np.diagonal(r), rank_tolerance)
    return QrPlan(permutation=perm, q_factor=q, r_factor=r, ols=ols)


def _householder_qty_r(x_new, y):
    """R and Q'y from the raw Householder factorization, R diagonal made
    nonnegative (matching plan_qr's sign convention)."""
    p = x_new.shape[1]
    raw, tau, work, info = lapack.dgeqrf(x_new, lwork=-1)
    raw, tau, work, info = lapack.dgeqrf(x_new, lwork=int(work[0]))
    if info != 0:
        raise InvalidInput(f"QR factorization failed (info={info})")
    qty, work, info = lapack.dormqr("L", "T", raw, tau, y[:, None], lwork=-1)
    qty, work, info = lapack.dormqr("L", "T", raw, tau, y[:, None], lwork=int(work[0]))
    if info != 0:
        raise InvalidInput(f"applying Q' failed (info={info})")
    r = np.triu(raw[:p])
    qty = qty[:p, 0]
    signs = np.where(np.diagonal(r) < 0, -1.0, 1.0)
    return signs[:, None] * r, signs * qty


def gaga_qr_fit(problem: RegressionProblem, config: GagaConfig = None) -> SignalEstimate:
    """Fit in the rotated basis and map the estimate back.

    The rotated gram is the identity to machine accuracy, so the inner solver
    runs on an exact identity gram and never factorizes. Support is whatever
    survives the triangular back-substitution: zeros come only from the inner
    truncation, with sub-roundoff leakage snapped back to zero.
    """
    if config is None:
        config = GagaConfig()
    _, _, perm, rank_tolerance = _ols_permutation(problem, config.rank_tolerance)
    p = problem.p
    y = problem.response
    r_factor, qty = _householder_qty_r(problem.design[:, perm], y)
    _check_rank(np.diagonal(r_factor), rank_tolerance)
    inner = GramSystem(
        gram=np.eye(p),
        cross=qty,
        response_sq_norm=float(y @ y),
    )
    theta = fit_gram(inner, problem.n, config)
    beta_new = solve_triangular(r_factor, theta.coefficients, lower=False)
    snap = 1e-12 * np.max(np.abs(beta_new), initial=0.0)
    beta_new[np.abs(beta_new) <= snap] = 0.0
    coef = np.empty(p)
    coef[perm] = beta_new
    tuning = np.empty(p)
    tuning[perm] = theta.tuning
    return SignalEstimate(
        coefficients=coef,
        support=coef != 0.0,
        tuning=tuning,
        estimated_variance=theta.estimated_variance,
        trace=theta.trace,
    )
