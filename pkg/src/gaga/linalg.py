"""Dense SPD kernel: gram construction and a factorize-once solve that also
returns the diagonal of the inverse.

The inverse diagonal comes from the triangular Cholesky factor
(diag(A^-1)_j = sum_k (L^-1)_{kj}^2), never from forming the full inverse.
"""

import numpy as np
from scipy.linalg import lapack

from .errors import InvalidInput, SingularSystem
from .types import GramSystem, RegressionProblem


def default_rank_tolerance(gram_diag):
    return 1e-10 * float(np.max(gram_diag))


def build_gram(problem: RegressionProblem) -> GramSystem:
    """Precompute X'X (symmetrized by averaging), X'y and y'y."""
    x, y = problem.design, problem.response
    g = x.T @ x
    g = 0.5 * (g + g.T)
    return GramSystem(gram=g, cross=x.T @ y, response_sq_norm=float(y @ y))


def is_diagonal(mat) -> bool:
    """True iff every off-diagonal entry is exactly zero."""
    off = mat.copy()
    np.fill_diagonal(off, 0.0)
    return not np.any(off)


def spd_solve_with_inverse_diagonal(gram, penalty_diag, rhs, rank_tolerance=None):
    """Solve (gram + diag(penalty_diag)) s = rhs and return (s, diag of inverse).

    One Cholesky factorization serves both outputs. Exactly diagonal systems
    skip factorization entirely (closed form), which keeps orthogonal-design
    trajectories bit-equal to the scalar recursion.
    """
    gram = np.asarray(gram, dtype=float)
    penalty_diag = np.asarray(penalty_diag, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    p = gram.shape[0]
    if penalty_diag.shape != (p,) or rhs.shape != (p,):
        raise InvalidInput("penalty_diag/rhs shape mismatch with gram")
    if np.any(penalty_diag < 0):
        raise InvalidInput("penalty_diag must be nonnegative")

    diag = np.diagonal(gram) + penalty_diag
    if rank_tolerance is None:
        rank_tolerance = default_rank_tolerance(np.abs(np.diagonal(gram)) + 1e-300)

    if is_diagonal(gram):
        bad = np.flatnonzero(diag <= rank_tolerance)
        if bad.size:
            raise SingularSystem(pivot=int(bad[0]))
        return rhs / diag, 1.0 / diag

    a = gram + np.diag(penalty_diag)
    c, info = lapack.dpotrf(a, lower=1, overwrite_a=0)
    if info > 0:
        raise SingularSystem(pivot=int(info) - 1)
    if info < 0:
        raise InvalidInput(f"illegal argument {-info} to dpotrf")
    pivots = np.diagonal(c)
    bad = np.flatnonzero(pivots * pivots <= rank_tolerance)
    if bad.size:
        raise SingularSystem(pivot=int(bad[0]))

    sol, info = lapack.dpotrs(c, rhs[:, None], lower=1)
    if info != 0:
        raise SingularSystem(pivot=p - 1, message="triangular solve failed")
    linv, info = lapack.dtrtri(c, lower=1)
    if info != 0:
        raise SingularSystem(pivot=int(info) - 1, message="triangular inversion failed")
    inv_diag = np.einsum("ij,ij->j", linv, linv)
    return sol[:, 0], inv_diag


def inverse_diagonal(gram, penalty_diag, rank_tolerance=None):
    """Diagonal of (gram + diag(penalty_diag))^-1 alone."""
    p = gram.shape[0]
    _, d = spd_solve_with_inverse_diagonal(
        gram, penalty_diag, np.zeros(p), rank_tolerance=rank_tolerance
    )
    return d
