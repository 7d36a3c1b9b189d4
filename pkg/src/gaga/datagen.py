"""Reproducible synthetic designs for the simulation protocol and the
orthogonal-design theory suites.

All randomness flows through counter-based Philox generators keyed by
(seed, stream). Separate named streams feed the design rows, the coefficient
draws, the support positions and the noise, so changing one draw never shifts
the others. Per-replicate seeds come from
``numpy.random.SeedSequence([base_seed, replicate]).generate_state(1)``.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidCorrelation, InvalidInput, InvalidSize
from .types import RegressionProblem

MODEL1 = "model1"
MODEL2 = "model2"
HIGHDIM = "highdim"
CONSISTENCY = "consistency"
ORTHOGONAL = "orthogonal"

_STREAMS = {"design": 0, "coefficients": 1, "noise": 2, "support": 3}


def stream_rng(seed: int, stream: str) -> np.random.Generator:
    """Philox generator for one named substream of a seed."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(_STREAMS[stream],))
    return np.random.Generator(np.random.Philox(ss))


def replicate_seed(base_seed: int, replicate: int) -> int:
    """Derived per-replicate seed, a pure function of (base_seed, replicate)."""
    return int(np.random.SeedSequence([int(base_seed), int(replicate)]).generate_state(1)[0])


@dataclass(frozen=True)
class GeneratedInstance:
    problem: RegressionProblem
    beta_true: np.ndarray
    model_tag: str
    seed: int


def _open_uniform(rng, low, high, size=None):
    # Redraw exact endpoint hits so a "nonzero" coefficient can never be 0.
    v = rng.uniform(low, high, size=size)
    while np.any(v == low):
        mask = v == low
        v = np.where(mask, rng.uniform(low, high, size=np.shape(v)), v)
    return v


def correlated_gaussian_rows(correlation, n: int, rng) -> np.ndarray:
    """n i.i.d. zero-mean Gaussian rows with the given correlation matrix."""
    correlation = np.asarray(correlation, dtype=float)
    try:
        chol = np.linalg.cholesky(correlation)
    except np.linalg.LinAlgError as exc:
        raise InvalidCorrelation("correlation matrix is not positive definite") from exc
    z = rng.standard_normal((n, correlation.shape[0]))
    return z @ chol.T


def _assemble(seed, model_tag, x, beta):
    noise = stream_rng(seed, "noise").standard_normal(x.shape[0])
    y = x @ beta + noise
    return GeneratedInstance(
        problem=RegressionProblem(design=x, response=y),
        beta_true=beta,
        model_tag=model_tag,
        seed=int(seed),
    )


def gen_model1(seed: int) -> GeneratedInstance:
    """n=100, p=8, AR(0.5) predictor correlation, three U(0,1) nonzeros at
    positions 1, 2 and 5 (1-based)."""
    n, p, rho = 100, 8, 0.5
    corr = rho ** np.abs(np.subtract.outer(np.arange(p), np.arange(p)))
    x = correlated_gaussian_rows(corr, n, stream_rng(seed, "design"))
    vals = _open_uniform(stream_rng(seed, "coefficients"), 0.0, 1.0, size=3)
    beta = np.zeros(p)
    beta[[0, 1, 4]] = vals
    return _assemble(seed, MODEL1, x, beta)


def gen_model2(seed: int) -> GeneratedInstance:
    """n=100, p=40, equicorrelation 0.5; four blocks of 10:
    zeros, U(0,1) repeated, zeros, U(10,100) repeated."""
    n, p = 100, 40
    corr = np.full((p, p), 0.5)
    np.fill_diagonal(corr, 1.0)
    x = correlated_gaussian_rows(corr, n, stream_rng(seed, "design"))
    crng = stream_rng(seed, "coefficients")
    b1 = float(_open_uniform(crng, 0.0, 1.0))
    b2 = float(_open_uniform(crng, 10.0, 100.0))
    beta = np.concatenate([np.zeros(10), np.full(10, b1), np.zeros(10), np.full(10, b2)])
    return _assemble(seed, MODEL2, x, beta)


def gen_highdim(seed: int) -> GeneratedInstance:
    """n=1000, p=500, equicorrelation 0.5; 250 randomly placed zeros, the rest
    U(0,5)."""
    n, p, zeros = 1000, 500, 250
    corr = np.full((p, p), 0.5)
    np.fill_diagonal(corr, 1.0)
    x = correlated_gaussian_rows(corr, n, stream_rng(seed, "design"))
    zero_pos = stream_rng(seed, "support").choice(p, size=zeros, replace=False)
    beta = _open_uniform(stream_rng(seed, "coefficients"), 0.0, 5.0, size=p)
    beta[zero_pos] = 0.0
    return _assemble(seed, HIGHDIM, x, beta)


def gen_consistency(seed: int, n: int) -> GeneratedInstance:
    """p=8 i.i.d. standard-normal predictors, three U(0,1) nonzeros at random
    positions. The coefficient pattern depends only on the seed, so the same
    seed with different n reuses the pattern on fresh rows."""
    p, nonzeros = 8, 3
    if n < p:
        raise InvalidSize(f"need n >= {p}, got {n}")
    pos = stream_rng(seed, "support").choice(p, size=nonzeros, replace=False)
    vals = _open_uniform(stream_rng(seed, "coefficients"), 0.0, 1.0, size=nonzeros)
    beta = np.zeros(p)
    beta[pos] = vals
    x = stream_rng(seed, "design").standard_normal((n, p))
    return _assemble(seed, CONSISTENCY, x, beta)


def gen_orthogonal(seed: int, n: int, p: int, beta_true, sigma_star) -> GeneratedInstance:
    """Exactly column-orthogonal design with column squared norms n*sigma_star_j."""
    beta_true = np.asarray(beta_true, dtype=float)
    sigma_star = np.asarray(sigma_star, dtype=float)
    if n < p:
        raise InvalidSize(f"need n >= p, got n={n}, p={p}")
    if beta_true.shape != (p,) or sigma_star.shape != (p,):
        raise InvalidInput("beta_true/sigma_star must have length p")
    if np.any(sigma_star <= 0):
        raise InvalidInput("sigma_star must be positive")
    g = stream_rng(seed, "design").standard_normal((n, p))
    q, r = np.linalg.qr(g, mode="reduced")
    q = q * np.where(np.diagonal(r) < 0, -1.0, 1.0)
    x = q * np.sqrt(n * sigma_star)
    return _assemble(seed, ORTHOGONAL, x, beta_true)


def save_instance(instance: GeneratedInstance, design_path, meta_path) -> None:
    """CSV pair: design file with columns x1..xp,y; metadata file with the
    ground truth, seed and model tag as key=value lines."""
    x = instance.problem.design
    y = instance.problem.response
    p = x.shape[1]
    with open(design_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{j+1}" for j in range(p)] + ["y"])
        for i in range(x.shape[0]):
            writer.writerow([repr(float(v)) for v in x[i]] + [repr(float(y[i]))])
    with open(meta_path, "w") as fh:
        fh.write(f"model_tag={instance.model_tag}\n")
        fh.write(f"seed={instance.seed}\n")
        fh.write(f"n={x.shape[0]}\n")
        fh.write(f"p={p}\n")
        fh.write("beta_true=" + ",".join(repr(float(v)) for v in instance.beta_true) + "\n")


def load_instance(design_path, meta_path) -> GeneratedInstance:
    data = np.loadtxt(design_path, delimiter=",", skiprows=1, ndmin=2)
    meta = {}
    for line in Path(meta_path).read_text().splitlines():
        if "=" in line:
            key, value = line.split("=", 1)
            meta[key.strip()] = value.strip()
    beta = np.array([float(v) for v in meta["beta_true"].split(",")])
    problem = RegressionProblem(design=data[:, :-1], response=data[:, -1])
    return GeneratedInstance(
        problem=problem,
        beta_true=beta,
        model_tag=meta["model_tag"],
        seed=int(meta["seed"]),
    )
