"""Experiment runner: replicate loops over the simulated designs, metric
aggregation, empirical theory validation on orthogonal designs, and timing
benchmarks. All tabular output is flat CSV.
"""

import csv
import math
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import datagen
from .datagen import GeneratedInstance, replicate_seed
from .errors import GagaError, InvalidInput
from .metrics import acc
from .qr import gaga_qr_fit
from .solver import gaga_fit
from .types import GagaConfig

CSV_COLUMNS = [
    "model_tag", "seed", "replicate", "estimator",
    "err", "acc", "tp", "tn", "fp", "fn", "wall_ms", "status",
]


# ---------------------------------------------------------------------------
# Normal CDF / Kolmogorov-Smirnov distance (no statistics dependency)
# ---------------------------------------------------------------------------

def normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def ks_distance(sample) -> float:
    """One-sample KS distance of a sample against the standard normal."""
    xs = np.sort(np.asarray(sample, dtype=float))
    n = xs.shape[0]
    if n == 0:
        raise InvalidInput("empty sample")
    cdf = np.array([normal_cdf(v) for v in xs])
    upper = np.arange(1, n + 1) / n - cdf
    lower = cdf - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GagaEstimator:
    config: GagaConfig = field(default_factory=GagaConfig)
    name: str = "gaga"

    def coefficients(self, instance: GeneratedInstance, replicate: int):
        return gaga_fit(instance.problem, self.config).coefficients


@dataclass(frozen=True)
class GagaQrEstimator:
    config: GagaConfig = field(default_factory=GagaConfig)
    name: str = "gaga_qr"

    def coefficients(self, instance: GeneratedInstance, replicate: int):
        return gaga_qr_fit(instance.problem, self.config).coefficients


class ExternalEstimates:
    """Externally produced estimates, one coefficient row per replicate.

    File format: optional '#' comment lines (a comment may declare
    ``snap=<tol>`` to zero out entries with |v| <= tol), then a header
    ``replicate,b1,...,bp``, then one row per replicate.
    """

    def __init__(self, path, name="external"):
        self.path = str(path)
        self.name = name
        self._rows = {}
        snap = 0.0
        with open(path) as fh:
            reader = csv.reader(fh)
            header_seen = False
            for row in reader:
                if not row:
                    continue
                if row[0].lstrip().startswith("#"):
                    text = ",".join(row)
                    if "snap=" in text:
                        snap = float(text.split("snap=", 1)[1].split(",")[0].strip())
                    continue
                if not header_seen:
                    header_seen = True
                    continue
                rep = int(row[0])
                vals = np.array([float(v) for v in row[1:]])
                vals[np.abs(vals) <= snap] = 0.0
                self._rows[rep] = vals

    def coefficients(self, instance: GeneratedInstance, replicate: int):
        if replicate not in self._rows:
            raise InvalidInput(f"no external estimate for replicate {replicate}")
        return self._rows[replicate]


# ---------------------------------------------------------------------------
# Experiments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentSpec:
    model: str
    replicates: int
    estimators: tuple
    base_seed: int = 0
    model_params: dict = field(default_factory=dict)
    sample_sizes: Optional[tuple] = None
    output_path: Optional[str] = None
    record_timing: bool = False

    def __post_init__(self):
        if self.replicates < 1:
            raise InvalidInput("replicates must be >= 1")
        if not self.estimators:
            raise InvalidInput("need at least one estimator")


def generate_instance(model: str, seed: int, **params) -> GeneratedInstance:
    if model == datagen.MODEL1:
        return datagen.gen_model1(seed)
    if model == datagen.MODEL2:
        return datagen.gen_model2(seed)
    if model == datagen.HIGHDIM:
        return datagen.gen_highdim(seed)
    if model == datagen.CONSISTENCY:
        return datagen.gen_consistency(seed, n=params["n"])
    if model == datagen.ORTHOGONAL:
        return datagen.gen_orthogonal(
            seed, n=params["n"], p=params["p"],
            beta_true=params["beta_true"], sigma_star=params["sigma_star"],
        )
    raise InvalidInput(f"unknown model {model!r}")


def _run_replicate(spec: ExperimentSpec, replicate: int):
    seed = replicate_seed(spec.base_seed, replicate)
    instance = generate_instance(spec.model, seed, **spec.model_params)
    rows = []
    for estimator in spec.estimators:
        row = {
            "model_tag": instance.model_tag, "seed": seed,
            "replicate": replicate, "estimator": estimator.name,
            "err": "", "acc": "", "tp": "", "tn": "", "fp": "", "fn": "",
            "wall_ms": "", "status": "ok",
        }
        try:
            start = time.perf_counter()
            coef = estimator.coefficients(instance, replicate)
            elapsed_ms = (time.perf_counter() - start) * 1000.0
            report = acc(coef, instance.beta_true)
        except GagaError as exc:
            row["status"] = type(exc).__name__
        else:
            row.update(
                err=report.err, acc=report.acc,
                tp=report.true_positives, tn=report.true_negatives,
                fp=report.false_positives, fn=report.false_negatives,
            )
            if spec.record_timing:
                row["wall_ms"] = elapsed_ms
        rows.append(row)
    return rows


def _summary_rows(spec: ExperimentSpec, data_rows):
    out = []
    for estimator in spec.estimators:
        ok = [r for r in data_rows
              if r["estimator"] == estimator.name and r["status"] == "ok"]
        for kind in ("mean", "std"):
            row = {
                "model_tag": spec.model, "seed": "", "replicate": kind,
                "estimator": estimator.name,
                "err": "", "acc": "", "tp": "", "tn": "", "fp": "", "fn": "",
                "wall_ms": "", "status": "summary",
            }
            if ok:
                for col in ("err", "acc", "tp", "tn", "fp", "fn"):
                    vals = [float(r[col]) for r in ok]
                    row[col] = (statistics.fmean(vals) if kind == "mean"
                                else (statistics.pstdev(vals) if len(vals) > 1 else 0.0))
                if spec.record_timing:
                    walls = [float(r["wall_ms"]) for r in ok if r["wall_ms"] != ""]
                    if walls:
                        row["wall_ms"] = (statistics.fmean(walls) if kind == "mean"
                                          else (statistics.pstdev(walls) if len(walls) > 1 else 0.0))
            out.append(row)
    return out


def write_rows(path, rows, columns=CSV_COLUMNS):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(row.get(k, "")) for k in columns})


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def run_experiment(spec: ExperimentSpec, workers: int = 1):
    """Run every (replicate, estimator) cell, append per-estimator summary
    rows, and write the CSV when an output path is set. Returns the rows."""
    reps = range(spec.replicates)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda r: _run_replicate(spec, r), reps))
    else:
        chunks = [_run_replicate(spec, r) for r in reps]
    rows = [row for chunk in chunks for row in chunk]
    rows.extend(_summary_rows(spec, rows))
    if spec.output_path:
        write_rows(spec.output_path, rows)
    return rows


SWEEP_COLUMNS = ["sample_size", "estimator", "mean_err", "mean_acc", "replicates"]


def run_consistency_sweep(spec: ExperimentSpec, workers: int = 1):
    """One averaged (err, acc) row per (sample size, estimator)."""
    if not spec.sample_sizes:
        raise InvalidInput("sweep needs sample_sizes")
    out = []
    for n in spec.sample_sizes:
        sub = ExperimentSpec(
            model=datagen.CONSISTENCY, replicates=spec.replicates,
            estimators=spec.estimators, base_seed=spec.base_seed,
            model_params={"n": int(n)}, record_timing=False,
        )
        rows = run_experiment(sub, workers=workers)
        for row in rows:
            if row["status"] == "summary" and row["replicate"] == "mean":
                out.append({
                    "sample_size": int(n), "estimator": row["estimator"],
                    "mean_err": row["err"], "mean_acc": row["acc"],
                    "replicates": spec.replicates,
                })
    if spec.output_path:
        write_rows(spec.output_path, out, columns=SWEEP_COLUMNS)
    return out


# ---------------------------------------------------------------------------
# Theory validation on orthogonal designs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TheoremValidationReport:
    truncation_rate_zero_coef: float
    retention_rate_nonzero_coef: float
    normality_statistic: float
    tuning_limit_error: float
    sample_size: int
    replicates: int
    zero_positions: int
    zero_truncated: int
    nonzero_positions: int
    nonzero_retained: int


def validate_theorems(n, replicates, beta_star, sigma_star, config=None,
                      base_seed=0) -> TheoremValidationReport:
    """Empirical rates on exactly orthogonal designs: how often zero
    coefficients are truncated, how often nonzero ones survive, the KS
    distance of the standardized nonzero-coordinate errors from N(0,1), and
    the median gap between the final tuning weight and its large-sample limit."""
    if config is None:
        config = GagaConfig()
    beta_star = np.asarray(beta_star, dtype=float)
    sigma_star = np.asarray(sigma_star, dtype=float)
    p = beta_star.shape[0]
    zero_mask = beta_star == 0.0
    nonzero_mask = ~zero_mask
    zero_truncated = 0
    nonzero_retained = 0
    standardized = []
    tuning_errors = []
    for rep in range(replicates):
        seed = replicate_seed(base_seed, rep)
        inst = datagen.gen_orthogonal(seed, n, p, beta_star, sigma_star)
        est = gaga_fit(inst.problem, config)
        zero_truncated += int(np.sum(~est.support[zero_mask]))
        nonzero_retained += int(np.sum(est.support[nonzero_mask]))
        diffs = est.coefficients[nonzero_mask] - beta_star[nonzero_mask]
        standardized.extend(
            math.sqrt(n) * math.sqrt(s) * d
            for s, d in zip(sigma_star[nonzero_mask], diffs)
        )
        limits = 1.0 / beta_star[nonzero_mask] ** 2
        tuning_errors.extend(np.abs(est.tuning[nonzero_mask] - limits))
    zero_total = int(np.sum(zero_mask)) * replicates
    nonzero_total = int(np.sum(nonzero_mask)) * replicates
    return TheoremValidationReport(
        truncation_rate_zero_coef=(zero_truncated / zero_total) if zero_total else 0.0,
        retention_rate_nonzero_coef=(nonzero_retained / nonzero_total) if nonzero_total else 0.0,
        normality_statistic=ks_distance(standardized) if standardized else 0.0,
        tuning_limit_error=float(np.median(tuning_errors)) if tuning_errors else 0.0,
        sample_size=int(n),
        replicates=int(replicates),
        zero_positions=zero_total,
        zero_truncated=zero_truncated,
        nonzero_positions=nonzero_total,
        nonzero_retained=nonzero_retained,
    )


# ---------------------------------------------------------------------------
# Timing benchmark
# ---------------------------------------------------------------------------

BENCH_COLUMNS = ["p", "n", "estimator", "mean_s", "median_s", "repeats"]


def _highdim_like(seed, n, p):
    corr = np.full((p, p), 0.5)
    np.fill_diagonal(corr, 1.0)
    x = datagen.correlated_gaussian_rows(corr, n, datagen.stream_rng(seed, "design"))
    beta = np.zeros(p)
    nz = datagen.stream_rng(seed, "support").choice(p, size=p // 2, replace=False)
    beta[nz] = datagen.stream_rng(seed, "coefficients").uniform(0.0, 5.0, size=p // 2)
    noise = datagen.stream_rng(seed, "noise").standard_normal(n)
    from .types import RegressionProblem
    return RegressionProblem(design=x, response=x @ beta + noise)


def benchmark_timing(dimensions, n, repeats, config=None, base_seed=0,
                     output_path=None):
    """Mean/median wall-clock per fit for the plain and QR solvers at each p."""
    if config is None:
        config = GagaConfig()
    rows = []
    for p in dimensions:
        if p > n:
            raise InvalidInput(f"need p <= n, got p={p}, n={n}")
        times = {"gaga": [], "gaga_qr": []}
        for rep in range(repeats):
            problem = _highdim_like(replicate_seed(base_seed, rep), n, p)
            for name, fit in (("gaga", gaga_fit), ("gaga_qr", gaga_qr_fit)):
                start = time.perf_counter()
                fit(problem, config)
                times[name].append(time.perf_counter() - start)
        for name in ("gaga", "gaga_qr"):
            rows.append({
                "p": int(p), "n": int(n), "estimator": name,
                "mean_s": statistics.fmean(times[name]),
                "median_s": statistics.median(times[name]),
                "repeats": int(repeats),
            })
    if output_path:
        write_rows(output_path, rows, columns=BENCH_COLUMNS)
    return rows
