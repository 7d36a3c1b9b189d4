"""Command-line experiment runner.

Subcommands: fit, experiment, sweep, validate, bench. Experiment/sweep configs
are plain ``key = value`` files (see README for the key list); command-line
flags override config values. Errors exit nonzero with a single
machine-readable ``error kind=... detail=...`` line on stderr.
"""

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import datagen, harness
from .errors import GagaError, InvalidInput
from .harness import ExperimentSpec, ExternalEstimates, GagaEstimator, GagaQrEstimator
from .qr import gaga_qr_fit
from .solver import gaga_fit
from .types import GagaConfig, RegressionProblem


def _load_matrix(path):
    first = Path(path).open().readline()
    try:
        [float(v) for v in first.strip().split(",")]
    except ValueError:
        has_header = True
    else:
        has_header = False
    return np.loadtxt(path, delimiter=",", skiprows=1 if has_header else 0, ndmin=2)


def _parse_config_file(path):
    cfg = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidInput(f"bad config line: {line!r}")
        key, value = line.split("=", 1)
        cfg[key.strip()] = value.strip()
    return cfg


def _solver_config(args, cfg=None):
    cfg = cfg or {}
    alpha = args.alpha if args.alpha is not None else float(cfg.get("alpha", 2.0))
    iters = args.iterations if args.iterations is not None else int(cfg.get("iterations", 50))
    mode = args.variance_mode or cfg.get("variance_mode", "fixed")
    return GagaConfig(iterations=iters, alpha=alpha, variance_mode=mode)


def _estimators(names, config):
    out = []
    for name in names:
        name = name.strip()
        if name == "gaga":
            out.append(GagaEstimator(config=config))
        elif name == "gaga_qr":
            out.append(GagaQrEstimator(config=config))
        elif name.startswith("external:"):
            out.append(ExternalEstimates(name.split(":", 1)[1]))
        else:
            raise InvalidInput(f"unknown estimator {name!r}")
    return tuple(out)


def _cmd_fit(args):
    data = _load_matrix(args.design)
    if args.response:
        y = _load_matrix(args.response).ravel()
        x = data
    else:
        x, y = data[:, :-1], data[:, -1]
    problem = RegressionProblem(design=x, response=y)
    config = _solver_config(args)
    fit = gaga_qr_fit if args.qr else gaga_fit
    est = fit(problem, config)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "coefficient", "support"])
        for j, (c, s) in enumerate(zip(est.coefficients, est.support)):
            writer.writerow([j + 1, repr(float(c)), int(s)])
    return 0


def _experiment_spec(args, cfg, need_sizes=False):
    config = _solver_config(args, cfg)
    est_names = cfg.get("estimators", "gaga").split(",")
    model = cfg.get("model", datagen.MODEL1)
    model_params = {}
    if model == datagen.CONSISTENCY and "n" in cfg:
        model_params["n"] = int(cfg["n"])
    sizes = None
    raw_sizes = cfg.get("sample_sizes")
    if raw_sizes:
        sizes = tuple(int(s) for s in raw_sizes.split(","))
    if need_sizes and not sizes:
        raise InvalidInput("sweep needs sample_sizes in the config")
    replicates = args.replicates if args.replicates is not None else int(cfg.get("replicates", 100))
    base_seed = args.seed if args.seed is not None else int(cfg.get("base_seed", 0))
    out = args.out or cfg.get("out")
    if not out:
        raise InvalidInput("no output path (set --out or out= in the config)")
    return ExperimentSpec(
        model=model,
        replicates=replicates,
        estimators=_estimators(est_names, config),
        base_seed=base_seed,
        model_params=model_params,
        sample_sizes=sizes,
        output_path=out,
        record_timing=cfg.get("record_timing", "false").lower() in ("1", "true", "yes"),
    )


def _cmd_experiment(args):
    spec = _experiment_spec(args, _parse_config_file(args.config))
    harness.run_experiment(spec, workers=args.workers)
    return 0


def _cmd_sweep(args):
    spec = _experiment_spec(args, _parse_config_file(args.config), need_sizes=True)
    harness.run_consistency_sweep(spec, workers=args.workers)
    return 0


def _cmd_validate(args):
    beta = np.array([float(v) for v in args.beta_star.split(",")])
    sigma = np.array([float(v) for v in args.sigma_star.split(",")])
    report = harness.validate_theorems(
        n=args.n,
        replicates=args.replicates if args.replicates is not None else 100,
        beta_star=beta,
        sigma_star=sigma,
        config=_solver_config(args),
        base_seed=args.seed if args.seed is not None else 0,
    )
    rows = [{k: getattr(report, k) for k in (
        "truncation_rate_zero_coef", "retention_rate_nonzero_coef",
        "normality_statistic", "tuning_limit_error", "sample_size",
        "replicates", "zero_positions", "zero_truncated",
        "nonzero_positions", "nonzero_retained")}]
    if args.out:
        harness.write_rows(args.out, rows, columns=list(rows[0]))
    for key, value in rows[0].items():
        print(f"{key}={value}")
    return 0


def _cmd_bench(args):
    dims = [int(v) for v in args.dimensions.split(",")]
    rows = harness.benchmark_timing(
        dims, n=args.n, repeats=args.repeats,
        config=_solver_config(args),
        base_seed=args.seed if args.seed is not None else 0,
        output_path=args.out,
    )
    for row in rows:
        print(f"p={row['p']} estimator={row['estimator']} mean_s={row['mean_s']:.4f}")
    return 0


def _add_solver_flags(sub):
    sub.add_argument("--alpha", type=float, default=None)
    sub.add_argument("--iterations", type=int, default=None)
    sub.add_argument("--variance-mode", choices=["fixed", "estimated"],
                     dest="variance_mode", default=None)
    sub.add_argument("--seed", type=int, default=None)


def build_parser():
    parser = argparse.ArgumentParser(prog="gaga", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p_fit = subs.add_parser("fit", help="fit a single problem from CSV")
    p_fit.add_argument("--design", required=True)
    p_fit.add_argument("--response", default=None,
                       help="response CSV; omitted = last design column")
    p_fit.add_argument("--qr", action="store_true", help="use the QR variant")
    p_fit.add_argument("--out", required=True)
    _add_solver_flags(p_fit)
    p_fit.set_defaults(func=_cmd_fit)

    for name, func in (("experiment", _cmd_experiment), ("sweep", _cmd_sweep)):
        sub = subs.add_parser(name)
        sub.add_argument("--config", required=True)
        sub.add_argument("--replicates", type=int, default=None)
        sub.add_argument("--workers", type=int, default=1)
        sub.add_argument("--out", default=None)
        _add_solver_flags(sub)
        sub.set_defaults(func=func)

    p_val = subs.add_parser("validate", help="empirical theory checks")
    p_val.add_argument("--n", type=int, required=True)
    p_val.add_argument("--replicates", type=int, default=None)
    p_val.add_argument("--beta-star", dest="beta_star", required=True)
    p_val.add_argument("--sigma-star", dest="sigma_star", required=True)
    p_val.add_argument("--out", default=None)
    _add_solver_flags(p_val)
    p_val.set_defaults(func=_cmd_validate)

    p_bench = subs.add_parser("bench", help="timing comparison")
    p_bench.add_argument("--dimensions", required=True)
    p_bench.add_argument("--n", type=int, required=True)
    p_bench.add_argument("--repeats", type=int, default=10)
    p_bench.add_argument("--out", default=None)
    _add_solver_flags(p_bench)
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GagaError, OSError, ValueError) as exc:
        print(f'error kind={type(exc).__name__} detail="{exc}"', file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
