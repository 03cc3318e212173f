"""Command-line front end.

Subcommands
-----------
simulate      ensemble of information paths as CSV (path_id,t,xi,x_hidden)
filter        posterior trajectory along one simulated path
innovations   innovations decomposition along one simulated path
experiment    one of the named statistical studies

Runs are configured by a JSON file (``--config``) deep-merged over built-in
defaults, with ``--set key.path=value`` and shortcut flags applied last.
Every CSV starts with comment lines recording the tool version, subcommand,
fully resolved configuration and seed; identical invocations are
byte-identical.  Exit codes: 0 success, 1 usage error, 2 validation or
numerical error, 3 study failure (some |z| above threshold).
"""

from __future__ import annotations

import argparse
import contextlib
import copy
import csv
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import LevyInfoError, UsageError
from .experiments import (
    bridge_study,
    convergence_study,
    esscher_consistency_study,
    factorization_study,
    representation_equivalence_study,
)
from .filtering import estimate_message, posterior_update, sequential_update
from .innovations import innovations_path
from .noise import Interval, make_noise_model
from .prior import prior_from_atoms, prior_from_density
from .rng import stream
from .simulate import TimeGrid, simulate_ensemble, simulate_information_path
from .stats import StudyReport

__all__ = ["main"]

EXPERIMENTS = ("convergence", "factorization", "esscher", "representation", "bridge")

_BASE_CONFIG = {
    "model": {"family": "Brownian", "params": []},
    "prior": {"atoms": [[-1.0, 0.5], [1.0, 0.5]]},
    "grid": {"t_max": 1.0, "steps": 100},
    "paths": 2000,
    "seed": 0,
}

_STUDY_DEFAULTS = {
    "convergence": {"times": [1.0, 4.0, 16.0], "epsilon": 0.5, "threshold": 3.5},
    "factorization": {"alpha_im": [0.3, 0.6, 0.9], "beta_im": [0.2, 0.5, 0.8], "t": 1.0, "threshold": 3.5},
    "esscher": {"lambda": 0.25, "t": 1.0, "threshold": 3.5},
    "representation": {"x": 0.5, "t": 1.0, "threshold": 3.5},
    "bridge": {"x": 0.3, "horizon": 2.0, "s": 0.5, "t": 1.0, "threshold": 3.5},
}

_STUDY_MODELS = {
    "representation": {"family": "VarianceGamma", "params": [2.0]},
    "bridge": {"family": "Gamma", "params": [1.0, 1.0]},
}


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


def _merge(base, override):
    if isinstance(base, dict) and isinstance(override, dict):
        merged = dict(base)
        for key, value in override.items():
            merged[key] = _merge(base.get(key), value) if key in base else value
        return merged
    return override


def _apply_set(config: dict, assignment: str) -> None:
    path, sep, raw = assignment.partition("=")
    if not sep or not path:
        raise UsageError(f"--set needs key.path=value, got {assignment!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    node = config
    keys = path.split(".")
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise UsageError(f"--set {path}: {key!r} is not a configuration section")
    node[keys[-1]] = value


def _resolve_config(args) -> dict:
    # deep copies: --set writes into nested sections and must never leak
    # into the module-level defaults across invocations
    config = copy.deepcopy(_BASE_CONFIG)
    study = getattr(args, "name", None)
    if study is not None:
        config["study"] = copy.deepcopy(_STUDY_DEFAULTS[study])
        if study in _STUDY_MODELS:
            config["model"] = copy.deepcopy(_STUDY_MODELS[study])
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                from_file = json.load(fh)
        except OSError as exc:
            raise UsageError(f"config file {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file {args.config} is not valid JSON: {exc}") from exc
        if not isinstance(from_file, dict):
            raise UsageError(f"config file {args.config} must hold a JSON object")
        config = _merge(config, from_file)
    for assignment in args.set or ():
        _apply_set(config, assignment)
    if args.seed is not None:
        config["seed"] = args.seed
    if args.paths is not None:
        config["paths"] = args.paths
    if getattr(args, "threshold", None) is not None:
        config.setdefault("study", {})["threshold"] = args.threshold
    allowed = {"model", "prior", "grid", "paths", "seed", "study"}
    unknown = set(config) - allowed
    if unknown:
        raise UsageError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    return config


@contextlib.contextmanager
def _config_key(key: str):
    """Re-raise validation errors with the offending config key named."""
    try:
        yield
    except UsageError as exc:
        raise UsageError(f"config key '{key}': {exc}") from exc
    except LevyInfoError as exc:
        raise type(exc)(f"config key '{key}': {type(exc).__name__}: {exc}") from exc


def _build_model(config: dict):
    section = config["model"]
    with _config_key("model"):
        if not isinstance(section, dict) or "family" not in section:
            raise UsageError("expected an object with a 'family' key")
        return make_noise_model(
            section["family"], section.get("params", []), section.get("drift", 0.0)
        )


def _density_prior(section: dict):
    name = section["density"]
    n = int(section.get("n", 64))
    if name == "uniform":
        lo, hi = float(section["lo"]), float(section["hi"])
        return prior_from_density(lambda x: np.ones_like(x), Interval(lo, hi), n)
    if name == "gaussian-truncated":
        mean = float(section.get("mean", 0.0))
        sd = float(section.get("sd", 1.0))
        lo, hi = float(section["lo"]), float(section["hi"])
        return prior_from_density(
            lambda x: np.exp(-0.5 * ((x - mean) / sd) ** 2), Interval(lo, hi), n
        )
    if name == "gamma-shifted":
        theta = float(section["theta"])
        r = float(section["r"])
        u_max = float(section.get("u_max", 40.0))
        return prior_from_density(
            lambda x: (1.0 - x) ** (r - 1.0) * np.exp(-theta * (1.0 - x)),
            Interval(1.0 - u_max, 1.0),
            n,
        )
    raise UsageError(f"unknown density recipe {name!r}; expected uniform, gaussian-truncated or gamma-shifted")


def _build_prior(config: dict):
    section = config["prior"]
    with _config_key("prior"):
        if not isinstance(section, dict):
            raise UsageError("expected an object with 'atoms' or 'density'")
        if "atoms" in section:
            return prior_from_atoms([(float(x), float(w)) for x, w in section["atoms"]])
        if "density" in section:
            try:
                return _density_prior(section)
            except KeyError as exc:
                raise UsageError(f"density recipe is missing key {exc}") from exc
        raise UsageError("expected an object with 'atoms' or 'density'")


def _build_grid(config: dict) -> TimeGrid:
    section = config["grid"]
    with _config_key("grid"):
        if not isinstance(section, dict):
            raise UsageError("expected an object with 't_max'/'steps' or 'times'")
        if "times" in section:
            times = [float(v) for v in section["times"]]
            if not times or times[0] != 0.0:
                times = [0.0] + times
            return TimeGrid(np.asarray(times))
        if "t_max" in section or "steps" in section:
            return TimeGrid.regular(float(section.get("t_max", 1.0)), int(section.get("steps", 100)))
        raise UsageError("expected an object with 't_max'/'steps' or 'times'")


def _seed(config: dict) -> int:
    with _config_key("seed"):
        return int(config["seed"])


def _paths(config: dict) -> int:
    with _config_key("paths"):
        n = int(config["paths"])
        if n < 1:
            raise UsageError(f"paths must be >= 1, got {n}")
        return n


def _study_value(study: dict, key: str, cast=float):
    with _config_key(f"study.{key}"):
        if key not in study:
            raise UsageError("missing study option")
        return cast(study[key])


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _emit(out_path, subcommand: str, config: dict, columns, rows) -> None:
    def write(fh):
        fh.write(f"# levy-info {__version__}\n")
        fh.write(f"# subcommand: {subcommand}\n")
        fh.write(f"# config: {json.dumps(config, sort_keys=True, separators=(',', ':'))}\n")
        fh.write(f"# seed: {config['seed']}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])

    if out_path is None:
        write(sys.stdout)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            write(fh)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_simulate(args) -> int:
    config = _resolve_config(args)
    model = _build_model(config)
    prior = _build_prior(config)
    grid = _build_grid(config)
    n_paths = _paths(config)
    seed = _seed(config)
    messages, xi = simulate_ensemble(model, prior, grid, n_paths, seed)
    times = grid.times
    rows = (
        (pid, times[j], xi[pid, j], messages[pid])
        for pid in range(n_paths)
        for j in range(times.size)
    )
    _emit(args.out, "simulate", config, ("path_id", "t", "xi", "x_hidden"), rows)
    return 0


def _filter_rows(model, prior, grid, values, with_weights):
    posterior = posterior_update(prior, model, 0.0, 0.0)
    times = grid.times
    for j in range(times.size):
        if j > 0:
            posterior = sequential_update(
                posterior, model, values[j] - values[j - 1], times[j] - times[j - 1]
            )
        if times[j] > 0.0:
            i0 = estimate_message(posterior, model, values[j], times[j]).i0
        else:
            i0 = math.nan
        row = [times[j], values[j], posterior.mean, posterior.variance, i0]
        if with_weights:
            row.extend(posterior.weights.tolist())
        yield row


def _cmd_filter(args) -> int:
    config = _resolve_config(args)
    model = _build_model(config)
    prior = _build_prior(config)
    grid = _build_grid(config)
    seed = _seed(config)
    path = simulate_information_path(model, prior, grid, stream(seed, 0))
    columns = ["t", "xi", "post_mean", "post_var", "i0_estimate"]
    if args.weights:
        columns.extend(f"w_{i}" for i in range(len(prior)))
    rows = _filter_rows(model, prior, grid, path.values, args.weights)
    _emit(args.out, "filter", config, columns, rows)
    return 0


def _cmd_innovations(args) -> int:
    config = _resolve_config(args)
    model = _build_model(config)
    prior = _build_prior(config)
    grid = _build_grid(config)
    seed = _seed(config)
    path = simulate_information_path(model, prior, grid, stream(seed, 0))
    dec = innovations_path(path, prior)
    rows = zip(grid.times, dec.xi, dec.yhat, dec.integral, dec.M)
    _emit(args.out, "innovations", config, ("t", "xi", "yhat", "int_yhat", "M"), rows)
    return 0


def _run_study(name: str, config: dict) -> StudyReport:
    model = _build_model(config)
    study = config.get("study", {})
    if not isinstance(study, dict):
        raise UsageError("config key 'study': expected an object")
    threshold = float(study.get("threshold", 3.5))
    n_paths = _paths(config)
    seed = _seed(config)
    if name == "convergence":
        prior = _build_prior(config)
        times = _study_value(study, "times", lambda v: [float(u) for u in v])
        epsilon = _study_value(study, "epsilon")
        return convergence_study(model, prior, times, n_paths, seed, epsilon, threshold)
    if name == "factorization":
        prior = _build_prior(config)
        alphas = _study_value(study, "alpha_im", lambda v: [float(u) for u in v])
        betas = _study_value(study, "beta_im", lambda v: [float(u) for u in v])
        t = _study_value(study, "t")
        rows, seen = [], set()
        for a in alphas:
            for b in betas:
                report = factorization_study(model, prior, 1j * a, 1j * b, t, n_paths, seed, threshold)
                for row in report.rows:
                    if row.quantity not in seen:
                        seen.add(row.quantity)
                        rows.append(row)
        return StudyReport("factorization", tuple(rows), threshold)
    if name == "esscher":
        lam = _study_value(study, "lambda")
        t = _study_value(study, "t")
        return esscher_consistency_study(model, lam, t, n_paths, seed, threshold)
    if name == "representation":
        x = _study_value(study, "x")
        t = _study_value(study, "t")
        return representation_equivalence_study(model, x, t, n_paths, seed, threshold)
    if name == "bridge":
        x = _study_value(study, "x")
        horizon = _study_value(study, "horizon")
        s = _study_value(study, "s")
        t = _study_value(study, "t")
        return bridge_study(model, x, horizon, s, t, n_paths, seed, threshold)
    raise UsageError(f"unknown experiment {name!r}")  # pragma: no cover


def _cmd_experiment(args) -> int:
    config = _resolve_config(args)
    report = _run_study(args.name, config)
    rows = (
        (r.quantity, r.estimate, r.reference, r.stderr, r.z)
        for r in report.rows
    )
    _emit(args.out, f"experiment {args.name}", config,
          ("quantity", "estimate", "reference", "stderr", "z"), rows)
    print(report.summary(), file=sys.stderr)
    return 0 if report.passed else 3


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="JSON configuration file")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override a config entry, e.g. --set model.family=Gamma")
    parser.add_argument("--seed", type=int, help="random seed (overrides config)")
    parser.add_argument("--paths", type=int, help="number of Monte Carlo paths")
    parser.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levy-info",
        description="Simulation, filtering and verification of Levy information processes.",
    )
    parser.add_argument("--version", action="version", version=f"levy-info {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="simulate an ensemble of paths")
    _add_common(p_sim)

    p_fil = sub.add_parser("filter", help="posterior trajectory along one simulated path")
    _add_common(p_fil)
    p_fil.add_argument("--weights", action="store_true", help="append per-atom weight columns")

    p_inn = sub.add_parser("innovations", help="innovations decomposition of one path")
    _add_common(p_inn)

    p_exp = sub.add_parser("experiment", help="run a named statistical study")
    p_exp.add_argument("name", choices=EXPERIMENTS)
    _add_common(p_exp)
    p_exp.add_argument("--threshold", type=float, help="|z| pass threshold (default 3.5)")

    return parser


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    handlers = {
        "simulate": _cmd_simulate,
        "filter": _cmd_filter,
        "innovations": _cmd_innovations,
        "experiment": _cmd_experiment,
    }
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LevyInfoError as exc:
        message = str(exc)
        name = type(exc).__name__
        prefix = "" if name in message else f"{name}: "
        print(f"error: {prefix}{message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
