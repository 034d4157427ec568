"""Command-line front end.

Configuration is one JSON document; command-line flags override its fields.
Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 evaluation error, 4 quadrature failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, goursat, verification
from .geometry import PhysicalConstants, SpacetimePoint, classify, from_lightcone
from .potentials import (
    InterpolationError,
    PotentialSpec,
    QuadratureError,
    Zero,
    big_k_squared,
    f_accumulate,
    potential_from_dict,
)
from .propagators import (
    ConeError,
    delta_1_free,
    delta_c_free,
    delta_s_free,
    psi_minus,
    psi_plus,
    schwinger_propagator,
    volkov_psi,
)
from .special_functions import DomainError

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_EVAL, EXIT_QUAD = 0, 1, 2, 3, 4

PROPAGATORS = ("delta_s", "delta_1", "delta_c", "psi_plus", "psi_minus")
FREE_COLUMNS = [
    "t", "z", "x_perp", "region", "lambda_sq",
    "delta_re", "delta_im", "smooth_re", "smooth_im",
]
VOLKOV_COLUMNS = FREE_COLUMNS + ["xi", "k0_eff", "phase_re", "phase_im"]


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    constants: PhysicalConstants
    potential: PotentialSpec = field(default_factory=Zero)
    propagator: str = "psi_plus"
    mode: str = "psi"
    source: SpacetimePoint = field(default_factory=SpacetimePoint)
    points: list = field(default_factory=list)
    goursat: dict = field(default_factory=dict)
    tolerances: dict | float | None = None
    suites: list = field(default_factory=list)
    seed: int = 0
    fmt: str = "csv"
    out: str | None = None
    workers: int = 1


def _axis(spec, name) -> np.ndarray:
    if isinstance(spec, (int, float)):
        return np.array([float(spec)])
    if not (isinstance(spec, list) and len(spec) == 3):
        raise ConfigError(f"grid.{name} must be a number or [lo, hi, count]")
    lo, hi, n = spec
    if int(n) < 1:
        raise ConfigError(f"grid.{name}: sample count must be >= 1")
    return np.linspace(float(lo), float(hi), int(n))


def _grid_points(grid: dict, k: PhysicalConstants) -> list:
    """Grid points as ``(t, z, x_perp)`` in deterministic row-major order."""
    if not grid:
        return []
    x_perp = _axis(grid.get("x_perp", 0.0), "x_perp")
    if "xi" in grid or "eta" in grid:
        pts = []
        for xi in _axis(grid.get("xi", 0.0), "xi"):
            for eta in _axis(grid.get("eta", 0.0), "eta"):
                t, z = from_lightcone(float(xi), float(eta), k)
                pts.extend((t, z, float(x)) for x in x_perp)
        return pts
    return [
        (float(t), float(z), float(x))
        for t in _axis(grid.get("t", 0.0), "t")
        for z in _axis(grid.get("z", 0.0), "z")
        for x in x_perp
    ]


def _constants(doc: dict) -> PhysicalConstants:
    units = doc.get("units", "natural")
    e = float(doc.get("e", 1.0))
    k0 = float(doc.get("k0", 1.0))
    if units == "natural":
        return PhysicalConstants.natural(e=e, k0=k0)
    if isinstance(units, dict):
        return PhysicalConstants(float(units["c"]), float(units["hbar"]), e, k0)
    raise ConfigError("units must be 'natural' or {\"c\": ..., \"hbar\": ...}")


def build_config(args: argparse.Namespace) -> RunConfig:
    doc = {}
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise ConfigError(f"config file {path} does not exist")
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path}: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
    try:
        k = _constants(doc)
        potential = potential_from_dict(doc.get("potential", {"family": "zero"}))
        src = doc.get("source", {})
        cfg = RunConfig(
            constants=k,
            potential=potential,
            propagator=doc.get("propagator", "psi_plus"),
            mode=doc.get("mode", "psi"),
            source=SpacetimePoint(**{c: float(src.get(c, 0.0)) for c in ("t", "x1", "x2", "z")}),
            points=_grid_points(doc.get("grid", {}), k),
            goursat=dict(doc.get("goursat", {})),
            tolerances=doc.get("tolerances"),
            suites=list(doc.get("suites", [])),
            seed=int(doc.get("seed", 0)),
            fmt=doc.get("format", "csv"),
            out=doc.get("out"),
            workers=int(doc.get("workers", 1)),
        )
    except (KeyError, TypeError, ValueError, OSError, InterpolationError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    if args.seed is not None:
        cfg.seed = args.seed
    if args.format is not None:
        cfg.fmt = args.format
    if args.out is not None:
        cfg.out = args.out
    if getattr(args, "suite", None):
        cfg.suites = list(args.suite)
    if args.workers is not None:
        cfg.workers = args.workers
    if cfg.fmt not in ("csv", "json"):
        raise ConfigError("format must be csv or json")
    if cfg.propagator not in PROPAGATORS:
        raise ConfigError(f"propagator must be one of {', '.join(PROPAGATORS)}")
    if cfg.mode not in ("psi", "schwinger"):
        raise ConfigError("mode must be 'psi' or 'schwinger'")
    if cfg.workers < 1:
        raise ConfigError("workers must be >= 1")
    tols = cfg.tolerances
    values = tols.values() if isinstance(tols, dict) else ([] if tols is None else [tols])
    if any(not float(v) > 0 for v in values):
        raise ConfigError("tolerances must be > 0")
    for name in cfg.suites:
        if name not in verification.SUITE_NAMES:
            raise ConfigError(f"unknown suite {name!r}")
    return cfg


# --------------------------------------------------------------------------
# point evaluators (module level so the worker pool can pickle them)


def _free_row(job):
    (t, z, x_perp), name, k = job
    p = SpacetimePoint(t, x_perp, 0.0, z)
    cls = classify(p, k)
    if name == "psi_plus":
        ct = k.c * t
        tau_sq = (ct - z) * (ct + z)
        if tau_sq < 0:
            raise DomainError("psi_plus requires c^2 t^2 >= z^2")
        val = psi_plus(math.sqrt(tau_sq), x_perp, k.k0)
    elif name == "psi_minus":
        if not cls.lambda_sq < 0:
            raise DomainError("psi_minus requires a spacelike point")
        val = psi_minus(math.sqrt(-cls.lambda_sq), k.k0)
    else:
        fn = {"delta_s": delta_s_free, "delta_1": delta_1_free, "delta_c": delta_c_free}[name]
        val = fn(cls, k.k0)
    d, s = complex(val.delta_coeff), complex(val.smooth)
    return [t, z, x_perp, val.region.region.value, val.region.lambda_sq,
            d.real, d.imag, s.real, s.imag]


def _volkov_row(job):
    (t, z, x_perp), mode, spec, source, k = job
    p = SpacetimePoint(t, x_perp, 0.0, z)
    if mode == "psi":
        val = volkov_psi(p, spec, k)
    else:
        val = schwinger_propagator(p, source, spec, k)
    xi = k.c * t - z
    d, s, ph = complex(val.delta_coeff), complex(val.smooth), complex(val.phase)
    return [t, z, x_perp, val.region.region.value, val.region.lambda_sq,
            d.real, d.imag, s.real, s.imag, xi, val.effective_k0, ph.real, ph.imag]


def _map(fn, jobs, workers: int):
    if workers == 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    chunk = max(1, len(jobs) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order regardless of completion order
        return list(pool.map(fn, jobs, chunksize=chunk))


# --------------------------------------------------------------------------
# output


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def format_rows(columns, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"columns": columns, "rows": rows}, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# --------------------------------------------------------------------------
# commands


def cmd_eval_free(cfg: RunConfig) -> int:
    if not cfg.points:
        raise ConfigError("eval-free needs a grid")
    jobs = [(pt, cfg.propagator, cfg.constants) for pt in cfg.points]
    rows = _map(_free_row, jobs, cfg.workers)
    _emit(format_rows(FREE_COLUMNS, rows, cfg.fmt), cfg.out)
    return EXIT_OK


def cmd_eval_volkov(cfg: RunConfig) -> int:
    if not cfg.points:
        raise ConfigError("eval-volkov needs a grid")
    jobs = [(pt, cfg.mode, cfg.potential, cfg.source, cfg.constants) for pt in cfg.points]
    rows = _map(_volkov_row, jobs, cfg.workers)
    _emit(format_rows(VOLKOV_COLUMNS, rows, cfg.fmt), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    results = verification.run_all(cfg.suites, cfg.seed, cfg.tolerances)
    doc = verification.report(results)
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        print(
            f"{flag}  {r.name:<15} achieved {r.achieved:.3e}  required {r.required_tol:.1e}",
            file=sys.stderr,
        )
    _emit(json.dumps(doc, indent=2) + "\n", cfg.out)
    return EXIT_OK if doc["all_pass"] else EXIT_VERIFY


def cmd_goursat(cfg: RunConfig) -> int:
    g = cfg.goursat
    xi_max = float(g.get("xi_max", 2.0))
    eta_max = float(g.get("eta_max", 2.0))
    n = int(g.get("n", 64))
    levels = int(g.get("levels", 4))
    n0 = int(g.get("n0", 32))
    if n < 2 or n0 < 2 or levels < 0:
        raise ConfigError("goursat: n, n0 must be >= 2 and levels >= 0")
    if "ksq" in g:
        a_sq = float(g["ksq"])
        ksq = a_sq
        f = lambda xi: a_sq * np.asarray(xi, dtype=float)  # noqa: E731
    else:
        k1, k2 = float(g.get("k1", 0.0)), float(g.get("k2", 0.0))
        spec, k = cfg.potential, cfg.constants
        ksq = lambda xi: big_k_squared(spec, k1, k2, xi, k)  # noqa: E731
        f = lambda xi: f_accumulate(spec, k1, k2, xi, k)  # noqa: E731
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", goursat.GoursatInstabilityWarning)
        grid = goursat.solve_goursat(ksq, xi_max, eta_max, n, n, f=f)
        study = goursat.convergence_study(ksq, xi_max, eta_max, levels, f=f, n0=n0)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    rows = []
    for i, xi in enumerate(grid.xi):
        for j, eta in enumerate(grid.eta):
            phi, ref = float(grid.values[i, j]), float(grid.analytic[i, j])
            rows.append([float(xi), float(eta), phi, ref, abs(phi - ref)])
    orders = [math.nan] + study.orders
    conv = [[h, e, o] for (h, e), o in zip(study.rows(), orders)]
    grid_cols = ["xi", "eta", "phi", "analytic", "error"]
    conv_cols = ["h", "max_error", "order"]
    if cfg.fmt == "json":
        doc = {
            "grid": {"columns": grid_cols, "rows": rows},
            "convergence": {"columns": conv_cols, "rows": [[h, e, None if math.isnan(o) else o] for h, e, o in conv]},
            "unstable": grid.unstable or study.unstable,
        }
        _emit(json.dumps(doc, indent=1) + "\n", cfg.out)
    else:
        _emit(format_rows(grid_cols, rows, "csv"), cfg.out)
        table = format_rows(conv_cols, conv, "csv")
        if cfg.out is None:
            sys.stdout.write(table)
        else:
            out = Path(cfg.out)
            _emit(table, str(out.with_name(out.stem + "_convergence" + out.suffix)))
    return EXIT_OK


COMMANDS = {
    "eval-free": cmd_eval_free,
    "eval-volkov": cmd_eval_volkov,
    "verify": cmd_verify,
    "goursat": cmd_goursat,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kfgvolkov",
        description="Free and plane-wave Klein-Fock-Gordon fundamental solutions.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--seed", type=int, help="seed for randomized suites")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--workers", type=int, help="worker processes for grid evaluation")
        if name == "verify":
            p.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUAD
    except (ConeError, DomainError, ValueError, ArithmeticError) as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
