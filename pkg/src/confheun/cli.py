"""Command-line front end: find reductions, evaluate and verify series, sweep a parameter.

Exit codes: 0 success, 1 bad input, 2 no admissible reduction (or failed verification).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import platform
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .che import CheParams
from .evaluator import NMAX, TOL_ASSEMBLE, assemble, pointwise_residual, solution_from_spec
from .hypergeo import TOL_SERIES
from .kernels import TOL_ROOT
from .recurrence import ExpansionError
from .reduction import (NEWTON_STARTS, ReductionOutcome, constraint_residual, is_admissible_e,
                        solve_reduction, solve_reduction_general)

EXIT_OK, EXIT_USAGE, EXIT_NO_SOLUTION = 0, 1, 2
VERIFY_TOL = 1e-6

FREE_PARAMS = {
    "A": ("delta", "epsilon", "alpha"),
    "C": ("gamma", "epsilon", "alpha"),
    "D": ("delta", "alpha"),
}
# fixed by the reduction itself
DEPENDENT_PARAM = {"A": "gamma", "C": "delta", "D": "gamma"}


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    family: str
    order: int
    params: dict[str, float]
    z_start: float = 0.1
    z_stop: float = 0.9
    z_count: int = 9
    fmt: str = "json"
    out: str | None = None
    seed: int = 0
    tol_series: float = TOL_SERIES
    tol_root: float = TOL_ROOT
    nmax: int = NMAX
    general: bool = False
    starts: int = NEWTON_STARTS
    root: int = 0
    sweep: dict = field(default_factory=dict)

    def z_grid(self) -> list[float]:
        return [float(z) for z in np.linspace(self.z_start, self.z_stop, self.z_count)]

    def che_params(self, overrides: dict[str, float] | None = None) -> CheParams:
        vals = {"gamma": 0.0, "delta": 0.0, "epsilon": 0.0, "alpha": 0.0, **self.params, **(overrides or {})}
        return CheParams(vals["gamma"], vals["delta"], vals["epsilon"], vals["alpha"], 0.0)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="confheun", description=__doc__.splitlines()[0])
    ap.add_argument("--command", required=True, choices=["reduce", "eval", "verify", "sweep"])
    ap.add_argument("--family", required=True, choices=["A", "C", "D"])
    ap.add_argument("--order", type=int, default=0, help="reduction order N")
    for name in ("gamma", "delta", "epsilon", "alpha"):
        ap.add_argument(f"--{name}", type=float)
    ap.add_argument("--z-start", type=float, default=0.1)
    ap.add_argument("--z-stop", type=float, default=0.9)
    ap.add_argument("--z-count", type=int, default=9)
    ap.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    ap.add_argument("--out", help="output file (default stdout)")
    ap.add_argument("--seed", type=int, default=0, help="seed for the multi-start solver")
    ap.add_argument("--tol-series", type=float, default=TOL_SERIES)
    ap.add_argument("--tol-root", type=float, default=TOL_ROOT)
    ap.add_argument("--nmax", type=int, default=NMAX)
    ap.add_argument("--general", action="store_true",
                    help="use the multi-start Newton solver (implied for N > 2)")
    ap.add_argument("--starts", type=int, default=NEWTON_STARTS)
    ap.add_argument("--root", type=int, default=0, help="which reduction to evaluate or verify")
    ap.add_argument("--sweep-param", help="free parameter to sweep")
    ap.add_argument("--sweep-start", type=float)
    ap.add_argument("--sweep-stop", type=float)
    ap.add_argument("--sweep-count", type=int, default=11)
    return ap


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    fam = ns.family
    params = {}
    if getattr(ns, DEPENDENT_PARAM[fam]) is not None:
        raise ConfigError(f"--{DEPENDENT_PARAM[fam]}: fixed by the family {fam} reduction, do not pass it")
    if fam == "D" and ns.epsilon is not None:
        if ns.epsilon != 0.0:
            raise ConfigError("family D requires ε = 0")
    sweep = {}
    if ns.command == "sweep":
        if ns.sweep_param not in FREE_PARAMS[fam]:
            raise ConfigError(f"--sweep-param: must be one of {', '.join(FREE_PARAMS[fam])}")
        if ns.sweep_start is None or ns.sweep_stop is None:
            raise ConfigError("--sweep-start/--sweep-stop: both are required for a sweep")
        if ns.sweep_count < 1:
            raise ConfigError("--sweep-count: must be at least 1")
        sweep = {"param": ns.sweep_param, "start": ns.sweep_start, "stop": ns.sweep_stop,
                 "count": ns.sweep_count}
    for name in FREE_PARAMS[fam]:
        v = getattr(ns, name)
        if v is None:
            if sweep.get("param") == name:
                continue
            raise ConfigError(f"--{name}: required for family {fam}")
        if not math.isfinite(v):
            raise ConfigError(f"--{name}: must be finite")
        params[name] = v
    if fam in ("A", "C") and params.get("epsilon") == 0.0:
        raise ConfigError(f"family {fam} requires ε ≠ 0")
    if ns.order < 0:
        raise ConfigError("--order: must be nonnegative")
    if not (0.0 < ns.z_start < 1.0 and 0.0 < ns.z_stop < 1.0):
        raise ConfigError("--z-start/--z-stop: must lie in (0, 1)")
    if ns.z_count < 1:
        raise ConfigError("--z-count: must be at least 1")
    if ns.nmax < 1:
        raise ConfigError("--nmax: must be at least 1")
    if ns.starts < 1:
        raise ConfigError("--starts: must be at least 1")
    if ns.seed < 0:
        raise ConfigError("--seed: must be nonnegative")
    for name in ("tol_series", "tol_root"):
        if not getattr(ns, name) > 0:
            raise ConfigError(f"--{name.replace('_', '-')}: must be positive")
    return JobConfig(ns.command, fam, ns.order, params, ns.z_start, ns.z_stop, ns.z_count, ns.fmt,
                     ns.out, ns.seed, ns.tol_series, ns.tol_root, ns.nmax, ns.general, ns.starts,
                     ns.root, sweep)


# ---------------------------------------------------------------- jobs

def _reduce(cfg: JobConfig, p: CheParams) -> ReductionOutcome:
    if cfg.general or cfg.order > 2:
        if cfg.order == 0:
            return solve_reduction(cfg.family, p, 0, tol_root=cfg.tol_root)
        return solve_reduction_general(cfg.family, p, cfg.order, starts=cfg.starts, seed=cfg.seed)
    return solve_reduction(cfg.family, p, cfg.order, tol_root=cfg.tol_root)


def _spec_row(idx: int, spec) -> dict:
    p = spec.params
    row = {"root": idx, "q": spec.q}
    row.update({f"e{k}": ek for k, ek in enumerate(spec.e, 1)})
    row.update({"gamma": p.gamma, "delta": p.delta, "epsilon": p.epsilon, "alpha": p.alpha})
    row["constraint_residual"] = constraint_residual(spec.family, p, spec.e)
    row.update({f"e{k}_admissible": is_admissible_e(ek) for k, ek in enumerate(spec.e, 1)})
    return row


def _solution(cfg: JobConfig, spec):
    return solution_from_spec(spec, cfg.nmax, tol_assemble=TOL_ASSEMBLE, tol_series=cfg.tol_series)


def cmd_reduce(cfg: JobConfig, meta: dict) -> tuple[int, list[dict]]:
    out = _reduce(cfg, cfg.che_params())
    meta["diagnostics"] = list(out.diagnostics)
    meta["rejected"] = out.rejected
    rows = [_spec_row(i, s) for i, s in enumerate(out)]
    return (EXIT_OK if rows else EXIT_NO_SOLUTION), rows


def _chosen_spec(cfg: JobConfig, meta: dict):
    out = _reduce(cfg, cfg.che_params())
    meta["diagnostics"] = list(out.diagnostics)
    if not out.specs:
        return None
    if not 0 <= cfg.root < len(out.specs):
        raise ConfigError(f"--root: only {len(out.specs)} reduction(s) found")
    spec = out.specs[cfg.root]
    meta["spec"] = spec.as_dict()
    return spec


def cmd_eval(cfg: JobConfig, meta: dict) -> tuple[int, list[dict]]:
    spec = _chosen_spec(cfg, meta)
    if spec is None:
        return EXIT_NO_SOLUTION, []
    sol = _solution(cfg, spec)
    rows = []
    for z in cfg.z_grid():
        r = assemble(sol, z)
        rows.append({"z": z, "u": r.u, "du": r.du, "n_used": r.n_used, "converged": r.converged})
    return EXIT_OK, rows


def cmd_verify(cfg: JobConfig, meta: dict) -> tuple[int, list[dict]]:
    spec = _chosen_spec(cfg, meta)
    if spec is None:
        return EXIT_NO_SOLUTION, []
    sol = _solution(cfg, spec)
    rows = [{"z": z, "residual": pointwise_residual(sol, z)} for z in cfg.z_grid()]
    worst = max(r["residual"] for r in rows)
    meta["max_residual"] = worst
    return (EXIT_OK if worst <= VERIFY_TOL else EXIT_NO_SOLUTION), rows


def cmd_sweep(cfg: JobConfig, meta: dict) -> tuple[int, list[dict]]:
    name = cfg.sweep["param"]
    values = np.linspace(cfg.sweep["start"], cfg.sweep["stop"], cfg.sweep["count"])
    rows, diagnostics = [], []
    grid = cfg.z_grid()
    for v in sorted(float(x) for x in values):
        try:
            out = _reduce(cfg, cfg.che_params({name: v}))
        except (ExpansionError, ValueError) as exc:
            diagnostics.append(f"{name}={v!r}: {exc}")
            continue
        for d in out.diagnostics:
            diagnostics.append(f"{name}={v!r}: {d}")
        for i, spec in enumerate(out):
            row = {name: v, **_spec_row(i, spec)}
            try:
                sol = _solution(cfg, spec)
                row["max_residual"] = max(pointwise_residual(sol, z) for z in grid)
            except (ExpansionError, ValueError) as exc:
                diagnostics.append(f"{name}={v!r} root {i}: {exc}")
                row["max_residual"] = math.inf
            rows.append(row)
    meta["diagnostics"] = diagnostics
    return (EXIT_OK if rows else EXIT_NO_SOLUTION), rows


COMMANDS = {"reduce": cmd_reduce, "eval": cmd_eval, "verify": cmd_verify, "sweep": cmd_sweep}


# ---------------------------------------------------------------- output

def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        # 17 significant digits always round-trip a double
        return float(format(v, ".17g")) if math.isfinite(v) else format(v)
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def _csv_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def render(cfg: JobConfig, meta: dict, rows: list[dict]) -> str:
    if cfg.fmt == "json":
        return json.dumps({"meta": _json_value(meta), "rows": _json_value(rows)},
                          ensure_ascii=False, indent=2) + "\n"
    header: list[str] = []
    for r in rows:
        header.extend(k for k in r if k not in header)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_csv_value(r[k]) if k in r else "" for k in header])
    return buf.getvalue()


def _meta(cfg: JobConfig) -> dict:
    return {
        "command": cfg.command, "family": cfg.family, "order": cfg.order, "params": dict(cfg.params),
        "z_grid": {"start": cfg.z_start, "stop": cfg.z_stop, "count": cfg.z_count},
        "tolerances": {"series": cfg.tol_series, "root": cfg.tol_root, "assemble": TOL_ASSEMBLE},
        "nmax": cfg.nmax, "seed": cfg.seed, "general": cfg.general or cfg.order > 2,
        "starts": cfg.starts, "sweep": cfg.sweep,
        "versions": {"confheun": __version__, "numpy": np.__version__,
                     "python": platform.python_version()},
    }


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        meta = _meta(cfg)
        code, rows = COMMANDS[cfg.command](cfg, meta)
    except (ConfigError, ExpansionError, ValueError) as exc:
        print(f"confheun: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for d in meta.get("diagnostics", []):
        print(f"confheun: {d}", file=sys.stderr)
    text = render(cfg, meta, rows)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
