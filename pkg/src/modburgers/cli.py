"""Command-line front end: config parsing, experiment runners, CSV/SVG artifacts.

Usage: ``modburgers <command> [--key value ...] [--config FILE] [--output-dir DIR] [--seed N]``.
Values come from flags, then a flat ``key = value`` config file, then defaults.
Exit codes: 0 success, 2 config error, 3 solver failure, 4 check failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import platform
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from ._backend import BACKEND
from .errors import ConfigError, InvalidInput, NonConvergence, SolverError

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_CHECK = 0, 2, 3, 4

# parameter name -> (type, default); None defaults are filled per command
PARAMS: dict[str, dict[str, tuple[type, object]]] = {
    "shock": {"w_plus": (float, 1.0), "w_minus": (float, -1.0), "x_min": (float, -10.0),
              "x_max": (float, 10.0), "n": (int, 401)},
    "simulate": {"ic": (str, "IC1"), "T": (float, 4.0), "L": (float, 30.0), "h": (float, 0.01),
                 "tau": (float, 0.002), "gamma_mode": (str, "implicit"), "stride": (int, 50),
                 "x_window": (float, 10.0), "vplus": (str, ""), "vminus": (str, ""),
                 "decay": (str, "gauss"), "plot": (int, 1)},
    "exact-odd": {"data": (str, "yexp"), "times": (str, "1,4,16,64"), "x_max": (float, 20.0),
                  "n": (int, 401)},
    "picard": {"ic": (str, "IC1"), "T": (float, 0.5), "K": (int, 128), "tol": (float, 1e-4),
               "max_iter": (int, 40), "grid_step": (float, 0.02), "y_max": (float, 15.0),
               "scheme": (str, "alternating"), "compare_fd": (int, 1), "fd_h": (float, 0.01),
               "fd_substeps": (int, 4)},
    "abel-check": {"times": (str, "0.25,1,4"), "bumps": (int, 20)},
    "convergence": {"case": (str, "odd"), "levels": (int, 4), "h0": (float, None),
                    "tau0": (float, None), "T": (float, None), "ic": (str, None),
                    "L": (float, 30.0), "tau_scaling": (str, "linear"), "workers": (int, 4)},
    "reproduce-figures": {"L": (float, 30.0), "h": (float, 0.01), "tau": (float, 0.002),
                          "x_window": (float, 10.0)},
}
CONVERGENCE_DEFAULTS = {
    "odd": {"h0": 0.04, "tau0": 0.01, "T": 2.0, "ic": "ODD"},
    "general": {"h0": 0.02, "tau0": 0.04, "T": 4.0, "ic": "IC1"},
}


@dataclass
class RunConfig:
    command: str
    parameters: dict
    output_dir: Path = Path("out")
    seed: int = 0


@dataclass
class RunResult:
    artifacts: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


# -- config --------------------------------------------------------------------

def _convert(key: str, typ: type, raw) -> object:
    try:
        return typ(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected {typ.__name__}, got {raw!r}") from None


def read_config_file(path) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value
    return out


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modburgers", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, params in PARAMS.items():
        p = sub.add_parser(name)
        p.add_argument("--config", help="flat key = value file")
        p.add_argument("--output-dir", default=None)
        p.add_argument("--seed", type=int, default=None)
        for key, (typ, _) in params.items():
            p.add_argument(f"--{key}", dest=f"p_{key}", type=str, default=None, metavar=typ.__name__.upper())
    return parser


def parse_config(argv=None) -> RunConfig:
    """Merge flags > config file > defaults and validate for the command."""
    ns = _parser().parse_args(argv)
    params = PARAMS[ns.command]
    merged = {key: default for key, (_, default) in params.items()}
    extra = {}
    if ns.config:
        for key, raw in read_config_file(ns.config).items():
            if key in ("output_dir", "seed"):
                extra[key] = raw
            elif key not in params:
                raise ConfigError(f"unknown key {key!r} for {ns.command}; allowed: {', '.join(params)}")
            else:
                merged[key] = _convert(key, params[key][0], raw)
    for key, (typ, _) in params.items():
        raw = getattr(ns, f"p_{key}")
        if raw is not None:
            merged[key] = _convert(key, typ, raw)
    out_dir = ns.output_dir or extra.get("output_dir") or "out"
    seed = ns.seed if ns.seed is not None else _convert("seed", int, extra.get("seed", 0))
    cfg = RunConfig(ns.command, merged, Path(out_dir), seed)
    validate(cfg)
    return cfg


def _float_list(key: str, text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"{key}: expected comma-separated numbers, got {text!r}") from None
    if not vals:
        raise ConfigError(f"{key}: empty list")
    return vals


def validate(cfg: RunConfig) -> None:
    """Per-command checks that need no heavy computation."""
    from .initial_data import get_preset

    p = cfg.parameters
    if cfg.command == "convergence":
        if p["case"] not in CONVERGENCE_DEFAULTS:
            raise ConfigError(f"case must be one of {', '.join(CONVERGENCE_DEFAULTS)}")
        for key, value in CONVERGENCE_DEFAULTS[p["case"]].items():
            if p[key] is None:
                p[key] = value
    if "ic" in p and not (cfg.command == "simulate" and p["ic"].lower() == "custom"):
        get_preset(p["ic"])
    for key in ("times",):
        if key in p:
            _float_list(key, p[key])
    for key in ("T", "L", "h", "tau", "tol", "h0", "tau0", "grid_step", "y_max", "fd_h", "x_window"):
        if key in p and p[key] is not None and not p[key] > 0:
            raise ConfigError(f"{key} must be positive")
    if cfg.command == "simulate" and p["ic"].lower() == "custom":
        _custom_preset(p)


def _custom_preset(p):
    """Preset from ``vplus``/``vminus`` polynomial coefficients; refuses data violating the conditions."""
    from .initial_data import PolyExp, Preset, condition_residuals

    try:
        vp = PolyExp(_float_list("vplus", p["vplus"]), p["decay"])
        vm = PolyExp(_float_list("vminus", p["vminus"]), p["decay"])
    except InvalidInput as exc:
        raise ConfigError(str(exc)) from None
    bad = {k: v for k, v in condition_residuals(vp, vm).items() if abs(v) > 1e-10}
    if bad:
        desc = ", ".join(f"{k}={v:.3g}" for k, v in bad.items())
        raise ConfigError(f"custom initial data violate the boundary/interface conditions ({desc})")
    return Preset("custom", vp, vm)


# -- output helpers -------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return "nan" if not np.isfinite(v) else f"{float(v):.12g}"
    return str(v)


def write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])
    return path


def _write_manifest(cfg: RunConfig, res: RunResult, wall: float, status: str) -> None:
    import scipy

    manifest = {
        "command": cfg.command,
        "parameters": cfg.parameters,
        "seed": cfg.seed,
        "output_dir": str(cfg.output_dir),
        "status": status,
        "checks": res.checks,
        "summary": res.summary,
        "artifacts": [Path(a).name for a in res.artifacts],
        "versions": {"modburgers": __version__, "backend": BACKEND, "python": platform.python_version(),
                     "numpy": np.__version__, "scipy": scipy.__version__},
        "wall_time_s": round(wall, 3),
    }
    with open(cfg.output_dir / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=_cell)
        fh.write("\n")


# -- commands ---------------------------------------------------------------------

def _cmd_shock(cfg: RunConfig, res: RunResult) -> None:
    from .shock_profiles import ShockProfile, eval_shock, interface_jump_residual

    p = cfg.parameters
    try:
        prof = ShockProfile.from_states(p["w_plus"], p["w_minus"])
    except InvalidInput as exc:
        raise ConfigError(str(exc)) from None
    x = np.linspace(p["x_min"], p["x_max"], p["n"])
    side = np.where(x >= 0, 1, -1)
    w = eval_shock(prof, x, 0)
    w1 = eval_shock(prof, x, 1)
    w2 = np.array([eval_shock(prof, xi, 2, side=int(s)) for xi, s in zip(x, side)])
    res.artifacts.append(write_csv(cfg.output_dir / "shock.csv", ("x", "W", "W_x", "W_xx"), zip(x, w, w1, w2)))
    resid = interface_jump_residual(prof, 0.0)
    res.summary.update(c=prof.c, jump_residual=resid)
    res.checks["interface_jump_residual"] = abs(resid) <= 1e-12


def _preset_for(p):
    from .initial_data import get_preset

    return _custom_preset(p) if p["ic"].lower() == "custom" else get_preset(p["ic"])


def _trajectory_rows(traj, x_window: float, times=None):
    for s in traj.snapshots:
        t = s.k * traj.config.tau
        if times is not None and not np.any(np.isclose(t, times)):
            continue
        x, u, w = traj.profile(s)
        keep = np.abs(x) <= x_window
        for xx, uu, ww in zip(x[keep], u[keep], w[keep]):
            yield t, xx, uu, ww


def _interface_rows(traj):
    ns = traj.norm_series
    return zip(traj.times, traj.gamma_series, traj.xi_series, ns["h1_energy"], ns["sup_norm"])


def _run_fd(cfg_fd, res: RunResult):
    from .diagnostics import energy_monotonicity_report, fit_xi_infinity, positivity_check
    from .fd_solver import simulate

    traj = simulate(cfg_fd)
    xi_T, xi_inf = fit_xi_infinity(traj.xi_series, traj.gamma_series, traj.times)
    energy = energy_monotonicity_report(traj)
    positivity = positivity_check(traj)
    res.summary.update(xi_T=xi_T, xi_inf=xi_inf, energy_violations=len(energy),
                       positivity_violations=len(positivity),
                       gamma_l1=float(np.sum(np.abs(traj.gamma_series)) * cfg_fd.tau))
    res.checks["energy_monotone"] = not energy
    res.checks["positivity"] = not positivity
    return traj


def _figure_panels(traj, label: str, early, late, w_times):
    from .svgplot import Panel

    snaps = {round(s.k * traj.config.tau, 9): s for s in traj.snapshots}

    def add(panel, times, which):
        for t in times:
            s = snaps.get(round(t, 9))
            if s is not None:
                x, u, w = traj.profile(s)
                keep = np.abs(x) <= 10.0
                panel.add(f"t = {t:g}", x[keep], (u if which == "u" else w)[keep])
        return panel

    top = [add(Panel(f"{label}: u(t, x)", "x", "u"), early, "u"),
           add(Panel(f"{label}: u(t, x)", "x", "u"), late, "u")]
    bottom = [add(Panel(f"{label}: w(t, x)", "x", "w"), w_times, "w"),
              Panel(f"{label}: gamma and xi", "t", "value")
              .add("gamma", traj.times, traj.gamma_series).add("xi", traj.times, traj.xi_series)]
    return top, bottom


def _cmd_simulate(cfg: RunConfig, res: RunResult) -> None:
    from .fd_solver import FdConfig
    from .svgplot import write_svg

    p = cfg.parameters
    try:
        fd = FdConfig.from_step(p["L"], p["h"], tau=p["tau"], T=p["T"], ic=_preset_for(p),
                                gamma_mode=p["gamma_mode"], stride=p["stride"])
    except InvalidInput as exc:
        raise ConfigError(str(exc)) from None
    traj = _run_fd(fd, res)
    out = cfg.output_dir
    res.artifacts.append(write_csv(out / "trajectory.csv", ("t", "x", "u", "w"), _trajectory_rows(traj, p["x_window"])))
    res.artifacts.append(write_csv(out / "interface.csv", ("t", "gamma", "xi", "h1_energy", "sup_norm"),
                                   _interface_rows(traj)))
    if p["plot"]:
        T = p["T"]
        snap_t = [s.k * fd.tau for s in traj.snapshots]
        pick = lambda fracs: sorted({min(snap_t, key=lambda s: abs(s - f * T)) for f in fracs})
        top, bottom = _figure_panels(traj, p["ic"], pick((0, 0.125, 0.25)), pick((0.5, 0.75, 1.0)),
                                     pick((0, 0.25, 0.5)))
        write_svg(out / "u.svg", top)
        write_svg(out / "w_gamma.svg", bottom)
        res.artifacts += [out / "u.svg", out / "w_gamma.svg"]


def _cmd_exact_odd(cfg: RunConfig, res: RunResult) -> None:
    from .diagnostics import decay_bound_check, exact_sup_sampler
    from .heat_kernel import odd_exact_solution
    from .initial_data import PolyExp, get_preset
    from .quadrature import QuadratureSpec

    p = cfg.parameters
    times = _float_list("times", p["times"])
    u0 = PolyExp((0.0, 1.0), "exp") if p["data"].lower() == "yexp" else get_preset(p["data"]).u_plus
    quad = QuadratureSpec()
    x = np.linspace(0.0, p["x_max"], p["n"])
    rows = []
    for t in times:
        vals = [odd_exact_solution(u0, t, x, k, quad) for k in range(3)]
        rows.extend(zip([t] * x.size, x, *vals))
    res.artifacts.append(write_csv(cfg.output_dir / "exact_odd.csv", ("t", "x", "u", "u_x", "u_xx"), rows))
    late = [t for t in times if t >= 1.0]
    if late:
        y = np.linspace(0.0, 60.0, 6001)
        l2 = [float(np.sqrt(np.trapezoid(u0(y, k) ** 2, y))) for k in range(3)]
        checks = decay_bound_check(exact_sup_sampler(u0, np.linspace(0.0, 40.0, 2001), quad), l2, late)
        res.artifacts.append(write_csv(cfg.output_dir / "decay_bounds.csv", ("t", "order", "lhs", "rhs", "margin"),
                                       ((c.t, c.order, c.lhs, c.rhs, c.margin) for c in checks)))
        res.checks["decay_bounds"] = all(c.passed for c in checks)


def _cmd_picard(cfg: RunConfig, res: RunResult) -> None:
    from .fd_solver import FdConfig, simulate
    from .initial_data import get_preset
    from .picard import PicardConfig, picard_solve
    from .quadrature import QuadratureSpec

    p = cfg.parameters
    preset = get_preset(p["ic"])
    try:
        pc = PicardConfig(T=p["T"], K=p["K"], tol=p["tol"], max_iter=p["max_iter"], grid_step=p["grid_step"],
                          quad=QuadratureSpec(y_max=p["y_max"], n_space=16), scheme=p["scheme"])
    except InvalidInput as exc:
        raise ConfigError(str(exc)) from None
    state, rep = picard_solve(preset.u_plus, preset.u_minus, pc)
    t = state.times
    cols = [t, state.gamma.values, rep.continuity_residual, rep.interface_residual,
            rep.dynamic_residual_plus, rep.dynamic_residual_minus]
    header = ["t", "gamma", "continuity", "interface", "dynamic_plus", "dynamic_minus"]
    lim = 10.0 * pc.tol
    res.checks["continuity_residual"] = float(np.abs(rep.continuity_residual).max()) <= lim
    res.checks["interface_residual"] = float(np.abs(rep.interface_residual).max()) <= lim
    res.summary.update(iterations=rep.iterations, changes=rep.changes, data_norm=rep.data_norm,
                       max_continuity=float(np.abs(rep.continuity_residual).max()),
                       max_interface=float(np.abs(rep.interface_residual).max()))
    if p["compare_fd"]:
        sub = p["fd_substeps"]
        fd = simulate(FdConfig.from_step(30.0, p["fd_h"], tau=pc.dt / sub, T=pc.T, ic=preset, stride=10**9))
        g_fd = fd.gamma_series[::sub]
        cols.append(g_fd)
        header.append("gamma_fd")
        diff = float(np.abs(state.gamma.values - g_fd).max())
        res.summary["max_gamma_diff"] = diff
        res.checks["gamma_vs_fd"] = diff <= 5e-3
    res.artifacts.append(write_csv(cfg.output_dir / "picard.csv", header, zip(*cols)))


def abel_table(times, quad=None):
    """Rows ``(kind, t, gamma, residual)`` for the reference data of each inversion."""
    from .abel import AbelProblem, abel_residual, solve
    from .initial_data import PolyExp
    from .quadrature import QuadratureSpec

    quad = QuadratureSpec() if quad is None else quad
    problems = {
        "from_f": AbelProblem("from_f", f=PolyExp((0.0, 1.0), "exp"), quad=quad),
        "from_g": AbelProblem("from_g", g=lambda tau, eta: np.exp(-tau) * np.exp(-eta), quad=quad),
        "local": AbelProblem("local", h=lambda tau: np.exp(-np.asarray(tau, dtype=float)), quad=quad),
    }
    rows = []
    for kind, prob in problems.items():
        for t in times:
            rows.append((kind, t, float(solve(prob, t)), abel_residual(prob, t)))
    return rows, problems


def bump_check(problem, t: float, rng: np.random.Generator, count: int) -> int:
    """Number of random bump perturbations of gamma that fail to increase |residual|."""
    from .abel import abel_residual, solve

    base = abs(abel_residual(problem, t))
    failures = 0
    for _ in range(count):
        centre, width, amp = rng.uniform(0.1, 0.9) * t, rng.uniform(0.05, 0.3) * t, rng.uniform(-1, 1)
        amp = amp if abs(amp) > 0.05 else 0.05

        def gamma(tau, c=centre, w=width, a=amp):
            tau = np.asarray(tau, dtype=float)
            return solve(problem, tau) + a * np.exp(-((tau - c) / w) ** 2)

        if not abs(abel_residual(problem, t, gamma)) > base:
            failures += 1
    return failures


def _cmd_abel_check(cfg: RunConfig, res: RunResult) -> None:
    from .abel import AbelProblem, solve_abel_local

    p = cfg.parameters
    times = _float_list("times", p["times"])
    rows, problems = abel_table(times)
    res.artifacts.append(write_csv(cfg.output_dir / "abel.csv", ("kind", "t", "gamma", "residual"), rows))
    res.checks["residuals"] = all(abs(r[3]) <= 1e-5 for r in rows)
    point = solve_abel_local(AbelProblem("local", h=lambda tau: np.ones_like(np.asarray(tau, dtype=float))), np.pi)
    res.summary["local_h1_at_pi"] = point
    res.checks["local_closed_form"] = abs(point - 1.0) <= 1e-8
    if p["bumps"] > 0:
        rng = np.random.default_rng(cfg.seed)
        fails = {kind: bump_check(prob, 1.0, rng, p["bumps"]) for kind, prob in problems.items()}
        res.summary["bump_failures"] = fails
        res.checks["uniqueness_proxy"] = not any(fails.values())


def _cmd_convergence(cfg: RunConfig, res: RunResult) -> None:
    from .fd_solver import FdConfig, convergence_study, observed_order

    p = cfg.parameters
    try:
        base = FdConfig.from_step(p["L"], p["h0"], tau=p["tau0"], T=p["T"], ic=p["ic"])
        rows = convergence_study(base, p["levels"], p["case"], p["tau_scaling"], workers=p["workers"])
    except InvalidInput as exc:
        raise ConfigError(str(exc)) from None
    res.artifacts.append(write_csv(cfg.output_dir / "convergence.csv", ("level", "h", "tau", "error", "order"),
                                   ((r.level, r.h, r.tau, r.error, r.order) for r in rows)))
    orders = [r.order for r in rows if np.isfinite(r.order)]
    errors = [r.error for r in rows if np.isfinite(r.error)]
    res.summary.update(observed_order=observed_order(rows), min_order=min(orders))
    res.checks["errors_decrease"] = all(b < a for a, b in zip(errors[:-1], errors[1:]))
    if p["case"] == "odd":
        res.checks["order"] = min(orders) >= 1.9
        res.checks["error_bound"] = all(r.error <= 5.0 * (r.h**2 + r.tau**2) for r in rows)
    else:
        res.checks["order"] = observed_order(rows) >= 0.9


FIGURES = (("fig1", "IC1", 4.0, (0, 0.5, 1), (2, 3, 4), (0, 1, 2)),
           ("fig2", "IC2", 12.0, (0, 0.5, 1), (2, 3, 4), (0, 1, 2)))


def _cmd_reproduce(cfg: RunConfig, res: RunResult) -> None:
    from .fd_solver import FdConfig
    from .svgplot import write_svg

    p = cfg.parameters
    out = cfg.output_dir
    for name, ic, T, early, late, w_times in FIGURES:
        wanted = np.array(sorted(set(early + late + w_times)), dtype=float)
        stride = int(round(0.5 / p["tau"]))
        fd = FdConfig.from_step(p["L"], p["h"], tau=p["tau"], T=T, ic=ic, stride=stride)
        sub = RunResult()
        traj = _run_fd(fd, sub)
        res.checks.update({f"{name}_{k}": v for k, v in sub.checks.items()})
        res.summary[name] = sub.summary
        res.artifacts.append(write_csv(out / f"{name}_trajectory.csv", ("t", "x", "u", "w"),
                                       _trajectory_rows(traj, p["x_window"], wanted)))
        res.artifacts.append(write_csv(out / f"{name}_interface.csv", ("t", "gamma", "xi", "h1_energy", "sup_norm"),
                                       _interface_rows(traj)))
        top, bottom = _figure_panels(traj, ic, early, late, w_times)
        write_svg(out / f"{name}_u.svg", top)
        write_svg(out / f"{name}_w_gamma.svg", bottom)
        res.artifacts += [out / f"{name}_u.svg", out / f"{name}_w_gamma.svg"]


COMMANDS = {
    "shock": _cmd_shock,
    "simulate": _cmd_simulate,
    "exact-odd": _cmd_exact_odd,
    "picard": _cmd_picard,
    "abel-check": _cmd_abel_check,
    "convergence": _cmd_convergence,
    "reproduce-figures": _cmd_reproduce,
}


def run(cfg: RunConfig) -> int:
    """Execute a validated config; writes artifacts and ``manifest.json``."""
    start = time.perf_counter()
    res = RunResult()
    try:
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create {cfg.output_dir}: {exc.strerror}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        COMMANDS[cfg.command](cfg, res)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        code, status = EXIT_CONFIG, "config-error"
    except (SolverError, NonConvergence) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        code, status = EXIT_SOLVER, "solver-failure"
    except InvalidInput as exc:
        print(f"config error: {exc}", file=sys.stderr)
        code, status = EXIT_CONFIG, "config-error"
    else:
        code, status = (EXIT_OK, "ok") if res.passed else (EXIT_CHECK, "check-failure")
        for name, ok in res.checks.items():
            print(f"{'PASS' if ok else 'FAIL'} {name}")
    _write_manifest(cfg, res, time.perf_counter() - start, status)
    return code


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvalidInput as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
