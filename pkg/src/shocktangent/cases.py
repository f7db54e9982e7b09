"""Experiment harness: canonical cases, perturbation sweeps, CSV reports.

Two families are wired up:

* ``burgers``: the decaying-ramp problem on [0, L], L the smallest multiple of
  dx at or above 1.9, with the nine reference grids of BURGERS_GRIDS (dx
  doubling row to row, fixed dt at cfl ~ 0.63, t_final = 2).
* ``euler``: a single shock moving at speed S through the state generated by
  an upstream Mach number, on [0, 30] by default with dx = 0.01, cfl = 0.82,
  marched to t_final = 100. The tangent seed is the sensitivity of the whole
  construction to S.

``epsilon_sweep`` reruns a case once per tracking mode, then measures for each
perturbation size eps how well the first-order reconstruction matches the
analytic perturbed solution, normalized by eps. ``grid_convergence`` repeats
the eps = eps_max comparison over a sequence of grids.
"""

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .calculus import BurgersRampOracle, jump_estimate, l1_error, tangential_shift
from .dual import Dual, lift, seed
from .errors import ConfigError
from .mesh import CellField, Grid1D, cell_average
from .models import (
    BurgersModel,
    EulerCellField,
    EulerState,
    MovingShockSetup,
    moving_shock_right_state,
)
from .solver import SchemeConfig, run
from .tracker import ShockTracker, TrackerConfig

#: Reference Burgers grids: row -> (dx, fixed dt). Row 1 is the finest.
BURGERS_GRIDS = {
    1: (5.75e-5, 3.64e-5),
    2: (1.15e-4, 7.27e-5),
    3: (2.3e-4, 1.45e-4),
    4: (4.6e-4, 2.9e-4),
    5: (9.2e-4, 5.88e-4),
    6: (1.84e-3, 1.18e-3),
    7: (3.68e-3, 2.35e-3),
    8: (7.36e-3, 4.7e-3),
    9: (1.472e-2, 9.52e-3),
}

BURGERS_MIN_EXTENT = 1.9


@dataclass(frozen=True)
class CaseConfig:
    """One simulation request; unset fields take per-problem defaults."""

    problem: str = "burgers"
    mode: str = "shock"
    grid_no: int | None = None
    dx: float | None = None
    dt_mode: str | None = None
    dt: float | None = None
    cfl: float | None = None
    t_final: float | None = None
    c_coeff: float | None = None
    alpha: float = 1.0
    record_times: tuple = ()
    eps_min: float | None = None
    eps_max: float | None = None
    n_eps: int = 25
    domain_length: float | None = None
    shift: float = 0.05
    mach: float = 5.3452
    shock_speed: float = 0.1
    x_shock0: float = 5.0
    gamma: float = 1.4
    jobs: int = 1

    def resolved(self):
        """Fill per-problem defaults; validate the combination."""
        if self.problem not in ("burgers", "euler"):
            raise ConfigError(f"unknown problem {self.problem!r}")
        if self.mode not in ("none", "blackbox", "shock"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        cfg = self
        if cfg.problem == "burgers":
            if cfg.dx is None:
                no = cfg.grid_no if cfg.grid_no is not None else 5
                if no not in BURGERS_GRIDS:
                    raise ConfigError(f"grid_no must be one of {sorted(BURGERS_GRIDS)}")
                table_dx, table_dt = BURGERS_GRIDS[no]
                cfg = replace(cfg, grid_no=no, dx=table_dx)
                if cfg.dt_mode is None and cfg.dt is None:
                    cfg = replace(cfg, dt_mode="fixed", dt=table_dt)
            cfg = replace(
                cfg,
                dt_mode=cfg.dt_mode or ("fixed" if cfg.dt else "cfl"),
                cfl=cfg.cfl if cfg.cfl is not None else 0.63,
                t_final=cfg.t_final if cfg.t_final is not None else 2.0,
                c_coeff=cfg.c_coeff if cfg.c_coeff is not None else 5.0,
                eps_min=cfg.eps_min if cfg.eps_min is not None else 1e-4,
                eps_max=cfg.eps_max if cfg.eps_max is not None else 0.2,
            )
        else:
            cfg = replace(
                cfg,
                dx=cfg.dx if cfg.dx is not None else 0.01,
                dt_mode=cfg.dt_mode or "cfl",
                cfl=cfg.cfl if cfg.cfl is not None else 0.82,
                t_final=cfg.t_final if cfg.t_final is not None else 100.0,
                c_coeff=cfg.c_coeff if cfg.c_coeff is not None else 20.0,
                eps_min=cfg.eps_min if cfg.eps_min is not None else 1e-5,
                eps_max=cfg.eps_max if cfg.eps_max is not None else 0.1,
                domain_length=cfg.domain_length if cfg.domain_length is not None else 30.0,
            )
        if not cfg.dx > 0:
            raise ConfigError(f"dx must be positive, got {cfg.dx}")
        if cfg.dt_mode == "fixed" and not (cfg.dt and cfg.dt > 0):
            raise ConfigError("fixed stepping requires dt > 0")
        if not cfg.t_final > 0:
            raise ConfigError("t_final must be positive")
        if cfg.n_eps < 2:
            raise ConfigError("n_eps must be at least 2")
        if not 0 < cfg.eps_min < cfg.eps_max:
            raise ConfigError("need 0 < eps_min < eps_max")
        return cfg

    def eps_list(self):
        return np.geomspace(self.eps_min, self.eps_max, self.n_eps)

    def build_grid(self):
        if self.problem == "burgers":
            extent = self.domain_length or BURGERS_MIN_EXTENT
            n = math.ceil(extent / self.dx - 1e-12)
        else:
            n = math.ceil(self.domain_length / self.dx - 1e-12)
        return Grid1D(0.0, self.dx, n)


@dataclass
class CaseResult:
    config: CaseConfig
    grid: Grid1D
    snapshots: list
    tracker: ShockTracker
    delta: float
    oracle: BurgersRampOracle | None = None
    setup: MovingShockSetup | None = None

    @property
    def final_field(self):
        return self.snapshots[-1][1]

    @property
    def final_time(self):
        return self.snapshots[-1][0]

    def shock_state(self):
        return self.tracker.state


def _scheme(cfg):
    return SchemeConfig(
        t_final=cfg.t_final,
        dt_mode=cfg.dt_mode,
        dt=cfg.dt,
        cfl_number=cfg.cfl,
        record_times=tuple(cfg.record_times),
    )


def _burgers_initial_field(oracle, grid):
    u0 = oracle.avg_solution(grid, 0.0)
    # The family scales the ramp amplitude, so the seed equals the profile.
    return u0.with_tangent(u0.values)


def _euler_initial_field(setup, grid):
    left = setup.left_state()
    right = moving_shock_right_state(left, seed(setup.shock_speed, 1.0))
    parts = []
    for name in ("rho", "u", "p"):
        lv = getattr(left, name).value
        rv = getattr(right, name)
        vals = cell_average(
            lambda x, lv=lv, r=rv.value: np.where(x < setup.x_shock0, lv, r),
            grid,
            (setup.x_shock0,),
        )
        tans = cell_average(
            lambda x, r=rv.tangent: np.where(x < setup.x_shock0, 0.0, r),
            grid,
            (setup.x_shock0,),
        )
        parts.append(Dual(vals.values, tans.values))
    return EulerCellField(grid, EulerState(*parts, setup.gamma))


def run_case(config):
    """Simulate one case; returns fields, snapshots, and the shock history."""
    cfg = config.resolved()
    grid = cfg.build_grid()
    tracker_cfg = TrackerConfig(cfg.c_coeff, cfg.alpha, cfg.mode)
    delta = tracker_cfg.delta(grid.dx)

    if cfg.problem == "burgers":
        oracle = BurgersRampOracle(cfg.shift)
        model = BurgersModel()
        ic = _burgers_initial_field(oracle, grid)
        tracker = ShockTracker(cfg.shift + 1.0, tracker_cfg, model)
        snapshots = run(ic, _scheme(cfg), model, observers=(tracker,))
        return CaseResult(cfg, grid, snapshots, tracker, delta, oracle=oracle)

    setup = MovingShockSetup(cfg.mach, cfg.shock_speed, cfg.x_shock0, cfg.gamma)
    ic = _euler_initial_field(setup, grid)
    tracker = ShockTracker(cfg.x_shock0, tracker_cfg)
    snapshots = run(ic, _scheme(cfg), observers=(tracker,))
    return CaseResult(cfg, grid, snapshots, tracker, delta, setup=setup)


def euler_profile(setup, grid, t, eps=0.0):
    """Exact perturbed single-shock profile as per-component cell averages."""
    left = setup.left_state()
    right = setup.right_state(lift(setup.shock_speed + eps))
    x_pos = setup.x_shock0 + (setup.shock_speed + eps) * t
    out = {}
    for name in ("rho", "u", "p"):
        lv = getattr(left, name).value
        rv = getattr(right, name).value
        out[name] = cell_average(
            lambda x, lv=lv, rv=rv: np.where(x < x_pos, lv, rv), grid, (x_pos,)
        )
    return out


@dataclass
class SweepReport:
    """Error table: kind 'epsilon' (per perturbation) or 'grid' (per dx)."""

    kind: str
    rows: list
    metadata: dict

    HEADERS = {
        "epsilon": ("epsilon", "err_no_ad", "err_blackbox", "err_shock", "err_base"),
        "grid": ("dx", "err_shock", "err_base"),
    }

    def header(self):
        return self.HEADERS[self.kind]


def _mode_runs(cfg):
    return {m: run_case(replace(cfg, mode=m)) for m in ("none", "blackbox", "shock")}


def _burgers_sweep_rows(cfg, runs):
    shock_run = runs["shock"]
    grid, oracle, t = shock_run.grid, shock_run.oracle, shock_run.final_time
    delta = shock_run.delta
    state = shock_run.shock_state()

    base_field = CellField(grid, runs["none"].final_field.values)
    bb = runs["blackbox"].final_field
    sh = runs["shock"].final_field
    u_field = CellField(grid, sh.values)
    udot_field = CellField(grid, sh.tangents)
    jump = jump_estimate(u_field, state, delta)

    base_l1 = l1_error(base_field, oracle.avg_solution(grid, t, 0.0))
    rows = []
    for eps in cfg.eps_list():
        ref = oracle.avg_solution(grid, t, eps)
        err_no = l1_error(base_field, ref) / eps
        err_bb = l1_error(CellField(grid, bb.values + eps * bb.tangents), ref) / eps
        shifted = tangential_shift(u_field, udot_field, state, jump, eps, delta)
        err_sh = l1_error(shifted, ref) / eps
        rows.append((float(eps), err_no, err_bb, err_sh, base_l1 / eps))
    xi = state.position.tangent
    return rows, {"delta": delta, "eps_dagger": delta / xi if xi else math.inf,
                  "xi": xi, "shock_position": state.position.value, "jump": jump}


def _euler_sweep_rows(cfg, runs):
    shock_run = runs["shock"]
    grid, setup, t = shock_run.grid, shock_run.setup, shock_run.final_time
    delta = shock_run.delta
    state = shock_run.shock_state()

    comp = ("rho", "u", "p")
    base = {c: CellField(grid, runs["none"].final_field.component(c).values) for c in comp}
    bb = {c: runs["blackbox"].final_field.component(c) for c in comp}
    sh = {c: runs["shock"].final_field.component(c) for c in comp}
    u_fields = {c: CellField(grid, sh[c].values) for c in comp}
    udot_fields = {c: CellField(grid, sh[c].tangents) for c in comp}
    jumps = {c: jump_estimate(u_fields[c], state, delta) for c in comp}

    ref0 = euler_profile(setup, grid, t, 0.0)
    base_l1 = sum(l1_error(base[c], ref0[c]) for c in comp)
    rows = []
    for eps in cfg.eps_list():
        ref = euler_profile(setup, grid, t, eps)
        err_no = sum(l1_error(base[c], ref[c]) for c in comp) / eps
        err_bb = sum(
            l1_error(CellField(grid, bb[c].values + eps * bb[c].tangents), ref[c])
            for c in comp
        ) / eps
        err_sh = sum(
            l1_error(
                tangential_shift(u_fields[c], udot_fields[c], state, jumps[c], eps, delta),
                ref[c],
            )
            for c in comp
        ) / eps
        rows.append((float(eps), err_no, err_bb, err_sh, base_l1 / eps))
    xi = state.position.tangent
    return rows, {"delta": delta, "eps_dagger": delta / xi if xi else math.inf,
                  "xi": xi, "shock_position": state.position.value}


def epsilon_sweep(config):
    """Error-vs-eps table; one simulation per tracking mode, eps applied after."""
    cfg = config.resolved()
    runs = _mode_runs(cfg)
    if cfg.problem == "burgers":
        rows, meta = _burgers_sweep_rows(cfg, runs)
    else:
        rows, meta = _euler_sweep_rows(cfg, runs)
    meta.update(problem=cfg.problem, t_final=cfg.t_final, dx=cfg.dx)
    return SweepReport("epsilon", rows, meta)


def _grid_row(args):
    cfg, grid_no, dx = args
    if grid_no is not None:
        case = replace(cfg, grid_no=grid_no, dx=None, dt=None, dt_mode=None, mode="shock")
    else:
        case = replace(cfg, dx=dx, dt=None, dt_mode="cfl", mode="shock")
    case = case.resolved()
    eps = case.eps_max
    result = run_case(case)
    grid, t = result.grid, result.final_time
    state = result.shock_state()
    field = result.final_field

    if case.problem == "burgers":
        oracle = result.oracle
        u_field = CellField(grid, field.values)
        udot_field = CellField(grid, field.tangents)
        jump = jump_estimate(u_field, state, result.delta)
        shifted = tangential_shift(u_field, udot_field, state, jump, eps, result.delta)
        err_sh = l1_error(shifted, oracle.avg_solution(grid, t, eps)) / eps
        err_base = l1_error(u_field, oracle.avg_solution(grid, t, 0.0)) / eps
    else:
        comp = ("rho", "u", "p")
        setup = result.setup
        ref = euler_profile(setup, grid, t, eps)
        ref0 = euler_profile(setup, grid, t, 0.0)
        err_sh = err_base = 0.0
        for c in comp:
            u_field = CellField(grid, field.component(c).values)
            udot_field = CellField(grid, field.component(c).tangents)
            jump = jump_estimate(u_field, state, result.delta)
            shifted = tangential_shift(u_field, udot_field, state, jump, eps, result.delta)
            err_sh += l1_error(shifted, ref[c]) / eps
            err_base += l1_error(u_field, ref0[c]) / eps
    return (case.dx, err_sh, err_base)


def grid_convergence(config, grid_nos=(9, 8, 7, 6, 5), dxs=None, jobs=1):
    """err_shock and err_base at eps = eps_max over a sequence of grids."""
    cfg = config.resolved()
    if dxs is not None:
        tasks = [(cfg, None, dx) for dx in dxs]
    else:
        tasks = [(cfg, no, None) for no in grid_nos]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_grid_row, tasks))
    else:
        rows = [_grid_row(t) for t in tasks]
    meta = {"problem": cfg.problem, "eps": cfg.eps_max, "t_final": cfg.t_final}
    return SweepReport("grid", rows, meta)


def emit_csv(report, path):
    """Write a report as UTF-8 CSV: header row, then shortest-roundtrip floats."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(report.header())
            for row in report.rows:
                writer.writerow([repr(float(v)) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


def emit_snapshot_csv(field, path):
    """Write one field snapshot: x,u,v (scalar) or x,rho,u,p,v_rho,v_u,v_p."""
    centers = field.grid.centers()
    if isinstance(field, EulerCellField):
        header = ("x", "rho", "u", "p", "v_rho", "v_u", "v_p")
        comps = [field.component(c) for c in ("rho", "u", "p")]
        columns = [centers] + [c.values for c in comps] + [c.tangents for c in comps]
    else:
        header = ("x", "u", "v")
        columns = [centers, field.values, field.tangents]
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in zip(*columns):
                writer.writerow([repr(float(v)) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write snapshot to {path}: {exc}") from exc
