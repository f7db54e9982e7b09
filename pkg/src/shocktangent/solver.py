"""Explicit finite-volume time stepping.

Scalar laws advance with the Lax-Friedrichs update

    U_i^{n+1} = (U_{i+1}^n + U_{i-1}^n)/2 - dt/(2 dx) (f(U_{i+1}^n) - f(U_{i-1}^n)),

the Euler system with a first-order Rusanov (local Lax-Friedrichs) flux and
forward-Euler time integration in the conservative variables. Both updates
run on dual-valued fields, so the tangent of every cell propagates through
the identical formula with the flux replaced by its dual evaluation; no
separate linearized scheme exists anywhere.

Boundaries use two ghost cells per side filled by zero-gradient copies, which
makes the boundary numerical flux collapse to the physical flux of the edge
cell (the jump term vanishes).
"""

from dataclasses import dataclass

from .dual import Dual, edge_pad, maximum
from .errors import CFLViolationError, ConfigError
from .mesh import CellField
from .models import EulerCellField, EulerState
from . import models

_GHOSTS = 2


def cfl_dt(field, dx, cfl, model=None, dt_max=1.0):
    """Largest stable step: cfl * dx / C_n with C_n the max wave speed.

    A quiescent field (C_n = 0) has no wave-speed limit; the step is capped
    at dt_max instead.
    """
    if isinstance(field, EulerCellField):
        c_n = field.max_char_speed()
    else:
        c_n = model.max_char_speed(field)
    if c_n == 0.0:
        return dt_max
    return min(cfl * dx / c_n, dt_max)


def _check_cfl(c_n, dt, dx):
    if c_n * dt > dx * (1.0 + 1e-12):
        raise CFLViolationError(
            f"wave speed {c_n} * dt {dt} = {c_n * dt} exceeds dx {dx}"
        )


def lxf_step(field, dt, model):
    """One Lax-Friedrichs step of a scalar field."""
    dx = field.grid.dx
    _check_cfl(model.max_char_speed(field), dt, dx)
    u = edge_pad(field.data, _GHOSTS)
    f = model.flux(u)
    new = 0.5 * (u[2:] + u[:-2]) - (dt / (2.0 * dx)) * (f[2:] - f[:-2])
    return CellField(field.grid, new[_GHOSTS - 1 : -(_GHOSTS - 1)])


def lxf_boundary_fluxes(field, model):
    """Numerical flux through the two domain boundaries (ghost = edge copy).

    With copied ghosts the dissipative jump term is zero, leaving the
    physical flux of each edge cell. Total mass then changes by exactly
    dt * (F_left - F_right) per step.
    """
    f_left = model.flux(field.at(0)).value
    f_right = model.flux(field.at(-1)).value
    return f_left, f_right


def _padded_state(field):
    s = field.state
    return EulerState(
        edge_pad(s.rho, _GHOSTS),
        edge_pad(s.u, _GHOSTS),
        edge_pad(s.p, _GHOSTS),
        s.gamma,
    )


def rusanov_step_euler(field, dt):
    """One Rusanov/forward-Euler step of the Euler system (primitives in/out)."""
    dx = field.grid.dx
    _check_cfl(field.max_char_speed(), dt, dx)

    s = _padded_state(field)
    q_rho, q_mom, q_en = s.conservative()
    h_rho, h_mom, h_en = models.euler_flux(s)
    lam = abs(s.u) + s.sound_speed()

    new = []
    lam_face = maximum(lam[:-1], lam[1:])
    for q, h in ((q_rho, h_rho), (q_mom, h_mom), (q_en, h_en)):
        # interface flux: central average minus local max-speed dissipation
        f = 0.5 * (h[:-1] + h[1:]) - 0.5 * lam_face * (q[1:] - q[:-1])
        stepped = q[1:-1] - (dt / dx) * (f[1:] - f[:-1])
        new.append(stepped[_GHOSTS - 1 : -(_GHOSTS - 1)])

    state = EulerState.from_conservative(*new, gamma=field.gamma)
    return EulerCellField(field.grid, state)


def euler_boundary_fluxes(field):
    """(mass, momentum, energy) physical flux at the left and right boundary."""
    s = field.state

    def edge(i):
        point = EulerState(
            Dual(float(s.rho.value[i]), 0.0),
            Dual(float(s.u.value[i]), 0.0),
            Dual(float(s.p.value[i]), 0.0),
            s.gamma,
        )
        return tuple(h.value for h in models.euler_flux(point))

    return edge(0), edge(-1)


@dataclass(frozen=True)
class SchemeConfig:
    """Time-marching controls.

    dt_mode "fixed" repeats the given dt; "cfl" rescales every step from the
    current max wave speed. Steps are clipped (never interpolated) so each
    record time and t_final are hit exactly.
    """

    t_final: float
    dt_mode: str = "cfl"
    dt: float | None = None
    cfl_number: float | None = None
    record_times: tuple = ()
    dt_max: float = 1.0

    def __post_init__(self):
        if self.dt_mode not in ("fixed", "cfl"):
            raise ConfigError(f"dt_mode must be 'fixed' or 'cfl', got {self.dt_mode!r}")
        if self.dt_mode == "fixed" and not (self.dt and self.dt > 0.0):
            raise ConfigError("fixed dt_mode requires dt > 0")
        if self.dt_mode == "cfl" and not (self.cfl_number and 0.0 < self.cfl_number <= 1.0):
            raise ConfigError("cfl dt_mode requires cfl_number in (0, 1]")
        if not self.t_final > 0.0:
            raise ConfigError("t_final must be positive")
        times = tuple(self.record_times)
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ConfigError("record_times must be strictly increasing")
        if any(not 0.0 < r <= self.t_final for r in times):
            raise ConfigError("record_times must lie in (0, t_final]")


def run(ic, config, model=None, observers=()):
    """March ic to t_final; returns [(t, field)] at each record time and t_final.

    Observers are called once per accepted step with (t_n, dt, pre-step field)
    before the field advances, so auxiliary ODEs (shock tracking) stay in
    lockstep with the scheme.
    """
    euler = isinstance(ic, EulerCellField)
    if not euler and model is None:
        raise ConfigError("scalar fields need a flux model")
    dx = ic.grid.dx

    stops = list(config.record_times)
    if not stops or stops[-1] < config.t_final:
        stops.append(config.t_final)

    t = 0.0
    field = ic
    out = []
    for stop in stops:
        while t < stop:
            if config.dt_mode == "fixed":
                dt_nom = config.dt
            else:
                dt_nom = cfl_dt(field, dx, config.cfl_number, model, config.dt_max)
            remaining = stop - t
            hit = dt_nom >= remaining * (1.0 - 1e-12)
            dt_step = remaining if hit else dt_nom
            for obs in observers:
                obs(t, dt_step, field)
            field = rusanov_step_euler(field, dt_step) if euler else lxf_step(field, dt_step, model)
            t = stop if hit else t + dt_step
        out.append((stop, field))
    return out
