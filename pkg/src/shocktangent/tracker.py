"""Discrete shock tracking with a custom tangent rule.

The tracked position obeys the characteristic ODE

    x^{n+1} = x^n + dt * c(U^n(x^n)),

with c the scalar characteristic speed f'(u) (Burgers) or the slow acoustic
speed u - a (Euler), evaluated on the piecewise-constant pre-step field. Inside
a captured shock layer c crosses the shock speed, so this point is attracted
to the layer and travels with it. That value update is shared by every mode;
the modes differ only in how the position tangent accumulates:

  shock    - differentiate a Rankine-Hugoniot speed built from LINEAR
             reconstructions probed at x +/- delta, the probe positions
             carrying the current position tangent. The probed tangent
             u_i' + x' * slope is the displaced-front combination v + xi u_x,
             which is exactly what the analytic jump-speed derivative needs.
             The probe slope is the central difference of the containing
             cell: with the staggered averaging of the base scheme the two
             one-sided differences carry an O(1) odd-even bias of opposite
             sign (measured ~+14% / ~-13% on the tracked sensitivity, grid
             independent), and their mean cancels it.
  blackbox - differentiate the same speed on piecewise-CONSTANT probes. Flat
             reconstruction kills both the u_x terms and the position-tangent
             feedback; kept as the reference for what naive differentiation
             of the update produces.
  none     - tangent frozen at zero.

delta = c_coeff * dx**alpha is the half width assumed for the numerical shock
layer; probes sit just outside it.
"""

from dataclasses import dataclass

from .dual import Dual, sqrt, with_custom_tangent
from .errors import OutOfDomainError, ProbeDegenerateError, TrackingLostError
from .mesh import eval_constant, eval_linear
from .models import EulerCellField, shock_speed_from_states


@dataclass(frozen=True)
class ShockState:
    """Tracked discontinuity: dual position (location, sensitivity)."""

    position: Dual
    index: int = 0


@dataclass(frozen=True)
class TrackerConfig:
    c_coeff: float = 5.0
    alpha: float = 1.0
    mode: str = "shock"

    def __post_init__(self):
        if self.mode not in ("none", "blackbox", "shock"):
            raise ValueError(f"mode must be none|blackbox|shock, got {self.mode!r}")
        if not self.c_coeff > 0.0:
            raise ValueError("c_coeff must be positive")

    def delta(self, dx):
        return self.c_coeff * dx**self.alpha


def _char_speed_value(field, x, model):
    if isinstance(field, EulerCellField):
        s = field.state
        rho = eval_constant(field.component("rho"), x).value
        u = eval_constant(field.component("u"), x).value
        p = eval_constant(field.component("p"), x).value
        return u - (s.gamma * p / rho) ** 0.5
    return model.char_speed(eval_constant(field, x)).value


def advance_position(state, field, dt, model=None):
    """Position value after one step of the characteristic ODE."""
    x = state.position.value
    new_x = x + dt * _char_speed_value(field, x, model)
    grid = field.grid
    if not grid.x_left + 2 * grid.dx <= new_x <= grid.x_right - 2 * grid.dx:
        raise TrackingLostError(f"tracked position {new_x} left the grid interior")
    return new_x


def _guard_denominator(v_plus, v_minus):
    floor = 1e-3 * max(abs(v_plus.value), abs(v_minus.value), 1.0)
    if abs(v_plus.value - v_minus.value) < floor:
        raise ProbeDegenerateError(
            f"probe jump {v_plus.value - v_minus.value} below floor {floor}"
        )


def _probe_speed(state, field, delta, model, evaluate):
    """RH speed from probes at x +/- delta; `evaluate` picks the reconstruction."""
    x_plus = state.position + delta
    x_minus = state.position - delta
    try:
        if isinstance(field, EulerCellField):
            # Upstream quantities from the minus side, downstream pressure from
            # the plus side; the speed formula consumes exactly those.
            rho_m = evaluate(field.component("rho"), x_minus, "minus")
            u_m = evaluate(field.component("u"), x_minus, "minus")
            p_m = evaluate(field.component("p"), x_minus, "minus")
            p_p = evaluate(field.component("p"), x_plus, "plus")
            a_m = sqrt(field.gamma * p_m / rho_m)
            return shock_speed_from_states(u_m, a_m, p_m, p_p, field.gamma)
        v_plus = evaluate(field, x_plus, "plus")
        v_minus = evaluate(field, x_minus, "minus")
    except OutOfDomainError as exc:
        raise TrackingLostError(f"probe point left the grid: {exc}") from exc
    _guard_denominator(v_plus, v_minus)
    return (model.flux(v_plus) - model.flux(v_minus)) / (v_plus - v_minus)


def rh_probe_speed(state, field, delta, model=None):
    """Jump speed on linear reconstructions (the shock-AD rule)."""
    return _probe_speed(state, field, delta, model, _linear_eval)


def naive_probe_speed(state, field, delta, model=None):
    """Jump speed on piecewise-constant probes (what black-box AD sees)."""
    return _probe_speed(state, field, delta, model, _constant_eval)


def _linear_eval(field, x, side):
    # Central-difference slope regardless of probe side; see module docstring.
    return eval_linear(field, x, "center")


def _constant_eval(field, x, side):
    return eval_constant(field, x)


def step_shock(state, field, dt, config, model=None):
    """Advance a tracked shock one step; dx and delta come from the field."""
    delta = config.delta(field.grid.dx)
    new_x = advance_position(state, field, dt, model)
    if config.mode == "none":
        new_tangent = 0.0
    else:
        probe = rh_probe_speed if config.mode == "shock" else naive_probe_speed
        speed = probe(state, field, delta, model)
        new_tangent = state.position.tangent + dt * speed.tangent
    return ShockState(with_custom_tangent(new_x, new_tangent), state.index)


class ShockTracker:
    """Observer wrapping step_shock; keeps (t, x, xdot) history for one shock."""

    def __init__(self, x0, config, model=None, xdot0=0.0, index=0):
        self.state = ShockState(Dual(float(x0), float(xdot0)), index)
        self.config = config
        self.model = model
        self.times = [0.0]
        self.positions = [float(x0)]
        self.tangents = [float(xdot0)]

    def __call__(self, t, dt, field):
        self.state = step_shock(self.state, field, dt, self.config, self.model)
        self.times.append(t + dt)
        self.positions.append(self.state.position.value)
        self.tangents.append(self.state.position.tangent)
