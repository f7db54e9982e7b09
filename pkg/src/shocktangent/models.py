"""Flux functions and gas-state algebra.

Burgers: f(u) = u^2 / 2, characteristic speed f'(u) = u.

Euler (1D, ideal gas): primitive state (rho, u, p), nondimensionalized so the
rest state is (rho, u, p, T) = (1, 0, 1/gamma, 1). Then T = gamma p / rho and
the sound speed is a = sqrt(T). Conservative vector (rho, rho u, rho E) with
E = p / (rho (gamma - 1)) + u^2 / 2 and flux
(rho u, rho u^2 + p, u (rho E + p)).

A left state is generated from a Mach number via the isentropic relations
    T_l = (1 + (gamma-1)/2 M^2)^-1,  u_l = M sqrt(T_l),
    p_l = T_l^(gamma/(gamma-1)) / gamma,  rho_l = T_l^(1/(gamma-1)),
and the state behind a shock moving at speed S follows the Rankine-Hugoniot
conditions written with the shock-relative Mach number M~ = (u_l - S)/a_l:
    p_r/p_l   = 1 + 2 gamma/(gamma+1) (M~^2 - 1)
    rho_r/rho_l = (gamma+1) M~^2 / ((gamma-1) M~^2 + 2)
    u_r - S   = (u_l - S) rho_l / rho_r      (mass conservation across the front)
All formulas are plain dual arithmetic, so seeding any input (e.g. S)
propagates exact state sensitivities.
"""

from dataclasses import dataclass

import numpy as np

from .dual import Dual, lift, sqrt
from .errors import NonPhysicalStateError, NoShockError
from .mesh import CellField

GAMMA = 1.4


@dataclass(frozen=True)
class BurgersModel:
    """Quadratic scalar flux."""

    def flux(self, u):
        return 0.5 * u * u

    def char_speed(self, u):
        return u

    def max_char_speed(self, field):
        """Largest |f'(u)| over the field (CFL bound)."""
        return float(np.max(np.abs(field.values)))


def _positive_everywhere(x):
    v = x.value if isinstance(x, Dual) else x
    if isinstance(v, np.ndarray):
        return bool(np.all(v > 0.0))
    return v > 0.0


def _first_bad_cell(x):
    v = x.value if isinstance(x, Dual) else x
    return int(np.argmin(v)) if isinstance(v, np.ndarray) else -1


@dataclass(frozen=True)
class EulerState:
    """Primitive gas state; components are duals (scalar or per-cell arrays)."""

    rho: Dual
    u: Dual
    p: Dual
    gamma: float = GAMMA

    def __post_init__(self):
        for name in ("rho", "p"):
            comp = getattr(self, name)
            if not _positive_everywhere(comp):
                raise NonPhysicalStateError(
                    f"non-positive {name} (first offending cell {_first_bad_cell(comp)})"
                )

    def temperature(self):
        return self.gamma * self.p / self.rho

    def sound_speed(self):
        return sqrt(self.gamma * self.p / self.rho)

    def specific_energy(self):
        return self.p / (self.rho * (self.gamma - 1.0))

    def total_energy(self):
        return self.specific_energy() + 0.5 * self.u * self.u

    def conservative(self):
        m = self.rho * self.u
        return self.rho, m, self.rho * self.total_energy()

    @classmethod
    def from_conservative(cls, rho, momentum, energy, gamma=GAMMA):
        u = momentum / rho
        p = (gamma - 1.0) * (energy - 0.5 * momentum * u)
        return cls(rho, u, p, gamma)


def euler_flux(state):
    """(mass, momentum, energy) flux of a primitive state."""
    rho, m, en = state.conservative()
    return m, m * state.u + state.p, state.u * (en + state.p)


def euler_char_speed_sa(state):
    """Slow acoustic characteristic speed u - a."""
    return state.u - state.sound_speed()


def euler_left_state(mach, gamma=GAMMA):
    """Pre-shock state from its Mach number (rest state at M = 0)."""
    mach = lift(mach)
    t = 1.0 / (1.0 + 0.5 * (gamma - 1.0) * mach * mach)
    u = mach * sqrt(t)
    p = t ** (gamma / (gamma - 1.0)) / gamma
    rho = t ** (1.0 / (gamma - 1.0))
    return EulerState(rho, u, p, gamma)


def moving_shock_right_state(left, shock_speed):
    """Post-shock state behind a shock moving at shock_speed.

    Entropy admissibility requires the shock-relative Mach number above one;
    anything else is not a compressive shock and is rejected.
    """
    s = lift(shock_speed)
    a_l = left.sound_speed()
    m_rel = (left.u - s) / a_l
    if not m_rel.value > 1.0:
        raise NoShockError(f"shock-relative Mach {m_rel.value} <= 1 is not admissible")
    g = left.gamma
    m2 = m_rel * m_rel
    p_r = left.p * (1.0 + 2.0 * g / (g + 1.0) * (m2 - 1.0))
    rho_r = left.rho * ((g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0))
    u_r = s + (left.u - s) * left.rho / rho_r
    return EulerState(rho_r, u_r, p_r, g)


def shock_speed_from_states(u_l, a_l, p_l, p_r, gamma=GAMMA):
    """Shock speed from upstream (u, a, p) and downstream pressure.

    Inverts the pressure jump relation: S = u_l - a_l sqrt(
    (gamma+1)/(2 gamma) p_r/p_l + (gamma-1)/(2 gamma)). Differentiating this
    against probed states is the custom propagation rule for tracked shocks.
    """
    ratio = p_r / p_l
    return u_l - a_l * sqrt(
        (gamma + 1.0) / (2.0 * gamma) * ratio + (gamma - 1.0) / (2.0 * gamma)
    )


@dataclass(frozen=True)
class MovingShockSetup:
    """Single-shock Riemann configuration: left state from mach, right from shock_speed."""

    mach: float
    shock_speed: float
    x_shock0: float
    gamma: float = GAMMA

    def __post_init__(self):
        if not self.mach > 1.0:
            raise ValueError(f"setup requires a supersonic left state, got M = {self.mach}")
        left = euler_left_state(lift(self.mach), self.gamma)
        m_rel = (left.u.value - self.shock_speed) / left.sound_speed().value
        if not m_rel > 1.0:
            raise NoShockError(f"shock-relative Mach {m_rel} <= 1 is not admissible")

    def left_state(self):
        return euler_left_state(lift(self.mach), self.gamma)

    def right_state(self, shock_speed=None):
        s = lift(self.shock_speed) if shock_speed is None else shock_speed
        return moving_shock_right_state(self.left_state(), s)


class EulerCellField:
    """Per-cell primitive gas states on a grid (array-backed EulerState)."""

    __slots__ = ("grid", "state")

    def __init__(self, grid, state):
        if len(state.rho.value) != grid.n_cells:
            raise ValueError("state arrays do not match grid")
        self.grid = grid
        self.state = state

    def component(self, name):
        """One primitive variable viewed as a scalar CellField."""
        return CellField(self.grid, getattr(self.state, name))

    @property
    def gamma(self):
        return self.state.gamma

    def max_char_speed(self):
        """Largest |u| + a over the field (CFL bound)."""
        a = np.sqrt(self.gamma * self.state.p.value / self.state.rho.value)
        return float(np.max(np.abs(self.state.u.value) + a))
