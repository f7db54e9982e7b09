"""Grid geometry, cell fields, averaging, and sub-cell linear evaluation."""

import numpy as np
import pytest

from shocktangent.dual import Dual, lift, seed
from shocktangent.errors import GridMismatchError, OutOfDomainError
from shocktangent.mesh import (
    CellField,
    Grid1D,
    cell_average,
    eval_constant,
    eval_linear,
    one_sided_slopes,
    require_same_grid,
)


@pytest.fixture
def grid():
    return Grid1D(x_left=0.0, dx=0.1, n_cells=10)


def test_grid_geometry(grid):
    assert grid.x_right == pytest.approx(1.0)
    assert grid.face(0) == 0.0
    assert grid.face(10) == pytest.approx(1.0)
    centers = grid.centers()
    assert centers.shape == (10,)
    assert centers[0] == pytest.approx(0.05)
    assert centers[-1] == pytest.approx(0.95)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid1D(x_left=0.0, dx=-0.1, n_cells=10)
    with pytest.raises(ValueError):
        Grid1D(x_left=0.0, dx=0.1, n_cells=0)


def test_cell_containing(grid):
    assert grid.cell_containing(0.05) == 0
    assert grid.cell_containing(0.999) == 9
    # a point exactly on an interior face belongs to the right cell
    assert grid.cell_containing(grid.face(3)) == 3
    with pytest.raises(OutOfDomainError):
        grid.cell_containing(-0.01)
    with pytest.raises(OutOfDomainError):
        grid.cell_containing(1.0)


def test_grid_needs_enough_cells_for_reconstruction():
    with pytest.raises(ValueError):
        Grid1D(x_left=0.0, dx=0.1, n_cells=2)


def test_cell_average_integrates_smooth_functions(grid):
    f = cell_average(lambda x: x * x, grid)
    centers = grid.centers()
    # exact cell mean of x^2 over [a, b] is (a^2 + ab + b^2) / 3
    faces = np.array([grid.face(i) for i in range(11)])
    exact = (faces[:-1] ** 2 + faces[:-1] * faces[1:] + faces[1:] ** 2) / 3.0
    assert np.allclose(f.values, exact, atol=1e-14)
    assert np.allclose(f.tangents, 0.0)


def test_cell_average_splits_at_breakpoints(grid):
    # step at x = 0.23, inside cell 2
    def fn(x):
        return np.where(np.asarray(x) < 0.23, 1.0, 0.0)

    f = cell_average(fn, grid, breakpoints=(0.23,))
    assert f.values[1] == pytest.approx(1.0)
    assert f.values[2] == pytest.approx((0.23 - 0.2) / 0.1, abs=1e-14)
    assert f.values[3] == pytest.approx(0.0, abs=1e-14)


def test_cell_field_api(grid):
    data = seed(np.linspace(0.0, 0.9, 10), 2.0)
    f = CellField(grid, data)
    assert f.values.shape == (10,)
    assert np.allclose(f.tangents, 2.0)
    assert f.at(3).value == pytest.approx(0.3)
    g = f.with_tangent(np.zeros(10))
    assert np.allclose(g.values, f.values)
    assert np.allclose(g.tangents, 0.0)


def test_require_same_grid(grid):
    other = Grid1D(x_left=0.0, dx=0.1, n_cells=11)
    a = CellField(grid, lift(np.zeros(10)))
    b = CellField(other, lift(np.zeros(11)))
    with pytest.raises(GridMismatchError):
        require_same_grid(a, b)


def test_eval_constant_ignores_position_tangent(grid):
    f = CellField(grid, seed(np.arange(10.0), 3.0))
    v = eval_constant(f, Dual(0.55, 99.0))
    assert v.value == 5.0
    assert v.tangent == 3.0


def test_one_sided_slopes(grid):
    vals = np.arange(10.0) ** 2
    f = CellField(grid, lift(vals))
    plus, minus = one_sided_slopes(f, 4)
    assert plus.value == pytest.approx((vals[5] - vals[4]) / 0.1)
    assert minus.value == pytest.approx((vals[4] - vals[3]) / 0.1)
    with pytest.raises(IndexError):
        one_sided_slopes(f, 0)
    with pytest.raises(IndexError):
        one_sided_slopes(f, 9)


def test_eval_linear_hand_case():
    # three cells of width 1 centered at 0.5, 1.5, 2.5 with values 0, 1, 4
    g = Grid1D(x_left=0.0, dx=1.0, n_cells=3)
    f = CellField(g, lift(np.array([0.0, 1.0, 4.0])))
    x = 1.7
    # slopes at cell 1: minus = 1, plus = 3, center = 2
    assert eval_linear(f, x, "minus").value == pytest.approx(1.0 + 0.2 * 1.0)
    assert eval_linear(f, x, "plus").value == pytest.approx(1.0 + 0.2 * 3.0)
    assert eval_linear(f, x, "center").value == pytest.approx(1.0 + 0.2 * 2.0)
    with pytest.raises(ValueError):
        eval_linear(f, x, "upwind")
    # evaluation inside a boundary cell has no one-sided slopes
    with pytest.raises(OutOfDomainError):
        eval_linear(f, 0.5, "center")


def test_eval_linear_position_tangent_feeds_through_slope():
    g = Grid1D(x_left=0.0, dx=1.0, n_cells=3)
    f = CellField(g, lift(np.array([0.0, 1.0, 4.0])))
    xdot = 0.25
    v = eval_linear(f, Dual(1.7, xdot), "center")
    # d/de [u_i + (x - X_i) s] = xdot * s with frozen values and slopes
    assert v.tangent == pytest.approx(xdot * 2.0)


def test_eval_linear_value_tangents_feed_through():
    g = Grid1D(x_left=0.0, dx=1.0, n_cells=3)
    data = Dual(np.array([0.0, 1.0, 4.0]), np.array([1.0, 2.0, 3.0]))
    f = CellField(g, data)
    v = eval_linear(f, 1.7, "center")
    # tangent = udot_i + (x - X_i) * sdot, center slope tangent = (3 - 1) / 2
    assert v.tangent == pytest.approx(2.0 + 0.2 * 1.0)
