import numpy as np
import pytest
from scipy.integrate import cumulative_trapezoid

from oracles import sine_kernel_E
from rmtlab.painleve5 import (
    T0,
    gap_probability_on,
    gaudin,
    initial_state,
    make_rhs,
    solve_painleve5,
)
from rmtlab.prolate import gap_probability, richardson_extrapolate


def test_boundary_values():
    t0 = 1e-3
    sig, sigp, I = initial_state(t0)
    assert sig == pytest.approx(-t0 / np.pi - (t0 / np.pi) ** 2, rel=1e-15)
    assert I == pytest.approx(-t0 / np.pi - t0 ** 2 / (2 * np.pi ** 2), rel=1e-15)
    sol = solve_painleve5(grid_points=5)
    assert sol.sigma[0] == initial_state(T0)[0]


def test_gap_probability_shape(gaudin_solution):
    E = gaudin_solution.E
    assert abs(E[0] - 1) <= 1e-10
    assert np.all(np.diff(E) <= 0)
    assert np.all((E > 0) & (E <= 1))


def test_density_properties(gaudin_solution):
    s, p = gaudin_solution.s, gaudin_solution.p
    assert p.min() >= -1e-9
    assert abs(p[0]) < 1e-20
    assert abs(np.trapezoid(p, s) - 1) <= 1e-6
    assert abs(np.trapezoid(s * p, s) - 1) <= 1e-3


def test_density_is_second_derivative_of_gap(gaudin_solution):
    s, E, p = gaudin_solution.s, gaudin_solution.E, gaudin_solution.p
    h = s[1] - s[0]
    d2 = (E[2:] - 2 * E[1:-1] + E[:-2]) / h ** 2
    mid = s[1:-1]
    win = (mid >= 0.2) & (mid <= 4.5)
    assert np.max(np.abs(d2[win] - p[1:-1][win])) <= 1e-4


def test_redundant_integration_of_sigma():
    sol = solve_painleve5(grid_points=20000)
    I_trap = sol.I[0] + cumulative_trapezoid(sol.sigma / sol.t, sol.t, initial=0.0)
    assert np.max(np.abs(np.exp(I_trap) - sol.E)) <= 1e-8


def test_against_sine_kernel_determinant():
    s = np.array([0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0])
    E = gap_probability_on(s)
    oracle = np.array([sine_kernel_E(v) for v in s])
    np.testing.assert_allclose(E, oracle, rtol=0, atol=1e-10)


def test_matches_extrapolated_prolate_at_five():
    values = [[gap_probability(5.0, n) for n in (20, 40, 80, 160)]]
    extrapolated, _ = richardson_extrapolate(values)
    assert abs(gap_probability_on([0.0, 5.0])[-1] - extrapolated[0]) <= 1e-10


def test_radicand_clamp():
    rhs = make_rhs(1e-13)
    # sigma - t sigma' = 0 exactly gives a zero radicand
    assert rhs(1.0, np.array([0.0, 0.0, 0.0]))[1] == 0.0
    assert make_rhs(2.0)(1.0, np.array([1.0, 0.0, 0.0]))[1] == 0.0
    assert np.isnan(make_rhs(1e-30)(1.0, np.array([1.0, 0.0, 0.0]))[1])


def test_invalid_span():
    with pytest.raises(ValueError):
        solve_painleve5(t0=0.0)
    with pytest.raises(ValueError):
        gaudin(t0=2.0, tn=1.0)
