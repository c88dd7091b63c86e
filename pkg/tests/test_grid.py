# tests/test_grid.py
# Tests the unit cost models and the renewable conversion physics in pidispatch.grid.

# Importing relevant libraries
import math

import numpy as np
import pytest

from pidispatch.exceptions import InputDomainError
from pidispatch.grid import (GeneratorKind, GeneratorSpec, LinearCost, PvPhysics, QuadraticCost, WindPhysics,
                             annuity, eval_cost, marginal_cost, pv_power, pv_power_series, total_cost,
                             wind_power, wind_power_series)
from tests.helpers import linear_unit, quadratic_unit


@pytest.fixture
# A 100 kW panel at standard test conditions.
def panel():
    return PvPhysics(p_stc=100.0, i_stc=1000.0, k_t=-0.0047, t_ref=25.0)


@pytest.fixture
# A 100 kW turbine cutting in at 3 m/s and reaching rated power at 12 m/s.
def turbine():
    return WindPhysics(p_rated=100.0, v_cut_in=3.0, v_rated=12.0, v_cut_off=25.0)


# eval_cost() evaluates alpha + beta*p + gamma*p^2 and k*p.
def test_eval_cost_examples():
    assert eval_cost(quadratic_unit('q', beta=2.0, gamma=0.5, alpha=1.0), 4.0) == pytest.approx(17.0)
    assert eval_cost(quadratic_unit('q', beta=2.0, gamma=0.5, alpha=1.0), 0.0) == 1.0
    assert eval_cost(linear_unit('l', 0.3), 10.0) == pytest.approx(3.0)


@pytest.mark.parametrize('p', [-1.0, math.inf, math.nan])
# Negative or non-finite power is outside the domain.
def test_eval_cost_rejects_bad_power(p):
    with pytest.raises(InputDomainError):
        eval_cost(linear_unit('l', 0.3), p)


# marginal_cost() is the derivative of the cost curve.
def test_marginal_cost_examples():
    assert marginal_cost(quadratic_unit('q', beta=2.0, gamma=0.5), 4.0) == pytest.approx(6.0)
    assert marginal_cost(linear_unit('l', 0.3), 42.0) == pytest.approx(0.3)
    assert marginal_cost(quadratic_unit('q', beta=2.5, gamma=0.0), 17.0) == pytest.approx(2.5)


# marginal_cost() refuses points outside [p_min, p_max].
def test_marginal_cost_outside_bounds():
    with pytest.raises(InputDomainError):
        marginal_cost(quadratic_unit('q', beta=1.0, gamma=0.1, p_min=5.0, p_max=10.0), 11.0)


# Quadratic costs must be convex.
def test_negative_gamma_rejected():
    with pytest.raises(InputDomainError):
        QuadraticCost(1.0, 1.0, -0.1)


# The annuity formula derives k_coeff from investment and maintenance.
def test_linear_cost_from_investment():
    cost = LinearCost.from_investment(0.06, 20, 0.30, 0.012)
    factor = 0.06 / (1.0 - 1.06 ** -20)
    assert cost.k_coeff == pytest.approx(factor * 0.30 + 0.012)
    assert annuity(0.0, 4) == pytest.approx(0.25)
    with pytest.raises(InputDomainError):
        LinearCost(0.5, 0.06, 20, 0.30, 0.012)


# Unit kinds and cost models have to agree.
def test_generator_spec_validation():
    with pytest.raises(InputDomainError):
        GeneratorSpec(GeneratorKind.CHP, LinearCost(0.3), 0.0, 10.0)
    with pytest.raises(InputDomainError):
        GeneratorSpec(GeneratorKind.PV, LinearCost(0.3), 5.0, 1.0)
    assert GeneratorSpec(GeneratorKind.WIND, LinearCost(0.3), 0.0, 1.0).name == 'wind'


# total_cost() skips uncommitted units, including their no-load cost.
def test_total_cost_skips_uncommitted():
    fleet = (quadratic_unit('a', beta=1.0, gamma=0.0, alpha=5.0), quadratic_unit('b', beta=1.0, gamma=0.0, alpha=7.0))
    assert total_cost(fleet, [2.0, 0.0]) == pytest.approx(5.0 + 2.0 + 7.0)
    assert total_cost(fleet, [2.0, 0.0], committed=[True, False]) == pytest.approx(7.0)


# pv_power() examples from the conversion formula.
def test_pv_power_examples(panel):
    assert pv_power(panel, 0.0, 30.0) == 0.0
    assert pv_power(panel, 1000.0, 25.0) == pytest.approx(100.0)
    assert pv_power(panel, 500.0, 35.0) == pytest.approx(52.35)
    with pytest.raises(InputDomainError):
        pv_power(panel, -1.0, 25.0)


# pv_power() is linear in irradiance at a fixed temperature.
def test_pv_power_linear_in_irradiance(panel):
    for irradiance in (50.0, 230.0, 480.0):
        assert pv_power(panel, 2 * irradiance, 31.0) == pytest.approx(2 * pv_power(panel, irradiance, 31.0))


# wind_power() follows the piecewise curve.
def test_wind_power_examples(turbine):
    assert wind_power(turbine, 1.5) == 0.0
    assert wind_power(turbine, 7.5) == pytest.approx(50.0)
    for v in (12.0, 18.0, 25.0):
        assert wind_power(turbine, v) == pytest.approx(100.0)
    assert wind_power(turbine, 25.5) == 0.0


# The curve is continuous at cut-in and at rated speed.
def test_wind_power_continuity(turbine):
    assert wind_power(turbine, 3.0 + 1e-9) == pytest.approx(0.0, abs=1e-6)
    assert wind_power(turbine, 12.0 - 1e-9) == pytest.approx(100.0, abs=1e-6)


# The vectorised series agree with the scalar functions.
def test_series_match_scalar(panel, turbine):
    irradiance = np.array([0.0, 120.0, 640.0, 990.0])
    temp = np.array([10.0, 18.0, 33.0, 41.0])
    speeds = np.array([0.0, 3.0, 7.5, 12.0, 24.9, 25.0, 30.0])
    expected_pv = [pv_power(panel, i, t) for i, t in zip(irradiance, temp)]
    expected_wind = [wind_power(turbine, v) for v in speeds]
    assert np.allclose(pv_power_series(panel, irradiance, temp), expected_pv)
    assert np.allclose(wind_power_series(turbine, speeds), expected_wind)


@pytest.mark.parametrize('seed', range(5))
# Cost curves are convex: the chord between two points never dips below the curve.
def test_eval_cost_convex(seed):
    rng = np.random.default_rng(seed)
    units = (quadratic_unit('q', beta=float(rng.uniform(0.5, 3.0)), gamma=float(rng.uniform(0.0, 0.5)),
                            alpha=float(rng.uniform(0.0, 5.0))),
             linear_unit('l', float(rng.uniform(0.01, 1.0))))
    for spec in units:
        for _ in range(50):
            a, b = (float(value) for value in rng.uniform(0.0, 100.0, 2))
            t = float(rng.uniform())
            chord = t * eval_cost(spec, a) + (1.0 - t) * eval_cost(spec, b)
            assert eval_cost(spec, t * a + (1.0 - t) * b) <= chord + 1e-9 * (1.0 + abs(chord))


@pytest.mark.parametrize('p', [1.0, 25.0, 50.0, 99.0])
# marginal_cost() agrees with a central difference of eval_cost().
def test_marginal_cost_matches_difference(p):
    h = 1e-5
    for spec in (quadratic_unit('q', beta=2.0, gamma=0.5, alpha=1.0), linear_unit('l', 0.3)):
        numeric = (eval_cost(spec, p + h) - eval_cost(spec, p - h)) / (2.0 * h)
        assert marginal_cost(spec, p) == pytest.approx(numeric, rel=1e-6)
