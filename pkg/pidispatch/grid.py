#*************************************************************************************
# Module: grid
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/02/2026   Initial Release
#   1.1      03/09/2026   Vectorised PV and wind conversion for dataset construction.
#
# File Description
# ------------------------------------------------------------------------------------
# Contains the microgrid physics and cost mathematics: generator specifications,
# quadratic and linear cost evaluation, PV irradiance-to-power conversion and the
# piecewise wind power curve. Units are kW for power and currency per hour for cost.
#
# Functions
# ------------------------------------------------------------------------------------
#         Name                                      Description
# --------------------         -------------------------------------------------------
# annuity()                    Annuitization constant for an investment.
#
# eval_cost()                  Cost of running a unit at a given output.
#
# marginal_cost()              Derivative of eval_cost() with respect to output.
#
# total_cost()                 Fleet cost of a setpoint vector (committed units only).
#
# pv_power()                   PV output from irradiance and cell temperature.
#
# wind_power()                 Wind turbine output from wind speed.
#*************************************************************************************
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from pidispatch.exceptions import InputDomainError

# Tolerance used when checking a power value against a unit's bounds.
BOUND_TOL = 1e-9


class GeneratorKind(Enum):
    CHP = 'chp'
    NG = 'ng'
    DS = 'ds'
    PV = 'pv'
    WIND = 'wind'

    @property
    def is_conventional(self):
        return self in (GeneratorKind.CHP, GeneratorKind.NG, GeneratorKind.DS)

    @property
    def is_renewable(self):
        return not self.is_conventional


@dataclass(frozen=True)
class QuadraticCost:
    """Cost alpha + beta*P + gamma*P**2 of a conventional unit."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ('alpha', 'beta', 'gamma'):
            if not math.isfinite(getattr(self, name)):
                raise InputDomainError('{0} must be finite'.format(name))
        if self.gamma < 0:
            raise InputDomainError('gamma must be non-negative, got {0}'.format(self.gamma))


def annuity(r_interest, lifetime_years):
    """Returns the annuitization constant r / (1 - (1 + r)**-N).

    Arguments
    ---------
    1. r_interest {float} -- Yearly interest rate.
    2. lifetime_years {int} -- Economic lifetime N.

    Raises
    ------
    1. InputDomainError: lifetime below one year or interest below -1.

    Returns
    -------
    float -- Fraction of the investment paid back each year.
    """
    if lifetime_years < 1:
        raise InputDomainError('lifetime_years must be at least 1')
    if r_interest <= -1:
        raise InputDomainError('r_interest must be greater than -1')
    if r_interest == 0:
        return 1.0 / lifetime_years
    return r_interest / (1.0 - (1.0 + r_interest) ** (-lifetime_years))


@dataclass(frozen=True)
class LinearCost:
    """Cost k_coeff*P of a renewable unit, k_coeff = annuity * invest + maintenance."""

    k_coeff: float
    r_interest: float = None
    lifetime_years: int = None
    invest_per_kw: float = None
    maint_per_kw: float = None

    def __post_init__(self):
        if not math.isfinite(self.k_coeff) or self.k_coeff <= 0:
            raise InputDomainError('k_coeff must be finite and positive, got {0}'.format(self.k_coeff))
        derivation = (self.r_interest, self.lifetime_years, self.invest_per_kw, self.maint_per_kw)
        if all(value is not None for value in derivation):
            expected = annuity(self.r_interest, self.lifetime_years) * self.invest_per_kw + self.maint_per_kw
            if not math.isclose(expected, self.k_coeff, rel_tol=1e-9, abs_tol=1e-12):
                raise InputDomainError('k_coeff {0} disagrees with its derivation {1}'.format(self.k_coeff, expected))

    @classmethod
    def from_investment(cls, r_interest, lifetime_years, invest_per_kw, maint_per_kw):
        k_coeff = annuity(r_interest, lifetime_years) * invest_per_kw + maint_per_kw
        return cls(k_coeff, r_interest, lifetime_years, invest_per_kw, maint_per_kw)


@dataclass(frozen=True)
class GeneratorSpec:
    """One dispatchable unit.

    Ramp limits are kW per timestep; math.inf disables them.
    """

    kind: GeneratorKind
    cost: object
    p_min: float
    p_max: float
    ramp_up: float = math.inf
    ramp_down: float = math.inf
    committed: bool = True
    name: str = field(default=None)

    def __post_init__(self):
        if self.name is None:
            object.__setattr__(self, 'name', self.kind.value)
        if not (0 <= self.p_min <= self.p_max) or not math.isfinite(self.p_max):
            raise InputDomainError('{0}: need 0 <= p_min <= p_max < inf, got [{1}, {2}]'.format(self.name, self.p_min, self.p_max))
        if self.ramp_up < 0 or self.ramp_down < 0:
            raise InputDomainError('{0}: ramp limits must be non-negative'.format(self.name))
        if self.kind.is_conventional and not isinstance(self.cost, QuadraticCost):
            raise InputDomainError('{0}: conventional units carry a QuadraticCost'.format(self.name))
        if self.kind.is_renewable and not isinstance(self.cost, LinearCost):
            raise InputDomainError('{0}: renewable units carry a LinearCost'.format(self.name))

    @property
    def is_conventional(self):
        return self.kind.is_conventional


@dataclass(frozen=True)
class PvPhysics:
    p_stc: float
    i_stc: float = 1000.0
    k_t: float = -0.0047
    t_ref: float = 25.0

    def __post_init__(self):
        if self.i_stc <= 0:
            raise InputDomainError('i_stc must be positive')


@dataclass(frozen=True)
class WindPhysics:
    p_rated: float
    v_cut_in: float = 3.0
    v_rated: float = 12.0
    v_cut_off: float = 25.0

    def __post_init__(self):
        if not (0 < self.v_cut_in < self.v_rated < self.v_cut_off):
            raise InputDomainError('need 0 < v_cut_in < v_rated < v_cut_off')


def _check_power(p):
    if not math.isfinite(p):
        raise InputDomainError('power must be finite, got {0}'.format(p))


def eval_cost(spec, p):
    """Returns the hourly cost of running spec at p kW.

    Arguments
    ---------
    1. spec {GeneratorSpec} -- The unit.
    2. p {float} -- Output in kW.

    Raises
    ------
    1. InputDomainError: p is not finite or negative.

    Returns
    -------
    float -- alpha + beta*p + gamma*p**2 for conventional units, k_coeff*p otherwise.
    """
    _check_power(p)
    if p < 0:
        raise InputDomainError('power must be non-negative, got {0}'.format(p))
    cost = spec.cost
    if isinstance(cost, QuadraticCost):
        return cost.alpha + cost.beta * p + cost.gamma * p * p
    return cost.k_coeff * p


def marginal_cost(spec, p):
    """Returns d(cost)/dp at p kW; p must lie within [p_min, p_max]."""
    _check_power(p)
    if p < spec.p_min - BOUND_TOL or p > spec.p_max + BOUND_TOL:
        raise InputDomainError('{0}: {1} kW outside [{2}, {3}]'.format(spec.name, p, spec.p_min, spec.p_max))
    cost = spec.cost
    if isinstance(cost, QuadraticCost):
        return cost.beta + 2.0 * cost.gamma * p
    return cost.k_coeff


def total_cost(fleet, setpoints, committed=None):
    # Uncommitted units cost nothing, not even their no-load alpha.
    if committed is None:
        committed = [spec.committed for spec in fleet]
    return sum(eval_cost(spec, float(p)) for spec, p, on in zip(fleet, setpoints, committed) if on)


def pv_power(phys, irradiance, temp):
    """Returns PV output p_stc*(I/I_stc)*(1 + k_t*(t_ref - T)), clamped at zero.

    Arguments
    ---------
    1. phys {PvPhysics} -- Panel constants.
    2. irradiance {float} -- W/m2, must be non-negative.
    3. temp {float} -- Cell temperature in degrees C.

    Raises
    ------
    1. InputDomainError: negative irradiance.

    Returns
    -------
    float -- kW.
    """
    if irradiance < 0:
        raise InputDomainError('irradiance must be non-negative, got {0}'.format(irradiance))
    power = phys.p_stc * (irradiance / phys.i_stc) * (1.0 + phys.k_t * (phys.t_ref - temp))
    return max(0.0, power)


def wind_power(phys, v):
    """Returns turbine output at wind speed v (m/s) from the piecewise power curve."""
    if v < 0:
        raise InputDomainError('wind speed must be non-negative, got {0}'.format(v))
    if v < phys.v_cut_in or v > phys.v_cut_off:
        return 0.0
    if v <= phys.v_rated:
        return phys.p_rated * (v - phys.v_cut_in) / (phys.v_rated - phys.v_cut_in)
    return phys.p_rated


def pv_power_series(phys, irradiance, temp):
    irradiance = np.asarray(irradiance, dtype=float)
    if np.any(irradiance < 0):
        raise InputDomainError('irradiance must be non-negative')
    power = phys.p_stc * (irradiance / phys.i_stc) * (1.0 + phys.k_t * (phys.t_ref - np.asarray(temp, dtype=float)))
    return np.maximum(power, 0.0)


def wind_power_series(phys, v):
    v = np.asarray(v, dtype=float)
    if np.any(v < 0):
        raise InputDomainError('wind speed must be non-negative')
    ramp = phys.p_rated * (v - phys.v_cut_in) / (phys.v_rated - phys.v_cut_in)
    power = np.where(v <= phys.v_rated, ramp, phys.p_rated)
    return np.where((v < phys.v_cut_in) | (v > phys.v_cut_off), 0.0, power)
