#*************************************************************************************
# Module: losses
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/06/2026   Initial Release
#
# File Description
# ------------------------------------------------------------------------------------
# Contains the training objectives: mean squared error, the power-balance penalty and
# the bound/ramp constraint penalties, each with its gradient with respect to the
# normalized 5-vector predictions.
#
# Penalties live in physical space. Predictions are denormalized with the target
# normalizer, residuals are divided by power_base (kW; 1.0 means plain kW) and the
# chain rule through the normalizer scale is applied to the gradients. Every inequality
# is written with a non-negative slack; minimising over the slack leaves the hinge
# max(0, violation), so each constraint term is a squared hinge.
#*************************************************************************************
from dataclasses import dataclass, fields
from typing import NamedTuple

import numpy as np

from pidispatch.exceptions import InputDomainError, MissingContextError, ShapeError

# Target-order unit columns: chp, ng, ds, wind, pv.
CONVENTIONAL = np.array([True, True, True, False, False])
WIND = np.array([False, False, False, True, False])
PV = np.array([False, False, False, False, True])


@dataclass(frozen=True)
class PenaltyWeights:
    """Penalty multipliers; pbc weighs power balance, the rest the hinge terms."""

    pbc: float = 1.0
    gen_lower: float = 0.1
    gen_upper: float = 0.1
    ramp_up: float = 0.1
    ramp_down: float = 0.1
    pv_lower: float = 0.1
    pv_upper: float = 0.1
    wind_lower: float = 0.1
    wind_upper: float = 0.1
    include_gen_upper: bool = True

    def __post_init__(self):
        for item in fields(self):
            value = getattr(self, item.name)
            if item.name != 'include_gen_upper' and not value >= 0:
                raise InputDomainError('penalty weight {0} must be non-negative, got {1}'.format(item.name, value))

    @classmethod
    def zero(cls):
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


@dataclass(eq=False)
class ConstraintContext:
    """Per-sample physical quantities, units in target order.

    previous may be None when no ramp term is weighted.
    """

    load: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    ramp_up: np.ndarray
    ramp_down: np.ndarray
    target_min: np.ndarray
    target_scale: np.ndarray
    previous: np.ndarray = None
    committed: np.ndarray = None
    power_base: float = 1.0

    def __post_init__(self):
        if self.power_base <= 0:
            raise InputDomainError('power_base must be positive')
        if self.committed is None:
            self.committed = np.ones_like(self.lower, dtype=bool)

    def physical(self, pred):
        return pred * self.target_scale + self.target_min


class PiLoss(NamedTuple):
    value: float
    grad: np.ndarray
    mse: float
    pbc: float
    constraint: float


def _check_batch(pred, other, name):
    if pred.ndim != 2 or pred.shape[0] < 1:
        raise ShapeError('predictions must be a non-empty (batch, outputs) array, got {0}'.format(pred.shape))
    if other.shape[0] != pred.shape[0]:
        raise ShapeError('{0} has {1} rows, predictions have {2}'.format(name, other.shape[0], pred.shape[0]))


def mse_loss(pred, truth):
    """Returns ((1/N) sum_i ||y_i - y_hat_i||^2, (2/N)(y_hat - y))."""
    pred = np.asarray(pred, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if pred.shape != truth.shape:
        raise ShapeError('prediction shape {0} differs from truth shape {1}'.format(pred.shape, truth.shape))
    _check_batch(pred, truth, 'truth')
    n = pred.shape[0]
    error = pred - truth
    return float(np.sum(error ** 2) / n), 2.0 * error / n


def pbc_loss(pred, context, weight):
    """Returns the power-balance penalty weight * mean((sum P_hat - load)^2) and its gradient.

    Raises
    ------
    1. MissingContextError: no normalizer scale in the context.
    """
    pred = np.asarray(pred, dtype=float)
    if context is None or context.target_scale is None:
        raise MissingContextError('power-balance penalty needs the target normalizer')
    load = np.asarray(context.load, dtype=float)
    _check_batch(pred, load, 'load')
    n = pred.shape[0]
    residual = (context.physical(pred).sum(axis=1) - load) / context.power_base
    value = weight * float(np.mean(residual ** 2))
    grad_physical = (2.0 * weight / n) * residual / context.power_base
    return value, grad_physical[:, None] * context.target_scale[None, :]


def _hinge_terms(context, weights):
    # (weight, column mask, reference, sign): violation = max(0, sign * (P - reference)).
    terms = [
        (weights.gen_lower, CONVENTIONAL, context.lower, -1.0),
        (weights.gen_upper if weights.include_gen_upper else 0.0, CONVENTIONAL, context.upper, 1.0),
        (weights.pv_lower, PV, context.lower, -1.0),
        (weights.pv_upper, PV, context.upper, 1.0),
        (weights.wind_lower, WIND, context.lower, -1.0),
        (weights.wind_upper, WIND, context.upper, 1.0),
    ]
    if weights.ramp_up > 0 or weights.ramp_down > 0:
        if context.previous is None:
            raise MissingContextError('ramp penalties need the previous setpoints')
        terms += [
            (weights.ramp_up, CONVENTIONAL, context.previous + context.ramp_up, 1.0),
            (weights.ramp_down, CONVENTIONAL, context.previous - context.ramp_down, -1.0),
        ]
    return terms


def constraint_loss(pred, context, weights):
    """Returns sum_j lambda_j * mean(sum_units max(0, violation_j)^2) and its gradient.

    Covers conventional lower/upper bounds, ramp-up, ramp-down, PV and wind
    minimum/maximum. A prediction exactly on a bound contributes nothing.

    Raises
    ------
    1. MissingContextError: ramp weights > 0 without previous setpoints.
    """
    pred = np.asarray(pred, dtype=float)
    _check_batch(pred, np.asarray(context.lower), 'context')
    n = pred.shape[0]
    physical = context.physical(pred)
    value = 0.0
    grad_physical = np.zeros_like(physical)
    for weight, mask, reference, sign in _hinge_terms(context, weights):
        if weight == 0:
            continue
        active = mask[None, :] & context.committed
        violation = np.where(active, np.maximum(0.0, sign * (physical - reference)), 0.0) / context.power_base
        value += weight * float(np.sum(violation ** 2) / n)
        grad_physical += sign * (2.0 * weight / n) * violation / context.power_base
    return value, grad_physical * context.target_scale[None, :]


def total_pi_loss(pred, truth, context, weights):
    """Returns MSE + power-balance + constraint penalties with the summed gradient."""
    mse, grad = mse_loss(pred, truth)
    pbc = 0.0
    constraint = 0.0
    if weights.pbc > 0:
        pbc, pbc_grad = pbc_loss(pred, context, weights.pbc)
        grad = grad + pbc_grad
    if any(getattr(weights, name) > 0 for name in ('gen_lower', 'gen_upper', 'ramp_up', 'ramp_down',
                                                   'pv_lower', 'pv_upper', 'wind_lower', 'wind_upper')):
        constraint, con_grad = constraint_loss(pred, context, weights)
        grad = grad + con_grad
    return PiLoss(mse + pbc + constraint, grad, mse, pbc, constraint)
