#*************************************************************************************
# Module: oracle
# Class Name: Oracle
# Super Class: client (pidispatch/client.py)
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/03/2026   Initial Release
#   1.1      03/10/2026   Exhaustive horizon oracle for tests.
#
# File Description
# ------------------------------------------------------------------------------------
# Contains the ground-truth economic dispatch solver. A single timestep is solved by
# bisection on the shared marginal price (equal incremental cost); commitment is
# solved by enumerating on/off states of the conventional units; a horizon is solved
# greedily step by step with ramp-tightened bounds. Grid search oracles verify the
# results independently.
#
# Functions
# ------------------------------------------------------------------------------------
#         Name                                      Description
# --------------------         -------------------------------------------------------
# solve_single()               Cost-minimising dispatch of one timestep.
#
# solve_with_commitment()      Best on/off combination of conventional units.
#
# solve_horizon()              Greedy multi-step dispatch under ramp limits.
#
# brute_force_solve()          Exhaustive grid search of one timestep.
#
# brute_force_horizon()        Exhaustive grid search of a short horizon.
#
# kkt_residual()               Largest stationarity violation of a solution.
#
# check_ramp_feasible()        Verifies ramp limits along a trajectory.
#
# Class Methods
# ------------------------------------------------------------------------------------
#         Name                                      Description
# --------------------         -------------------------------------------------------
# __init__()                   Constructor
#
# solve()                      Solves one load against the configured fleet.
#
# solve_series()               Solves a load series against the configured fleet.
#*************************************************************************************
import itertools
import logging
import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from pidispatch.exceptions import (HorizonError, InfeasibleError, InputDomainError,
                                   NumericalError)
from pidispatch.grid import QuadraticCost, marginal_cost, total_cost

logger = logging.getLogger(__name__)

DEFAULT_BALANCE_TOL = 1e-9
DEFAULT_MAX_ITER = 200
MAX_COMMITMENT_UNITS = 12
MAX_BRUTE_FORCE_UNITS = 4
KKT_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class DispatchInstance:
    """One timestep's decision problem.

    lower/upper hold each unit's effective bounds while committed (static bounds
    tightened by renewable availability and ramp limits). An uncommitted unit is
    pinned to zero through effective_lower/effective_upper.
    """

    load: float
    units: tuple
    lower: np.ndarray
    upper: np.ndarray
    committed: tuple

    def __post_init__(self):
        if not math.isfinite(self.load):
            raise InputDomainError('load must be finite, got {0}'.format(self.load))
        if not (len(self.units) == len(self.lower) == len(self.upper) == len(self.committed)):
            raise InputDomainError('units, bounds and commitment must have equal length')
        if np.any(self.lower > self.upper + 1e-9):
            bad = int(np.argmax(self.lower - self.upper))
            raise InfeasibleError(surplus=float(self.lower[bad] - self.upper[bad]),
                                  message='{0}: effective lower bound {1:.6g} above upper bound {2:.6g}'.format(
                                      self.units[bad].name, self.lower[bad], self.upper[bad]))

    @property
    def effective_lower(self):
        return np.where(self.committed, self.lower, 0.0)

    @property
    def effective_upper(self):
        return np.where(self.committed, self.upper, 0.0)

    def with_commitment(self, committed):
        return DispatchInstance(self.load, self.units, self.lower, self.upper, tuple(bool(c) for c in committed))

    @classmethod
    def from_fleet(cls, load, fleet, available=None, previous=None, previous_committed=None, startup_free=True):
        """Builds an instance with availability- and ramp-tightened bounds.

        Arguments
        ---------
        1. load {float} -- Demand in kW.
        2. fleet {sequence} -- GeneratorSpec per unit.
        3. available {sequence or dict} -- Renewable cap per unit (by position or name).
        4. previous {sequence} -- Setpoints of the previous timestep.
        5. previous_committed {sequence} -- Commitment of the previous timestep.
        6. startup_free {bool} -- A unit switching on may start anywhere in its static bounds.

        Raises
        ------
        1. InfeasibleError: ramp window and static bounds do not intersect.

        Returns
        -------
        DispatchInstance -- The instance.
        """
        fleet = tuple(fleet)
        caps = _caps(fleet, available)
        lower = np.array([spec.p_min for spec in fleet], dtype=float)
        upper = np.array([spec.p_max for spec in fleet], dtype=float)
        committed = tuple(spec.committed for spec in fleet)

        for i, spec in enumerate(fleet):
            if spec.kind.is_renewable and caps[i] < math.inf:
                upper[i] = min(upper[i], max(caps[i], 0.0))
                lower[i] = min(lower[i], upper[i])
            if previous is None or not committed[i]:
                continue
            was_on = True if previous_committed is None else bool(previous_committed[i])
            if not was_on and startup_free:
                continue
            prev = float(previous[i]) if was_on else 0.0
            lower[i] = max(lower[i], prev - spec.ramp_down)
            upper[i] = min(upper[i], prev + spec.ramp_up)
        return cls(float(load), fleet, lower, upper, committed)


def _caps(fleet, available):
    if available is None:
        return [math.inf] * len(fleet)
    if isinstance(available, dict):
        return [float(available.get(spec.name, math.inf)) for spec in fleet]
    caps = [float(value) for value in available]
    if len(caps) != len(fleet):
        raise InputDomainError('availability needs one entry per unit')
    return caps


@dataclass(frozen=True, eq=False)
class DispatchSolution:
    setpoints: np.ndarray
    total_cost: float
    balance_residual: float
    lambda_star: float
    committed: tuple
    status: str = 'optimal'


@dataclass(eq=False)
class HorizonSolution:
    solutions: list
    cumulative_cost: float
    ramp_feasible: bool
    unit_names: tuple = field(default=())

    @property
    def setpoints(self):
        return np.vstack([solution.setpoints for solution in self.solutions])

    def to_frame(self):
        """Returns one row per timestep: t, p_<unit>..., cost, lambda."""
        frame = pd.DataFrame(self.setpoints, columns=['p_{0}'.format(name) for name in self.unit_names])
        frame.insert(0, 't', np.arange(len(self.solutions)))
        frame['cost'] = [solution.total_cost for solution in self.solutions]
        frame['lambda'] = [solution.lambda_star for solution in self.solutions]
        return frame


def _price_split(units):
    # Units with a constant marginal cost (linear, or quadratic with gamma == 0) are
    # "flat"; they switch between their bounds at their price.
    quadratic = np.array([isinstance(s.cost, QuadraticCost) and s.cost.gamma > 0 for s in units])
    beta = np.array([s.cost.beta if isinstance(s.cost, QuadraticCost) else 0.0 for s in units])
    gamma = np.array([s.cost.gamma if isinstance(s.cost, QuadraticCost) else 0.0 for s in units])
    price = np.array([s.cost.beta if isinstance(s.cost, QuadraticCost) else s.cost.k_coeff for s in units])
    return quadratic, beta, gamma, price


def _equal_split(residual, lower, upper):
    # Raises every tied unit by the same amount above its lower bound, water-filling
    # units that hit their upper bound.
    alloc = lower.copy()
    remaining = max(residual - lower.sum(), 0.0)
    free = [i for i in range(len(alloc)) if upper[i] > alloc[i]]
    while remaining > 0 and free:
        share = remaining / len(free)
        for i in free:
            take = min(share, upper[i] - alloc[i])
            alloc[i] += take
            remaining -= take
        free = [i for i in free if upper[i] - alloc[i] > 1e-15]
        if remaining <= 1e-15:
            break
    return alloc


def solve_single(inst, balance_tol=DEFAULT_BALANCE_TOL, max_iter=DEFAULT_MAX_ITER):
    """Returns the cost-minimising dispatch of one timestep.

    Bisection on the shared marginal price lambda. A quadratic unit supplies
    clip((lambda - beta) / (2 gamma), lo, hi); a flat-priced unit supplies lo below its
    price and hi above it. When lambda lands on a flat price the tied units share the
    balancing residual equally.

    Arguments
    ---------
    1. inst {DispatchInstance} -- The timestep.
    2. balance_tol {float} -- Allowed |sum(setpoints) - load| in kW.
    3. max_iter {int} -- Bisection iteration limit.

    Raises
    ------
    1. InfeasibleError: load outside [sum of lower bounds, sum of upper bounds].
    2. NumericalError: no balanced point found within max_iter iterations.

    Returns
    -------
    DispatchSolution -- Setpoints, cost, residual and lambda.
    """
    lo = inst.effective_lower
    hi = inst.effective_upper
    load = inst.load
    if load > hi.sum() + balance_tol:
        raise InfeasibleError(deficit=float(load - hi.sum()))
    if load < lo.sum() - balance_tol:
        raise InfeasibleError(surplus=float(lo.sum() - load))

    quadratic, beta, gamma, price = _price_split(inst.units)
    flat = ~quadratic
    safe_gamma = np.where(quadratic, gamma, 1.0)

    def quadratic_output(lam):
        return np.where(quadratic, np.clip((lam - beta) / (2.0 * safe_gamma), lo, hi), 0.0)

    def flat_output(lam, inclusive):
        below = price <= lam if inclusive else price < lam
        return np.where(flat, np.where(below, hi, lo), 0.0)

    setpoints = None
    lam = None

    # A flat price can itself be the clearing price.
    for k in np.unique(price[flat & (hi > lo)]):
        base = quadratic_output(k).sum()
        supply_low = base + flat_output(k, False).sum()
        supply_high = base + flat_output(k, True).sum()
        if supply_low - balance_tol <= load <= supply_high + balance_tol:
            lam = float(k)
            tied = flat & (price == k)
            setpoints = quadratic_output(k) + np.where(tied, 0.0, flat_output(k, False))
            residual = load - setpoints.sum()
            setpoints[tied] = _equal_split(residual, lo[tied], hi[tied])
            break

    if setpoints is None:
        marginal_lo = np.where(quadratic, beta + 2.0 * gamma * lo, price)
        marginal_hi = np.where(quadratic, beta + 2.0 * gamma * hi, price)
        a = min(0.0, float(marginal_lo.min())) if len(lo) else 0.0
        b = float(marginal_hi.max()) if len(hi) else 0.0
        iterations = 0
        residual = math.inf
        for iterations in range(1, max_iter + 1):
            lam = 0.5 * (a + b)
            setpoints = quadratic_output(lam) + flat_output(lam, False)
            residual = setpoints.sum() - load
            if abs(residual) <= balance_tol:
                break
            if residual > 0:
                b = lam
            else:
                a = lam
        logger.debug('lambda search stopped after %d iterations, residual %.3g kW', iterations, residual)

        if abs(residual) > balance_tol:
            # Float resolution of lambda can leave a tiny residual on steep supply
            # curves; spread it over interior quadratic units in proportion to 1/gamma.
            interior = quadratic & (setpoints > lo) & (setpoints < hi)
            if interior.any():
                weights = np.where(interior, 1.0 / safe_gamma, 0.0)
                setpoints = np.clip(setpoints - residual * weights / weights.sum(), lo, hi)
                residual = setpoints.sum() - load
            if abs(residual) > balance_tol:
                raise NumericalError(max_iter, residual)

    committed = inst.committed
    cost = total_cost(inst.units, setpoints, committed)
    return DispatchSolution(
        setpoints=setpoints,
        total_cost=float(cost),
        balance_residual=float(setpoints.sum() - load),
        lambda_star=float(lam),
        committed=committed,
    )


def kkt_residual(inst, solution, bound_tol=1e-7):
    """Returns max |marginal_cost - lambda| / (1 + |lambda|) over interior units."""
    lo = inst.effective_lower
    hi = inst.effective_upper
    worst = 0.0
    for i, spec in enumerate(inst.units):
        p = float(solution.setpoints[i])
        if not inst.committed[i] or p <= lo[i] + bound_tol or p >= hi[i] - bound_tol:
            continue
        gap = abs(marginal_cost(spec, p) - solution.lambda_star) / (1.0 + abs(solution.lambda_star))
        worst = max(worst, gap)
    return worst


def solve_with_commitment(inst, balance_tol=DEFAULT_BALANCE_TOL, max_iter=DEFAULT_MAX_ITER, must_run=()):
    """Enumerates on/off states of the conventional units and returns the cheapest.

    Renewables stay available up to their caps. Equal costs prefer fewer committed
    units, then committing earlier-listed units.

    Arguments
    ---------
    1. inst {DispatchInstance} -- The timestep; lower/upper are the on-state bounds.
    2. must_run {iterable} -- Unit names or indices that stay committed.

    Raises
    ------
    1. InputDomainError: more than 12 conventional units.
    2. InfeasibleError: no combination can meet the load.

    Returns
    -------
    DispatchSolution -- The cheapest feasible dispatch.
    """
    conventional = [i for i, spec in enumerate(inst.units) if spec.is_conventional]
    if len(conventional) > MAX_COMMITMENT_UNITS:
        raise InputDomainError('commitment enumeration supports at most {0} conventional units'.format(MAX_COMMITMENT_UNITS))
    forced = {i for i, spec in enumerate(inst.units) if i in must_run or spec.name in must_run}

    best = None
    best_key = None
    last_error = None
    for bits in itertools.product((True, False), repeat=len(conventional)):
        if any(not on for i, on in zip(conventional, bits) if i in forced):
            continue
        committed = [True] * len(inst.units)
        for i, on in zip(conventional, bits):
            committed[i] = on
        try:
            solution = solve_single(inst.with_commitment(committed), balance_tol, max_iter)
        except InfeasibleError as error:
            last_error = error
            continue
        key = (sum(bits), tuple(not on for on in bits))
        if best is None or solution.total_cost < best.total_cost - 1e-9 * (1.0 + abs(best.total_cost)):
            best, best_key = solution, key
        elif abs(solution.total_cost - best.total_cost) <= 1e-9 * (1.0 + abs(best.total_cost)) and key < best_key:
            best, best_key = solution, key

    if best is None:
        if last_error is not None:
            raise InfeasibleError(last_error.deficit, last_error.surplus,
                                  'No feasible commitment. {0}'.format(last_error))
        raise InfeasibleError(message='No feasible commitment.')
    return best


def check_ramp_feasible(fleet, initial, setpoints, committed=None, tol=1e-7):
    """Returns True if every consecutive change respects the units' ramp limits."""
    trajectory = np.vstack([np.asarray(initial, dtype=float), np.asarray(setpoints, dtype=float)])
    steps = np.diff(trajectory, axis=0)
    ramp_up = np.array([spec.ramp_up for spec in fleet])
    ramp_down = np.array([spec.ramp_down for spec in fleet])
    on = np.ones(steps.shape, dtype=bool) if committed is None else np.asarray(committed, dtype=bool)
    violation = (steps > ramp_up + tol) | (-steps > ramp_down + tol)
    return not bool(np.any(violation & on))


def solve_horizon(loads, fleet, initial_setpoints, available=None, balance_tol=DEFAULT_BALANCE_TOL,
                  max_iter=DEFAULT_MAX_ITER, startup_free=True):
    """Solves a load series step by step with ramp-tightened bounds.

    Each timestep uses lo = max(p_min, P(t-1) - ramp_down) and
    hi = min(p_max, P(t-1) + ramp_up); the result is greedy in time.

    Arguments
    ---------
    1. loads {sequence} -- Demand per timestep in kW.
    2. fleet {sequence} -- GeneratorSpec per unit.
    3. initial_setpoints {sequence} -- Setpoints before the first timestep.
    4. available {array} -- Optional (T, units) renewable caps; inf where uncapped.

    Raises
    ------
    1. InputDomainError: empty series or initial setpoints outside static bounds.
    2. HorizonError: a timestep is infeasible.

    Returns
    -------
    HorizonSolution -- Per-step solutions, cumulative cost and ramp check.
    """
    fleet = tuple(fleet)
    loads = np.asarray(loads, dtype=float)
    if loads.size == 0:
        raise InputDomainError('load series is empty')
    initial = np.asarray(initial_setpoints, dtype=float)
    for spec, p in zip(fleet, initial):
        if spec.committed and not (spec.p_min - 1e-9 <= p <= spec.p_max + 1e-9):
            raise InputDomainError('{0}: initial setpoint {1} outside [{2}, {3}]'.format(spec.name, p, spec.p_min, spec.p_max))
    if available is not None and len(available) != len(loads):
        raise InputDomainError('availability needs one row per timestep')

    solutions = []
    previous = initial
    previous_committed = tuple(spec.committed for spec in fleet)
    for t, load in enumerate(loads):
        try:
            inst = DispatchInstance.from_fleet(load, fleet, None if available is None else available[t],
                                               previous, previous_committed, startup_free)
            solution = solve_single(inst, balance_tol, max_iter)
        except InfeasibleError as error:
            raise HorizonError(t, error)
        solutions.append(solution)
        previous = solution.setpoints
        previous_committed = solution.committed

    setpoints = np.vstack([solution.setpoints for solution in solutions])
    return HorizonSolution(
        solutions=solutions,
        cumulative_cost=float(sum(solution.total_cost for solution in solutions)),
        ramp_feasible=check_ramp_feasible(fleet, initial, setpoints),
        unit_names=tuple(spec.name for spec in fleet),
    )


def _unit_grid(spec, lo, hi, on, grid_step):
    if not on:
        return np.zeros(1), np.zeros(1)
    count = int(math.floor((hi - lo) / grid_step + 1e-9)) + 1
    points = lo + grid_step * np.arange(count)
    cost = spec.cost
    if isinstance(cost, QuadraticCost):
        return points, cost.alpha + cost.beta * points + cost.gamma * points ** 2
    return points, cost.k_coeff * points


def brute_force_solve(inst, grid_step):
    """Exhaustively grids every unit's interval and returns the cheapest balanced point.

    Allocations whose total lies within half a grid_step of the load count as balanced. The
    search is a min-plus convolution of the per-unit cost grids, which visits every
    grid allocation implicitly. lambda_star is NaN (no price is computed).

    Raises
    ------
    1. InputDomainError: more than 4 units or a non-positive grid step.
    2. InfeasibleError: no grid allocation balances the load.
    """
    if len(inst.units) > MAX_BRUTE_FORCE_UNITS:
        raise InputDomainError('brute force supports at most {0} units'.format(MAX_BRUTE_FORCE_UNITS))
    if grid_step <= 0:
        raise InputDomainError('grid_step must be positive')
    lo = inst.effective_lower
    hi = inst.effective_upper
    grids = [_unit_grid(spec, lo[i], hi[i], inst.committed[i], grid_step) for i, spec in enumerate(inst.units)]
    if not grids:
        raise InfeasibleError(deficit=inst.load)

    best = grids[0][1].copy()
    backpointers = []
    for points, costs in grids[1:]:
        merged = np.full(len(best) + len(costs) - 1, np.inf)
        choice = np.zeros(len(merged), dtype=int)
        for j, unit_cost in enumerate(costs):
            candidate = best + unit_cost
            window = merged[j:j + len(best)]
            better = candidate < window
            window[better] = candidate[better]
            choice[j:j + len(best)][better] = j
        backpointers.append(choice)
        best = merged

    totals = lo.sum() + grid_step * np.arange(len(best))
    balanced = np.abs(totals - inst.load) <= 0.5 * grid_step * (1.0 + 1e-9)
    if not balanced.any():
        gap = inst.load - totals[-1]
        raise InfeasibleError(deficit=max(gap, 0.0), surplus=max(totals[0] - inst.load, 0.0))
    k = int(np.flatnonzero(balanced)[np.argmin(best[balanced])])

    setpoints = np.zeros(len(grids))
    for i in range(len(grids) - 1, 0, -1):
        j = backpointers[i - 1][k]
        setpoints[i] = grids[i][0][j]
        k -= j
    setpoints[0] = grids[0][0][k]
    return DispatchSolution(
        setpoints=setpoints,
        total_cost=float(total_cost(inst.units, setpoints, inst.committed)),
        balance_residual=float(setpoints.sum() - inst.load),
        lambda_star=float('nan'),
        committed=inst.committed,
        status='grid',
    )


def brute_force_horizon(loads, fleet, initial_setpoints, grid_step, available=None):
    """Exhaustive search over every discretised trajectory of a short horizon.

    Only for tiny fleets and horizons; states are grid allocations within grid_step / 2
    of each load, transitions must respect ramp limits.
    """
    fleet = tuple(fleet)
    if len(fleet) > MAX_BRUTE_FORCE_UNITS:
        raise InputDomainError('brute force supports at most {0} units'.format(MAX_BRUTE_FORCE_UNITS))
    ramp_up = np.array([spec.ramp_up for spec in fleet])
    ramp_down = np.array([spec.ramp_down for spec in fleet])

    prev_states = np.asarray(initial_setpoints, dtype=float)[None, :]
    prev_cost = np.zeros(1)
    history = []
    for t, load in enumerate(np.asarray(loads, dtype=float)):
        inst = DispatchInstance.from_fleet(load, fleet, None if available is None else available[t])
        grids = [_unit_grid(spec, inst.effective_lower[i], inst.effective_upper[i], inst.committed[i], grid_step)
                 for i, spec in enumerate(fleet)]
        mesh = np.array(list(itertools.product(*[points for points, _ in grids])))
        costs = np.array(list(itertools.product(*[c for _, c in grids]))).sum(axis=1)
        keep = np.abs(mesh.sum(axis=1) - load) <= 0.5 * grid_step * (1.0 + 1e-9)
        states, costs = mesh[keep], costs[keep]

        step = states[:, None, :] - prev_states[None, :, :]
        allowed = np.all(step <= ramp_up + 1e-9, axis=2) & np.all(-step <= ramp_down + 1e-9, axis=2)
        total = np.where(allowed, prev_cost[None, :], np.inf)
        parent = np.argmin(total, axis=1)
        reach = total[np.arange(len(states)), parent]
        if states.size == 0 or not np.isfinite(reach).any():
            raise HorizonError(t, InfeasibleError(message='no ramp-feasible grid state'))
        history.append((states, parent))
        prev_states, prev_cost = states, reach + costs

    index = int(np.argmin(prev_cost))
    trajectory = []
    for states, parent in reversed(history):
        trajectory.append(states[index])
        index = int(parent[index])
    trajectory.reverse()

    committed = tuple(spec.committed for spec in fleet)
    solutions = [DispatchSolution(p, float(total_cost(fleet, p, committed)), float(p.sum() - load), float('nan'),
                                  committed, 'grid') for p, load in zip(trajectory, loads)]
    return HorizonSolution(solutions, float(sum(s.total_cost for s in solutions)),
                           check_ramp_feasible(fleet, initial_setpoints, np.vstack(trajectory)),
                           tuple(spec.name for spec in fleet))


class Oracle(object):
    """A sub-class to Microgrid that solves dispatch against the configured fleet.

    Arguments
    ---------
    1. client {class} -- The parent class; Microgrid.
    """

    #*************************************************************************************
    # Constructor: __init__(self, Microgrid)
    #
    # Description
    # ------------------------------------------------------------------------------------
    # This constructor takes the client class as a parameter in order to gain access to
    # its configuration (fleet and solver settings).
    #*************************************************************************************
    def __init__(self, client):
        self.client = client

    def solve(self, load, available=None, commitment=False):
        """Solves one load against the configured fleet.

        Arguments
        ---------
        1. load {float} -- Demand in kW.
        2. available {dict} -- Optional renewable caps by unit name.
        3. commitment {bool} -- Enumerate on/off states of conventional units.

        Raises
        ------
        1. InfeasibleError: the load cannot be met.

        Returns
        -------
        DispatchSolution -- The dispatch.
        """
        settings = self.client.config.oracle
        inst = DispatchInstance.from_fleet(load, self.client.config.fleet, available)
        if commitment:
            return solve_with_commitment(inst, settings.balance_tol, settings.max_iter)
        return solve_single(inst, settings.balance_tol, settings.max_iter)

    #*************************************************************************************
    # Method: solve_series(self, DataFrame)
    #
    # Description
    # ------------------------------------------------------------------------------------
    # Solves every row of a load series. The frame carries a 'load' column and optional
    # '<unit>_available' columns capping renewable units. The first row is also solved
    # without ramp limits to obtain the setpoints the horizon starts from.
    #
    # RETurn
    #  Type                            Description
    # ------  ----------------------------------------------------------------------------
    # Horizon HorizonSolution over all rows.
    #*************************************************************************************
    def solve_series(self, frame):
        settings = self.client.config.oracle
        fleet = self.client.config.fleet
        if 'load' not in frame.columns:
            raise InputDomainError("load series needs a 'load' column")
        available = None
        cap_columns = ['{0}_available'.format(spec.name) for spec in fleet]
        if any(column in frame.columns for column in cap_columns):
            available = np.column_stack([
                frame[column].to_numpy(dtype=float) if column in frame.columns else np.full(len(frame), np.inf)
                for column in cap_columns
            ])
        loads = frame['load'].to_numpy(dtype=float)

        logger.info('- Solving %d timestep(s) -', len(loads))
        first = DispatchInstance.from_fleet(loads[0], fleet, None if available is None else available[0])
        initial = solve_single(first, settings.balance_tol, settings.max_iter).setpoints
        horizon = solve_horizon(loads, fleet, initial, available, settings.balance_tol,
                                settings.max_iter, settings.startup_free)
        logger.info('Cumulative cost: %.4f', horizon.cumulative_cost)
        return horizon
