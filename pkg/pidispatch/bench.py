#*************************************************************************************
# Module: bench
# Class Name: Bench
# Super Class: client (pidispatch/client.py)
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/09/2026   Initial Release
#
# File Description
# ------------------------------------------------------------------------------------
# Runtime comparison between trained surrogates and the oracle, and plot-ready series
# of truth versus prediction. Only the forward pass or the solver call sits inside a
# timed region; instances and inputs are prepared beforehand.
#
# Class Methods
# ------------------------------------------------------------------------------------
#         Name                                      Description
# --------------------         -------------------------------------------------------
# __init__()                   Constructor
#
# run()                        Times models against the oracle on the test split.
#
# plotdata()                   Truth/prediction series over a test-split window.
#*************************************************************************************
import logging
import platform
import time
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from pidispatch.datagen import TARGET_NAMES, denormalize, ordered_fleet
from pidispatch.exceptions import InputDomainError
from pidispatch.oracle import DEFAULT_BALANCE_TOL, DEFAULT_MAX_ITER, DispatchInstance, solve_single

logger = logging.getLogger(__name__)

DEFAULT_REPETITIONS = 1000
DEFAULT_WARMUP = 100
LOW_CONFIDENCE_REPETITIONS = 100


@dataclass
class BenchReport:
    """Median single-sample timings in milliseconds; speedup = oracle_ms / model_ms."""

    model_ms: dict
    oracle_ms: float
    n_samples: int
    repetitions: int
    warmup: int
    hardware: str
    config_hash: str = None
    seed: int = None
    speedup: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.oracle_ms <= 0 or any(value <= 0 for value in self.model_ms.values()):
            raise InputDomainError('timings must be positive')
        self.speedup = {name: self.oracle_ms / value for name, value in self.model_ms.items()}

    @property
    def low_confidence(self):
        return self.repetitions < LOW_CONFIDENCE_REPETITIONS

    def to_dict(self):
        return {
            'model_ms': self.model_ms,
            'oracle_ms': self.oracle_ms,
            'speedup': self.speedup,
            'n_samples': self.n_samples,
            'repetitions': self.repetitions,
            'warmup': self.warmup,
            'low_confidence': self.low_confidence,
            'hardware': self.hardware,
            'config_hash': self.config_hash,
            'seed': self.seed,
        }

    def to_frame(self):
        rows = [{'method': name, 'ms_per_call': value, 'speedup': self.speedup[name]}
                for name, value in self.model_ms.items()]
        rows.append({'method': 'oracle', 'ms_per_call': self.oracle_ms, 'speedup': 1.0})
        return pd.DataFrame(rows)


def hardware_note():
    return '{0} {1}, {2}, Python {3}, numpy {4}'.format(platform.system(), platform.release(),
                                                       platform.processor() or platform.machine(),
                                                       platform.python_version(), np.__version__)


def time_call(fn, inputs, repetitions=DEFAULT_REPETITIONS, warmup=DEFAULT_WARMUP):
    """Returns the median wall time of fn(x) in milliseconds.

    Inputs are cycled; the first `warmup` calls are discarded.
    """
    if repetitions < 1:
        raise InputDomainError('repetitions must be at least 1')
    if not inputs:
        raise InputDomainError('nothing to time')
    for i in range(warmup):
        fn(inputs[i % len(inputs)])
    elapsed = np.empty(repetitions)
    for i in range(repetitions):
        x = inputs[i % len(inputs)]
        started = time.perf_counter()
        fn(x)
        elapsed[i] = time.perf_counter() - started
    return float(np.median(elapsed) * 1000.0)


def oracle_instances(dataset, fleet, indices):
    """Rebuilds the all-committed oracle instance of each sample from its raw features."""
    fleet = ordered_fleet(fleet)
    lower, upper = dataset.bounds(indices)
    return [DispatchInstance(float(dataset.raw_load[i]), fleet, lower[k], upper[k], (True,) * len(fleet))
            for k, i in enumerate(indices)]


def bench(models, dataset, fleet, repetitions=DEFAULT_REPETITIONS, warmup=DEFAULT_WARMUP,
          balance_tol=DEFAULT_BALANCE_TOL, max_iter=DEFAULT_MAX_ITER, config_hash=None, seed=None):
    """Times single-sample inference of each model and single-timestep oracle solves.

    Arguments
    ---------
    1. models {dict} -- Name -> CnnModel.
    2. dataset {Dataset} -- Inputs come from its test split.
    3. fleet {sequence} -- GeneratorSpec per unit.
    4. repetitions {int} -- Timed calls per method.
    5. warmup {int} -- Untimed calls before timing.

    Returns
    -------
    BenchReport -- The timings.
    """
    if not models:
        raise InputDomainError('at least one model is required')
    indices = dataset.test_idx
    rows = [dataset.features[i:i + 1] for i in indices]
    instances = oracle_instances(dataset, fleet, indices)
    if repetitions < LOW_CONFIDENCE_REPETITIONS:
        logger.warning('%d repetition(s): timings are low-confidence', repetitions)

    logger.info('- Benchmarking %d model(s) against the oracle -', len(models))
    model_ms = {}
    for name, model in models.items():
        model_ms[name] = time_call(model.predict, rows, repetitions, warmup)
        logger.info('%s: %.4f ms/sample', name, model_ms[name])
    oracle_ms = time_call(lambda inst: solve_single(inst, balance_tol, max_iter), instances, repetitions, warmup)
    logger.info('oracle: %.4f ms/timestep', oracle_ms)
    return BenchReport(model_ms, oracle_ms, int(len(indices)), int(repetitions), int(warmup), hardware_note(),
                       config_hash, seed)


def plotdata(model, dataset, window=None):
    """Returns t plus truth_/pred_ columns per target over a window of the test split.

    Arguments
    ---------
    1. model {CnnModel} -- Trained model.
    2. dataset {Dataset} -- Dataset holding the test split.
    3. window {tuple} -- (start, stop) positions within the test split; None means all.

    Raises
    ------
    1. InputDomainError: the window is empty or out of range.
    """
    n_test = len(dataset.test_idx)
    start, stop = (0, n_test) if window is None else window
    if not 0 <= start < stop <= n_test:
        raise InputDomainError('window ({0}, {1}) outside the test split of {2} samples'.format(start, stop, n_test))
    indices = dataset.test_idx[start:stop]
    truth = dataset.raw_targets(indices)
    pred = denormalize(dataset.target_norm, model.predict(dataset.features[indices]))
    frame = pd.DataFrame({'t': indices})
    for j, name in enumerate(TARGET_NAMES):
        frame['truth_' + name] = truth[:, j]
        frame['pred_' + name] = pred[:, j]
    return frame


class Bench(object):
    """A sub-class to Microgrid that times surrogates and exports plot series.

    Arguments
    ---------
    1. client {class} -- The parent class; Microgrid.
    """

    def __init__(self, client):
        self.client = client

    def run(self, models, dataset, repetitions=DEFAULT_REPETITIONS, warmup=DEFAULT_WARMUP, seed=None):
        config = self.client.config
        return bench(models, dataset, config.fleet, repetitions, warmup, config.oracle.balance_tol,
                     config.oracle.max_iter, config.digest(), dataset.seed if seed is None else seed)

    def plotdata(self, model, dataset, window=None):
        return plotdata(model, dataset, window)
