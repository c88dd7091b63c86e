#*************************************************************************************
# Module: trainer
# Class Name: Trainer
# Super Class: client (pidispatch/client.py)
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/07/2026   Initial Release
#   1.1      03/13/2026   Training-size ablation and variant comparison tables.
#
# File Description
# ------------------------------------------------------------------------------------
# Orchestrates training of the physics-informed CNN (pi-cnn), the plain CNN (cnn) and
# the dense baseline (dnn), computes evaluation metrics in physical units, runs the
# training-size ablation and compares variants at equal epochs.
#
# Class Methods
# ------------------------------------------------------------------------------------
#         Name                                      Description
# --------------------         -------------------------------------------------------
# __init__()                   Constructor
#
# training_config()            TrainingConfig from the [training]/[penalties] sections.
#
# train()                      Trains one variant on a dataset.
#
# evaluate()                   Metrics of a model on a dataset split.
#
# ablate()                     Metrics versus training-set size.
#
# compare()                    Metrics of several variants on the same split.
#*************************************************************************************
import hashlib
import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field, replace

import numpy as np
import pandas as pd

from pidispatch.datagen import TARGET_NAMES, denormalize
from pidispatch.exceptions import ConfigError, InputDomainError, TrainingError, UndefinedMetricError
from pidispatch.losses import PenaltyWeights, mse_loss, total_pi_loss
from pidispatch.nn import CnnModel, DenseLayer, ReluLayer, make_cnn, sgd_step

logger = logging.getLogger(__name__)

VARIANTS = ('pi-cnn', 'cnn', 'dnn')
DEFAULT_FRACTIONS = (0.2, 0.5, 0.8)
DEFAULT_RUNS = (('pi-cnn', None), ('cnn', None), ('dnn', None), ('dnn', 500))


def parse_filters(raw):
    """Parses a comma-separated list of positive channel counts, e.g. "16, 32"."""
    if isinstance(raw, (tuple, list)):
        counts = tuple(int(value) for value in raw)
    else:
        counts = tuple(int(part) for part in str(raw).split(','))
    if not counts or min(counts) < 1:
        raise ValueError('filter counts must be positive integers')
    return counts


@dataclass(frozen=True)
class TrainingConfig:
    variant: str = 'pi-cnn'
    epochs: int = 150
    batch_size: int = 32
    learning_rate: float = 0.01
    weights: PenaltyWeights = PenaltyWeights()
    train_fraction: float = 0.8
    seed: int = 42
    power_base: float = None
    filters: tuple = (16, 32)
    kernel_size: int = 3
    pool: int = 2
    hidden: int = 64
    dnn_hidden: int = 8
    dnn_layers: int = 4

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InputDomainError('variant must be one of {0}, got {1!r}'.format(VARIANTS, self.variant))
        if self.epochs < 1:
            raise InputDomainError('epochs must be at least 1')
        if self.batch_size < 1:
            raise InputDomainError('batch_size must be at least 1')
        if not self.learning_rate >= 0:
            raise InputDomainError('learning_rate must be non-negative')
        if self.power_base is not None and self.power_base <= 0:
            raise InputDomainError('power_base must be positive')

    @property
    def physics_informed(self):
        return self.variant == 'pi-cnn'

    def digest(self):
        text = json.dumps(asdict(self), sort_keys=True, default=str)
        return hashlib.sha256(text.encode('utf-8')).hexdigest()[:16]

    @classmethod
    def from_mapping(cls, training=None, penalties=None, **overrides):
        """Builds a config from raw [training]/[penalties] values plus overrides."""
        casts = {'variant': str, 'epochs': int, 'batch_size': int, 'learning_rate': float,
                 'train_fraction': float, 'seed': int, 'power_base': float, 'filters': parse_filters,
                 'kernel_size': int, 'pool': int, 'hidden': int, 'dnn_hidden': int, 'dnn_layers': int}
        values = {}
        for key, raw in (training or {}).items():
            if key not in casts:
                raise ConfigError('training', key, 'unknown key')
            try:
                values[key] = casts[key](raw)
            except ValueError:
                raise ConfigError('training', key, 'cannot parse {0!r}'.format(raw))
        weights = {}
        for key, raw in (penalties or {}).items():
            if key not in PenaltyWeights.__dataclass_fields__:
                raise ConfigError('penalties', key, 'unknown key')
            if key == 'include_gen_upper':
                weights[key] = str(raw).strip().lower() in ('1', 'true', 'yes', 'on')
            else:
                try:
                    weights[key] = float(raw)
                except ValueError:
                    raise ConfigError('penalties', key, 'cannot parse {0!r}'.format(raw))
        values['weights'] = PenaltyWeights(**weights)
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


@dataclass
class TrainHistory:
    total: list = field(default_factory=list)
    mse: list = field(default_factory=list)
    pbc: list = field(default_factory=list)
    constraint: list = field(default_factory=list)
    seconds: float = 0.0

    def __len__(self):
        return len(self.total)

    def to_frame(self):
        return pd.DataFrame({'epoch': np.arange(1, len(self) + 1), 'total': self.total, 'mse': self.mse,
                             'pbc': self.pbc, 'constraint': self.constraint})


@dataclass
class MetricsReport:
    """Per-target metrics in physical units; r2 entries are None where undefined."""

    target_names: tuple
    mse: list
    mae: list
    r2: list
    balance_residual: float
    n_samples: int
    variant: str = None
    split: str = 'test'
    train_seconds: float = None
    infer_ms_per_sample: float = None

    @property
    def mean_mse(self):
        return float(np.mean(self.mse))

    @property
    def mean_mae(self):
        return float(np.mean(self.mae))

    @property
    def mean_r2(self):
        defined = [value for value in self.r2 if value is not None]
        return float(np.mean(defined)) if defined else None

    def to_dict(self, timings=False):
        record = {
            'variant': self.variant,
            'split': self.split,
            'n_samples': self.n_samples,
            'targets': {
                name: {'mse': mse, 'mae': mae, 'r2': 'undefined' if r2 is None else r2}
                for name, mse, mae, r2 in zip(self.target_names, self.mse, self.mae, self.r2)
            },
            'mean': {'mse': self.mean_mse, 'mae': self.mean_mae,
                     'r2': 'undefined' if self.mean_r2 is None else self.mean_r2},
            'balance_residual': self.balance_residual,
        }
        if timings:
            record['train_seconds'] = self.train_seconds
            record['infer_ms_per_sample'] = self.infer_ms_per_sample
        return record

    def to_frame(self):
        return pd.DataFrame({
            'target': list(self.target_names),
            'mse': self.mse,
            'mae': self.mae,
            'r2': ['undefined' if value is None else value for value in self.r2],
        })


def mse(y, y_hat):
    return float(np.mean((np.asarray(y, dtype=float) - np.asarray(y_hat, dtype=float)) ** 2))


def mae(y, y_hat):
    return float(np.mean(np.abs(np.asarray(y, dtype=float) - np.asarray(y_hat, dtype=float))))


def r2_score(y, y_hat, column=None):
    """Returns 1 - sum (y - y_hat)^2 / sum (y - mean y)^2.

    Raises
    ------
    1. UndefinedMetricError: y has zero variance.
    """
    y = np.asarray(y, dtype=float)
    y_hat = np.asarray(y_hat, dtype=float)
    total = np.sum((y - y.mean()) ** 2)
    if total == 0:
        raise UndefinedMetricError(column)
    return float(1.0 - np.sum((y - y_hat) ** 2) / total)


def make_baseline_dnn(config, n_inputs=11):
    """Dense stack 11 -> 8 x dnn_layers -> 5 with ReLU between hidden layers."""
    rng = np.random.default_rng(config.seed)
    sizes = [n_inputs] + [config.dnn_hidden] * config.dnn_layers + [len(TARGET_NAMES)]
    layers = []
    for i in range(len(sizes) - 1):
        layers.append(DenseLayer(sizes[i], sizes[i + 1], rng))
        if i < len(sizes) - 2:
            layers.append(ReluLayer())
    return CnnModel(layers, config.learning_rate, config.seed, sizes[0], config.variant)


def make_model(config, n_inputs=11):
    if config.variant == 'dnn':
        return make_baseline_dnn(config, n_inputs)
    return make_cnn(n_inputs, len(TARGET_NAMES), config.filters, config.kernel_size, config.pool, config.hidden,
                    config.learning_rate, config.seed, config.variant)


def train(config, dataset):
    """Trains one variant with mini-batch SGD.

    Each epoch shuffles the training split with a seeded generator, then runs
    forward -> loss -> backward -> sgd_step per batch. pi-cnn minimises MSE plus the
    penalties; cnn and dnn minimise MSE only (their penalties are still recorded).

    Arguments
    ---------
    1. config {TrainingConfig} -- Variant and hyperparameters.
    2. dataset {Dataset} -- Normalized samples with a train split.

    Raises
    ------
    1. TrainingError: the loss became non-finite.

    Returns
    -------
    tuple -- (CnnModel, TrainHistory).
    """
    if len(dataset.train_idx) == 0:
        raise InputDomainError('dataset has an empty training split')
    model = make_model(config, dataset.features.shape[1])
    weights = config.weights
    power_base = config.power_base or float(dataset.raw_load[dataset.train_idx].max())
    rng = np.random.default_rng([config.seed, 2])
    history = TrainHistory()
    n_train = len(dataset.train_idx)

    logger.info('- Training %s: %d epochs, batch %d, lr %g -', config.variant, config.epochs,
                config.batch_size, config.learning_rate)
    started = time.perf_counter()
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(dataset.train_idx)
        sums = np.zeros(4)
        for start in range(0, n_train, config.batch_size):
            idx = order[start:start + config.batch_size]
            pred = model.forward(dataset.features[idx])
            loss = total_pi_loss(pred, dataset.targets[idx], dataset.context(idx, power_base), weights)
            if config.physics_informed:
                grad, value = loss.grad, loss.value
            else:
                value, grad = mse_loss(pred, dataset.targets[idx])
            sums += len(idx) * np.array([value, loss.mse, loss.pbc, loss.constraint])
            sgd_step(model, model.backward(grad), config.learning_rate)
        means = sums / n_train
        if not np.all(np.isfinite(means)):
            raise TrainingError(epoch)
        history.total.append(float(means[0]))
        history.mse.append(float(means[1]))
        history.pbc.append(float(means[2]))
        history.constraint.append(float(means[3]))
        if epoch == 1 or epoch % 10 == 0 or epoch == config.epochs:
            logger.info('Epoch %d/%d: loss %.6f (mse %.6f, pbc %.6f, con %.6f)', epoch, config.epochs, *means)
        else:
            logger.debug('Epoch %d/%d: loss %.6f', epoch, config.epochs, means[0])
    history.seconds = time.perf_counter() - started
    return model, history


def evaluate(model, dataset, split='test'):
    """Returns per-target MSE, MAE and R2 in kW plus the mean power-balance residual.

    Arguments
    ---------
    1. model {CnnModel} -- Trained model.
    2. dataset {Dataset} -- Dataset holding the split.
    3. split {string} -- 'test', 'train' or 'all'.

    Raises
    ------
    1. ShapeError: model arity does not match the dataset.
    """
    indices = {'test': dataset.test_idx, 'train': dataset.train_idx,
               'all': np.arange(len(dataset))}.get(split)
    if indices is None:
        raise InputDomainError("split must be 'test', 'train' or 'all', got {0!r}".format(split))
    started = time.perf_counter()
    pred = denormalize(dataset.target_norm, model.predict(dataset.features[indices]))
    elapsed = time.perf_counter() - started
    truth = dataset.raw_targets(indices)

    r2 = []
    for j, name in enumerate(TARGET_NAMES):
        try:
            r2.append(r2_score(truth[:, j], pred[:, j], name))
        except UndefinedMetricError as error:
            logger.warning('%s', error)
            r2.append(None)
    return MetricsReport(
        target_names=TARGET_NAMES,
        mse=[mse(truth[:, j], pred[:, j]) for j in range(len(TARGET_NAMES))],
        mae=[mae(truth[:, j], pred[:, j]) for j in range(len(TARGET_NAMES))],
        r2=r2,
        balance_residual=float(np.mean(np.abs(pred.sum(axis=1) - dataset.raw_load[indices]))),
        n_samples=int(len(indices)),
        variant=model.variant,
        split=split,
        infer_ms_per_sample=1000.0 * elapsed / max(len(indices), 1),
    )


def _report_row(report, **labels):
    row = dict(labels)
    row.update({'mean_mse': report.mean_mse, 'mean_mae': report.mean_mae, 'mean_r2': report.mean_r2,
                'balance_residual': report.balance_residual, 'train_seconds': report.train_seconds})
    for name, mse_value, mae_value, r2_value in zip(report.target_names, report.mse, report.mae, report.r2):
        row['mse_' + name] = mse_value
        row['mae_' + name] = mae_value
        row['r2_' + name] = r2_value
    return row


def ablate_train_size(config, dataset, fractions=DEFAULT_FRACTIONS, variants=('pi-cnn', 'cnn')):
    """Trains every variant on the leading fraction of the data, tests on a common tail.

    The common held-out tail is the dataset's own test split, which must be the
    contiguous trailing block. Every job reuses config.seed, so the row matching the
    dataset's split reproduces a standalone train/evaluate run exactly.

    Returns
    -------
    DataFrame -- One row per (fraction, variant).
    """
    n = len(dataset)
    tail = dataset.test_idx
    if not np.array_equal(tail, np.arange(n - len(tail), n)):
        raise InputDomainError('ablation needs a contiguous trailing test split')
    rows = []
    for fraction in fractions:
        if not 0 < fraction < 1:
            raise InputDomainError('fraction must lie in (0, 1), got {0}'.format(fraction))
        n_train = int(math.floor(n * fraction + 1e-9))
        if n_train < 1 or n_train > tail[0]:
            raise InputDomainError('fraction {0} overlaps the held-out tail'.format(fraction))
        view = dataset.resplit(np.arange(n_train), tail)
        for variant in variants:
            run = replace(config, variant=variant)
            logger.info('- Ablation: fraction %.2f, %s -', fraction, variant)
            model, history = train(run, view)
            report = evaluate(model, view)
            report.train_seconds = history.seconds
            rows.append(_report_row(report, fraction=fraction, variant=variant, n_train=n_train))
    return pd.DataFrame(rows)


def compare_variants(config, dataset, runs=DEFAULT_RUNS):
    """Trains each (variant, epochs) run on the dataset's split; epochs None keeps config.epochs."""
    rows = []
    for variant, epochs in runs:
        run = replace(config, variant=variant, epochs=epochs or config.epochs)
        label = variant if epochs is None else '{0}-{1}'.format(variant, epochs)
        model, history = train(run, dataset)
        report = evaluate(model, dataset)
        report.train_seconds = history.seconds
        rows.append(_report_row(report, run=label, variant=variant, epochs=run.epochs))
    return pd.DataFrame(rows)


class Trainer(object):
    """A sub-class to Microgrid that trains and evaluates dispatch models.

    Arguments
    ---------
    1. client {class} -- The parent class; Microgrid.
    """

    def __init__(self, client):
        self.client = client

    def training_config(self, **overrides):
        """Returns a TrainingConfig from the configuration file, with overrides applied.

        Keyword Arguments
        -----------------
        Any TrainingConfig field; None values are ignored. lambda_pbc, lambda_bounds
        and lambda_ramp override the power-balance, bound and ramp weights.
        """
        penalties = dict(self.client.config.penalties)
        lambda_pbc = overrides.pop('lambda_pbc', None)
        lambda_bounds = overrides.pop('lambda_bounds', None)
        lambda_ramp = overrides.pop('lambda_ramp', None)
        if lambda_pbc is not None:
            penalties['pbc'] = lambda_pbc
        if lambda_bounds is not None:
            for key in ('gen_lower', 'gen_upper', 'pv_lower', 'pv_upper', 'wind_lower', 'wind_upper'):
                penalties[key] = lambda_bounds
        if lambda_ramp is not None:
            penalties['ramp_up'] = penalties['ramp_down'] = lambda_ramp
        return TrainingConfig.from_mapping(self.client.config.training, penalties, **overrides)

    def train(self, dataset, **overrides):
        return train(self.training_config(**overrides), dataset)

    def evaluate(self, model, dataset, split='test'):
        return evaluate(model, dataset, split)

    def ablate(self, dataset, fractions=DEFAULT_FRACTIONS, variants=('pi-cnn', 'cnn'), **overrides):
        return ablate_train_size(self.training_config(**overrides), dataset, fractions, variants)

    def compare(self, dataset, runs=DEFAULT_RUNS, **overrides):
        return compare_variants(self.training_config(**overrides), dataset, runs)
