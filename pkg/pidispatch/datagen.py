#*************************************************************************************
# Module: datagen
# Class Name: DataGenerator
# Super Class: client (pidispatch/client.py)
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/04/2026   Initial Release
#   1.1      03/11/2026   Sidecar metadata, resplitting for training-size studies.
#   1.2      10/19/2026   Datasets keep physical values; columns constant on the train split
#                           survive resplits and persistence.
#
# File Description
# ------------------------------------------------------------------------------------
# Synthesizes weather and load time series, converts them through the grid physics,
# labels every timestep with the oracle dispatch and assembles 11-feature / 5-target
# samples. Normalizers are fitted on the training split only and applied to every
# sample. Datasets are stored as CSV with a JSON sidecar holding normalizer stats,
# split indices and the physics needed to rebuild constraint context.
#
# Feature schema: load, pv_available, wind_available, pv_max, wind_max, chp_min,
# chp_max, ng_min, ng_max, ds_min, ds_max. PV and wind minima are identically zero
# and therefore not stored.
# Target schema: p_chp, p_ng, p_ds, p_wind, p_pv.
#
# Class Methods
# ------------------------------------------------------------------------------------
#         Name                                      Description
# --------------------         -------------------------------------------------------
# __init__()                   Constructor
#
# generate()                   Builds a dataset from the configured microgrid.
#*************************************************************************************
import json
import logging
import math
import os
import re
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import pandas as pd

from pidispatch.exceptions import (GenerationError, HorizonError, InfeasibleError,
                                   InputDomainError, MissingInputError,
                                   MissingMetadataError, ParseError)
from pidispatch.grid import GeneratorKind, pv_power_series, wind_power_series
from pidispatch.losses import ConstraintContext
from pidispatch.oracle import (DEFAULT_BALANCE_TOL, DEFAULT_MAX_ITER, DispatchInstance,
                               solve_horizon, solve_single)

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
MINUTES_PER_DAY = 1440
FEATURE_NAMES = ('load', 'pv_available', 'wind_available', 'pv_max', 'wind_max',
                 'chp_min', 'chp_max', 'ng_min', 'ng_max', 'ds_min', 'ds_max')
TARGET_NAMES = ('p_chp', 'p_ng', 'p_ds', 'p_wind', 'p_pv')
TARGET_KINDS = (GeneratorKind.CHP, GeneratorKind.NG, GeneratorKind.DS, GeneratorKind.WIND, GeneratorKind.PV)
RAW_LOAD = 'raw_load'


@dataclass(eq=False)
class WeatherProfile:
    irradiance: np.ndarray
    temperature: np.ndarray
    wind_speed: np.ndarray
    resolution: int = 5

    def __post_init__(self):
        if not (len(self.irradiance) == len(self.temperature) == len(self.wind_speed)):
            raise InputDomainError('weather series must have equal lengths')

    def __len__(self):
        return len(self.irradiance)


class Sample(NamedTuple):
    features: np.ndarray
    targets: np.ndarray
    raw_load: float


@dataclass(eq=False)
class Normalizer:
    """Per-column min-max scaling."""

    x_min: np.ndarray
    x_max: np.ndarray

    def __post_init__(self):
        self.x_min = np.asarray(self.x_min, dtype=float)
        self.x_max = np.asarray(self.x_max, dtype=float)
        if self.x_min.shape != self.x_max.shape or np.any(self.x_min > self.x_max):
            raise InputDomainError('normalizer needs x_min <= x_max per column')

    @classmethod
    def fit(cls, data):
        data = np.asarray(data, dtype=float)
        return cls(data.min(axis=0), data.max(axis=0))

    @property
    def scale(self):
        return self.x_max - self.x_min

    def to_dict(self):
        return {'x_min': self.x_min.tolist(), 'x_max': self.x_max.tolist()}

    @classmethod
    def from_dict(cls, record):
        return cls(record['x_min'], record['x_max'])


def _check_arity(norm, x):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != norm.x_min.shape[0]:
        raise InputDomainError('expected {0} columns, got {1}'.format(norm.x_min.shape[0], x.shape[-1]))
    return x


def normalize(norm, x):
    """Returns (x - min) / (max - min) column-wise; degenerate columns map to 0."""
    x = _check_arity(norm, x)
    scale = norm.scale
    degenerate = scale == 0
    return np.where(degenerate, 0.0, (x - norm.x_min) / np.where(degenerate, 1.0, scale))


def denormalize(norm, x):
    """Inverse of normalize(); degenerate columns return x_min."""
    x = _check_arity(norm, x)
    return x * norm.scale + norm.x_min


def restore(norm, x, raw):
    """Physical values of normalized rows; degenerate columns are taken from raw."""
    rebuilt = denormalize(norm, x)
    degenerate = norm.scale == 0
    rebuilt[:, degenerate] = np.asarray(raw, dtype=float)[:, degenerate]
    return rebuilt


def _smoothed_noise(rng, steps, scale, span):
    noise = pd.Series(rng.normal(0.0, 1.0, steps)).ewm(span=span).mean().to_numpy()
    spread = noise.std()
    return scale * noise / spread if spread > 0 else noise


def _clock(steps, resolution):
    hours = np.arange(steps) * resolution / 60.0
    return hours % 24.0, (hours // 24.0).astype(int)


def _steps(days, resolution):
    if days < 1:
        raise InputDomainError('days must be at least 1, got {0}'.format(days))
    if resolution <= 0 or MINUTES_PER_DAY % resolution:
        raise InputDomainError('resolution must divide a day into whole steps, got {0}'.format(resolution))
    return days * MINUTES_PER_DAY // resolution


def synthesize_weather(seed, days, resolution=5):
    """Returns a deterministic synthetic weather profile.

    Irradiance is a half-sine between 06:00 and 18:00 scaled by a daily clearness
    index and smoothed cloud noise (zero at night). Temperature is a sinusoid peaking
    at 15:00 plus a daily offset and smoothed noise. Wind speed is a sinusoid peaking
    in the evening plus a daily level and smoothed noise, clipped at zero.

    Arguments
    ---------
    1. seed {int} -- Random seed.
    2. days {int} -- Number of days, at least 1.
    3. resolution {int} -- Minutes per step.

    Raises
    ------
    1. InputDomainError: days below 1 or a resolution that does not divide a day.

    Returns
    -------
    WeatherProfile -- days * 1440 / resolution steps.
    """
    steps = _steps(days, resolution)
    rng = np.random.default_rng([seed, 0])
    hour, day = _clock(steps, resolution)

    clear_sky = 1000.0 * np.clip(np.sin(np.pi * (hour - 6.0) / 12.0), 0.0, None)
    clearness = rng.uniform(0.55, 1.0, days)[day] + _smoothed_noise(rng, steps, 0.12, 24)
    irradiance = clear_sky * np.clip(clearness, 0.05, 1.0)

    temperature = (18.0 + 7.0 * np.sin(2 * np.pi * (hour - 9.0) / 24.0)
                   + rng.uniform(-3.0, 3.0, days)[day] + _smoothed_noise(rng, steps, 0.8, 12))

    wind_speed = (7.5 + 2.0 * np.sin(2 * np.pi * (hour - 15.0) / 24.0)
                  + rng.uniform(-2.0, 2.0, days)[day] + _smoothed_noise(rng, steps, 2.2, 36))
    wind_speed = np.clip(wind_speed, 0.0, None)
    return WeatherProfile(irradiance, temperature, wind_speed, resolution)


def synthesize_load(seed, steps, resolution=5, base=280.0, swing=110.0):
    """Returns a double-peak diurnal load series in kW (morning and evening peaks)."""
    if steps < 1:
        raise InputDomainError('steps must be at least 1')
    rng = np.random.default_rng([seed, 1])
    hour, day = _clock(steps, resolution)
    shape = (0.55 * np.exp(-((hour - 8.0) / 2.0) ** 2)
             + 1.0 * np.exp(-((hour - 19.0) / 2.5) ** 2)
             - 0.6 * np.exp(-((hour - 3.0) / 3.0) ** 2))
    daily = rng.uniform(-0.05, 0.05, int(day.max()) + 1)[day]
    load = base * (1.0 + daily) + swing * shape + _smoothed_noise(rng, steps, 0.05 * base, 18)
    return np.clip(load, 0.0, None)


def split(dataset, train_fraction, seed=0, shuffle=False):
    """Returns (train_indices, test_indices).

    Contiguous by default: the first floor(n * train_fraction) samples train, the
    trailing block tests. shuffle=True draws a seeded permutation instead.

    Arguments
    ---------
    1. dataset {Dataset or int} -- The dataset or its length.
    2. train_fraction {float} -- Strictly between 0 and 1.

    Raises
    ------
    1. InputDomainError: fraction out of range or an empty side.
    """
    n = dataset if isinstance(dataset, (int, np.integer)) else len(dataset)
    if not 0 < train_fraction < 1:
        raise InputDomainError('train_fraction must lie in (0, 1), got {0}'.format(train_fraction))
    n_train = int(math.floor(n * train_fraction + 1e-9))
    if n_train < 1 or n_train >= n:
        raise InputDomainError('fraction {0} of {1} samples leaves an empty split'.format(train_fraction, n))
    order = np.random.default_rng(seed).permutation(n) if shuffle else np.arange(n)
    return np.sort(order[:n_train]), np.sort(order[n_train:])


@dataclass(eq=False)
class Dataset:
    """Normalized samples plus what is needed to rebuild physical quantities.

    meta keys: ramp_up, ramp_down (per target unit, kW/step), initial_setpoints (kW),
    resolution, train_fraction, shuffle, balance_tol.

    raw_x / raw_y hold the physical feature and target values. A column that is
    constant on the training rows normalizes to 0 everywhere, so its physical values
    are only recoverable from these arrays. When omitted they are rebuilt with
    denormalize().
    """

    features: np.ndarray
    targets: np.ndarray
    raw_load: np.ndarray
    feature_norm: Normalizer
    target_norm: Normalizer
    train_idx: np.ndarray
    test_idx: np.ndarray
    seed: int = 0
    meta: dict = field(default_factory=dict)
    raw_x: np.ndarray = None
    raw_y: np.ndarray = None

    def __post_init__(self):
        if self.raw_x is None:
            self.raw_x = denormalize(self.feature_norm, self.features)
        if self.raw_y is None:
            self.raw_y = denormalize(self.target_norm, self.targets)
        self.raw_x = np.asarray(self.raw_x, dtype=float)
        self.raw_y = np.asarray(self.raw_y, dtype=float)
        if self.raw_x.shape != self.features.shape or self.raw_y.shape != self.targets.shape:
            raise InputDomainError('raw values must match the shape of the normalized samples')

    def __len__(self):
        return len(self.raw_load)

    def sample(self, i):
        return Sample(self.features[i], self.targets[i], float(self.raw_load[i]))

    def raw_features(self, indices=None):
        return (self.raw_x if indices is None else self.raw_x[indices]).copy()

    def raw_targets(self, indices=None):
        return (self.raw_y if indices is None else self.raw_y[indices]).copy()

    def previous_setpoints(self, indices):
        """Raw targets of the timestep before each index (initial setpoints for 0)."""
        indices = np.asarray(indices)
        previous = self.raw_targets(np.maximum(indices - 1, 0))
        previous[indices == 0] = np.asarray(self.meta['initial_setpoints'], dtype=float)
        return previous

    def bounds(self, indices):
        """Returns (lower, upper) effective bounds in target order for each index."""
        raw = self.raw_features(indices)
        column = {name: raw[:, i] for i, name in enumerate(FEATURE_NAMES)}
        zeros = np.zeros(len(raw))
        lower = np.column_stack([column['chp_min'], column['ng_min'], column['ds_min'], zeros, zeros])
        upper = np.column_stack([column['chp_max'], column['ng_max'], column['ds_max'],
                                 column['wind_available'], column['pv_available']])
        return lower, upper

    def context(self, indices, power_base=1.0):
        """Returns the ConstraintContext of the given samples for the penalty losses."""
        indices = np.asarray(indices)
        lower, upper = self.bounds(indices)
        return ConstraintContext(
            load=self.raw_load[indices],
            lower=lower,
            upper=upper,
            ramp_up=np.asarray(self.meta['ramp_up'], dtype=float),
            ramp_down=np.asarray(self.meta['ramp_down'], dtype=float),
            target_min=self.target_norm.x_min,
            target_scale=self.target_norm.scale,
            previous=self.previous_setpoints(indices),
            power_base=power_base,
        )

    def resplit(self, train_idx, test_idx):
        """Returns a copy split differently, normalizers refitted on the new train rows."""
        train_idx = np.asarray(train_idx)
        test_idx = np.asarray(test_idx)
        if np.array_equal(train_idx, self.train_idx) and np.array_equal(test_idx, self.test_idx):
            return self
        feature_norm = Normalizer.fit(self.raw_x[train_idx])
        target_norm = Normalizer.fit(self.raw_y[train_idx])
        features = normalize(feature_norm, self.raw_x)
        targets = normalize(target_norm, self.raw_y)
        return Dataset(features, targets, self.raw_load.copy(), feature_norm, target_norm, train_idx, test_idx,
                       self.seed, dict(self.meta), restore(feature_norm, features, self.raw_x),
                       restore(target_norm, targets, self.raw_y))

    def held_columns(self):
        """Returns {column name: raw values} for columns their normalizer maps to a constant."""
        held = {}
        for names, norm, raw in ((FEATURE_NAMES, self.feature_norm, self.raw_x),
                                 (TARGET_NAMES, self.target_norm, self.raw_y)):
            for i in np.flatnonzero(norm.scale == 0):
                if not np.all(raw[:, i] == norm.x_min[i]):
                    held[names[i]] = raw[:, i].tolist()
        return held

    def equals(self, other):
        return (np.array_equal(self.features, other.features)
                and np.array_equal(self.targets, other.targets)
                and np.array_equal(self.raw_x, other.raw_x)
                and np.array_equal(self.raw_y, other.raw_y)
                and np.array_equal(self.raw_load, other.raw_load)
                and np.array_equal(self.feature_norm.x_min, other.feature_norm.x_min)
                and np.array_equal(self.feature_norm.x_max, other.feature_norm.x_max)
                and np.array_equal(self.target_norm.x_min, other.target_norm.x_min)
                and np.array_equal(self.target_norm.x_max, other.target_norm.x_max)
                and np.array_equal(self.train_idx, other.train_idx)
                and np.array_equal(self.test_idx, other.test_idx)
                and self.seed == other.seed
                and self.meta == other.meta)


def ordered_fleet(fleet):
    """Returns the fleet in target order; exactly one unit of each kind is required."""
    ordered = []
    for kind in TARGET_KINDS:
        matches = [spec for spec in fleet if spec.kind == kind]
        if len(matches) != 1:
            raise InputDomainError('dataset schema needs exactly one {0} unit, found {1}'.format(kind.value, len(matches)))
        ordered.append(matches[0])
    return tuple(ordered)


def build_dataset(profile, fleet, load_series, pv, wind, train_fraction=0.8, seed=0, shuffle=False,
                  balance_tol=DEFAULT_BALANCE_TOL, max_iter=DEFAULT_MAX_ITER, startup_free=True):
    """Labels every timestep with the oracle dispatch and assembles samples.

    Arguments
    ---------
    1. profile {WeatherProfile} -- Weather series.
    2. fleet {sequence} -- One GeneratorSpec per kind.
    3. load_series {sequence} -- Demand per step in kW.
    4. pv {PvPhysics} / wind {WindPhysics} -- Conversion constants.
    5. train_fraction {float} -- Share of samples fitting the normalizers.

    Raises
    ------
    1. InputDomainError: series lengths differ or the fleet does not fit the schema.
    2. GenerationError: the oracle cannot label a step.

    Returns
    -------
    Dataset -- Normalized samples with split and metadata.
    """
    fleet = ordered_fleet(fleet)
    loads = np.asarray(load_series, dtype=float)
    if len(loads) != len(profile):
        raise InputDomainError('load series has {0} steps, weather has {1}'.format(len(loads), len(profile)))

    pv_available = pv_power_series(pv, profile.irradiance, profile.temperature)
    wind_available = wind_power_series(wind, profile.wind_speed)
    available = np.column_stack([np.full(len(loads), np.inf), np.full(len(loads), np.inf),
                                 np.full(len(loads), np.inf), wind_available, pv_available])

    try:
        first = DispatchInstance.from_fleet(loads[0], fleet, available[0])
        initial = solve_single(first, balance_tol, max_iter).setpoints
    except InfeasibleError as error:
        raise GenerationError(0, error)
    try:
        horizon = solve_horizon(loads, fleet, initial, available, balance_tol, max_iter, startup_free)
    except HorizonError as error:
        raise GenerationError(error.timestep, error)
    targets = horizon.setpoints

    # The feature-level renewable maxima are the forecast maxima over the whole series.
    pv_max = min(fleet[4].p_max, float(pv_available.max()))
    wind_max = min(fleet[3].p_max, float(wind_available.max()))
    features = np.empty((len(loads), len(FEATURE_NAMES)))
    previous = initial
    for t, load in enumerate(loads):
        inst = DispatchInstance.from_fleet(load, fleet, available[t], previous, None, startup_free)
        features[t] = (load, inst.upper[4], inst.upper[3], pv_max, wind_max,
                       inst.lower[0], inst.upper[0], inst.lower[1], inst.upper[1], inst.lower[2], inst.upper[2])
        previous = targets[t]

    train_idx, test_idx = split(len(loads), train_fraction, seed, shuffle)
    feature_norm = Normalizer.fit(features[train_idx])
    target_norm = Normalizer.fit(targets[train_idx])
    meta = {
        'ramp_up': [spec.ramp_up for spec in fleet],
        'ramp_down': [spec.ramp_down for spec in fleet],
        'initial_setpoints': [float(p) for p in initial],
        'resolution': int(profile.resolution),
        'train_fraction': float(train_fraction),
        'shuffle': bool(shuffle),
        'balance_tol': float(balance_tol),
    }
    logger.info('Labelled %d steps (%d train / %d test), cumulative cost %.2f',
                len(loads), len(train_idx), len(test_idx), horizon.cumulative_cost)
    normalized_x = normalize(feature_norm, features)
    normalized_y = normalize(target_norm, targets)
    return Dataset(normalized_x, normalized_y, loads.copy(), feature_norm, target_norm, train_idx, test_idx,
                   int(seed), meta, restore(feature_norm, normalized_x, features),
                   restore(target_norm, normalized_y, targets))


def validate_labels(dataset, fleet, tol=1e-6):
    """Re-checks balance, bounds and ramps of every label without the solver.

    Returns
    -------
    list -- (step, message) tuples; empty when every label is physical.
    """
    fleet = ordered_fleet(fleet)
    targets = dataset.raw_targets()
    raw = dataset.raw_features()
    problems = []
    balance = np.abs(targets.sum(axis=1) - dataset.raw_load)
    for t in np.flatnonzero(balance > tol):
        problems.append((int(t), 'power balance off by {0:.3g} kW'.format(balance[t])))
    p_min = np.array([spec.p_min for spec in fleet])
    p_max = np.array([spec.p_max for spec in fleet])
    caps = np.column_stack([p_max[0] * np.ones(len(raw)), p_max[1] * np.ones(len(raw)), p_max[2] * np.ones(len(raw)),
                            raw[:, FEATURE_NAMES.index('wind_available')], raw[:, FEATURE_NAMES.index('pv_available')]])
    low = np.any(targets < p_min - tol, axis=1)
    high = np.any(targets > np.minimum(p_max, caps) + tol, axis=1)
    for t in np.flatnonzero(low | high):
        problems.append((int(t), 'setpoint outside bounds'))
    steps = np.diff(np.vstack([dataset.meta['initial_setpoints'], targets]), axis=0)
    ramp = np.any(steps > np.array([spec.ramp_up for spec in fleet]) + tol, axis=1) | \
        np.any(-steps > np.array([spec.ramp_down for spec in fleet]) + tol, axis=1)
    for t in np.flatnonzero(ramp):
        problems.append((int(t), 'ramp limit exceeded'))
    return problems


def metadata_path(path):
    return os.path.splitext(str(path))[0] + '.meta.json'


def save_dataset(dataset, path):
    """Writes the samples to CSV and normalizer/split metadata to a JSON sidecar."""
    frame = pd.DataFrame(np.column_stack([dataset.features, dataset.targets, dataset.raw_load]),
                         columns=list(FEATURE_NAMES) + list(TARGET_NAMES) + [RAW_LOAD])
    frame.to_csv(path, index=False, float_format='%.17g')
    sidecar = {
        'format_version': FORMAT_VERSION,
        'feature_names': list(FEATURE_NAMES),
        'target_names': list(TARGET_NAMES),
        'feature_norm': dataset.feature_norm.to_dict(),
        'target_norm': dataset.target_norm.to_dict(),
        'train_idx': dataset.train_idx.tolist(),
        'test_idx': dataset.test_idx.tolist(),
        'seed': dataset.seed,
        'meta': dataset.meta,
        'held_columns': dataset.held_columns(),
    }
    with open(metadata_path(path), 'w') as f:
        json.dump(sidecar, f, indent=1)
    logger.info('Saved %d samples to %s', len(dataset), path)


def load_dataset(path):
    """Reads a dataset written by save_dataset().

    Raises
    ------
    1. MissingInputError: the CSV does not exist.
    2. MissingMetadataError: the JSON sidecar does not exist.
    3. ParseError: header, arity or a value is malformed (with its line number).
    """
    if not os.path.exists(path):
        raise MissingInputError(path)
    sidecar_path = metadata_path(path)
    if not os.path.exists(sidecar_path):
        raise MissingMetadataError(sidecar_path)

    expected = list(FEATURE_NAMES) + list(TARGET_NAMES) + [RAW_LOAD]
    try:
        frame = pd.read_csv(path, float_precision='round_trip')
    except pd.errors.ParserError as error:
        match = re.search(r'line (\d+)', str(error))
        raise ParseError(int(match.group(1)) if match else None, str(error))
    except pd.errors.EmptyDataError:
        raise ParseError(1, 'file is empty')
    if list(frame.columns) != expected:
        raise ParseError(1, 'header {0} does not match {1}'.format(list(frame.columns), expected))
    for column in frame.columns:
        if frame[column].dtype == object:
            converted = pd.to_numeric(frame[column], errors='coerce')
            bad = (converted.isna() & frame[column].notna()).to_numpy()
            if not bad.any():
                frame[column] = converted
                continue
            row = int(np.flatnonzero(bad)[0])
            raise ParseError(row + 2, 'non-numeric value {0!r} in column {1}'.format(frame[column].iloc[row], column))
    missing = frame.isna().any(axis=1).to_numpy()
    if missing.any():
        raise ParseError(int(np.flatnonzero(missing)[0]) + 2, 'missing value')

    try:
        with open(sidecar_path) as f:
            sidecar = json.load(f)
        feature_norm = Normalizer.from_dict(sidecar['feature_norm'])
        target_norm = Normalizer.from_dict(sidecar['target_norm'])
        train_idx = np.asarray(sidecar['train_idx'], dtype=int)
        test_idx = np.asarray(sidecar['test_idx'], dtype=int)
        seed, meta = sidecar['seed'], sidecar['meta']
        held = sidecar.get('held_columns', {})
    except (ValueError, KeyError) as error:
        raise ParseError(None, 'sidecar {0} is malformed: {1}'.format(sidecar_path, error))
    if len(train_idx) + len(test_idx) != len(frame):
        raise ParseError(len(frame) + 1, 'split covers {0} rows, file has {1}'.format(len(train_idx) + len(test_idx), len(frame)))

    values = frame.to_numpy(dtype=float)
    n_features = len(FEATURE_NAMES)
    features = values[:, :n_features].copy()
    targets = values[:, n_features:n_features + len(TARGET_NAMES)].copy()
    raw_x, raw_y = denormalize(feature_norm, features), denormalize(target_norm, targets)
    for name, column in held.items():
        raw, names = (raw_x, FEATURE_NAMES) if name in FEATURE_NAMES else (raw_y, TARGET_NAMES)
        if name not in names or len(column) != len(frame):
            raise ParseError(None, 'sidecar {0} holds a malformed column {1}'.format(sidecar_path, name))
        raw[:, names.index(name)] = column
    return Dataset(features, targets, values[:, -1].copy(), feature_norm, target_norm, train_idx, test_idx,
                   seed, meta, raw_x, raw_y)


class DataGenerator(object):
    """A sub-class to Microgrid that builds datasets from the configured microgrid.

    Arguments
    ---------
    1. client {class} -- The parent class; Microgrid.
    """

    def __init__(self, client):
        self.client = client

    #*************************************************************************************
    # Method: generate(self, int, int, int, float, bool)
    #
    # Description
    # ------------------------------------------------------------------------------------
    # Synthesizes weather and load, labels them with the oracle and returns the dataset.
    # Arguments left as None fall back to the [data] section of the configuration.
    #
    # RETurn
    #  Type                            Description
    # ------  ----------------------------------------------------------------------------
    # Dataset Normalized samples with split and metadata.
    #*************************************************************************************
    def generate(self, seed=42, days=None, resolution=None, train_fraction=None, shuffle=None):
        config = self.client.config
        settings = config.data
        days = settings.days if days is None else days
        resolution = settings.resolution_min if resolution is None else resolution
        train_fraction = settings.train_fraction if train_fraction is None else train_fraction
        shuffle = settings.shuffle if shuffle is None else shuffle

        logger.info('- Generating dataset -')
        logger.info('Seed: %s, days: %s, resolution: %s min', seed, days, resolution)
        profile = synthesize_weather(seed, days, resolution)
        loads = synthesize_load(seed, len(profile), resolution, settings.load_base, settings.load_swing)
        return build_dataset(profile, config.fleet, loads, config.pv, config.wind, train_fraction, seed, shuffle,
                             config.oracle.balance_tol, config.oracle.max_iter, config.oracle.startup_free)
