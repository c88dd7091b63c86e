#*************************************************************************************
# Module: config
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/02/2026   Initial Release
#
# File Description
# ------------------------------------------------------------------------------------
# Loads a microgrid configuration file (INI format, the same dialect as setup.cfg)
# into typed settings. One [generator:<name>] section describes each unit; [pv],
# [wind], [oracle], [data], [training] and [penalties] hold the remaining settings.
# Every key is optional and falls back to the DEFAULT_* values below. The defaults
# are a documented synthetic microgrid, not measured plant data.
#
# Functions
# ------------------------------------------------------------------------------------
#         Name                                      Description
# --------------------         -------------------------------------------------------
# default_config()             Returns the built-in synthetic microgrid.
#
# load_config()                Parses a configuration file.
#*************************************************************************************
import configparser
import hashlib
import json
import logging
import math
import os
from dataclasses import asdict, dataclass, field

from pidispatch.exceptions import ConfigError, InputDomainError
from pidispatch.grid import (GeneratorKind, GeneratorSpec, LinearCost, PvPhysics,
                             QuadraticCost, WindPhysics)

logger = logging.getLogger(__name__)

GENERATOR_PREFIX = 'generator:'

# Synthetic default fleet, listed in dispatch-target order.
DEFAULT_GENERATORS = {
    'chp': {'kind': 'chp', 'alpha': 6.0, 'beta': 0.045, 'gamma': 0.00012,
            'p_min': 20.0, 'p_max': 200.0, 'ramp_up': 40.0, 'ramp_down': 40.0},
    'ng': {'kind': 'ng', 'alpha': 4.0, 'beta': 0.055, 'gamma': 0.00010,
           'p_min': 10.0, 'p_max': 250.0, 'ramp_up': 60.0, 'ramp_down': 60.0},
    'ds': {'kind': 'ds', 'alpha': 2.0, 'beta': 0.060, 'gamma': 0.00040,
           'p_min': 5.0, 'p_max': 150.0, 'ramp_up': 80.0, 'ramp_down': 80.0},
    'wind': {'kind': 'wind', 'r_interest': 0.06, 'lifetime_years': 20,
             'invest_per_kw': 0.30, 'maint_per_kw': 0.012, 'p_min': 0.0, 'p_max': 120.0},
    'pv': {'kind': 'pv', 'r_interest': 0.06, 'lifetime_years': 25,
           'invest_per_kw': 0.25, 'maint_per_kw': 0.010, 'p_min': 0.0, 'p_max': 150.0},
}
DEFAULT_PV = {'p_stc': 150.0, 'i_stc': 1000.0, 'k_t': -0.0047, 't_ref': 25.0}
DEFAULT_WIND = {'p_rated': 120.0, 'v_cut_in': 3.0, 'v_rated': 12.0, 'v_cut_off': 25.0}


@dataclass(frozen=True)
class OracleSettings:
    balance_tol: float = 1e-9
    max_iter: int = 200
    startup_free: bool = True


@dataclass(frozen=True)
class DataSettings:
    days: int = 7
    resolution_min: int = 5
    train_fraction: float = 0.8
    shuffle: bool = False
    load_base: float = 280.0
    load_swing: float = 110.0


@dataclass(frozen=True)
class MicrogridConfig:
    """Everything a configuration file can declare.

    training and penalties stay plain mappings; the trainer turns them into its own
    TrainingConfig and PenaltyWeights.
    """

    fleet: tuple
    pv: PvPhysics
    wind: WindPhysics
    oracle: OracleSettings = OracleSettings()
    data: DataSettings = DataSettings()
    training: dict = field(default_factory=dict)
    penalties: dict = field(default_factory=dict)
    source: str = None

    def unit(self, kind):
        """Returns the single unit of the given kind."""
        kind = GeneratorKind(kind)
        matches = [spec for spec in self.fleet if spec.kind == kind]
        if len(matches) != 1:
            raise InputDomainError('expected exactly one {0} unit, found {1}'.format(kind.value, len(matches)))
        return matches[0]

    def digest(self):
        """Returns a short sha256 of the configuration content."""
        payload = {
            'fleet': [_spec_record(spec) for spec in self.fleet],
            'pv': asdict(self.pv),
            'wind': asdict(self.wind),
            'oracle': asdict(self.oracle),
            'data': asdict(self.data),
            'training': self.training,
            'penalties': self.penalties,
        }
        text = json.dumps(payload, sort_keys=True, default=str)
        return hashlib.sha256(text.encode('utf-8')).hexdigest()[:16]


def _spec_record(spec):
    record = {'name': spec.name, 'kind': spec.kind.value, 'p_min': spec.p_min, 'p_max': spec.p_max,
              'ramp_up': spec.ramp_up, 'ramp_down': spec.ramp_down, 'committed': spec.committed}
    record.update(asdict(spec.cost))
    return record


def _number(section, key, raw, cast=float):
    try:
        value = cast(raw)
    except (TypeError, ValueError):
        raise ConfigError(section, key, 'expected a number, got {0!r}'.format(raw))
    if cast is float and math.isnan(value):
        raise ConfigError(section, key, 'NaN is not allowed')
    return value


def _boolean(section, key, raw):
    if isinstance(raw, bool):
        return raw
    lowered = str(raw).strip().lower()
    if lowered in ('1', 'yes', 'true', 'on'):
        return True
    if lowered in ('0', 'no', 'false', 'off'):
        return False
    raise ConfigError(section, key, 'expected a boolean, got {0!r}'.format(raw))


def _ramp(section, values, key):
    raw = values.get(key)
    if raw is None or str(raw).strip() == '':
        return math.inf
    return _number(section, key, raw)


def build_generator(name, values, section=None):
    """Builds a GeneratorSpec from a mapping of raw config values.

    Arguments
    ---------
    1. name {string} -- Unit name.
    2. values {dict} -- Raw key/value pairs of one [generator:<name>] block.

    Raises
    ------
    1. ConfigError: unknown kind, missing cost data or a non-numeric value.

    Returns
    -------
    GeneratorSpec -- The unit.
    """
    section = section or GENERATOR_PREFIX + name
    try:
        kind = GeneratorKind(str(values.get('kind', name)).strip().lower())
    except ValueError:
        raise ConfigError(section, 'kind', 'unknown generator kind {0!r}'.format(values.get('kind', name)))

    if kind.is_conventional:
        missing = [key for key in ('alpha', 'beta', 'gamma') if key not in values]
        if missing:
            raise ConfigError(section, missing[0], 'required for conventional units')
        cost = QuadraticCost(*(_number(section, key, values[key]) for key in ('alpha', 'beta', 'gamma')))
    elif 'k_coeff' in values:
        cost = LinearCost(_number(section, 'k_coeff', values['k_coeff']))
    else:
        keys = ('r_interest', 'lifetime_years', 'invest_per_kw', 'maint_per_kw')
        missing = [key for key in keys if key not in values]
        if missing:
            raise ConfigError(section, missing[0], 'renewable units need k_coeff or its derivation')
        cost = LinearCost.from_investment(
            _number(section, 'r_interest', values['r_interest']),
            _number(section, 'lifetime_years', values['lifetime_years'], int),
            _number(section, 'invest_per_kw', values['invest_per_kw']),
            _number(section, 'maint_per_kw', values['maint_per_kw']),
        )

    return GeneratorSpec(
        kind=kind,
        cost=cost,
        p_min=_number(section, 'p_min', values.get('p_min', 0.0)),
        p_max=_number(section, 'p_max', values.get('p_max', 0.0)),
        ramp_up=_ramp(section, values, 'ramp_up'),
        ramp_down=_ramp(section, values, 'ramp_down'),
        committed=_boolean(section, 'committed', values.get('committed', True)),
        name=name,
    )


def default_config():
    """Returns the built-in synthetic microgrid."""
    fleet = tuple(build_generator(name, values) for name, values in DEFAULT_GENERATORS.items())
    return MicrogridConfig(fleet=fleet, pv=PvPhysics(**DEFAULT_PV), wind=WindPhysics(**DEFAULT_WIND))


def _section_numbers(parser, section, defaults, casts=None):
    casts = casts or {}
    values = dict(defaults)
    if parser.has_section(section):
        for key, raw in parser.items(section):
            if key not in defaults:
                raise ConfigError(section, key, 'unknown key')
            cast = casts.get(key, float)
            values[key] = _boolean(section, key, raw) if cast is bool else _number(section, key, raw, cast)
    return values


def load_config(path):
    """Parses a microgrid configuration file.

    Arguments
    ---------
    1. path {string} -- Path to the INI file.

    Raises
    ------
    1. ConfigError: unreadable file or invalid value.

    Returns
    -------
    MicrogridConfig -- The parsed configuration.
    """
    if not os.path.exists(path):
        raise ConfigError('-', 'path', 'file {0} does not exist'.format(path))
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read(path)
    except configparser.Error as error:
        raise ConfigError('-', 'path', str(error))

    generator_sections = [s for s in parser.sections() if s.startswith(GENERATOR_PREFIX)]
    if generator_sections:
        fleet = tuple(build_generator(s[len(GENERATOR_PREFIX):], dict(parser.items(s)), s) for s in generator_sections)
    else:
        fleet = default_config().fleet

    pv = PvPhysics(**_section_numbers(parser, 'pv', DEFAULT_PV))
    wind = WindPhysics(**_section_numbers(parser, 'wind', DEFAULT_WIND))
    oracle = OracleSettings(**_section_numbers(parser, 'oracle', asdict(OracleSettings()),
                                               {'max_iter': int, 'startup_free': bool}))
    data = DataSettings(**_section_numbers(parser, 'data', asdict(DataSettings()),
                                           {'days': int, 'resolution_min': int, 'shuffle': bool}))
    training = dict(parser.items('training')) if parser.has_section('training') else {}
    penalties = dict(parser.items('penalties')) if parser.has_section('penalties') else {}

    logger.info('Loaded %d generator(s) from %s', len(fleet), path)
    return MicrogridConfig(fleet=fleet, pv=pv, wind=wind, oracle=oracle, data=data,
                           training=training, penalties=penalties, source=str(path))
