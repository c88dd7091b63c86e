# tests/test_datagen.py
# Tests weather/load synthesis, normalization, splitting, dataset assembly and the
# CSV + sidecar persistence in pidispatch.datagen.

# Importing relevant libraries
import json

import numpy as np
import pandas as pd
import pytest

from pidispatch.config import default_config
from pidispatch.datagen import (FEATURE_NAMES, TARGET_NAMES, Normalizer, denormalize, load_dataset,
                                metadata_path, normalize, save_dataset, split, synthesize_load,
                                synthesize_weather, validate_labels)
from pidispatch.exceptions import InputDomainError, MissingInputError, MissingMetadataError, ParseError


@pytest.mark.parametrize('days, expected', [(31, 8928), (7, 2016), (1, 288)])
# A day holds 1440 / resolution steps.
def test_weather_length(days, expected):
    profile = synthesize_weather(42, days, 5)
    assert len(profile) == expected


# The same seed yields bitwise-identical profiles and loads.
def test_weather_is_deterministic():
    first = synthesize_weather(42, 2, 5)
    second = synthesize_weather(42, 2, 5)
    assert np.array_equal(first.irradiance, second.irradiance)
    assert np.array_equal(first.temperature, second.temperature)
    assert np.array_equal(first.wind_speed, second.wind_speed)
    assert np.array_equal(synthesize_load(42, 100), synthesize_load(42, 100))
    assert not np.array_equal(synthesize_weather(43, 2, 5).wind_speed, first.wind_speed)


# Irradiance is zero at night and wind speed never negative.
def test_weather_physical_ranges():
    profile = synthesize_weather(5, 3, 5)
    hours = (np.arange(len(profile)) * 5 / 60.0) % 24
    assert np.all(profile.irradiance[(hours < 6) | (hours > 18)] == 0)
    assert np.all(profile.irradiance >= 0)
    assert np.all(profile.wind_speed >= 0)


@pytest.mark.parametrize('days, resolution', [(0, 5), (1, 7), (1, 0)])
# Zero days or a resolution that does not divide a day is rejected.
def test_weather_rejects_bad_arguments(days, resolution):
    with pytest.raises(InputDomainError):
        synthesize_weather(1, days, resolution)


# Min-max scaling maps a column's endpoints to 0 and 1.
def test_normalize_examples():
    norm = Normalizer.fit(np.array([[0.0], [5.0], [10.0]]))
    assert normalize(norm, np.array([[0.0], [5.0], [10.0]]))[:, 0] == pytest.approx([0.0, 0.5, 1.0])
    assert np.all(normalize(norm, norm.x_min[None, :]) == 0)


# denormalize() inverts normalize(); degenerate columns map to 0 and back to x_min.
def test_normalize_inverse():
    data = np.random.default_rng(0).uniform(-5, 5, (20, 3))
    data[:, 2] = 1.5
    norm = Normalizer.fit(data)
    scaled = normalize(norm, data)
    assert np.all(scaled[:, 2] == 0)
    assert np.allclose(denormalize(norm, scaled), data, atol=1e-12)
    with pytest.raises(InputDomainError):
        normalize(norm, data[:, :2])


# Contiguous splits take floor(n * fraction) leading samples.
def test_split_examples():
    train, test = split(8928, 0.8)
    assert (len(train), len(test)) == (7142, 1786)
    train, test = split(10, 0.2)
    assert list(train) == [0, 1] and list(test) == list(range(2, 10))


# Shuffled splits are seeded and still partition the samples.
def test_split_shuffled():
    first = split(50, 0.7, seed=9, shuffle=True)
    second = split(50, 0.7, seed=9, shuffle=True)
    assert np.array_equal(first[0], second[0])
    assert sorted(np.concatenate(first).tolist()) == list(range(50))
    with pytest.raises(InputDomainError):
        split(10, 1.0)
    with pytest.raises(InputDomainError):
        split(3, 0.2)


# Every label balances the load and respects bounds and ramps, checked without the solver.
def test_dataset_label_physics(small_dataset):
    assert small_dataset.features.shape == (96, len(FEATURE_NAMES))
    assert small_dataset.targets.shape == (96, len(TARGET_NAMES))
    targets = small_dataset.raw_targets()
    assert np.abs(targets.sum(axis=1) - small_dataset.raw_load).max() <= 1e-6
    assert validate_labels(small_dataset, default_config().fleet) == []


# Night steps carry no PV output.
def test_dataset_night_pv_is_zero(small_dataset):
    pv_available = small_dataset.raw_features()[:, FEATURE_NAMES.index('pv_available')]
    night = pv_available == 0
    assert night.any()
    assert small_dataset.raw_targets()[night, TARGET_NAMES.index('p_pv')] == pytest.approx(0.0, abs=1e-9)


# Normalizers come from the training rows only; test rows may leave [0, 1].
def test_dataset_normalizer_fitted_on_train(small_dataset):
    train = small_dataset.features[small_dataset.train_idx]
    assert np.all(train >= -1e-12) and np.all(train <= 1 + 1e-12)
    raw = small_dataset.raw_features(small_dataset.train_idx)
    assert np.allclose(small_dataset.feature_norm.x_min, raw.min(axis=0))


# Datasets survive a save/load round trip exactly.
def test_dataset_round_trip(small_dataset, tmp_path):
    path = str(tmp_path / 'data.csv')
    save_dataset(small_dataset, path)
    with open(metadata_path(path)) as f:
        assert json.load(f)['format_version'] == 1
    assert load_dataset(path).equals(small_dataset)


# A header that does not match the schema is a parse error on line 1.
def test_load_dataset_bad_header(small_dataset, tmp_path):
    path = tmp_path / 'data.csv'
    save_dataset(small_dataset, str(path))
    lines = path.read_text().splitlines()
    lines[0] = lines[0].replace('load', 'demand', 1)
    path.write_text('\n'.join(lines) + '\n')
    with pytest.raises(ParseError) as error:
        load_dataset(str(path))
    assert error.value.line == 1


# A non-numeric value is reported with its line number.
def test_load_dataset_bad_value(small_dataset, tmp_path):
    path = tmp_path / 'data.csv'
    save_dataset(small_dataset, str(path))
    lines = path.read_text().splitlines()
    cells = lines[5].split(',')
    cells[3] = 'abc'
    lines[5] = ','.join(cells)
    path.write_text('\n'.join(lines) + '\n')
    with pytest.raises(ParseError) as error:
        load_dataset(str(path))
    assert error.value.line == 6


# A numeric column read back as text is converted rather than rejected.
def test_load_dataset_numeric_text(small_dataset, tmp_path, monkeypatch):
    path = str(tmp_path / 'data.csv')
    save_dataset(small_dataset, path)
    read_csv = pd.read_csv

    def as_text(*args, **kwargs):
        frame = read_csv(*args, **kwargs)
        frame['load'] = frame['load'].astype(str)
        return frame

    monkeypatch.setattr('pidispatch.datagen.pd.read_csv', as_text)
    loaded = load_dataset(path)
    assert np.allclose(loaded.features, small_dataset.features, atol=1e-12)
    assert np.allclose(loaded.raw_targets(), small_dataset.raw_targets(), atol=1e-9)


# Missing files raise explicit errors.
def test_load_dataset_missing_files(small_dataset, tmp_path):
    with pytest.raises(MissingInputError):
        load_dataset(str(tmp_path / 'absent.csv'))
    path = str(tmp_path / 'data.csv')
    save_dataset(small_dataset, path)
    (tmp_path / 'data.meta.json').unlink()
    with pytest.raises(MissingMetadataError):
        load_dataset(path)


# resplit() with the same indices is a no-op; a new split refits the normalizers.
def test_resplit(small_dataset):
    assert small_dataset.resplit(small_dataset.train_idx, small_dataset.test_idx) is small_dataset
    other = small_dataset.resplit(np.arange(20), small_dataset.test_idx)
    assert np.allclose(other.raw_targets(), small_dataset.raw_targets(), atol=1e-9)
    assert not np.array_equal(other.feature_norm.x_max, small_dataset.feature_norm.x_max)


# A night-only train block keeps the daytime PV values, in memory and on disk.
def test_resplit_night_train_block(small_dataset, tmp_path):
    pv = TARGET_NAMES.index('p_pv')
    night = small_dataset.resplit(np.arange(20), small_dataset.test_idx)
    assert night.target_norm.scale[pv] == 0.0
    assert night.raw_targets()[:, pv].max() > 0.0
    assert night.raw_targets()[:, pv].max() == pytest.approx(small_dataset.raw_targets()[:, pv].max())
    assert np.allclose(night.raw_features(), small_dataset.raw_features(), atol=1e-9)
    restored = night.resplit(small_dataset.train_idx, small_dataset.test_idx)
    assert np.allclose(restored.targets, small_dataset.targets, atol=1e-12)
    path = str(tmp_path / 'night.csv')
    save_dataset(night, path)
    loaded = load_dataset(path)
    assert loaded.equals(night)
    assert np.array_equal(loaded.raw_targets()[:, pv], night.raw_targets()[:, pv])


# context() exposes physical loads, bounds and previous setpoints.
def test_dataset_context(small_dataset):
    indices = np.array([0, 1, 50])
    context = small_dataset.context(indices, power_base=2.0)
    assert context.load == pytest.approx(small_dataset.raw_load[indices])
    assert context.previous[0] == pytest.approx(small_dataset.meta['initial_setpoints'])
    assert context.previous[2] == pytest.approx(small_dataset.raw_targets([49])[0])
    assert context.power_base == 2.0


# generate() falls back to the [data] settings of the configuration.
def test_data_generator_defaults(microgrid):
    dataset = microgrid.data.generate(seed=11, days=1, resolution=30)
    assert len(dataset) == 48
    assert len(dataset.train_idx) == 38
    assert dataset.meta['resolution'] == 30
