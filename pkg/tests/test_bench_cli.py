# tests/test_bench_cli.py
# Tests the surrogate/oracle timing, the plot series export and the command-line
# entry point.

# Importing relevant libraries
import json

import numpy as np
import pandas as pd
import pytest

from pidispatch.bench import BenchReport, bench, plotdata, time_call
from pidispatch.cli import main
from pidispatch.config import default_config
from pidispatch.datagen import TARGET_NAMES
from pidispatch.exceptions import InputDomainError
from pidispatch.nn import make_cnn

SMALL = ['--days', '1', '--resolution-min', '15']


def run(out_dir, *argv):
    return main(list(argv) + ['--out-dir', str(out_dir)])


def pipeline(out_dir):
    assert run(out_dir, 'generate', *SMALL) == 0
    assert run(out_dir, 'train', '--epochs', '2') == 0
    assert run(out_dir, 'eval') == 0


# Speedup is oracle time over model time; few repetitions are flagged.
def test_bench_report():
    report = BenchReport({'pi-cnn': 0.5, 'cnn': 0.25}, 5.0, 10, 1, 0, 'test host')
    assert report.speedup == {'pi-cnn': 10.0, 'cnn': 20.0}
    assert report.low_confidence
    assert not BenchReport({'pi-cnn': 0.5}, 5.0, 10, 100, 0, 'test host').low_confidence
    assert list(report.to_frame()['method']) == ['pi-cnn', 'cnn', 'oracle']
    with pytest.raises(InputDomainError):
        BenchReport({'pi-cnn': 0.0}, 5.0, 10, 1, 0, 'test host')


# time_call() returns a positive median and rejects empty work.
def test_time_call():
    assert time_call(np.sum, [np.ones(4)], repetitions=5, warmup=1) > 0
    with pytest.raises(InputDomainError):
        time_call(np.sum, [np.ones(4)], repetitions=0)
    with pytest.raises(InputDomainError):
        time_call(np.sum, [])


# bench() times every model and the oracle on the test split.
def test_bench(small_dataset):
    report = bench({'cnn': make_cnn(seed=1)}, small_dataset, default_config().fleet, repetitions=3, warmup=1)
    assert set(report.model_ms) == {'cnn'}
    assert report.n_samples == len(small_dataset.test_idx)
    assert report.low_confidence
    assert report.to_dict()['speedup']['cnn'] == pytest.approx(report.oracle_ms / report.model_ms['cnn'])


# plotdata() pairs raw truth with denormalized predictions over the test split.
def test_plotdata(small_dataset):
    frame = plotdata(make_cnn(seed=1), small_dataset)
    assert frame.shape == (len(small_dataset.test_idx), 1 + 2 * len(TARGET_NAMES))
    assert list(frame['t']) == list(small_dataset.test_idx)
    truth = frame[['truth_' + name for name in TARGET_NAMES]].to_numpy()
    assert np.array_equal(truth, small_dataset.raw_targets(small_dataset.test_idx))
    assert len(plotdata(make_cnn(seed=1), small_dataset, (2, 7))) == 5


@pytest.mark.parametrize('window', [(5, 5), (0, 21), (-1, 3)])
# Empty or out-of-range windows are rejected.
def test_plotdata_bad_window(small_dataset, window):
    with pytest.raises(InputDomainError):
        plotdata(make_cnn(seed=1), small_dataset, window)


# Usage errors exit with 2, --help with 0.
def test_cli_usage(tmp_path):
    assert main(['generate', '--bogus']) == 2
    assert main([]) == 2
    assert main(['--help']) == 0
    assert main(['train', '--variant', 'rnn', '--out-dir', str(tmp_path)]) == 2


# A missing input file is a library error and exits with 1.
def test_cli_missing_inputs(tmp_path):
    assert run(tmp_path, 'eval') == 1
    assert run(tmp_path, 'train') == 1
    assert run(tmp_path, 'solve', '--loads', 'absent.csv') == 1


# generate -> train -> eval writes the dataset, checkpoint, history and reports.
def test_cli_pipeline(tmp_path):
    pipeline(tmp_path)
    for name in ('dataset.csv', 'dataset.meta.json', 'model-pi-cnn.npz', 'model-pi-cnn.history.csv',
                 'metrics.json', 'metrics.csv'):
        assert (tmp_path / name).exists()
    assert len(pd.read_csv(tmp_path / 'model-pi-cnn.history.csv')) == 2
    record = json.loads((tmp_path / 'metrics.json').read_text())
    assert record['variant'] == 'pi-cnn' and record['seed'] == 42
    assert 'infer_ms_per_sample' not in record
    assert set(pd.read_csv(tmp_path / 'metrics.csv')['target']) == set(TARGET_NAMES)


# Two runs with the same seed write byte-identical metrics.
def test_cli_metrics_are_reproducible(tmp_path):
    pipeline(tmp_path / 'first')
    pipeline(tmp_path / 'second')
    assert (tmp_path / 'first' / 'metrics.json').read_bytes() == (tmp_path / 'second' / 'metrics.json').read_bytes()


# bench and plotdata work from the files the pipeline leaves behind.
def test_cli_bench_and_plotdata(tmp_path):
    pipeline(tmp_path)
    assert run(tmp_path, 'bench', '--models', 'model-pi-cnn.npz', '--repetitions', '2', '--warmup', '0') == 0
    record = json.loads((tmp_path / 'bench.json').read_text())
    assert record['low_confidence'] and set(record['model_ms']) == {'model-pi-cnn'}
    assert run(tmp_path, 'plotdata', '--start', '0', '--stop', '4') == 0
    assert len(pd.read_csv(tmp_path / 'plotdata.csv')) == 4
    assert run(tmp_path, 'plotdata', '--start', '0', '--stop', '4', '--out', 'again.csv') == 0
    assert (tmp_path / 'again.csv').read_bytes() == (tmp_path / 'plotdata.csv').read_bytes()
    assert run(tmp_path, 'plotdata', '--start', '3', '--stop', '3') == 1


# solve writes one balanced row per load.
def test_cli_solve(tmp_path):
    frame = pd.DataFrame({'load': [300.0, 320.0, 310.0], 'pv_available': [20.0, 25.0, 30.0]})
    frame.to_csv(tmp_path / 'loads.csv', index=False)
    assert run(tmp_path, 'solve', '--loads', 'loads.csv') == 0
    table = pd.read_csv(tmp_path / 'solution.csv')
    assert list(table.columns) == ['t', 'p_chp', 'p_ng', 'p_ds', 'p_wind', 'p_pv', 'cost', 'lambda']
    assert (table[list(TARGET_NAMES)].sum(axis=1) - frame['load']).abs().max() < 1e-6


@pytest.mark.slow
# A single-sample forward pass is at least ten times faster than one oracle solve.
def test_surrogate_speedup(microgrid):
    dataset = microgrid.data.generate(seed=42, days=7)
    models = {'pi-cnn': make_cnn(seed=42, variant='pi-cnn'), 'cnn': make_cnn(seed=7)}
    report = microgrid.bench.run(models, dataset, repetitions=200, warmup=20)
    assert report.speedup['pi-cnn'] >= 10.0
    # Same architecture, so the two surrogates run at comparable speed.
    assert 0.5 <= report.model_ms['pi-cnn'] / report.model_ms['cnn'] <= 2.0
