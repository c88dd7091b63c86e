#*************************************************************************************
# Module: cli
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/10/2026   Initial Release
#   1.1      03/13/2026   ablate and compare subcommands.
#
# File Description
# ------------------------------------------------------------------------------------
# Command-line entry point. Every subcommand wraps one Microgrid sub-object and writes
# its artifacts below --out-dir: datasets and tables as CSV, reports as JSON, models
# as .npz checkpoints.
#
# Exit status: 0 on success, 1 on any library error (message logged to stderr),
# 2 on a usage error.
#
# Subcommands
# ------------------------------------------------------------------------------------
#         Name                                      Description
# --------------------         -------------------------------------------------------
# generate                     Synthesizes and labels a dataset.
#
# solve                        Solves a load series with the oracle.
#
# train                        Trains one variant and saves the checkpoint.
#
# eval                         Metrics of a checkpoint on a dataset split.
#
# bench                        Surrogate versus oracle timings.
#
# plotdata                     Truth/prediction series for external plotting.
#
# ablate                       Metrics versus training-set size.
#
# compare                      Variants side by side at equal epochs.
#*************************************************************************************
import argparse
import json
import logging
import os
import sys

import pandas as pd

from pidispatch import __version__
from pidispatch.client import Microgrid
from pidispatch.exceptions import DispatchError, MissingInputError
from pidispatch.trainer import DEFAULT_FRACTIONS, VARIANTS, evaluate

logger = logging.getLogger('pidispatch')

OK = 0
ERROR = 1
USAGE = 2
DEFAULT_SEED = 42
DEFAULT_DATA = 'dataset.csv'


def _global_flags(parser, suppress):
    # Global flags are accepted before or after the subcommand name.
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument('--config', default=default(None), help='microgrid INI configuration file')
    parser.add_argument('--seed', type=int, default=default(None), help='master random seed (default 42)')
    parser.add_argument('--out-dir', default=default('.'), help='directory for every written artifact')
    parser.add_argument('-v', '--verbose', action='store_true', default=default(False), help='debug logging')
    parser.add_argument('-q', '--quiet', action='store_true', default=default(False), help='warnings only')


def _training_flags(parser):
    parser.add_argument('--epochs', type=int, help='training epochs (default 150)')
    parser.add_argument('--lr', type=float, help='SGD learning rate (default 0.01)')
    parser.add_argument('--batch', type=int, help='mini-batch size (default 32)')
    parser.add_argument('--lambda-pbc', type=float, help='power-balance penalty weight')
    parser.add_argument('--lambda-bounds', type=float, help='weight of every bound penalty')
    parser.add_argument('--lambda-ramp', type=float, help='weight of the ramp penalties')


def build_parser():
    parser = argparse.ArgumentParser(prog='pidispatch', description='Microgrid economic dispatch with a '
                                     'numerical oracle and physics-informed CNN surrogates.')
    parser.add_argument('--version', action='version', version='%(prog)s {0}'.format(__version__))
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    generate = commands.add_parser('generate', parents=[common], help='synthesize and label a dataset')
    generate.add_argument('--days', type=int, help='days of 1440 minutes to synthesize')
    generate.add_argument('--resolution-min', type=int, help='minutes per timestep')
    generate.add_argument('--train-frac', type=float, help='training share of the samples')
    generate.add_argument('--shuffle', action='store_true', default=None, help='shuffled instead of contiguous split')
    generate.add_argument('--out', default=DEFAULT_DATA, help='dataset CSV (sidecar written next to it)')

    solve = commands.add_parser('solve', parents=[common], help='solve a load series with the oracle')
    solve.add_argument('--loads', required=True, help="CSV with a 'load' column and optional <unit>_available columns")
    solve.add_argument('--out', default='solution.csv', help='solution CSV')

    train = commands.add_parser('train', parents=[common], help='train one variant')
    train.add_argument('--variant', choices=VARIANTS, help='model variant (default pi-cnn)')
    _training_flags(train)
    train.add_argument('--data', default=DEFAULT_DATA, help='dataset CSV')
    train.add_argument('--out-model', help='checkpoint path (default model-<variant>.npz)')

    evaluate_ = commands.add_parser('eval', parents=[common], help='evaluate a checkpoint')
    evaluate_.add_argument('--model', default='model-pi-cnn.npz', help='checkpoint path')
    evaluate_.add_argument('--data', default=DEFAULT_DATA, help='dataset CSV')
    evaluate_.add_argument('--split', choices=('test', 'train', 'all'), default='test', help='samples to score')
    evaluate_.add_argument('--out', default='metrics', help='report stem; .json and .csv are written')
    evaluate_.add_argument('--timings', action='store_true', help='include wall times in the JSON report')

    bench = commands.add_parser('bench', parents=[common], help='time surrogates against the oracle')
    bench.add_argument('--models', nargs='+', default=['model-pi-cnn.npz', 'model-cnn.npz'], help='checkpoints')
    bench.add_argument('--data', default=DEFAULT_DATA, help='dataset CSV')
    bench.add_argument('--repetitions', type=int, default=1000, help='timed calls per method')
    bench.add_argument('--warmup', type=int, default=100, help='untimed calls per method')
    bench.add_argument('--out', default='bench', help='report stem; .json and .csv are written')

    plot = commands.add_parser('plotdata', parents=[common], help='truth versus prediction series')
    plot.add_argument('--model', default='model-pi-cnn.npz', help='checkpoint path')
    plot.add_argument('--data', default=DEFAULT_DATA, help='dataset CSV')
    plot.add_argument('--start', type=int, default=0, help='first test-split position')
    plot.add_argument('--stop', type=int, help='end test-split position (exclusive; default all)')
    plot.add_argument('--out', default='plotdata.csv', help='series CSV')

    ablate = commands.add_parser('ablate', parents=[common], help='metrics versus training-set size')
    ablate.add_argument('--fractions', type=float, nargs='+', default=list(DEFAULT_FRACTIONS), help='training shares')
    ablate.add_argument('--variants', nargs='+', choices=VARIANTS, default=['pi-cnn', 'cnn'], help='variants')
    _training_flags(ablate)
    ablate.add_argument('--data', default=DEFAULT_DATA, help='dataset CSV')
    ablate.add_argument('--out', default='ablation.csv', help='table CSV')

    compare = commands.add_parser('compare', parents=[common], help='variants at equal epochs plus a long DNN run')
    _training_flags(compare)
    compare.add_argument('--long-epochs', type=int, default=500, help='epochs of the extra dnn run')
    compare.add_argument('--data', default=DEFAULT_DATA, help='dataset CSV')
    compare.add_argument('--out', default='compare.csv', help='table CSV')
    return parser


def _path(args, name):
    return os.path.join(args.out_dir, name)


def _input(args, name):
    path = _path(args, name)
    if not os.path.exists(path):
        raise MissingInputError(path)
    return path


def _seed(args, microgrid):
    if args.seed is not None:
        return args.seed
    return int(microgrid.config.training.get('seed', DEFAULT_SEED))


def _write_json(record, path):
    with open(path, 'w') as f:
        json.dump(record, f, indent=2, sort_keys=True)
        f.write('\n')
    logger.info('Wrote %s', path)


def _write_csv(frame, path):
    frame.to_csv(path, index=False)
    logger.info('Wrote %s', path)


def _training_overrides(args, seed):
    return {'epochs': args.epochs, 'learning_rate': args.lr, 'batch_size': args.batch, 'seed': seed,
            'lambda_pbc': args.lambda_pbc, 'lambda_bounds': args.lambda_bounds, 'lambda_ramp': args.lambda_ramp}


def cmd_generate(args, microgrid):
    dataset = microgrid.data.generate(_seed(args, microgrid), args.days, args.resolution_min, args.train_frac,
                                      args.shuffle)
    microgrid.save_dataset(dataset, _path(args, args.out))


def cmd_solve(args, microgrid):
    frame = pd.read_csv(_input(args, args.loads))
    horizon = microgrid.oracle.solve_series(frame)
    if not horizon.ramp_feasible:
        logger.warning('Solution violates a ramp limit')
    _write_csv(horizon.to_frame(), _path(args, args.out))


def cmd_train(args, microgrid):
    dataset = microgrid.load_dataset(_input(args, args.data))
    overrides = _training_overrides(args, _seed(args, microgrid))
    overrides['variant'] = args.variant
    config = microgrid.trainer.training_config(**overrides)
    model, history = microgrid.trainer.train(dataset, **overrides)
    path = _path(args, args.out_model or 'model-{0}.npz'.format(config.variant))
    microgrid.save_model(model, path)
    _write_csv(history.to_frame(), os.path.splitext(path)[0] + '.history.csv')
    logger.info('Trained %s in %.1f s, final loss %.6f', config.variant, history.seconds, history.total[-1])


def cmd_eval(args, microgrid):
    model = microgrid.load_model(_path(args, args.model))
    dataset = microgrid.load_dataset(_input(args, args.data))
    report = evaluate(model, dataset, args.split)
    record = report.to_dict(timings=args.timings)
    record.update({'config_hash': microgrid.config.digest(), 'seed': model.seed})
    stem = _path(args, args.out)
    _write_json(record, stem + '.json')
    _write_csv(report.to_frame(), stem + '.csv')
    logger.info('Mean R2 %s, mean MSE %.4f kW^2, balance residual %.4f kW',
                record['mean']['r2'], report.mean_mse, report.balance_residual)


def cmd_bench(args, microgrid):
    models = {}
    for name in args.models:
        model = microgrid.load_model(_path(args, name))
        models[os.path.splitext(os.path.basename(name))[0]] = model
    dataset = microgrid.load_dataset(_input(args, args.data))
    report = microgrid.bench.run(models, dataset, args.repetitions, args.warmup, _seed(args, microgrid))
    stem = _path(args, args.out)
    _write_json(report.to_dict(), stem + '.json')
    _write_csv(report.to_frame(), stem + '.csv')


def cmd_plotdata(args, microgrid):
    model = microgrid.load_model(_path(args, args.model))
    dataset = microgrid.load_dataset(_input(args, args.data))
    stop = len(dataset.test_idx) if args.stop is None else args.stop
    frame = microgrid.bench.plotdata(model, dataset, (args.start, stop))
    frame.to_csv(_path(args, args.out), index=False, float_format='%.17g')
    logger.info('Wrote %d rows to %s', len(frame), _path(args, args.out))


def cmd_ablate(args, microgrid):
    dataset = microgrid.load_dataset(_input(args, args.data))
    table = microgrid.trainer.ablate(dataset, tuple(args.fractions), tuple(args.variants),
                                     **_training_overrides(args, _seed(args, microgrid)))
    _write_csv(table.drop(columns=['train_seconds']), _path(args, args.out))


def cmd_compare(args, microgrid):
    dataset = microgrid.load_dataset(_input(args, args.data))
    runs = (('pi-cnn', None), ('cnn', None), ('dnn', None), ('dnn', args.long_epochs))
    table = microgrid.trainer.compare(dataset, runs, **_training_overrides(args, _seed(args, microgrid)))
    _write_csv(table, _path(args, args.out))


COMMANDS = {
    'generate': cmd_generate,
    'solve': cmd_solve,
    'train': cmd_train,
    'eval': cmd_eval,
    'bench': cmd_bench,
    'plotdata': cmd_plotdata,
    'ablate': cmd_ablate,
    'compare': cmd_compare,
}


def main(argv=None):
    """Runs one subcommand and returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as stop:
        return stop.code
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    logger.setLevel(level)

    try:
        os.makedirs(args.out_dir, exist_ok=True)
        microgrid = Microgrid(args.config)
        COMMANDS[args.command](args, microgrid)
    except DispatchError as error:
        logger.error('%s', error)
        return ERROR
    return OK
