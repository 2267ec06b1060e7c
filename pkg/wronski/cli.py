"""Batch command-line surface: evolutions, chart comparisons, positivity audits,
tetrahedron checks and Bethe verification. Reports go to stdout as JSON
(``--format table`` for a plain rendering); diagnostics go to stderr.

Exit codes: 0 pass, 1 mathematical failure, 2 usage error.
"""
import sys
import argparse

from wronski.errors import PoleError, RankTooLargeError, RedrawExhaustedError, UsageError, WronskiError
from wronski.group import cells, words
from wronski.group.cells import act, chart, standard_column, totally_positive_sample, whitney_word
from wronski.group.words import (Word, commutation_classes, diagram_consistency, is_reduced, move_path, octagon_order,
                                 reduced_words_of_longest, tetrahedron_chart_consistency, tetrahedron_check,
                                 tetrahedron_sides, theorem_composites_check, transition_map)
from wronski.engine.verifier import TrialOutcome, TrialRunner
from wronski.population.bethe import bethe_verify
from wronski.population.generalv import genericity_check
from wronski.population.mutations import (all_positive_coeffs, closed_form_positivity, comparison_check, evolve,
                                          generic_evolve, positivity_check, positivity_witnesses, triangular_coords,
                                          wronski_map)
from wronski.utils.exp import DEFAULT_CONFIG_PATH, init_run, str2bool
from wronski.utils.log import logger
from wronski.utils import misc
from wronski.utils.misc import random_params
from wronski.utils.serialization import dumps, render_table, params_from_json

COMMANDS = ('evolve', 'compare', 'tetra', 'bethe', 'positivity', 'charts', 'enumerate')


def parse_args(argv=None):
    parser = argparse.ArgumentParser(prog='wronski', description=__doc__.split('\n')[0])
    parser.add_argument('--config', type=str, default=None,
                        help='"-" reads a JSON run config from stdin.')
    parser.add_argument('--config-path', type=str, default=str(DEFAULT_CONFIG_PATH),
                        help='The path to the config file.')
    parser.add_argument('--logs-path', type=str, default=None,
                        help='Directory for run logs. Default: cfg.LOGS_PATH (no file log when empty).')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--rank', type=int, default=None)
    common.add_argument('--word', type=str, default=None, help='e.g. 121321 or 1,2,1; empty for the empty word')
    common.add_argument('--params', type=str, default=None, help='comma-separated rationals, e.g. 1,1/2,3')
    common.add_argument('--seed', type=int, default=None)
    common.add_argument('--tol', type=float, default=None)
    common.add_argument('--max-iter', type=int, default=None)
    common.add_argument('--trials', type=int, default=None)
    common.add_argument('--format', choices=['json', 'table'], default=None)
    common.add_argument('--progress', type=str2bool, default=None)

    subparsers = parser.add_subparsers(dest='command')
    for name in COMMANDS:
        sub = subparsers.add_parser(name, parents=[common])
        if name == 'charts':
            sub.add_argument('--from', dest='from_word', type=str, default=None)
            sub.add_argument('--to', dest='to_word', type=str, default=None)

    return parser.parse_args(argv)


def _get(cfg, name, default=None):
    value = cfg.get(name)
    if value is None:
        value = cfg.get(name.upper())
    return default if value is None else value


def _params(cfg):
    value = cfg.get('params')
    if value is None:
        return None
    if isinstance(value, str):
        value = [v for v in value.split(',') if v.strip()]
    return params_from_json(value)


def _rank(cfg, *texts):
    rank = cfg.get('rank')
    if rank is None:
        letters = [int(c) for w in texts if w for c in str(w).replace(',', '')]
        if not letters:
            raise UsageError('--rank is required')
        rank = max(letters)
    if rank < 1:
        raise UsageError('--rank must be >= 1')
    return rank


def _word(cfg, rank, key='word'):
    value = cfg.get(key)
    if isinstance(value, (list, tuple)):
        return Word(value, rank)
    return Word.parse(value, rank)


def _runner(cfg, name):
    return TrialRunner(name, _get(cfg, 'trials', 10), seed=_get(cfg, 'seed'),
                       max_redraws=_get(cfg, 'max_redraws', 20),
                       show_progress=_get(cfg, 'progress', True))


def cmd_evolve(cfg):
    rank = _rank(cfg, cfg.get('word'))
    word = _word(cfg, rank)
    params = _params(cfg) or ()
    y = evolve(word, params)
    report = {
        'command': 'evolve', 'rank': rank, 'word': word, 'params': params,
        'tuple': y, 'degrees': list(y.degrees()), 'triangular_coords': triangular_coords(y),
        'status': 'PASS',
    }
    return report, True


def cmd_compare(cfg):
    rank = _rank(cfg, cfg.get('word'))
    word_list = [_word(cfg, rank)] if cfg.get('word') is not None else reduced_words_of_longest(rank)
    trials = _get(cfg, 'trials', 10)
    runner = _runner(cfg, 'comparison')

    def trial(rng, index):
        word = word_list[index // trials]
        params = random_params(rng, len(word), signed=True)
        return TrialOutcome(comparison_check(word, params), detail={'word': word, 'params': params})

    report = runner.run(trial, trials * len(word_list))
    report.update({'command': 'compare', 'rank': rank, 'words': len(word_list)})
    return report, runner.ok


def cmd_tetra(cfg):
    params = _params(cfg)
    if params is not None:
        if len(params) != 6:
            raise UsageError('the tetrahedron check takes 6 parameters')
        left, right = tetrahedron_sides(params)
        edges = diagram_consistency(params)
        ok = (left == right and theorem_composites_check(params) and all(e[3] for e in edges)
              and tetrahedron_chart_consistency(params))
        report = {'command': 'tetra', 'params': params, 'left': left, 'right': right,
                  'edges': [list(e) for e in edges], 'status': 'PASS' if ok else 'FAIL'}
        return report, ok

    runner = _runner(cfg, 'tetrahedron')

    def trial(rng, index):
        params = random_params(rng, 6, signed=True)
        checks = {
            'tetrahedron': tetrahedron_check(params),
            'composites': theorem_composites_check(params),
            'diagram': all(e[3] for e in diagram_consistency(params)),
            'charts': tetrahedron_chart_consistency(params),
        }
        return TrialOutcome(all(checks.values()), detail={'params': params, 'checks': checks})

    report = runner.run(trial)
    report['command'] = 'tetra'
    return report, runner.ok


def _bethe_options(cfg):
    return dict(tol=_get(cfg, 'tol', 1e-9), root_tol=_get(cfg, 'root_tol', 1e-12),
                max_iter=_get(cfg, 'max_iter', 200), dps=_get(cfg, 'polish_dps', 50))


def cmd_bethe(cfg):
    options = _bethe_options(cfg)
    params = _params(cfg)
    if params is not None:
        rank = _rank(cfg, cfg.get('word'))
        word = _word(cfg, rank)
        y = evolve(word, params)
        report = bethe_verify(y, **options)
        report.update({'command': 'bethe', 'word': word, 'params': params, 'tuple': y})
        return report, report['status'] == 'ok'

    rank = _rank(cfg, cfg.get('word'))
    word_list = [_word(cfg, rank)] if cfg.get('word') is not None else reduced_words_of_longest(rank)
    trials = _get(cfg, 'trials', 10)
    runner = _runner(cfg, 'bethe')

    def trial(rng, index):
        word = word_list[index // trials]
        params, y, redraws = generic_evolve(word, rng, max_redraws=runner.max_redraws, accept=genericity_check)
        result = bethe_verify(y, **options)
        detail = {'word': word, 'params': params, 'status': result['status'], 'max': result['max']}
        return TrialOutcome(result['status'] == 'ok', result['max'], redraws, detail)

    report = runner.run(trial, trials * len(word_list))
    report.update({'command': 'bethe', 'rank': rank, 'words': len(word_list)})
    return report, runner.ok


def cmd_positivity(cfg):
    params = _params(cfg)
    rank = _rank(cfg, cfg.get('word'))
    seed = _get(cfg, 'seed', 0)
    if params is not None:
        word = _word(cfg, rank) if cfg.get('word') is not None else Word(whitney_word(rank), rank)
        y = evolve(word, params)
        positive = positivity_check(y, seed)
        report = {
            'command': 'positivity', 'word': word, 'params': params, 'tuple': y,
            'positive': positive, 'closed_form': closed_form_positivity(y),
            'all_positive_coeffs': all_positive_coeffs(y), 'witnesses': positivity_witnesses(y),
            'status': 'PASS',
        }
        return report, True

    runner = _runner(cfg, 'positivity')
    b0 = standard_column(rank)
    word = Word(whitney_word(rank), rank)

    def trial(rng, index):
        if index % 2 == 0:
            y = wronski_map(act(totally_positive_sample(rank, rng=rng), b0))
            passed = positivity_check(y, seed) and all_positive_coeffs(y)
        else:
            # both criteria are cross-checked inside positivity_check
            y = evolve(word, random_params(rng, len(word), signed=True))
            positivity_check(y, seed)
            passed = True
        return TrialOutcome(passed, detail={'tuple': y})

    report = runner.run(trial)
    report.update({'command': 'positivity', 'rank': rank})
    return report, runner.ok


def cmd_charts(cfg):
    source, target = cfg.get('from_word'), cfg.get('to_word')
    if source is None or target is None:
        raise UsageError('charts needs --from and --to')
    rank = _rank(cfg, source, target)
    h, h2 = _word(cfg, rank, 'from_word'), _word(cfg, rank, 'to_word')
    if not (is_reduced(h) and is_reduced(h2)):
        raise UsageError('charts are defined for reduced words')
    params = _params(cfg)
    if params is None:
        raise UsageError('charts needs --params')
    moved = transition_map(h, h2, params)
    same = chart(h, params, rank) == chart(h2, moved, rank)
    report = {
        'command': 'charts', 'from': h, 'to': h2, 'params': params, 'result': moved,
        'path': [list(m) for m in move_path(h, h2)], 'chart_consistent': same,
        'status': 'PASS' if same else 'FAIL',
    }
    return report, same


def cmd_enumerate(cfg):
    rank = _rank(cfg)
    reduced = reduced_words_of_longest(rank)
    classes = commutation_classes(reduced)
    report = {
        'command': 'enumerate', 'rank': rank, 'count': len(reduced), 'words': reduced,
        'commutation_classes': [list(c) for c in classes], 'status': 'PASS',
    }
    if rank == 3:
        report['octagon'] = list(octagon_order(classes))
    return report, True


HANDLERS = {name: globals()[f'cmd_{name}'] for name in COMMANDS}


def apply_config(cfg):
    """Module-level limits taken from the config file."""
    misc.SAMPLE_BOUND = int(_get(cfg, 'sample_bound', misc.SAMPLE_BOUND))
    words.MAX_ENUM_RANK = int(_get(cfg, 'max_enum_rank', words.MAX_ENUM_RANK))
    cells.EXHAUSTIVE_TP_MAX_RANK = int(_get(cfg, 'exhaustive_tp_max_rank', cells.EXHAUSTIVE_TP_MAX_RANK))
    cells.TP_WITNESSES = int(_get(cfg, 'tp_witnesses', cells.TP_WITNESSES))


def run(cfg):
    command = cfg.get('command') or cfg.get('subcommand')
    if command not in HANDLERS:
        raise UsageError(f'unknown or missing subcommand {command!r}; one of {", ".join(COMMANDS)}')
    apply_config(cfg)
    logger.info(f'Running {command}')
    return HANDLERS[command](cfg)


def _error_report(e):
    report = {'status': 'ERROR', 'error': type(e).__name__, 'message': str(e)}
    if isinstance(e, PoleError):
        report.update({'position': e.position, 'triple': e.triple})
    elif isinstance(e, RedrawExhaustedError):
        report['max_redraws'] = e.max_redraws
    return report


def main(argv=None):
    args = parse_args(argv)
    cfg = {}
    try:
        cfg = init_run(args, prefix='wronski_')
        report, ok = run(cfg)
    except (UsageError, RankTooLargeError, argparse.ArgumentTypeError) as e:
        logger.error(f'usage error: {e}')
        return 2
    except WronskiError as e:
        logger.error(f'{type(e).__name__}: {e}')
        report, ok = _error_report(e), False

    output = render_table(report) if _get(cfg, 'format', 'json') == 'table' else dumps(report)
    print(output)
    return 0 if ok else 1


if __name__ == '__main__':
    sys.exit(main())
