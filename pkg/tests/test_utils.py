import argparse
import json

import pytest
from sympy.polys.domains import QQ

from wronski.algebra.exactpoly import Poly, PolyTuple
from wronski.errors import RedrawExhaustedError
from wronski.group.cells import chart
from wronski.group.words import Word
from wronski.population.generalv import SingularData
from wronski.utils.exp import DEFAULT_CONFIG_PATH, load_config_file, load_run_config, str2bool, update_config
from wronski.utils.log import TrialAccumulator, add_logging, logger
from wronski.utils.misc import random_params, random_rational, redraw
from wronski.utils.serialization import (SCHEMA, dumps, matrix_from_json, params_from_json, poly_from_json,
                                         render_table, singular_from_json, to_json, tuple_from_json)


def test_json_encoding():
    assert to_json(QQ(-3, 4)) == '-3/4'
    assert to_json(Poly([1, 0, QQ(1, 2)])) == {'coeffs': ['1', '0', '1/2']}
    assert to_json(Word.parse('121', 2)) == [1, 2, 1]
    assert to_json(chart(Word.parse('1', 1), (QQ(2, 3),))) == [['1', '2/3'], ['0', '1']]
    assert to_json({'a': (True, None, 1.5)}) == {'a': [True, None, 1.5]}
    with pytest.raises(TypeError):
        to_json(object())


def test_json_decoding():
    assert poly_from_json({'coeffs': ['1', '-2/3']}) == Poly([1, QQ(-2, 3)])
    assert tuple_from_json([{'coeffs': ['1']}, {'coeffs': ['1', '1']}]) == PolyTuple([Poly.one(), Poly([1, 1])])
    assert matrix_from_json([['1', '5'], ['0', '1']]).entry(1, 2) == 5
    assert params_from_json(['1/2', 3]) == (QQ(1, 2), QQ(3))
    data = singular_from_json({'points': ['0'], 'weights': [[1, 0]]}, 2)
    assert data == SingularData(2, [0], [(1, 0)])


def test_dumps_and_table():
    report = {'status': 'PASS', 'tuple': PolyTuple([Poly([1, 1])]), 'max': 1e-12}
    data = json.loads(dumps(report))
    assert data['schema'] == SCHEMA
    assert data['tuple'] == [{'coeffs': ['1', '1']}]
    table = render_table(report)
    assert '(1 + x)' in table
    assert '1.000e-12' in table


def test_config_file():
    cfg = load_config_file(DEFAULT_CONFIG_PATH, return_edict=True)
    assert cfg.SEED == 0
    assert cfg.MAX_ENUM_RANK == 4
    assert cfg.POLISH_DPS == 50


def test_update_config():
    cfg = {'SEED': 5, 'TRIALS': 20}
    args = argparse.Namespace(seed=None, trials=3, rank=None)
    update_config(cfg, args)
    assert cfg['seed'] == 5
    assert cfg['trials'] == 3
    assert 'rank' not in cfg


def test_run_config(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps({'command': 'evolve', 'max-iter': 10}))
    with open(path) as f:
        assert load_run_config(f) == {'command': 'evolve', 'max_iter': 10}
    path.write_text('[]')
    with open(path) as f, pytest.raises(argparse.ArgumentTypeError):
        load_run_config(f)


def test_str2bool():
    assert str2bool('yes') is True
    assert str2bool('0') is False
    with pytest.raises(argparse.ArgumentTypeError):
        str2bool('maybe')


def test_random_rationals(rng):
    values = random_params(rng, 50, bound=7)
    assert all(0 < v <= 7 and v.denominator <= 7 for v in values)
    signed = [random_rational(rng, signed=True, bound=3) for _ in range(50)]
    assert any(v < 0 for v in signed) and any(v > 0 for v in signed)


def test_redraw():
    values = iter([1, 2, 3, 4])
    assert redraw(lambda: next(values), lambda v: v > 2, 5) == (3, 2)
    with pytest.raises(RedrawExhaustedError):
        redraw(lambda: 0, lambda v: v > 0, 3)


def test_trial_accumulator():
    stats = TrialAccumulator()
    stats.add(True, 1e-12)
    stats.add(False, 3e-5)
    stats.add_redraws(2)
    assert len(stats) == 2
    assert not stats.ok
    assert stats.as_dict() == {'trials': 2, 'passed': 1, 'failed': 1, 'redraws': 2, 'max_residual': 3e-5}
    stats.reset()
    assert stats.ok and 'max_residual' not in stats.as_dict()


def test_file_logging(tmp_path):
    path = add_logging(tmp_path / 'logs', prefix='test_')
    try:
        logger.info('hello from the run log')
        for h in logger.handlers:
            h.flush()
        assert path.name.startswith('test_')
        assert 'hello from the run log' in path.read_text()
    finally:
        for h in list(logger.handlers):
            if getattr(h, 'baseFilename', None) == str(path):
                logger.removeHandler(h)
                h.close()
