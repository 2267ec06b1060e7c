"""JSON encoding of the domain values.

Rationals are ``"p/q"`` strings (``"p"`` when ``q = 1``), polynomials are
``{"coeffs": [...]}`` in ascending degree. Reports carry ``"schema": "pp/1"``.
"""
import json

from sympy.polys.domains import QQ

from wronski.algebra.exactpoly import Poly, PolyTuple, rational_str, to_rational
from wronski.group.cells import BasisColumn, UniMatrix
from wronski.group.words import Word
from wronski.population.generalv import SingularData, Subspace
from wronski.population.mutations import TriangularCoords

SCHEMA = 'pp/1'


def poly_to_json(p):
    return {'coeffs': [rational_str(c) for c in p.coeffs]}


def poly_from_json(data):
    return Poly([to_rational(c) for c in data['coeffs']])


def tuple_from_json(data):
    return PolyTuple([poly_from_json(p) for p in data])


def matrix_from_json(rows):
    return UniMatrix([[to_rational(v) for v in row] for row in rows])


def params_from_json(values):
    return tuple(to_rational(v) for v in values)


def singular_from_json(data, rank):
    return SingularData(rank, params_from_json(data['points']), data['weights'])


def to_json(value):
    """Recursively converts domain values into JSON-ready structures."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, float, str)):
        return value
    if isinstance(value, QQ.dtype):
        return rational_str(value)
    if isinstance(value, Poly):
        return poly_to_json(value)
    if isinstance(value, (PolyTuple, BasisColumn)):
        return [poly_to_json(p) for p in value.entries]
    if isinstance(value, UniMatrix):
        return [[rational_str(v) for v in row] for row in value.rows]
    if isinstance(value, Word):
        return list(value.letters)
    if isinstance(value, TriangularCoords):
        return [[rational_str(v) for v in row] for row in value.rows]
    if isinstance(value, SingularData):
        return {'points': [rational_str(z) for z in value.points],
                'weights': [list(w) for w in value.weights],
                'twists': [poly_to_json(t) for t in value.twists]}
    if isinstance(value, Subspace):
        return [poly_to_json(p) for p in value.basis]
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    raise TypeError(f'no JSON encoding for {type(value).__name__}')


def dumps(report):
    data = {'schema': SCHEMA}
    data.update(to_json(report))
    return json.dumps(data, sort_keys=True, indent=2)


def _cell(value):
    if isinstance(value, Poly):
        return str(value)
    if isinstance(value, (PolyTuple, BasisColumn)):
        return '(' + ' : '.join(str(p) for p in value.entries) + ')'
    if isinstance(value, (list, tuple)):
        return ', '.join(_cell(v) for v in value)
    if isinstance(value, QQ.dtype):
        return rational_str(value)
    if isinstance(value, float):
        return f'{value:.3e}'
    return str(value)


def render_table(report):
    """Two-column ``key | value`` rendering of the top-level report fields."""
    rows = [(str(k), _cell(v)) for k, v in sorted(report.items())]
    key_width = max([len(k) for k, _ in rows] + [len('schema')])
    line = '-' * (key_width + 3) + '+' + '-' * 40
    lines = [line, f' {"schema":<{key_width}}  | {SCHEMA}', line]
    lines.extend(f' {k:<{key_width}}  | {v}' for k, v in rows)
    lines.append(line)
    return '\n'.join(lines)
