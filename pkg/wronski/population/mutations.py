"""Wronskian mutations of polynomial tuples and the Bethe cell of V = C[x]_{<=r}.

A tuple ``y = (y_1, ..., y_r)`` mutates in direction ``i`` by ``y_i -> y_i + c * yt``
where ``Wr(y_i, yt) = y_{i-1} y_{i+1}`` (``y_0 = y_{r+1} = 1``). The normalized
mutation fixes ``yt(0) = 0, yt'(0) = 1``; the MV mutation fixes ``yt`` monic with a
vanishing coefficient at the current degree of ``y_i``.
"""
from collections import namedtuple
from math import factorial

from sympy.polys.domains import QQ

from wronski.algebra.exactpoly import Poly, PolyTuple, to_rational, wronskian
from wronski.algebra.linsolve import solve_coefficients
from wronski.errors import (InternalConsistencyError, NormalizationImpossibleError, NotFertileError,
                            NotInBetheCellError, NotInCellError, UsageError)
from wronski.group.cells import (BasisColumn, act, cell_membership, chart, column_matrix, is_totally_positive,
                                 standard_column)
from wronski.group.words import as_params, braid_move_R, is_reduced, shifted_degree_action
from wronski.utils.misc import random_params, redraw

MutationDirection = namedtuple('MutationDirection', ['index', 'amount'])
MutationStep = namedtuple('MutationStep', ['index', 'amount', 'direction', 'n_equations', 'n_unknowns', 'rank'])


def wronskian_system(y, h):
    """Particular solution ``g`` of ``Wr(y, g) = h`` and the solved linear system.

    Raises NotFertileError when no polynomial solution exists.
    """
    if y.is_zero():
        raise UsageError('Wronskian equation with y = 0')
    dy = y.diff()
    bound = h.degree + 1 - y.degree
    top = bound if bound > y.degree else y.degree + 1
    unknown = [y * Poly.monomial(k - 1, k) - dy * Poly.monomial(k) if k else -dy for k in range(top + 1)]
    solution = solve_coefficients(Poly.zero(), unknown, h)
    if solution.values is None:
        raise NotFertileError(f'Wr({y}, g) = {h} has no polynomial solution')
    g = Poly(solution.values)
    return g, solution


def wronskian_solve(y, h):
    return wronskian_system(y, h)[0]


def normalized_direction(y, h, z=0):
    """The solution ``yt`` of ``Wr(y, yt) = h`` with ``yt(z) = 0`` and ``yt'(z) = 1``."""
    g, solution = wronskian_system(y, h)
    y_at = y(z)
    if not y_at:
        raise NormalizationImpossibleError(f'{y} vanishes at {z}')
    direction = g - y * (g(z) / y_at)
    if direction.diff()(z) != 1:
        raise NormalizationImpossibleError(f'no solution of Wr({y}, .) = {h} has unit slope at {z}')
    return direction, solution


def _check_index(y, i):
    if not 1 <= i <= y.rank:
        raise UsageError(f'direction {i} out of range 1..{y.rank}')


def normalized_step(y, i, c, rhs=None, z=0):
    _check_index(y, i)
    if rhs is None:
        rhs = y.y(i - 1) * y.y(i + 1)
    direction, solution = normalized_direction(y.y(i), rhs, z)
    step = MutationStep(i, to_rational(c), direction, solution.n_equations, solution.n_unknowns, solution.rank)
    return y.replace(i, y.y(i) + direction * c), step


def normalized_mutation(y, d):
    return normalized_step(y, d.index, d.amount)[0]


def _application_order(word, params):
    params = as_params(params)
    if len(params) != len(word):
        raise UsageError(f'{len(word)} letters but {len(params)} parameters')
    return zip(reversed(word.letters), params)


def evolve_trace(word, params):
    y = PolyTuple.ones(word.rank)
    steps = []
    for i, c in _application_order(word, params):
        try:
            y, step = normalized_step(y, i, c)
        except NotFertileError as e:
            raise InternalConsistencyError(f'surplus equations failed along {word}: {e}')
        steps.append(step)
    return y, steps


def evolve(word, params):
    return evolve_trace(word, params)[0]


class GenerationFamily(object):
    def __init__(self, y, index, base, step):
        self.y = y
        self.index = index
        self.base = base
        self.step = step

    def at(self, c):
        return self.y.replace(self.index, self.base + self.step * to_rational(c))

    def __repr__(self):
        return f'GenerationFamily({self.index}: {self.base} + c*({self.step}))'


def mv_mutation(y, i, degree_vector):
    _check_index(y, i)
    yi = y.y(i)
    k = degree_vector[i - 1]
    if not yi.coeff(k):
        raise NormalizationImpossibleError(f'{yi} has no x**{k} term')
    g = wronskian_solve(yi, y.y(i - 1) * y.y(i + 1))
    g = g - yi * (g.coeff(k) / yi.coeff(k))
    if g.is_zero():
        raise NormalizationImpossibleError('the solution family is spanned by y_i')
    return GenerationFamily(y, i, g.monic(), yi)


def mv_evolve(word, params):
    y = PolyTuple.ones(word.rank)
    k = [0] * (word.rank + 2)
    for i, c in _application_order(word, params):
        y = mv_mutation(y, i, k[1:-1]).at(c)
        k[i] = k[i - 1] + k[i + 1] - k[i] + 1
    return y


def mv_chart_change(c):
    c1, c2, c3 = as_params(c)
    return c3 / 2, c1 * c3 - c2, 2 * c1


def sl3_chart_change(b):
    return braid_move_R(b, 1)


def wronski_map(b):
    if not cell_membership(b):
        raise NotInCellError(f'{b} is not a unipotent column')
    entries = list(b.entries)
    return PolyTuple([wronskian(entries[:i]) for i in range(1, b.rank + 1)])


def fit_unipotent_column(reference, targets, reduce=None, degrees=None):
    """Solves ``W(b) = targets`` for ``b = g * reference`` with ``g`` upper unitriangular.

    Row ``i`` of ``g`` enters ``W_i(b_1, ..., b_i)`` linearly once the earlier rows are
    known, so the rows are found one at a time. ``reduce(i, w)`` turns a Wronskian of
    ``i`` functions into the matched quantity; ``degrees(i)`` limits the compared
    coefficients (all of them by default).
    """
    n = len(reference)
    reduce = reduce or (lambda i, w: w)
    b, rows = [], []
    for i in range(1, n + 1):
        base, free = reference[i - 1], list(reference[i:])
        if i == n:
            b.append(base)
            rows.append([QQ.zero] * (n - 1) + [QQ.one])
            break

        def reduced(f):
            return reduce(i, wronskian(b + [f]))

        solution = solve_coefficients(reduced(base), [reduced(f) for f in free], targets[i - 1],
                                      None if degrees is None else degrees(i))
        if solution.values is None:
            raise NotInBetheCellError(f'entry {i} ({targets[i - 1]}) is not reachable')
        if solution.rank < len(free):
            raise NotInBetheCellError(f'entry {i} does not determine row {i}')
        entry = base
        for u, f in zip(solution.values, free):
            entry = entry + f * u
        b.append(entry)
        rows.append([QQ.zero] * (i - 1) + [QQ.one] + list(solution.values))
    return b, rows


def wronski_inverse(y):
    reference = list(standard_column(y.rank).entries)
    b, _ = fit_unipotent_column(reference, list(y.entries))
    return BasisColumn(b)


class TriangularCoords(object):
    """``a[i][j-1] = j! * [x**j] y_i`` for ``1 <= j <= r+1-i``."""
    __slots__ = ('rows',)

    def __init__(self, rows):
        rows = tuple(tuple(to_rational(v) for v in row) for row in rows)
        r = len(rows)
        if r < 1 or any(len(row) != r - i for i, row in enumerate(rows)):
            raise UsageError('triangular coordinates need rows of lengths r, r-1, ..., 1')
        self.rows = rows

    @classmethod
    def from_flat(cls, values, rank):
        values = list(values)
        if len(values) != rank * (rank + 1) // 2:
            raise UsageError(f'rank {rank} needs {rank * (rank + 1) // 2} coordinates')
        rows, start = [], 0
        for i in range(rank):
            rows.append(values[start:start + rank - i])
            start += rank - i
        return cls(rows)

    @property
    def rank(self):
        return len(self.rows)

    def flat(self):
        return tuple(v for row in self.rows for v in row)

    def __eq__(self, other):
        return isinstance(other, TriangularCoords) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return 'TriangularCoords(' + repr([[str(v) for v in row] for row in self.rows]) + ')'


def triangular_coords(y):
    r = y.rank
    return TriangularCoords([[y.y(i).coeff(j) * factorial(j) for j in range(1, r + 2 - i)]
                             for i in range(1, r + 1)])


def coords_to_tuple(a):
    r = a.rank
    targets = [Poly.from_divided((QQ.one,) + row) for row in a.rows]
    reference = list(standard_column(r).entries)
    b, _ = fit_unipotent_column(reference, targets, degrees=lambda i: range(r + 2 - i))
    return wronski_map(BasisColumn(b))


def comparison_check(word, params):
    g = chart(word, params, word.rank)
    return wronski_map(act(g, standard_column(word.rank))) == evolve(word, params)


def closed_form_positivity(y):
    """Inequality description of the positive part for r = 2 and r = 3; None otherwise."""
    def dc(i, j):
        return y.y(i).coeff(j) * factorial(j)

    if y.rank == 2:
        return all(v > 0 for v in (dc(1, 1), dc(1, 2), dc(2, 1), dc(2, 2)))
    if y.rank == 3:
        alpha = [dc(1, j) for j in (1, 2, 3)]
        beta = [dc(2, j) for j in (1, 2, 3, 4)]
        gamma = [dc(3, j) for j in (1, 2, 3)]
        if not all(v > 0 for v in alpha + beta + gamma):
            return False
        a1, a2 = alpha[0], alpha[1]
        b2, b3 = beta[0], beta[1]
        return b3 > a1 * b2 - a2 > 0
    return None


def positivity_witnesses(y):
    def dc(i, j):
        return y.y(i).coeff(j) * factorial(j)

    if y.rank == 2:
        return {'e1': dc(1, 1), 'e2': dc(1, 2), 'f1': dc(2, 1), 'f2': dc(2, 2)}
    if y.rank == 3:
        names = {'alpha': (1, (1, 2, 3), 1), 'beta': (2, (1, 2, 3, 4), 2), 'gamma': (3, (1, 2, 3), 3)}
        values = {}
        for name, (i, degrees, offset) in names.items():
            for j in degrees:
                values[f'{name}{j + offset - 1}'] = dc(i, j)
        values['alpha1*beta2-alpha2'] = values['alpha1'] * values['beta2'] - values['alpha2']
        return values
    return {}


def positivity_check(y, seed=0):
    g = column_matrix(wronski_inverse(y))
    positive = is_totally_positive(g, seed)
    closed = closed_form_positivity(y)
    if closed is not None and closed != positive:
        raise InternalConsistencyError(f'minor test ({positive}) and inequalities ({closed}) disagree on {y}')
    return positive


def all_positive_coeffs(y):
    r = y.rank
    return all(all(e.coeff(j) > 0 for j in range(i * (r + 1 - i) + 1)) for i, e in enumerate(y.entries, start=1))


def is_bethe_tuple(y):
    r = y.rank
    return all(e(0) == 1 and e.degree <= i * (r + 1 - i) for i, e in enumerate(y.entries, start=1))


def generic_evolve(word, rng, max_redraws=20, signed=False, accept=None):
    """Evolution at random parameters whose degrees follow the shifted action; returns (params, y, redraws).

    ``accept(y)`` adds a further condition on the drawn tuple, e.g. genericity for the Bethe check.
    """
    if not is_reduced(word):
        raise UsageError(f'{word} is not reduced')
    expected = shifted_degree_action(word)

    def draw():
        params = random_params(rng, len(word), signed=signed)
        return params, evolve(word, params)

    def acceptable(value):
        y = value[1]
        return y.degrees() == expected and (accept is None or accept(y))

    (params, y), redraws = redraw(draw, acceptable, max_redraws, what=f'evolution along {word}')
    return params, y, redraws
