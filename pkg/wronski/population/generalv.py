"""Populations of a polynomial subspace V with singular points.

``V`` has dimension ``r + 1``. Its singular points are the zeros of the Wronskian
of a basis; the exponents there give the twist polynomials ``T_1, ..., T_r`` and
the reduced Wronski map ``Wd_i = Wr(b_1, ..., b_i) / (T_1^{i-1} ... T_{i-1})``.
"""
from sympy.polys.domains import QQ

from wronski.algebra.exactpoly import Poly, PolyTuple, exact_quotient, poly_gcd, rational_roots, taylor_coeffs, \
    to_rational, wronskian
from wronski.algebra.linsolve import matrix_rank, pivot_columns, solve_linear
from wronski.errors import (InternalConsistencyError, IrrationalSingularityError, NotFertileError,
                            NotInBetheCellError, NotRegularPointError, UsageError)
from wronski.group.cells import BasisColumn, standard_column
from wronski.group.words import as_params
from wronski.population.mutations import GenerationFamily, fit_unipotent_column, normalized_step, \
    wronskian_system


def _coefficient_rows(polys):
    width = max(p.degree for p in polys) + 1
    return [[p.coeff(j) for j in range(max(width, 1))] for p in polys]


class Subspace(object):
    __slots__ = ('basis',)

    def __init__(self, basis):
        basis = tuple(p if isinstance(p, Poly) else Poly(p) for p in basis)
        if len(basis) < 2:
            raise UsageError('a subspace needs at least two basis polynomials')
        if matrix_rank(_coefficient_rows(basis)) != len(basis):
            raise UsageError('basis polynomials are linearly dependent')
        common = basis[0]
        for p in basis[1:]:
            common = poly_gcd(common, p)
        if not common.is_constant():
            raise UsageError(f'V has base points: every basis polynomial is divisible by {common}')
        self.basis = basis

    @classmethod
    def polynomials(cls, rank):
        return cls(standard_column(rank).entries)

    @property
    def rank(self):
        return len(self.basis) - 1

    def contains(self, f):
        return matrix_rank(_coefficient_rows(list(self.basis) + [f])) == len(self.basis)

    def is_basis(self, b):
        b = list(b)
        return (len(b) == len(self.basis) and all(self.contains(f) for f in b)
                and matrix_rank(_coefficient_rows(b)) == len(b))

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.is_basis(other.basis)

    def __repr__(self):
        return 'Subspace(' + ', '.join(str(p) for p in self.basis) + ')'


class SingularData(object):
    """Singular points ``z_a`` with weights ``mu^(a)`` and the twists ``T_i = prod (x - z_a)^{mu^(a)_i}``."""

    def __init__(self, rank, points=(), weights=()):
        points = tuple(to_rational(z) for z in points)
        weights = tuple(tuple(int(m) for m in w) for w in weights)
        if len(points) != len(weights):
            raise UsageError('one weight vector per singular point')
        if len(set(points)) != len(points):
            raise UsageError('singular points must be distinct')
        if any(len(w) != rank or min(w, default=0) < 0 for w in weights):
            raise UsageError(f'weights must be vectors of {rank} non-negative integers')
        self.rank = rank
        self.points = points
        self.weights = weights
        self.twists = tuple(self._twist(i) for i in range(1, rank + 1))

    @classmethod
    def from_points(cls, rank, points, weights):
        return cls(rank, points, weights)

    @classmethod
    def trivial(cls, rank):
        return cls(rank)

    def _twist(self, i):
        result = Poly.one()
        for z, w in zip(self.points, self.weights):
            result = result * Poly([-z, 1]) ** w[i - 1]
        return result

    def twist(self, i):
        return self.twists[i - 1]

    def denominator(self, i):
        """``T_1^{i-1} T_2^{i-2} ... T_{i-1}``"""
        result = Poly.one()
        for k in range(1, i):
            result = result * self.twist(k) ** (i - k)
        return result

    def normalizer(self, i, z):
        value = self.denominator(i)(z)
        if not value:
            raise NotRegularPointError(f'{z} is a singular point')
        return value

    def __eq__(self, other):
        if not isinstance(other, SingularData):
            return NotImplemented
        mine = sorted(zip(self.points, self.weights))
        theirs = sorted(zip(other.points, other.weights))
        return self.rank == other.rank and mine == theirs

    def __repr__(self):
        pairs = ', '.join(f'{z}: {w}' for z, w in zip(self.points, self.weights))
        return f'SingularData(rank={self.rank}, {{{pairs}}})'


def exponents_at(V, z):
    """Orders of vanishing ``lambda`` realized by V at z and the weight ``mu_i = lambda_i - lambda_{i-1} - 1``."""
    top = max(p.degree for p in V.basis)
    rows = [taylor_coeffs(p, z, top) for p in V.basis]
    exponents = pivot_columns(rows)
    assert len(exponents) == len(V.basis)
    weights = tuple(exponents[i] - exponents[i - 1] - 1 for i in range(1, len(exponents)))
    return tuple(exponents), weights


def singular_data(V):
    w = wronskian(V.basis)
    roots, rest = rational_roots(w)
    if not rest.is_constant():
        raise IrrationalSingularityError(rest)
    points, weights = [], []
    for z, _ in roots:
        points.append(z)
        weights.append(exponents_at(V, z)[1])
    data = SingularData(V.rank, points, weights)
    quotient = exact_quotient(w, data.denominator(V.rank + 1))
    if not quotient.is_constant():
        raise InternalConsistencyError(f'Wr(V) = {w} does not factor through the twists {data.twists}')
    return data


def _data(V, data):
    return singular_data(V) if data is None else data


def _check_basis(V, b):
    if not V.is_basis(b):
        raise UsageError(f'{list(map(str, b))} is not a basis of {V}')


def reduced_wronskian(fs, data):
    return exact_quotient(wronskian(fs), data.denominator(len(fs)))


def reduced_wronski_map(V, b, data=None):
    data = _data(V, data)
    b = list(b)
    return PolyTuple([reduced_wronskian(b[:i], data) for i in range(1, V.rank + 1)])


def reduced_wronski_map_at(V, b, z, data=None):
    data = _data(V, data)
    b = list(b)
    return PolyTuple([reduced_wronskian(b[:i], data) * data.normalizer(i, z) for i in range(1, V.rank + 1)])


def volume(V, b, data=None):
    data = _data(V, data)
    _check_basis(V, b)
    w = reduced_wronskian(list(b), data)
    if not w.is_constant():
        raise InternalConsistencyError(f'reduced Wronskian of a full basis is not constant: {w}')
    return w.coeff(0)


def unipotent_basis(V, z):
    n = len(V.basis)
    derivatives = [taylor_coeffs(p, z, n - 1) for p in V.basis]
    rows = [[derivatives[k][j] for k in range(n)] for j in range(n)]
    result = []
    for i in range(n):
        solution = solve_linear(rows, [QQ.one if j == i else QQ.zero for j in range(n)])
        if solution.values is None or solution.rank < n:
            raise NotRegularPointError(f'{z} is a singular point of {V}')
        entry = Poly.zero()
        for u, p in zip(solution.values, V.basis):
            entry = entry + p * u
        result.append(entry)
    return BasisColumn(result)


def unipotent_basis_check(V, b, z):
    b = list(b)
    if not V.is_basis(b):
        return False
    for i, f in enumerate(b):
        derivatives = taylor_coeffs(f, z, i)
        if any(d != (1 if j == i else 0) for j, d in enumerate(derivatives)):
            return False
    return True


def _twist_list(twists, rank):
    if twists is None:
        return [Poly.one()] * rank
    if isinstance(twists, SingularData):
        return list(twists.twists)
    twists = [t if isinstance(t, Poly) else Poly(t) for t in twists]
    if len(twists) != rank:
        raise UsageError(f'{rank} twists expected, got {len(twists)}')
    return twists


def normalized_mutation_v(V, y, i, c, z, twists=None):
    if twists is None:
        twists = singular_data(V)
    t = _twist_list(twists, y.rank)[i - 1]
    t_at = t(z)
    if not t_at:
        raise NotRegularPointError(f'T_{i} vanishes at {z}')
    rhs = t * (QQ.one / t_at) * y.y(i - 1) * y.y(i + 1)
    return normalized_step(y, i, c, rhs=rhs, z=z)[0]


def wronskian_chart(V, z, y0, word, params, data=None):
    data = _data(V, data)
    y = y0
    params = as_params(params)
    if len(params) != len(word):
        raise UsageError(f'{len(word)} letters but {len(params)} parameters')
    for i, c in zip(reversed(word.letters), params):
        y = normalized_mutation_v(V, y, i, c, z, data)
    return y


def reduced_wronski_inverse_at(V, y, z, data=None):
    data = _data(V, data)
    if y.rank != V.rank:
        raise UsageError(f'rank mismatch: tuple {y.rank}, subspace {V.rank}')
    reference = list(unipotent_basis(V, z).entries)

    def reduce(i, w):
        return exact_quotient(w, data.denominator(i)) * data.normalizer(i, z)

    b, _ = fit_unipotent_column(reference, list(y.entries), reduce=reduce)
    return BasisColumn(b)


def bethe_cell_membership(V, y, z, data=None):
    try:
        reduced_wronski_inverse_at(V, y, z, data)
    except NotInBetheCellError:
        return False
    return True


def fertility_check(y, twists=None):
    twists = _twist_list(twists, y.rank)
    for i in range(1, y.rank + 1):
        try:
            wronskian_system(y.y(i), twists[i - 1] * y.y(i - 1) * y.y(i + 1))
        except NotFertileError:
            return False
    return True


def genericity_check(y, twists=None):
    twists = _twist_list(twists, y.rank)
    for i in range(1, y.rank + 1):
        yi = y.y(i)
        if yi.is_zero():
            return False
        if not poly_gcd(yi, yi.diff()).is_constant():
            return False
        if not poly_gcd(yi, twists[i - 1] * y.y(i - 1) * y.y(i + 1)).is_constant():
            return False
    return True


def generation_curve(y, i, twists=None):
    if not 1 <= i <= y.rank:
        raise UsageError(f'direction {i} out of range 1..{y.rank}')
    t = _twist_list(twists, y.rank)[i - 1]
    step = wronskian_system(y.y(i), t * y.y(i - 1) * y.y(i + 1))[0]
    return GenerationFamily(y, i, y.y(i), step)


def twist_constant(V, b, i, data=None):
    """The constant in ``Wr(y_i, yt_i) = const * T_i * y_{i-1} * y_{i+1}`` with ``yt_i = Wd(b_1..b_{i-1}, b_{i+1})``."""
    data = _data(V, data)
    b = list(b)
    if not 1 <= i <= V.rank:
        raise UsageError(f'index {i} out of range 1..{V.rank}')
    y = [Poly.one()] + [reduced_wronskian(b[:k], data) for k in range(1, V.rank + 2)]
    other = reduced_wronskian(b[:i - 1] + [b[i]], data)
    lhs = wronskian([y[i], other])
    rhs = data.twist(i) * y[i - 1] * y[i + 1]
    quotient = exact_quotient(lhs, rhs)
    if not quotient.is_constant():
        raise InternalConsistencyError(f'Wr(y_{i}, yt_{i}) / (T_{i} y_{i - 1} y_{i + 1}) = {quotient}')
    return quotient.coeff(0)


def _factors(d, rank):
    d = as_params(d)
    if len(d) != rank:
        raise UsageError(f'{rank} scaling factors expected')
    if any(not v for v in d):
        raise UsageError('scaling factors must be nonzero')
    return d


def scale_tuple(y, d):
    return y.scale(_factors(d, y.rank))


def scale_basis(b, d):
    """``(b_1 d_1, b_2 d_2 / d_1, ..., b_{r+1} / d_r)``"""
    b = list(b)
    d = (QQ.one,) + _factors(d, len(b) - 1) + (QQ.one,)
    return BasisColumn([f * (d[k + 1] / d[k]) for k, f in enumerate(b)])


def fat_cell_membership(V, y, z, data=None):
    values = [e(z) for e in y.entries]
    if any(not v for v in values):
        return False
    return bethe_cell_membership(V, scale_tuple(y, [QQ.one / v for v in values]), z, data)


def fiber_check(V, y, z, factors, data=None):
    if not bethe_cell_membership(V, y, z, data):
        return False
    for d in factors:
        scaled = scale_tuple(y, d)
        if not fat_cell_membership(V, scaled, z, data):
            return False
        base = scale_tuple(scaled, [QQ.one / e(z) for e in scaled.entries])
        if base != y:
            return False
    return True


def plucker_relation(y):
    """``a1 b1 == a0 b2 + a2 b0`` for ``y = (a0 + a1 x + a2 x^2/2, b0 + b1 x + b2 x^2/2)``."""
    if y.rank != 2 or any(e.degree > 2 for e in y.entries):
        raise UsageError('the Plucker relation is stated for pairs of quadratics')
    a = [y.y(1).coeff(j) * (1 if j < 2 else 2) for j in range(3)]
    b = [y.y(2).coeff(j) * (1 if j < 2 else 2) for j in range(3)]
    return a[1] * b[1] == a[0] * b[2] + a[2] * b[0]
