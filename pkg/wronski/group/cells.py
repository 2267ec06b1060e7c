"""The unipotent group N of SL_{r+1}, Whitney-Lusztig charts and total positivity.

Words are written ``(i_m, ..., i_1)`` and act from the right: ``params[0]`` is the
parameter of the rightmost letter, so ``chart(h, c) = e_{i_m}(c_m) ... e_{i_1}(c_1)``.
"""
from functools import lru_cache
from itertools import combinations
from math import factorial

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from wronski.algebra.exactpoly import Poly, to_rational
from wronski.algebra.linsolve import determinant
from wronski.errors import NotInCellError, UsageError
from wronski.utils.misc import get_rng, random_params, random_rational

EXHAUSTIVE_TP_MAX_RANK = 4
TP_WITNESSES = 4


class UniMatrix(object):
    __slots__ = ('rows',)

    def __init__(self, rows):
        rows = tuple(tuple(to_rational(v) for v in row) for row in rows)
        n = len(rows)
        if n < 2 or any(len(row) != n for row in rows):
            raise UsageError('a unipotent matrix must be square of size >= 2')
        for i in range(n):
            if rows[i][i] != 1 or any(rows[i][j] for j in range(i)):
                raise UsageError('matrix is not upper unitriangular')
        self.rows = rows

    @classmethod
    def identity(cls, rank):
        n = rank + 1
        return cls([[QQ.one if i == j else QQ.zero for j in range(n)] for i in range(n)])

    @property
    def rank(self):
        return len(self.rows) - 1

    def entry(self, i, j):
        return self.rows[i - 1][j - 1]

    def _domain_matrix(self):
        n = len(self.rows)
        return DomainMatrix([list(r) for r in self.rows], (n, n), QQ)

    def __mul__(self, other):
        if not isinstance(other, UniMatrix):
            return NotImplemented
        if other.rank != self.rank:
            raise UsageError('rank mismatch')
        return UniMatrix((self._domain_matrix() * other._domain_matrix()).to_list())

    def __eq__(self, other):
        return isinstance(other, UniMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return 'UniMatrix(' + repr([[str(v) for v in row] for row in self.rows]) + ')'


class BasisColumn(object):
    __slots__ = ('entries',)

    def __init__(self, entries):
        self.entries = tuple(e if isinstance(e, Poly) else Poly([e]) for e in entries)
        if len(self.entries) < 2:
            raise UsageError('a basis column has at least two entries')

    @property
    def rank(self):
        return len(self.entries) - 1

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __eq__(self, other):
        return isinstance(other, BasisColumn) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return 'BasisColumn(' + ', '.join(str(e) for e in self.entries) + ')'


def word_letters(word):
    return tuple(getattr(word, 'letters', word))


def whitney_word(rank):
    """The reduced word of w0 produced by Neville elimination, e.g. (1,2,1) and (1,2,3,1,2,1)."""
    letters = []
    for j in range(rank + 1, 1, -1):
        letters.extend(range(1, j))
    return tuple(letters)


def elementary(i, c, rank):
    if not 1 <= i <= rank:
        raise UsageError(f'generator index {i} out of range 1..{rank}')
    n = rank + 1
    rows = [[QQ.one if a == b else QQ.zero for b in range(n)] for a in range(n)]
    rows[i - 1][i] = to_rational(c)
    return UniMatrix(rows)


def chart(word, params, rank=None):
    letters = word_letters(word)
    params = [to_rational(p) for p in params]
    if len(params) != len(letters):
        raise UsageError(f'{len(letters)} letters but {len(params)} parameters')
    if rank is None:
        rank = getattr(word, 'rank', None) or max(letters, default=1)
    g = UniMatrix.identity(rank)
    m = len(letters)
    for t, letter in enumerate(letters):
        g = g * elementary(letter, params[m - 1 - t], rank)
    return g


def standard_column(rank):
    if rank < 1:
        raise UsageError('rank must be >= 1')
    return BasisColumn([Poly.divided_monomial(k) for k in range(rank + 1)])


def act(g, b):
    if g.rank != b.rank:
        raise UsageError(f'rank mismatch: matrix {g.rank}, column {b.rank}')
    result = []
    for row in g.rows:
        entry = Poly.zero()
        for c, poly in zip(row, b.entries):
            if c:
                entry = entry + poly * c
        result.append(entry)
    return BasisColumn(result)


def cell_membership(b):
    r = b.rank
    for i, poly in enumerate(b.entries):
        if poly.degree > r:
            return False
        if any(poly.coeff(j) for j in range(i)):
            return False
        if poly.coeff(i) != QQ(1, factorial(i)):
            return False
    return True


def column_matrix(b):
    """The ``g`` with ``b = g * standard_column``."""
    if not cell_membership(b):
        raise NotInCellError(f'{b} is not a unipotent column')
    n = b.rank + 1
    return UniMatrix([[b.entries[i].coeff(j) * factorial(j) for j in range(n)] for i in range(n)])


def minor(g, rows, cols):
    rows, cols = sorted(rows), sorted(cols)
    n = g.rank + 1
    if len(rows) != len(cols):
        raise UsageError('row and column index sets differ in size')
    if any(not 1 <= k <= n for k in rows + cols):
        raise UsageError(f'indices must lie in 1..{n}')
    return determinant([[g.entry(i, j) for j in cols] for i in rows])


def _index_sets(n):
    for size in range(1, n + 1):
        for rows in combinations(range(1, n + 1), size):
            for cols in combinations(range(1, n + 1), size):
                yield rows, cols


@lru_cache(maxsize=None)
def admissible_minors(rank, seed=0, witnesses=TP_WITNESSES):
    """Index pairs of the minors that are not identically zero on N.

    A minor counts as identically zero when it vanishes at ``witnesses`` random
    points of the totally positive part.
    """
    rng = get_rng(seed)
    word = whitney_word(rank)
    points = [chart(word, random_params(rng, len(word)), rank) for _ in range(witnesses)]
    admissible = []
    for rows, cols in _index_sets(rank + 1):
        if any(minor(g, rows, cols) for g in points):
            admissible.append((rows, cols))
    return tuple(admissible)


def whitney_parameters(g):
    """Chart parameters of ``g`` along ``whitney_word(g.rank)``, or None when elimination breaks down."""
    a = [list(row) for row in g.rows]
    n = len(a)
    factors = []
    for j in range(n - 1, 0, -1):
        for i in range(j):
            pivot = a[i + 1][j]
            if not pivot:
                if a[i][j]:
                    return None
                factors.append(QQ.zero)
                continue
            c = a[i][j] / pivot
            a[i] = [x - c * y for x, y in zip(a[i], a[i + 1])]
            factors.append(c)
    return tuple(reversed(factors))


def is_totally_positive(g, seed=0, exhaustive_max_rank=None):
    if exhaustive_max_rank is None:
        exhaustive_max_rank = EXHAUSTIVE_TP_MAX_RANK
    if g.rank <= exhaustive_max_rank:
        return all(minor(g, rows, cols) > 0 for rows, cols in admissible_minors(g.rank, seed, TP_WITNESSES))
    params = whitney_parameters(g)
    return params is not None and all(c > 0 for c in params)


def totally_positive_sample(rank, seed=None, params=None, rng=None):
    word = whitney_word(rank)
    if params is None:
        rng = get_rng(seed) if rng is None else rng
        params = random_params(rng, len(word))
    return chart(word, params, rank)


def random_unimatrix(rank, rng, signed=True):
    n = rank + 1
    return UniMatrix([[QQ.one if i == j else random_rational(rng, signed=signed) if j > i else QQ.zero
                       for j in range(n)] for i in range(n)])
