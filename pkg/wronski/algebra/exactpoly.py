"""Exact univariate polynomials over QQ and their Wronskians.

Coefficients are sympy ``QQ`` elements. The dense representation is ascending
(index ``i`` holds the coefficient of ``x**i``); the sympy ``dup_*`` kernels use
the descending order, so every call goes through ``_to_dup``/``_from_dup``.
"""
from math import factorial

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.densearith import dup_add, dup_sub, dup_mul, dup_mul_ground, dup_div, dup_pow
from sympy.polys.densetools import dup_diff, dup_eval, dup_shift
from sympy.polys.euclidtools import dup_gcd
from sympy.polys.factortools import dup_factor_list
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import CoercionFailed

from wronski.errors import NonExactDivisionError, UsageError

Rational = QQ
X = Symbol('x')
_POLY_DOMAIN = QQ[X]


def to_rational(value):
    """Converts ints, QQ elements, sympy numbers and ``"p/q"`` strings to a QQ element."""
    if isinstance(value, bool):
        raise UsageError(f'not a rational: {value!r}')
    if isinstance(value, str):
        p, _, q = value.strip().partition('/')
        try:
            p, q = int(p), int(q or 1)
        except ValueError:
            raise UsageError(f'not a rational: {value!r}') from None
        if q == 0:
            raise UsageError(f'zero denominator in {value!r}')
        return QQ(p, q)
    try:
        return QQ.convert(value)
    except CoercionFailed:
        raise UsageError(f'not a rational: {value!r}') from None


def rational_str(value):
    value = to_rational(value)
    p, q = int(value.numerator), int(value.denominator)
    return str(p) if q == 1 else f'{p}/{q}'


def rational_to_float(value):
    return int(value.numerator) / int(value.denominator)


class Poly(object):
    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        coeffs = [to_rational(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def _raw(cls, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def _from_dup(cls, f):
        return cls._raw(reversed(f))

    def _to_dup(self):
        return list(reversed(self.coeffs))

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def one(cls):
        return cls._raw([QQ.one])

    @classmethod
    def zero(cls):
        return cls._raw([])

    @classmethod
    def x(cls):
        return cls._raw([QQ.zero, QQ.one])

    @classmethod
    def monomial(cls, k, c=1):
        return cls._raw([QQ.zero] * k + [to_rational(c)])

    @classmethod
    def divided_monomial(cls, k):
        """``x**k / k!``"""
        return cls.monomial(k, QQ(1, factorial(k)))

    @classmethod
    def from_divided(cls, coeffs):
        """Builds ``sum c_j x**j / j!``."""
        return cls._raw(to_rational(c) / factorial(j) for j, c in enumerate(coeffs))

    @classmethod
    def from_roots(cls, roots):
        result = cls.one()
        for z in roots:
            result = result * cls([-to_rational(z), 1])
        return result

    @property
    def degree(self):
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def coeff(self, j):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return QQ.zero

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else QQ.zero

    def divided_coeffs(self):
        return [c * factorial(j) for j, c in enumerate(self.coeffs)]

    def __add__(self, other):
        other = _as_poly(other)
        return Poly._from_dup(dup_add(self._to_dup(), other._to_dup(), QQ))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        return Poly._from_dup(dup_sub(self._to_dup(), other._to_dup(), QQ))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly._from_dup(dup_mul(self._to_dup(), other._to_dup(), QQ))
        return Poly._from_dup(dup_mul_ground(self._to_dup(), to_rational(other), QQ))

    __rmul__ = __mul__

    def __neg__(self):
        return Poly._raw(-c for c in self.coeffs)

    def __pow__(self, n):
        return Poly._from_dup(dup_pow(self._to_dup(), n, QQ))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = _as_poly(other)
            except (TypeError, ValueError, UsageError):
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, at):
        return dup_eval(self._to_dup(), to_rational(at), QQ)

    def diff(self, m=1):
        return Poly._from_dup(dup_diff(self._to_dup(), m, QQ))

    def shift(self, z):
        """``f(x + z)``; the coefficients are the Taylor coefficients of ``f`` at ``z``."""
        return Poly._from_dup(dup_shift(self._to_dup(), to_rational(z), QQ))

    def truncate(self, n):
        return truncate(self, n)

    def monic(self):
        if self.is_zero():
            return self
        return self * (QQ.one / self.lc)

    def __repr__(self):
        return f'Poly({self})'

    def __str__(self):
        if not self.coeffs:
            return '0'
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            c_str = rational_str(c)
            if k == 0:
                terms.append(c_str)
            else:
                power = 'x' if k == 1 else f'x**{k}'
                terms.append(power if c == 1 else f'{c_str}*{power}')
        return ' + '.join(terms).replace('+ -', '- ')


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    return Poly([value])


class PolyTuple(object):
    """An r-tuple of polynomials ``(y_1, ..., y_r)``; ``y(0)`` and ``y(r+1)`` read as 1."""
    __slots__ = ('entries',)

    def __init__(self, entries):
        self.entries = tuple(_as_poly(e) for e in entries)
        if not self.entries:
            raise UsageError('a tuple needs rank >= 1')

    @classmethod
    def ones(cls, rank):
        return cls([Poly.one()] * rank)

    @property
    def rank(self):
        return len(self.entries)

    def y(self, i):
        if i == 0 or i == self.rank + 1:
            return Poly.one()
        return self.entries[i - 1]

    def replace(self, i, poly):
        entries = list(self.entries)
        entries[i - 1] = poly
        return PolyTuple(entries)

    def degrees(self):
        return tuple(max(e.degree, 0) for e in self.entries)

    def scale(self, factors):
        return PolyTuple([e * d for e, d in zip(self.entries, factors)])

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __eq__(self, other):
        return isinstance(other, PolyTuple) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return '(' + ' : '.join(str(e) for e in self.entries) + ')'


def _ring_element(f):
    return _POLY_DOMAIN.ring.from_list(f._to_dup())


def wronskian(fs):
    fs = [_as_poly(f) for f in fs]
    if not fs:
        raise UsageError('wronskian of an empty family')
    k = len(fs)
    if k == 1:
        return fs[0]
    rows = []
    derivs = list(fs)
    for _ in range(k):
        rows.append([_ring_element(f) for f in derivs])
        derivs = [f.diff() for f in derivs]
    det = DomainMatrix(rows, (k, k), _POLY_DOMAIN).det()
    return Poly._from_dup(_POLY_DOMAIN.ring(det).to_dense())


def wronskian2(f, g):
    f, g = _as_poly(f), _as_poly(g)
    return f * g.diff() - f.diff() * g


def truncate(f, n):
    if n < 0:
        raise UsageError('truncation degree must be >= 0')
    return Poly._raw(f.coeffs[:n + 1])


def w5_check(fs):
    """Checks ``Wr(Wr(A), Wr(B)) = Wr(A & B) * Wr(A | B)`` for ``A = [a+1]``, ``B = [a] + {a+2}``."""
    fs = list(fs)
    if len(fs) < 3:
        raise UsageError('the W5 identity needs at least three functions')
    a = len(fs) - 2
    left = wronskian2(wronskian(fs[:a + 1]), wronskian(fs[:a] + [fs[a + 1]]))
    right = wronskian(fs[:a]) * wronskian(fs)
    return left == right


def poly_gcd(f, g):
    return Poly._from_dup(dup_gcd(f._to_dup(), g._to_dup(), QQ))


def poly_divmod(f, g):
    if g.is_zero():
        raise ZeroDivisionError('polynomial division by zero')
    q, r = dup_div(f._to_dup(), g._to_dup(), QQ)
    return Poly._from_dup(q), Poly._from_dup(r)


def exact_quotient(f, g):
    q, r = poly_divmod(f, g)
    if not r.is_zero():
        raise NonExactDivisionError(f'({f}) is not divisible by ({g})')
    return q


def rational_roots(f):
    """Returns ``([(z, multiplicity), ...], rest)`` where ``rest`` collects the factors without rational roots."""
    if f.is_zero():
        raise UsageError('roots of the zero polynomial')
    _, factors = dup_factor_list(f._to_dup(), QQ)
    roots, rest = [], Poly.one()
    for factor, mult in factors:
        factor = Poly._from_dup(factor)
        if factor.degree == 1:
            roots.append((-factor.coeffs[0] / factor.coeffs[1], mult))
        else:
            rest = rest * factor ** mult
    roots.sort()
    return roots, rest.monic()


def taylor_coeffs(f, z, n=None):
    """Derivatives ``f^(j)(z)`` for ``j = 0..n`` (up to the degree by default)."""
    shifted = f.shift(z)
    n = shifted.degree if n is None else n
    return [shifted.coeff(j) * factorial(j) for j in range(n + 1)]
