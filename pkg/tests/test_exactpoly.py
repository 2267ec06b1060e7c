from itertools import combinations
from math import prod

import pytest
from sympy.polys.domains import QQ

from wronski.algebra.exactpoly import (Poly, PolyTuple, exact_quotient, poly_divmod, poly_gcd, rational_roots,
                                       rational_str, taylor_coeffs, to_rational, truncate, w5_check, wronskian, wronskian2)
from wronski.algebra.linsolve import determinant, matrix_rank, pivot_columns, solve_linear
from wronski.errors import NonExactDivisionError, UsageError
from wronski.group.cells import standard_column
from wronski.utils.misc import random_poly, random_rational


def test_rationals():
    assert to_rational('3/6') == QQ(1, 2)
    assert to_rational(' -4 ') == QQ(-4)
    assert rational_str(QQ(4, 2)) == '2'
    assert rational_str(QQ(-1, 3)) == '-1/3'
    with pytest.raises(UsageError):
        to_rational('1/0')
    with pytest.raises(UsageError):
        to_rational(True)
    with pytest.raises(UsageError):
        to_rational('1.5/2')


def test_poly_basics():
    x = Poly.x()
    p = (x + 1) ** 2
    assert p.coeffs == (1, 2, 1)
    assert p.degree == 2
    assert Poly.zero().degree == -1
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert p(2) == 9
    assert p.diff() == 2 * x + 2
    assert p.shift(-1) == x ** 2
    assert (2 * p).monic() == p
    assert Poly.from_divided([1, 2, 3]) == Poly([1, 2, QQ(3, 2)])
    assert Poly([1, 2, QQ(3, 2)]).divided_coeffs() == [1, 2, 3]
    assert Poly.from_roots([1, 2]) == Poly([2, -3, 1])
    assert str(Poly([1, -2, QQ(1, 2)])) == '1 - 2*x + 1/2*x**2'
    assert str(Poly.zero()) == '0'
    assert p == 0 + p


@pytest.mark.parametrize('rank', [1, 2, 3, 4, 5, 6])
def test_wronskian_of_standard_column_is_one(rank):
    assert wronskian(standard_column(rank).entries) == Poly.one()


@pytest.mark.parametrize('size', [2, 3, 4])
def test_wronskian_of_monomials(size):
    for exponents in combinations(range(9), size):
        expected_coeff = prod(b - a for a, b in combinations(exponents, 2))
        expected_degree = sum(exponents) - size * (size - 1) // 2
        w = wronskian([Poly.monomial(a) for a in exponents])
        assert w == Poly.monomial(expected_degree, expected_coeff)


def test_wronskian2_matches_general(rng):
    for _ in range(5):
        f, g = random_poly(rng, 3), random_poly(rng, 4)
        assert wronskian2(f, g) == wronskian([f, g])
    assert wronskian2(1, Poly.monomial(2)) == Poly.monomial(1, 2)


@pytest.mark.parametrize('size', [3, 4, 5])
def test_w5_identity(rng, size):
    fs = [random_poly(rng, 5) for _ in range(size)]
    assert w5_check(fs)


def test_w5_needs_three_functions():
    with pytest.raises(UsageError):
        w5_check([Poly.one(), Poly.x()])


def test_division_and_gcd():
    x = Poly.x()
    f = (x - 1) * (x - 2)
    g = (x - 1) * (x + 3)
    assert poly_gcd(f, g) == x - 1
    assert exact_quotient(f, x - 2) == x - 1
    with pytest.raises(NonExactDivisionError):
        exact_quotient(f, x + 5)
    q, r = poly_divmod(f, x + 5)
    assert q == x - 8
    assert r == Poly.constant(42)
    with pytest.raises(ZeroDivisionError):
        poly_divmod(f, Poly.zero())


def test_rational_roots():
    x = Poly.x()
    f = 6 * x ** 2 * (x - QQ(1, 2)) * (x ** 2 + 1)
    roots, rest = rational_roots(f)
    assert roots == [(QQ(0), 2), (QQ(1, 2), 1)]
    assert rest == x ** 2 + 1
    with pytest.raises(UsageError):
        rational_roots(Poly.zero())


def test_taylor_coeffs_and_truncate():
    x = Poly.x()
    assert taylor_coeffs(x ** 2, 1) == [1, 2, 2]
    assert taylor_coeffs(x ** 3, 0, 1) == [0, 0]
    assert truncate(Poly([1, 2, 3, 4]), 1) == Poly([1, 2])
    with pytest.raises(UsageError):
        truncate(x, -1)


def test_poly_tuple():
    y = PolyTuple([Poly([1, 1]), Poly.one()])
    assert y.rank == 2
    assert y.y(0) == Poly.one() and y.y(3) == Poly.one()
    assert y.degrees() == (1, 0)
    assert y.replace(2, Poly.x()).entries == (Poly([1, 1]), Poly.x())
    assert PolyTuple.ones(3).degrees() == (0, 0, 0)
    with pytest.raises(UsageError):
        PolyTuple([])


def test_linear_algebra():
    rows = [[1, 1], [1, -1]]
    solution = solve_linear(rows, [3, 1])
    assert solution.values == [2, 1]
    assert solution.rank == 2
    assert solve_linear([[1, 1], [2, 2]], [1, 3]).values is None
    # free unknowns are set to zero
    assert solve_linear([[1, 1]], [4]).values in ([4, 0], [0, 4])
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert determinant([[2, 1], [1, 1]]) == 1
    assert pivot_columns([[0, 1, 2], [0, 0, 3]]) == (1, 2)


def test_wronskian_is_alternating(rng):
    for _ in range(5):
        f, g, h = [random_poly(rng, int(d)) for d in rng.integers(1, 5, size=3)]
        w = wronskian([f, g, h])
        assert wronskian([g, f, h]) == -w
        assert wronskian([f, h, g]) == -w
        assert wronskian([h, g, f]) == -w
        assert wronskian([f, f, h]).is_zero()


def test_wronskian_is_multilinear(rng):
    for _ in range(5):
        f, f2, g, h = [random_poly(rng, int(d)) for d in rng.integers(0, 5, size=4)]
        c = random_rational(rng, signed=True)
        assert wronskian([f + f2 * c, g, h]) == wronskian([f, g, h]) + wronskian([f2, g, h]) * c
        assert wronskian([g, f + f2, h]) == wronskian([g, f, h]) + wronskian([g, f2, h])


def test_truncation(rng):
    for _ in range(10):
        f = random_poly(rng, int(rng.integers(0, 8)))
        n = int(rng.integers(0, 10))
        assert truncate(truncate(f, n), n) == truncate(f, n)
        assert truncate(f, f.degree) == f
        assert truncate(f, n) == f.truncate(n)
        assert all(truncate(f, n).coeff(j) == f.coeff(j) for j in range(n + 1))
