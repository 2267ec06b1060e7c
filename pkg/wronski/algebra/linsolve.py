"""Exact linear algebra over QQ.

Undetermined-coefficient problems are posed as lists of polynomials: find
``u`` with ``P_0 + sum u_k P_k == target`` coefficient by coefficient.
"""
from collections import namedtuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring
from sympy.polys.solvers import solve_lin_sys

LinearSolution = namedtuple('LinearSolution', ['values', 'n_equations', 'n_unknowns', 'rank'])


def _unknowns_ring(n):
    names = ','.join(f'u{k}' for k in range(n))
    ring_and_gens = ring(names, QQ)
    return ring_and_gens[0], ring_and_gens[1:]


def solve_linear(rows, rhs):
    # free unknowns are set to zero; values is None when the system is inconsistent
    n_unknowns = len(rows[0]) if rows else 0
    n_equations = len(rows)
    if n_unknowns == 0:
        values = [] if all(not b for b in rhs) else None
        return LinearSolution(values, n_equations, 0, 0)

    R, gens = _unknowns_ring(n_unknowns)
    eqs = []
    for row, b in zip(rows, rhs):
        eq = R(-b)
        for c, g in zip(row, gens):
            if c:
                eq += g * c
        if eq:
            eqs.append(eq)

    rank = matrix_rank(rows)
    if any(eq.is_ground for eq in eqs):
        return LinearSolution(None, n_equations, n_unknowns, rank)
    solution = solve_lin_sys(eqs, R) if eqs else {}
    if solution is None:
        return LinearSolution(None, n_equations, n_unknowns, rank)

    values = []
    for g in gens:
        value = solution.get(g)
        if value is None:
            values.append(QQ.zero)
        else:
            values.append(dict(R(value)).get(R.zero_monom, QQ.zero))
    return LinearSolution(values, n_equations, n_unknowns, rank)


def solve_coefficients(constant, unknown_polys, target, degrees=None):
    """Finds ``u`` with ``constant + sum u_k * unknown_polys[k] == target`` on the coefficients at ``degrees``."""
    if degrees is None:
        top = max([constant.degree, target.degree] + [p.degree for p in unknown_polys] + [0])
        degrees = range(top + 1)
    rows = [[p.coeff(d) for p in unknown_polys] for d in degrees]
    rhs = [target.coeff(d) - constant.coeff(d) for d in degrees]
    return solve_linear(rows, rhs)


def _matrix(rows):
    return DomainMatrix([[QQ.convert(v) for v in r] for r in rows], (len(rows), len(rows[0])), QQ)


def matrix_rank(rows):
    if not rows or not rows[0]:
        return 0
    return _matrix(rows).rank()


def determinant(rows):
    n = len(rows)
    if n == 0:
        return QQ.one
    return _matrix(rows).det()


def pivot_columns(rows):
    if not rows or not rows[0]:
        return ()
    _, pivots = _matrix(rows).rref()
    return tuple(pivots)
