"""Master functions of type A_r and numerical verification of the Bethe Ansatz equations.

The roots of a tuple ``y`` are found in double precision (Aberth iteration with a
companion-matrix fallback), polished by Newton steps in mpmath and substituted into
the gradient of ``log Phi``, which is evaluated in mpmath as well.
"""
from collections import namedtuple

import mpmath
import numpy as np

from wronski.algebra.exactpoly import rational_to_float
from wronski.errors import CoincidentPointsError, UsageError
from wronski.population.generalv import SingularData, fertility_check, genericity_check
from wronski.utils.log import logger

ROOT_TOL = 1e-12
MAX_ITER = 200
POLISH_DPS = 50
BETHE_TOL = 1e-9

RootResult = namedtuple('RootResult', ['roots', 'converged', 'method'])


def cartan_entry(i, j):
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


class MasterFunctionSpec(object):
    def __init__(self, rank, degrees, points=(), weights=()):
        degrees = tuple(int(k) for k in degrees)
        if len(degrees) != rank or min(degrees) < 0:
            raise UsageError(f'degree vector must have {rank} non-negative entries')
        if len(points) != len(weights) or any(len(w) != rank for w in weights):
            raise UsageError('one weight vector of length r per singular point')
        self.rank = rank
        self.degrees = degrees
        self.points = tuple(points)
        self.weights = tuple(tuple(int(m) for m in w) for w in weights)

    @classmethod
    def for_tuple(cls, y, data=None):
        data = data or SingularData.trivial(y.rank)
        return cls(y.rank, y.degrees(), data.points, data.weights)

    def cartan(self, i, j):
        return cartan_entry(i, j)

    def __repr__(self):
        return f'MasterFunctionSpec(rank={self.rank}, k={self.degrees}, z={len(self.points)} points)'


class CriticalPoint(object):
    def __init__(self, groups, spec=None):
        self.groups = tuple(tuple(complex(t) if not isinstance(t, mpmath.mpc) else t for t in g) for g in groups)
        if spec is not None and tuple(len(g) for g in self.groups) != spec.degrees:
            raise UsageError(f'group sizes {[len(g) for g in self.groups]} differ from k = {spec.degrees}')

    def __len__(self):
        return sum(len(g) for g in self.groups)


def _as_number(value, exact=False):
    if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
        if exact:
            return mpmath.mpf(int(value.numerator)) / int(value.denominator)
        return rational_to_float(value)
    return mpmath.mpmathify(value) if exact else complex(value)


def _inverse(d):
    if d == 0:
        raise CoincidentPointsError('two variables (or a variable and a singular point) coincide')
    return 1 / d


def gradient(spec, groups, exact=False):
    """Components ``d log Phi / d u^(i)_m`` in the order of ``groups``; mpmath numbers when ``exact``."""
    points = [_as_number(z, exact) for z in spec.points]
    result = []
    for i, group in enumerate(groups, start=1):
        for m, u in enumerate(group):
            total = 0
            for z, w in zip(points, spec.weights):
                if w[i - 1]:
                    total -= w[i - 1] * _inverse(u - z)
            for j, other in enumerate(groups, start=1):
                a = spec.cartan(i, j)
                if not a:
                    continue
                for l, v in enumerate(other):
                    if j == i and l == m:
                        continue
                    total += a * _inverse(u - v)
            result.append(total)
    return result


def log_master_function(spec, groups):
    value = 0.0
    for i, group in enumerate(groups, start=1):
        u = np.asarray(group, dtype=complex)
        for z, w in zip(spec.points, spec.weights):
            if w[i - 1]:
                value -= w[i - 1] * np.sum(np.log(np.abs(u - _as_number(z))))
        for j in range(i, len(groups) + 1):
            a = spec.cartan(i, j)
            if not a:
                continue
            v = np.asarray(groups[j - 1], dtype=complex)
            d = np.abs(u[:, None] - v[None, :])
            if j == i:
                d = d[np.triu_indices(len(u), k=1)]
            if np.any(d == 0):
                raise CoincidentPointsError('two variables coincide')
            value += a * np.sum(np.log(d))
    return float(value)


def master_function(spec, point):
    groups = point.groups if isinstance(point, CriticalPoint) else point
    if tuple(len(g) for g in groups) != spec.degrees:
        raise UsageError(f'point does not match k = {spec.degrees}')
    return log_master_function(spec, groups), np.array(gradient(spec, groups), dtype=complex)


def _aberth(coeffs, tol, max_iter):
    """Simultaneous Aberth iteration; ``coeffs`` monic, highest degree first."""
    n = len(coeffs) - 1
    deriv = np.polyder(coeffs)
    radius = 1 + np.max(np.abs(coeffs[1:]))
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    x = radius * np.exp(1j * angles)
    for _ in range(max_iter):
        p = np.polyval(coeffs, x)
        dp = np.polyval(deriv, x)
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1)
        inv = 1 / diff
        np.fill_diagonal(inv, 0)
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio = p / dp
            delta = ratio / (1 - ratio * inv.sum(axis=1))
        if not np.all(np.isfinite(delta)):
            return x, False
        x = x - delta
        if np.max(np.abs(delta)) < tol * max(1.0, np.max(np.abs(x))):
            return x, True
    return x, False


def _polish(poly, roots, dps):
    polished = []
    with mpmath.workdps(dps):
        coeffs = [_as_number(c, exact=True) for c in reversed(poly.coeffs)]
        eps = mpmath.mpf(10) ** (-dps + 5)
        for root in roots:
            x = mpmath.mpc(root.real, root.imag)
            for _ in range(2 * dps):
                p, dp = mpmath.polyval(coeffs, x, derivative=True)
                if dp == 0:
                    break
                step = p / dp
                x -= step
                if abs(step) <= eps * max(1, abs(x)):
                    break
            polished.append(x)
    return polished


def find_roots(poly, tol=ROOT_TOL, max_iter=MAX_ITER, dps=POLISH_DPS):
    if poly.is_zero():
        raise UsageError('roots of the zero polynomial')
    if poly.degree == 0:
        return RootResult([], True, 'none')
    lc = rational_to_float(poly.lc)
    coeffs = np.array([rational_to_float(c) / lc for c in reversed(poly.coeffs)], dtype=complex)
    roots, converged = _aberth(coeffs, tol, max_iter)
    method = 'aberth'
    if not converged:
        logger.warning(f'Aberth iteration did not converge on {poly}; using companion matrix')
        roots, method = np.roots(coeffs), 'companion'
    return RootResult(_polish(poly, roots, dps), converged, method)


def bethe_verify(y, data=None, spec=None, tol=BETHE_TOL, root_tol=ROOT_TOL, max_iter=MAX_ITER, dps=POLISH_DPS):
    """Substitutes the roots of ``y`` into the Bethe Ansatz equations.

    Returns a dict with the per-equation residuals, their maximum, the roots and a status
    (``ok``, ``failed`` or ``degenerate``).
    """
    data = data or SingularData.trivial(y.rank)
    if not genericity_check(y, data):
        return {'status': 'degenerate', 'residuals': [], 'max': None, 'roots': [], 'fertile': None}
    spec = spec or MasterFunctionSpec.for_tuple(y, data)
    results = [find_roots(e, root_tol, max_iter, dps) for e in y.entries]
    groups = [r.roots for r in results]
    with mpmath.workdps(dps):
        residuals = [float(abs(v)) for v in gradient(spec, groups, exact=True)]
    worst = max(residuals, default=0.0)
    return {
        'status': 'ok' if worst < tol else 'failed',
        'residuals': residuals,
        'max': worst,
        'roots': [[[float(t.real), float(t.imag)] for t in g] for g in groups],
        'fertile': fertility_check(y, data),
        'converged': all(r.converged for r in results),
    }
