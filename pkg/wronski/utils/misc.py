import numpy as np
from sympy.polys.domains import QQ

from wronski.algebra.exactpoly import Poly
from wronski.errors import RedrawExhaustedError

from .log import logger

SAMPLE_BOUND = 99


def get_rng(seed=None):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_rational(rng, signed=False, bound=None):
    """Numerator and denominator uniform in [1, bound], or [-bound, bound] without 0 for the numerator when signed."""
    bound = bound or SAMPLE_BOUND
    q = int(rng.integers(1, bound + 1))
    p = int(rng.integers(1, bound + 1))
    if signed and rng.integers(0, 2):
        p = -p
    return QQ(p, q)


def random_params(rng, n, signed=False, bound=None):
    return tuple(random_rational(rng, signed=signed, bound=bound) for _ in range(n))


def random_poly(rng, degree, bound=9):
    coeffs = [random_rational(rng, signed=True, bound=bound) for _ in range(degree + 1)]
    return Poly(coeffs)


def redraw(draw, accept, max_redraws, what='sample'):
    """Calls ``draw()`` until ``accept(value)`` holds; returns ``(value, redraws)``."""
    for attempt in range(max_redraws + 1):
        value = draw()
        if accept(value):
            if attempt:
                logger.info(f'{what}: accepted after {attempt} redraw(s)')
            return value, attempt
    raise RedrawExhaustedError(what, max_redraws)
