"""Seeded random inputs: base points, torus elements, elements of SL_n(O)."""

from __future__ import annotations

import random

from .exactnum import Field, LaurentSeries, SeriesMatrix
from .vinberg import CharPoint


def random_poly_series(F: Field, rng: random.Random, terms: int = 3, start: int = 0, nonzero: bool = False):
    """Exact series c_0 pi^start + ... with ``terms`` random coefficients."""
    while True:
        s = LaurentSeries(F, {start + i: F.random(rng) for i in range(terms)})
        if not nonzero or s.coeffs:
            return s


def random_unit(F: Field, rng: random.Random) -> LaurentSeries:
    """Nonzero constant, so that its inverse is exact."""
    return LaurentSeries.const(F, F.random_nonzero(rng))


def random_char_point(n: int, F: Field, rng: random.Random, b_zero: bool = False, constants: bool = False):
    terms = 1 if constants else 3
    zero = LaurentSeries.zero(F)
    b = tuple(zero if b_zero else random_poly_series(F, rng, terms) for _ in range(n - 1))
    a = tuple(random_poly_series(F, rng, terms) for _ in range(n - 1))
    return CharPoint(b, a)


def random_torus(n: int, F: Field, rng: random.Random, max_exp: int = 2, units: bool = True) -> list[LaurentSeries]:
    """Exact diagonal element c_i pi^{e_i} with product 1."""
    exps = [rng.randint(-max_exp, max_exp) for _ in range(n - 1)]
    exps.append(-sum(exps))
    cs = [F.random_nonzero(rng) if units else F.one for _ in range(n - 1)]
    prod = F.one
    for c in cs:
        prod = F.mul(prod, c)
    cs.append(F.inv(prod))
    return [LaurentSeries.monomial(F, c, e) for c, e in zip(cs, exps)]


def random_sl_integral(n: int, F: Field, rng: random.Random, steps: int = 6, terms: int = 2) -> SeriesMatrix:
    """Exact element of SL_n(O): a product of elementary matrices and a unit diagonal."""
    g = SeriesMatrix.diag(random_torus(n, F, rng, max_exp=0))
    one = LaurentSeries.const(F, 1)
    zero = LaurentSeries.zero(F)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        rows = [[one if r == s else zero for s in range(n)] for r in range(n)]
        rows[i][j] = random_poly_series(F, rng, terms)
        g = g @ SeriesMatrix.from_rows(rows)
    return g
