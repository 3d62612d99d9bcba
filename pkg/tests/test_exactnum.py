import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from _util import M, S, brute_det
from vinberg_springer.errors import PrecisionExhausted, ValidationError
from vinberg_springer.exactnum import GF, QQ, LaurentSeries, SeriesMatrix, certified, exterior_power, get_field
from vinberg_springer.exactnum import poly


# -- fields ---------------------------------------------------------------------


def test_field_tags():
    assert get_field("rational") is QQ
    assert get_field("fq:5") == GF(5)
    assert get_field("fq:3:2").order == 9
    for bad in ("fq:4", "fq:x", "reals"):
        with pytest.raises(ValidationError):
            get_field(bad)


@pytest.mark.parametrize("p,e", [(3, 1), (5, 1), (3, 2), (2, 3)])
def test_finite_field_axioms(p, e):
    F = GF(p, e)
    elems = list(F.elements())
    assert len(elems) == p ** e
    nonzero = [x for x in elems if not F.is_zero(x)]
    for x in nonzero:
        assert F.mul(x, F.inv(x)) == F.one
        assert F.pow(x, p ** e - 1) == F.one
    # Frobenius is additive
    for x in elems[:6]:
        for y in elems[:6]:
            assert F.pow(F.add(x, y), p) == F.add(F.pow(x, p), F.pow(y, p))


def test_field_parse_format_roundtrip():
    F9 = GF(3, 2)
    for x in F9.elements():
        assert F9.parse(F9.format(x)) == x
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    assert GF(5).parse("7") == 2


# -- valuation and inverse ------------------------------------------------------


def test_valuation_examples():
    s = S(QQ, {-1: 1, 0: 2, 2: 3}, horizon=32)
    assert s.valuation() == -1
    assert LaurentSeries.zero(QQ).valuation() == math.inf
    cancel = S(QQ, {1: 1}, horizon=4) - S(QQ, {1: 1}, horizon=4)
    with pytest.raises(PrecisionExhausted):
        cancel.valuation()


def test_inverse_examples():
    inv = S(QQ, {0: 1, 1: 1}).inv(8)
    assert inv.horizon == 8
    assert [inv.coefficient(k) for k in range(8)] == [(-1) ** k for k in range(8)]
    assert S(QQ, {1: 1}).inv().agrees(S(QQ, {-1: 1}))
    assert S(GF(5), 2).inv().coefficient(0) == 3


def test_inverse_of_zero_fails():
    with pytest.raises(ZeroDivisionError):
        LaurentSeries.zero(QQ).inv()


def series_strategy(F, max_terms=4, lo=-2, hi=4):
    coeff = st.integers(-5, 5)
    return st.dictionaries(st.integers(lo, hi), coeff, max_size=max_terms).map(lambda d: S(F, d))


def nonzero_series(F):
    return series_strategy(F).filter(lambda s: bool(s.coeffs))


@given(nonzero_series(QQ), nonzero_series(QQ))
def test_valuation_multiplicative(a, b):
    assert (a * b).valuation() == a.valuation() + b.valuation()


@given(nonzero_series(QQ), nonzero_series(QQ))
def test_valuation_ultrametric(a, b):
    s = a + b
    if s.coeffs:
        assert s.valuation() >= min(a.valuation(), b.valuation())
    if a.valuation() != b.valuation():
        assert s.valuation() == min(a.valuation(), b.valuation())


@given(nonzero_series(GF(5)))
def test_inverse_roundtrip_f5(a):
    prod = a * a.inv(16)
    assert prod.agrees(LaurentSeries.const(GF(5), 1))
    assert prod.horizon >= 16 + 0 - 8


@given(nonzero_series(QQ), st.integers(0, 4))
def test_exact_division_recovers_factor(a, k):
    b = a * S(QQ, {0: 1, 1: k, 2: 1})
    assert b.exact_div(S(QQ, {0: 1, 1: k, 2: 1})).agrees(a)


def test_horizon_propagation():
    a = S(QQ, {0: 1}, horizon=5)
    b = S(QQ, {-2: 1})
    assert (a * b).horizon == 3
    assert (a + b).horizon == 5


def test_ramify():
    s = S(QQ, {-1: 2, 3: 1}, horizon=6)
    r = s.ramify(2)
    assert r.coeffs == {-2: 2, 6: 1} and r.horizon == 12


def test_json_roundtrip(field):
    s = S(field, {-1: 2, 3: 1}, horizon=9)
    assert LaurentSeries.from_json(field, s.to_json()) == s
    m = M(field, [[1, {1: 2}], [{-1: 3}, 0]])
    assert SeriesMatrix.from_json(field, m.to_json()).agrees(m)


def test_certified_retries():
    calls = []

    @certified
    def needs_64(prec=32):
        calls.append(prec)
        if prec < 64:
            raise PrecisionExhausted("not yet")
        return prec

    assert needs_64() == 64
    assert calls == [32, 64]

    @certified
    def never(prec=32):
        raise PrecisionExhausted("never")

    with pytest.raises(PrecisionExhausted):
        never()


# -- matrices -------------------------------------------------------------------


def test_det_examples():
    assert M(QQ, [[{1: 1}, 0], [0, {-1: 1}]]).det().agrees(S(QQ, 1))
    assert M(QQ, [[1, {-2: 1}], [0, 1]]).det().agrees(S(QQ, 1))
    assert M(QQ, [[0, -1], [1, 0]]).det().agrees(S(QQ, 1))


def test_charpoly_examples():
    cp = M(QQ, [[0, 1], [-1, {0: 2, 1: 1}]]).charpoly()
    assert [c.to_json() for c in cp] == [S(QQ, 1).to_json(), S(QQ, {0: -2, 1: -1}).to_json(), S(QQ, 1).to_json()]
    assert [c.coeffs for c in SeriesMatrix.identity(QQ, 2).charpoly()] == [{0: 1}, {0: -2}, {0: 1}]
    cp = M(QQ, [[{1: 1}, 0], [0, {-1: 1}]]).charpoly()
    assert cp[1].coeffs == {1: -1, -1: -1}


def random_matrix(F, n, rng, lo=-1, hi=2):
    return M(F, [[{e: F.random(rng) for e in range(lo, hi)} for _ in range(n)] for _ in range(n)])


@pytest.mark.parametrize("seed", range(8))
def test_det_against_leibniz_and_sympy(field, seed):
    rng = random.Random(seed)
    m = random_matrix(field, 3, rng)
    assert m.det().agrees(brute_det(m.to_rows(), field))
    if field is QQ:
        x = sympy.Symbol("x")
        rows = [[sum(sympy.Rational(c.numerator, c.denominator) * x ** e for e, c in s.coeffs.items())
                 for s in row] for row in m.to_rows()]
        ref = sympy.expand(sympy.Matrix(rows).det())
        ours = sum(sympy.Rational(c.numerator, c.denominator) * x ** e for e, c in m.det().coeffs.items())
        assert sympy.expand(ref - ours) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_det_multiplicative(seed):
    rng = random.Random(seed)
    F = GF(5)
    a, b = random_matrix(F, 3, rng), random_matrix(F, 3, rng)
    assert (a @ b).det().agrees(a.det() * b.det())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_cayley_hamilton(seed):
    rng = random.Random(seed)
    m = random_matrix(QQ, 3, rng)
    cp = m.charpoly()
    acc = SeriesMatrix.zeros(QQ, 3)
    power = SeriesMatrix.identity(QQ, 3)
    for c in cp:
        acc = acc + power.scale(c)
        power = power @ m
    assert all(e.looks_zero() for e in acc.entries)
    assert cp[0].agrees(m.det() * S(QQ, (-1) ** 3))


def test_inverse_and_adjugate(rng):
    m = M(QQ, [[1, {-2: 1}], [{1: 1}, 2]])
    inv = m.inverse(16)
    prod = m @ inv
    assert prod.agrees(SeriesMatrix.identity(QQ, 2))
    unimodular = M(QQ, [[1, {-2: 1}], [0, 1]])
    assert unimodular.inverse().is_exact


def test_rank_and_kernel():
    m = M(QQ, [[1, 2, 3], [2, 4, 6], [{1: 1}, 0, 1]])
    assert m.rank() == 2 and m.kernel_dim() == 1
    inexact = M(QQ, [[S(QQ, {0: 1}, 10), S(QQ, {1: 1}, 10)], [S(QQ, {1: 1}, 10), S(QQ, {2: 1}, 10)]])
    with pytest.raises(PrecisionExhausted):
        inexact.rank()
    full = M(QQ, [[S(QQ, {0: 1}, 10), S(QQ, {1: 1}, 10)], [S(QQ, {1: 1}, 10), S(QQ, {0: 1}, 10)]])
    assert full.rank() == 2


def test_min_valuation_undecided():
    m = SeriesMatrix.from_rows([[S(QQ, {}, 4)]])
    with pytest.raises(PrecisionExhausted):
        m.min_valuation()


@pytest.mark.parametrize("seed", range(4))
def test_cauchy_binet(seed):
    rng = random.Random(seed)
    F = GF(7)
    a, b = random_matrix(F, 4, rng, 0, 2), random_matrix(F, 4, rng, 0, 2)
    for k in (1, 2, 3):
        assert exterior_power(a @ b, k).agrees(exterior_power(a, k) @ exterior_power(b, k))


def test_exterior_power_diagonal():
    a, b, c = S(QQ, 2), S(QQ, 3), S(QQ, {1: 1})
    w = exterior_power(SeriesMatrix.diag([a, b, c]), 2)
    assert [w[i, i] for i in range(3)] == [a * b, a * c, b * c]


# -- polynomials ----------------------------------------------------------------


def test_poly_factor_counts():
    F3 = GF(3)
    assert poly.count_irreducible_factors(poly.from_ints([1, 0, 1], F3), F3) == 1
    assert poly.count_irreducible_factors(poly.from_ints([-1, 0, 1], F3), F3) == 2
    assert poly.count_irreducible_factors(poly.from_ints([1, 0, 1], QQ), QQ) == 1
    assert poly.count_irreducible_factors(poly.from_ints([-4, 0, 1], QQ), QQ) == 2


def test_poly_roots_bruteforce():
    F5 = GF(5)
    f = poly.mul(poly.from_ints([-2, 1], F5), poly.mul(poly.from_ints([-2, 1], F5), poly.from_ints([-1, 1], F5), F5), F5)
    assert poly.roots_with_multiplicity(f, F5) == {2: 2, 1: 1}
    assert not poly.is_squarefree(f, F5)
