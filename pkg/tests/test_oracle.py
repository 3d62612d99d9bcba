import warnings
from itertools import product

import pytest

from _util import M, S
from vinberg_springer.catalog import catalog_by_name
from vinberg_springer.errors import Unsupported, ValidationError, WindowNotSaturated
from vinberg_springer.exactnum import GF, QQ
from vinberg_springer.oracle import enumerate_fiber, fit_dimension, oracle_dimension, reduce_gamma
from vinberg_springer.repn import cartan_coweight, pi_power
from vinberg_springer.rootdata import Coweight
from vinberg_springer.springer import dim_springer, split_cell_dim

H = 64


def entry(name):
    return catalog_by_name(name, H)


def test_fit_examples():
    assert fit_dimension({3: 4, 5: 6, 7: 8}) == 1
    assert fit_dimension({3: 1, 5: 1, 7: 1, 11: 1}) == 0
    assert fit_dimension({3: 5, 5: 5, 7: 9}) is None
    assert fit_dimension({}) is None
    assert fit_dimension({3: 0, 5: 0}) is None


def test_fit_accepts_negative_lower_coefficients():
    # (q - 1) q: integer coefficients, positive leading term
    assert fit_dimension({q: (q - 1) * q for q in (3, 5, 7, 11)}) == 2
    assert fit_dimension({q: -q for q in (3, 5, 7)}) is None


def test_fit_rejects_non_integer_polynomials():
    # q(q - 1) / 2 is integer-valued with rational coefficients
    assert fit_dimension({q: q * (q - 1) // 2 for q in (3, 5, 7, 11)}) is None


def test_ramified_finite_and_stable():
    e = entry("ramified")
    rep2 = enumerate_fiber(e.gamma, e.lam, 3, 2)
    rep3 = enumerate_fiber(e.gamma, e.lam, 3, 3)
    assert rep2.total() == rep3.total() > 0
    assert rep3.saturated


def test_noncompact_empty_at_zero():
    e = entry("noncompact")
    for q in (3, 5):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", WindowNotSaturated)
            rep = enumerate_fiber(e.gamma, Coweight([0, 0]), q, 3)
        assert rep.empty


def test_split_counts_linear_in_q():
    e = entry("split_k0")
    res = oracle_dimension(e.gamma, e.lam, (3, 5, 7), depth=2)
    assert res.fitted_dim == 1
    # an infinite chain of lines: each Iwasawa cell holds q points
    for rep in res.reports:
        assert set(rep.cell_counts.values()) == {rep.q}
    assert res.method == "cells"


def test_split_cells_vs_cell_formula():
    # the largest per-cell dimension matches the stratum formula maximum
    e = entry("split_k1")
    res = oracle_dimension(e.gamma, e.lam, (3, 5, 7), depth=2)
    top = max(split_cell_dim(e.gamma, e.lam, nu) or 0 for nu in (Coweight([0, 0]), Coweight([1, -1])))
    assert res.fitted_dim == top == dim_springer(e.gamma, e.lam)


def test_counts_table_shape():
    e = entry("ramified")
    rep = enumerate_fiber(e.gamma, e.lam, 3, 2)
    keys = rep.counts()
    assert (3, 2, (0, 0)) in keys
    assert sum(row["count"] for row in rep.table()) == rep.total()


def test_window_warning():
    e = entry("noncompact")
    with pytest.warns(WindowNotSaturated):
        enumerate_fiber(e.gamma, e.lam, 3, 2)


def brute_cell_count(gamma, lam, q, m, lo):
    """Count x in pi^lo O / pi^{2m} O with (u(x) pi^nu)^-1 gamma u(x) pi^nu in K pi^lam K."""
    F = GF(q)
    g = reduce_gamma(gamma, F)
    nu = pi_power(F, Coweight([m, -m]))
    nu_inv = pi_power(F, Coweight([-m, m]))
    exps = list(range(lo, 2 * m))
    count = 0
    for digits in product(list(F.elements()), repeat=len(exps)):
        x = S(F, dict(zip(exps, digits)))
        u, u_inv = M(F, [[1, x], [0, 1]]), M(F, [[1, -x], [0, 1]])
        conj = nu_inv @ u_inv @ g @ u @ nu
        count += cartan_coweight(conj) == lam
    return count


@pytest.mark.filterwarnings("ignore::vinberg_springer.errors.WindowNotSaturated")
@pytest.mark.parametrize("m", [-1, 0, 1])
def test_cells_match_brute_force(m):
    e = entry("split_k1")
    rep = enumerate_fiber(e.gamma, e.lam, 3, 2)
    assert rep.cell_counts[m] == brute_cell_count(e.gamma, e.lam, 3, m, lo=2 * m - 4)


def test_bi_invariance_of_totals():
    # conjugating gamma by an integral element permutes the points of the fiber
    e = entry("ramified")
    k = M(QQ, [[1, 1], [0, 1]])
    conj = k @ e.gamma @ k.inverse()
    a = enumerate_fiber(e.gamma, e.lam, 3, 3).total()
    b = enumerate_fiber(conj, e.lam, 3, 3).total()
    assert a == b


def test_rejects_bad_input():
    e = entry("sl3_split")
    with pytest.raises(Unsupported):
        enumerate_fiber(e.gamma, e.lam, 3, 2)
    with pytest.raises(ValidationError):
        enumerate_fiber(entry("ramified").gamma, Coweight([-1, 1]), 3, 2)
    with pytest.raises(ValidationError):
        enumerate_fiber(entry("ramified").gamma, Coweight([0, 0]), 6, 2)


def test_extension_field_enumeration():
    # over F_9 the unramified torus splits and the k = 1 fiber acquires points
    e = entry("unramified")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", WindowNotSaturated)
        rep3 = enumerate_fiber(e.gamma, Coweight([1, -1]), 3, 2)
        rep9 = enumerate_fiber(e.gamma, Coweight([1, -1]), 9, 2)
    assert rep3.empty and not rep9.empty


def test_parallel_matches_serial():
    e = entry("ramified")
    a = enumerate_fiber(e.gamma, e.lam, 3, 2)
    b = enumerate_fiber(e.gamma, e.lam, 3, 2, workers=2)
    assert a.cell_counts == b.cell_counts
