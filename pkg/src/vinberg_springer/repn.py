"""Exterior-power representations of SL_n, the adjoint action, Cartan coweights."""

from __future__ import annotations

from itertools import combinations

from .errors import ValidationError
from .exactnum import DEFAULT_HORIZON, LaurentSeries, SeriesMatrix, certified, exterior_power, valuation_pivots
from .rootdata import Coweight


def check_group_element(g: SeriesMatrix) -> SeriesMatrix:
    """Validate g as an element of SL_n(F): square with determinant 1."""
    if not g.is_square:
        raise ValidationError("group elements are square matrices")
    d = g.det()
    if not d.agrees(LaurentSeries.const(g.field, 1)):
        raise ValidationError(f"determinant is {d!r}, expected 1")
    return g


def subsets(n: int, k: int) -> list[tuple]:
    return list(combinations(range(n), k))


def fundamental_rep(g: SeriesMatrix, i: int) -> SeriesMatrix:
    n = g.rows
    if not 1 <= i <= n - 1:
        raise ValidationError(f"fundamental representation index {i} out of range 1..{n - 1}")
    return exterior_power(g, i)


def wedge_derivative(X: SeriesMatrix, k: int) -> SeriesMatrix:
    """Derivative of the k-th exterior power at the identity, applied to X.

    Column S of the result is X acting on e_S by the Leibniz rule.
    """
    n = X.rows
    basis = subsets(n, k)
    index = {S: a for a, S in enumerate(basis)}
    F = X.field
    zero = LaurentSeries.zero(F)
    out = [[zero] * len(basis) for _ in basis]
    for col, S in enumerate(basis):
        for s in S:
            for t in range(n):
                x = X[t, s]
                if x.looks_zero() and x.is_exact:
                    continue
                if t != s and t in S:
                    continue
                T = tuple(sorted(set(S) - {s} | {t}))
                between = sum(1 for u in S if u != s and min(s, t) < u < max(s, t))
                term = -x if between % 2 else x
                row = index[T]
                out[row][col] = out[row][col] + term
    return SeriesMatrix.from_rows(out)


# -- sl_n basis and the adjoint action --------------------------------------


def sl_basis_labels(n: int) -> list[tuple]:
    """Labels: ('E', i, j) for root vectors, ('H', k) for E_kk - E_{k+1,k+1}."""
    pos = sorted(((i, j) for i in range(n) for j in range(i + 1, n)), key=lambda p: (p[1] - p[0], p[0]))
    labels = [("E", i, j) for i, j in pos]
    labels += [("H", k) for k in range(n - 1)]
    labels += [("E", j, i) for i, j in pos]
    return labels


def sl_basis_matrix(label, field, n) -> SeriesMatrix:
    one = LaurentSeries.const(field, 1)
    zero = LaurentSeries.zero(field)
    rows = [[zero] * n for _ in range(n)]
    if label[0] == "E":
        rows[label[1]][label[2]] = one
    else:
        k = label[1]
        rows[k][k] = one
        rows[k + 1][k + 1] = -one
    return SeriesMatrix.from_rows(rows)


def sl_coordinates(X: SeriesMatrix, labels=None) -> list[LaurentSeries]:
    """Coordinates of a trace-zero matrix in the fixed sl_n basis."""
    n = X.rows
    labels = labels or sl_basis_labels(n)
    out = []
    for lab in labels:
        if lab[0] == "E":
            out.append(X[lab[1], lab[2]])
        else:
            acc = LaurentSeries.zero(X.field)
            for d in range(lab[1] + 1):
                acc = acc + X[d, d]
            out.append(acc)
    return out


def adjoint_matrix(gamma: SeriesMatrix, prec: int = DEFAULT_HORIZON) -> SeriesMatrix:
    """Matrix of X -> gamma X gamma^-1 on sl_n in the fixed basis."""
    n = gamma.rows
    ginv = gamma.inverse(prec)
    labels = sl_basis_labels(n)
    cols = []
    for lab in labels:
        Y = gamma @ sl_basis_matrix(lab, gamma.field, n) @ ginv
        cols.append(sl_coordinates(Y, labels))
    m = len(labels)
    return SeriesMatrix(m, m, [cols[j][i] for i in range(m) for j in range(m)])


# -- Cartan and Smith coweights ---------------------------------------------


@certified
def cartan_coweight(g: SeriesMatrix, prec: int = DEFAULT_HORIZON) -> Coweight:
    """Dominant lambda with g in K pi^lambda K, from maximal pole orders of minors."""
    n = g.rows
    poles = [0]
    for i in range(1, n):
        v = fundamental_rep(g, i).min_valuation()
        if v == float("inf"):
            raise ValidationError("zero exterior power: element is not invertible")
        poles.append(-v)
    dv = g.det().valuation()
    if dv != 0:
        raise ValidationError(f"determinant has valuation {dv}, expected 0")
    poles.append(0)
    # poles[i] = <omega_i, -w0 lambda> = -(lambda_n + ... + lambda_{n-i+1})
    lam = [None] * n
    for i in range(1, n + 1):
        lam[n - i] = poles[i - 1] - poles[i]
    cw = Coweight(lam)
    if not cw.is_dominant:
        raise ValidationError(f"pole orders give a non-dominant coweight {cw.to_json()}")
    return cw


@certified
def smith_coweight(g: SeriesMatrix, prec: int = DEFAULT_HORIZON) -> Coweight:
    """Dominant coweight from elementary divisors over the valuation ring."""
    vals, residual = valuation_pivots(g, prec)
    if len(vals) != g.rows:
        raise ValidationError("matrix is singular")
    return Coweight(sorted(vals, reverse=True))


def pi_power(field, coweight: Coweight) -> SeriesMatrix:
    """Diagonal matrix pi^lambda."""
    return SeriesMatrix.diag([LaurentSeries.pi(field, int(x)) for x in coweight.coords])
