"""Valuation invariants of regular semisimple elements and the dimension
formula for affine Springer fibers in the affine Grassmannian of SL_n."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import NonCompact, PrecisionExhausted, Unsupported, ValidationError
from .exactnum import DEFAULT_HORIZON, GF, LaurentSeries, PrimeField, SeriesMatrix, certified
from .exactnum import poly
from .repn import adjoint_matrix
from .rootdata import Coweight, dominance_leq, newton_sort, pair_rho
from .vinberg import CharPoint, chi_plus, discriminant_base, embed, steinberg_section


@dataclass(frozen=True)
class JordanPair:
    s: SeriesMatrix
    u: SeriesMatrix
    period: int
    steps: int


# -- polynomials with series coefficients -------------------------------------


def _val_or_floor(c: LaurentSeries):
    """(valuation, certified) where uncertified means 'at least the horizon'."""
    if c.coeffs:
        return min(c.coeffs), True
    if c.is_exact:
        return math.inf, True
    return c.horizon, False


def series_poly_discriminant(P: Sequence[LaurentSeries]) -> LaurentSeries:
    """Discriminant of a monic polynomial (coefficients constant term first)."""
    n = len(P) - 1
    F = P[0].field
    zero = LaurentSeries.zero(F)
    dP = [P[i] * i for i in range(1, n + 1)]
    size = 2 * n - 1
    rows = []
    top = list(reversed(P))
    for i in range(n - 1):
        rows.append([zero] * i + top + [zero] * (size - i - len(top)))
    dtop = list(reversed(dP))
    for i in range(n):
        rows.append([zero] * i + dtop + [zero] * (size - i - len(dtop)))
    res = SeriesMatrix.from_rows(rows).det()
    return res if (n * (n - 1) // 2) % 2 == 0 else -res


# -- Newton polygon ------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    root_valuation: Fraction  # valuation of each root attached to the segment

    @property
    def length(self):
        return self.end - self.start


def newton_polygon(P: Sequence[LaurentSeries]) -> list[Segment]:
    """Lower convex hull of (i, val c_i), certified against unknown coefficients."""
    pts = []
    floors = []
    for i, c in enumerate(P):
        v, ok = _val_or_floor(c)
        if ok:
            if v != math.inf:
                pts.append((i, v))
        else:
            floors.append((i, v))
    hull: list[tuple] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    if hull[0][0] != 0:
        raise ValidationError("constant coefficient vanishes: zero is a root")
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append(Segment(x1, x2, -Fraction(y2 - y1, x2 - x1)))
    for i, floor in floors:
        # an unknown coefficient must sit strictly above the hull
        for s in segs:
            if s.start <= i <= s.end:
                y_hull = _hull_value(P, s, i)
                if floor <= y_hull:
                    raise PrecisionExhausted(f"coefficient {i} not determined above the Newton polygon")
    return segs


def _hull_value(P, seg: Segment, i):
    v0 = _val_or_floor(P[seg.start])[0]
    return v0 - seg.root_valuation * (i - seg.start)


def _residual_polynomial(P, seg: Segment):
    """Residual polynomial of a segment, with e the slope denominator."""
    e = seg.root_valuation.denominator
    F = P[0].field
    v0 = _val_or_floor(P[seg.start])[0]
    out = []
    for i in range(seg.start, seg.end + 1, e):
        target = v0 - seg.root_valuation * (i - seg.start)
        c = P[i]
        if target.denominator != 1:
            raise AssertionError("lattice point off the integer grid")  # pragma: no cover
        t = int(target)
        out.append(c.coefficient(t) if t < c.horizon else _unknown(c, t))
    return poly.trim(out, F), e


def _unknown(c, t):
    raise PrecisionExhausted(f"coefficient at exponent {t} beyond horizon {c.horizon}")


def _substitute(P, mu: int, z0, F) -> list[LaurentSeries]:
    """Coefficients of P(pi^mu (z0 + y)) as a polynomial in y."""
    n = len(P) - 1
    out = []
    for k in range(n + 1):
        acc = LaurentSeries.zero(F)
        for i in range(k, n + 1):
            coef = F.mul(F.from_int(comb(i, k)), F.pow(z0, i - k)) if i > k else F.one
            if F.is_zero(coef):
                continue
            acc = acc + P[i].shift(mu * i) * LaurentSeries(F, {0: coef})
        out.append(acc)
    return out


def _strip_zero_roots(P):
    """Remove exact factors of x; returns (P, count)."""
    k = 0
    while P and P[0].is_exact and not P[0].coeffs:
        P = P[1:]
        k += 1
    return P, k


def count_factors(P: Sequence[LaurentSeries], geometric: bool = True, min_root_val=None, depth: int = 0) -> int:
    """Number of irreducible factors of P over F (or over k-bar((pi)) if geometric).

    Only roots of valuation strictly greater than ``min_root_val`` are
    counted when it is given.  Handles tame segments whose residual
    polynomial is squarefree, and repeated rational residual roots of
    integral slope by recentering.  Anything else raises Unsupported.
    """
    if depth > 64:
        raise Unsupported("factorization recursion too deep")
    F = P[0].field
    P, zero_roots = _strip_zero_roots(list(P))
    total = zero_roots
    if len(P) <= 1:
        return total
    p = F.characteristic
    for seg in newton_polygon(P):
        mu = seg.root_valuation
        if min_root_val is not None and mu <= min_root_val:
            continue
        R, e = _residual_polynomial(P, seg)
        if p and e % p == 0:
            raise Unsupported(f"wild ramification (index {e}) in characteristic {p}")
        if poly.is_squarefree(R, F):
            total += poly.degree(R) if geometric else poly.count_irreducible_factors(R, F)
            continue
        if e != 1:
            raise Unsupported("repeated residual root on a ramified segment")
        roots = poly.roots_with_multiplicity(R, F)
        d = poly.degree(R)
        simple = sum(1 for m in roots.values() if m == 1)
        repeated = {z: m for z, m in roots.items() if m > 1}
        rest_degree = d - sum(roots.values())
        if rest_degree:
            rest = R
            for z, m in roots.items():
                for _ in range(m):
                    rest = poly.divmod_poly(rest, [F.neg(z), F.one], F)[0]
            if not poly.is_squarefree(rest, F):
                raise Unsupported("repeated residual factor without a rational root")
            total += poly.degree(rest) if geometric else poly.count_irreducible_factors(rest, F)
        total += simple
        for z0 in repeated:
            Q = _substitute(P, int(mu), z0, F)
            total += count_factors(Q, geometric, min_root_val=Fraction(0), depth=depth + 1)
    return total


# -- the invariants ------------------------------------------------------------


def _rank(gamma: SeriesMatrix) -> int:
    return gamma.rows - 1


@certified
def delta(gamma: SeriesMatrix, prec: int = DEFAULT_HORIZON) -> int:
    """Valuation of det(Id - Ad(gamma)) on sl_n modulo the centralizer."""
    A = adjoint_matrix(gamma, prec)
    m = A.rows
    I = SeriesMatrix.identity(gamma.field, m)
    cp = (I - A).charpoly()
    r = _rank(gamma)
    for k in range(r):
        if cp[k].coeffs:
            raise ValidationError("element is not regular semisimple (kernel of Id - Ad too large)")
    v = cp[r].valuation()
    if v == math.inf:
        raise ValidationError("element is not regular semisimple")
    return v


@certified
def delta_via_discriminant(gamma: SeriesMatrix, prec: int = DEFAULT_HORIZON) -> int:
    """Independent computation: valuation of the discriminant of the charpoly."""
    v = series_poly_discriminant(gamma.charpoly()).valuation()
    if v == math.inf:
        raise ValidationError("characteristic polynomial is not separable")
    return v


def is_regular_semisimple(gamma: SeriesMatrix) -> bool:
    try:
        delta_via_discriminant(gamma)
    except ValidationError:
        return False
    return True


@certified
def newton_point(gamma: SeriesMatrix, prec: int = DEFAULT_HORIZON) -> Coweight:
    slopes = []
    for seg in newton_polygon(gamma.charpoly()):
        slopes.extend([seg.root_valuation] * seg.length)
    if len(slopes) != gamma.rows:
        raise ValidationError("zero eigenvalue")
    return newton_sort(slopes)


@certified
def defect(gamma: SeriesMatrix, geometric: bool = True, prec: int = DEFAULT_HORIZON) -> int:
    """n minus the number of irreducible factors of the characteristic polynomial.

    With ``geometric`` the residue field is replaced by its algebraic
    closure, which is the setting of the dimension formula.
    """
    return gamma.rows - count_factors(gamma.charpoly(), geometric)


def nonempty(gamma: SeriesMatrix, lam: Coweight) -> bool:
    if not lam.is_dominant:
        raise ValidationError("lambda must be dominant")
    return dominance_leq(newton_point(gamma), lam)


def dim_springer(gamma: SeriesMatrix, lam: Coweight, geometric: bool = True):
    """Dimension of the fiber, or None when it is empty."""
    if gamma.rows != lam.n:
        raise ValidationError("rank mismatch between gamma and lambda")
    if not nonempty(gamma, lam):
        return None
    val = pair_rho(lam) + Fraction(delta(gamma) - defect(gamma, geometric=geometric), 2)
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"dimension formula produced {val}")
    return int(val)


# -- split elements ------------------------------------------------------------


def torus_valuations(gamma: SeriesMatrix) -> list[int]:
    n = gamma.rows
    for i in range(n):
        for j in range(n):
            if i != j and gamma[i, j].coeffs:
                raise ValidationError("split computations need a diagonal gamma")
    return [gamma[i, i].valuation() for i in range(n)]


def _split_root_sum(gamma: SeriesMatrix, prec) -> tuple[int, Coweight]:
    vals = torus_valuations(gamma)
    n = gamma.rows
    order = sorted(range(n), key=lambda i: -vals[i])
    d = [gamma[i, i] for i in order]
    one = LaurentSeries.const(gamma.field, 1)
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            v = (one - d[i] * d[j].inv(prec)).valuation()
            if v == math.inf:
                raise ValidationError("gamma is not regular")
            total += v
    return total, Coweight(sorted(vals, reverse=True))


@certified
def split_dim(gamma: SeriesMatrix, lam: Coweight, prec: int = DEFAULT_HORIZON) -> int:
    """sum_{alpha > 0} val(1 - alpha(gamma)) + <rho, lambda - nu>, nu dominant."""
    total, nu = _split_root_sum(gamma, prec)
    val = total + pair_rho(lam - nu)
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral split dimension {val}")
    return int(val)


@certified
def split_cell_dim(gamma: SeriesMatrix, lam: Coweight, nu: Coweight, prec: int = DEFAULT_HORIZON):
    """Dimension attached to the dominant stratum nu, or None if inadmissible.

    Admissible strata satisfy nu_gamma <= nu <= lam in dominance order.
    """
    total, nu_gamma = _split_root_sum(gamma, prec)
    if not (nu.is_dominant and lam.is_dominant):
        return None
    if not (dominance_leq(nu_gamma, nu) and dominance_leq(nu, lam)):
        return None
    return int(total + pair_rho(lam - nu))


# -- the base: valuation of the discriminant ----------------------------------


def center_lift(lam: Coweight, field) -> list[LaurentSeries]:
    """The torus element pi^{-w0 lambda}."""
    return [LaurentSeries.pi(field, int(x)) for x in lam.minus_w0().coords]


def base_point(gamma: SeriesMatrix, lam: Coweight) -> CharPoint:
    """chi_+ of the point (pi^{-w0 lambda}, gamma)."""
    return chi_plus(embed(center_lift(lam, gamma.field), gamma))


@certified
def base_disc_val(c: CharPoint, lam: Coweight, prec: int = DEFAULT_HORIZON) -> int:
    """<2 rho, lambda> + delta at a torus point over c.

    The standard-representation matrix of the section over c is conjugate
    to a scalar multiple of the group component, and Ad ignores scalars,
    so no splitting field is needed.  The result is checked against the
    valuation of the discriminant polynomial on the base.
    """
    if not c.is_integral():
        raise ValidationError("base point must be integral")
    M1 = steinberg_section(c).M[0]
    if M1.det().valuation() == math.inf:
        raise ValidationError("base point lies over a singular matrix")
    value = int(2 * pair_rho(lam)) + delta(M1, prec=prec)
    check = discriminant_base(c).valuation()
    if check != value:
        raise ArithmeticError(f"discriminant valuation {check} disagrees with {value}")
    return value


# -- base change -------------------------------------------------------------


def base_change(gamma: SeriesMatrix, e: int = 1, f: int = 1) -> SeriesMatrix:
    """Pass to the tame extension with ramification e and residue degree f."""
    F = gamma.field
    p = F.characteristic
    if e < 1 or f < 1:
        raise ValidationError("extension degrees must be positive")
    if p and e % p == 0:
        raise Unsupported(f"wild ramification index {e} in characteristic {p}")
    out = gamma.ramify(e) if e > 1 else gamma
    if f > 1:
        if not isinstance(F, PrimeField):
            raise Unsupported("residue extensions are implemented over prime fields only")
        K = GF(p, f)
        out = out.map(lambda s: s.map_coefficients(K, K.from_int))
    return out


def base_change_delta(gamma: SeriesMatrix, e: int = 1, f: int = 1) -> int:
    """delta over the extension, in the valuation normalized there."""
    return delta(base_change(gamma, e, f))


# -- topological Jordan decomposition ------------------------------------------


JORDAN_BUDGET = 64


def _state(m: SeriesMatrix):
    return tuple(tuple(sorted(e.coeffs.items())) for e in m.entries)


@certified
def topological_jordan(gamma: SeriesMatrix, prec: int = DEFAULT_HORIZON, budget: int = JORDAN_BUDGET) -> JordanPair:
    F = gamma.field
    q = F.order
    if q is None:
        raise Unsupported("topological Jordan decomposition needs a finite residue field")
    if not gamma.is_integral():
        raise NonCompact("gamma has entries with poles")
    det0 = gamma.det().residue()
    if F.is_zero(det0):
        raise NonCompact("reduction modulo pi is not invertible")
    x = gamma.map(lambda s: s.truncate(prec))
    seen = {}
    history = []
    for m in range(budget + 1):
        key = _state(x)
        if key in seen:
            start = seen[key]
            period = m - start
            M = start + (-start) % period
            s = history[M]
            u = gamma @ s.inverse(prec)
            u = u.map(lambda t: t.truncate(prec))
            if not (s @ u).agrees(gamma) or not (u @ s).agrees(gamma):
                raise ArithmeticError("Jordan factors do not multiply back to gamma")
            return JordanPair(s, u, period, m)
        seen[key] = m
        history.append(x)
        x = (x ** q).map(lambda t: t.truncate(prec))
    raise PrecisionExhausted(f"q-power iteration did not stabilize within {budget} steps")
