"""Points of the Vinberg monoid of SL_n, the map chi_+, its section, and the
extended discriminant.

A point is stored as ``(b, M)`` where ``b_i`` are the abelianization
coordinates and ``M_i`` the matrix in the i-th exterior power of the
standard representation.  A pair ``(t, g)`` embeds as
``b_i = alpha_i(t)``, ``M_i = omega_i(t) * Lambda^i(g)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import sympy

from .errors import ValidationError
from .exactnum import DEFAULT_HORIZON, LaurentSeries, SeriesMatrix, certified
from .repn import fundamental_rep, sl_basis_labels, sl_basis_matrix, subsets, wedge_derivative
from .rootdata import RootDatum, WeylElement, coxeter_elements, strata_dim


@dataclass(frozen=True)
class VinbergPoint:
    b: tuple
    M: tuple

    def __post_init__(self):
        b, M = tuple(self.b), tuple(self.M)
        if len(b) != len(M) or not b:
            raise ValidationError("a Vinberg point needs r coordinates and r matrices")
        n = len(b) + 1
        for i, m in enumerate(M, start=1):
            size = len(subsets(n, i))
            if (m.rows, m.cols) != (size, size):
                raise ValidationError(f"M_{i} must be {size}x{size}")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "M", M)

    @property
    def n(self):
        return len(self.b) + 1

    @property
    def rank(self):
        return len(self.b)

    @property
    def field(self):
        return self.b[0].field

    def __mul__(self, other: VinbergPoint) -> VinbergPoint:
        return VinbergPoint(tuple(x * y for x, y in zip(self.b, other.b)),
                            tuple(x @ y for x, y in zip(self.M, other.M)))

    def agrees(self, other: VinbergPoint) -> bool:
        return (self.n == other.n
                and all(x.agrees(y) for x, y in zip(self.b, other.b))
                and all(x.agrees(y) for x, y in zip(self.M, other.M)))

    def is_integral(self) -> bool:
        """Membership in V_G(O): all coordinates have nonnegative valuation."""
        return all(x.is_integral() for x in self.b) and all(m.is_integral() for m in self.M)

    def is_integral_nondegenerate(self) -> bool:
        """Integral, with every M_i nonzero modulo pi."""
        if not self.is_integral():
            return False
        return all(any(not e.coefficient(0) == e.field.zero for e in m.entries) for m in self.M)

    def monomial_relation_holds(self) -> bool:
        M1 = self.M[0]
        for k in range(2, self.n):
            lhs = fundamental_rep(M1, k)
            rhs = self.M[k - 1].scale(monomial(self.b, k))
            if not lhs.agrees(rhs):
                return False
        return True

    def to_json(self):
        return {"b": [x.to_json() for x in self.b], "M": [m.to_json() for m in self.M]}

    @classmethod
    def from_json(cls, field, doc):
        try:
            b = [LaurentSeries.from_json(field, x) for x in doc["b"]]
            M = [SeriesMatrix.from_json(field, m) for m in doc["M"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad Vinberg point: {exc}") from exc
        return cls(tuple(b), tuple(M))


@dataclass(frozen=True)
class CharPoint:
    b: tuple
    a: tuple

    def __post_init__(self):
        b, a = tuple(self.b), tuple(self.a)
        if len(a) != len(b) or not b:
            raise ValidationError("a point of the base needs r + r coordinates")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)

    @property
    def n(self):
        return len(self.b) + 1

    @property
    def field(self):
        return self.b[0].field

    def agrees(self, other: CharPoint) -> bool:
        return all(x.agrees(y) for x, y in zip(self.b + self.a, other.b + other.a))

    def is_integral(self):
        return all(x.is_integral() for x in self.b + self.a)

    def to_json(self):
        return {"b": [x.to_json() for x in self.b], "a": [x.to_json() for x in self.a]}

    @classmethod
    def from_json(cls, field, doc):
        try:
            b = [LaurentSeries.from_json(field, x) for x in doc["b"]]
            a = [LaurentSeries.from_json(field, x) for x in doc["a"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad base point: {exc}") from exc
        return cls(tuple(b), tuple(a))


# -- monomials in b -----------------------------------------------------------


def monomial_exponents(n: int, k: int) -> tuple:
    """Simple-root coordinates of k*omega_1 - omega_k: exponent k - j on b_j."""
    return tuple(max(k - j, 0) for j in range(1, n))


def monomial(b: Sequence[LaurentSeries], k: int, exps=None) -> LaurentSeries:
    exps = monomial_exponents(len(b) + 1, k) if exps is None else exps
    acc = LaurentSeries.const(b[0].field, 1)
    for x, e in zip(b, exps):
        if e:
            acc = acc * x**e
    return acc


def _weight_gap(n: int, k: int, S) -> tuple:
    """Simple-root coordinates of omega_k - e_S."""
    return tuple(min(j, k) - sum(1 for s in S if s < j) for j in range(1, n))


# -- embedding and chi_+ ------------------------------------------------------


def _root_values(t: Sequence[LaurentSeries], prec):
    return [t[i] * t[i + 1].inv(prec) for i in range(len(t) - 1)]


def _omega_values(t: Sequence[LaurentSeries]):
    out = []
    acc = LaurentSeries.const(t[0].field, 1)
    for x in t[:-1]:
        acc = acc * x
        out.append(acc)
    return out


def embed(t: Sequence[LaurentSeries], g: SeriesMatrix, prec: int = DEFAULT_HORIZON) -> VinbergPoint:
    n = g.rows
    if len(t) != n:
        raise ValidationError(f"torus element must have {n} entries")
    b = _root_values(t, prec)
    om = _omega_values(t)
    M = [fundamental_rep(g, i).scale(om[i - 1]) for i in range(1, n)]
    return VinbergPoint(tuple(b), tuple(M))


def chi_plus(v: VinbergPoint) -> CharPoint:
    return CharPoint(v.b, tuple(m.trace() for m in v.M))


# -- the section --------------------------------------------------------------


def _root_element(field, n, i, c) -> SeriesMatrix:
    """x_i(c) = Id + c E_{i,i+1}, i counted from 1."""
    one = LaurentSeries.const(field, 1)
    zero = LaurentSeries.zero(field)
    rows = [[one if r == s else zero for s in range(n)] for r in range(n)]
    rows[i - 1][i] = c
    return SeriesMatrix.from_rows(rows)


def reflection_rep(field, n, i) -> SeriesMatrix:
    """Representative n_i: the block [[0, -1], [1, 0]] on coordinates i, i+1."""
    one = LaurentSeries.const(field, 1)
    zero = LaurentSeries.zero(field)
    rows = [[one if r == s else zero for s in range(n)] for r in range(n)]
    rows[i - 1][i - 1] = zero
    rows[i][i] = zero
    rows[i - 1][i] = -one
    rows[i][i - 1] = one
    return SeriesMatrix.from_rows(rows)


def weyl_rep(field, w: WeylElement) -> SeriesMatrix:
    """Product of the n_i along the canonical reduced word of w."""
    g = SeriesMatrix.identity(field, w.n)
    for i in w.reduced_word():
        g = g @ reflection_rep(field, w.n, i)
    return g


def epsilon(a: Sequence[LaurentSeries], order: Sequence[int] | None = None) -> SeriesMatrix:
    """prod_i x_i(a_i) n_i, factors taken in ``order`` (default 1, 2, ..., r)."""
    field = a[0].field
    n = len(a) + 1
    order = tuple(order) if order is not None else tuple(range(1, n))
    if sorted(order) != list(range(1, n)):
        raise ValidationError(f"order must be a permutation of 1..{n - 1}")
    g = SeriesMatrix.identity(field, n)
    for i in order:
        g = g @ _root_element(field, n, i, a[i - 1]) @ reflection_rep(field, n, i)
    return g


def psi(b: Sequence[LaurentSeries]) -> VinbergPoint:
    """The point of the closed torus with alpha_i-coordinates b_i."""
    n = len(b) + 1
    M = []
    for k in range(1, n):
        M.append(SeriesMatrix.diag([monomial(b, k, _weight_gap(n, k, S)) for S in combinations(range(n), k)]))
    return VinbergPoint(tuple(b), tuple(M))


def idempotent_e_empty(rd: RootDatum, field) -> VinbergPoint:
    return psi([LaurentSeries.zero(field)] * rd.rank)


def group_point(g: SeriesMatrix) -> VinbergPoint:
    """The point (1, g)."""
    one = LaurentSeries.const(g.field, 1)
    return embed([one] * g.rows, g)


def steinberg_section(c: CharPoint, order: Sequence[int] | None = None) -> VinbergPoint:
    """epsilon(a) . psi_b; every M_k is a polynomial in (b, a), no division."""
    return group_point(epsilon(c.a, order)) * psi(c.b)


def verify_section(c: CharPoint) -> bool:
    return chi_plus(steinberg_section(c)).agrees(c)


# -- equivariance -------------------------------------------------------------


def central_action(z: Sequence[LaurentSeries], c: CharPoint, prec: int = DEFAULT_HORIZON) -> CharPoint:
    """z^n acting on the base: b_i -> alpha_i(z)^n b_i, a_i -> omega_i(z)^n a_i."""
    n = c.n
    al = _root_values(z, prec)
    om = _omega_values(z)
    return CharPoint(tuple(x**n * y for x, y in zip(al, c.b)),
                     tuple(x**n * y for x, y in zip(om, c.a)))


def _twist_torus(z, prec) -> list[LaurentSeries]:
    """Torus element tau of SL_n with tau_1 / tau_{j+1} = omega_j(z)^n.

    Conjugating x_1(a_1) n_1 ... x_r(a_r) n_r by tau scales a_j by
    (alpha_1 + ... + alpha_j)(tau) = tau_1 / tau_{j+1}.
    """
    n = len(z)
    om = _omega_values(z)
    first = LaurentSeries.const(z[0].field, 1)
    for s in om:
        first = first * s
    return [first] + [first * (s**n).inv(prec) for s in om]


def twisted_section(z, c: CharPoint, prec: int = DEFAULT_HORIZON) -> VinbergPoint:
    """z^n . psi^-1 . section(c) . psi, psi the torus twist attached to z."""
    n = c.n
    lam = _twist_torus(z, prec)
    lam_inv = [x.inv(prec) for x in lam]
    om = _omega_values(z)
    al = _root_values(z, prec)
    base = steinberg_section(c)
    M = []
    for i in range(1, n):
        D = fundamental_rep(SeriesMatrix.diag(lam), i)
        Dinv = fundamental_rep(SeriesMatrix.diag(lam_inv), i)
        M.append((D @ base.M[i - 1] @ Dinv).scale(om[i - 1] ** n))
    b = tuple(x**n * y for x, y in zip(al, base.b))
    return VinbergPoint(b, tuple(M))


def equivariance_check(z: Sequence[LaurentSeries], c: CharPoint, prec: int = DEFAULT_HORIZON) -> bool:
    if len(z) != c.n:
        raise ValidationError(f"z must have {c.n} entries")
    det = LaurentSeries.const(c.field, 1)
    for x in z:
        det = det * x
    if not det.agrees(LaurentSeries.const(c.field, 1)):
        raise ValidationError("z must lie in the torus of SL_n")
    lhs = steinberg_section(central_action(z, c, prec))
    return lhs.agrees(twisted_section(z, c, prec))


# -- centralizers -------------------------------------------------------------


def centralizer_system(v: VinbergPoint) -> SeriesMatrix:
    """Columns: the commutators [d Lambda^i(X), M_i] for X in the sl_n basis."""
    n = v.n
    cols = []
    for lab in sl_basis_labels(n):
        X = sl_basis_matrix(lab, v.field, n)
        col = []
        for i in range(1, n):
            dX = wedge_derivative(X, i)
            Mi = v.M[i - 1]
            col.extend((dX @ Mi - Mi @ dX).entries)
        cols.append(col)
    rows = len(cols[0])
    return SeriesMatrix(rows, len(cols), [cols[j][r] for r in range(rows) for j in range(len(cols))])


@certified
def centralizer_dim(v: VinbergPoint, prec: int = DEFAULT_HORIZON) -> int:
    """Dimension of the centralizer in sl_n.

    Over a finite field this is the dimension of the linear solution space,
    which can exceed the group-scheme dimension in small characteristic.
    """
    return centralizer_system(v).kernel_dim(prec)


def is_regular(v: VinbergPoint) -> bool:
    return centralizer_dim(v) == v.rank


# -- discriminants ------------------------------------------------------------


def _sign(rd_n):
    return -1 if (rd_n * (rd_n - 1) // 2) % 2 else 1


def _root_monomial(b, i, j):
    """b^alpha for alpha = e_i - e_j: b_i b_{i+1} ... b_{j-1}."""
    acc = LaurentSeries.const(b[0].field, 1)
    for k in range(i, j):
        acc = acc * b[k]
    return acc


def discriminant_torus(z: Sequence[LaurentSeries], t: Sequence[LaurentSeries], prec: int = DEFAULT_HORIZON):
    """2 rho(z) prod_{alpha in R} (1 - alpha(t)) at the torus point (z, t)."""
    n = len(t)
    F = t[0].field
    one = LaurentSeries.const(F, 1)
    acc = one
    t_inv = [x.inv(prec) for x in t]
    z_inv = [x.inv(prec) for x in z]
    for i in range(n):
        for j in range(i + 1, n):
            acc = acc * (z[i] * z_inv[j])
            acc = acc * (one - t[i] * t_inv[j]) * (one - t[j] * t_inv[i])
    return acc


def discriminant_psi(b: Sequence[LaurentSeries]) -> LaurentSeries:
    """(-1)^{|R+|} prod_{alpha > 0} (1 - b^alpha)^2 on the closed torus psi_b."""
    n = len(b) + 1
    one = LaurentSeries.const(b[0].field, 1)
    acc = one
    for i in range(n):
        for j in range(i + 1, n):
            f = one - _root_monomial(b, i, j)
            acc = acc * f * f
    return acc if _sign(n) > 0 else -acc


def discriminant_vt(b: Sequence[LaurentSeries], t: Sequence[LaurentSeries], prec: int = DEFAULT_HORIZON):
    """Discriminant at the point (1, t) . psi_b of the closed torus monoid.

    Equals (-1)^{|R+|} prod_{alpha > 0} (b^alpha - alpha(t))^2 / alpha(t).
    """
    n = len(t)
    acc = LaurentSeries.const(t[0].field, 1)
    for i in range(n):
        for j in range(i + 1, n):
            at = t[i] * t[j].inv(prec)
            f = _root_monomial(b, i, j) - at
            acc = acc * f * f * at.inv(prec)
    return acc if _sign(n) > 0 else -acc


def vt_point(b: Sequence[LaurentSeries], t: Sequence[LaurentSeries]) -> VinbergPoint:
    one = LaurentSeries.const(t[0].field, 1)
    return embed([one] * len(t), SeriesMatrix.diag(list(t))) * psi(b)


@lru_cache(maxsize=None)
def _base_discriminant_poly(n: int):
    """Coefficient table of the discriminant on the base as a polynomial in (b, a)."""
    bs = sympy.symbols(f"b1:{n}")
    as_ = sympy.symbols(f"a1:{n}")
    x = sympy.Symbol("x")
    P = x**n
    for k in range(1, n + 1):
        mk = sympy.Integer(1)
        for j, e in enumerate(monomial_exponents(n, k), start=1):
            mk *= bs[j - 1] ** e
        ak = as_[k - 1] if k < n else sympy.Integer(1)
        P += (-1) ** k * mk * ak * x ** (n - k)
    D = sympy.discriminant(sympy.Poly(P, x))
    denom = sympy.Integer(1)
    for j in range(1, n):
        denom *= bs[j - 1] ** ((n - j) * (n - 1 - j))
    q, r = sympy.div(sympy.Poly(D, *bs, *as_), sympy.Poly(denom, *bs, *as_))
    if not r.is_zero:
        raise AssertionError("discriminant not divisible by the expected monomial")  # pragma: no cover
    q = q * _sign(n)
    return tuple((tuple(int(e) for e in mon), int(c)) for mon, c in q.terms())


def discriminant_base(c: CharPoint) -> LaurentSeries:
    """Extended discriminant as a function on the base (b, a)."""
    F = c.field
    coords = c.b + c.a
    acc = LaurentSeries.zero(F)
    for mon, coef in _base_discriminant_poly(c.n):
        term = LaurentSeries.const(F, coef)
        for x, e in zip(coords, mon):
            if e:
                term = term * x**e
        acc = acc + term
    return acc


# -- nilpotent cone -------------------------------------------------------------


def weyl_idempotent(field, w: WeylElement) -> VinbergPoint:
    """The point w . e_empty, w lifted through the n_i."""
    return group_point(weyl_rep(field, w)) * psi([LaurentSeries.zero(field)] * (w.n - 1))


def coxeter_nilpotent(field, w: WeylElement) -> VinbergPoint:
    """Section at c = 0 with factors in the order of a reduced word of w."""
    n = w.n
    if w.length != n - 1 or w.support() != frozenset(range(1, n)):
        raise ValidationError(f"{w.to_json()} is not a Coxeter element")
    zero = LaurentSeries.zero(field)
    c = CharPoint(tuple([zero] * (n - 1)), tuple([zero] * (n - 1)))
    return steinberg_section(c, order=w.reduced_word())


def hodge_dual(v: VinbergPoint) -> SeriesMatrix:
    """For n = 3: M_2 transported to the standard representation.

    Lambda^2 of the standard representation is its dual, so the transpose
    of the transported matrix conjugates like M_1.
    """
    if v.n != 3:
        raise ValidationError("only implemented for n = 3")
    F = v.field
    one = LaurentSeries.const(F, 1)
    zero = LaurentSeries.zero(F)
    # e1^e2 -> e3*, e1^e3 -> -e2*, e2^e3 -> e1*
    S = SeriesMatrix.from_rows([[zero, zero, one], [zero, -one, zero], [one, zero, zero]])
    return (S @ v.M[1] @ S.inverse()).transpose()


def nilpotent_invariants(v: VinbergPoint) -> tuple:
    """Conjugation invariants separating the n = 3 regular nilpotent components.

    Returns the ranks of M_1, N_2, of their images together and of their
    coimages together, N_2 being M_2 transported to the standard representation.
    """
    N2 = hodge_dual(v)
    M1 = v.M[0]
    A, B = M1.to_rows(), N2.to_rows()
    images = SeriesMatrix.from_rows([ra + rb for ra, rb in zip(A, B)])
    coimages = SeriesMatrix.from_rows(A + B)
    return (M1.rank(), N2.rank(), images.rank(), coimages.rank())


def nilcone_report(n: int, field) -> dict:
    rd = RootDatum(n)
    cox = coxeter_elements(rd)
    cent = {}
    for w in rd.weyl_group():
        if w.support() == frozenset(range(1, n)):
            cent[w] = centralizer_dim(weyl_idempotent(field, w))
    regular = {w for w, d in cent.items() if d == rd.rank}
    separated = None
    if n == 3:
        separated = len({nilpotent_invariants(coxeter_nilpotent(field, w)) for w in cox}) == len(cox)
    return {
        "n": n,
        "dim_group_plus": rd.dim_group + rd.rank,
        "dim_nilcone": rd.dim_group + rd.rank - 2 * rd.rank,
        "components": len(cox),
        "coxeter_elements": [w.to_json() for w in cox],
        "regular_full_support": sorted(w.to_json() for w in regular),
        "coxeter_sections_regular": regular == set(cox),
        "stratum_dim_coxeter": strata_dim(rd, (), cox[0]),
        "components_separated": separated,
    }
