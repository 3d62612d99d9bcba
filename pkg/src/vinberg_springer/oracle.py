"""Brute-force point counts of SL_2 affine Springer fibers over F_q.

Points of the affine Grassmannian are written g = u(x) pi^nu with
nu = (m, -m) and x in F / pi^{2m} O, which parametrizes each Iwasawa cell
exactly.  For g in a cell,

    g^-1 gamma g = [[a - c x,  pi^{-2m}(b + (a - d) x - c x^2)],
                    [pi^{2m} c,  d + c x]]

and the point lies in X_gamma^lambda, lambda = (k, -k), iff the least
valuation of these entries is -k.  Requiring every entry to have valuation
at least -k bounds val(x) from below, so each cell is a finite window that
is searched digit by digit with pruning.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import sympy

from .errors import Unsupported, ValidationError, WindowNotSaturated
from .exactnum import GF, LaurentSeries, SeriesMatrix
from .repn import cartan_coweight
from .rootdata import Coweight

DEFAULT_Q_GRID = (3, 5, 7, 11)


@dataclass
class EnumerationReport:
    q: int
    depth: int
    lam: Coweight
    cell_counts: dict = field(default_factory=dict)  # m -> count for nu = (m, -m)
    certified: bool = True
    nodes: int = 0

    def total(self, depth: int | None = None) -> int:
        d = self.depth if depth is None else depth
        return sum(c for m, c in self.cell_counts.items() if abs(m) <= d)

    @property
    def saturated(self) -> bool:
        """True when the outermost shell of cells contributes no points."""
        return self.total(self.depth) == self.total(self.depth - 1)

    @property
    def empty(self) -> bool:
        return self.total() == 0

    def counts(self) -> dict:
        """(q, depth, nu) -> count, for every depth up to the enumerated one."""
        out = {}
        for d in range(self.depth + 1):
            for m, c in sorted(self.cell_counts.items()):
                if abs(m) <= d:
                    out[(self.q, d, (m, -m))] = c
        return out

    def table(self) -> list[dict]:
        return [{"q": self.q, "nu": [m, -m], "depth": self.depth, "count": c}
                for m, c in sorted(self.cell_counts.items())]

    def to_json(self):
        return {
            "q": self.q,
            "depth": self.depth,
            "lambda": self.lam.to_json(),
            "cells": self.table(),
            "total": self.total(),
            "saturated": self.saturated,
            "certified": self.certified,
        }


def _reduce_series(s: LaurentSeries, F) -> LaurentSeries:
    src = s.field
    if src == F:
        return s
    if src.characteristic == 0:
        return LaurentSeries(F, {e: F.coerce(c) for e, c in s.coeffs.items()}, s.horizon)
    raise ValidationError(f"cannot move coefficients from {src.tag} to {F.tag}")


def reduce_gamma(gamma: SeriesMatrix, F) -> SeriesMatrix:
    """Reduce a matrix over Q((pi)) with p-integral coefficients to F_q((pi))."""
    return gamma.map(lambda s: _reduce_series(s, F))


def _val(s: LaurentSeries):
    if s.coeffs:
        return min(s.coeffs)
    return math.inf if s.is_exact else s.horizon


def _has_coeff_below(s: LaurentSeries, bound) -> bool:
    return any(e < bound for e in s.coeffs)


class _CellSearch:
    def __init__(self, gamma: SeriesMatrix, k: int, m: int):
        self.F = gamma.field
        self.a, self.b = gamma[0, 0], gamma[0, 1]
        self.c, self.d = gamma[1, 0], gamma[1, 1]
        self.k, self.m = k, m
        self.amd = self.a - self.d
        self.vc = _val(self.c)
        self.vamd = _val(self.amd)
        self.nodes = 0
        self.gamma = gamma
        self.lam = Coweight([k, -k])

    def window(self):
        """Lowest exponent that x can carry, or None if the cell is impossible."""
        k, m = self.k, self.m
        if _has_coeff_below(self.c.shift(2 * m), -k):
            return None
        if self.vc != math.inf:
            lo = min(-k, _val(self.a)) - self.vc
        else:
            if self.vamd == math.inf:
                raise ValidationError("gamma is not regular semisimple")
            lo = min(2 * m - k, _val(self.b)) - self.vamd
        if lo == math.inf or lo == -math.inf:
            raise ValidationError("cannot bound the search window")
        return int(lo)

    def _entries(self, x: LaurentSeries):
        A = self.a - self.c * x
        D = self.d + self.c * x
        inner = self.b + self.amd * x - self.c * x * x
        return A, D, inner

    def _viable(self, x: LaurentSeries, j: int, vx) -> bool:
        """Prefix x (exponents < j) can still extend to a point."""
        k, m = self.k, self.m
        A, D, inner = self._entries(x)
        level_ad = self.vc + j
        if _has_coeff_below(A, min(level_ad, -k)) or _has_coeff_below(D, min(level_ad, -k)):
            return False
        lx = min(vx, j)
        level_b = min(self.vamd + j, self.vc + j + lx)
        return not _has_coeff_below(inner, min(level_b, 2 * m - k))

    def _leaf(self, x: LaurentSeries) -> bool:
        A, D, inner = self._entries(x)
        m = self.m
        conj = SeriesMatrix.from_rows([[A, inner.shift(-2 * m)], [self.c.shift(2 * m), D]])
        return cartan_coweight(conj) == self.lam

    def count(self) -> int:
        lo = self.window()
        if lo is None:
            return 0
        hi = 2 * self.m
        if lo >= hi:
            self.nodes += 1
            return int(self._leaf(LaurentSeries.zero(self.F)))
        digits = list(self.F.elements())
        total = 0
        # iterative DFS over digits x_lo, ..., x_{hi-1}
        stack = [(lo, {}, math.inf)]
        while stack:
            j, coeffs, vx = stack.pop()
            x = LaurentSeries(self.F, coeffs)
            self.nodes += 1
            if not self._viable(x, j, vx):
                continue
            if j == hi:
                total += int(self._leaf(x))
                continue
            for dgt in reversed(digits):
                if dgt == 0:
                    stack.append((j + 1, coeffs, vx))
                else:
                    nc = dict(coeffs)
                    nc[j] = dgt
                    stack.append((j + 1, nc, min(vx, j)))
        return total


def _count_cell(args):
    gamma, k, m = args
    search = _CellSearch(gamma, k, m)
    return m, search.count(), search.nodes


def enumerate_fiber(gamma: SeriesMatrix, lam: Coweight, q: int, depth: int, workers: int = 1) -> EnumerationReport:
    """Exact per-cell point counts of X_gamma^lambda over F_q for |m| <= depth."""
    if gamma.rows != 2:
        raise Unsupported("enumeration is implemented for SL_2 only")
    if not lam.is_dominant or not lam.is_integral:
        raise ValidationError("lambda must be an integral dominant coweight")
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    F = GF(*_prime_power(q))
    g = reduce_gamma(gamma, F)
    k = int(lam[0])
    jobs = [(g, k, m) for m in range(-depth, depth + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_count_cell, jobs))
    else:
        results = [_count_cell(j) for j in jobs]
    report = EnumerationReport(q=q, depth=depth, lam=lam)
    for m, count, nodes in sorted(results):
        report.cell_counts[m] = count
        report.nodes += nodes
    if not report.saturated:
        warnings.warn(f"q={q}: counts still change at depth {depth}", WindowNotSaturated, stacklevel=2)
    return report


def _prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise ValidationError(f"{q} is not a prime power")
            return p, e
    raise ValidationError(f"{q} is not a prime power")


# -- fitting -------------------------------------------------------------------


def fit_dimension(counts: dict, max_degree: int | None = None):
    """Degree of the lowest-degree polynomial through {q: count}, or None.

    The fit is accepted only with integer coefficients and a positive
    leading coefficient.
    """
    pts = sorted((int(q), int(c)) for q, c in counts.items())
    if not pts:
        return None
    if len({q for q, _ in pts}) != len(pts):
        raise ValidationError("repeated q values")
    top = len(pts) - 1 if max_degree is None else min(max_degree, len(pts) - 1)
    X = sympy.Symbol("q")
    for D in range(top + 1):
        P = sympy.Poly(sympy.interpolate(pts[:D + 1], X), X)
        if all(P.eval(q) == c for q, c in pts):
            coeffs = P.all_coeffs()
            if P.is_zero:
                return None
            if all(sympy.Integer(c) == c for c in coeffs) and coeffs[0] > 0:
                return P.degree()
            return None
    return None


@dataclass
class GridResult:
    reports: list
    fitted_dim: int | None
    method: str

    @property
    def empty(self):
        return all(r.empty for r in self.reports)

    @property
    def saturated(self):
        return all(r.saturated for r in self.reports)

    @property
    def certified(self):
        return all(r.certified for r in self.reports)

    def to_json(self):
        return {
            "fitted_dim": self.fitted_dim,
            "method": self.method,
            "empty": self.empty,
            "saturated": self.saturated,
            "certified": self.certified,
            "reports": [r.to_json() for r in self.reports],
        }


def oracle_dimension(gamma: SeriesMatrix, lam: Coweight, q_grid=DEFAULT_Q_GRID, depth: int = 4,
                     workers: int = 1) -> GridResult:
    """Enumerate over a grid of q and fit a dimension.

    Saturated grids fit the total counts.  Otherwise (fibers with
    infinitely many points) each cell is fitted separately and the largest
    degree is reported.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", WindowNotSaturated)
        reports = [enumerate_fiber(gamma, lam, q, depth, workers) for q in q_grid]
    if all(r.empty for r in reports):
        return GridResult(reports, None, "empty")
    if all(r.saturated for r in reports):
        return GridResult(reports, fit_dimension({r.q: r.total() for r in reports}), "total")
    best = None
    for m in sorted(reports[0].cell_counts):
        cell = {r.q: r.cell_counts[m] for r in reports}
        if not any(cell.values()):
            continue
        d = fit_dimension(cell)
        if d is None:
            return GridResult(reports, None, "cells")
        best = d if best is None else max(best, d)
    return GridResult(reports, best, "cells")
