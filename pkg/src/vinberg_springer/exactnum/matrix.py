"""Dense matrices of Laurent series.

Determinants and characteristic polynomials use Berkowitz's division-free
algorithm, so no precision is lost to pivot inversion.  Rank uses
fraction-free (Bareiss) elimination when every entry is exact, and
valuation-pivot elimination otherwise.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Sequence

from ..errors import PrecisionExhausted, ValidationError
from .fields import Field
from .series import DEFAULT_HORIZON, LaurentSeries


class SeriesMatrix:
    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows: int, cols: int, entries: Sequence[LaurentSeries]):
        if rows <= 0 or cols <= 0:
            raise ValidationError("matrix dimensions must be positive")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValidationError(f"expected {rows * cols} entries, got {len(entries)}")
        field = entries[0].field
        if any(e.field != field for e in entries):
            raise ValidationError("matrix entries over different fields")
        self.rows, self.cols, self.entries, self.field = rows, cols, entries, field

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentSeries]]):
        r = len(rows)
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise ValidationError("ragged rows")
        return cls(r, c, [x for row in rows for x in row])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int | None = None):
        cols = rows if cols is None else cols
        z = LaurentSeries.zero(field)
        return cls(rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int):
        return cls.diag([LaurentSeries.const(field, 1)] * n)

    @classmethod
    def diag(cls, values: Sequence[LaurentSeries]):
        n = len(values)
        field = values[0].field
        z = LaurentSeries.zero(field)
        return cls(n, n, [values[i] if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def from_values(cls, field: Field, rows):
        """Build from nested lists of scalars or series."""
        def conv(x):
            return x if isinstance(x, LaurentSeries) else LaurentSeries.const(field, x)
        return cls.from_rows([[conv(x) for x in row] for row in rows])

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def is_exact(self):
        return all(e.is_exact for e in self.entries)

    @property
    def horizon(self):
        return min(e.horizon for e in self.entries)

    def _square(self):
        if not self.is_square:
            raise ValidationError("square matrix required")
        return self.rows

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: SeriesMatrix):
        self._same_shape(other)
        return SeriesMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: SeriesMatrix):
        self._same_shape(other)
        return SeriesMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return SeriesMatrix(self.rows, self.cols, [-a for a in self.entries])

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValidationError("shape mismatch")

    def __matmul__(self, other: SeriesMatrix):
        if self.cols != other.rows:
            raise ValidationError("shape mismatch in product")
        n, m, p = self.rows, self.cols, other.cols
        out = []
        A, B = self.entries, other.entries
        zero = LaurentSeries.zero(self.field)
        for i in range(n):
            for j in range(p):
                acc = zero
                for k in range(m):
                    a = A[i * m + k]
                    if not a.coeffs and a.is_exact:
                        continue
                    b = B[k * p + j]
                    if not b.coeffs and b.is_exact:
                        continue
                    acc = acc + a * b
                out.append(acc)
        return SeriesMatrix(n, p, out)

    def scale(self, s):
        return SeriesMatrix(self.rows, self.cols, [e * s for e in self.entries])

    def map(self, fn):
        return SeriesMatrix(self.rows, self.cols, [fn(e) for e in self.entries])

    def transpose(self):
        return SeriesMatrix(self.cols, self.rows,
                            [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return SeriesMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def __pow__(self, k: int):
        n = self._square()
        if k < 0:
            return self.inverse() ** (-k)
        result = SeriesMatrix.identity(self.field, n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self):
        n = self._square()
        acc = LaurentSeries.zero(self.field)
        for i in range(n):
            acc = acc + self[i, i]
        return acc

    # -- determinants -------------------------------------------------------

    def charpoly(self) -> list[LaurentSeries]:
        """Coefficients of det(x Id - self), constant term first."""
        n = self._square()
        F = self.field
        one = LaurentSeries.const(F, 1)
        zero = LaurentSeries.zero(F)
        M = self.to_rows()
        # Berkowitz: peel the trailing row/column off the leading k x k block.
        poly = [one, -M[0][0]]  # highest degree first
        for k in range(1, n):
            R = [M[k][j] for j in range(k)]
            C = [M[i][k] for i in range(k)]
            a = M[k][k]
            col = [one, -a]
            vec = C
            for _ in range(k):
                s = zero
                for r, v in zip(R, vec):
                    s = s + r * v
                col.append(-s)
                vec = [sum((M[i][j] * vec[j] for j in range(k)), zero) for i in range(k)]
            new = []
            for i in range(k + 2):
                s = zero
                for j in range(min(i, k) + 1):
                    if i - j < len(col):
                        s = s + col[i - j] * poly[j]
                new.append(s)
            poly = new
        return list(reversed(poly))

    def det(self) -> LaurentSeries:
        n = self._square()
        c0 = self.charpoly()[0]
        return c0 if n % 2 == 0 else -c0

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> LaurentSeries:
        return self.submatrix(rows, cols).det()

    def adjugate(self) -> SeriesMatrix:
        n = self._square()
        if n == 1:
            return SeriesMatrix.identity(self.field, 1)
        idx = list(range(n))
        out = []
        for i in range(n):
            for j in range(n):
                rows = [r for r in idx if r != j]
                cols = [c for c in idx if c != i]
                m = self.minor(rows, cols)
                out.append(m if (i + j) % 2 == 0 else -m)
        return SeriesMatrix(n, n, out)

    def inverse(self, prec: int = DEFAULT_HORIZON) -> SeriesMatrix:
        d = self.det()
        adj = self.adjugate()
        if d.is_exact and d.coeffs == {0: self.field.one}:
            return adj
        return adj.scale(d.inv(prec))

    # -- valuations and rank ------------------------------------------------

    def min_valuation(self):
        """Least valuation over all entries; PrecisionExhausted if undecided."""
        best = math.inf
        undecided_floor = math.inf
        for e in self.entries:
            if e.coeffs:
                best = min(best, min(e.coeffs))
            elif not e.is_exact:
                undecided_floor = min(undecided_floor, e.horizon)
        if undecided_floor <= best and undecided_floor != math.inf:
            raise PrecisionExhausted("minimum valuation not certified below horizon")
        return best

    def is_integral(self):
        return all(e.is_integral() for e in self.entries)

    def residue(self) -> list[list]:
        return [[self[i, j].residue() for j in range(self.cols)] for i in range(self.rows)]

    def agrees(self, other: SeriesMatrix) -> bool:
        self._same_shape(other)
        return all(a.agrees(b) for a, b in zip(self.entries, other.entries))

    def rank(self, prec: int = DEFAULT_HORIZON) -> int:
        if self.is_exact:
            return _bareiss_rank(self.to_rows())
        return len(valuation_pivots(self, prec)[0])

    def kernel_dim(self, prec: int = DEFAULT_HORIZON) -> int:
        return self.cols - self.rank(prec)

    def ramify(self, e: int):
        return self.map(lambda s: s.ramify(e))

    def __repr__(self):
        return f"SeriesMatrix({self.rows}x{self.cols}, {self.to_rows()!r})"

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "entries": [e.to_json() for e in self.entries]}

    @classmethod
    def from_json(cls, field: Field, doc):
        try:
            rows, cols = int(doc["rows"]), int(doc["cols"])
            entries = [LaurentSeries.from_json(field, e) for e in doc["entries"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad matrix document: {exc}") from exc
        return cls(rows, cols, entries)


def _bareiss_rank(M: list[list[LaurentSeries]]) -> int:
    M = [list(r) for r in M]
    nrows, ncols = len(M), len(M[0])
    F = M[0][0].field
    prev = LaurentSeries.const(F, 1)
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if M[i][c].coeffs), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        p = M[r][c]
        for i in range(r + 1, nrows):
            mic = M[i][c]
            for j in range(c + 1, ncols):
                M[i][j] = (p * M[i][j] - mic * M[r][j]).exact_div(prev)
            M[i][c] = LaurentSeries.zero(F)
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def valuation_pivots(m: SeriesMatrix, prec: int = DEFAULT_HORIZON):
    """Gaussian elimination choosing a minimal-valuation pivot each step.

    Returns ``(pivot_valuations, residual_block)``.  Over the valuation ring
    the pivot valuations are the elementary divisors.  Raises
    PrecisionExhausted when the residual block cannot be certified zero.
    """
    M = m.to_rows()
    F = m.field
    rows = list(range(m.rows))
    cols = list(range(m.cols))
    vals = []
    while rows and cols:
        best = None
        floor = math.inf
        for i in rows:
            for j in cols:
                e = M[i][j]
                if e.coeffs:
                    v = min(e.coeffs)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                elif not e.is_exact:
                    floor = min(floor, e.horizon)
        if best is None:
            if floor == math.inf:
                break
            raise PrecisionExhausted("residual block not certified zero")
        if floor <= best[0]:
            raise PrecisionExhausted("pivot valuation not certified minimal")
        v, pi_, pj = best
        vals.append(v)
        pinv = M[pi_][pj].inv(prec)
        rows.remove(pi_)
        cols.remove(pj)
        for i in rows:
            f = M[i][pj]
            if not f.coeffs and f.is_exact:
                continue
            factor = f * pinv
            for j in cols:
                M[i][j] = M[i][j] - factor * M[pi_][j]
            M[i][pj] = LaurentSeries.zero(F)
    return vals, [[M[i][j] for j in cols] for i in rows]


def exterior_power(g: SeriesMatrix, k: int) -> SeriesMatrix:
    """Matrix of k x k minors in the lexicographic basis of k-subsets."""
    n = g._square()
    subsets = list(combinations(range(n), k))
    if k == 1:
        return g
    return SeriesMatrix(len(subsets), len(subsets),
                        [g.minor(S, T) for S in subsets for T in subsets])
