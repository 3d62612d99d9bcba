"""Truncated Laurent series in one uniformizer ``pi`` with a precision horizon.

A series stores its nonzero coefficients below ``horizon``; everything at
exponents ``>= horizon`` is unknown.  ``horizon = math.inf`` marks an exact
(finitely supported) series, i.e. a Laurent polynomial, for which equality
with zero is decidable.
"""

from __future__ import annotations

import functools
import math
from typing import Iterable

from ..errors import PrecisionExhausted, ValidationError
from .fields import Field

EXACT = math.inf
DEFAULT_HORIZON = 32


class LaurentSeries:
    __slots__ = ("field", "coeffs", "horizon")

    def __init__(self, field: Field, coeffs: dict | None = None, horizon=EXACT):
        if horizon != EXACT:
            if isinstance(horizon, float):
                raise ValidationError("horizon must be an integer or EXACT")
            horizon = int(horizon)
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                if e < horizon and not field.is_zero(c):
                    clean[int(e)] = c
        self.field = field
        self.coeffs = clean
        self.horizon = horizon

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field, horizon=EXACT):
        return cls(field, {}, horizon)

    @classmethod
    def const(cls, field, c, horizon=EXACT):
        return cls(field, {0: field.coerce(c)}, horizon)

    @classmethod
    def monomial(cls, field, c, k: int, horizon=EXACT):
        return cls(field, {k: field.coerce(c)}, horizon)

    @classmethod
    def pi(cls, field, k: int = 1):
        return cls(field, {k: field.one})

    @classmethod
    def from_list(cls, field, values: Iterable, start: int = 0, horizon=EXACT):
        return cls(field, {start + i: field.coerce(v) for i, v in enumerate(values)}, horizon)

    def _new(self, coeffs, horizon):
        out = LaurentSeries.__new__(LaurentSeries)
        out.field = self.field
        out.coeffs = coeffs
        out.horizon = horizon
        return out

    def _lift(self, other):
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise ValidationError("series over different fields")
            return other
        return LaurentSeries(self.field, {0: self.field.coerce(other)})

    # -- inspection ---------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.horizon == EXACT

    def assert_exact(self) -> LaurentSeries:
        """Declare the stored coefficients to be the whole series."""
        return self._new(dict(self.coeffs), EXACT)

    def valuation(self):
        """Least exponent with nonzero coefficient; ``math.inf`` for exact zero.

        Raises PrecisionExhausted when nothing below the horizon is nonzero and
        the series is not exact.
        """
        if self.coeffs:
            return min(self.coeffs)
        if self.is_exact:
            return math.inf
        raise PrecisionExhausted(f"series indistinguishable from zero below {self.horizon}")

    def val_lower_bound(self):
        return min(self.coeffs) if self.coeffs else self.horizon

    def val_at_least(self, m: int) -> bool:
        if any(e < m for e in self.coeffs):
            return False
        if m > self.horizon:
            raise PrecisionExhausted(f"cannot decide val >= {m} below horizon {self.horizon}")
        return True

    def is_zero(self) -> bool:
        """Exact-zero test; undetermined series raise PrecisionExhausted."""
        if self.coeffs:
            return False
        if self.is_exact:
            return True
        raise PrecisionExhausted("zero test undecidable below horizon")

    def looks_zero(self) -> bool:
        """True if no nonzero coefficient below the horizon (exact or not)."""
        return not self.coeffs

    def coefficient(self, e: int):
        if e >= self.horizon:
            raise PrecisionExhausted(f"coefficient {e} beyond horizon {self.horizon}")
        return self.coeffs.get(e, self.field.zero)

    def leading(self):
        v = self.valuation()
        if v == math.inf:
            raise ZeroDivisionError("zero series has no leading coefficient")
        return v, self.coeffs[v]

    def is_integral(self) -> bool:
        return all(e >= 0 for e in self.coeffs) and self.horizon >= 0

    def residue(self):
        """Constant coefficient of an integral series."""
        if not self.is_integral():
            raise ValueError("series is not integral")
        return self.coefficient(0)

    def support(self):
        return sorted(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        F = self.field
        return self._new({e: F.neg(c) for e, c in self.coeffs.items()}, self.horizon)

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        h = min(self.horizon, other.horizon)
        out = {e: c for e, c in self.coeffs.items() if e < h}
        for e, c in other.coeffs.items():
            if e >= h:
                continue
            if e in out:
                s = F.add(out[e], c)
                if F.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return self._new(out, h)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            c = self.field.coerce(other)
            if self.field.is_zero(c):
                return self._new({}, EXACT)
            F = self.field
            return self._new({e: F.mul(a, c) for e, a in self.coeffs.items()}, self.horizon)
        other = self._lift(other)
        F = self.field
        if (not self.coeffs and self.is_exact) or (not other.coeffs and other.is_exact):
            return self._new({}, EXACT)
        h = min(self.horizon + other.val_lower_bound(), other.horizon + self.val_lower_bound())
        out: dict = {}
        zero = F.zero
        mul, add = F.mul, F.add
        b_items = list(other.coeffs.items())
        for i, a in self.coeffs.items():
            for j, b in b_items:
                e = i + j
                if e < h:
                    out[e] = add(out.get(e, zero), mul(a, b))
        out = {e: c for e, c in out.items() if not F.is_zero(c)}
        return self._new(out, h)

    __rmul__ = __mul__

    def scale(self, c):
        return self * c

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by pi^k."""
        return self._new({e + k: c for e, c in self.coeffs.items()}, self.horizon + k)

    def inv(self, prec: int = DEFAULT_HORIZON) -> LaurentSeries:
        """Multiplicative inverse to relative precision ``prec``.

        An input with finite horizon N and valuation v carries N - v known
        coefficients of its unit part, which caps the result's precision.
        """
        v = self.valuation()
        if v == math.inf:
            raise ZeroDivisionError("inverse of the zero series")
        F = self.field
        if self.is_exact and len(self.coeffs) == 1:
            return self._new({-v: F.inv(self.coeffs[v])}, EXACT)
        rp = prec if self.is_exact else min(prec, self.horizon - v)
        c = [self.coeffs.get(v + k, F.zero) for k in range(rp)]
        c0inv = F.inv(c[0])
        d = [c0inv]
        for k in range(1, rp):
            acc = F.zero
            for j in range(1, k + 1):
                if c[j]:
                    acc = F.add(acc, F.mul(c[j], d[k - j]))
            d.append(F.neg(F.mul(c0inv, acc)))
        return self._new({k - v: dk for k, dk in enumerate(d) if not F.is_zero(dk)}, rp - v)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inv()
        return self * self.field.inv(self.field.coerce(other))

    def div(self, other: LaurentSeries, prec: int = DEFAULT_HORIZON):
        return self * other.inv(prec)

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = LaurentSeries(self.field, {0: self.field.one})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def power(self, k: int, prec: int = DEFAULT_HORIZON):
        if k < 0:
            return self.inv(prec) ** (-k)
        return self**k

    def exact_div(self, other: LaurentSeries) -> LaurentSeries:
        """Quotient in the Laurent polynomial ring; both sides must be exact."""
        if not (self.is_exact and other.is_exact):
            raise ValueError("exact_div needs exact series")
        if not other.coeffs:
            raise ZeroDivisionError("exact division by zero")
        if not self.coeffs:
            return self._new({}, EXACT)
        F = self.field
        va, vb = min(self.coeffs), min(other.coeffs)
        A = {e - va: c for e, c in self.coeffs.items()}
        B = {e - vb: c for e, c in other.coeffs.items()}
        db = max(B)
        lead_inv = F.inv(B[db])
        quot = {}
        while A:
            da = max(A)
            if da < db:
                raise ValueError("not divisible")
            t = F.mul(A[da], lead_inv)
            shift = da - db
            quot[shift] = t
            for e, c in B.items():
                k = e + shift
                s = F.sub(A.get(k, F.zero), F.mul(t, c))
                if F.is_zero(s):
                    A.pop(k, None)
                else:
                    A[k] = s
        return self._new({e + va - vb: c for e, c in quot.items()}, EXACT)

    def truncate(self, horizon: int) -> LaurentSeries:
        h = min(self.horizon, horizon)
        return self._new({e: c for e, c in self.coeffs.items() if e < h}, h)

    def ramify(self, e: int) -> LaurentSeries:
        """Substitute pi -> pi^e (a totally ramified base change)."""
        if e < 1:
            raise ValueError("ramification index must be positive")
        return self._new({k * e: c for k, c in self.coeffs.items()}, self.horizon * e)

    def map_coefficients(self, field: Field, fn) -> LaurentSeries:
        return LaurentSeries(field, {e: fn(c) for e, c in self.coeffs.items()}, self.horizon)

    # -- comparison ---------------------------------------------------------

    def agrees(self, other) -> bool:
        """Equal at every exponent below the smaller horizon."""
        return (self - self._lift(other)).looks_zero()

    def __eq__(self, other):
        if isinstance(other, (LaurentSeries, int)) or hasattr(other, "numerator"):
            try:
                return self.agrees(other)
            except ValidationError:
                return False
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        F = self.field
        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(f"{F.format(self.coeffs[e])}*pi^{e}" for e in sorted(self.coeffs))
        tail = "" if self.is_exact else f" + O(pi^{self.horizon})"
        return f"LaurentSeries({body}{tail})"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        F = self.field
        return {
            "horizon": None if self.is_exact else self.horizon,
            "coeffs": [[e, F.format(self.coeffs[e])] for e in sorted(self.coeffs)],
        }

    @classmethod
    def from_json(cls, field: Field, doc) -> LaurentSeries:
        if isinstance(doc, (int, str)):
            return cls(field, {0: field.coerce(doc)})
        if not isinstance(doc, dict) or "coeffs" not in doc:
            raise ValidationError(f"bad series document: {doc!r}")
        horizon = doc.get("horizon")
        horizon = EXACT if horizon is None else horizon
        coeffs = {}
        try:
            for e, c in doc["coeffs"]:
                coeffs[int(e)] = field.coerce(str(c))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad series coefficients: {doc['coeffs']!r}") from exc
        return cls(field, coeffs, horizon)


def series(field: Field, value, horizon=EXACT) -> LaurentSeries:
    """Small builder: ``series(F, {0: 1, 1: 1})`` or ``series(F, 3)``."""
    if isinstance(value, LaurentSeries):
        return value
    if isinstance(value, dict):
        return LaurentSeries(field, {e: field.coerce(c) for e, c in value.items()}, horizon)
    return LaurentSeries(field, {0: field.coerce(value)}, horizon)


HORIZON_LADDER = (32, 64, 128, 256)


def certified(fn):
    """Rerun ``fn(..., prec=N)`` at doubled working precision on PrecisionExhausted."""
    @functools.wraps(fn)
    def wrapper(*args, prec=None, **kwargs):
        if prec is not None:
            return fn(*args, prec=prec, **kwargs)
        last = None
        for N in HORIZON_LADDER:
            try:
                return fn(*args, prec=N, **kwargs)
            except PrecisionExhausted as exc:
                last = exc
        raise last

    return wrapper
