"""Exact coefficient fields: the rationals and finite fields F_q, q = p^e.

Field objects carry the arithmetic; elements are plain Python values
(``Fraction`` for the rationals, ``int`` residues for finite fields) so that
series and matrix code stays cheap.  Elements of F_{p^e} are encoded as the
integer whose base-p digits are the coefficients of the representing
polynomial, constant term first; F_p sits inside F_{p^e} as the digits
0..p-1.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

from ..errors import ValidationError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface.  Subclasses are immutable and compare by ``tag``."""

    tag: str
    characteristic: int
    order: int | None

    def __eq__(self, other):
        return isinstance(other, Field) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"<Field {self.tag}>"

    def __reduce__(self):
        return (get_field, (self.tag,))

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero


class RationalField(Field):
    tag = "rational"
    characteristic = 0
    order = None

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_zero(self, a):
        return a == 0

    def parse(self, s: str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {s!r}") from exc

    def format(self, a) -> str:
        return str(a)

    def random(self, rng: random.Random, bound: int = 9):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, 3)
        return Fraction(num, den)

    def random_nonzero(self, rng, bound=9):
        while True:
            x = self.random(rng, bound)
            if x:
                return x


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.tag = f"fq:{p}"

    def from_int(self, n):
        return n % self.p

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, k):
        if k < 0:
            return pow(self.inv(a), -k, self.p)
        return pow(a, k, self.p)

    def is_zero(self, a):
        return a == 0

    def parse(self, s: str):
        s = s.strip()
        if "/" in s:
            return self.coerce(Fraction(s))
        try:
            return int(s) % self.p
        except ValueError as exc:
            raise ValidationError(f"not a residue: {s!r}") from exc

    def format(self, a) -> str:
        return str(a)

    def random(self, rng, bound=None):
        return rng.randrange(self.p)

    def random_nonzero(self, rng, bound=None):
        return rng.randrange(1, self.p)

    def elements(self):
        return range(self.p)


class ExtensionField(Field):
    """F_{p^e} built on a primitive modulus found by search; log tables."""

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime")
        if e < 2:
            raise ValidationError("use PrimeField for e = 1")
        q = p**e
        if q > 1 << 16:
            raise ValidationError(f"F_{q} is too large for table arithmetic")
        self.p, self.e, self.q = p, e, q
        self.characteristic = p
        self.order = q
        self.tag = f"fq:{p}:{e}"
        self._digits = [tuple((a // p**i) % p for i in range(e)) for a in range(q)]
        self.modulus = self._find_primitive()
        self._build_tables()

    def _encode(self, digits):
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _mul_by_x(self, digits, modulus):
        # modulus: monic, lower coefficients c_0..c_{e-1}; x^e = -sum c_i x^i
        p = self.p
        top = digits[-1]
        shifted = (0,) + digits[:-1]
        return tuple((s - top * c) % p for s, c in zip(shifted, modulus))

    def _find_primitive(self):
        p, e, q = self.p, self.e, self.q
        for low in itertools.product(range(p), repeat=e):
            if low[0] == 0:
                continue
            x = tuple(1 if i == 1 else 0 for i in range(e))
            cur = x
            seen_one = False
            for k in range(1, q - 1):
                if cur == tuple(1 if i == 0 else 0 for i in range(e)):
                    seen_one = True
                    break
                cur = self._mul_by_x(cur, low)
            if not seen_one and cur == tuple(1 if i == 0 else 0 for i in range(e)):
                return low
        raise RuntimeError("no primitive polynomial found")  # pragma: no cover

    def _build_tables(self):
        q = self.q
        exp = [0] * (2 * q)
        log = [0] * q
        cur = tuple(1 if i == 0 else 0 for i in range(self.e))
        for k in range(q - 1):
            a = self._encode(cur)
            exp[k] = a
            log[a] = k
            cur = self._mul_by_x(cur, self.modulus)
        for k in range(q - 1, 2 * q):
            exp[k] = exp[k - (q - 1)]
        self._exp, self._log = exp, log

    def from_int(self, n):
        return n % self.p

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return self.div(self.from_int(x.numerator), self.from_int(x.denominator))
        return int(x) % self.p

    def add(self, a, b):
        da, db = self._digits[a], self._digits[b]
        return self._encode(tuple((x + y) % self.p for x, y in zip(da, db)))

    def neg(self, a):
        return self._encode(tuple(-x % self.p for x in self._digits[a]))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a, k):
        if a == 0:
            if k <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def is_zero(self, a):
        return a == 0

    def parse(self, s):
        try:
            v = int(s.strip())
        except ValueError as exc:
            raise ValidationError(f"not an element code: {s!r}") from exc
        if not 0 <= v < self.q:
            raise ValidationError(f"element code out of range: {v}")
        return v

    def format(self, a):
        return str(a)

    def random(self, rng, bound=None):
        return rng.randrange(self.q)

    def random_nonzero(self, rng, bound=None):
        return rng.randrange(1, self.q)

    def elements(self):
        return range(self.q)


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int, e: int = 1) -> Field:
    return PrimeField(p) if e == 1 else ExtensionField(p, e)


def get_field(tag: str) -> Field:
    """Parse ``rational`` or ``fq:<p>[:<e>]``."""
    tag = tag.strip()
    if tag in ("rational", "QQ", "Q"):
        return QQ
    parts = tag.split(":")
    if parts[0] != "fq" or len(parts) not in (2, 3):
        raise ValidationError(f"unknown field tag {tag!r}")
    try:
        p = int(parts[1])
        e = int(parts[2]) if len(parts) == 3 else 1
    except ValueError as exc:
        raise ValidationError(f"unknown field tag {tag!r}") from exc
    return GF(p, e)
