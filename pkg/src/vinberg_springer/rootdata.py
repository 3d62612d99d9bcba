"""Type A_{n-1} root datum, coweights and Weyl group combinatorics.

Weyl group elements are permutations stored 0-indexed in one-line notation;
simple reflections are numbered 1..r with ``s_i`` swapping positions i and
i+1.  Products compose as functions: ``(u * v)(k) = u(v(k))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .errors import ValidationError


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class Coweight:
    """Cocharacter of the diagonal torus of SL_n, possibly rational."""

    coords: tuple

    def __init__(self, coords: Iterable):
        c = tuple(_frac(x) for x in coords)
        if len(c) < 1:
            raise ValidationError("empty coweight")
        if sum(c) != 0:
            raise ValidationError(f"coweight coordinates must sum to 0: {c}")
        object.__setattr__(self, "coords", c)

    @property
    def n(self):
        return len(self.coords)

    @property
    def is_integral(self):
        return all(x.denominator == 1 for x in self.coords)

    @property
    def is_dominant(self):
        return all(a >= b for a, b in zip(self.coords, self.coords[1:]))

    def dominant(self) -> Coweight:
        return Coweight(sorted(self.coords, reverse=True))

    def __add__(self, other: Coweight):
        return Coweight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: Coweight):
        return Coweight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return Coweight(-a for a in self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def minus_w0(self) -> Coweight:
        """-w0 applied: reverse and negate."""
        return Coweight(-a for a in reversed(self.coords))

    def to_json(self):
        return [int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}" for x in self.coords]

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, (list, tuple)):
            raise ValidationError(f"coweight must be a list: {doc!r}")
        try:
            return cls(doc)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad coweight {doc!r}") from exc

    def __repr__(self):
        return f"Coweight({self.to_json()})"

    @classmethod
    def zero(cls, n: int):
        return cls([0] * n)


class RootDatum:
    """Root datum of SL_n."""

    def __init__(self, n: int):
        if n < 2:
            raise ValidationError("n must be at least 2")
        self.n = n
        self.rank = n - 1

    def __eq__(self, other):
        return isinstance(other, RootDatum) and other.n == self.n

    def __hash__(self):
        return hash(("A", self.n))

    def __repr__(self):
        return f"RootDatum(A{self.rank})"

    def _e(self, i, j=None):
        v = [0] * self.n
        v[i] += 1
        if j is not None:
            v[j] -= 1
        return tuple(v)

    @cached_property
    def simple_roots(self):
        return [self._e(i, i + 1) for i in range(self.rank)]

    @cached_property
    def positive_roots(self):
        """Pairs (i, j), i < j, ordered by height then i."""
        pairs = [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]
        return sorted(pairs, key=lambda p: (p[1] - p[0], p[0]))

    @cached_property
    def fundamental_weights(self):
        # omega_i = e_1 + ... + e_i, taken modulo the determinant character
        return [tuple(1 if k <= i else 0 for k in range(self.n)) for i in range(self.rank)]

    @cached_property
    def two_rho(self):
        return tuple(self.n - 1 - 2 * k for k in range(self.n))

    @cached_property
    def cartan_matrix(self):
        r = self.rank
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)] for i in range(r)]

    @property
    def num_positive_roots(self):
        return self.n * (self.n - 1) // 2

    @property
    def dim_group(self):
        return self.n * self.n - 1

    def simple_coords(self, i: int, j: int):
        """Simple-root coordinates of e_i - e_j (i < j)."""
        return tuple(1 if i <= k < j else 0 for k in range(self.rank))

    def longest_element(self) -> WeylElement:
        return WeylElement(tuple(reversed(range(self.n))))

    def weyl_group(self) -> list[WeylElement]:
        return [WeylElement(p) for p in permutations(range(self.n))]


def pair_rho(lam: Coweight) -> Fraction:
    """<rho, lambda>, computed from the integral vector 2 rho."""
    n = lam.n
    two_rho = [n - 1 - 2 * k for k in range(n)]
    return Fraction(sum(a * c for a, c in zip(two_rho, lam.coords))) / 2


def dominance_leq(mu: Coweight, nu: Coweight) -> bool:
    """mu <= nu in dominance order: nu - mu is a nonnegative sum of coroots."""
    if mu.n != nu.n:
        raise ValidationError("coweights of different rank")
    if not (mu.is_dominant and nu.is_dominant):
        raise ValidationError("dominance order is defined on dominant coweights")
    partial = Fraction(0)
    for a, b in zip(nu.coords, mu.coords):
        partial += a - b
        if partial < 0:
            return False
    return True


def newton_sort(slopes: Iterable) -> Coweight:
    c = [_frac(s) for s in slopes]
    if sum(c) != 0:
        raise ValidationError("slopes must sum to 0")
    return Coweight(sorted(c, reverse=True))


# -- Weyl group ---------------------------------------------------------------


@dataclass(frozen=True)
class WeylElement:
    perm: tuple

    def __post_init__(self):
        p = tuple(int(x) for x in self.perm)
        if sorted(p) != list(range(len(p))):
            raise ValidationError(f"not a permutation: {self.perm}")
        object.__setattr__(self, "perm", p)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def simple(cls, n, i):
        if not 1 <= i < n:
            raise ValidationError(f"no simple reflection s_{i} in S_{n}")
        p = list(range(n))
        p[i - 1], p[i] = p[i], p[i - 1]
        return cls(tuple(p))

    @classmethod
    def from_word(cls, n, word: Sequence[int]):
        w = cls.identity(n)
        for i in word:
            w = w * cls.simple(n, i)
        return w

    @classmethod
    def from_json(cls, doc):
        try:
            return cls(tuple(int(x) - 1 for x in doc))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad permutation {doc!r}") from exc

    def to_json(self):
        return [x + 1 for x in self.perm]

    @property
    def n(self):
        return len(self.perm)

    def __mul__(self, other: WeylElement):
        return WeylElement(tuple(self.perm[k] for k in other.perm))

    def inverse(self):
        inv = [0] * self.n
        for k, v in enumerate(self.perm):
            inv[v] = k
        return WeylElement(tuple(inv))

    def __call__(self, k):
        return self.perm[k]

    @property
    def length(self):
        p = self.perm
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n) if p[i] > p[j])

    def right_descents(self) -> set[int]:
        p = self.perm
        return {i for i in range(1, self.n) if p[i - 1] > p[i]}

    def inversions(self) -> set[tuple]:
        """Inversion set as pairs of values (a, b), a < b, appearing in reverse order."""
        p = self.perm
        return {(p[j], p[i]) for i in range(self.n) for j in range(i + 1, self.n) if p[i] > p[j]}

    def reduced_word(self) -> tuple:
        word = []
        w = self
        while True:
            d = w.right_descents()
            if not d:
                break
            i = min(d)
            word.append(i)
            w = w * WeylElement.simple(self.n, i)
        return tuple(reversed(word))

    def support(self) -> frozenset:
        return frozenset(self.reduced_word())

    def matrix(self):
        """Permutation matrix sending e_k to e_{w(k)}, as nested int lists."""
        n = self.n
        return [[1 if self.perm[j] == i else 0 for j in range(n)] for i in range(n)]

    def __repr__(self):
        return f"WeylElement({self.to_json()})"


@lru_cache(maxsize=None)
def _subword_closure(w: WeylElement) -> frozenset:
    n = w.n
    reached = {WeylElement.identity(n)}
    for i in w.reduced_word():
        s = WeylElement.simple(n, i)
        reached |= {x * s for x in reached}
    return frozenset(reached)


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """Bruhat order via the subword property on a fixed reduced word of w."""
    return u in _subword_closure(w)


def bruhat_leq_tableau(u: WeylElement, w: WeylElement) -> bool:
    """Independent check: sorted prefixes of u are dominated by those of w."""
    for k in range(1, u.n):
        a = sorted(u.perm[:k])
        b = sorted(w.perm[:k])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def weak_leq(u: WeylElement, w: WeylElement) -> bool:
    """Left weak order: inversion-set containment."""
    return u.inversions() <= w.inversions()


def coxeter_elements(rd: RootDatum) -> list[WeylElement]:
    full = frozenset(range(1, rd.n))
    out = [w for w in rd.weyl_group() if w.length == rd.rank and w.support() == full]
    return sorted(out, key=lambda w: w.reduced_word())


def parabolic_subgroup(n: int, K: Iterable[int]) -> list[WeylElement]:
    K = sorted(set(K))
    group = {WeylElement.identity(n)}
    gens = [WeylElement.simple(n, i) for i in K]
    frontier = list(group)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = x * s
                if y not in group:
                    group.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(group, key=lambda w: w.perm)


def is_min_coset_rep(w: WeylElement, I: Iterable[int]) -> bool:
    """w is of minimal length in w W_I iff it has no right descent in I."""
    return not (w.right_descents() & set(I))


def strata_dim(rd: RootDatum, I: Iterable[int], w: WeylElement) -> int:
    I = set(I)
    if not I <= set(range(1, rd.n)):
        raise ValidationError(f"{sorted(I)} is not a subset of the simple roots")
    if not is_min_coset_rep(w, I):
        raise ValidationError(f"{w} is not minimal in its coset modulo W_I")
    return rd.dim_group - w.length - (rd.rank - len(I))


def pair_order_leq(Ix, Ky) -> bool:
    """(I, x) <= (K, y): I subset of K and x >= z^-1 y z for some z in W_K."""
    I, x = set(Ix[0]), Ix[1]
    K, y = set(Ky[0]), Ky[1]
    if not is_min_coset_rep(x, I) or not is_min_coset_rep(y, K):
        raise ValidationError("pair elements must be minimal coset representatives")
    if not I <= K:
        return False
    return any(bruhat_leq(z.inverse() * y * z, x) for z in parabolic_subgroup(x.n, K))
