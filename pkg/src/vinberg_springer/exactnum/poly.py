"""Dense univariate polynomials over an exact field.

Polynomials are lists of field elements, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction

from .fields import Field, RationalField


def trim(f: list, F: Field) -> list:
    f = list(f)
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def degree(f: list) -> int:
    return len(f) - 1


def add(f, g, F):
    n = max(len(f), len(g))
    z = F.zero
    return trim([F.add(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)], F)


def sub(f, g, F):
    return add(f, [F.neg(c) for c in g], F)


def mul(f, g, F):
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out, F)


def divmod_poly(f, g, F):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = degree(g)
    lead_inv = F.inv(g[-1])
    q = [F.zero] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        shift = len(f) - 1 - dg
        t = F.mul(f[-1], lead_inv)
        q[shift] = t
        for i, c in enumerate(g):
            f[i + shift] = F.sub(f[i + shift], F.mul(t, c))
        f = trim(f, F)
    return trim(q, F), f


def monic(f, F):
    if not f:
        return []
    inv = F.inv(f[-1])
    return [F.mul(c, inv) for c in f]


def gcd(f, g, F):
    f, g = trim(f, F), trim(g, F)
    while g:
        f, g = g, divmod_poly(f, g, F)[1]
    return monic(f, F)


def derivative(f, F):
    return trim([F.mul(F.from_int(i), c) for i, c in enumerate(f)][1:], F)


def evaluate(f, x, F):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def powmod(f, k: int, m, F):
    result = [F.one]
    base = divmod_poly(f, m, F)[1]
    while k:
        if k & 1:
            result = divmod_poly(mul(result, base, F), m, F)[1]
        base = divmod_poly(mul(base, base, F), m, F)[1]
        k >>= 1
    return result


def is_squarefree(f, F) -> bool:
    """Separability test: gcd(f, f') = 1."""
    d = derivative(f, F)
    if not d:
        return degree(f) <= 0
    return degree(gcd(f, d, F)) == 0


def roots_with_multiplicity(f, F) -> dict:
    """Roots in F of a polynomial over a finite field or the rationals."""
    if F.order is not None:
        out = {}
        for x in F.elements():
            m = 0
            g = f
            while g:
                q, r = divmod_poly(g, [F.neg(x), F.one], F)
                if r:
                    break
                m += 1
                g = q
            if m:
                out[x] = m
        return out
    import sympy

    X = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(f))
    return {Fraction(int(r.p), int(r.q)): m for r, m in sympy.roots(sympy.Poly(expr, X), filter="Q").items()}


def count_irreducible_factors(f, F) -> int:
    """Number of distinct monic irreducible factors of a squarefree ``f``."""
    if degree(f) <= 0:
        return 0
    if isinstance(F, RationalField):
        import sympy

        X = sympy.Symbol("x")
        expr = sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(f))
        return len(sympy.factor_list(expr, X)[1])
    return sum(_distinct_degree(f, F).values())


def _distinct_degree(f, F) -> dict:
    """Distinct-degree factorization counts ``{d: number of factors}``."""
    q = F.order
    f = monic(f, F)
    counts = {}
    x = [F.zero, F.one]
    h = x
    d = 0
    while degree(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, q, f, F)
        g = gcd(sub(h, x, F), f, F)
        if degree(g) > 0:
            counts[d] = degree(g) // d
            f = divmod_poly(f, g, F)[0]
            h = divmod_poly(h, f, F)[1] if degree(f) > 0 else h
    if degree(f) > 0:
        counts[degree(f)] = counts.get(degree(f), 0) + 1
    return counts


def from_ints(values, F):
    return trim([F.coerce(v) for v in values], F)
