"""Dense univariate polynomials as coefficient lists, lowest degree first.

Just enough for division polynomials, root counting modulo p and exact
integer-root finding by p-adic lifting.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest

from .arith import is_prime


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def add(f, g):
    return trim(a + b for a, b in zip_longest(f, g, fillvalue=0))


def sub(f, g):
    return trim(a - b for a, b in zip_longest(f, g, fillvalue=0))


def scale(f, c):
    return trim(c * a for a in f)


def mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def power(f, k):
    out = [1]
    for _ in range(k):
        out = mul(out, f)
    return out


def evaluate(f, x):
    acc = 0
    for a in reversed(f):
        acc = acc * x + a
    return acc


def derivative(f):
    return trim(i * a for i, a in enumerate(f) if i)


def degree(f):
    return len(trim(f)) - 1


# ------------------------------------------------------------- over Q

def _divmod_q(f, g):
    f = [Fraction(a) for a in trim(f)]
    g = [Fraction(a) for a in trim(g)]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 1)
    while len(f) >= len(g) and f:
        c = f[-1] / g[-1]
        k = len(f) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            f[i + k] -= c * b
        f = trim(f)
    return trim(q), f


def _primitive(f):
    """Scale a rational polynomial to a primitive integer one."""
    from math import gcd, lcm

    f = [Fraction(a) for a in trim(f)]
    den = 1
    for a in f:
        den = lcm(den, a.denominator)
    ints = [int(a * den) for a in f]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g > 1:
        ints = [a // g for a in ints]
    if ints and ints[-1] < 0:
        ints = [-a for a in ints]
    return ints


def gcd_q(f, g):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, _divmod_q(f, g)[1]
    return _primitive(f)


def squarefree_part(f):
    """Primitive integer polynomial with the same roots as f, each simple."""
    f = _primitive(f)
    if degree(f) < 1:
        return f
    g = gcd_q(f, derivative(f))
    if degree(g) < 1:
        return f
    return _primitive(_divmod_q(f, g)[0])


# -------------------------------------------------------------- mod p

def roots_mod_p(f, p):
    """Roots of f in F_p by enumeration (p small)."""
    f = [a % p for a in f]
    return [x for x in range(p) if evaluate(f, x) % p == 0]


def _trim_mod(f, p):
    return trim(a % p for a in f)


def _divmod_p(f, g, p):
    f = _trim_mod(f, p)
    g = _trim_mod(g, p)
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 1)
    while len(f) >= len(g) and f:
        c = f[-1] * inv % p
        k = len(f) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            f[i + k] = (f[i + k] - c * b) % p
        f = trim(f)
    return trim(q), f


def gcd_p(f, g, p):
    f, g = _trim_mod(f, p), _trim_mod(g, p)
    while g:
        f, g = g, _divmod_p(f, g, p)[1]
    if f:
        inv = pow(f[-1], -1, p)
        f = [a * inv % p for a in f]
    return f


def _mulmod_p(f, g, m, p):
    return _divmod_p(mul(f, g), m, p)[1]


def count_roots_mod_p(f, p):
    """Number of distinct roots of f in F_p, for any prime p."""
    f = _trim_mod(f, p)
    if not f:
        raise ValueError("zero polynomial mod p")
    if len(f) == 1:
        return 0
    if p < 64:
        return len(roots_mod_p(f, p))
    # gcd(f, x^p - x) has one linear factor per root
    result, base, e = [1], [0, 1], p
    while e:
        if e & 1:
            result = _mulmod_p(result, base, f, p)
        base = _mulmod_p(base, base, f, p)
        e >>= 1
    return degree(gcd_p(f, sub(result, [0, 1]), p))


# ------------------------------------------------------- integer roots

def _root_bound(f):
    lead = abs(f[-1])
    return 1 + max(abs(a) for a in f[:-1]) // lead + 1


def integer_roots(f):
    """All integer roots of a nonzero integer polynomial, sorted.

    Works on the squarefree part: pick a small prime p where every root of
    f mod p is simple, Hensel-lift each one past twice the Cauchy bound and
    keep the lifts that are genuine roots.
    """
    f = trim(f)
    if not f:
        raise ValueError("the zero polynomial has every integer as a root")
    roots = set()
    while f and f[0] == 0:
        roots.add(0)
        f = f[1:]
    f = squarefree_part(f)
    if degree(f) < 1:
        return sorted(roots)
    df = derivative(f)
    bound = _root_bound(f)
    p = 3
    while True:
        if is_prime(p) and f[-1] % p and degree(gcd_p(f, df, p)) == 0:
            break
        p += 2
    for r in roots_mod_p(f, p):
        modulus = p
        while modulus <= 2 * bound:
            modulus = modulus * modulus
            inv = pow(evaluate(df, r) % modulus, -1, modulus)
            r = (r - evaluate(f, r) * inv) % modulus
        if r > modulus // 2:
            r -= modulus
        if evaluate(f, r) == 0:
            roots.add(r)
    return sorted(roots)
