"""Tate's algorithm, conductors, Tamagawa products and Tamagawa quality."""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from typing import Optional

from .arith import (BudgetLike, Factorization, IncompleteFactorizationError, as_budget, factor_with_primes, jacobi,
                    valuation)
from .curve import WeierstrassCurve, minimal_model
from .polynomial import count_roots_mod_p

GOOD = "good"
SPLIT = "split-multiplicative"
NONSPLIT = "nonsplit-multiplicative"
ADDITIVE = "additive"


class NonMinimalModelError(RuntimeError):
    """Tate's algorithm reached its rescaling step; the caller passed a non-minimal model."""


class UndefinedQualityError(ValueError):
    pass


@dataclass(frozen=True)
class LocalData:
    p: int
    kodaira: str
    f: int
    c: int
    kind: str

    def __str__(self):
        return f"{self.p}:{self.kodaira}:{self.f}:{self.c}:{self.kind}"


@dataclass(frozen=True)
class GlobalData:
    N: int
    tau: int
    q_tau: float
    locals: tuple[LocalData, ...] = field(default=())
    minimal: Optional[WeierstrassCurve] = None

    def N_factorization(self) -> Factorization:
        return Factorization.from_dict({ld.p: ld.f for ld in self.locals})

    def tau_factorization(self) -> Factorization:
        primes: dict[int, int] = {}
        for ld in self.locals:
            for p, e in _small_factor(ld.c):
                primes[p] = primes.get(p, 0) + e
        return Factorization.from_dict(primes)


def _small_factor(n):
    out, p = [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _rst(a, r, s, t):
    a1, a2, a3, a4, a6 = a
    return (a1 + 2 * s,
            a2 - s * a1 + 3 * r - s * s,
            a3 + r * a1 + 2 * t,
            a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
            a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1)


def _v(n, p):
    return 10 ** 9 if n == 0 else valuation(n, p)


def _quadratic_has_root(a, b, c, p):
    """Does a T^2 + b T + c have a root in F_p?"""
    a, b, c = a % p, b % p, c % p
    if p == 2:
        return c == 0 or (a + b + c) % 2 == 0
    if a == 0:
        return b != 0 or c == 0
    return jacobi(b * b - 4 * a * c, p) != -1


def tate(E: WeierstrassCurve, p: int, budget: BudgetLike = None) -> LocalData:
    """Reduction type of a minimal model at the prime p."""
    budget = as_budget(budget)
    n = _v(E.disc, p)
    if n == 0:
        return LocalData(p, "I0", 0, 1, GOOD)
    a = E.ainvs
    half = (p + 1) // 2

    budget.charge()
    a1, a2, a3, a4, a6 = a
    b2, b4, b6 = a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    # move the singular point of the reduction to (0, 0)
    if p == 2:
        if b2 % 2 == 0:
            r = a4 % 2
            t = (r * (1 + a2 + a4) + a6) % 2
        else:
            r = a3 % 2
            t = (r + a4) % 2
    elif p == 3:
        r = (-b6) % 3 if b2 % 3 == 0 else (-b2 * b4) % 3
        t = (a1 * r + a3) % 3
    else:
        if c4 % p == 0:
            r = -pow(12, -1, p) * b2 % p
        else:
            r = -pow(12 * c4, -1, p) * (c6 + b2 * c4) % p
        t = -half * (a1 * r + a3) % p
    a = _rst(a, r, 0, t)
    a1, a2, a3, a4, a6 = a

    if c4 % p:
        if _quadratic_has_root(1, a1, -a2, p):
            return LocalData(p, f"I{n}", 1, n, SPLIT)
        return LocalData(p, f"I{n}", 1, 2 if n % 2 == 0 else 1, NONSPLIT)

    if _v(a6, p) < 2:
        return LocalData(p, "II", n, 1, ADDITIVE)
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    if _v(b8, p) < 3:
        return LocalData(p, "III", n - 1, 2, ADDITIVE)
    b6 = a3 * a3 + 4 * a6
    if _v(b6, p) < 3:
        c = 3 if _quadratic_has_root(1, a3 // p, -(a6 // p ** 2), p) else 1
        return LocalData(p, "IV", n - 2, c, ADDITIVE)

    # now arrange p | a1, a2;  p^2 | a3, a4;  p^3 | a6
    if p == 2:
        s = a2 % 2
        t = 2 * ((a6 // 4) % 2)
    else:
        s = -a1 * half
        t = -a3 * half
    a = _rst(a, 0, s, t)
    a1, a2, a3, a4, a6 = a

    pp, ppp = p * p, p ** 3
    b, c, d = a2 // p, a4 // pp, a6 // ppp
    w = 27 * d * d - b * b * c * c + 4 * b ** 3 * d - 18 * b * c * d + 4 * c ** 3
    x = 3 * c - b * b

    if w % p:
        roots = count_roots_mod_p([d, c, b, 1], p)
        return LocalData(p, "I0*", n - 4, 1 + roots, ADDITIVE)

    if x % p:
        # double root of the cubic: move it to T = 0
        if p == 2:
            r = c
        elif p == 3:
            r = b * c
        else:
            r = (b * c - 9 * d) * pow(2 * x, -1, p)
        a = _rst(a, p * (r % p), 0, 0)
        ix = iy = 3
        mx = my = pp
        cp = 0
        while cp == 0:
            budget.charge()
            a1, a2, a3, a4, a6 = a
            xa2, xa3, xa4, xa6 = a2 // p, a3 // my, a4 // (p * mx), a6 // (mx * my)
            if (xa3 * xa3 + 4 * xa6) % p:
                cp = 4 if _quadratic_has_root(1, xa3, -xa6, p) else 2
                break
            t = my * (xa6 % 2 if p == 2 else -xa3 * half % p)
            a = _rst(a, 0, 0, t)
            my *= p
            iy += 1
            a1, a2, a3, a4, a6 = a
            xa2, xa3, xa4, xa6 = a2 // p, a3 // my, a4 // (p * mx), a6 // (mx * my)
            if (xa4 * xa4 - 4 * xa2 * xa6) % p:
                cp = 4 if _quadratic_has_root(xa2, xa4, xa6, p) else 2
                break
            r = mx * (xa6 * xa2 % 2 if p == 2 else -xa4 * pow(2 * xa2, -1, p) % p)
            a = _rst(a, r, 0, 0)
            mx *= p
            ix += 1
        return LocalData(p, f"I{ix + iy - 5}*", n - ix - iy + 1, cp, ADDITIVE)

    # triple root: move it to T = 0
    if p == 2:
        r = b
    elif p == 3:
        r = -d
    else:
        r = -b * pow(3, -1, p)
    a = _rst(a, p * (r % p), 0, 0)
    a1, a2, a3, a4, a6 = a
    x3, x6 = a3 // pp, a6 // p ** 4
    if (x3 * x3 + 4 * x6) % p:
        c = 3 if _quadratic_has_root(1, x3, -x6, p) else 1
        return LocalData(p, "IV*", n - 6, c, ADDITIVE)
    t = pp * (x6 % 2 if p == 2 else -x3 * half % p)
    a = _rst(a, 0, 0, t)
    a1, a2, a3, a4, a6 = a
    if _v(a4, p) < 4:
        return LocalData(p, "III*", n - 7, 2, ADDITIVE)
    if _v(a6, p) < 6:
        return LocalData(p, "II*", n - 8, 1, ADDITIVE)
    raise NonMinimalModelError(f"model {E} is not minimal at {p}")


def _ln(n: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = 40
        return Decimal(n).ln()


def tamagawa_quality(tau: int, N: int) -> float:
    """log(tau) * log(log N) / log N, natural logarithms."""
    if N < 3:
        raise UndefinedQualityError(f"Tamagawa quality needs N >= 3, got {N}")
    if tau < 1:
        raise ValueError("tau must be positive")
    with localcontext() as ctx:
        ctx.prec = 40
        lnN = _ln(N)
        return float(_ln(tau) * lnN.ln() / lnN)


def global_data(E: WeierstrassCurve, disc_factors: Optional[Factorization] = None,
                budget: BudgetLike = None) -> GlobalData:
    """Conductor, Tamagawa product and Tamagawa quality of E.

    ``disc_factors`` is a hint: a factorization whose primes cover the
    discriminant (of E or of its minimal model).  Whatever the hint misses
    is factored under ``budget``; if that fails the bad primes are unknown
    and IncompleteFactorizationError is raised.
    """
    budget = as_budget(budget)
    hint = disc_factors.primes() if disc_factors is not None else ()
    fd = factor_with_primes(abs(E.disc), hint, budget)
    if not fd.complete:
        raise IncompleteFactorizationError(
            f"cannot determine bad primes: discriminant cofactor {fd.cofactor} unfactored")
    M, _ = minimal_model(E, fd)
    locals_ = []
    N = tau = 1
    for p in fd.primes():
        if M.disc % p:
            continue
        ld = tate(M, p, budget)
        locals_.append(ld)
        N *= p ** ld.f
        tau *= ld.c
    q = tamagawa_quality(tau, N) if N >= 3 else float("nan")
    return GlobalData(N, tau, q, tuple(locals_), M)
