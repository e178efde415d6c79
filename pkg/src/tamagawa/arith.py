"""Integer primality, factorization and radicals.

Every routine works on Python ints of arbitrary size.  Factoring is
charged against a :class:`StepBudget` so that searches stay reproducible:
one step is one trial division or one Pollard-rho iteration.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Optional, Union


class BudgetExceeded(Exception):
    """Raised when a :class:`StepBudget` runs out."""


class IncompleteFactorizationError(ValueError):
    """An operation needed a complete factorization and got a partial one."""


class StepBudget:
    """Shared step counter; ``limit=None`` means unlimited."""

    def __init__(self, limit: Optional[int] = None):
        self.limit = limit
        self.used = 0

    @property
    def remaining(self) -> Optional[int]:
        if self.limit is None:
            return None
        return max(self.limit - self.used, 0)

    def exhausted(self) -> bool:
        return self.limit is not None and self.used >= self.limit

    def charge(self, steps: int = 1) -> None:
        self.used += steps
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"step budget of {self.limit} exhausted")

    def __repr__(self):
        return f"StepBudget(limit={self.limit}, used={self.used})"


BudgetLike = Union[None, int, StepBudget]


def as_budget(budget: BudgetLike) -> StepBudget:
    if isinstance(budget, StepBudget):
        return budget
    return StepBudget(budget)


# ---------------------------------------------------------------- primality

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
# deterministic for n < 3.3e24 (Sorenson & Webster), so certainly for n < 2^64
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
EXTRA_MR_ROUNDS = 64


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge's method A for the parameters
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(x):
        x %= n
        return (x + n) // 2 if x % 2 else x // 2

    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Deterministic Miller-Rabin below 2**64.  Above that a Baillie-PSW test
    followed by ``EXTRA_MR_ROUNDS`` Miller-Rabin rounds whose bases are
    drawn from a generator seeded by ``n`` (so the answer is reproducible).

    >>> is_prime(4817), is_prime(1), is_prime(2147483647)
    (True, False, True)
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    if n < 1 << 64:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES_64)
    if not _strong_probable_prime(n, 2) or not _strong_lucas_probable_prime(n):
        return False
    rng = random.Random(n)
    return all(_strong_probable_prime(n, rng.randrange(3, n - 1)) for _ in range(EXTRA_MR_ROUNDS))


def primes_up_to(limit: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


TRIAL_LIMIT = 1000
_TRIAL_PRIMES = primes_up_to(TRIAL_LIMIT)


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------- factorizations

@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer ``n``.

    When ``complete`` is false, ``cofactor`` is the unresolved composite
    part; ``factors`` then multiply to ``n // cofactor``.
    """

    n: int
    factors: tuple[tuple[int, int], ...]
    complete: bool = True
    cofactor: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Factorization needs a positive integer")
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError("factors must have strictly increasing primes and positive exponents")
            prev = p
        if self.product() * self.cofactor != self.n:
            raise ValueError(f"factors do not multiply to {self.n}")
        if self.complete and self.cofactor != 1:
            raise ValueError("a complete factorization has cofactor 1")

    @classmethod
    def from_dict(cls, factors: dict[int, int], complete: bool = True, cofactor: int = 1) -> "Factorization":
        items = tuple(sorted((p, e) for p, e in factors.items() if e))
        n = cofactor
        for p, e in items:
            n *= p ** e
        return cls(n, items, complete, cofactor)

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p ** e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __mul__(self, other: "Factorization") -> "Factorization":
        merged = self.as_dict()
        for p, e in other.factors:
            merged[p] = merged.get(p, 0) + e
        return Factorization.from_dict(merged, self.complete and other.complete, self.cofactor * other.cofactor)

    def __pow__(self, k: int) -> "Factorization":
        if k < 0:
            raise ValueError("negative power")
        if self.cofactor != 1:
            return Factorization.from_dict({p: e * k for p, e in self.factors}, False, self.cofactor ** k)
        return Factorization.from_dict({p: e * k for p, e in self.factors})

    def exact_div(self, other: "Factorization") -> "Factorization":
        """Quotient by a factorization whose primes all appear here."""
        if not other.complete:
            raise IncompleteFactorizationError("cannot divide by an incomplete factorization")
        merged = self.as_dict()
        for p, e in other.factors:
            if merged.get(p, 0) < e:
                raise ValueError(f"{other.n} does not divide {self.n}")
            merged[p] -= e
        return Factorization.from_dict(merged, self.complete, self.cofactor)

    def __str__(self):
        """Render as ``2^7*3^5``; an incomplete cofactor is shown as ``[c]``."""
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.cofactor != 1:
            parts.append(f"[{self.cofactor}]")
        return "*".join(parts) or "1"


def parse_factorization(text: str) -> Factorization:
    """Inverse of ``str(Factorization)`` for complete factorizations: ``'5^9*11^4*13'``."""
    text = text.strip()
    if text == "1":
        return Factorization(1, ())
    powers: dict[int, int] = {}
    for part in text.split("*"):
        base, _, exp = part.strip().partition("^")
        p, e = int(base), int(exp) if exp else 1
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        powers[p] = powers.get(p, 0) + e
    return Factorization.from_dict(powers)


def _pollard_brent(n: int, budget: StepBudget, seed: int) -> Optional[int]:
    """One Brent-cycle run; returns a nontrivial factor or None on a failed cycle."""
    rng = random.Random(seed)
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        budget.charge(r)
        k = 0
        while k < r and g == 1:
            ys = y
            steps = min(m, r - k)
            for _ in range(steps):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            budget.charge(steps)
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            budget.charge()
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return None if g == n else g


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> Optional[tuple[int, int]]:
    for k in primes_up_to(n.bit_length()):
        r = iroot(n, k)
        if r ** k == n:
            return r, k
    return None


def _split_composite(n: int, budget: StepBudget, out: dict[int, int], unresolved: list[int], mult: int = 1):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + mult
        return
    pp = _perfect_power(n)
    if pp is not None:
        _split_composite(pp[0], budget, out, unresolved, mult * pp[1])
        return
    seed = 0
    while True:
        if budget.exhausted():
            unresolved.extend([n] * mult)
            return
        try:
            g = _pollard_brent(n, budget, seed)
        except BudgetExceeded:
            unresolved.extend([n] * mult)
            return
        if g is not None:
            break
        seed += 1
    _split_composite(g, budget, out, unresolved, mult)
    _split_composite(n // g, budget, out, unresolved, mult)


def factor(n: int, budget: BudgetLike = None) -> Factorization:
    """Factor ``n`` by trial division below 1000, then Pollard-Brent.

    If the budget runs out, the unresolved part is returned as the
    cofactor of an incomplete Factorization; running out is not an error.
    """
    if n < 1:
        raise ValueError("factor() needs a positive integer")
    budget = as_budget(budget)
    out: dict[int, int] = {}
    m = n
    for p in _TRIAL_PRIMES:
        if p * p > m:
            break
        if budget.exhausted():
            return Factorization.from_dict(out, False, m)
        budget.used += 1
        while m % p == 0:
            m //= p
            out[p] = out.get(p, 0) + 1
    unresolved: list[int] = []
    if m > 1:
        if m < TRIAL_LIMIT * TRIAL_LIMIT:
            out[m] = out.get(m, 0) + 1
        else:
            _split_composite(m, budget, out, unresolved)
    cofactor = 1
    for u in unresolved:
        cofactor *= u
    return Factorization.from_dict(out, not unresolved, cofactor)


def factor_with_primes(n: int, primes: Iterable[int], budget: BudgetLike = None) -> Factorization:
    """Factor ``n`` assuming most of its prime support is in ``primes``.

    The known primes are divided out first; anything left over goes through
    :func:`factor`, so the result is exact even if the hint was incomplete.
    """
    if n < 1:
        raise ValueError("factor_with_primes() needs a positive integer")
    budget = as_budget(budget)
    out: dict[int, int] = {}
    m = n
    for p in sorted(set(primes)):
        if not is_prime(p):
            raise ValueError(f"hint {p} is not prime")
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    if m == 1:
        return Factorization.from_dict(out)
    return Factorization.from_dict(out) * factor(m, budget)


def radical(*fs: Factorization) -> int:
    """Product of the distinct primes over all given factorizations."""
    primes: set[int] = set()
    for f in fs:
        if not f.complete:
            raise IncompleteFactorizationError(f"factorization of {f.n} is incomplete")
        primes.update(f.primes())
    out = 1
    for p in primes:
        out *= p
    return out
