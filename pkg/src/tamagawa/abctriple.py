"""abc-triples: validation, quality, merit, categories and triples from triples."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import Enum
from math import gcd
from typing import Optional

from .arith import BudgetLike, Factorization, as_budget, factor, radical

PRECISION = 30  # decimal digits, comfortably above 80 bits
HIGH_QUALITY = Decimal("1.4")
MEDIUM_QUALITY = Decimal("1.3")
HIGH_MERIT = Decimal(24)


class TripleError(ValueError):
    """A triple failed validation; ``reason`` is one of the REASON_* codes."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


SUM_MISMATCH = "sum-mismatch"
NOT_COPRIME = "not-coprime"
BAD_ORDERING = "bad-ordering"
FACTORING_INCOMPLETE = "factoring-incomplete"


class UndefinedMeritError(ValueError):
    pass


class Category(str, Enum):
    SUB_ABC = "sub-abc"
    PLAIN = "plain"
    MEDIUM_QUALITY = "medium-quality"
    HIGH_QUALITY = "high-quality"


@dataclass(frozen=True)
class TripleCategory:
    category: Category
    high_merit: bool


def _ln(n: int) -> Decimal:
    return Decimal(n).ln()


def _quality(c: int, r: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = PRECISION
        return _ln(c) / _ln(r)


def _merit(q: Decimal, r: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = PRECISION
        lr = _ln(r)
        return (q - 1) ** 2 * lr * lr.ln()


@dataclass(frozen=True)
class AbcTriple:
    a: int
    b: int
    c: int
    fa: Factorization
    fb: Factorization
    fc: Factorization
    r: int
    q_exact: Decimal

    @property
    def q(self) -> float:
        return float(self.q_exact)

    @property
    def m(self) -> float:
        return merit(self)

    def primes(self) -> list[int]:
        return sorted(set(self.fa.primes()) | set(self.fb.primes()) | set(self.fc.primes()))

    def abc_factorization(self) -> Factorization:
        return self.fa * self.fb * self.fc

    def __str__(self):
        return f"{self.a} {self.b} {self.c}"


def _checked_factorization(n: int, given: Optional[Factorization], budget) -> Factorization:
    if given is None:
        return factor(n, budget)
    if given.n != n:
        raise ValueError(f"supplied factorization is of {given.n}, not {n}")
    return given


def make_triple(a: int, b: int, c: int, *, fa: Optional[Factorization] = None, fb: Optional[Factorization] = None,
                fc: Optional[Factorization] = None, budget: BudgetLike = None) -> AbcTriple:
    """Validate (a, b, c) and compute its radical and quality.

    Supplied factorizations are checked against the numbers (and their
    primes by the Factorization constructor's callers) and used as-is.
    """
    if min(a, b, c) < 1:
        raise TripleError(BAD_ORDERING, f"entries must be positive: {a} {b} {c}")
    if a + b != c:
        raise TripleError(SUM_MISMATCH, f"{a} + {b} != {c}")
    if not a < b:
        raise TripleError(BAD_ORDERING, f"need a < b, got a={a}, b={b}")
    if gcd(a, b) != 1:
        raise TripleError(NOT_COPRIME, f"gcd({a}, {b}) = {gcd(a, b)}")
    budget = as_budget(budget)
    fs = [_checked_factorization(n, f, budget) for n, f in ((a, fa), (b, fb), (c, fc))]
    for f in fs:
        if not f.complete:
            raise TripleError(FACTORING_INCOMPLETE, f"could not factor {f.n} (cofactor {f.cofactor})")
    r = radical(*fs)
    return AbcTriple(a, b, c, fs[0], fs[1], fs[2], r, _quality(c, r))


def quality(t: AbcTriple) -> float:
    """log c / log r(a,b,c)."""
    return float(_quality(t.c, t.r))


def merit(t: AbcTriple) -> float:
    """(q - 1)^2 log r log log r."""
    if t.r < 3:
        raise UndefinedMeritError(f"merit needs r >= 3, got r = {t.r}")
    return float(_merit(_quality(t.c, t.r), t.r))


def classify(t: AbcTriple) -> TripleCategory:
    q = t.q_exact
    if q <= 1:
        cat = Category.SUB_ABC
    elif q <= MEDIUM_QUALITY:
        cat = Category.PLAIN
    elif q < HIGH_QUALITY:
        cat = Category.MEDIUM_QUALITY
    else:
        cat = Category.HIGH_QUALITY
    high_merit = t.r >= 3 and _merit(q, t.r) > HIGH_MERIT
    return TripleCategory(cat, high_merit)


# ------------------------------------------------------ triples from triples

@dataclass(frozen=True)
class DerivedTriple:
    label: str
    a: int
    b: int
    c: int
    triple: Optional[AbcTriple]
    error: Optional[str] = None

    @property
    def valid(self) -> bool:
        return self.triple is not None

    @property
    def quality(self) -> Optional[float]:
        return self.triple.q if self.triple else None


FOUR = Factorization(4, ((2, 2),))


def derive_triples(t: AbcTriple, budget: BudgetLike = None) -> list[DerivedTriple]:
    """The four candidates built from d = a + c and e = b + c.

    A1 = (a^2, bd, c^2)
    A2 = (b^2, 4ac, d^2), divided by 4 if b is even, first two swapped if needed
    A3 = (b^2, ae, c^2), first two swapped if b^2 > ae
    A4 = (a^2, 4bc, e^2), divided by 4 if a is even
    """
    budget = as_budget(budget)
    a, b, c = t.a, t.b, t.c
    d, e = a + c, b + c
    fd, fe = factor(d, budget), factor(e, budget)
    fa, fb, fc = t.fa, t.fb, t.fc

    cands = []
    cands.append(("A1", (a * a, fa ** 2), (b * d, fb * fd), (c * c, fc ** 2)))
    A2 = [(b * b, fb ** 2), (4 * a * c, FOUR * fa * fc), (d * d, fd ** 2)]
    if b % 2 == 0:
        A2 = [(n // 4, f.exact_div(FOUR)) for n, f in A2]
    if A2[0][0] > A2[1][0]:
        A2[0], A2[1] = A2[1], A2[0]
    cands.append(("A2", *A2))
    A3 = [(b * b, fb ** 2), (a * e, fa * fe), (c * c, fc ** 2)]
    if A3[0][0] > A3[1][0]:
        A3[0], A3[1] = A3[1], A3[0]
    cands.append(("A3", *A3))
    A4 = [(a * a, fa ** 2), (4 * b * c, FOUR * fb * fc), (e * e, fe ** 2)]
    if a % 2 == 0:
        A4 = [(n // 4, f.exact_div(FOUR)) for n, f in A4]
    cands.append(("A4", *A4))

    out = []
    for label, (A, fA), (B, fB), (C, fC) in cands:
        try:
            tri = make_triple(A, B, C, fa=fA, fb=fB, fc=fC)
            out.append(DerivedTriple(label, A, B, C, tri))
        except TripleError as exc:
            out.append(DerivedTriple(label, A, B, C, None, f"{exc.reason}: {exc}"))
    return out
