"""Integral Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import NamedTuple, Optional

from .arith import Factorization, factor, factor_with_primes, valuation


class SingularCurveError(ValueError):
    pass


class Invariants(NamedTuple):
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    disc: int
    j: Fraction


def is_squarefree_int(d: int) -> bool:
    if d == 0:
        return False
    f = factor(abs(d))
    return f.complete and all(e == 1 for _, e in f.factors)


def _check_twist(d: int) -> None:
    if not is_squarefree_int(d):
        raise ValueError(f"twist parameter {d} is not a nonzero squarefree integer")


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.disc == 0:
            raise SingularCurveError(f"singular curve {self}")

    @classmethod
    def from_ainvs(cls, ainvs) -> "WeierstrassCurve":
        if len(ainvs) != 5:
            raise ValueError("need exactly five a-invariants")
        return cls(*(int(a) for a in ainvs))

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @cached_property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @cached_property
    def b8(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @cached_property
    def c4(self):
        return self.b2 ** 2 - 24 * self.b4

    @cached_property
    def c6(self):
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def disc(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j(self) -> Fraction:
        return Fraction(self.c4 ** 3, self.disc)

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.ainvs) + "]"

    def equation(self) -> str:
        lhs = "y^2"
        for coeff, mono in ((self.a1, "xy"), (self.a3, "y")):
            lhs += _term(coeff, mono)
        rhs = "x^3"
        for coeff, mono in ((self.a2, "x^2"), (self.a4, "x"), (self.a6, "")):
            rhs += _term(coeff, mono)
        return f"{lhs} = {rhs}"

    def contains(self, x, y) -> bool:
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6


def _term(c, mono):
    if c == 0:
        return ""
    sign = " + " if c > 0 else " - "
    mag = abs(c)
    if mono and mag == 1:
        return sign + mono
    return sign + str(mag) + mono


def parse_curve(text: str) -> WeierstrassCurve:
    """Parse the canonical rendering ``[a1,a2,a3,a4,a6]``."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"expected [a1,a2,a3,a4,a6], got {text!r}")
    parts = [p.strip() for p in body[1:-1].split(",")]
    if len(parts) != 5:
        raise ValueError(f"expected 5 coefficients, got {len(parts)}")
    return WeierstrassCurve.from_ainvs([int(p) for p in parts])


def invariants(E: WeierstrassCurve) -> Invariants:
    inv = Invariants(E.b2, E.b4, E.b6, E.b8, E.c4, E.c6, E.disc, E.j)
    assert 4 * inv.b8 == inv.b2 * inv.b6 - inv.b4 ** 2
    assert 1728 * inv.disc == inv.c4 ** 3 - inv.c6 ** 2
    return inv


# ------------------------------------------------------------- transforms

@dataclass(frozen=True)
class CurveTransform:
    """x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t."""

    u: Fraction = Fraction(1)
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for name in "urst":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.u == 0:
            raise ValueError("u must be nonzero")

    def then(self, other: "CurveTransform") -> "CurveTransform":
        """Apply self first, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return CurveTransform(u1 * u2, u1 * u1 * r2 + r1, u1 * s2 + s1, u1 ** 3 * t2 + s1 * u1 * u1 * r2 + t1)

    def inverse(self) -> "CurveTransform":
        u, r, s, t = self.u, self.r, self.s, self.t
        return CurveTransform(1 / u, -r / u ** 2, -s / u, (r * s - t) / u ** 3)

    def is_identity(self) -> bool:
        return self == CurveTransform()

    def apply_point(self, x, y):
        """Image on the transformed curve of a point on the original one."""
        u, r, s, t = self.u, self.r, self.s, self.t
        xp = (x - r) / (u * u)
        yp = (y - s * u * u * xp - t) / u ** 3
        return xp, yp


def transform_ainvs(ainvs, T: CurveTransform) -> tuple[Fraction, ...]:
    a1, a2, a3, a4, a6 = (Fraction(a) for a in ainvs)
    u, r, s, t = T.u, T.r, T.s, T.t
    b1 = (a1 + 2 * s) / u
    b2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
    b3 = (a3 + r * a1 + 2 * t) / u ** 3
    b4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4
    b6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6
    return (b1, b2, b3, b4, b6)


def transform(E: WeierstrassCurve, T: CurveTransform) -> WeierstrassCurve:
    out = transform_ainvs(E.ainvs, T)
    if any(a.denominator != 1 for a in out):
        raise ValueError(f"transform {T} does not give an integral model")
    return WeierstrassCurve.from_ainvs([int(a) for a in out])


def integral_model(ainvs) -> tuple[WeierstrassCurve, CurveTransform]:
    """Smallest scaling that clears the denominators of rational a-invariants."""
    coeffs = [Fraction(a) for a in ainvs]
    den = 1
    for a in coeffs:
        den = lcm(den, a.denominator)
    u = 1
    for p, _ in factor(den).factors:
        need = max(-(-valuation(a.denominator, p) // i) for a, i in zip(coeffs, (1, 2, 3, 4, 6)))
        u *= p ** need
    T = CurveTransform(Fraction(1, u))
    out = transform_ainvs(coeffs, T)
    return WeierstrassCurve.from_ainvs([int(a) for a in out]), T


# --------------------------------------------------------------- twisting

def frey_model(a: int, b: int, d: int = 1) -> WeierstrassCurve:
    """Model of d*y^2 = x(x - a)(x + b), namely [0, d(b-a), 0, -d^2 ab, 0]."""
    _check_twist(d)
    return WeierstrassCurve(0, d * (b - a), 0, -d * d * a * b, 0)


def frey_curve(t, d: int = 1) -> WeierstrassCurve:
    """Twisted Frey-Hellegouarch curve of an AbcTriple."""
    return frey_model(t.a, t.b, d)


def quadratic_twist(E: WeierstrassCurve, d: int) -> WeierstrassCurve:
    """Twist by Q(sqrt d); not minimized."""
    _check_twist(d)
    if E.a1 == 0 and E.a3 == 0:
        A, B, C = E.a2, E.a4, E.a6
    else:
        # complete the square: y^2 = x^3 + b2 x^2 + 8 b4 x + 16 b6
        A, B, C = E.b2, 8 * E.b4, 16 * E.b6
    return WeierstrassCurve(0, d * A, 0, d * d * B, d ** 3 * C)


# ----------------------------------------------------------- minimization

def _kraus_ok(c4: int, c6: int) -> bool:
    """Kraus: (c4, c6) come from an integral model."""
    if c6 != 0 and valuation(c6, 3) == 2:
        return False
    if c6 % 4 == 3:
        return True
    return c4 % 16 == 0 and c6 % 32 in (0, 8)


def _from_c4c6(c4: int, c6: int) -> WeierstrassCurve:
    """Reduced integral model with given (c4, c6) satisfying Kraus's conditions."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4 = (b2 * b2 - c4) // 24
    b6 = (-b2 ** 3 + 36 * b2 * b4 - c6) // 216
    a1 = b2 % 2
    a3 = b6 % 2
    return WeierstrassCurve(a1, (b2 - a1) // 4, a3, (b4 - a1 * a3) // 2, (b6 - a3) // 4)


def _isomorphism(E1: WeierstrassCurve, E2: WeierstrassCurve, u: Fraction) -> Optional[CurveTransform]:
    """Transform of scale u taking E1 to E2, if one exists."""
    s = (u * E2.a1 - E1.a1) / 2
    r = (u * u * E2.a2 - E1.a2 + s * E1.a1 + s * s) / 3
    t = (u ** 3 * E2.a3 - E1.a3 - r * E1.a1) / 2
    T = CurveTransform(u, r, s, t)
    if transform_ainvs(E1.ainvs, T) == tuple(Fraction(a) for a in E2.ainvs):
        return T
    return None


def minimal_discriminant_scale(E: WeierstrassCurve, disc_factors: Optional[Factorization] = None) -> int:
    """Largest u > 0 such that (c4/u^4, c6/u^6) is still an integral model."""
    c4, c6 = E.c4, E.c6
    if disc_factors is None:
        # p^4 | c4 and p^6 | c6 for any prime that can be scaled out
        primes = factor(gcd(gcd(c4, c6), E.disc)).primes()
    else:
        primes = disc_factors.primes()
    u = 1
    for p in primes:
        if p not in (2, 3) and E.disc % p ** 12:
            continue
        k = valuation(E.disc, p) // 12
        if c4:
            k = min(k, valuation(c4, p) // 4)
        if c6:
            k = min(k, valuation(c6, p) // 6)
        while k > 0:
            q = p ** k
            if _kraus_ok(c4 // q ** 4, c6 // q ** 6):
                break
            k -= 1
        u *= p ** k
    return u


def minimal_model(E: WeierstrassCurve, disc_factors: Optional[Factorization] = None) -> tuple[WeierstrassCurve, CurveTransform]:
    """Global minimal model with a1, a3 in {0, 1} and a2 in {-1, 0, 1}.

    ``disc_factors`` may list the primes of the discriminant (any complete
    factorization whose primes include those of Delta) to skip factoring.
    """
    u = minimal_discriminant_scale(E, disc_factors)
    M = _from_c4c6(E.c4 // u ** 4, E.c6 // u ** 6)
    T = _isomorphism(E, M, Fraction(u))
    if T is None:
        T = _isomorphism(E, M, Fraction(-u))
    assert T is not None, "minimal model is not isomorphic to the input"
    return M, T


def is_isomorphic(E1: WeierstrassCurve, E2: WeierstrassCurve) -> tuple[bool, Optional[CurveTransform]]:
    """Decide isomorphism over Q; the witness maps E1 to E2."""
    if E1.j != E2.j:
        return False, None
    M1, T1 = minimal_model(E1)
    M2, T2 = minimal_model(E2)
    if M1 != M2:
        return False, None
    return True, T1.then(T2.inverse())


def disc_factorization(E: WeierstrassCurve, primes=(), budget=None) -> Factorization:
    """Factorization of |Delta(E)|, trying the hinted primes first."""
    return factor_with_primes(abs(E.disc), primes, budget)
