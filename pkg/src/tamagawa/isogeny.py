"""Rational torsion points and cyclic isogenies with Velu's formulas."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional

from .arith import BudgetLike, as_budget, is_prime, jacobi
from .curve import WeierstrassCurve, integral_model, minimal_model
from . import polynomial as poly

MAX_DEPTH = 3


@dataclass(frozen=True)
class CurvePoint:
    """A point on a Weierstrass curve; ``x is None`` is the point at infinity."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x},{self.y})"


INFINITY = CurvePoint()


def point(E: WeierstrassCurve, x, y) -> CurvePoint:
    x, y = Fraction(x), Fraction(y)
    if not E.contains(x, y):
        raise ValueError(f"({x}, {y}) is not on {E}")
    return CurvePoint(x, y)


def negate(E: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y - E.a1 * P.x - E.a3)


def add(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = E.ainvs
    if P.x == Q.x:
        if P.y + Q.y + a1 * Q.x + a3 == 0:
            return INFINITY
        lam = (3 * P.x ** 2 + 2 * a2 * P.x + a4 - a1 * P.y) / (2 * P.y + a1 * P.x + a3)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    nu = P.y - lam * P.x
    x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


def multiply(E: WeierstrassCurve, P: CurvePoint, k: int) -> CurvePoint:
    if k < 0:
        return multiply(E, negate(E, P), -k)
    out, base = INFINITY, P
    while k:
        if k & 1:
            out = add(E, out, base)
        base = add(E, base, base)
        k >>= 1
    return out


def order(E: WeierstrassCurve, P: CurvePoint, bound: int = 16) -> Optional[int]:
    """Exact order of P if it is at most ``bound``, else None."""
    Q = P
    for n in range(1, bound + 1):
        if Q.is_infinity:
            return n
        Q = add(E, Q, P)
    return None


# ------------------------------------------------------------- torsion

def _short_model(E: WeierstrassCurve):
    """(A, B) with (x, y) -> (36x + 3b2, 108(2y + a1 x + a3)) onto Y^2 = X^3 + AX + B."""
    return -27 * E.c4, -54 * E.c6


def _from_short(E: WeierstrassCurve, X: int, Y: int) -> CurvePoint:
    x = Fraction(X - 3 * E.b2, 36)
    y = (Fraction(Y, 108) - E.a1 * x - E.a3) / 2
    return CurvePoint(x, y)


def _count_points_mod(E: WeierstrassCurve, p: int) -> int:
    # p odd and of good reduction: (2y + a1x + a3)^2 = 4x^3 + b2x^2 + 2b4x + b6
    b2, b4, b6 = E.b2 % p, E.b4 % p, E.b6 % p
    total = p + 1
    for x in range(p):
        total += jacobi((4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6) % p, p)
    return total


def torsion_bound(E: WeierstrassCurve, nprimes: int = 20) -> int:
    """gcd of #E(F_p) over small odd primes of good reduction."""
    bound, p, used = 0, 3, 0
    while used < nprimes:
        if is_prime(p) and E.disc % p:
            bound = gcd(bound, _count_points_mod(E, p))
            used += 1
            if bound == 1:
                break
        p += 2
    return bound


class _DivisionPolynomials:
    """psi_n = g_n * y^(n even) on Y^2 = F(X) = X^3 + AX + B."""

    def __init__(self, A: int, B: int):
        self.A, self.B = A, B
        self.F = [B, A, 0, 1]
        self.g = {0: [], 1: [1], 2: [2],
                  3: [-A * A, 12 * B, 6 * A, 0, 3],
                  4: [4 * (-8 * B * B - A ** 3), 4 * (-4 * A * B), 4 * (-5 * A * A), 4 * 20 * B, 4 * 5 * A, 0, 4]}

    def __call__(self, n: int):
        if n in self.g:
            return self.g[n]
        g, F = self, self.F
        m = n // 2
        if n % 2:
            left = poly.mul(g(m + 2), poly.power(g(m), 3))
            right = poly.mul(g(m - 1), poly.power(g(m + 1), 3))
            if m % 2 == 0:
                left = poly.mul(left, poly.mul(F, F))
            else:
                right = poly.mul(right, poly.mul(F, F))
            out = poly.sub(left, right)
        else:
            D = poly.sub(poly.mul(g(m + 2), poly.power(g(m - 1), 2)),
                         poly.mul(g(m - 2), poly.power(g(m + 1), 2)))
            out = [c // 2 for c in poly.mul(g(m), D)]
        self.g[n] = out
        return out

    def psi_squared(self, n: int):
        sq = poly.power(self(n), 2)
        return poly.mul(sq, self.F) if n % 2 == 0 else sq

    def phi(self, n: int):
        prod = poly.mul(self(n + 1), self(n - 1))
        if n % 2:
            prod = poly.mul(prod, self.F)
        return poly.sub(poly.mul([0, 1], self.psi_squared(n)), prod)


def _points_with_x(A: int, B: int, xs):
    out = []
    for X in xs:
        rhs = X ** 3 + A * X + B
        if rhs < 0:
            continue
        Y = isqrt(rhs)
        if Y * Y == rhs:
            out.append((X, Y))
            if Y:
                out.append((X, -Y))
    return out


@dataclass(frozen=True)
class TorsionGroup:
    points: tuple[CurvePoint, ...]
    orders: tuple[int, ...]
    structure: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.points)


def _sort_key(P: CurvePoint, n: int):
    if P.is_infinity:
        return (0, Fraction(0), Fraction(0))
    return (n, P.x, P.y)


def torsion_points(E: WeierstrassCurve) -> TorsionGroup:
    """Full rational torsion subgroup, generated from division-polynomial roots."""
    bound = torsion_bound(E)
    A, B = _short_model(E)
    psi = _DivisionPolynomials(A, B)
    found: list[CurvePoint] = []

    def lift(X, Y):
        P = _from_short(E, X, Y)
        assert E.contains(P.x, P.y)
        return P

    # 2-power part: roots of the cubic, then repeated halving
    if bound % 2 == 0:
        two = [lift(X, 0) for X, _ in _points_with_x(A, B, poly.integer_roots(psi.F))]
        found += two
        level, k = two, 2
        while bound % (2 * k) == 0 and level and k <= 4:
            nxt = []
            for P in level:
                Xp = 36 * P.x + 3 * E.b2
                f = poly.sub(psi.phi(2), poly.scale(psi.psi_squared(2), int(Xp)))
                for X, Y in _points_with_x(A, B, poly.integer_roots(f)):
                    Q = lift(X, Y)
                    if add(E, Q, Q) == P:
                        nxt.append(Q)
            found += nxt
            level, k = nxt, 2 * k
    # odd part
    for ell in (3, 5, 7):
        if bound % ell:
            continue
        pts = [lift(X, Y) for X, Y in _points_with_x(A, B, poly.integer_roots(psi(ell)))]
        found += pts
        if ell == 3 and bound % 9 == 0:
            for P in pts:
                Xp = 36 * P.x + 3 * E.b2
                f = poly.sub(psi.phi(3), poly.scale(psi.psi_squared(3), int(Xp)))
                for X, Y in _points_with_x(A, B, poly.integer_roots(f)):
                    Q = lift(X, Y)
                    if multiply(E, Q, 3) == P:
                        found.append(Q)
    group = {INFINITY}
    frontier = list(group)
    gens = list(dict.fromkeys(found))
    while frontier:
        new = []
        for P in frontier:
            for G in gens:
                S = add(E, P, G)
                if S not in group:
                    group.add(S)
                    new.append(S)
        frontier = new
    orders = {P: order(E, P) for P in group}
    pts = sorted(group, key=lambda P: _sort_key(P, orders[P]))
    n = len(pts)
    two_torsion = sum(1 for P in pts if orders[P] == 2)
    structure = (2, n // 2) if two_torsion == 3 else ((n,) if n > 1 else ())
    return TorsionGroup(tuple(pts), tuple(orders[P] for P in pts), structure)


# ---------------------------------------------------------------- Velu

@dataclass(frozen=True)
class IsogenyStep:
    domain: WeierstrassCurve
    kernel: CurvePoint
    degree: int
    codomain: WeierstrassCurve


def velu_codomain(E: WeierstrassCurve, P: CurvePoint) -> tuple[Fraction, ...]:
    """Raw Velu codomain coefficients for the kernel generated by P."""
    n = order(E, P)
    if n is None:
        raise ValueError(f"{P} is not a torsion point of order <= 16")
    a1, a2, a3, a4, a6 = E.ainvs
    v = w = Fraction(0)
    Q = P
    for k in range(1, n // 2 + 1):
        gx = 3 * Q.x ** 2 + 2 * a2 * Q.x + a4 - a1 * Q.y
        gy = -2 * Q.y - a1 * Q.x - a3
        vq = gx if 2 * k == n else 2 * gx - a1 * gy
        v += vq
        w += gy * gy + Q.x * vq
        Q = add(E, Q, P)
    return (Fraction(a1), Fraction(a2), Fraction(a3), a4 - 5 * v, a6 - E.b2 * v - 7 * w)


def velu(E: WeierstrassCurve, P: CurvePoint) -> IsogenyStep:
    """Cyclic isogeny with kernel <P>; the codomain is returned as a minimal model."""
    if P.is_infinity:
        return IsogenyStep(E, P, 1, E)
    if not E.contains(P.x, P.y):
        raise ValueError(f"{P} is not on {E}")
    n = order(E, P)
    if n is None:
        raise ValueError(f"{P} has infinite order")
    C, _ = integral_model(velu_codomain(E, P))
    M, _ = minimal_model(C)
    return IsogenyStep(E, P, n, M)


@dataclass(frozen=True)
class IsogenousCurve:
    curve: WeierstrassCurve
    path: tuple[int, ...]

    @property
    def label(self) -> str:
        return "-".join(map(str, self.path)) if self.path else "1"


def isogeny_tree(E: WeierstrassCurve, depth: int = 1, budget: BudgetLike = None) -> list[IsogenousCurve]:
    """Curves reached from E by up to ``depth`` rational-torsion-kernel isogenies.

    Deduplicated on minimal models; each curve keeps the first path found
    (breadth first, torsion points in sorted order).
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must be between 1 and {MAX_DEPTH}")
    budget = as_budget(budget)
    start, _ = minimal_model(E)
    seen = {start: ()}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for F in frontier:
            budget.charge()
            for P in torsion_points(F).points:
                if P.is_infinity:
                    continue
                budget.charge()
                C = velu(F, P).codomain
                if C not in seen:
                    seen[C] = seen[F] + (order(F, P),)
                    nxt.append(C)
        frontier = nxt
    return sorted((IsogenousCurve(C, path) for C, path in seen.items()), key=lambda ic: str(ic.curve))


def enumerate_isogenous(E: WeierstrassCurve, depth: int = 1, budget: BudgetLike = None) -> list[WeierstrassCurve]:
    """Minimal models of E and its isogenous curves up to ``depth``, sorted by rendering."""
    return [ic.curve for ic in isogeny_tree(E, depth, budget)]
