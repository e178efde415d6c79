"""Randomized property suites; each runs at least 200 cases (see conftest)."""
import math

from hypothesis import given, settings, strategies as st

from tamagawa.abctriple import derive_triples, make_triple
from tamagawa.arith import factor, is_prime, primes_up_to, valuation
from tamagawa.curve import WeierstrassCurve, frey_curve, minimal_model
from tamagawa.isogeny import torsion_points, velu
from tamagawa.localdata import SPLIT, global_data

SQUAREFREE = [d for d in range(-30, 31) if d and all(abs(d) % (p * p) for p in (2, 3, 5))]
SIEVE_LIMIT = 10 ** 6
PRIMES = set(primes_up_to(SIEVE_LIMIT))


def oracle_factor(n):
    """Smallest-prime-factor walk over the sieve primes."""
    out = {}
    for p in sorted(PRIMES):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def triples(max_value):
    return st.tuples(st.integers(1, max_value), st.integers(1, max_value)).map(sorted) \
        .filter(lambda ab: ab[0] < ab[1] and math.gcd(*ab) == 1) \
        .map(lambda ab: make_triple(ab[0], ab[1], ab[0] + ab[1]))


def odd_part(n):
    while n % 2 == 0:
        n //= 2
    return n


coeff = st.integers(min_value=-10 ** 5, max_value=10 ** 5)


def _nonsingular(a):
    a1, a2, a3, a4, a6 = a
    b2, b4, b6 = a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6 != 0


curves = st.tuples(coeff, coeff, coeff, coeff, coeff).filter(_nonsingular).map(lambda a: WeierstrassCurve(*a))


# (a)
@given(triples(10 ** 9), st.sampled_from(SQUAREFREE))
def test_frey_discriminant_identity(t, d):
    E = frey_curve(t, d)
    assert E.disc == 16 * d ** 6 * (t.a * t.b * t.c) ** 2


# (b)
@given(triples(10 ** 6), st.sampled_from([1, -1]))
def test_frey_conductor_is_radical_up_to_two(t, d):
    g = global_data(frey_curve(t, d))
    assert odd_part(g.N) == odd_part(t.r)
    assert g.N // odd_part(g.N) in [2 ** k for k in range(9)]
    for ld in g.locals:
        if ld.p != 2:
            assert ld.f == 1
            assert t.a * t.b * t.c % ld.p == 0


# (c)
@given(triples(10 ** 5), st.sampled_from(SQUAREFREE))
def test_conductor_invariant_under_velu(t, d):
    E, _ = minimal_model(frey_curve(t, d))
    g = global_data(E)
    for P in torsion_points(E).points:
        C = velu(E, P).codomain
        h = global_data(C)
        assert h.N == g.N
        assert [ld.p for ld in h.locals] == [ld.p for ld in g.locals]


# (d)
@given(triples(10 ** 7))
def test_derived_triple_identities(t):
    out = derive_triples(t)
    assert [d.label for d in out] == ["A1", "A2", "A3", "A4"]
    for d in out:
        assert d.a + d.b == d.c
        if d.valid:
            assert math.gcd(d.a, d.b) == 1 and 0 < d.a < d.b


# (e)
@given(curves)
def test_minimal_model_idempotent_and_shrinks_discriminant(E):
    M, _ = minimal_model(E)
    assert minimal_model(M)[0] == M
    assert abs(M.disc) <= abs(E.disc)
    assert E.disc % M.disc == 0
    assert M.j == E.j
    assert M.a1 in (0, 1) and M.a3 in (0, 1) and M.a2 in (-1, 0, 1)


# (f)
@given(curves)
def test_c4_c6_discriminant_identity(E):
    assert 1728 * E.disc == E.c4 ** 3 - E.c6 ** 2
    assert 4 * E.b8 == E.b2 * E.b6 - E.b4 ** 2


# (g)
@settings(max_examples=1000)
@given(st.integers(min_value=1, max_value=SIEVE_LIMIT - 1))
def test_factor_and_is_prime_match_sieve(n):
    assert is_prime(n) == (n in PRIMES)
    f = factor(n)
    assert f.complete and f.as_dict() == oracle_factor(n)


# split multiplicative primes of Frey curves carry c_p = v_p(disc)
@given(triples(10 ** 6), st.sampled_from(SQUAREFREE))
def test_frey_split_primes_tamagawa_is_valuation(t, d):
    E = frey_curve(t, d)
    g = global_data(E)
    for ld in g.locals:
        if ld.kind == SPLIT:
            assert ld.c == valuation(g.minimal.disc, ld.p)
            if ld.p > 3 and d % ld.p:
                assert ld.c == 2 * valuation(t.a * t.b * t.c, ld.p)


ALL_PROPERTIES = [
    ("a", test_frey_discriminant_identity),
    ("b", test_frey_conductor_is_radical_up_to_two),
    ("c", test_conductor_invariant_under_velu),
    ("d", test_derived_triple_identities),
    ("e", test_minimal_model_idempotent_and_shrinks_discriminant),
    ("f", test_c4_c6_discriminant_identity),
    ("g", test_factor_and_is_prime_match_sieve),
]
