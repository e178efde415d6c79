import pytest
from hypothesis import given, strategies as st

from tamagawa.arith import (BudgetExceeded, Factorization, IncompleteFactorizationError, StepBudget, factor,
                            factor_with_primes, is_prime, parse_factorization, primes_up_to, radical, valuation)


def trial_division(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def test_is_prime_examples():
    assert is_prime(4817)
    assert not is_prime(1)
    assert is_prime(2147483647)
    assert trial_division(2147483647) == {2147483647: 1}


@pytest.mark.parametrize("n", [561, 1105, 3215031751, 3825123056546413051, 318665857834031151167461,
                               2 ** 64 + 1, (2 ** 61 - 1) * (2 ** 31 - 1)])
def test_is_prime_rejects_pseudoprimes(n):
    assert not is_prime(n)


@pytest.mark.parametrize("n", [2 ** 61 - 1, 2 ** 89 - 1, 2 ** 127 - 1, 10 ** 30 + 57, 2 ** 521 - 1])
def test_is_prime_large_primes(n):
    assert is_prime(n)


def test_factor_examples():
    assert factor(371744140625).as_dict() == {5: 9, 11: 4, 13: 1}
    one = factor(1)
    assert one.factors == () and one.complete
    assert factor(82944).as_dict() == {2: 10, 3: 4}


def test_factor_large_semiprime():
    p, q = 1000000007, 998244353
    f = factor(p * q * 3 ** 5)
    assert f.as_dict() == {3: 5, q: 1, p: 1} and f.complete


def test_factor_perfect_power():
    p = 2 ** 31 - 1
    assert factor(p ** 7 * 1009 ** 2).as_dict() == {1009: 2, p: 7}


def test_factor_budget_exhaustion_is_incomplete():
    p, q = 10 ** 20 + 39, 10 ** 20 + 129
    assert is_prime(p) and is_prime(q)
    f = factor(2 ** 5 * p * q, budget=2000)
    assert not f.complete
    assert f.cofactor == p * q
    assert f.as_dict() == {2: 5}
    assert "[" in str(f)


def test_factor_with_primes_uses_hint_and_falls_back():
    n = 2 ** 4 * 3 * 1000003 * 1000033
    f = factor_with_primes(n, [2, 3])
    assert f.as_dict() == {2: 4, 3: 1, 1000003: 1, 1000033: 1}
    with pytest.raises(ValueError):
        factor_with_primes(n, [6])


def test_radical_examples():
    fs = [factor(n) for n in (22771715409, 348972425216, 371744140625)]
    assert radical(*fs) == 105872910
    assert radical(factor(1)) == 1
    assert radical(factor(8), factor(9)) == 6


def test_radical_rejects_incomplete():
    f = Factorization(35, ((5, 1),), complete=False, cofactor=7)
    with pytest.raises(IncompleteFactorizationError):
        radical(f)


def test_factorization_invariants_enforced():
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(ValueError):
        Factorization(12, ((2, 2),))
    with pytest.raises(ValueError):
        Factorization(12, ((2, 0), (3, 1)))


def test_factorization_rendering_roundtrip():
    f = factor(31104)
    assert str(f) == "2^7*3^5"
    assert parse_factorization(str(f)) == f
    assert str(factor(1)) == "1"
    assert parse_factorization("5^9*11^4*13").n == 371744140625
    with pytest.raises(ValueError):
        parse_factorization("4^2")


def test_factorization_algebra():
    a, b = factor(360), factor(84)
    assert (a * b).n == 360 * 84
    assert (a ** 3).n == 360 ** 3
    assert (a * b).exact_div(b) == a
    with pytest.raises(ValueError):
        b.exact_div(a)


def test_step_budget():
    b = StepBudget(10)
    b.charge(10)
    assert b.exhausted() and b.remaining == 0
    with pytest.raises(BudgetExceeded):
        b.charge()
    assert StepBudget().remaining is None


def test_valuation():
    assert valuation(82944, 2) == 10
    assert valuation(82944, 3) == 4
    assert valuation(7, 2) == 0


SIEVE_LIMIT = 10 ** 6
_SIEVE = set(primes_up_to(SIEVE_LIMIT))


def test_sieve_against_trial_division():
    sample = range(1, 20000)
    assert {n for n in sample if n in _SIEVE} == {n for n in sample if list(trial_division(n).items()) == [(n, 1)]}


@given(st.integers(min_value=1, max_value=10 ** 12))
def test_radical_divides_and_is_squarefree(n):
    r = radical(factor(n))
    assert n % r == 0
    assert all(e == 1 for _, e in factor(r).factors)


@given(st.lists(st.integers(min_value=2, max_value=2 ** 40), min_size=1, max_size=3))
def test_factor_products_of_large_numbers(parts):
    n = 1
    for x in parts:
        n *= x
    f = factor(n)
    assert f.complete and f.product() == n
    assert all(is_prime(p) for p in f.primes())
