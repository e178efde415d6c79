import math
from dataclasses import replace
from decimal import Decimal

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from tamagawa.abctriple import (BAD_ORDERING, FACTORING_INCOMPLETE, NOT_COPRIME, SUM_MISMATCH, Category,
                                TripleError, UndefinedMeritError, classify, derive_triples, make_triple, merit,
                                quality)
from tamagawa.arith import parse_factorization

HIGH = (22771715409, 348972425216, 371744140625)
MEDIUM = (658489, 6879707136, 6880365625)
BIG_A4 = (146767394485224241, 13669290314405085785446416384, 13669290314551853179931640625)


def oracle_q_m(c, r):
    mpmath.mp.dps = 50
    q = mpmath.log(c) / mpmath.log(r)
    return q, (q - 1) ** 2 * mpmath.log(r) * mpmath.log(mpmath.log(r))


def test_make_triple_examples():
    t = make_triple(10, 2187, 2197)
    assert t.r == 2 * 5 * 3 * 13
    assert abs(t.q - 1.28975) < 1e-5
    with pytest.raises(TripleError) as e:
        make_triple(2, 4, 6)
    assert e.value.reason == NOT_COPRIME
    with pytest.raises(TripleError) as e:
        make_triple(3, 2, 5)
    assert e.value.reason == BAD_ORDERING
    with pytest.raises(TripleError) as e:
        make_triple(1, 2, 4)
    assert e.value.reason == SUM_MISMATCH


def test_factoring_incomplete_reason():
    p, q = 10 ** 20 + 39, 10 ** 20 + 129
    with pytest.raises(TripleError) as e:
        make_triple(1, p * q, p * q + 1, budget=500)
    assert e.value.reason == FACTORING_INCOMPLETE


def test_supplied_factorizations_are_checked():
    fa, fb, fc = (parse_factorization(x) for x in ("3^16*23^2", "2^13*29^2*37^3", "5^9*11^4*13"))
    t = make_triple(*HIGH, fa=fa, fb=fb, fc=fc)
    assert t.r == 105872910
    with pytest.raises(ValueError):
        make_triple(*HIGH, fa=fb, fb=fa, fc=fc)


def test_quality_and_merit_paper_values():
    t = make_triple(*HIGH)
    assert abs(quality(t) - 1.44181) < 1e-5
    assert abs(merit(t) - 10.5196) < 1e-4
    t = make_triple(*MEDIUM)
    assert abs(quality(t) - 1.38137) < 1e-5
    assert abs(merit(t) - 6.67124) < 1e-5
    assert abs(merit(make_triple(*BIG_A4)) - 34.4028) < 1e-4


def test_one_eight_nine_against_high_precision_oracle():
    t = make_triple(1, 8, 9)
    q, m = oracle_q_m(9, 6)
    assert abs(t.q - float(q)) < 1e-12
    assert abs(t.m - float(m)) < 1e-12
    assert abs(t.q - 1.22629) < 1e-5
    assert abs(t.m - 0.0535110) < 1e-7


def test_merit_undefined_for_tiny_radical():
    # a < b rules out r = 2 for real triples; the guard is checked directly
    t = replace(make_triple(1, 8, 9), r=2)
    with pytest.raises(UndefinedMeritError):
        merit(t)


HIGH_MERIT = (695606563606442148006101677581923, 57576591665034362126590541368210176398589952,
              57576591665729968690196983516216278076171875)


def test_classify():
    assert classify(make_triple(*HIGH)).category is Category.HIGH_QUALITY
    assert classify(make_triple(*MEDIUM)).category is Category.MEDIUM_QUALITY
    assert classify(make_triple(1, 8, 9)).category is Category.PLAIN
    assert classify(make_triple(1, 2, 3)).category is Category.SUB_ABC
    assert not classify(make_triple(*HIGH)).high_merit


def test_classify_high_merit_paper_triple():
    t = make_triple(*HIGH_MERIT)
    assert str(t.fa) == "73^3*97^2*103^4*577*751*3167*1230379"
    assert abs(t.q - 1.28114) < 1e-5
    assert abs(t.m - 27.1356) < 1e-4
    cat = classify(t)
    assert cat.high_merit and cat.category is Category.PLAIN


def test_classify_boundaries():
    t = make_triple(1, 8, 9)
    assert classify(replace(t, q_exact=Decimal("1.4"))).category is Category.HIGH_QUALITY
    assert classify(replace(t, q_exact=Decimal("1.3"))).category is Category.PLAIN
    assert classify(replace(t, q_exact=Decimal("1"))).category is Category.SUB_ABC


def test_derive_triples_small_example():
    out = {d.label: d for d in derive_triples(make_triple(10, 2187, 2197))}
    assert set(out) == {"A1", "A2", "A3", "A4"}
    a3, a4 = out["A3"], out["A4"]
    assert (a3.a, a3.b, a3.c) == (43840, 4782969, 4826809)
    assert abs(a3.quality - 1.41370) < 1e-5
    assert (a4.a, a4.b, a4.c) == (25, 4804839, 4804864)
    assert abs(a4.quality - 1.41328) < 1e-5


def test_derive_triples_reports_invalid_candidates():
    out = derive_triples(make_triple(1, 3, 4))
    # b odd, a odd: A2 = (9, 16, 25) is valid; all candidates keep A + B = C
    for d in out:
        assert d.a + d.b == d.c
        assert d.valid == (d.error is None)


coprime_pairs = st.tuples(st.integers(min_value=1, max_value=10 ** 6), st.integers(min_value=1, max_value=10 ** 6)) \
    .map(sorted).filter(lambda ab: ab[0] < ab[1] and math.gcd(*ab) == 1)


@given(coprime_pairs)
def test_derived_cross_identities(ab):
    a, b = ab
    c = a + b
    t = make_triple(a, b, c)
    base = {d.label: (d.a, d.b, d.c) for d in derive_triples(t)}
    # a + e = 2c: A1 of (a, 2b, b + c) is A4 of (a, b, c)
    if a % 2 and a < 2 * b:
        alt = {d.label: (d.a, d.b, d.c) for d in derive_triples(make_triple(a, 2 * b, b + c))}
        assert alt["A1"] == base["A4"]
    # 2a + b = d: A3 of (2a, b, a + c) is A2 of (a, b, c)
    if b % 2 and 2 * a < b:
        alt = {d.label: (d.a, d.b, d.c) for d in derive_triples(make_triple(2 * a, b, a + c))}
        assert alt["A3"] == base["A2"]


@given(coprime_pairs)
def test_quality_matches_oracle_and_abc_condition(ab):
    a, b = ab
    t = make_triple(a, b, a + b)
    q, m = oracle_q_m(t.c, t.r)
    assert abs(t.q - float(q)) < 1e-12
    assert (t.q > 1) == (t.c > t.r)
    if t.r >= 3:
        assert abs(t.m - float(m)) < 1e-9 * max(1.0, float(m))
