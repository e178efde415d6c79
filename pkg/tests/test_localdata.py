import math

import pytest

from tamagawa.arith import Factorization, IncompleteFactorizationError, factor
from tamagawa.curve import WeierstrassCurve
from tamagawa.localdata import (ADDITIVE, GOOD, NONSPLIT, SPLIT, UndefinedQualityError, global_data,
                                tamagawa_quality, tate)

KIND = {"split": SPLIT, "nonsplit": NONSPLIT, "additive": ADDITIVE}
FREY_189 = WeierstrassCurve(0, 7, 0, -8, 0)
RECORD = WeierstrassCurve(1, 0, 0, -1054050116, -12046088636400)


def check_local_invariants(ld):
    if ld.kind == GOOD:
        assert ld.f == 0 and ld.kodaira == "I0" and ld.c == 1
    elif ld.kind in (SPLIT, NONSPLIT):
        n = int(ld.kodaira[1:])
        assert ld.f == 1 and n >= 1 and not ld.kodaira.endswith("*")
        assert ld.c == (n if ld.kind == SPLIT else (2 if n % 2 == 0 else 1))
    else:
        assert ld.f >= 2
        assert ld.c in (1, 2, 3, 4)


def test_tate_examples():
    ld = tate(FREY_189, 3)
    assert (ld.kodaira, ld.f, ld.c, ld.kind) == ("I4", 1, 4, SPLIT)
    ld = tate(FREY_189, 7)
    assert (ld.kodaira, ld.f, ld.c, ld.kind) == ("I0", 0, 1, GOOD)
    tau = 1
    for p in factor(abs(RECORD.disc)).primes():
        ld = tate(RECORD, p)
        check_local_invariants(ld)
        tau *= ld.c
    assert tau == 31104


def test_global_data_record_curve():
    g = global_data(RECORD)
    assert (g.N, g.tau) == (39270, 31104)
    assert abs(g.q_tau - 2.30681) < 1e-5
    assert str(g.tau_factorization()) == "2^7*3^5"
    assert g.N_factorization().n == g.N
    assert g.minimal == RECORD


def test_global_data_good_reduction_at_hinted_primes():
    # 11a1 has a single bad prime; every other hinted prime contributes nothing
    g = global_data(WeierstrassCurve(0, -1, 1, -10, -20), Factorization.from_dict({11: 1, 13: 1}))
    assert (g.N, g.tau) == (11, 5)
    assert [ld.p for ld in g.locals] == [11]


def test_global_data_refuses_unfactored_discriminant():
    p, q = 10 ** 20 + 39, 10 ** 20 + 129
    # y^2 + y = x^3 + a6 has discriminant -27 (4 a6 + 1)^2
    b6 = p * q if (p * q) % 4 == 1 else 3 * p * q  # b6 = 4 a6 + 1 must be 1 mod 4
    E = WeierstrassCurve(0, 0, 1, 0, (b6 - 1) // 4)
    with pytest.raises(IncompleteFactorizationError):
        global_data(E, budget=5000)


def test_tamagawa_quality_examples():
    assert abs(tamagawa_quality(31104, 39270) - 2.30681) < 1e-5
    assert abs(tamagawa_quality(87040, 364650) - 2.26473) < 1e-5
    assert tamagawa_quality(1, 39270) == 0
    with pytest.raises(UndefinedQualityError):
        tamagawa_quality(4, 2)
    lnN = math.log(39270)
    assert abs(tamagawa_quality(31104, 39270) - math.log(31104) * math.log(lnN) / lnN) < 1e-12


def test_against_pari_fixture(localdata_rows):
    assert len(localdata_rows) == 1500
    for raw, minimal, N, tau, local in localdata_rows:
        g = global_data(raw)
        assert g.minimal == minimal, raw
        assert (g.N, g.tau) == (N, tau), raw
        got = [(ld.p, ld.kodaira, ld.f, ld.c, ld.kind) for ld in g.locals]
        assert got == [(p, k, f, c, KIND[kind]) for p, k, f, c, kind in local], raw
        for ld in g.locals:
            check_local_invariants(ld)
