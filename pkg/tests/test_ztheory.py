from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from lenshodge.errors import InvalidModulus, NotInvertible
from lenshodge.ztheory import (Residue, divisors, euler_phi, inverse_mod, lcm, mod_quot, prime_factors,
                               reduce_dprime, unit_group, units)


def test_unit_group_examples():
    assert unit_group(7) == [1, 2, 3, 4, 5, 6]
    assert unit_group(1) == [0]
    assert unit_group(8) == [1, 3, 5, 7]
    assert [u.value for u in units(8)] == [1, 3, 5, 7]


def test_unit_group_size_is_phi():
    for q in range(1, 201):
        assert len(unit_group(q)) == sum(1 for a in range(q) if gcd(a, q) == 1)
        assert len(unit_group(q)) == int(sympy.totient(q))
        assert euler_phi(q) == int(sympy.totient(q))


def test_bad_modulus():
    with pytest.raises(InvalidModulus):
        unit_group(0)
    with pytest.raises(InvalidModulus):
        Residue(3, -2)


def test_mod_quot_examples():
    # 22^-1 = 29 mod 49 by extended Euclid
    assert inverse_mod(22, 49) == 29
    assert mod_quot(8, 22, 49) == 36
    assert mod_quot(5, 1, 7) == 5
    with pytest.raises(NotInvertible):
        mod_quot(1, 3, 6)


def test_mod_quot_exhaustive():
    for q in range(1, 51):
        for b in unit_group(q):
            for a in range(q):
                assert mod_quot(a, b, q) * b % q == a % q


def test_divisors():
    assert divisors(49) == [1, 7, 49]
    assert divisors(1) == [1]
    assert divisors(98) == [1, 2, 7, 14, 49, 98]
    for q in range(1, 300):
        assert divisors(q) == sympy.divisors(q)


def test_prime_factors_and_lcm():
    assert prime_factors(300) == [2, 3, 5]
    assert prime_factors(1) == []
    assert lcm(4, 6, 10) == 60
    assert lcm() == 1


def test_reduce_dprime_examples():
    assert reduce_dprime(14, 7) == 2
    assert reduce_dprime(49, 7) == 7
    assert reduce_dprime(12, 8) == 3
    for g in range(12):
        assert (8 * g % 12 == 0) == (g % 3 == 0)


def test_reduce_dprime_equivalence_exhaustive():
    for d in range(1, 61):
        for beta in range(61):
            dp = reduce_dprime(d, beta)
            for g in range(61):
                assert (beta * g % d == 0) == (g % dp == 0)


@given(st.integers(-10**6, 10**6), st.integers(1, 500))
def test_residue_normalized(v, q):
    r = Residue(v, q)
    assert 0 <= r.value < q and (r.value - v) % q == 0
