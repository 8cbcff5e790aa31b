import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smalldisc.arith import (
    FactoredInt,
    divisors,
    euler_phi,
    factor,
    is_prime,
    multiplicative_order,
    smallest_primitive_root,
    unit_group,
)
from smalldisc.errors import DomainError, SizeError


def naive_factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def naive_phi(n):
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def naive_order(a, n):
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def test_small_values():
    assert factor(360).as_dict() == {2: 3, 3: 2, 5: 1}
    assert factor(1).factors == ()
    assert str(factor(600851475143)) == "71*839*1471*6857"
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_semiprime_of_large_primes():
    p, q = 1_000_000_007, 998_244_353
    assert factor(p * q).as_dict() == {q: 1, p: 1}


@given(st.integers(1, 10**7))
def test_factor_matches_trial_division(n):
    assert factor(n).as_dict() == naive_factor(n)


@given(st.integers(1, 2**62))
def test_factor_remultiplies(n):
    f = factor(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(is_prime(p) for p in f.primes)
    assert list(f.primes) == sorted(f.primes)


def test_factor_domain_and_cap():
    with pytest.raises(DomainError):
        factor(0)
    with pytest.raises(SizeError):
        factor(2**64)
    with pytest.raises(SizeError):
        factor(10**6, cap=1000)


def test_factored_int_arithmetic():
    a, b = factor(12), factor(45)
    assert (a * b).value == 540
    assert (a**3).value == 1728
    assert a.divides(factor(36)) and not a.divides(b)
    assert FactoredInt.from_record(a.to_record()) == a
    with pytest.raises(DomainError):
        FactoredInt(12, ((2, 1), (3, 1)))


@given(st.integers(1, 3000))
def test_phi_and_divisors(n):
    assert euler_phi(n) == naive_phi(n)
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]
    assert sum(euler_phi(d) for d in divisors(n)) == n


def test_unit_group_generators():
    assert unit_group(8).cyclic_factors == ((7, 2), (5, 2))
    assert unit_group(5).cyclic_factors == ((2, 4),)
    assert unit_group(4).cyclic_factors == ((3, 2),)
    assert smallest_primitive_root(7, 7) == 3
    assert smallest_primitive_root(9, 3) == 2
    assert unit_group(1).units() == [0]


@given(st.integers(1, 2000))
def test_unit_group_structure(n):
    grp = unit_group(n)
    assert grp.order == euler_phi(n)
    units = grp.units()
    assert len(units) == grp.order
    for a in units[:50]:
        v = grp.log(a)
        assert grp.element(v) == a % max(n, 1) or n == 1


@given(st.integers(2, 500), st.data())
def test_order_matches_naive(n, data):
    a = data.draw(st.integers(1, n - 1))
    if math.gcd(a, n) != 1:
        return
    k = multiplicative_order(a, n)
    assert k == naive_order(a, n)
    assert euler_phi(n) % k == 0


def test_order_of_nonunit_rejected():
    with pytest.raises(DomainError):
        multiplicative_order(2, 8)
