import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smalldisc.arith import euler_phi
from smalldisc.dirichlet import (
    DirichletCharacter,
    RootOfUnity,
    count_primitive_conductor_at_most,
    enumerate_characters,
    induce,
    primitive_count,
    primitivize,
    restrict,
)
from smalldisc.errors import DomainError, SizeError

from oracles import brute_conductor



moduli = st.integers(1, 200)


def test_examples():
    assert [chi.conductor.value for chi in enumerate_characters(8)] == [1, 8, 4, 8]
    chi = DirichletCharacter(5, (2,))
    assert chi(2).angle == Fraction(1, 2)
    assert chi.order == 2 and chi.parity == "even"
    assert count_primitive_conductor_at_most(10) == 17
    assert primitive_count(1) == 1 and primitive_count(2) == 0 and primitive_count(4) == 1


def test_primitivize_mod8_lift_of_mod4():
    chi4 = enumerate_characters(4)[1]
    lifted = induce(chi4, 8)
    assert lifted.conductor.value == 4
    assert primitivize(lifted) == chi4


@given(moduli)
def test_character_group_has_phi_elements(n):
    chars = enumerate_characters(n)
    assert len(chars) == euler_phi(n)
    assert chars[0].is_trivial
    units = [a for a in range(1, n + 1) if math.gcd(a, n) == 1]
    tables = {tuple(chi.angle(a) for a in units) for chi in chars}
    assert len(tables) == len(chars)


@given(moduli, st.data())
def test_conductor_matches_brute_force(n, data):
    chi = data.draw(st.sampled_from(enumerate_characters(n)))
    assert chi.conductor.value == brute_conductor(chi)


@given(moduli, st.data())
def test_multiplicativity_and_periodicity(n, data):
    chi = data.draw(st.sampled_from(enumerate_characters(n)))
    a, b = data.draw(st.integers(-10**6, 10**6)), data.draw(st.integers(-10**6, 10**6))
    assert chi(a * b) == chi(a) * chi(b)
    assert chi(a + n) == chi(a)


@given(moduli, st.data())
def test_group_operations(n, data):
    chars = enumerate_characters(n)
    chi, psi = data.draw(st.sampled_from(chars)), data.draw(st.sampled_from(chars))
    for a in range(1, n):
        assert (chi * psi)(a) == chi(a) * psi(a)
        assert chi.conjugate()(a) == chi(a).conjugate()
    assert (chi * chi.conjugate()).is_trivial
    assert DirichletCharacter.from_record(chi.to_record()) == chi


@given(st.integers(1, 60), st.integers(1, 6), st.data())
def test_induce_restrict_roundtrip(n, k, data):
    chi = data.draw(st.sampled_from(enumerate_characters(n)))
    big = induce(chi, n * k)
    assert big.conductor == chi.conductor
    assert restrict(big, n) == chi
    assert primitivize(big) == primitivize(chi)


def test_restrict_rejects_bad_modulus():
    chi = enumerate_characters(8)[1]  # conductor 8
    with pytest.raises(DomainError):
        restrict(chi, 4)


def test_count_matches_brute_force_up_to_100():
    running = 0
    for M in range(1, 101):
        running += sum(1 for chi in enumerate_characters(M) if brute_conductor(chi) == M)
        assert count_primitive_conductor_at_most(M) == running


def test_count_le_square_and_cap():
    assert all(count_primitive_conductor_at_most(M) <= M * M for M in range(1, 501))
    with pytest.raises(SizeError):
        count_primitive_conductor_at_most(10, cap=5)
    with pytest.raises(SizeError):
        enumerate_characters(10**7)


def test_root_of_unity():
    z = RootOfUnity(3, 4)
    assert z.conjugate() == RootOfUnity(1, 4)
    assert (z * z).angle == Fraction(1, 2)
    assert abs(z.to_complex() - (-1j)) < 1e-15
