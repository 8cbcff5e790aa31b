import cmath

from hypothesis import given
from hypothesis import strategies as st

from smalldisc.arith import euler_phi
from smalldisc.cyclotomic import Cyclotomic, cyclotomic_polynomial

vec = st.integers(-5, 5)


def cyc(E, data):
    return Cyclotomic(E, tuple(data.draw(st.lists(vec, min_size=E, max_size=E))))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for n in range(1, 60):
        assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


def test_sum_of_roots_vanishes():
    for E in range(2, 30):
        total = Cyclotomic.integer(E, 0)
        for k in range(E):
            total = total + Cyclotomic.root(E, k)
        assert total == 0
        assert total.is_rational() and total.to_int() == 0


@given(st.integers(1, 24), st.data())
def test_ring_laws_against_complex(E, data):
    a, b = cyc(E, data), cyc(E, data)
    for x, y in ((a + b, a.to_complex() + b.to_complex()), (a * b, a.to_complex() * b.to_complex())):
        assert cmath.isclose(x.to_complex(), y, abs_tol=1e-8)
    assert (a * b) == (b * a)
    assert (a - a) == 0


@given(st.integers(1, 24), st.data())
def test_conjugate_and_galois(E, data):
    a = cyc(E, data)
    assert cmath.isclose(a.conjugate().to_complex(), a.to_complex().conjugate(), abs_tol=1e-8)
    assert a.galois(E - 1) == a.conjugate()
    assert a.times_root(1) == a * Cyclotomic.root(E, 1)
    assert (a * a.conjugate()).to_complex().imag < 1e-8
