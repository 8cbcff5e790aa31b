import math
from itertools import accumulate

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smalldisc.arith import divisors, euler_phi
from smalldisc.errors import CanonicalizationError, ParseError, SizeError
from smalldisc.fields import (
    AbelianField,
    class_number_imag_quadratic,
    count_ideals,
    cyclotomic,
    enumerate_abelian_fields,
    field_from_subgroup,
    is_fundamental_discriminant,
    parse_field_spec,
    quadratic,
    relative_discriminant_norm,
    splitting_data,
    zeta_coefficients_euler,
    zeta_coefficients_splitting,
)

from oracles import (
    brute_subgroup_count,
    class_number_formula,
    closed_form_cyclotomic_disc,
    lattice_ideal_counts,
)





def test_module_examples():
    f = cyclotomic(5)
    assert f.discriminant_abs.value == 125 and f.signature == (0, 2)
    assert abs(f.root_discriminant - 3.343702) < 1e-6
    assert cyclotomic(8).discriminant_abs.value == 256
    assert cyclotomic(7).discriminant_abs.value == 7**5
    real = parse_field_spec("subgroup:8:7")
    assert (real.degree, real.r1, real.discriminant_abs.value) == (2, 2, 8)
    assert count_ideals(quadratic(-4), 10) == 7


@pytest.mark.parametrize("n", [n for n in range(1, 61) if n % 4 != 2])
def test_cyclotomic_discriminant_closed_form(n):
    fld = cyclotomic(n)
    assert fld.discriminant_abs.value == closed_form_cyclotomic_disc(n)
    assert fld.degree == euler_phi(n)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19])
def test_prime_cyclotomic_root_discriminant(p):
    want = p ** ((p - 2) / (p - 1))
    assert abs(cyclotomic(p).root_discriminant - want) <= 1e-12 * want


def test_non_canonical_cyclotomic_rejected():
    with pytest.raises(CanonicalizationError):
        cyclotomic(6)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_tame_relative_discriminant(p):
    L, K = cyclotomic(p), quadratic(p if p % 4 == 1 else -p)
    assert L.contains(K)
    rel = relative_discriminant_norm(L, K)
    assert rel == p ** ((p - 3) // 2)
    assert L.discriminant_abs.value == K.discriminant_abs.value ** (L.degree // 2) * rel


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 31, 37, 41])
def test_fields_of_prime_conductor(p):
    n_div = len(divisors(p - 1))
    exact = [f for f in enumerate_abelian_fields(p) if f.conductor == p]
    assert len(exact) == n_div - 1


def test_field_counts_match_subgroup_lattice():
    flds = enumerate_abelian_fields(60)
    per_conductor = {}
    for f in flds:
        per_conductor[f.conductor] = per_conductor.get(f.conductor, 0) + 1
    for n in range(1, 61):
        assert brute_subgroup_count(n) == sum(per_conductor.get(d, 0) for d in divisors(n)), n
    assert len(enumerate_abelian_fields(5)) == 5


@pytest.mark.parametrize(
    "D,form,units",
    [(-4, (1, 0, 1), 4), (-3, (1, 1, 1), 6), (-7, (1, 1, 2), 2)],
)
def test_ideal_counts_against_lattice_points(D, form, units):
    Y = 10**4
    want = lattice_ideal_counts(form, units, Y)
    got = zeta_coefficients_splitting(quadratic(D), Y - 1).a
    assert list(got) == want
    sums = list(accumulate(want))
    for m, s in enumerate(sums, start=2):
        # s counts ideals of norm < m
        assert s <= math.e * m * (1 + math.log(m)) ** 2
    assert count_ideals(quadratic(D), Y) == sums[-1]


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21])
def test_euler_matches_splitting_subfields(n):
    for fld in enumerate_abelian_fields(n):
        if fld.conductor != n:
            continue
        assert zeta_coefficients_euler(fld, 600).a == zeta_coefficients_splitting(fld, 600).a


def test_splitting_data_multiplies_to_degree():
    for fld in enumerate_abelian_fields(40):
        for p in (2, 3, 5, 7, 11, 13):
            e, f, g = splitting_data(fld, p)
            assert e * f * g == fld.degree
            if fld.conductor % p:
                assert e == 1


def test_class_numbers():
    known = {-3: 1, -4: 1, -7: 1, -8: 1, -15: 2, -20: 2, -23: 3, -24: 2, -47: 5, -84: 4, -163: 1, -260: 8}
    for D, h in known.items():
        assert class_number_imag_quadratic(D) == h


@given(st.integers(-4000, -5))
def test_class_number_formula_oracle(D):
    if not is_fundamental_discriminant(D):
        return
    assert class_number_imag_quadratic(D) == class_number_formula(D)


def test_fundamental_discriminants():
    assert [D for D in range(-30, 30) if is_fundamental_discriminant(D)] == [
        -24, -23, -20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17, 21, 24, 28, 29,
    ]


@given(st.integers(2, 150), st.data())
def test_field_invariants(n, data):
    flds = [f for f in enumerate_abelian_fields(n) if f.conductor == n]
    if not flds:
        return
    fld = data.draw(st.sampled_from(flds))
    assert fld.discriminant_abs.value == math.prod(chi.conductor.value for chi in fld.characters)
    assert fld.degree * len(fld.subgroup) == euler_phi(n)
    assert fld.r1 + 2 * fld.r2 == fld.degree
    assert (fld.r2 == 0) == all(chi.parity == "even" for chi in fld.characters)
    assert max(chi.conductor.value for chi in fld.characters) == n
    assert AbelianField.from_record(fld.to_record()) == fld
    assert parse_field_spec(fld.name()) == fld


def test_subgroup_generators_are_canonicalized():
    # <-1> in Q(zeta_12) fixes Q(sqrt 3), of conductor 12; <5> fixes Q(i)
    assert field_from_subgroup(12, [5]) == quadratic(-4)
    assert field_from_subgroup(12, [11]).discriminant_abs.value == 12


@pytest.mark.parametrize("spec", ["cyclotomic:", "cyclotomic:x", "quadratic:-6", "sub:5", "subgroup:8:2", ""])
def test_parse_errors(spec):
    with pytest.raises(ParseError):
        parse_field_spec(spec)


def test_caps():
    with pytest.raises(SizeError):
        enumerate_abelian_fields(10**5)
    with pytest.raises(SizeError):
        zeta_coefficients_splitting(cyclotomic(5), 10**7)
