import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smalldisc.cyclotomic import Cyclotomic
from smalldisc.errors import CharacterTableError, DomainError, ParseError, SizeError
from smalldisc.reps import (
    RamificationFiltration,
    artin_conductor_exponent,
    character_table,
    fixed_space_dim,
    inner_product,
    tensor_conductor_check,
    tensor_trivial_multiplicity,
)
from smalldisc.reps.artin import random_filtration
from smalldisc.reps.chartable import ClassFunction, certify_table
from smalldisc.reps.groups import (
    abelian_subgroups,
    alternating_group,
    dihedral_group,
    expected_max_degree,
    from_cycles,
    group_from_string,
    min_abelian_subgroup_index,
    mul,
    parse_generators,
    quaternion_group,
    suite_groups,
    symmetric_group,
)

SUITE = suite_groups()
TABLES = {name: character_table(G) for name, G in SUITE.items()}
names = st.sampled_from(sorted(SUITE))


def permutation_character(G):
    vals = [sum(1 for i, x in enumerate(c.representative) if i == x) for c in G.classes]
    E = G.exponent
    return ClassFunction(G, tuple(Cyclotomic.integer(E, v) for v in vals), "perm")


def n_orbits(G):
    seen, count = set(), 0
    for i in range(G.moved_points):
        if i in seen:
            continue
        count += 1
        orbit = {i}
        frontier = [i]
        while frontier:
            x = frontier.pop()
            for g in G.generators:
                if g[x] not in orbit:
                    orbit.add(g[x])
                    frontier.append(g[x])
        seen |= orbit
    return count


def expected_classes(name):
    if name.startswith("C"):
        return int(name[1:])
    if name.startswith("D"):
        n = int(name[1:])
        return (n + 3) // 2 if n % 2 else n // 2 + 3
    return {"S3": 3, "S4": 5, "S5": 7, "A4": 4, "A5": 5, "Q8": 5}[name]


def test_permutation_convention():
    x = from_cycles([(1, 2)], 3)
    y = from_cycles([(2, 3)], 3)
    xy = mul(x, y)
    assert all(xy[i] == y[x[i]] for i in range(3))
    assert parse_generators("(1 2)(3 4), (1 2 3)")[0] == 4
    assert group_from_string("()").order == 1


def test_group_orders():
    assert symmetric_group(5).order == 120
    assert alternating_group(5).order == 60
    assert dihedral_group(7).order == 14
    assert quaternion_group().order == 8
    assert group_from_string("(1 2),(1 2 3 4)").order == 24
    assert group_from_string("(1 2 3),(3 4 5)").order == 60


@pytest.mark.parametrize("text", ["(1 2", "(1 a)", "(1 1)", "", "(0 1)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        group_from_string(text)


def test_order_cap():
    with pytest.raises(SizeError):
        group_from_string("(1 2 3 4 5 6 7 8),(1 2)", cap=1000)


@pytest.mark.parametrize("name", sorted(SUITE))
def test_table_structure(name):
    G, T = SUITE[name], TABLES[name]
    assert len(T) == len(G.classes) == expected_classes(name)
    assert sum(d * d for d in T.degrees) == G.order
    assert all(G.order % d == 0 for d in T.degrees)
    assert T.max_degree == expected_max_degree(name)
    assert T.irreducibles[0].reduced_values == T.trivial.reduced_values
    T.certify()


@pytest.mark.parametrize("name", sorted(SUITE))
def test_permutation_character_decomposes(name):
    G, T = SUITE[name], TABLES[name]
    pi = permutation_character(G)
    mults = [inner_product(pi, chi) for chi in T.irreducibles]
    assert all(m.denominator == 1 and m >= 0 for m in mults)
    assert mults[0] == n_orbits(G)  # Burnside
    assert sum(m * chi.degree for m, chi in zip(mults, T.irreducibles)) == G.moved_points


@given(names, st.data())
def test_tensor_products_decompose(name, data):
    T = TABLES[name]
    rho = data.draw(st.sampled_from(T.irreducibles))
    psi = data.draw(st.sampled_from(T.irreducibles))
    prod = rho * psi
    mults = [inner_product(prod, chi) for chi in T.irreducibles]
    assert all(isinstance(m, Fraction) and m.denominator == 1 and m >= 0 for m in mults)
    assert sum(m * chi.degree for m, chi in zip(mults, T.irreducibles)) == rho.degree * psi.degree
    assert tensor_trivial_multiplicity(rho, psi) == int(rho == psi)


def test_s3_values():
    G, T = SUITE["S3"], TABLES["S3"]
    orders = [c.element_order for c in G.classes]
    by_order = {1: (1, 1, 2), 2: (1, -1, 0), 3: (1, 1, -1)}
    want = sorted(list(col) for col in zip(*(by_order[o] for o in orders)))
    assert sorted([v.to_int() for v in chi.values] for chi in T.irreducibles) == want


def test_certify_rejects_wrong_rows():
    G, T = SUITE["S3"], TABLES["S3"]
    rows = list(T.irreducibles)
    rows[1] = rows[0]
    with pytest.raises(CharacterTableError):
        certify_table(G, rows)


def test_table_record_roundtrip():
    from smalldisc.reps.chartable import CharacterTable

    for name in ("S4", "Q8", "C7", "A5"):
        G, T = SUITE[name], TABLES[name]
        back = CharacterTable.from_record(G, T.to_record())
        assert back.to_record() == T.to_record()


@pytest.mark.parametrize("name", [n for n in sorted(SUITE) if SUITE[n].order <= 200])
def test_isaacs_sandwich(name):
    r = TABLES[name].max_degree
    m = min_abelian_subgroup_index(SUITE[name])
    assert r <= m <= math.factorial(r) ** 2


def test_min_abelian_index_values():
    want = {"S3": 2, "S4": 6, "S5": 20, "A4": 3, "A5": 12, "Q8": 2, "D7": 2}
    for name, m in want.items():
        assert min_abelian_subgroup_index(SUITE[name]) == m


def test_abelian_subgroups_are_abelian_subgroups():
    G = SUITE["S4"]
    subs = abelian_subgroups(G)
    assert len(subs) == len(set(subs))
    for A in subs:
        assert all(mul(a, b) == mul(b, a) for a in A for b in A)
        assert all(mul(a, b) in A for a in A for b in A)
    with pytest.raises(SizeError):
        abelian_subgroups(symmetric_group(6), cap=200)


def test_fixed_space_dims():
    G, T = SUITE["S4"], TABLES["S4"]
    whole = frozenset(G.elements)
    for i, chi in enumerate(T.irreducibles):
        assert fixed_space_dim(chi, whole) == (1 if i == 0 else 0)
        assert fixed_space_dim(chi, {G.identity}) == chi.degree
    with pytest.raises(DomainError):
        fixed_space_dim(T.irreducibles[1], {G.identity, from_cycles([(0, 1, 2)], 4)})


def test_artin_exponent_examples():
    G, T = SUITE["C5"], TABLES["C5"]
    g = G.generators[0]
    tame = RamificationFiltration.from_generators(G, [[g]])
    wild = RamificationFiltration.from_generators(G, [[g], [g], [g]])
    for chi in T.irreducibles[1:]:
        assert artin_conductor_exponent(chi, tame) == 1
        assert artin_conductor_exponent(chi, wild) == 3
    assert artin_conductor_exponent(T.irreducibles[0], wild) == 0

    S3, T3 = SUITE["S3"], TABLES["S3"]
    c3 = [x for x in S3.elements if x != S3.identity and mul(x, mul(x, x)) == S3.identity][0]
    filt = RamificationFiltration.from_generators(S3, [S3.generators, [c3]])
    # G_0 = S3, G_1 = C3: f = codim V^S3 + (1/2) codim V^C3
    degs = {chi.degree: artin_conductor_exponent(chi, filt) for chi in T3.irreducibles[1:]}
    assert degs[2] == 2 + Fraction(1, 2) * 2
    assert degs[1] == 1


def test_filtration_validation():
    G = SUITE["S3"]
    with pytest.raises(DomainError):
        RamificationFiltration(G, (frozenset(G.elements),))
    with pytest.raises(DomainError):
        RamificationFiltration(G, (frozenset({G.identity}), frozenset(G.elements), frozenset({G.identity})))


@given(names, st.integers(0, 2**32))
def test_tensor_conductor_inequality(name, seed):
    rng = random.Random(seed)
    G, T = SUITE[name], TABLES[name]
    filt = random_filtration(G, rng)
    rho, psi = rng.choice(T.irreducibles), rng.choice(T.irreducibles)
    res = tensor_conductor_check(rho, psi, filt)
    assert res["holds"]
    assert artin_conductor_exponent(rho, filt) >= 0
