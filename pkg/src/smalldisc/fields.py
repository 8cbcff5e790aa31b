"""Abelian extensions of Q as subgroups of (Z/nZ)* and their character groups.

A field is stored canonically by (conductor n, subgroup H of (Z/nZ)*); the
characters cutting it out are those trivial on H, kept primitivized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .arith import FactoredInt, euler_phi, factor, lcm, unit_group
from .cyclotomic import Cyclotomic
from .dirichlet import (
    DirichletCharacter,
    enumerate_characters,
    induce,
    primitivize,
)
from .errors import CanonicalizationError, DomainError, SizeError

CONDUCTOR_CAP = 10**4
COEFFICIENT_CAP = 10**6


def _closure(gens: Iterable[int], n: int) -> frozenset[int]:
    """Subgroup of (Z/nZ)* generated by gens."""
    sub = frozenset({1 % n})
    for g in gens:
        sub = _extend(sub, g % n, n)
    return sub


def _extend(sub: frozenset[int], g: int, n: int) -> frozenset[int]:
    """<sub, g> for an abelian group: union of cosets sub * g^k."""
    out = set(sub)
    power = g % n
    while power not in sub:
        out.update(x * power % n for x in sub)
        power = power * g % n
    return frozenset(out)


def _generating_set(elements: Iterable[int], n: int) -> list[int]:
    gens: list[int] = []
    cur = frozenset({1 % n})
    for a in sorted(elements):
        if a not in cur:
            gens.append(a)
            cur = _extend(cur, a, n)
    return gens


def _annihilator(n: int, gens: Sequence[int]) -> list[DirichletCharacter]:
    grp = unit_group(n)
    E = grp.exponent
    scale = [E // o for o in grp.orders]
    logs = [grp.log(g) for g in gens]
    out = []
    for chi in enumerate_characters(n):
        ok = True
        for v in logs:
            if sum(e * x * s for e, x, s in zip(chi.exponents, v, scale)) % E:
                ok = False
                break
        if ok:
            out.append(chi)
    return out


def _char_sort_key(chi: DirichletCharacter):
    return (chi.modulus, chi.exponents)


@dataclass(frozen=True)
class AbelianField:
    conductor: int
    subgroup: tuple[int, ...]
    characters: tuple[DirichletCharacter, ...] = field(repr=False, compare=False)

    @property
    def degree(self) -> int:
        return len(self.characters)

    @property
    def is_totally_real(self) -> bool:
        return (-1) % self.conductor in self.subgroup

    @property
    def signature(self) -> tuple[int, int]:
        d = self.degree
        return (d, 0) if self.is_totally_real else (0, d // 2)

    @property
    def r1(self) -> int:
        return self.signature[0]

    @property
    def r2(self) -> int:
        return self.signature[1]

    @cached_property
    def discriminant_abs(self) -> FactoredInt:
        out = FactoredInt(1)
        for chi in self.characters:
            out = out * chi.conductor
        return out

    @property
    def discriminant_sign(self) -> int:
        return -1 if self.r2 % 2 else 1

    @property
    def root_discriminant(self) -> float:
        return root_discriminant(self)

    @cached_property
    def exponent(self) -> int:
        return lcm(*(chi.order for chi in self.characters))

    def contains(self, other: AbelianField) -> bool:
        mine = {_char_sort_key(c) for c in self.characters}
        return all(_char_sort_key(c) in mine for c in other.characters)

    def name(self) -> str:
        return f"subgroup:{self.conductor}:" + ",".join(
            str(g) for g in _generating_set(self.subgroup, self.conductor)
        )

    def to_record(self) -> dict:
        return {
            "conductor": self.conductor,
            "subgroup": list(self.subgroup),
            "degree": self.degree,
            "r1": self.r1,
            "r2": self.r2,
            "disc": self.discriminant_abs.to_record(),
            "disc_sign": self.discriminant_sign,
            "rd": self.root_discriminant,
            "characters": [chi.to_record() for chi in self.characters],
        }

    @classmethod
    def from_record(cls, rec: dict) -> AbelianField:
        n = int(rec["conductor"])
        fld = field_from_subgroup(n, _generating_set(rec["subgroup"], n))
        if list(fld.subgroup) != [int(x) for x in rec["subgroup"]]:
            raise DomainError("subgroup in record is not closed or not canonical")
        return fld


def field_from_subgroup(n: int, generators: Sequence[int] = ()) -> AbelianField:
    """Fixed field of <generators> inside Q(zeta_n), canonicalized to its conductor."""
    if n < 1:
        raise DomainError(f"modulus must be positive, got {n}")
    if n > CONDUCTOR_CAP:
        raise SizeError(f"modulus {n} exceeds cap {CONDUCTOR_CAP}")
    for g in generators:
        if math.gcd(g, n) != 1:
            raise DomainError(f"generator {g} is not a unit modulo {n}")
    H = _closure(generators, n)
    chars = _annihilator(n, _generating_set(H, n))
    m = lcm(*(chi.conductor.value for chi in chars))
    if m != n:
        H = frozenset(h % m for h in H)
        chars = _annihilator(m, _generating_set(H, m))
    prim = sorted((primitivize(chi) for chi in chars), key=_char_sort_key)
    if euler_phi(m) != len(H) * len(prim):
        raise AssertionError("character count does not match subgroup index")
    return AbelianField(m, tuple(sorted(H)), tuple(prim))


def cyclotomic(n: int) -> AbelianField:
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n % 4 == 2:
        raise CanonicalizationError(
            f"Q(zeta_{n}) = Q(zeta_{n // 2}); use the canonical conductor {n // 2}"
        )
    return field_from_subgroup(n, [])


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def _squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factor(n).factors)


def quadratic(D: int) -> AbelianField:
    """Q(sqrt(D)) for a fundamental discriminant D."""
    if not is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a fundamental discriminant")
    n = abs(D)
    want = "even" if D > 0 else "odd"
    for chi in enumerate_characters(n):
        if chi.order == 2 and chi.is_primitive and chi.parity == want:
            kernel = [a for a in unit_group(n).units() if chi(a).is_one()]
            return field_from_subgroup(n, _generating_set(kernel, n))
    raise AssertionError(f"no primitive quadratic character for {D}")


def discriminant(fld: AbelianField) -> FactoredInt:
    """|Disc| as the product of the conductors of the field's characters."""
    return fld.discriminant_abs


def root_discriminant(fld: AbelianField) -> float:
    disc = fld.discriminant_abs
    log_d = sum(e * math.log(p) for p, e in disc.factors)
    return math.exp(log_d / fld.degree)


def relative_discriminant_norm(L: AbelianField, K: AbelianField) -> int:
    """N_{K/Q}(d_{L/K}) for abelian fields K inside L.

    Each character psi of Gal(L/K) induces up to Q as the sum of the characters
    of L restricting to it (a coset of the characters of K), so
    N f(psi) = prod(cond over the coset) / |Disc K|.
    """
    if not L.contains(K):
        raise DomainError("K is not a subfield of L")
    m = L.conductor
    key_k = {_char_sort_key(c) for c in K.characters}
    lifted_k = [induce(c, m) for c in K.characters]
    seen: set = set()
    dK = K.discriminant_abs.value
    total = 1
    for chi in L.characters:
        if _char_sort_key(chi) in seen:
            continue
        coset = [primitivize(induce(chi, m) * eta) for eta in lifted_k]
        seen.update(_char_sort_key(c) for c in coset)
        prod = math.prod(c.conductor.value for c in coset)
        if prod % dK:
            raise AssertionError("coset conductor product not divisible by |Disc K|")
        total *= prod // dK
    assert key_k <= seen
    return total


@dataclass(frozen=True)
class ZetaCoefficients:
    """a[m] = number of integral ideals of norm m, for 1 <= m <= N."""

    field: AbelianField = field(repr=False)
    N: int
    a: tuple[int, ...]

    def __getitem__(self, m: int) -> int:
        if not 1 <= m <= self.N:
            raise IndexError(m)
        return self.a[m - 1]

    def partial_sums(self) -> list[int]:
        out, s = [], 0
        for x in self.a:
            s += x
            out.append(s)
        return out


def _spf_sieve(N: int) -> list[int]:
    spf = list(range(N + 1))
    for i in range(2, math.isqrt(N) + 1):
        if spf[i] == i:
            for j in range(i * i, N + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def _assemble(N: int, local) -> tuple[int, ...]:
    """Multiplicative coefficients from local[p][k] = a(p^k)."""
    spf = _spf_sieve(N)
    a = [0] * (N + 1)
    if N >= 1:
        a[1] = 1
    for m in range(2, N + 1):
        p = spf[m]
        k, rest = 0, m
        while rest % p == 0:
            rest //= p
            k += 1
        a[m] = a[rest] * local(p)[k]
    return tuple(a[1:])


def _check_cap(N: int) -> None:
    if N < 0:
        raise DomainError(f"N must be nonnegative, got {N}")
    if N > COEFFICIENT_CAP:
        raise SizeError(f"N={N} exceeds coefficient cap {COEFFICIENT_CAP}")


def _max_power(p: int, N: int) -> int:
    k, q = 0, p
    while q <= N:
        k += 1
        q *= p
    return k


def zeta_coefficients_euler(fld: AbelianField, N: int) -> ZetaCoefficients:
    """Expand prod over characters of the local factors 1/(1 - chi(p) T), exactly."""
    _check_cap(N)
    E = fld.exponent
    cache: dict[int, list[int]] = {}

    def local(p: int) -> list[int]:
        if p not in cache:
            kmax = _max_power(p, N)
            series = [Cyclotomic.integer(E, 1)] + [Cyclotomic.integer(E, 0)] * kmax
            for chi in fld.characters:
                val = chi(p)
                if val.zero:
                    continue
                shift = val.numerator * (E // val.denominator)
                for k in range(1, kmax + 1):
                    series[k] = series[k] + series[k - 1].times_root(shift)
            cache[p] = [c.to_int() for c in series]
        return cache[p]

    return ZetaCoefficients(fld, N, _assemble(N, local))


def _binom(n: int, k: int) -> int:
    return math.comb(n, k)


def splitting_data(fld: AbelianField, p: int) -> tuple[int, int, int]:
    """(e, f, g) for the prime p, read off the subgroup H alone."""
    n = fld.conductor
    pk = 1
    while n % (pk * p) == 0:
        pk *= p
    m = n // pk
    Hm = {h % m for h in fld.subgroup}
    index = euler_phi(m) // len(Hm)
    f = 1
    x = p % m
    while x not in Hm:
        x = x * p % m
        f += 1
    g = index // f
    e = fld.degree // index
    return e, f, g


def zeta_coefficients_splitting(fld: AbelianField, N: int) -> ZetaCoefficients:
    """Local factor (1 - T^f)^(-g) at each p, from the decomposition of p in L."""
    _check_cap(N)
    cache: dict[int, list[int]] = {}

    def local(p: int) -> list[int]:
        if p not in cache:
            kmax = _max_power(p, N)
            _, f, g = splitting_data(fld, p)
            cache[p] = [
                _binom(g + k // f - 1, k // f) if k % f == 0 else 0 for k in range(kmax + 1)
            ]
        return cache[p]

    return ZetaCoefficients(fld, N, _assemble(N, local))


def zeta_coefficients(fld: AbelianField, N: int) -> ZetaCoefficients:
    return zeta_coefficients_splitting(fld, N)


def divisor_function(f: int, N: int) -> tuple[int, ...]:
    """d_f(m) for 1 <= m <= N: coefficients of zeta(s)^f."""
    return _assemble(N, lambda p: [math.comb(k + f - 1, f - 1) for k in range(_max_power(p, N) + 1)])


def count_ideals(fld: AbelianField, Y: float) -> int:
    """Number of integral ideals of norm < Y."""
    from .bounds import lemma31_bounds

    N = math.ceil(Y) - 1
    if N < 1:
        return 0
    _check_cap(N)
    total = sum(zeta_coefficients(fld, N).a)
    if Y >= 1 and total > lemma31_bounds(Y, fld.degree)["ideal_bound"]:
        raise AssertionError(f"ideal count {total} exceeds the ideal-count bound at Y={Y}")
    return total


def class_number_imag_quadratic(D: int) -> int:
    """Count reduced forms (a, b, c) of discriminant D < 0."""
    if D >= 0 or not is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a negative fundamental discriminant")
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            h += 1
        a += 1
    return h


def _canonical_conductor_is(n: int, H: frozenset[int]) -> bool:
    """True when no kernel of reduction (Z/n)* -> (Z/(n/p))* lies inside H."""
    for p in factor(n).primes:
        m = n // p
        if all(a in H for a in range(1, n, m) if math.gcd(a, n) == 1):
            return False
    return True


def subgroups_of_units(n: int) -> list[frozenset[int]]:
    """All subgroups of (Z/nZ)*, as residue sets."""
    units = unit_group(n).units()
    cyclic = {}
    for a in units:
        c = _extend(frozenset({1 % n}), a, n)
        cyclic.setdefault(c, a)
    gens = list(cyclic.values())
    trivial = frozenset({1 % n})
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for S in frontier:
            for g in gens:
                if g in S:
                    continue
                T = _extend(S, g, n)
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(found, key=lambda s: (-len(s), sorted(s)))


def enumerate_abelian_fields(max_conductor: int) -> list[AbelianField]:
    """Every abelian field with canonical conductor <= max_conductor, once each."""
    if max_conductor < 1:
        raise DomainError("max_conductor must be positive")
    if max_conductor > CONDUCTOR_CAP:
        raise SizeError(f"max_conductor {max_conductor} exceeds cap {CONDUCTOR_CAP}")
    out = []
    for n in range(1, max_conductor + 1):
        if n % 4 == 2:
            continue
        for H in subgroups_of_units(n):
            if n > 1 and not _canonical_conductor_is(n, H):
                continue
            fld = field_from_subgroup(n, _generating_set(H, n))
            assert fld.conductor == n
            out.append(fld)
    return out


def parse_field_spec(spec: str) -> AbelianField:
    """Parse "cyclotomic:n", "subgroup:n:g1,g2,..." or "quadratic:D"."""
    from .errors import ParseError

    parts = spec.strip().split(":")
    kind = parts[0]
    try:
        if kind == "cyclotomic" and len(parts) == 2:
            return cyclotomic(_parse_int(parts[1]))
        if kind == "subgroup" and len(parts) in (2, 3):
            gens = []
            if len(parts) == 3 and parts[2].strip():
                gens = [_parse_int(tok) for tok in parts[2].split(",")]
            return field_from_subgroup(_parse_int(parts[1]), gens)
        if kind == "quadratic" and len(parts) == 2:
            return quadratic(_parse_int(parts[1]))
    except DomainError as exc:
        raise ParseError(f"{spec!r}: {exc}") from exc
    raise ParseError(f"unrecognised field spec {spec!r} (offending token {kind!r})")


def _parse_int(tok: str) -> int:
    from .errors import ParseError

    try:
        return int(tok.strip())
    except ValueError:
        raise ParseError(f"offending token {tok!r} is not an integer") from None
