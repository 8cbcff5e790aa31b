"""Dirichlet characters: exact evaluation, conductors, enumeration, counting."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .arith import FactoredInt, UnitGroupStructure, factor, lcm, unit_group
from .cyclotomic import Cyclotomic
from .errors import DomainError, SizeError

MODULUS_CAP = 10**6


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2*pi*i*numerator/denominator) in lowest terms, or the zero value."""

    numerator: int = 0
    denominator: int = 1
    zero: bool = False

    def __post_init__(self):
        if self.zero:
            object.__setattr__(self, "numerator", 0)
            object.__setattr__(self, "denominator", 1)
            return
        if self.denominator < 1:
            raise DomainError("root of unity needs a positive denominator")
        frac = Fraction(self.numerator, self.denominator) % 1
        object.__setattr__(self, "numerator", frac.numerator)
        object.__setattr__(self, "denominator", frac.denominator)

    @classmethod
    def from_fraction(cls, frac: Fraction) -> RootOfUnity:
        return cls(frac.numerator, frac.denominator)

    @property
    def angle(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if self.zero or other.zero:
            return ZERO
        return RootOfUnity.from_fraction(self.angle + other.angle)

    def conjugate(self) -> RootOfUnity:
        return self if self.zero else RootOfUnity.from_fraction(-self.angle)

    def __abs__(self) -> int:
        return 0 if self.zero else 1

    def is_one(self) -> bool:
        return not self.zero and self.numerator == 0

    def to_complex(self) -> complex:
        if self.zero:
            return 0j
        return complex(math.cos(2 * math.pi * self.angle), math.sin(2 * math.pi * self.angle))

    def to_cyclotomic(self, E: int) -> Cyclotomic:
        if self.zero:
            return Cyclotomic.integer(E, 0)
        if E % self.denominator:
            raise DomainError(f"order {self.denominator} does not divide basis {E}")
        return Cyclotomic.root(E, self.numerator * (E // self.denominator))


ONE = RootOfUnity(0, 1)
ZERO = RootOfUnity(zero=True)


def _local_conductor_exponent(comp, exps: tuple[int, ...]) -> int:
    p, k = comp.p, comp.k
    if p == 2:
        if k == 1:
            return 0
        sign = exps[0] % 2
        if k == 2:
            return 2 if sign else 0
        o5 = comp.orders[1] // math.gcd(exps[1], comp.orders[1])
        if o5 > 1:
            return o5.bit_length() - 1 + 2
        return 2 if sign else 0
    o = comp.orders[0] // math.gcd(exps[0], comp.orders[0])
    if o == 1:
        return 0
    c = 1
    while o % p == 0:
        o //= p
        c += 1
    return c


@dataclass(frozen=True)
class DirichletCharacter:
    """A character of (Z/nZ)*, keyed by its exponent vector on the canonical generators.

    chi(g_i) = exp(2 pi i exponents[i] / order_i).
    """

    modulus: int
    exponents: tuple[int, ...]
    group: UnitGroupStructure = field(repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        grp = self.group or unit_group(self.modulus)
        object.__setattr__(self, "group", grp)
        if len(self.exponents) != len(grp.orders):
            raise DomainError(f"character mod {self.modulus} needs {len(grp.orders)} exponents")
        object.__setattr__(
            self, "exponents", tuple(e % o for e, o in zip(self.exponents, grp.orders))
        )

    @classmethod
    def trivial(cls, n: int) -> DirichletCharacter:
        g = unit_group(n)
        return cls(n, (0,) * len(g.orders), g)

    @cached_property
    def order(self) -> int:
        return lcm(*(o // math.gcd(e, o) for e, o in zip(self.exponents, self.group.orders)))

    @cached_property
    def conductor(self) -> FactoredInt:
        exps = {}
        for comp, sl in self.group.component_slices():
            c = _local_conductor_exponent(comp, self.exponents[sl])
            if c:
                exps[comp.p] = c
        return FactoredInt.from_dict(exps)

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)

    @property
    def is_primitive(self) -> bool:
        return self.conductor.value == self.modulus

    @cached_property
    def parity(self) -> str:
        return "even" if self(-1).is_one() else "odd"

    def angle(self, a: int) -> Fraction | None:
        """chi(a) as a fraction of a full turn, or None off the units."""
        n = self.modulus
        if math.gcd(a, n) != 1:
            return None
        v = self.group.log(a)
        return sum(
            (Fraction(e * x, o) for e, x, o in zip(self.exponents, v, self.group.orders)),
            Fraction(0),
        ) % 1

    def __call__(self, a: int) -> RootOfUnity:
        ang = self.angle(a)
        return ZERO if ang is None else RootOfUnity.from_fraction(ang)

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if self.modulus != other.modulus:
            m = lcm(self.modulus, other.modulus)
            return induce(self, m) * induce(other, m)
        return DirichletCharacter(
            self.modulus,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
            self.group,
        )

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple(-e for e in self.exponents), self.group)

    def to_record(self) -> dict:
        return {
            "modulus": self.modulus,
            "exponents": list(self.exponents),
            "conductor": self.conductor.value,
            "order": self.order,
            "parity": self.parity,
        }

    @classmethod
    def from_record(cls, rec: dict) -> DirichletCharacter:
        chi = cls(int(rec["modulus"]), tuple(int(e) for e in rec["exponents"]))
        for key in ("conductor", "order", "parity"):
            if key in rec:
                got = chi.to_record()[key]
                if got != rec[key]:
                    raise DomainError(f"record field {key}={rec[key]!r} disagrees with {got!r}")
        return chi


def evaluate(chi: DirichletCharacter, a: int) -> RootOfUnity:
    return chi(a)


def conductor(chi: DirichletCharacter) -> FactoredInt:
    return chi.conductor


def _unit_lift(g: int, f: int, n: int) -> int:
    """A unit mod n congruent to g mod f (f | n)."""
    x = g % f if f > 1 else 1
    while math.gcd(x, n) != 1:
        x += f
    return x


def _character_from_values(m: int, angle_at) -> DirichletCharacter:
    """Build the character mod m whose value at each unit x is angle_at(x)."""
    grp = unit_group(m)
    exps = []
    for g, o in grp.cyclic_factors:
        ang = angle_at(g)
        e = ang * o
        if e.denominator != 1:
            raise DomainError(f"value at generator {g} is not an {o}-th root of unity")
        exps.append(int(e))
    return DirichletCharacter(m, tuple(exps), grp)


def restrict(chi: DirichletCharacter, f: int) -> DirichletCharacter:
    """The character mod f inducing chi; requires conductor(chi) | f | modulus."""
    n = chi.modulus
    if n % f or f % chi.conductor.value:
        raise DomainError(f"cannot realise character of conductor {chi.conductor.value} mod {f}")
    return _character_from_values(f, lambda g: chi.angle(_unit_lift(g, f, n)))


def induce(chi: DirichletCharacter, m: int) -> DirichletCharacter:
    """Lift chi to modulus m (a multiple of chi.modulus)."""
    if m % chi.modulus:
        raise DomainError(f"{m} is not a multiple of {chi.modulus}")
    return _character_from_values(m, lambda g: chi.angle(g % chi.modulus))


def primitivize(chi: DirichletCharacter) -> DirichletCharacter:
    f = chi.conductor.value
    if f == chi.modulus:
        return chi
    return restrict(chi, f)


def enumerate_characters(n: int, cap: int | None = None) -> list[DirichletCharacter]:
    """All phi(n) characters mod n; the trivial character comes first."""
    cap = MODULUS_CAP if cap is None else cap
    if n < 1:
        raise DomainError(f"modulus must be positive, got {n}")
    if n > cap:
        raise SizeError(f"modulus {n} exceeds cap {cap}")
    grp = unit_group(n)
    return [
        DirichletCharacter(n, exps, grp)
        for exps in itertools.product(*(range(o) for o in grp.orders))
    ]


def primitive_count(f: int) -> int:
    """Number of primitive characters modulo f."""
    out = 1
    for p, k in factor(f).factors:
        if k == 1:
            out *= p - 2
        else:
            out *= p ** (k - 2) * (p - 1) ** 2
    return out


def count_primitive_conductor_at_most(M: int, cap: int | None = None) -> int:
    """Number of characters with conductor <= M, each counted once at its conductor."""
    cap = MODULUS_CAP if cap is None else cap
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")
    if M > cap:
        raise SizeError(f"M={M} exceeds cap {cap}")
    return sum(primitive_count(f) for f in range(1, M + 1))
