"""Exact integer arithmetic: factorization and unit groups (Z/nZ)*."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterator, Sequence

from .errors import DomainError, SizeError

FACTOR_CAP = 2**63
TRIAL_LIMIT = 10**6
DLOG_TABLE_CAP = 10**7

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer together with its prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.value < 1:
            raise DomainError(f"FactoredInt needs a positive value, got {self.value}")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise DomainError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise DomainError(f"factors {self.factors} do not multiply to {self.value}")

    @classmethod
    def from_dict(cls, exps: dict[int, int]) -> FactoredInt:
        items = tuple(sorted((p, e) for p, e in exps.items() if e > 0))
        value = 1
        for p, e in items:
            value *= p**e
        return cls(value, items)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __int__(self) -> int:
        return self.value

    def __mul__(self, other: FactoredInt) -> FactoredInt:
        exps = self.as_dict()
        for p, e in other.factors:
            exps[p] = exps.get(p, 0) + e
        return FactoredInt.from_dict(exps)

    def __pow__(self, k: int) -> FactoredInt:
        if k < 0:
            raise DomainError("negative power of FactoredInt")
        return FactoredInt.from_dict({p: e * k for p, e in self.factors})

    def divides(self, other: FactoredInt) -> bool:
        exps = other.as_dict()
        return all(exps.get(p, 0) >= e for p, e in self.factors)

    def phi(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= (p - 1) * p ** (e - 1)
        return out

    def to_record(self) -> dict:
        return {"value": self.value, "factors": [[p, e] for p, e in self.factors]}

    @classmethod
    def from_record(cls, rec: dict) -> FactoredInt:
        return cls(int(rec["value"]), tuple((int(p), int(e)) for p, e in rec["factors"]))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


ONE = FactoredInt(1)


@lru_cache(maxsize=65536)
def factor(n: int, cap: int = FACTOR_CAP) -> FactoredInt:
    """Factor n: trial division below 10^6, Pollard-Brent for what remains."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"factor expects an int, got {type(n).__name__}")
    if n < 1:
        raise DomainError(f"factor expects n >= 1, got {n}")
    if n > cap:
        raise SizeError(f"{n} exceeds factoring cap {cap}")
    exps: dict[int, int] = {}
    m = n
    for p in (2, 3, 5):
        while m % p == 0:
            exps[p] = exps.get(p, 0) + 1
            m //= p
    # wheel mod 30
    steps = (4, 2, 4, 2, 4, 6, 2, 6)
    p, i = 7, 0
    while p * p <= m and p < TRIAL_LIMIT:
        while m % p == 0:
            exps[p] = exps.get(p, 0) + 1
            m //= p
        p += steps[i]
        i = (i + 1) % 8
    if m > 1:
        if p * p > m:
            exps[m] = exps.get(m, 0) + 1
        else:
            _split(m, exps, random.Random(n))
    return FactoredInt.from_dict(exps)


def euler_phi(n: int) -> int:
    return factor(n).phi()


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def lcm(*args: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), args, 1)


def _order_mod(a: int, m: int, group_order: int) -> int:
    e = group_order
    for q, _ in factor(group_order).factors:
        while e % q == 0 and pow(a, e // q, m) == 1 % m:
            e //= q
    return e


@lru_cache(maxsize=None)
def smallest_primitive_root(pk: int, p: int) -> int:
    """Smallest generator of (Z/p^k)* for an odd prime p."""
    phi = pk // p * (p - 1)
    qs = factor(phi).primes
    for g in range(2, pk):
        if g % p and all(pow(g, phi // q, pk) != 1 for q in qs):
            return g
    raise DomainError(f"no primitive root modulo {pk}")


@lru_cache(maxsize=256)
def _dlog_table(m: int, g: int, order: int) -> dict[int, int]:
    if order > DLOG_TABLE_CAP:
        raise SizeError(f"discrete-log table of size {order} exceeds cap")
    table = {}
    x = 1 % m
    for i in range(order):
        table[x] = i
        x = x * g % m
    return table


@dataclass(frozen=True)
class _Component:
    p: int
    k: int
    pk: int
    local_gens: tuple[int, ...]
    orders: tuple[int, ...]


@dataclass(frozen=True)
class UnitGroupStructure:
    """(Z/nZ)* as a product of cyclic groups with explicit generators mod n.

    Factors are ordered by the prime of the CRT component they come from; the
    2-power component (k >= 3) contributes the pair (-1, 5) in that order.
    """

    modulus: int
    cyclic_factors: tuple[tuple[int, int], ...]
    _components: tuple[_Component, ...] = field(repr=False, compare=False)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(o for _, o in self.cyclic_factors)

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.cyclic_factors)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders)

    def component_slices(self) -> Iterator[tuple[_Component, slice]]:
        """Yield each prime-power component with its slice of the exponent vector."""
        i = 0
        for comp in self._components:
            yield comp, slice(i, i + len(comp.orders))
            i += len(comp.orders)

    def log(self, a: int) -> tuple[int, ...]:
        """Exponent vector of the unit a against the canonical generators."""
        n = self.modulus
        a %= n
        if math.gcd(a, n) != 1:
            raise DomainError(f"{a} is not a unit modulo {n}")
        vec: list[int] = []
        for c in self._components:
            x = a % c.pk
            if c.p == 2:
                if c.k == 1:
                    continue
                sign = 0 if x % 4 == 1 else 1
                if c.k == 2:
                    vec.append(sign)
                    continue
                y = x if sign == 0 else (-x) % c.pk
                vec.append(sign)
                vec.append(_dlog_table(c.pk, 5, c.orders[1])[y])
            else:
                vec.append(_dlog_table(c.pk, c.local_gens[0], c.orders[0])[x])
        return tuple(vec)

    def element(self, vec: Sequence[int]) -> int:
        n = self.modulus
        x = 1 % n
        for (g, o), e in zip(self.cyclic_factors, vec):
            x = x * pow(g, e % o, n) % n
        return x

    def units(self) -> list[int]:
        n = self.modulus
        if n == 1:
            return [0]
        return [a for a in range(1, n) if math.gcd(a, n) == 1]


def _crt_lift(local: int, pk: int, n: int) -> int:
    """x with x = local mod pk and x = 1 mod n/pk."""
    rest = n // pk
    if rest == 1:
        return local % n
    # x = 1 + rest * t, rest * t = local - 1 mod pk
    t = (local - 1) * pow(rest, -1, pk) % pk
    return (1 + rest * t) % n


@lru_cache(maxsize=4096)
def unit_group(n: int) -> UnitGroupStructure:
    if n < 1:
        raise DomainError(f"unit_group expects n >= 1, got {n}")
    comps = []
    gens: list[tuple[int, int]] = []
    for p, k in factor(n).factors:
        pk = p**k
        if p == 2:
            if k == 1:
                comp = _Component(2, 1, 2, (), ())
            elif k == 2:
                comp = _Component(2, 2, 4, (3,), (2,))
            else:
                comp = _Component(2, k, pk, (pk - 1, 5), (2, 2 ** (k - 2)))
        else:
            g = smallest_primitive_root(pk, p)
            comp = _Component(p, k, pk, (g,), (pk // p * (p - 1),))
        comps.append(comp)
        for g, o in zip(comp.local_gens, comp.orders):
            gens.append((_crt_lift(g, pk, n), o))
    return UnitGroupStructure(n, tuple(gens), tuple(comps))


def multiplicative_order(a: int, group: UnitGroupStructure | int) -> int:
    """Smallest e >= 1 with a^e = 1 mod n."""
    if isinstance(group, int):
        group = unit_group(group)
    n = group.modulus
    if math.gcd(a, n) != 1:
        raise DomainError(f"{a} is not a unit modulo {n}")
    return _order_mod(a % n, n, group.order)
