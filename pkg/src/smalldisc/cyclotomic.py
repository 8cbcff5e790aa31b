"""Exact cyclotomic integers Z[zeta_E].

Elements are stored as length-E integer vectors over the redundant basis
1, zeta, ..., zeta^(E-1). Equality and rationality are decided after reducing
modulo the E-th cyclotomic polynomial, which gives a canonical form.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

from .arith import divisors


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n)[:-1]:
        num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]  # den is monic
        q[i - dn] = c
        if c:
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    assert not any(num[:dn]), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def power_basis_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds zeta_n^k written in the basis 1, ..., zeta^(phi(n)-1)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg else []
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1] if deg else []
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


class Cyclotomic:
    """An element of Z[zeta_E] (E = conductor of the ambient basis)."""

    __slots__ = ("E", "coeffs", "_reduced")

    def __init__(self, E: int, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != E:
            raise ValueError(f"expected {E} coefficients, got {len(coeffs)}")
        self.E = E
        self.coeffs = coeffs
        self._reduced = None

    @classmethod
    def integer(cls, E: int, value: int) -> Cyclotomic:
        return cls(E, (value,) + (0,) * (E - 1))

    @classmethod
    def root(cls, E: int, k: int) -> Cyclotomic:
        c = [0] * E
        c[k % E] = 1
        return cls(E, c)

    def _check(self, other: Cyclotomic) -> None:
        if self.E != other.E:
            raise ValueError(f"mismatched cyclotomic bases {self.E} and {other.E}")

    def __add__(self, other):
        if isinstance(other, int):
            other = Cyclotomic.integer(self.E, other)
        self._check(other)
        return Cyclotomic(self.E, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.E, (-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.E, (other * a for a in self.coeffs))
        self._check(other)
        E = self.E
        out = [0] * E
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % E] += a * b
        return Cyclotomic(E, out)

    __rmul__ = __mul__

    def times_root(self, k: int) -> Cyclotomic:
        """Multiply by zeta^k (a cyclic shift)."""
        E = self.E
        k %= E
        return Cyclotomic(E, self.coeffs[E - k:] + self.coeffs[:E - k])

    def conjugate(self) -> Cyclotomic:
        E = self.E
        return Cyclotomic(E, (self.coeffs[(-k) % E] for k in range(E)))

    def galois(self, t: int) -> Cyclotomic:
        """Image under zeta -> zeta^t."""
        E = self.E
        out = [0] * E
        for k, a in enumerate(self.coeffs):
            out[k * t % E] += a
        return Cyclotomic(E, out)

    def reduced(self) -> tuple[int, ...]:
        """Canonical coordinates modulo Phi_E."""
        if self._reduced is None:
            table = power_basis_table(self.E)
            deg = len(table[0]) if table and table[0] else 0
            out = [0] * max(deg, 1)
            for k, a in enumerate(self.coeffs):
                if a:
                    for j, t in enumerate(table[k]):
                        out[j] += a * t
            if self.E == 1:
                out = [self.coeffs[0]]
            self._reduced = tuple(out)
        return self._reduced

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Cyclotomic.integer(self.E, other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.E == other.E and self.reduced() == other.reduced()

    def __hash__(self):
        return hash((self.E, self.reduced()))

    def is_rational(self) -> bool:
        return not any(self.reduced()[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.reduced()[0]

    def to_fraction(self, denominator: int = 1) -> Fraction:
        return Fraction(self.to_int(), denominator)

    def to_complex(self) -> complex:
        E = self.E
        return sum(a * cmath.exp(2j * cmath.pi * k / E) for k, a in enumerate(self.coeffs) if a)

    def __repr__(self):
        terms = [f"{a}*z^{k}" for k, a in enumerate(self.coeffs) if a]
        return f"Cyclotomic[{self.E}](" + (" + ".join(terms) or "0") + ")"
