"""Artin conductor exponents from a filtration G_0 >= G_1 >= ... >= 1."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DomainError
from .chartable import ClassFunction, _same_group
from .groups import Perm, PermGroup, closure, is_subgroup, random_subgroup


@dataclass(frozen=True, eq=False)
class RamificationFiltration:
    """A decreasing chain of subgroups ending in the trivial group."""

    group: PermGroup
    chain: tuple[frozenset[Perm], ...]

    def __post_init__(self):
        if not self.chain:
            raise DomainError("a filtration needs at least G_0")
        for H in self.chain:
            if not is_subgroup(self.group, H):
                raise DomainError("filtration member is not a subgroup")
        for a, b in zip(self.chain, self.chain[1:]):
            if not b <= a:
                raise DomainError("filtration is not decreasing")
        if len(self.chain[-1]) != 1:
            raise DomainError("the last filtration member must be trivial")

    @classmethod
    def from_generators(cls, G: PermGroup, levels: Sequence[Iterable[Perm]]) -> RamificationFiltration:
        chain = [closure(list(gens), G.moved_points) for gens in levels]
        if not chain or len(chain[-1]) != 1:
            chain.append(frozenset({G.identity}))
        return cls(G, tuple(chain))

    @property
    def orders(self) -> list[int]:
        return [len(H) for H in self.chain]

    def class_counts(self) -> list[list[int]]:
        """For each member, the number of its elements in each conjugacy class."""
        out = []
        k = len(self.group.classes)
        for H in self.chain:
            counts = [0] * k
            for h in H:
                counts[self.group.class_of[h]] += 1
            out.append(counts)
        return out

    def to_record(self) -> dict:
        return {"orders": self.orders}


def _fixed_dim_from_counts(chi: ClassFunction, counts: Sequence[int], size: int) -> int:
    acc = chi.class_sum(counts)
    if any(acc[1:]) or acc[0] % size or acc[0] < 0:
        raise DomainError("average of the character over the subgroup is not a nonnegative integer")
    return acc[0] // size


def fixed_space_dim(chi: ClassFunction, H: Iterable[Perm]) -> int:
    """dim V^H = (1/|H|) sum_{h in H} chi(h)."""
    G = chi.group
    H = frozenset(H)
    if not is_subgroup(G, H):
        raise DomainError("H is not a subgroup of the character's group")
    counts = [0] * len(G.classes)
    for h in H:
        counts[G.class_of[h]] += 1
    return _fixed_dim_from_counts(chi, counts, len(H))


def artin_conductor_exponent(
    chi: ClassFunction, filt: RamificationFiltration, _counts=None
) -> Fraction:
    """sum_i (g_i / g_0) codim V^{G_i}."""
    if chi.group is not filt.group:
        raise DomainError("filtration is over a different group")
    counts = _counts or filt.class_counts()
    deg = chi.degree
    g0 = len(filt.chain[0])
    total = Fraction(0)
    for H, cnt in zip(filt.chain, counts):
        total += Fraction(len(H), g0) * (deg - _fixed_dim_from_counts(chi, cnt, len(H)))
    return total


def tensor_conductor_check(
    rho: ClassFunction, psi: ClassFunction, filt: RamificationFiltration
) -> dict:
    """Compare f(rho (x) conj psi) with max(deg) * (f(rho) + f(psi))."""
    _same_group(rho, psi)
    counts = filt.class_counts()
    tensor = rho * psi.conjugate()
    lhs = artin_conductor_exponent(tensor, filt, counts)
    r = max(rho.degree, psi.degree)
    rhs = r * (artin_conductor_exponent(rho, filt, counts) + artin_conductor_exponent(psi, filt, counts))
    return {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs}


def random_filtration(G: PermGroup, rng: random.Random, max_levels: int = 6) -> RamificationFiltration:
    """A random decreasing chain, with repeated levels, ending in the trivial group."""
    top = frozenset(G.elements) if rng.random() < 0.3 else random_subgroup(G, frozenset(G.elements), rng)
    chain = [top]
    while len(chain[-1]) > 1 and len(chain) < max_levels:
        if rng.random() < 0.3:
            chain.append(chain[-1])
        else:
            chain.append(random_subgroup(G, chain[-1], rng))
    if len(chain[-1]) > 1:
        chain.append(frozenset({G.identity}))
    return RamificationFiltration(G, tuple(chain))
