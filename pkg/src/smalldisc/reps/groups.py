"""Permutation groups by closure enumeration.

Permutations are tuples of images on 0..n-1. Products compose left to right:
(x * y)(i) = y(x(i)).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from ..arith import lcm
from ..errors import DomainError, ParseError, SizeError

Perm = tuple[int, ...]

ORDER_CAP = 10**4
SUBGROUP_CAP = 200


def mul(x: Perm, y: Perm) -> Perm:
    return tuple(y[i] for i in x)


def inverse(x: Perm) -> Perm:
    out = [0] * len(x)
    for i, j in enumerate(x):
        out[j] = i
    return tuple(out)


def identity(n: int) -> Perm:
    return tuple(range(n))


def perm_order(x: Perm) -> int:
    seen = [False] * len(x)
    out = 1
    for i in range(len(x)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = x[j]
                k += 1
            out = lcm(out, k)
    return out


def power(x: Perm, k: int) -> Perm:
    out = identity(len(x))
    base = x
    k %= perm_order(x)
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def cycles(x: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles, 1-based, each starting at its least point."""
    seen = set()
    out = []
    for i in range(len(x)):
        if i in seen or x[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = x[j]
        out.append(tuple(cyc))
    return out


def cycle_string(x: Perm) -> str:
    cs = cycles(x)
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "()"


def from_cycles(cycs: Iterable[Sequence[int]], n: int) -> Perm:
    img = list(range(n))
    seen = set()
    for c in cycs:
        for a in c:
            if not 1 <= a <= n:
                raise DomainError(f"point {a} outside 1..{n}")
            if a in seen:
                raise DomainError(f"point {a} repeated in cycle notation")
            seen.add(a)
        for a, b in zip(c, list(c[1:]) + [c[0]]):
            img[a - 1] = b - 1
    return tuple(img)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, n: int | None = None) -> list[tuple[int, ...]]:
    text = text.strip()
    if not text:
        return []
    pos = 0
    out = []
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ParseError(f"offending token {text[pos:m.start()].strip()!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            out.append(tuple(int(t) for t in body))
        except ValueError:
            raise ParseError(f"offending token in cycle {m.group(0)!r}") from None
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"offending token {text[pos:].strip()!r}")
    return [c for c in out if len(c) > 1]


def parse_generators(text: str) -> tuple[int, list[Perm]]:
    """Parse "(1 2)(3 4), (1 2 3)" into (moved points, generators); "()" is the trivial group."""
    if not text.strip():
        raise ParseError("no generators given; write () for the trivial group")
    chunks = [c for c in re.split(r"\)\s*,\s*\(", text.strip())]
    gens_cycles = []
    for i, chunk in enumerate(chunks):
        if i > 0:
            chunk = "(" + chunk
        if i < len(chunks) - 1:
            chunk = chunk + ")"
        gens_cycles.append(parse_permutation(chunk))
    n = max((a for g in gens_cycles for c in g for a in c), default=1)
    try:
        return n, [from_cycles(g, n) for g in gens_cycles]
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Perm
    size: int
    element_order: int


@dataclass(frozen=True, eq=False)
class PermGroup:
    """A permutation group with all elements and conjugacy classes enumerated."""

    moved_points: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...] = field(repr=False)
    classes: tuple[ConjugacyClass, ...] = field(repr=False)
    class_of: dict = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity(self.moved_points)

    @cached_property
    def exponent(self) -> int:
        return lcm(*(c.element_order for c in self.classes))

    @property
    def conjugacy_classes(self) -> list[tuple[Perm, int]]:
        return [(c.representative, c.size) for c in self.classes]

    @cached_property
    def class_members(self) -> list[list[Perm]]:
        out: list[list[Perm]] = [[] for _ in self.classes]
        for x in self.elements:
            out[self.class_of[x]].append(x)
        return out

    @cached_property
    def inverse_class(self) -> list[int]:
        return [self.class_of[inverse(c.representative)] for c in self.classes]

    def power_class(self, j: int, k: int) -> int:
        return self.class_of[power(self.classes[j].representative, k)]

    def is_abelian(self) -> bool:
        return all(mul(a, b) == mul(b, a) for a in self.generators for b in self.generators)

    def canonical_key(self) -> dict:
        return {
            "moved_points": self.moved_points,
            "generators": sorted(cycle_string(g) for g in self.generators),
            "order": self.order,
            "class_signature": [[c.size, c.element_order] for c in self.classes],
        }

    def generator_string(self) -> str:
        return ", ".join(cycle_string(g) for g in self.generators)

    def subgroup(self, gens: Iterable[Perm]) -> frozenset[Perm]:
        return closure(list(gens), self.moved_points)


def closure(gens: Sequence[Perm], n: int, cap: int = ORDER_CAP) -> frozenset[Perm]:
    e = identity(n)
    seen = {e}
    queue = deque([e])
    gens = [g for g in gens if g != e]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise SizeError(f"group order exceeds cap {cap}")
                queue.append(y)
    return frozenset(seen)


def _class_key(members: list[Perm], order: int):
    return (len(members), order, min(members))


def group_from_generators(
    moved_points: int, generators: Sequence[Perm], cap: int = ORDER_CAP
) -> PermGroup:
    n = moved_points
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != n or sorted(g) != list(range(n)):
            raise DomainError(f"{g} is not a permutation of {n} points")
        gens.append(g)
    elems = closure(gens, n, cap)
    e = identity(n)
    ordered = sorted(elems)
    assigned: dict[Perm, int] = {}
    raw = []
    for x in ordered:
        if x in assigned:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = mul(mul(inverse(g), y), g)
                    if z not in orbit:
                        orbit.add(z)
                        nxt.append(z)
            frontier = nxt
        members = sorted(orbit)
        for y in members:
            assigned[y] = -1
        raw.append((members, perm_order(x)))
    # identity first, then by size, element order, least representative
    raw.sort(key=lambda t: (t[0][0] != e, _class_key(*t)))
    classes = []
    class_of = {}
    for idx, (members, order) in enumerate(raw):
        classes.append(ConjugacyClass(members[0], len(members), order))
        for y in members:
            class_of[y] = idx
    return PermGroup(n, tuple(gens), tuple(ordered), tuple(classes), class_of)


def group_from_string(text: str, cap: int = ORDER_CAP) -> PermGroup:
    n, gens = parse_generators(text)
    return group_from_generators(n, gens, cap)


# standard families


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return group_from_generators(1, [])
    return group_from_generators(n, [tuple((i + 1) % n for i in range(n))])


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n."""
    if n == 1:
        return group_from_generators(2, [(1, 0)])
    if n == 2:
        return group_from_generators(4, [(1, 0, 3, 2), (2, 3, 0, 1)])
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_generators(n, [rot, ref])


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return group_from_generators(1, [])
    if n == 2:
        return group_from_generators(2, [(1, 0)])
    return group_from_generators(n, [from_cycles([(1, 2)], n), tuple((i + 1) % n for i in range(n))])


def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return group_from_generators(max(n, 1), [])
    gens = [from_cycles([(1, 2, k)], n) for k in range(3, n + 1)]
    return group_from_generators(n, gens)


_QUAT = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
_QTAB = {
    ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
    ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
    ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
}


def _qmul(a: str, b: str) -> str:
    sign = 1
    if a.startswith("-"):
        sign, a = -sign, a[1:]
    if b.startswith("-"):
        sign, b = -sign, b[1:]
    if a == "1":
        r = b
    elif b == "1":
        r = a
    else:
        r = _QTAB[(a, b)]
    if r.startswith("-"):
        sign, r = -sign, r[1:]
    return r if sign == 1 else "-" + r


def quaternion_group() -> PermGroup:
    """Q8 in its regular representation on 8 points."""
    idx = {q: t for t, q in enumerate(_QUAT)}
    gens = [tuple(idx[_qmul(x, g)] for x in _QUAT) for g in ("i", "j")]
    return group_from_generators(8, gens)


def abelian_subgroups(G: PermGroup, cap: int = SUBGROUP_CAP) -> list[frozenset[Perm]]:
    """Every abelian subgroup of G, grown one commuting generator at a time."""
    if G.order > cap:
        raise SizeError(
            f"|G| = {G.order} exceeds the subgroup-enumeration cap {cap}; "
            "sample abelian subgroups instead"
        )
    e = G.identity
    trivial = frozenset({e})
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for A in frontier:
            for g in G.elements:
                if g in A or any(mul(g, a) != mul(a, g) for a in A):
                    continue
                B = _abelian_extend(A, g)
                if B not in found:
                    found.add(B)
                    nxt.append(B)
        frontier = nxt
    return sorted(found, key=len)


def _abelian_extend(A: frozenset[Perm], g: Perm) -> frozenset[Perm]:
    out = set(A)
    p = g
    while p not in A:
        out.update(mul(a, p) for a in A)
        p = mul(p, g)
    return frozenset(out)


def min_abelian_subgroup_index(G: PermGroup, cap: int = SUBGROUP_CAP) -> int:
    if G.is_abelian():
        return 1
    best = max(len(A) for A in abelian_subgroups(G, cap))
    return G.order // best


def is_subgroup(G: PermGroup, H: Iterable[Perm]) -> bool:
    H = set(H)
    if G.identity not in H or not H <= set(G.class_of):
        return False
    return all(mul(a, b) in H for a in H for b in H)


def random_subgroup(G: PermGroup, parent: frozenset[Perm], rng, max_gens: int = 2) -> frozenset[Perm]:
    """Subgroup of parent generated by 0..max_gens random elements of parent."""
    pool = sorted(parent)
    k = rng.randint(0, max_gens)
    return closure([rng.choice(pool) for _ in range(k)], G.moved_points)


def suite_groups() -> dict[str, PermGroup]:
    """The named test suite: cyclic and dihedral families plus small classics."""
    out = {}
    for n in range(1, 13):
        out[f"C{n}"] = cyclic_group(n)
    for n in range(3, 13):
        out[f"D{n}"] = dihedral_group(n)
    out["S3"] = symmetric_group(3)
    out["S4"] = symmetric_group(4)
    out["S5"] = symmetric_group(5)
    out["A4"] = alternating_group(4)
    out["A5"] = alternating_group(5)
    out["Q8"] = quaternion_group()
    return out


def expected_max_degree(name: str) -> int:
    table = {"S3": 2, "S4": 3, "S5": 6, "A4": 3, "A5": 5, "Q8": 2}
    if name in table:
        return table[name]
    if name.startswith("C"):
        return 1
    if name.startswith("D"):
        return 2 if int(name[1:]) >= 3 else 1
    raise KeyError(name)
