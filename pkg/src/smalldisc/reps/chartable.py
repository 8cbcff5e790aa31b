"""Exact character tables by the Dixon-Schneider method.

Class-sum structure constants are reduced modulo a prime p = 1 (mod exponent)
with p > 2 sqrt|G|. Their common eigenvectors are the central characters mod p;
each character value is then recovered exactly as the multiplicity vector of
its eigenvalues over the exponent-th roots of unity. Every table is certified
(sum of squared degrees, exact row and column orthogonality) before it is
returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..arith import factor, is_prime
from ..cyclotomic import Cyclotomic
from ..errors import CharacterTableError, DomainError, SizeError
from .groups import ORDER_CAP, PermGroup, cycle_string, inverse, mul

# --- linear algebra over F_p -------------------------------------------------


def _rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace(A: list[list[int]], p: int) -> list[list[int]]:
    n = len(A[0])
    R, pivots = _rref(A, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis


def _charpoly(A: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial mod p via Hessenberg reduction; lowest degree first."""
    n = len(A)
    H = [row[:] for row in A]
    for c in range(n - 2):
        piv = next((i for i in range(c + 1, n) if H[i][c] % p), None)
        if piv is None:
            continue
        if piv != c + 1:
            H[piv], H[c + 1] = H[c + 1], H[piv]
            for row in H:
                row[piv], row[c + 1] = row[c + 1], row[piv]
        inv = pow(H[c + 1][c], -1, p)
        for r in range(c + 2, n):
            u = H[r][c] * inv % p
            if u:
                H[r] = [(x - u * y) % p for x, y in zip(H[r], H[c + 1])]
                for row in H:
                    row[c + 1] = (row[c + 1] + u * row[r]) % p
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        h = H[m - 1][m - 1]
        cur = [0] * (m + 1)
        for i, a in enumerate(prev):
            cur[i + 1] += a
            cur[i] -= h * a
        t = 1
        for i in range(1, m):
            t = t * H[m - i][m - i - 1] % p
            coef = t * H[m - i - 1][m - 1] % p
            if coef:
                for k, a in enumerate(polys[m - i - 1]):
                    cur[k] -= coef * a
        polys.append([x % p for x in cur])
    return polys[n]


def _roots_mod_p(poly: list[int], p: int) -> list[int]:
    roots = []
    for x in range(p):
        acc = 0
        for a in reversed(poly):
            acc = (acc * x + a) % p
        if acc == 0:
            roots.append(x)
    return roots


def _matvec(M: list[list[int]], v: list[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % p for row in M]


def dixon_prime(order: int, exponent: int) -> int:
    """Least prime p = 1 mod exponent with p > 2 sqrt(order)."""
    p = exponent + 1
    while not (p * p > 4 * order and is_prime(p)):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    qs = factor(p - 1).primes
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    return 1


# --- class functions ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Exact values on the conjugacy classes of a group (basis: exponent-th roots)."""

    group: PermGroup = field(repr=False)
    values: tuple[Cyclotomic, ...]
    label: str = ""

    @property
    def degree(self) -> int:
        return self.values[0].to_int()

    @property
    def E(self) -> int:
        return self.values[0].E

    def __mul__(self, other: ClassFunction) -> ClassFunction:
        _same_group(self, other)
        return ClassFunction(
            self.group,
            tuple(a * b for a, b in zip(self.values, other.values)),
            f"{self.label}*{other.label}",
        )

    def conjugate(self) -> ClassFunction:
        return ClassFunction(self.group, tuple(v.conjugate() for v in self.values), f"conj({self.label})")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClassFunction)
            and self.group is other.group
            and all(a == b for a, b in zip(self.values, other.values))
        )

    def __hash__(self):
        return hash(tuple(v.reduced() for v in self.values))

    def is_linear(self) -> bool:
        return self.degree == 1

    @cached_property
    def reduced_values(self) -> tuple[tuple[int, ...], ...]:
        return tuple(v.reduced() for v in self.values)

    def class_sum(self, counts: Sequence[int]) -> list[int]:
        """sum_j counts[j] * value_j, in reduced coordinates."""
        red = self.reduced_values
        acc = [0] * len(red[0])
        for c, vec in zip(counts, red):
            if c:
                for i, x in enumerate(vec):
                    acc[i] += c * x
        return acc

    def to_record(self) -> dict:
        return {
            "degree": self.degree,
            "values": [list(v.coeffs) for v in self.values],
            "approx": [_approx(v) for v in self.values],
        }


def _approx(v: Cyclotomic) -> list[float]:
    z = v.to_complex()
    re_, im_ = float(f"{z.real:.15g}"), float(f"{z.imag:.15g}")
    return [re_ + 0.0 if abs(re_) > 1e-13 else 0.0, im_ + 0.0 if abs(im_) > 1e-13 else 0.0]


def _same_group(a: ClassFunction, b: ClassFunction) -> None:
    if a.group is not b.group:
        raise DomainError("class functions belong to different groups")


def inner_product(a: ClassFunction, b: ClassFunction) -> Fraction:
    """<a, b> = (1/|G|) sum_g a(g) conj(b(g)), exactly."""
    _same_group(a, b)
    G = a.group
    total = Cyclotomic.integer(a.E, 0)
    for c, x, y in zip(G.classes, a.values, b.values):
        total = total + (x * y.conjugate()) * c.size
    if not total.is_rational():
        raise DomainError("inner product is not rational; values are not a class function of characters")
    return Fraction(total.to_int(), G.order)


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: PermGroup = field(repr=False)
    irreducibles: tuple[ClassFunction, ...]
    prime: int = 0

    @property
    def degrees(self) -> list[int]:
        return [chi.degree for chi in self.irreducibles]

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    @property
    def trivial(self) -> ClassFunction:
        return self.irreducibles[0]

    def __len__(self) -> int:
        return len(self.irreducibles)

    def __getitem__(self, i: int) -> ClassFunction:
        return self.irreducibles[i]

    def certify(self) -> None:
        certify_table(self.group, self.irreducibles)

    def to_record(self) -> dict:
        G = self.group
        return {
            "group": {
                "moved_points": G.moved_points,
                "generators": [cycle_string(g) for g in G.generators],
                "order": G.order,
                "exponent": G.exponent,
            },
            "classes": [
                {"representative": cycle_string(c.representative), "size": c.size, "order": c.element_order}
                for c in G.classes
            ],
            "prime": self.prime,
            "characters": [chi.to_record() for chi in self.irreducibles],
        }

    @classmethod
    def from_record(cls, G: PermGroup, rec: dict) -> CharacterTable:
        if [c["size"] for c in rec["classes"]] != [c.size for c in G.classes]:
            raise DomainError("class data in record does not match the group")
        E = G.exponent
        rows = tuple(
            ClassFunction(G, tuple(Cyclotomic(E, v) for v in row["values"]), f"chi{i}")
            for i, row in enumerate(rec["characters"])
        )
        table = cls(G, rows, int(rec.get("prime", 0)))
        table.certify()
        return table


def certify_table(G: PermGroup, rows: Sequence[ClassFunction]) -> None:
    k = len(G.classes)
    if len(rows) != k:
        raise CharacterTableError(f"{len(rows)} characters for {k} classes")
    degs = []
    for chi in rows:
        v0 = chi.values[0]
        if not v0.is_rational() or v0.to_int() < 1:
            raise CharacterTableError("value at the identity is not a positive integer")
        degs.append(v0.to_int())
    if sum(d * d for d in degs) != G.order:
        raise CharacterTableError(f"sum of squared degrees {sum(d * d for d in degs)} != |G| = {G.order}")
    E = rows[0].E
    for a in range(k):
        for b in range(a, k):
            total = Cyclotomic.integer(E, 0)
            for c, x, y in zip(G.classes, rows[a].values, rows[b].values):
                total = total + (x * y.conjugate()) * c.size
            if total != (G.order if a == b else 0):
                raise CharacterTableError(f"rows {a} and {b} are not orthonormal")
    for i in range(k):
        for j in range(i, k):
            total = Cyclotomic.integer(E, 0)
            for chi in rows:
                total = total + chi.values[i] * chi.values[j].conjugate()
            want = G.order // G.classes[i].size if i == j else 0
            if total != want:
                raise CharacterTableError(f"columns {i} and {j} fail orthogonality")


def _structure_matrices(G: PermGroup) -> list[list[list[int]]]:
    """M[j][l][m] = #{x in C_j : x^-1 z_m in C_l} for a fixed z_m in C_m."""
    k = len(G.classes)
    members = G.class_members
    M = [[[0] * k for _ in range(k)] for _ in range(k)]
    for m, cls_m in enumerate(G.classes):
        z = cls_m.representative
        for j in range(k):
            Mj = M[j]
            for x in members[j]:
                Mj[G.class_of[mul(inverse(x), z)]][m] += 1
    return M


def character_table(G: PermGroup, cap: int = ORDER_CAP) -> CharacterTable:
    if G.order > cap:
        raise SizeError(f"|G| = {G.order} exceeds cap {cap}")
    k = len(G.classes)
    E = G.exponent
    p = dixon_prime(G.order, E)
    M = [[[x % p for x in row] for row in Mj] for Mj in _structure_matrices(G)]

    spaces: list[list[list[int]]] = [[[int(i == j) for j in range(k)] for i in range(k)]]
    for j in range(1, k):
        if all(len(S) == 1 for S in spaces):
            break
        nxt = []
        for basis in spaces:
            d = len(basis)
            if d == 1:
                nxt.append(basis)
                continue
            basis, pivots = _rref(basis, p)
            images = [_matvec(M[j], v, p) for v in basis]
            # A[s][t] = coordinate s of M_j v_t
            A = [[images[t][pivots[s]] for t in range(d)] for s in range(d)]
            found = 0
            for lam in _roots_mod_p(_charpoly(A, p), p):
                shifted = [[(A[s][t] - (lam if s == t else 0)) % p for t in range(d)] for s in range(d)]
                coords = _nullspace(shifted, p)
                vecs = [[sum(c * v[i] for c, v in zip(cv, basis)) % p for i in range(k)] for cv in coords]
                nxt.append(vecs)
                found += len(vecs)
            if found != d:
                raise CharacterTableError(
                    f"class matrix {j} is not diagonalizable on a {d}-dimensional space mod {p}"
                )
        spaces = nxt
    if any(len(S) != 1 for S in spaces):
        raise CharacterTableError("eigenspaces did not split into lines")

    inv_cls = G.inverse_class
    sizes = [c.size for c in G.classes]
    z = pow(_primitive_root(p), (p - 1) // E, p)
    z_inv = pow(z, -1, p)
    e_inv = pow(E, -1, p)
    powmap = [[G.power_class(j, t) for t in range(E)] for j in range(k)]
    max_deg = math.isqrt(G.order)

    rows = []
    for (w,) in spaces:
        if w[0] % p == 0:
            raise CharacterTableError("central character vanishes at the identity class")
        w0 = pow(w[0], -1, p)
        omega = [x * w0 % p for x in w]
        s = sum(omega[i] * omega[inv_cls[i]] * pow(sizes[i], -1, p) for i in range(k)) % p
        d2 = G.order * pow(s, -1, p) % p
        deg = next((d for d in range(1, max_deg + 1) if d * d % p == d2), None)
        if deg is None:
            raise CharacterTableError("no integer degree matches the central character")
        chi_p = [omega[i] * deg * pow(sizes[i], -1, p) % p for i in range(k)]
        values = []
        for j in range(k):
            mults = []
            for l in range(E):
                step = pow(z_inv, l, p)
                acc, zt = 0, 1
                for t in range(E):
                    acc += chi_p[powmap[j][t]] * zt
                    zt = zt * step % p
                mu = acc * e_inv % p
                if mu > deg:
                    raise CharacterTableError(f"eigenvalue multiplicity {mu} exceeds degree {deg}")
                mults.append(mu)
            values.append(Cyclotomic(E, mults))
        rows.append(values)

    def key(vals):
        deg = vals[0].to_int()
        trivial = all(v == 1 for v in vals)
        return (deg, not trivial, [v.reduced() for v in vals])

    rows.sort(key=key)
    irr = tuple(ClassFunction(G, tuple(vals), f"chi{i}") for i, vals in enumerate(rows))
    certify_table(G, irr)
    return CharacterTable(G, irr, p)


def max_irr_degree(G: PermGroup) -> int:
    return character_table(G).max_degree


def tensor_trivial_multiplicity(rho: ClassFunction, psi: ClassFunction) -> int:
    """Multiplicity of the trivial character in rho (x) conj(psi)."""
    _same_group(rho, psi)
    E = rho.E
    one = ClassFunction(rho.group, tuple(Cyclotomic.integer(E, 1) for _ in rho.values), "1")
    m = inner_product(rho * psi.conjugate(), one)
    if m.denominator != 1 or m < 0:
        raise DomainError(f"multiplicity {m} is not a nonnegative integer")
    return int(m)
