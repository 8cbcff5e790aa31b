"""Invariant suites run by ``smalldisc verify``.

Each check returns a CheckResult; a suite is a list of checks. The sizes here
are the desk-scale defaults; the test suite calls the same functions.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import bounds as B
from .arith import euler_phi, factor, multiplicative_order, unit_group
from .dirichlet import (
    count_primitive_conductor_at_most,
    enumerate_characters,
    primitivize,
)
from .fields import (
    class_number_imag_quadratic,
    cyclotomic,
    divisor_function,
    enumerate_abelian_fields,
    is_fundamental_discriminant,
    quadratic,
    relative_discriminant_norm,
    zeta_coefficients_euler,
    zeta_coefficients_splitting,
)
from .reps.artin import fixed_space_dim, random_filtration, tensor_conductor_check
from .reps.chartable import character_table, tensor_trivial_multiplicity
from .reps.groups import (
    abelian_subgroups,
    closure,
    expected_max_degree,
    min_abelian_subgroup_index,
    suite_groups,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f" -- {self.detail}" if self.detail else ""
        return f"[{tag}] {self.name} ({self.cases} cases, {self.seconds:.2f}s){extra}"


def _run(name: str, fn: Callable[[], tuple[int, list[str]]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        cases, failures, *note = fn()
    except Exception as exc:  # a crashing check is a failed check
        return CheckResult(name, False, 0, f"{type(exc).__name__}: {exc}", time.perf_counter() - t0)
    detail = "; ".join(failures[:3]) or (note[0] if note else "")
    return CheckResult(name, not failures, cases, detail, time.perf_counter() - t0)


# --- arith --------------------------------------------------------------------


def check_factor_roundtrip(limit: int = 3000, seed: int = 1) -> tuple[int, list[str]]:
    rng = random.Random(seed)
    nums = list(range(1, limit + 1)) + [rng.randrange(1, 2**62) for _ in range(200)]
    bad = []
    for n in nums:
        f = factor(n)
        if math.prod(p**e for p, e in f.factors) != n:
            bad.append(str(n))
    return len(nums), bad


def check_order_divides_phi(limit: int = 300) -> tuple[int, list[str]]:
    cases, bad = 0, []
    for n in range(1, limit + 1):
        grp = unit_group(n)
        for a in grp.units():
            cases += 1
            if grp.order % multiplicative_order(a, grp):
                bad.append(f"{a} mod {n}")
    return cases, bad


def check_log_bijection(trials: int = 25, per: int = 1000, seed: int = 2) -> tuple[int, list[str]]:
    rng = random.Random(seed)
    cases, bad = 0, []
    for _ in range(trials):
        n = rng.randrange(2, 10**4)
        grp = unit_group(n)
        if grp.order != euler_phi(n):
            bad.append(f"order mismatch mod {n}")
        for _ in range(per):
            a = rng.randrange(1, n)
            if math.gcd(a, n) != 1:
                continue
            cases += 1
            v = grp.log(a)
            if grp.element(v) != a or any(not 0 <= x < o for x, o in zip(v, grp.orders)):
                bad.append(f"{a} mod {n}")
    return cases, bad


# --- dirichlet ------------------------------------------------------------------


def check_multiplicativity(moduli=(5, 8, 12, 15, 16, 21, 24, 45, 60, 77), pairs: int = 500, seed: int = 3):
    rng = random.Random(seed)
    cases, bad = 0, []
    for n in moduli:
        chars = enumerate_characters(n)
        for _ in range(pairs):
            chi = rng.choice(chars)
            a, b = rng.randrange(n * 3), rng.randrange(n * 3)
            cases += 1
            if chi(a * b) != chi(a) * chi(b):
                bad.append(f"{chi} at {a},{b}")
    return cases, bad


def check_orthogonality(limit: int = 60):
    cases, bad = 0, []
    for n in range(1, limit + 1):
        units = unit_group(n).units()
        for chi in enumerate_characters(n):
            if chi.is_trivial:
                continue
            cases += 1
            if _root_sum(chi, units) != 0:
                bad.append(str(chi))
    return cases, bad


def _root_sum(chi, units) -> int:
    from .cyclotomic import Cyclotomic

    E = chi.order
    acc = Cyclotomic.integer(E, 0)
    for a in units:
        acc = acc + chi(a).to_cyclotomic(E)
    return 0 if acc == 0 else 1


def check_unit_modulus(limit: int = 60):
    cases, bad = 0, []
    for n in range(1, limit + 1):
        for chi in enumerate_characters(n):
            for a in range(n):
                v = chi(a)
                cases += 1
                if abs(v) != (1 if math.gcd(a, n) == 1 else 0):
                    bad.append(f"{chi} at {a}")
                z = v.to_complex()
                if math.gcd(a, n) == 1 and abs(abs(z) - 1) > 1e-12:
                    bad.append(f"{chi} at {a} numerically off the circle")
    return cases, bad


def check_primitivize(limit: int = 120):
    cases, bad = 0, []
    for n in range(1, limit + 1):
        for chi in enumerate_characters(n):
            cases += 1
            prim = primitivize(chi)
            if prim.conductor != chi.conductor or prim.modulus != chi.conductor.value:
                bad.append(str(chi))
            elif primitivize(prim) != prim:
                bad.append(f"{chi} not idempotent")
            else:
                for a in range(1, n):
                    if math.gcd(a, n) == 1 and prim(a) != chi(a):
                        bad.append(f"{chi} not induced at {a}")
                        break
    return cases, bad


def check_count_le_square(limit: int = 500):
    bad = [str(M) for M in range(1, limit + 1) if count_primitive_conductor_at_most(M) > M * M]
    return limit, bad


# --- fields -----------------------------------------------------------------------


def closed_form_cyclotomic_disc(n: int) -> int:
    """n^phi(n) / prod_{p | n} p^(phi(n)/(p-1))."""
    phi = euler_phi(n)
    num = n**phi
    den = 1
    for p in factor(n).primes:
        den *= p ** (phi // (p - 1))
    assert num % den == 0
    return num // den


def check_cyclotomic_discriminants(limit: int = 60):
    cases, bad = 0, []
    for n in range(1, limit + 1):
        if n % 4 == 2:
            continue
        cases += 1
        if cyclotomic(n).discriminant_abs.value != closed_form_cyclotomic_disc(n):
            bad.append(str(n))
    return cases, bad


def check_relative_discriminant(primes=(3, 5, 7, 11, 13, 17, 19, 23, 29, 31)):
    """|Disc L| = |Disc K|^[L:K] N(d_{L/K}) for K quadratic in L = Q(zeta_p)."""
    bad = []
    for p in primes:
        L = cyclotomic(p)
        K = quadratic(p if p % 4 == 1 else -p)
        rel = relative_discriminant_norm(L, K)
        # tame total ramification of the prime above p in L/K
        if rel != p ** ((p - 3) // 2):
            bad.append(f"p={p}: relative norm {rel}")
        if L.discriminant_abs.value != K.discriminant_abs.value ** (L.degree // K.degree) * rel:
            bad.append(f"p={p}: identity fails")
    return len(primes), bad


def check_zeta_oracles(max_conductor: int = 40, N: int = 2000):
    fields = enumerate_abelian_fields(max_conductor)
    bad = []
    for fld in fields:
        eu = zeta_coefficients_euler(fld, N).a
        sp = zeta_coefficients_splitting(fld, N).a
        if eu != sp:
            m = next(i + 1 for i, (x, y) in enumerate(zip(eu, sp)) if x != y)
            bad.append(f"{fld.name()} first differs at m={m}")
    return len(fields), bad


def check_coefficient_domination(max_conductor: int = 40, N: int = 2000):
    fields = enumerate_abelian_fields(max_conductor)
    bad = []
    dcache: dict[int, tuple[int, ...]] = {}
    for fld in fields:
        a = zeta_coefficients_splitting(fld, N).a
        if a[0] != 1:
            bad.append(f"{fld.name()}: a[1] != 1")
        d = dcache.setdefault(fld.degree, divisor_function(fld.degree, N))
        if any(x > y for x, y in zip(a, d)):
            bad.append(fld.name())
    return len(fields), bad


def check_ideal_count_bound(max_conductor: int = 40, Ymax: int = 10**4):
    fields = enumerate_abelian_fields(max_conductor)
    bad = []
    for fld in fields:
        sums = zeta_coefficients_splitting(fld, Ymax).partial_sums()
        # count of norms < Y peaks just above each integer m
        for m, s in enumerate(sums, start=1):
            if s > B.lemma31_bounds(m, fld.degree)["ideal_bound"]:
                bad.append(f"{fld.name()} at Y={m}")
                break
    return len(fields), bad


def check_class_number_bound(Dmin: int = -10**4):
    cases, bad = 0, []
    for D in range(Dmin, 0):
        if not is_fundamental_discriminant(D):
            continue
        cases += 1
        h = class_number_imag_quadratic(D)
        if not h < B.lemma31_bounds(1.0, 2, -D)["class_bound"]:
            bad.append(str(D))
    return cases, bad


# --- repr -------------------------------------------------------------------------


def _tables():
    return {name: (G, character_table(G)) for name, G in suite_groups().items()}


def check_tables_and_degrees(tables=None):
    tables = tables or _tables()
    bad = []
    for name, (G, T) in tables.items():
        T.certify()
        if T.max_degree != expected_max_degree(name):
            bad.append(f"{name}: r={T.max_degree}")
    return len(tables), bad


def check_tensor_multiplicity(tables=None):
    tables = tables or _tables()
    cases, bad = 0, []
    for name, (G, T) in tables.items():
        for i, rho in enumerate(T.irreducibles):
            for j, psi in enumerate(T.irreducibles):
                cases += 1
                if tensor_trivial_multiplicity(rho, psi) != int(i == j):
                    bad.append(f"{name} ({i},{j})")
    return cases, bad


def check_isaacs_sandwich(tables=None, cap: int = 200):
    tables = tables or _tables()
    cases, bad = 0, []
    for name, (G, T) in tables.items():
        if G.order > cap:
            continue
        cases += 1
        r = T.max_degree
        m = min_abelian_subgroup_index(G, cap)
        if not r <= m <= math.factorial(r) ** 2:
            bad.append(f"{name}: r={r}, index={m}")
    return cases, bad


def check_fixed_dims(tables=None):
    tables = tables or _tables()
    cases, bad = 0, []
    for name, (G, T) in tables.items():
        subs = {closure([g], G.moved_points) for g in G.elements}
        if G.order <= 200:
            subs.update(abelian_subgroups(G))
        subs.add(frozenset(G.elements))
        for H in subs:
            for chi in T.irreducibles:
                cases += 1
                try:
                    d = fixed_space_dim(chi, H)
                except Exception as exc:
                    bad.append(f"{name}: {exc}")
                    continue
                if not 0 <= d <= chi.degree:
                    bad.append(f"{name}: dim {d}")
    return cases, bad


def check_tensor_conductor(tables=None, trials: int = 1000, seed: int = 5):
    tables = tables or _tables()
    rng = random.Random(seed)
    cases, bad = 0, []
    for name, (G, T) in tables.items():
        rows = T.irreducibles
        for _ in range(trials):
            filt = random_filtration(G, rng)
            rho, psi = rng.choice(rows), rng.choice(rows)
            cases += 1
            res = tensor_conductor_check(rho, psi, filt)
            if not res["holds"]:
                bad.append(f"{name}: {res}")
    return cases, bad


def check_linear_characters_form_group(tables=None):
    tables = tables or _tables()
    bad = []
    for name, (G, T) in tables.items():
        linear = [chi for chi in T.irreducibles if chi.degree == 1]
        keys = {tuple(v.reduced() for v in chi.values) for chi in linear}
        for a in linear:
            for b in linear:
                prod = a * b
                if tuple(v.reduced() for v in prod.values) not in keys:
                    bad.append(name)
                    break
        if G.order % len(linear):
            bad.append(f"{name}: {len(linear)} linear characters")
    return len(tables), bad


# --- bounds -----------------------------------------------------------------------


def check_certify_abelian(max_conductor: int = 200):
    fields = enumerate_abelian_fields(max_conductor)
    bad = [f.name() for f in fields if f.degree > 2 and B.certify_abelian(f) is not True]
    return sum(1 for f in fields if f.degree > 2), bad


def check_milne_dominates(limit: int = 500):
    bad = [
        str(M)
        for M in range(1, limit + 1)
        if B.milne_count_bound(M, 1, 1) < count_primitive_conductor_at_most(M)
    ]
    return limit, bad


def solve_y_grid() -> list[tuple[float, int, int]]:
    degLs = [10 ** (k / 4) for k in range(8, 8 + 34)]  # 1e2 .. ~1e10
    grid = []
    for i, degL in enumerate(degLs):
        for degF in (1, 2, 3):
            grid.append((degL, degF, (1, 8, 125)[i % 3]))
    return grid[:100]


def check_solve_y(tol: float = 1e-9):
    bad = []
    grid = solve_y_grid()
    for degL, degF, disc in grid:
        Y = B.solve_Y(degL, degF, disc)
        lhs = degL / (2 * degF)
        rhs = B.def_y_rhs(Y, degF, disc)
        if abs(rhs - lhs) > tol * lhs:
            bad.append(f"({degL:.3g},{degF},{disc}): rel err {abs(rhs - lhs) / lhs:.2e}")
    for degF in (1, 2, 3):
        for disc in (1, 8, 125):
            ys = [B.solve_Y(d, degF, disc) for d in (1e2, 1e3, 1e4, 1e6, 1e9)]
            if any(b < a for a, b in zip(ys, ys[1:])):
                bad.append(f"Y not monotone for degF={degF}, disc={disc}")
    y1 = B.solve_Y(8 * math.e**2, 1, 1)
    if abs(y1 - 1) > 1e-10:
        bad.append(f"spot case Y={y1!r}")
    return len(grid) + 10, bad


def check_circle_packing():
    grid = [10 ** (k / 10) for k in range(0, 31)]
    bad = [str(Y) for Y in grid if not B.circle_packing_check(Y)["holds"]]
    return len(grid), bad


def check_spot_values():
    bad = []
    d = B.ExtensionDatum(log_degL=math.e**9, degK=1, log_rdL=1.0)
    want = 9 / (16 * math.log(9))
    if abs(B.thm1_bound(d) - want) > 1e-12 * want:
        bad.append("thm1")
    d = B.ExtensionDatum(log_degL=32.0, degK=1, log_rdL=1.0)
    if abs(B.thm2_bound(d) - 2.0) > 1e-12 * 2:
        bad.append("thm2")
    corners = {
        (False, "real"): 60.8395, (False, "complex"): 22.3816,
        (True, "real"): 215.3325, (True, "complex"): 44.7632,
    }
    for (grh, kind), want in corners.items():
        got = B.poitou_bound(4, 0, grh) if kind == "real" else B.poitou_bound(0, 2, grh)
        if abs(got - want) > 1e-12 * want:
            bad.append(f"poitou {grh} {kind}")
    return 7, bad


def check_thm2_consistency(max_conductor: int = 60):
    """Directional smoke test with C2 = 1: abelian data have r = 1.

    C2 is not fixed numerically, so fields where the bound exceeds 1 are
    counted in the note rather than failing the check.
    """
    fields = [f for f in enumerate_abelian_fields(max_conductor) if f.degree >= 3]
    flagged = []
    for f in fields:
        entry = B.make_report(B.ExtensionDatum.from_field(f)).entry("thm2")
        if entry.applicable and not entry.vacuous and entry.satisfied is False:
            flagged.append(f.name())
    return len(fields), [], f"{len(flagged)} fields exceed the C2 = 1 value (reported only)"


SUITES: dict[str, list[tuple[str, Callable]]] = {
    "arith": [
        ("factor re-multiplication", check_factor_roundtrip),
        ("order divides phi", check_order_divides_phi),
        ("exponent-vector bijection", check_log_bijection),
    ],
    "dirichlet": [
        ("multiplicativity", check_multiplicativity),
        ("orthogonality", check_orthogonality),
        ("unit-circle values", check_unit_modulus),
        ("primitivize", check_primitivize),
        ("count <= M^2", check_count_le_square),
    ],
    "fields": [
        ("cyclotomic discriminant closed form", check_cyclotomic_discriminants),
        ("relative discriminant identity", check_relative_discriminant),
        ("Euler vs splitting zeta coefficients", check_zeta_oracles),
        ("coefficientwise domination", check_coefficient_domination),
        ("ideal-count bound", check_ideal_count_bound),
        ("class-number bound", check_class_number_bound),
    ],
    "repr": [
        ("table certification and max degrees", check_tables_and_degrees),
        ("tensor trivial multiplicity delta", check_tensor_multiplicity),
        ("Isaacs sandwich", check_isaacs_sandwich),
        ("fixed-space dimensions integral", check_fixed_dims),
        ("tensor conductor inequality", check_tensor_conductor),
        ("linear characters closed", check_linear_characters_form_group),
    ],
    "bounds": [
        ("abelian bound certification", check_certify_abelian),
        ("character-count bound dominates", check_milne_dominates),
        ("solve_Y back-substitution", check_solve_y),
        ("circle packing", check_circle_packing),
        ("spot values", check_spot_values),
        ("thm2 consistency smoke test", check_thm2_consistency),
    ],
}


def _run_named(item: tuple[str, Callable]) -> CheckResult:
    return _run(*item)


def run_suite(
    name: str, echo: Callable[[str], None] | None = None, jobs: int = 1
) -> list[CheckResult]:
    """Run one suite (or "all"); with jobs > 1 the checks fan out over processes."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(name)
    work = [(f"{suite}: {label}", fn) for suite in names for label, fn in SUITES[suite]]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_named, work))
    else:
        results = [_run_named(w) for w in work]
    if echo:
        for res in results:
            echo(res.line())
    return results
