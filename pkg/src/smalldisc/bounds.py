"""Evaluators for the lower bounds on root discriminants and representation degrees.

Degrees of fields enter the asymptotic formulas only through iterated
logarithms, so an ExtensionDatum keeps log [L:Q] (and log rd_L) as floats
and the exact integers only when they are known.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

from scipy.optimize import brentq

from .arith import FactoredInt
from .errors import DomainError

E = math.e

POITOU = {False: (60.8395, 22.3816), True: (215.3325, 44.7632)}

# constants for which no numerical value is fixed in the source material
PAPER_UNSPECIFIED = {"C2", "C3", "C17"}


@dataclass(frozen=True)
class BoundConstants:
    C1: float = 1 / 16
    C2: float = 1.0
    C3: float = 1.0
    C16: float = 16384.0
    C17: float = E
    # threshold e^(e^8) on [L:Q], stored as log log to stay in double range
    minL_thm1_loglog: float = 8.0

    def __post_init__(self):
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise DomainError(f"constant {f.name} must be positive")
        if self.C17 <= 1:
            raise DomainError("C17 must exceed 1")

    @classmethod
    def from_file(cls, path: str | Path) -> BoundConstants:
        data = json.loads(Path(path).read_text())
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown constants in {path}: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})

    def to_record(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ExtensionDatum:
    """[L:Q], [K:Q], rd_L and optional exact data for an extension L/K."""

    log_degL: float
    degK: int = 1
    log_rdL: float = 1.0
    degL: Optional[int] = None
    discL_abs: Optional[FactoredInt] = None
    discK_abs: Optional[FactoredInt] = None
    r_actual: Optional[int] = None
    signature: Optional[tuple[int, int]] = None
    abelian_over_Q: bool = False

    def __post_init__(self):
        if self.degK < 1:
            raise DomainError("[K:Q] must be at least 1")
        if self.degL is not None:
            if self.degL < 1 or self.degL % self.degK:
                raise DomainError("[K:Q] must divide [L:Q]")
            if abs(math.log(self.degL) - self.log_degL) > 1e-9 * max(1.0, self.log_degL):
                raise DomainError("degL and log_degL disagree")
        if self.log_rdL < 0:
            raise DomainError("rd_L must be at least 1")
        if self.discL_abs is not None and self.degL is not None:
            log_disc = _log_factored(self.discL_abs)
            if abs(log_disc - self.degL * self.log_rdL) > 1e-9 * max(1.0, log_disc):
                raise DomainError("rd_L^[L:Q] is inconsistent with the discriminant")
        if self.signature is not None:
            r1, r2 = self.signature
            if self.degL is not None and r1 + 2 * r2 != self.degL:
                raise DomainError("r1 + 2 r2 must equal [L:Q]")

    @classmethod
    def exact(
        cls,
        degL: int,
        discL_abs: FactoredInt,
        degK: int = 1,
        **kw,
    ) -> ExtensionDatum:
        return cls(
            log_degL=math.log(degL),
            degK=degK,
            log_rdL=_log_factored(discL_abs) / degL,
            degL=degL,
            discL_abs=discL_abs,
            **kw,
        )

    @classmethod
    def from_field(cls, fld, r_actual: int = 1) -> ExtensionDatum:
        return cls.exact(
            fld.degree,
            fld.discriminant_abs,
            r_actual=r_actual,
            signature=fld.signature,
            abelian_over_Q=True,
        )

    @property
    def rdL(self) -> float:
        return math.exp(self.log_rdL) if self.log_rdL < 709 else math.inf

    def to_record(self) -> dict:
        rec = {
            "log_degL": self.log_degL,
            "degK": self.degK,
            "log_rdL": self.log_rdL,
            "rdL": self.rdL,
            "degL": self.degL,
            "r_actual": self.r_actual,
            "signature": list(self.signature) if self.signature else None,
            "abelian_over_Q": self.abelian_over_Q,
        }
        if self.discL_abs is not None:
            rec["discL_abs"] = self.discL_abs.to_record()
        if self.discK_abs is not None:
            rec["discK_abs"] = self.discK_abs.to_record()
        return rec


def _log_factored(n: FactoredInt) -> float:
    return sum(e * math.log(p) for p, e in n.factors)


def thm1_bound(d: ExtensionDatum, c: BoundConstants = BoundConstants()) -> float:
    """(C1 loglog[L:Q] / logloglog[L:Q] - log[K:Q]) / log rd_L."""
    if d.log_degL <= 0 or math.log(d.log_degL) <= 0:
        raise DomainError("need [L:Q] > e^e for the iterated logarithms")
    if d.log_rdL <= 0:
        raise DomainError("need rd_L > 1")
    ll = math.log(d.log_degL)
    return (c.C1 * ll / math.log(ll) - math.log(d.degK)) / d.log_rdL


def thm1_applicable(d: ExtensionDatum, c: BoundConstants = BoundConstants()) -> bool:
    return d.log_degL > 0 and math.log(d.log_degL) >= c.minL_thm1_loglog


def thm2_bound(d: ExtensionDatum, c: BoundConstants = BoundConstants()) -> float:
    """C2 (log[L:Q])^(1/5) / ((log rd_L)^(2/5) [K:Q]^(3/5))."""
    if d.log_rdL <= 0:
        raise DomainError("need rd_L > 1")
    if d.log_degL < 0:
        raise DomainError("need [L:Q] >= 1")
    return c.C2 * d.log_degL**0.2 / (d.log_rdL**0.4 * d.degK**0.6)


def abelian_bound(degL: float) -> float:
    """Lower bound (degL/2)^(1/4) on rd_L for abelian L/Q of degree > 2."""
    if degL <= 2:
        raise DomainError("the abelian bound needs [L:Q] > 2")
    return math.exp(0.25 * math.log(degL / 2))


def abelian_bound_log(log_degL: float) -> float:
    """log of the abelian bound, for degrees given on a log scale."""
    if log_degL <= math.log(2):
        raise DomainError("the abelian bound needs [L:Q] > 2")
    return 0.25 * (log_degL - math.log(2))


def certify_abelian(fld) -> Optional[bool]:
    """Exact check of |Disc|^4 * 2^d > d^d; None when the degree is <= 2."""
    d = fld.degree
    if d <= 2:
        return None
    return fld.discriminant_abs.value**4 * 2**d > d**d


def poitou_bound(r1: int, r2: int, grh: bool = False) -> float:
    """Main term A^(r1/n) B^(2 r2/n) of the Poitou lower bound on rd."""
    n = r1 + 2 * r2
    if n < 1 or r1 < 0 or r2 < 0:
        raise DomainError("need r1 + 2 r2 >= 1")
    a, b = POITOU[grh]
    return a ** (r1 / n) * b ** (2 * r2 / n)


def lemma31_bounds(Y: float, f: int, disc_abs: Optional[float] = None) -> dict:
    """Ideal-count bound e Y (1 + log Y)^f and class-number bound."""
    if Y < 1:
        raise DomainError("Y must be at least 1")
    if f < 1:
        raise DomainError("degree must be at least 1")
    out = {"ideal_bound": E * Y * (1 + math.log(Y)) ** f, "class_bound": None}
    if disc_abs is not None:
        D = float(disc_abs)
        out["class_bound"] = E * math.sqrt(D) * (1 + 0.5 * math.log(D)) ** f
    return out


def milne_count_bound(Y: float, discF_abs: float, degF: int) -> float:
    """e^2 Y^2 |D|^(1/2) (2 + log(Y^2 |D|))^(2 degF): characters of conductor norm <= Y."""
    if Y < 1:
        raise DomainError("Y must be at least 1")
    D = float(discF_abs)
    return E**2 * Y**2 * math.sqrt(D) * (2 + math.log(Y**2 * D)) ** (2 * degF)


def _def_y_log_rhs(log_y: float, degF: int, D: float) -> float:
    inner = 2 + 2 * log_y + math.log(D)
    return 2 + 2 * log_y + 0.5 * math.log(D) + 2 * degF * math.log(inner)


def def_y_rhs(Y: float, degF: int, discF_abs: float) -> float:
    D = float(discF_abs)
    return E**2 * Y**2 * math.sqrt(D) * (2 + math.log(Y**2 * D)) ** (2 * degF)


def solve_Y(degL: float, degF: int, discF_abs: float) -> float:
    """Unique Y > e^-1 |D|^-1/2 with [L:Q]/(2[F:Q]) = e^2 Y^2 |D|^1/2 (2 + log(Y^2 |D|))^(2[F:Q]).

    The right side increases from 0 at the lower limit, so any positive target
    has exactly one solution.
    """
    if degL <= 0:
        raise DomainError("need [L:Q] > 0")
    return math.exp(solve_log_Y(math.log(degL), degF, discF_abs))


def solve_log_Y(log_degL: float, degF: int, discF_abs: float) -> float:
    """log of solve_Y, taking log [L:Q]; usable far beyond double range."""
    D = float(discF_abs)
    if D < 1 or degF < 1:
        raise DomainError("need |Disc F| >= 1 and [F:Q] >= 1")
    log_target = log_degL - math.log(2 * degF)
    lo = -1 - 0.5 * math.log(D)  # log of the lower limit; the right side vanishes there

    def g(t: float) -> float:
        return _def_y_log_rhs(t, degF, D) - log_target

    # step off the singular endpoint until the residual is negative
    step = 1.0
    a = lo + step
    while g(a) > 0:
        step /= 2
        a = lo + step
        if step < 1e-300:
            raise DomainError(f"no admissible Y: right side at the boundary exceeds exp({log_target})")
    b = max(a + 1.0, 0.5 * log_target)
    while g(b) < 0:
        b = 2 * b + 1
    return brentq(g, a, b, xtol=1e-15, rtol=4 * sys.float_info.epsilon, maxiter=500)


def prop41_thresholds(r: int, logq: float, degK: int, c: BoundConstants = BoundConstants()) -> dict:
    """X_min = C16 r^2 log^2 q and log of C17^(r^3 log^2 q [K:Q])."""
    if not logq > r * degK:
        raise DomainError(f"hypothesis log q > r [K:Q] fails ({logq} <= {r * degK})")
    return {
        "X_min": c.C16 * r**2 * logq**2,
        "count_bound_log": r**3 * logq**2 * degK * math.log(c.C17),
    }


def corollary_bound(r: int, discK_abs: float, degK: int, c: BoundConstants = BoundConstants()) -> float:
    """Upper bound C3 r^5 log^2|Disc K| [K:Q] on log N."""
    if r < 1:
        raise DomainError("r must be at least 1")
    if float(discK_abs) < E:
        raise DomainError(f"|Disc K| = {discK_abs} is too small for the log^2 factor")
    return c.C3 * r**5 * math.log(float(discK_abs)) ** 2 * degK


def circle_packing_check(Y: float) -> dict:
    """Greedily pack points on the unit circle at chord distance >= 1/Y."""
    if Y < 1:
        raise DomainError("Y must be at least 1")
    min_chord = 1 / Y
    step = 2 * math.asin(min(1.0, 1 / (2 * Y)))
    tol = 1e-12
    angles = [0.0]
    while True:
        nxt = angles[-1] + step
        gap_to_start = 2 * math.pi - nxt
        if 2 * math.sin(gap_to_start / 2) < min_chord - tol or gap_to_start < 0:
            break
        angles.append(nxt)
    # neighbours on the circle realise the minimum distance
    for a0, a1 in zip(angles, angles[1:] + [angles[0] + 2 * math.pi]):
        assert 2 * math.sin((a1 - a0) / 2) >= min_chord - tol
    bound = 2 * math.pi * Y
    return {"greedy_count": len(angles), "bound": bound, "holds": len(angles) <= bound}


@dataclass
class BoundEntry:
    name: str
    inputs: dict
    value: Optional[float]
    applicable: bool
    vacuous: bool
    satisfied: Optional[bool] = None
    formula: str = ""
    unspecified_constant: bool = False
    note: str = ""

    def to_record(self) -> dict:
        return asdict(self)


@dataclass
class BoundReport:
    datum: ExtensionDatum
    constants: BoundConstants
    entries: list[BoundEntry] = field(default_factory=list)

    def entry(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_record(self) -> dict:
        return {
            "datum": self.datum.to_record(),
            "constants": self.constants.to_record(),
            "entries": [e.to_record() for e in self.entries],
        }


def _guarded(name: str, inputs: dict, formula: str, fn, **kw) -> BoundEntry:
    try:
        value = fn()
    except DomainError as exc:
        return BoundEntry(name, inputs, None, False, False, None, formula, note=str(exc), **kw)
    return BoundEntry(name, inputs, value, True, False, None, formula, **kw)


def make_report(d: ExtensionDatum, c: BoundConstants = BoundConstants()) -> BoundReport:
    rep = BoundReport(d, c)

    e = _guarded(
        "thm1",
        {"loglog_degL": math.log(d.log_degL) if d.log_degL > 0 else None, "degK": d.degK, "log_rdL": d.log_rdL},
        "r >= (C1 loglog[L:Q]/logloglog[L:Q] - log[K:Q]) / log rd_L",
        lambda: thm1_bound(d, c),
    )
    if e.applicable and not thm1_applicable(d, c):
        e.applicable = False
        e.note = "[L:Q] below the threshold e^(e^8) where C1 = 1/16 is valid"
    if e.value is not None:
        e.vacuous = e.value <= 1
        if e.applicable and d.r_actual is not None:
            e.satisfied = d.r_actual >= e.value
    rep.entries.append(e)

    e = _guarded(
        "thm2",
        {"log_degL": d.log_degL, "degK": d.degK, "log_rdL": d.log_rdL, "C2": c.C2},
        "r >= C2 (log[L:Q])^(1/5) / ((log rd_L)^(2/5) [K:Q]^(3/5))",
        lambda: thm2_bound(d, c),
        unspecified_constant=True,
    )
    if e.value is not None:
        e.vacuous = e.value <= 1
        if d.r_actual is not None:
            e.satisfied = d.r_actual >= e.value
    rep.entries.append(e)

    deg_exact = d.degL
    e = _guarded(
        "eqn_simple",
        {"degL": deg_exact},
        "rd_L > ([L:Q]/2)^(1/4) for abelian L/Q of degree > 2",
        lambda: abelian_bound_log(math.log(deg_exact) if deg_exact is not None else d.log_degL),
    )
    if e.value is not None:
        log_bound = e.value
        e.value = math.exp(log_bound) if log_bound < 700 else None
        if e.value is None:
            e.note = f"bound exceeds double range; log of bound = {log_bound}"
        e.vacuous = log_bound <= 0
        if not d.abelian_over_Q:
            e.applicable = False
            e.note = "only stated for abelian L/Q"
        elif d.discL_abs is not None and deg_exact is not None:
            dd = deg_exact
            e.satisfied = d.discL_abs.value**4 * 2**dd > dd**dd
        else:
            e.satisfied = d.log_rdL > log_bound
    rep.entries.append(e)

    if d.signature is not None:
        for grh in (False, True):
            e = _guarded(
                "poitou_grh" if grh else "poitou",
                {"r1": d.signature[0], "r2": d.signature[1], "grh": grh},
                "rd >= A^(r1/n) B^(2 r2/n) - O(n^(-2/3))",
                lambda grh=grh: poitou_bound(*d.signature, grh=grh),
            )
            e.note = "main term only; asymptotic, so no verdict is recorded"
            rep.entries.append(e)

    if d.discK_abs is not None:
        DK = d.discK_abs.value
        e = _guarded(
            "class_number_bound",
            {"discK_abs": DK, "degK": d.degK},
            "h_K < e |Disc K|^(1/2) (1 + log|Disc K|/2)^[K:Q]",
            lambda: lemma31_bounds(1.0, d.degK, DK)["class_bound"],
        )
        rep.entries.append(e)
        e = _guarded(
            "solve_Y",
            {"log_degL": d.log_degL, "degF": d.degK, "discF_abs": DK},
            "[L:Q]/(2[F:Q]) = e^2 Y^2 |Disc F|^(1/2) (2 + log(Y^2 |Disc F|))^(2[F:Q])",
            lambda: solve_log_Y(d.log_degL, d.degK, DK),
        )
        if e.value is not None:
            log_y = e.value
            e.value = math.exp(log_y) if log_y < 700 else None
            e.note = f"log Y = {log_y}"
        rep.entries.append(e)
        if d.r_actual is not None:
            r = d.r_actual
            logq = r * math.log(DK) if DK > 1 else 0.0
            e = _guarded(
                "rep_count_log",
                {"r": r, "logq": logq, "degK": d.degK, "C17": c.C17},
                "#{rho: deg <= r, q(rho) <= q} <= C17^(r^3 log^2 q [K:Q])",
                lambda: prop41_thresholds(r, logq, d.degK, c)["count_bound_log"],
                unspecified_constant=True,
            )
            rep.entries.append(e)
            e = _guarded(
                "logN_bound",
                {"r": r, "discK_abs": DK, "degK": d.degK, "C3": c.C3},
                "log N <= C3 r^5 log^2|Disc K| [K:Q]",
                lambda: corollary_bound(r, DK, d.degK, c),
                unspecified_constant=True,
            )
            rep.entries.append(e)
    return rep
