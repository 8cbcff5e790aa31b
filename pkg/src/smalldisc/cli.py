"""Command-line entry point: ``smalldisc {field,group,survey,bounds,verify,cache}``.

Every command prints one JSON document with a top-level ``schema_version``.
Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from . import bounds as B
from . import dirichlet, fields
from .arith import FactoredInt, factor
from .cache import TableCache
from .errors import DomainError, ParseError, SizeError
from .reps.groups import (
    ORDER_CAP,
    SUBGROUP_CAP,
    cycle_string,
    group_from_string,
    min_abelian_subgroup_index,
)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

SURVEY_SPOT_Y = 100


def _clean(obj: Any) -> Any:
    """Recursively coerce to plain JSON types; non-finite floats become None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, FactoredInt):
        return obj.to_record()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def render(command: str, payload: dict, pretty: bool = False) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, **_clean(payload)}
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)


# --- field --------------------------------------------------------------------


def field_report(fld: fields.AbelianField, zeta: int | None = None) -> dict:
    rep: dict = {"field": fld.to_record(), "name": fld.name()}
    rep["disc_factored"] = str(fld.discriminant_abs)
    rep["rd"] = fld.root_discriminant
    verdict = B.certify_abelian(fld)
    rep["eqn_simple"] = {
        "applicable": verdict is not None,
        "satisfied": verdict,
        "bound": B.abelian_bound(fld.degree) if fld.degree > 2 else None,
        "margin": fld.root_discriminant / B.abelian_bound(fld.degree) if fld.degree > 2 else None,
    }
    if fld.degree == 2 and fld.r2 == 1:
        D = -fld.discriminant_abs.value
        h = fields.class_number_imag_quadratic(D)
        bound = B.lemma31_bounds(1.0, 2, -D)["class_bound"]
        rep["class_number"] = {"D": D, "h": h, "bound": bound, "margin": bound - h, "satisfied": h < bound}
    if zeta is not None:
        eu = fields.zeta_coefficients_euler(fld, zeta)
        sp = fields.zeta_coefficients_splitting(fld, zeta)
        mismatch = [m for m in range(1, zeta + 1) if eu[m] != sp[m]]
        count = sp.partial_sums()[-1]
        bound = B.lemma31_bounds(zeta, fld.degree)["ideal_bound"]
        rep["zeta"] = {
            "N": zeta,
            "agree": not mismatch,
            "first_mismatch": mismatch[0] if mismatch else None,
            "coefficients_head": list(sp.a[:20]),
            "ideal_count_le_N": count,
            "ideal_bound_at_N": bound,
            "ideal_bound_satisfied": count <= bound,
        }
    return rep


def cmd_field(args) -> tuple[dict, int]:
    fld = fields.parse_field_spec(args.spec)
    rep = field_report(fld, args.zeta)
    ok = rep["eqn_simple"]["satisfied"] is not False
    ok = ok and rep.get("class_number", {}).get("satisfied", True)
    ok = ok and rep.get("zeta", {}).get("agree", True) and rep.get("zeta", {}).get("ideal_bound_satisfied", True)
    return rep, EXIT_OK if ok else EXIT_FAIL


# --- group --------------------------------------------------------------------


def cmd_group(args) -> tuple[dict, int]:
    G = group_from_string(args.generators, cap=args.order_cap)
    if args.no_cache:
        from .reps.chartable import character_table

        T = character_table(G, cap=args.order_cap)
    else:
        T = TableCache().table(G)
    r = T.max_degree
    rep: dict = {
        "order": G.order,
        "moved_points": G.moved_points,
        "generators": G.generator_string(),
        "abelian": G.is_abelian(),
        "classes": [
            {"representative": cycle_string(c.representative), "size": c.size, "element_order": c.element_order}
            for c in G.classes
        ],
        "degrees": T.degrees,
        "r": r,
        "table": T.to_record(),
    }
    try:
        m = min_abelian_subgroup_index(G, args.subgroup_cap)
    except SizeError as exc:
        rep["min_abelian_index"] = None
        rep["isaacs_sandwich"] = {"checked": False, "note": str(exc)}
        return rep, EXIT_OK
    hi = math.factorial(r) ** 2
    holds = r <= m <= hi
    rep["min_abelian_index"] = m
    rep["isaacs_sandwich"] = {"checked": True, "lower": r, "index": m, "upper": hi, "holds": holds}
    return rep, EXIT_OK if holds else EXIT_FAIL


# --- survey -------------------------------------------------------------------


def survey_row(fld: fields.AbelianField) -> dict:
    verdict = B.certify_abelian(fld)
    row = {
        "name": fld.name(),
        "conductor": fld.conductor,
        "degree": fld.degree,
        "r1": fld.r1,
        "r2": fld.r2,
        "disc": str(fld.discriminant_abs),
        "rd": fld.root_discriminant,
        "eqn_simple": "inapplicable" if verdict is None else ("satisfied" if verdict else "violated"),
        "eqn_simple_margin": (
            fld.root_discriminant / B.abelian_bound(fld.degree) if fld.degree > 2 else None
        ),
    }
    count = fields.count_ideals(fld, SURVEY_SPOT_Y)
    bound = B.lemma31_bounds(SURVEY_SPOT_Y, fld.degree)["ideal_bound"]
    row["ideal_count"] = {"Y": SURVEY_SPOT_Y, "count": count, "bound": bound, "holds": count <= bound}
    if fld.degree == 2 and fld.r2 == 1:
        D = -fld.discriminant_abs.value
        h = fields.class_number_imag_quadratic(D)
        cb = B.lemma31_bounds(1.0, 2, -D)["class_bound"]
        row["class_number"] = {"h": h, "bound": cb, "holds": h < cb}
    return row


def run_survey(max_conductor: int, jobs: int = 1) -> dict:
    flds = fields.enumerate_abelian_fields(max_conductor)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(survey_row, flds, chunksize=32))
    else:
        rows = [survey_row(f) for f in flds]
    violations = [r["name"] for r in rows if r["eqn_simple"] == "violated"]
    count_fail = [
        r["name"]
        for r in rows
        if not r["ideal_count"]["holds"] or not r.get("class_number", {}).get("holds", True)
    ]
    summary = {
        "max_conductor": max_conductor,
        "fields": len(rows),
        "eqn_simple_checked": sum(r["eqn_simple"] != "inapplicable" for r in rows),
        "eqn_simple_violations": len(violations),
        "ideal_class_violations": len(count_fail),
        "violating_fields": violations + count_fail,
        "min_eqn_simple_margin": min(
            (r["eqn_simple_margin"] for r in rows if r["eqn_simple_margin"] is not None), default=None
        ),
    }
    return {"summary": summary, "rows": rows}


def cmd_survey(args) -> tuple[dict, int]:
    rep = run_survey(args.max_conductor, args.jobs)
    s = rep["summary"]
    if args.summary_only:
        rep = {"summary": s}
    bad = s["eqn_simple_violations"] or s["ideal_class_violations"]
    return rep, EXIT_FAIL if bad else EXIT_OK


# --- bounds -------------------------------------------------------------------


def datum_from_args(args) -> B.ExtensionDatum:
    given = [x is not None for x in (args.degL, args.degL_log, args.degL_loglog)]
    if sum(given) != 1:
        raise DomainError("give exactly one of --degL, --degL-log, --degL-loglog")
    if args.rdL is not None and args.rdL_log is not None:
        raise DomainError("give at most one of --rdL, --rdL-log")
    kw: dict = {"degK": args.degK, "r_actual": args.r}
    if args.r1 is not None or args.r2 is not None:
        kw["signature"] = (args.r1 or 0, args.r2 or 0)
    if args.discK is not None:
        kw["discK_abs"] = factor(args.discK)
    kw["abelian_over_Q"] = args.abelian
    if args.disc is not None:
        if args.degL is None or args.log_scale:
            raise DomainError("--disc needs an exact integer --degL")
        return B.ExtensionDatum.exact(int(args.degL), factor(args.disc), **kw)

    if args.degL is not None:
        if args.log_scale:
            log_deg = float(args.degL)
        else:
            if args.degL < 1:
                raise DomainError("[L:Q] must be at least 1")
            log_deg = math.log(args.degL)
            if float(args.degL).is_integer():
                kw["degL"] = int(args.degL)
    elif args.degL_log is not None:
        log_deg = args.degL_log
    else:
        log_deg = math.exp(args.degL_loglog)

    if args.rdL_log is not None:
        log_rd = args.rdL_log
    elif args.rdL is not None:
        if args.log_scale:
            log_rd = args.rdL
        else:
            if args.rdL <= 0:
                raise DomainError("rd_L must be positive")
            log_rd = math.log(args.rdL)
    else:
        log_rd = 1.0
    return B.ExtensionDatum(log_degL=log_deg, log_rdL=log_rd, **kw)


def cmd_bounds(args) -> tuple[dict, int]:
    c = B.BoundConstants.from_file(args.constants) if args.constants else B.BoundConstants()
    d = datum_from_args(args)
    return B.make_report(d, c).to_record(), EXIT_OK


# --- verify / cache -----------------------------------------------------------


def cmd_verify(args) -> tuple[dict, int]:
    from . import verify

    if args.suite != "all" and args.suite not in verify.SUITES:
        raise ParseError(f"unknown suite {args.suite!r}; choose from {sorted(verify.SUITES) + ['all']}")
    echo = None if args.quiet else (lambda line: print(line, file=sys.stderr))
    results = verify.run_suite(args.suite, echo, jobs=args.jobs)
    passed = sum(r.passed for r in results)
    rep = {
        "suite": args.suite,
        "passed": passed,
        "failed": len(results) - passed,
        "checks": [
            {"name": r.name, "passed": r.passed, "cases": r.cases, "seconds": round(r.seconds, 3), "detail": r.detail}
            for r in results
        ],
    }
    return rep, EXIT_OK if passed == len(results) else EXIT_FAIL


def cmd_cache(args) -> tuple[dict, int]:
    cache = TableCache()
    if args.action == "clear":
        before = cache.stats()
        cache.clear()
        return {"cleared": before["entries"], **cache.stats()}, EXIT_OK
    return cache.stats(), EXIT_OK


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smalldisc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--pretty", action="store_true", help="indented, key-sorted JSON")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    p.add_argument("--modulus-cap", type=int, default=dirichlet.MODULUS_CAP)
    p.add_argument("--conductor-cap", type=int, default=fields.CONDUCTOR_CAP)
    p.add_argument("--coeff-cap", type=int, default=fields.COEFFICIENT_CAP, help="largest zeta-coefficient N")
    p.add_argument("--order-cap", type=int, default=ORDER_CAP, help="largest group order")
    p.add_argument("--subgroup-cap", type=int, default=SUBGROUP_CAP, help="largest order for abelian-subgroup search")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("field", parents=[common], help="invariants of one abelian field")
    f.add_argument("spec", help='"cyclotomic:n", "subgroup:n:g1,g2" or "quadratic:D"')
    f.add_argument("--zeta", type=int, metavar="N", help="cross-check zeta coefficients up to N")
    f.set_defaults(func=cmd_field)

    g = sub.add_parser("group", parents=[common], help="character table of a permutation group")
    g.add_argument("generators", help='1-based cycles, e.g. "(1 2),(1 2 3 4)"')
    g.add_argument("--no-cache", action="store_true")
    g.set_defaults(func=cmd_group)

    s = sub.add_parser("survey", parents=[common], help="certify every abelian field up to a conductor")
    s.add_argument("max_conductor", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--summary-only", action="store_true")
    s.set_defaults(func=cmd_survey)

    b = sub.add_parser("bounds", parents=[common], help="evaluate the bound formulas on an extension datum")
    b.add_argument("--degL", type=float)
    b.add_argument("--degL-log", type=float, help="log [L:Q]")
    b.add_argument("--degL-loglog", type=float, help="log log [L:Q]")
    b.add_argument("--degK", type=int, default=1)
    b.add_argument("--rdL", type=float)
    b.add_argument("--rdL-log", type=float, help="log rd_L")
    b.add_argument("--log-scale", action="store_true", help="read --degL and --rdL as natural logs")
    b.add_argument("--disc", type=int, help="exact |Disc L| (needs integer --degL)")
    b.add_argument("--discK", type=int, help="exact |Disc K|")
    b.add_argument("--r", type=int, help="known max irreducible degree")
    b.add_argument("--r1", type=int)
    b.add_argument("--r2", type=int)
    b.add_argument("--abelian", action="store_true", default=True, help="treat L/Q as abelian (default)")
    b.add_argument("--non-abelian", dest="abelian", action="store_false")
    b.add_argument("--constants", help="JSON file overriding C1, C2, C3, C16, C17")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", parents=[common], help="run invariant suites")
    v.add_argument("suite", help="arith, dirichlet, fields, repr, bounds or all")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--quiet", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cache", parents=[common], help="inspect or clear the character-table cache")
    c.add_argument("action", choices=["stats", "clear"])
    c.set_defaults(func=cmd_cache)
    return p


_CAP_FLAGS = (
    (dirichlet, "MODULUS_CAP", "modulus_cap"),
    (fields, "CONDUCTOR_CAP", "conductor_cap"),
    (fields, "COEFFICIENT_CAP", "coeff_cap"),
)


@contextmanager
def _caps(args):
    """Install flag caps as module defaults for the duration of one command."""
    saved = [(mod, name, getattr(mod, name)) for mod, name, _ in _CAP_FLAGS]
    for mod, name, flag in _CAP_FLAGS:
        setattr(mod, name, getattr(args, flag))
    try:
        yield
    finally:
        for mod, name, value in saved:
            setattr(mod, name, value)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        with _caps(args):
            payload, code = args.func(args)
    except SizeError as exc:
        print(render(args.command, {"error": "cap", "message": str(exc)}, args.pretty))
        return EXIT_CAP
    except (ParseError, DomainError, ValueError, OSError) as exc:
        print(render(args.command, {"error": "input", "message": str(exc)}, args.pretty))
        return EXIT_INPUT
    print(render(args.command, payload, args.pretty))
    return code


if __name__ == "__main__":
    sys.exit(main())
