"""Command-line frontend: exact JSON reports over problem files, with a content-addressed cache."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .asymptotics import (
    FitError,
    fit_hilbert_polynomials,
    fit_hilbert_series,
    fit_hilbert_series_general,
    mixed_multiplicities,
)
from .betti import BettiError, graded_betti_table, invariants_from_shifts
from .cache import cache_key, cache_lookup_store
from .diagonals import (
    DiagonalError,
    DiagonalSpec,
    cm_diagonal_test,
    cm_threshold_alpha,
    diagonal_dimension,
    diagonal_hilbert_function,
    gorenstein_diagonals,
    quasi_gorenstein_bounds,
)
from .ginreg import GinError, bayer_stillman_check, borel_fix_check, borel_regularity, generic_initial_ideal
from .groebner import groebner_basis, ideal_power
from .hilbert import SeriesError, dim_mult, hilbert_polynomial, hilbert_series_ideal
from .problemfile import ProblemError, load_problem
from .rees import ReesError, bigraded_hilbert_series_rees, fiber_cone, rees_presentation
from .rings import ParseError, RingError

_SAFE = 1 << 53


def _jsonable(obj):
    """Exact JSON: Fractions as 'p/q' strings, oversized ints as decimal strings."""
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return _jsonable(obj.numerator)
        return "%d/%d" % (obj.numerator, obj.denominator)
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= _SAFE else obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(args, command, payload, citations, assumptions):
    report = {
        "tool_version": __version__,
        "command": command,
        "criterion_citations": sorted(citations),
        "assumptions": list(assumptions),
        "result": _jsonable(payload),
    }
    if args.format == "text":
        _print_text(report)
    else:
        print(json.dumps(report, sort_keys=True, indent=2))
    return 0


def _print_text(report, indent=0):
    def walk(key, value, depth):
        pad = "  " * depth
        if isinstance(value, dict):
            print("%s%s:" % (pad, key))
            for k in sorted(value):
                walk(k, value[k], depth + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print("%s%s:" % (pad, key))
            for item in value:
                print("%s  - %s" % (pad, json.dumps(item, sort_keys=True)))
        else:
            print("%s%s: %s" % (pad, key, json.dumps(value, sort_keys=True)))

    for k in ("command", "tool_version", "criterion_citations", "assumptions", "result"):
        walk(k, report[k], 0)


def _series_json(series):
    return series.to_json()


def _power_ideal(problem, j):
    return ideal_power(problem.ideal, j)


# ---------------------------------------------------------------------------
# command payload producers (pure JSON out, cache-friendly)

def _cmd_gb(args, problem):
    gb = groebner_basis(problem.ideal)
    return (
        {
            "basis": [repr(g) for g in gb.polys],
            "leading_monomials": [list(m) for m in sorted(gb.leading_monomials)],
        },
        ["reduced-groebner-basis"],
        [],
    )


def _cmd_hs(args, problem):
    I = _power_ideal(problem, args.power)
    series = hilbert_series_ideal(I, args.module)
    return (
        {"power": args.power, "module": args.module, "series": _series_json(series)},
        ["initial-ideal-series-invariance", "monomial-pivot-recursion"],
        [],
    )


def _cmd_hp(args, problem):
    I = _power_ideal(problem, args.power)
    series = hilbert_series_ideal(I, args.module)
    hp = hilbert_polynomial(series)
    return (
        {
            "power": args.power,
            "module": args.module,
            "coefficients": [str(c) for c in hp.coeffs],
            "stable_from": hp.threshold,
        },
        ["numerator-binomial-expansion"],
        [],
    )


def _cmd_powers(args, problem):
    out = []
    for j in range(1, args.max_power + 1):
        Ij = _power_ideal(problem, j)
        series = hilbert_series_ideal(Ij, "ideal")
        out.append(
            {
                "power": j,
                "minimal_generators": len(Ij.gens),
                "generator_degrees": sorted(g.multidegree()[0] for g in Ij.gens),
                "series": _series_json(series),
            }
        )
    return ({"powers": out}, ["degreewise-minimal-generators"], [])


def _quotient_height(problem):
    series = hilbert_series_ideal(problem.ideal, "quotient")
    return problem.ring.nvars - dim_mult(series).dimension


def _cmd_fit_hp(args, problem):
    n = problem.ring.nvars
    h = _quotient_height(problem)
    samples = {}
    for j in range(1, args.max_power + 1):
        samples[j] = hilbert_polynomial(hilbert_series_ideal(_power_ideal(problem, j), "quotient"))
    family = fit_hilbert_polynomials(samples, n, h)
    payload = family.to_json()
    payload["height"] = h
    if args.predict:
        hp = family.hilbert_polynomial(args.predict)
        payload["predicted"] = {
            "power": args.predict,
            "coefficients": [str(c) for c in hp.coeffs],
        }
    return (payload, ["power-family-interpolation"], ["threshold surrogate from sample window"])


def _cmd_fit_hs(args, problem):
    P = rees_presentation(problem.ideal)
    l = fiber_cone(P).spread
    samples = {j: P.power_series(j) for j in range(1, args.max_power + 1)}
    if P.equigenerated:
        template = fit_hilbert_series(samples, P.max_degree, l)
        payload = template.to_json()
        route = "equigenerated-offset-template"
    else:
        samples[0] = P.power_series(0)
        template = fit_hilbert_series_general(samples, P.degrees)
        payload = {
            "slices": [[j, {str(a): c for a, c in num.items()}] for j, num in template.q_slices],
            "degrees": list(template.degrees),
        }
        route = "general-recurrence-window"
    if args.predict:
        payload["predicted"] = {
            "power": args.predict,
            "series": _series_json(template.predict(args.predict)),
        }
    return (payload, [route], [])


def _cmd_mixed_mult(args, problem):
    n = problem.ring.nvars
    h = _quotient_height(problem)
    degs = {g.multidegree()[0] for g in problem.ideal.gens}
    if len(degs) != 1:
        raise FitError("mixed multiplicities need an equigenerated ideal")
    d = degs.pop()
    P = rees_presentation(problem.ideal)
    l = fiber_cone(P).spread
    samples = {}
    for j in range(1, args.max_power + 1):
        samples[j] = hilbert_polynomial(hilbert_series_ideal(_power_ideal(problem, j), "quotient"))
    family = fit_hilbert_polynomials(samples, n, h)
    mm = mixed_multiplicities(family, d, l)
    payload = mm.to_json()
    payload.update({"d": d, "l": l, "h": h})
    return (payload, ["mixed-multiplicity-transfer"], ["not primary to the irrelevant ideal"])


def _auto_cap(problem, I, requested):
    if requested:
        return requested
    top = max(g.multidegree()[0] for g in I.gens)
    return top + problem.ring.nvars + 2


def _cmd_betti(args, problem):
    I = _power_ideal(problem, args.power)
    cap = _auto_cap(problem, I if args.module == "ideal" else problem.ideal, args.degree_cap)
    for attempt in range(4):
        table = graded_betti_table(I, cap, args.module)
        if table.complete:
            break
        cap += problem.ring.nvars + 2
    payload = dict(table.to_json(), degree_cap=cap, power=args.power)
    if table.complete:
        payload["invariants"] = invariants_from_shifts(table).to_json()
    return (payload, ["koszul-homology-ranks", "shift-reading-of-invariants"], [])


def _cmd_reg(args, problem):
    I = _power_ideal(problem, args.power)
    cap = _auto_cap(problem, I, args.degree_cap)
    table = None
    for attempt in range(4):
        table = graded_betti_table(I, cap, "ideal")
        if table.complete:
            break
        cap += problem.ring.nvars + 2
    inv = invariants_from_shifts(table)
    return (
        dict(inv.to_json(), power=args.power),
        ["shift-reading-of-invariants"],
        [],
    )


def _cmd_rees(args, problem):
    P = rees_presentation(problem.ideal)
    payload = P.report()
    payload["series"] = _series_json(bigraded_hilbert_series_rees(P))
    return (payload, ["blowup-presentation-by-elimination"], [])


def _cmd_diag(args, problem):
    spec = DiagonalSpec(args.c, args.e)
    P = rees_presentation(problem.ideal)
    values = diagonal_hilbert_function(P, spec, args.s_max)
    dim = diagonal_dimension(P, spec)
    return (
        {"c": args.c, "e": args.e, "values": values, "dimension": dim},
        ["diagonal-slice-extraction"],
        [],
    )


def _cmd_gorenstein(args, problem):
    family = args.family
    if family in ("ci", "complete-intersection"):
        if problem is not None:
            degrees = [g.multidegree()[0] for g in problem.ideal.gens]
            n, r = problem.ring.nvars, len(degrees)
        else:
            degrees = [int(x) for x in (args.degrees or "").split(",") if x]
            n, r = args.n, args.r or len(degrees)
        reports = gorenstein_diagonals("complete-intersection", n=n, r=r, degrees=degrees)
    elif family == "maxminors":
        reports = gorenstein_diagonals("maximal-minors", m=args.m, n=args.n)
    elif family == "polynomial-ring":
        degrees = [int(x) for x in (args.degrees or "").split(",") if x]
        reports = gorenstein_diagonals("polynomial-ring", n=args.n, r=len(degrees), degrees=degrees)
    else:
        if args.a is None:
            return ({"missing": ["a"]}, ["gorenstein-diagonal:general"], []), 2
        reports = gorenstein_diagonals(
            "general", n=args.n, a=args.a, d=args.d or 1,
            height=args.height, dim_positive=not args.dim_zero,
        )
    payload = {
        "diagonals": [r.to_json() for r in reports],
        "count": len(reports),
    }
    return (payload, [r.criterion for r in reports] or ["gorenstein-diagonal"], [])


def _cmd_quasi_gorenstein(args, problem):
    reports = quasi_gorenstein_bounds(args.a, args.n, not args.dim_zero)
    return (
        {"candidates": [r.to_json() for r in reports], "count": len(reports)},
        ["quasi-gorenstein-bounds"],
        ["Rees algebra Cohen-Macaulay"],
    )


def _cmd_cm_check(args, problem):
    spec = DiagonalSpec(args.c, args.e)
    fam = dict(problem.family) if problem is not None else {}
    family = args.family
    params = {}
    if family in ("ci", "complete-intersection"):
        family = "complete-intersection"
        if problem is not None:
            degrees = [g.multidegree()[0] for g in problem.ideal.gens]
            params = {"d": max(degrees), "u": sum(degrees), "n": problem.ring.nvars}
        if args.u is not None:
            params["u"] = args.u
        if args.d is not None:
            params["d"] = args.d
        if args.n is not None:
            params["n"] = args.n
    elif family == "equimultiple":
        params = {"d": args.d, "height": args.height or 2}
        if args.a_quotient is not None:
            params["a_quotient"] = args.a_quotient
    elif family == "scm":
        family = "strongly-cm"
        if problem is not None:
            degrees = [g.multidegree()[0] for g in problem.ideal.gens]
            params = {"degrees": degrees, "n": problem.ring.nvars}
        if args.degrees:
            params["degrees"] = [int(x) for x in args.degrees.split(",")]
        if args.n is not None:
            params["n"] = args.n
        params["height"] = args.height
    report = cm_diagonal_test(family, params, spec)
    code = 2 if report.verdict == "needs-input" else 0
    return (report.to_json(), [report.criterion], list(report.assumptions)), code


def _cmd_cm_threshold(args, problem):
    fam = dict(problem.family) if problem is not None else {}
    a2 = args.a2G if args.a2G is not None else fam.get("a2G")
    report = cm_threshold_alpha(args.d, args.n, a2_form_ring=a2, a1_shifted_rees=args.a1)
    code = 2 if report.verdict == "needs-input" else 0
    return (report.to_json(), [report.criterion], list(report.assumptions)), code


def _cmd_gin(args, problem):
    result = generic_initial_ideal(
        problem.ideal, trials=args.trials, seed=args.seed
    )
    return (result.to_json(), ["generic-initial-stability"], ["random seed recorded"])


def _cmd_borel(args, problem):
    report = borel_fix_check(problem.ideal, args.char_p)
    payload = report.to_json()
    if report.is_borel and args.char_p == 0 and report.delta is not None:
        payload["regularity"] = list(borel_regularity(problem.ideal))
    return (payload, ["borel-exchange-audit"], [])


def _cmd_bayer_stillman(args, problem):
    check = bayer_stillman_check(
        problem.ideal, args.first_degree,
        q_window=(0, args.q_max) if args.q_max is not None else None,
        seed=args.seed,
    )
    return (check.to_json(), ["generic-form-regularity-test"], ["generic linear forms drawn at the recorded seed"])


_COMMANDS = {
    "gb": (_cmd_gb, True),
    "hs": (_cmd_hs, True),
    "hp": (_cmd_hp, True),
    "powers": (_cmd_powers, True),
    "fit-hp": (_cmd_fit_hp, True),
    "fit-hs": (_cmd_fit_hs, True),
    "mixed-mult": (_cmd_mixed_mult, True),
    "betti": (_cmd_betti, True),
    "reg": (_cmd_reg, True),
    "rees": (_cmd_rees, True),
    "diag": (_cmd_diag, True),
    "gorenstein": (_cmd_gorenstein, False),
    "quasi-gorenstein": (_cmd_quasi_gorenstein, False),
    "cm-check": (_cmd_cm_check, False),
    "cm-threshold": (_cmd_cm_threshold, False),
    "gin": (_cmd_gin, True),
    "borel": (_cmd_borel, True),
    "bayer-stillman": (_cmd_bayer_stillman, True),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="reeslab",
        description="Exact Hilbert data, Rees presentations, Betti tables and diagonal criteria.",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--no-cache", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, needs_file, **extra):
        p = sub.add_parser(name)
        if needs_file:
            p.add_argument("problem", help="problem file (ring + ideal)")
        else:
            p.add_argument("problem", nargs="?", default=None)
        return p

    p = add("gb", True)
    for name in ("hs", "hp"):
        p = add(name, True)
        p.add_argument("--power", type=int, default=1)
        p.add_argument("--module", choices=("ideal", "quotient"), default="ideal" if name == "hs" else "quotient")
    p = add("powers", True)
    p.add_argument("--max-power", type=int, required=True)
    for name in ("fit-hp", "fit-hs"):
        p = add(name, True)
        p.add_argument("--max-power", type=int, required=True)
        p.add_argument("--predict", type=int, default=None)
    p = add("mixed-mult", True)
    p.add_argument("--max-power", type=int, required=True)
    for name in ("betti", "reg"):
        p = add(name, True)
        p.add_argument("--power", type=int, default=1)
        p.add_argument("--degree-cap", type=int, default=None)
        if name == "betti":
            p.add_argument("--module", choices=("ideal", "quotient"), default="ideal")
    add("rees", True)
    p = add("diag", True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--s-max", type=int, default=6)
    p = add("gorenstein", False)
    p.add_argument("--family", required=True,
                   choices=("ci", "complete-intersection", "maxminors", "polynomial-ring", "general"))
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--degrees", type=str)
    p.add_argument("--dim-zero", action="store_true")
    p = add("quasi-gorenstein", False)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim-zero", action="store_true")
    p = add("cm-check", False)
    p.add_argument("--family", required=True, choices=("ci", "equimultiple", "scm"))
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--a-quotient", type=int)
    p.add_argument("--degrees", type=str)
    p = add("cm-threshold", False)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a2G", type=int)
    p.add_argument("--a1", type=int)
    p = add("gin", True)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p = add("borel", True)
    p.add_argument("--char-p", type=int, default=0)
    p = add("bayer-stillman", True)
    p.add_argument("--first-degree", "--m", dest="first_degree", type=int, required=True)
    p.add_argument("--q-max", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler, needs_file = _COMMANDS[args.command]
    problem = None
    try:
        if args.problem is not None:
            problem = load_problem(args.problem)
        elif needs_file:
            print("error: command %r needs a problem file" % args.command, file=sys.stderr)
            return 1

        def produce():
            out = handler(args, problem)
            if isinstance(out, tuple) and len(out) == 2 and isinstance(out[1], int):
                (payload, citations, assumptions), code = out
            else:
                payload, citations, assumptions = out
                code = 0
            return {
                "payload": _jsonable(payload),
                "citations": list(citations),
                "assumptions": list(assumptions),
                "code": code,
            }

        params = {
            k: v for k, v in sorted(vars(args).items())
            if k not in ("problem", "format", "no_cache") and v is not None
        }
        key = cache_key(
            problem.content_hash if problem else "-",
            args.command,
            {k: str(v) for k, v in params.items()},
            __version__,
        )
        value = cache_lookup_store(key, produce, enabled=not args.no_cache)
        code = value.get("code", 0)
        _emit(args, args.command, value["payload"], value["citations"], value["assumptions"])
        return code
    except (ProblemError, ParseError, RingError, SeriesError, BettiError,
            ReesError, DiagonalError, GinError, FitError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
