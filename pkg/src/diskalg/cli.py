"""Command-line front end.

Subcommands: seminorm, metric, classify, ideal-check, factor,
quotient-norm, verify, gen-corpus.  Series travel as JSON
``{"coeffs": [[re, im], ...]}`` given inline or as a file path.  Exit
codes: 0 success, 2 invalid usage or parameter domain, 3 a quadrature
could not reach its accuracy target (the error object carries the
achieved residual).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._quad import QuadratureError
from .ideals import PointIdeal, ideal_contains, quotient_seminorm_bounds
from .membership import CoefficientRule, classify
from .seminorms import (
    SpaceParams,
    coeff_seminorm,
    envelope_metric,
    integral_seminorm,
    privalov_metric,
)
from .series import TruncatedSeries, series_from_json, series_to_json, synthetic_divide
from .verify import (
    check_functional_axioms,
    check_seminorm_domination,
    corpus_to_json,
    estimate_equivalence_constant,
    generate_corpus,
    hurwitz_closure_suite,
)


class UsageError(ValueError):
    pass


def _load_series(arg: str) -> TruncatedSeries:
    text = arg.strip()
    if not text.startswith("{"):
        text = Path(arg).read_text()
    return series_from_json(text)


def _parse_complex(arg: str) -> complex:
    try:
        re_part, im_part = (float(x) for x in arg.split(","))
    except Exception as exc:
        raise UsageError(f"expected 're,im' but got {arg!r}") from exc
    return complex(re_part, im_part)


def _parse_grid(arg: str) -> list[float]:
    try:
        return [float(x) for x in arg.split(",")]
    except ValueError as exc:
        raise UsageError(f"expected a number or comma list, got {arg!r}") from exc


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _fail(code: int, kind: str, message: str, **extra) -> int:
    obj = {"error": {"type": kind, "message": message, **extra}}
    print(json.dumps(obj, sort_keys=True), file=sys.stderr)
    return code


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


# -- subcommand handlers ------------------------------------------------------


def _cmd_seminorm(args):
    f = _load_series(args.series)
    sp = SpaceParams(args.p)
    if args.family == "coeff":
        value = coeff_seminorm(f, sp, args.c)
        return {"value": value, "residual": 0.0, "nodes": 0}
    tol = args.tol if args.tol is not None else 1e-9
    value, residual, nodes = integral_seminorm(
        f, sp, args.c, tol=tol, full_output=True)
    return {"value": value, "residual": residual, "nodes": nodes}


def _cmd_metric(args):
    f = _load_series(args.series)
    g = _load_series(args.series2)
    sp = SpaceParams(args.p)
    if args.kind == "privalov":
        value, residual, nodes = privalov_metric(f, g, sp, full_output=True)
        return {"value": value, "residual": residual, "nodes": nodes}
    value, tail, terms = envelope_metric(f, g, sp, full_output=True)
    return {"value": value, "tail_bound": tail, "terms": terms}


def _rule_from_args(args) -> CoefficientRule:
    params = {}
    for item in args.params or []:
        if "=" not in item:
            raise UsageError(f"rule parameters look like name=value, got {item!r}")
        key, val = item.split("=", 1)
        params[key] = float(val)
    beta_default = 1.0 / (args.p + 1.0)
    kind = args.rule
    if kind == "geometric":
        return CoefficientRule.geometric(params.get("rho", 1.0))
    if kind == "stretched-exp":
        return CoefficientRule.stretched_exp(
            params.get("eps", 0.1), params.get("beta", beta_default))
    if kind == "stretched-exp-damped":
        return CoefficientRule.stretched_exp_damped(
            params.get("beta", beta_default))
    if kind == "power-table":
        if not args.series:
            raise UsageError("power-table rules take the table via --series")
        return CoefficientRule.power_table(_load_series(args.series).coeffs)
    raise UsageError(f"unknown rule kind {kind!r}")


def _cmd_classify(args):
    sp = SpaceParams(args.p)
    rule = _rule_from_args(args)
    verdict = classify(rule, sp, n_max=args.nmax, threshold=args.threshold)
    return verdict.to_dict()


def _cmd_ideal_check(args):
    f = _load_series(args.series)
    ideal = PointIdeal(_parse_complex(args.lam))
    res = ideal_contains(ideal, f, tol=args.tol if args.tol is not None else 1e-12)
    return {"contains": res.contains, "value": _complex_pair(res.value),
            "tol": res.tol}


def _cmd_factor(args):
    f = _load_series(args.series)
    lam = _parse_complex(args.lam)
    if abs(lam) >= 1.0:
        raise UsageError("|lambda| must be < 1")
    quotient = synthetic_divide(f, lam)
    return json.loads(series_to_json(quotient))


def _cmd_quotient_norm(args):
    f = _load_series(args.series)
    ideal = PointIdeal(_parse_complex(args.lam))
    lower, upper = quotient_seminorm_bounds(f, ideal, args.r, k_budget=args.kbudget)
    return {"lower": lower, "upper": upper, "k_budget": args.kbudget,
            "representative": _complex_pair(f.eval(ideal.lam))}


def _cmd_verify(args):
    corpus = generate_corpus(args.seed, args.corpus_size)
    ps = _parse_grid(args.p)
    for p in ps:
        SpaceParams(p)  # validate the domain up front
    tol = args.tol if args.tol is not None else 1e-9
    if args.theorem == "t3-first":
        report = check_seminorm_domination(
            corpus, ps, _parse_grid(args.c), tol=tol,
            keep_margins=bool(args.csv))
    elif args.theorem == "t3-constant":
        report = estimate_equivalence_constant(
            corpus, ps, _parse_grid(args.c), tol=tol)
    elif args.theorem == "functional":
        if not args.lam:
            raise UsageError("the functional check needs --lambda")
        report = check_functional_axioms(
            corpus, _parse_complex(args.lam), sp=ps[0], pair_seed=args.seed)
    elif args.theorem == "hurwitz":
        if not args.lam:
            raise UsageError("the hurwitz check needs --lambda")
        report = hurwitz_closure_suite(
            _parse_complex(args.lam), args.r, seed=args.seed)
    else:  # argparse choices should prevent this
        raise UsageError(f"unknown check {args.theorem!r}")
    if args.csv:
        Path(args.csv).write_text(report.margins_csv())
    return report.to_dict()


def _cmd_gen_corpus(args):
    corpus = generate_corpus(args.seed, args.corpus_size,
                             degree_range=(args.degree_min, args.degree_max))
    return json.loads(corpus_to_json(corpus))


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diskalg",
        description="Seminorms, metrics, membership and ideal structure "
                    "for growth-restricted holomorphic functions on the disk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, series=True, needs_p=True):
        p.add_argument("--out", help="write the JSON result here instead of stdout")
        p.add_argument("--tol", type=float, default=None,
                       help="accuracy target for quadrature-backed values")
        if series:
            p.add_argument("--series", required=True,
                           help="series JSON (inline or a file path)")
        if needs_p:
            p.add_argument("--p", type=float, required=True,
                           help="growth exponent, must be > 1")

    p_semi = sub.add_parser("seminorm", help="evaluate one seminorm")
    common(p_semi)
    p_semi.add_argument("--c", type=float, required=True)
    p_semi.add_argument("--family", choices=("coeff", "integral"), required=True)
    p_semi.set_defaults(handler=_cmd_seminorm)

    p_met = sub.add_parser("metric", help="distance between two series")
    common(p_met)
    p_met.add_argument("--series2", required=True)
    p_met.add_argument("--kind", choices=("privalov", "envelope"),
                       default="privalov")
    p_met.set_defaults(handler=_cmd_metric)

    p_cls = sub.add_parser("classify", help="membership verdict for a coefficient rule")
    common(p_cls, series=False)
    p_cls.add_argument("--series", help="coefficient table for power-table rules")
    p_cls.add_argument("--rule", required=True,
                       choices=("geometric", "stretched-exp",
                                "stretched-exp-damped", "power-table"))
    p_cls.add_argument("--params", nargs="*", metavar="NAME=VALUE")
    p_cls.add_argument("--nmax", type=int, default=2**14)
    p_cls.add_argument("--threshold", type=float, default=0.01)
    p_cls.set_defaults(handler=_cmd_classify)

    p_chk = sub.add_parser("ideal-check", help="does the series vanish at lambda")
    common(p_chk, needs_p=False)
    p_chk.add_argument("--lambda", dest="lam", required=True, metavar="RE,IM")
    p_chk.set_defaults(handler=_cmd_ideal_check)

    p_fac = sub.add_parser("factor", help="deflation factor A with f - f(lambda) = A (z - lambda)")
    common(p_fac, needs_p=False)
    p_fac.add_argument("--lambda", dest="lam", required=True, metavar="RE,IM")
    p_fac.set_defaults(handler=_cmd_factor)

    p_qn = sub.add_parser("quotient-norm", help="bracket the quotient seminorm at radius r")
    common(p_qn, needs_p=False)
    p_qn.add_argument("--lambda", dest="lam", required=True, metavar="RE,IM")
    p_qn.add_argument("--r", type=float, required=True)
    p_qn.add_argument("--kbudget", type=int, default=64)
    p_qn.set_defaults(handler=_cmd_quotient_norm)

    p_ver = sub.add_parser("verify", help="run a verification harness over a seeded corpus")
    p_ver.add_argument("--theorem", required=True,
                       choices=("t3-first", "t3-constant", "functional", "hurwitz"))
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--corpus-size", type=int, default=1000)
    p_ver.add_argument("--p", default="2")
    p_ver.add_argument("--c", default="1")
    p_ver.add_argument("--lambda", dest="lam", metavar="RE,IM")
    p_ver.add_argument("--r", type=float, default=0.75)
    p_ver.add_argument("--tol", type=float, default=None)
    p_ver.add_argument("--csv", help="also write per-entry margins as CSV")
    p_ver.add_argument("--out")
    p_ver.set_defaults(handler=_cmd_verify)

    p_gen = sub.add_parser("gen-corpus", help="emit a seeded corpus as JSON")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--corpus-size", type=int, default=100)
    p_gen.add_argument("--degree-min", type=int, default=4)
    p_gen.add_argument("--degree-max", type=int, default=256)
    p_gen.add_argument("--out")
    p_gen.set_defaults(handler=_cmd_gen_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.handler(args)
    except QuadratureError as exc:
        return _fail(3, "accuracy", str(exc),
                     residual=exc.residual, nodes=exc.nodes)
    except (UsageError, ValueError, OverflowError) as exc:
        return _fail(2, "usage", str(exc))
    except FileNotFoundError as exc:
        return _fail(2, "usage", f"cannot read input: {exc}")
    _emit(payload, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
