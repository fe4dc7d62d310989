"""Command-line entry point: construct, eval, measure, moments, verify,
sweep, and random subcommands with JSON/CSV/text output.

Exit codes: 0 success, 1 failed verification, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import verify
from .errors import MahlerError
from .evaluate import default_grid_size, evaluate_at_roots, samples_to_rows
from .measures import (Arc, QuadratureConfig, RootConfig, mahler_jensen,
                       mahler_quadrature, moment_series, mq_norm, roots_aberth)
from .polynomials import (NormalizedPolynomial, SignPolynomial, fekete,
                          fekete_shifted, normalize, rudin_shapiro)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_USAGE = 2


def _add_family_flags(p: argparse.ArgumentParser, required: bool = True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--rs", type=int, metavar="N",
                   help="Rudin-Shapiro pair at recursion depth N")
    g.add_argument("--fekete", type=int, metavar="P",
                   help="Fekete polynomial f_p for odd prime P")
    g.add_argument("--fekete-shifted", type=int, metavar="P",
                   help="shifted Fekete polynomial g_p = f_p/z")
    g.add_argument("--file", type=str, metavar="PATH",
                   help="sign polynomial in one-line +/-/0 text format")


def _add_output_flags(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", type=str, default=None, metavar="PATH")


def _select_polynomial(args) -> SignPolynomial:
    if args.rs is not None:
        return rudin_shapiro(args.rs).p
    if args.fekete is not None:
        return fekete(args.fekete)
    if getattr(args, "fekete_shifted", None) is not None:
        return fekete_shifted(args.fekete_shifted)
    with open(args.file, encoding="ascii") as fh:
        return SignPolynomial.from_text(fh.readline())


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _cmd_construct(args) -> int:
    if args.rs is not None:
        pair = rudin_shapiro(args.rs)
        if args.format == "text":
            _emit(args, pair.p.to_text() + "\n" + pair.q.to_text())
        else:
            _emit(args, _dump_json({
                "family": "rudin_shapiro", "n": pair.n, "N": pair.N,
                "p": pair.p.to_text(), "q": pair.q.to_text()}))
        return EXIT_OK
    f = _select_polynomial(args)
    if args.format == "text":
        _emit(args, f.to_text())
    else:
        _emit(args, _dump_json({
            "family": f.family.value, "degree": f.degree, "coeffs": f.to_text()}))
    return EXIT_OK


def _cmd_eval(args) -> int:
    f = _select_polynomial(args)
    m = args.m or default_grid_size(f.degree, args.oversample)
    samples = evaluate_at_roots(f, m)
    if args.format == "csv":
        lines = ["index,theta,re,im,abs"]
        lines += [f"{j},{t!r},{re!r},{im!r},{ab!r}"
                  for j, t, re, im, ab in samples_to_rows(samples)]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, _dump_json({
            "m": samples.m, "degree": f.degree,
            "values": [[v.real, v.imag] for v in samples.values.tolist()]}))
    return EXIT_OK


def _parse_arc(args) -> Arc | None:
    if args.arc is None:
        return None
    return Arc(args.arc[0], args.arc[1])


def _cmd_measure(args) -> int:
    f = _select_polynomial(args)
    arc = _parse_arc(args)
    cfg = QuadratureConfig(
        oversample=args.oversample,
        refine_threshold=args.refine_threshold,
        panel_order=args.panel_order,
        tol=args.quad_tol,
        max_depth=args.max_depth,
    )
    if args.q == 0:
        if args.method == "jensen":
            res = mahler_jensen(roots_aberth(f, RootConfig(
                eps=args.root_eps, max_iters=args.root_max_iters)))
        else:
            res = mahler_quadrature(f, arc=arc, cfg=cfg)
    else:
        res = mq_norm(f, args.q, arc=arc, oversample=min(args.oversample, 64))
    _emit(args, _dump_json(res.to_json()))
    return EXIT_OK


def _cmd_moments(args) -> int:
    f = _select_polynomial(args)
    if args.rs is not None:
        nf, _ = normalize(rudin_shapiro(args.rs))
    else:
        nf = NormalizedPolynomial(f, args.scale)
    series = moment_series(nf, args.k_max, m=args.m)
    _emit(args, _dump_json({
        "k_max": series.k_max, "m": series.m,
        "partial_log_sum": series.partial_log_sum(),
        "values": series.values.tolist()}))
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.all:
        reports = verify.run_all(n_max=args.n_max, seed=args.seed)
        payload = {"passed": all(r.passed for r in reports),
                   "reports": [r.to_json() for r in reports]}
        _emit(args, _dump_json(payload))
        return EXIT_OK if payload["passed"] else EXIT_FAILED_CHECK
    report = verify.run_statement(
        args.statement, n=args.n, m=args.m, p=args.p, q=args.q,
        k_max=args.k_max, degree=args.degree, trials=args.trials,
        seed=args.seed)
    _emit(args, _dump_json(report.to_json()))
    return EXIT_OK if report.passed else EXIT_FAILED_CHECK


def _cmd_sweep(args) -> int:
    rows = verify.thm23_subarc_sweep(args.rs, args.count, seed=args.seed)
    if args.format == "csv":
        lines = [verify.SWEEP_CSV_HEADER] + [r.to_csv_row() for r in rows]
        _emit(args, "\n".join(lines))
    else:
        N = 2 ** args.rs
        delta = 4.0 * math.pi / N
        payload = {
            "rows": [{"n": r.n, "alpha": r.arc.alpha, "beta": r.arc.beta,
                      "m0": r.measure_value, "ratio": r.ratio_to_sqrtN,
                      "length_class": r.arc_length_class} for r in rows],
            "lemma36_bound_at_critical": verify.lemma36_bound(
                N, delta, 0.0, verify.critical_arc_length(N)),
            "min_ratio": min(r.ratio_to_sqrtN for r in rows),
        }
        _emit(args, _dump_json(payload))
    return EXIT_OK


def _cmd_random(args) -> int:
    report = verify.borwein_lockhart_mc(args.degree, args.q, args.trials,
                                        seed=args.seed)
    _emit(args, _dump_json(report.to_json()))
    return EXIT_OK if report.passed else EXIT_FAILED_CHECK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mahler",
        description="Rudin-Shapiro/Fekete construction, circle evaluation, "
                    "Mahler measures, and numerical theorem checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a polynomial exactly")
    _add_family_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("eval", help="sample a polynomial on the unit circle")
    _add_family_flags(p)
    _add_output_flags(p)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--oversample", type=int, default=16)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("measure", help="M_q norm or Mahler measure (q = 0)")
    _add_family_flags(p)
    _add_output_flags(p)
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--arc", type=float, nargs=2, metavar=("ALPHA", "BETA"))
    p.add_argument("--method", choices=("quadrature", "jensen"),
                   default="quadrature")
    p.add_argument("--oversample", type=int, default=64)
    p.add_argument("--refine-threshold", type=float, default=1e-3)
    p.add_argument("--panel-order", type=int, default=16)
    p.add_argument("--quad-tol", type=float, default=1e-10)
    p.add_argument("--max-depth", type=int, default=30)
    p.add_argument("--root-eps", type=float, default=1e-12)
    p.add_argument("--root-max-iters", type=int, default=500)
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("moments", help="moment series I_k of a normalized polynomial")
    _add_family_flags(p)
    _add_output_flags(p)
    p.add_argument("--k-max", type=int, default=100)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--scale", type=float, default=1.0,
                   help="scale for non-Rudin-Shapiro input")
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("verify", help="run a theorem/lemma check")
    _add_output_flags(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--statement", choices=sorted(
        {"flatness", "conjugate_pairing", "lemma31", "lemma32", "lemma34",
         "lemma35", "thm21_ratio", "thm22_sum", "saffari", "littlewood_l4",
         "parseval", "borwein_lockhart", "fekete_gauss"}))
    g.add_argument("--all", action="store_true")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--p", type=int, default=101)
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--k-max", type=int, default=400)
    p.add_argument("--degree", type=int, default=1000)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="random subarc Mahler-measure sweep")
    _add_output_flags(p)
    p.add_argument("--rs", type=int, required=True, metavar="N")
    p.add_argument("--count", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("random", help="Monte Carlo moment statistic of random "
                                      "sign polynomials")
    _add_output_flags(p)
    p.add_argument("--degree", type=int, default=1000)
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_random)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except MahlerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
