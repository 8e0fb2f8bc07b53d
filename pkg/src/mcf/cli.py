"""Command-line entry point.

Output is deterministic for a fixed argument vector: data to stdout,
diagnostics to stderr, and every library error mapped to its own exit code
(listed in --help).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .cf import CFExpansion, cf_value, convergents, expand, format_cf, parse_cf
from .checks import run_suite
from .errors import LiteralParseError, McfError
from .legendre import build_chain
from .mu import chain_covering, chain_segments, mu_eval
from .oscillation import find_crossings
from .spectra import sample_M, spectra_report
from .surd import Value, cross_compare, decimal_str, parse_value, value_str

_EXIT_CODES = {
    "InvalidSurdError": 10,
    "CrossFieldError": 11,
    "HorizonExceededError": 12,
    "FiniteExpansionError": 13,
    "FiniteChainError": 14,
    "InsufficientHorizonError": 15,
    "PoleError": 16,
    "NotDefinedError": 17,
    "UndecidedError": 18,
    "NotApplicableError": 19,
    "InvalidSequenceError": 20,
    "InternalConsistencyError": 21,
    "EqualInputsError": 22,
    "LiteralParseError": 23,
}

_EPILOG = (
    "number literals: rat:NUM[/DEN], surd:(P+Q*sqrtD)/R, cf:[a0;w1,w2,(p1,p2)]\n"
    "exit codes: 0 ok, 2 usage; "
    + ", ".join(f"{code} {name}" for name, code in _EXIT_CODES.items())
)

DIGITS = 30


@dataclasses.dataclass
class RunConfig:
    precision_bits: int = 256
    horizon: int = 200
    output_format: str = "csv"
    refinement_cap_bits: int = 1024

    def __post_init__(self) -> None:
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        if self.horizon < 10:
            raise ValueError("horizon must be >= 10")
        if self.refinement_cap_bits < self.precision_bits:
            raise ValueError("refinement_cap_bits must be >= precision_bits")


def _parse_alpha(text: str) -> Value | CFExpansion:
    if text.startswith("cf:"):
        return parse_cf(text)
    return parse_value(text)


def _alpha_value(parsed: Value | CFExpansion) -> Value:
    return cf_value(parsed) if isinstance(parsed, CFExpansion) else parsed


def _parse_t(text: str) -> Fraction:
    value = parse_value(text) if ":" in text else Fraction(text)
    if not isinstance(value, Fraction):
        raise LiteralParseError("t bounds must be rational")
    return value


def _decimal(value: Value) -> str:
    return decimal_str(value, DIGITS)


def _writer():
    return csv.writer(sys.stdout, lineterminator="\n")


def _cmd_expand(args, config: RunConfig) -> int:
    parsed = _parse_alpha(args.alpha)
    cf = parsed if isinstance(parsed, CFExpansion) else expand(parsed, config.horizon)
    print(format_cf(cf))
    return 0


def _cmd_convergents(args, config: RunConfig) -> int:
    parsed = _parse_alpha(args.alpha)
    alpha = _alpha_value(parsed)
    cf = parsed if isinstance(parsed, CFExpansion) else expand(alpha, config.horizon)
    records = convergents(cf, alpha, args.n)
    w = _writer()
    w.writerow(["nu", "p", "q", "xi_exact", "xi_decimal", "alpha_star"])
    for rec in records:
        w.writerow(
            [rec.nu, rec.p, rec.q, value_str(rec.xi), _decimal(rec.xi), rec.alpha_star]
        )
    return 0


def _chain_pipeline(parsed, horizon: int):
    alpha = _alpha_value(parsed)
    cf = parsed if isinstance(parsed, CFExpansion) else expand(alpha, horizon)
    records = convergents(cf, alpha, horizon)
    return cf, records, build_chain(cf, records)


def _cmd_legendre(args, config: RunConfig) -> int:
    cf, records, chain = _chain_pipeline(_parse_alpha(args.alpha), config.horizon)
    w = _writer()
    w.writerow(["n", "Q", "err_num_approx", "source_nu", "gap_kind"])
    for node in chain.nodes:
        kind = chain.gaps[node.n].kind if node.n < len(chain.gaps) else ""
        w.writerow([node.n, node.Q, _decimal(node.err), node.source_nu, kind])
    return 0


def _cmd_mu(args, config: RunConfig) -> int:
    cf, records, chain = _chain_pipeline(_parse_alpha(args.alpha), config.horizon)
    t_min, t_max = _parse_t(args.t_min), _parse_t(args.t_max)
    lo = max(t_min, Fraction(chain.denominators[0]))
    hi = min(t_max, Fraction(chain.denominators[-1]))
    rows = []
    for i in range(args.samples + 1):
        t = lo + (hi - lo) * Fraction(i, args.samples)
        v = mu_eval(chain, t)
        rows.append(("sample", t, v, t * v))
    for seg, _ in chain_segments(cf, records, chain):
        if lo <= seg.left[0] and seg.right[0] <= hi:
            rows.append(("peak", Fraction(seg.left[0]), None, seg.peak))
    if args.format == "json":
        payload = {
            "schema": f"mcf.mu/{__version__}",
            "precision_digits": DIGITS,
            "rows": [
                {
                    "kind": kind,
                    "t": str(t),
                    "mu": None if v is None else _decimal(v),
                    "t_mu": _decimal(p),
                }
                for kind, t, v, p in rows
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        w = _writer()
        w.writerow(["kind", "t", "mu_decimal", "t_mu_decimal"])
        for kind, t, v, p in rows:
            w.writerow([kind, t, "" if v is None else _decimal(v), _decimal(p)])
    return 0


def _cmd_spectra(args, config: RunConfig) -> int:
    report = spectra_report(_parse_alpha(args.alpha), config.horizon)
    rows = [
        ("lambda", report.lambda_),
        ("dirichlet", report.dirichlet),
        ("m", report.m),
    ]
    if args.format == "json":
        payload = {
            "schema": f"mcf.spectra/{__version__}",
            "exact": report.exact,
            "horizon_used": report.horizon_used,
            "precision_digits": DIGITS,
            "values": {
                name: {"exact": value_str(v), "decimal": _decimal(v)}
                for name, v in rows
            },
        }
        print(json.dumps(payload, indent=2))
    else:
        w = _writer()
        w.writerow(["quantity", "exact", f"decimal_{DIGITS}", "exact_flag"])
        for name, v in rows:
            w.writerow([name, value_str(v), _decimal(v), report.exact])
    return 0


def _cmd_sample(args, config: RunConfig) -> int:
    words: list[tuple[int, ...]] = []
    if args.words:
        for text in args.words:
            cf = parse_cf(text)
            if cf.finite:
                raise LiteralParseError(f"{text!r} has no period")
            words.append(cf.period)
    else:
        for length in range(1, args.period_max + 1):
            stack = [()]
            for _ in range(length):
                stack = [w + (a,) for w in stack for a in range(1, args.quotient_max + 1)]
            words.extend(stack)
    results = sample_M(words, jobs=args.jobs)
    w = _writer()
    w.writerow(["word", "m_exact", "m_decimal"])
    for word, m in results:
        w.writerow(["(" + ",".join(map(str, word)) + ")", value_str(m), _decimal(m)])
    lo = hi = results[0][1]
    for _, m in results[1:]:
        if cross_compare(m, lo, config.refinement_cap_bits) < 0:
            lo = m
        if cross_compare(m, hi, config.refinement_cap_bits) > 0:
            hi = m
    print(
        f"aggregate over {len(results)} words: min={_decimal(lo)} max={_decimal(hi)}",
        file=sys.stderr,
    )
    return 0


def _cmd_compare(args, config: RunConfig) -> int:
    alpha = _alpha_value(_parse_alpha(args.alpha))
    beta = _alpha_value(_parse_alpha(args.beta))
    report = find_crossings(
        alpha,
        beta,
        _parse_t(args.t_min),
        _parse_t(args.t_max),
        cap_bits=config.refinement_cap_bits,
        horizon=config.horizon,
    )
    payload = {
        "schema": f"mcf.compare/{__version__}",
        "t_range": [str(t) for t in report.t_range],
        "crossings": [[str(a), str(b)] for a, b in report.crossings],
        "undecided": [[str(a), str(b)] for a, b in report.undecided],
        "dominance_t0": None if report.dominance_t0 is None else str(report.dominance_t0),
        "precondition_naturel": report.precondition_naturel,
        "breakpoint_count": len(report.breakpoint_signs),
    }
    print(json.dumps(payload, indent=2))
    if args.breakpoints:
        _, _, chain_a = chain_covering(alpha, report.t_range[1], config.horizon)
        _, _, chain_b = chain_covering(beta, report.t_range[1], config.horizon)
        w = _writer()
        w.writerow(["t", "mu_alpha", "mu_beta", "sign"])
        for t, s in report.breakpoint_signs:
            w.writerow(
                [
                    t,
                    _decimal(mu_eval(chain_a, t)),
                    _decimal(mu_eval(chain_b, t)),
                    "" if s is None else s,
                ]
            )
    return 0


def _cmd_verify(args, config: RunConfig) -> int:
    alphas = [_alpha_value(_parse_alpha(t)) for t in args.alpha] or [
        _alpha_value(parse_value("surd:(1+1*sqrt5)/2")),
        _alpha_value(parse_value("surd:(0+1*sqrt2)/1")),
        _alpha_value(parse_value("surd:(1+1*sqrt3)/2")),
    ]
    results = run_suite(alphas, config.horizon)
    width = max(len(r.name) for r in results)
    all_ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        all_ok &= r.passed
        print(f"{r.name:<{width}}  {status}  cases={r.cases}  [{r.subject}]")
    print(f"verify: {'all checks passed' if all_ok else 'FAILURES PRESENT'}")
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=None)
    common.add_argument("--horizon", type=int, default=200)
    common.add_argument("--refinement-cap-bits", type=int, default=1024)

    parser = argparse.ArgumentParser(
        prog="mcf",
        description="Exact continued-fraction diagonal functions and spectra.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="continued-fraction word of a number")
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("convergents", parents=[common], help="convergent table")
    p.add_argument("--alpha", required=True)
    p.add_argument("-n", type=int, default=20)
    p.set_defaults(func=_cmd_convergents)

    p = sub.add_parser("legendre", parents=[common], help="filtered denominator chain as CSV")
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=_cmd_legendre)

    p = sub.add_parser("mu", parents=[common], help="sample the diagonal function")
    p.add_argument("--alpha", required=True)
    p.add_argument("--t-min", required=True)
    p.add_argument("--t-max", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_mu)

    p = sub.add_parser("spectra", parents=[common], help="lambda, d and m for one number")
    p.add_argument("--alpha", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_spectra)

    p = sub.add_parser("sample", parents=[common], help="m over a family of periodic words")
    p.add_argument("--words", nargs="*", help="explicit cf: literals")
    p.add_argument("--period-max", type=int, default=2)
    p.add_argument("--quotient-max", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("compare", parents=[common], help="sign changes of mu_alpha - mu_beta")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--t-min", required=True)
    p.add_argument("--t-max", required=True)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--breakpoints", action="store_true")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("verify", parents=[common], help="run the identity/inequality suite")
    p.add_argument("--alpha", action="append", default=[])
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    precision = args.precision_bits
    if precision is None:
        precision = int(os.environ.get("MCF_PRECISION_BITS", "256"))
    try:
        config = RunConfig(
            precision_bits=precision,
            horizon=args.horizon,
            refinement_cap_bits=max(args.refinement_cap_bits, precision),
        )
        return args.func(args, config)
    except McfError as exc:
        name = type(exc).__name__
        print(f"error[{name}]: {exc}", file=sys.stderr)
        return _EXIT_CODES.get(name, 1)


if __name__ == "__main__":
    sys.exit(main())
