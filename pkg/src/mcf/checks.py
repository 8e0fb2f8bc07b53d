"""Machine-checkable identity and inequality suite.

Each check runs over every applicable index of a convergent table (or over a
grid, for the two-variable form) and reports case counts.  All comparisons
are exact; a check fails only if an identity genuinely does not hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cf import check_identities, convergents, expand, tail
from .legendre import build_chain, is_legendre
from .mu import F, G, chain_segments, omega_contains, psi_eval
from .surd import Value, value_str


@dataclass(frozen=True)
class CheckResult:
    name: str
    subject: str
    cases: int
    passed: bool
    note: str = ""


def _label(alpha: Value) -> str:
    return value_str(alpha)


def check_convergent_identities(alpha: Value, horizon: int) -> CheckResult:
    cf = expand(alpha, max_terms=horizon)
    records = convergents(cf, alpha, horizon)
    cases = failures = 0
    for nu in range(1, horizon - 1):
        report = check_identities(cf, records, nu)
        cases += 1
        if not report.all_pass:
            failures += 1
    return CheckResult(
        name="convergent-identities",
        subject=_label(alpha),
        cases=cases,
        passed=failures == 0,
    )


def check_legendre_equivalence(alpha: Value, horizon: int) -> CheckResult:
    """Filter criterion vs the direct |alpha - p/q| < 1/(2q^2) inequality."""
    cf = expand(alpha, max_terms=horizon)
    records = convergents(cf, alpha, horizon)
    cases = failures = 0
    for rec in records:
        direct = abs(alpha - Fraction(rec.p, rec.q)) < Fraction(1, 2 * rec.q * rec.q)
        cases += 1
        if direct != is_legendre(rec, tail(cf, rec.nu + 1)):
            failures += 1
    return CheckResult(
        name="legendre-direct-equivalence",
        subject=_label(alpha),
        cases=cases,
        passed=failures == 0,
    )


def check_chain_structure(alpha: Value, horizon: int) -> CheckResult:
    """Chain claims: monotone interleave, no double skips, unit-quotient skips.

    build_chain aborts on any violation, so reaching the end is the pass;
    the monotonicity of denominators and errors is re-walked explicitly.
    """
    cf = expand(alpha, max_terms=horizon)
    records = convergents(cf, alpha, horizon)
    chain = build_chain(cf, records)
    ok = all(
        a.Q < b.Q and b.err < a.err for a, b in zip(chain.nodes, chain.nodes[1:])
    )
    return CheckResult(
        name="chain-structure",
        subject=_label(alpha),
        cases=len(chain.nodes),
        passed=ok,
    )


def check_segment_peaks(alpha: Value, horizon: int) -> CheckResult:
    """Closed-form peaks: dual-route equality and straddle inequalities.

    chain_segments raises on any route mismatch or straddle failure, so the
    count of produced witnesses is the evidence.
    """
    cf = expand(alpha, max_terms=horizon)
    records = convergents(cf, alpha, horizon)
    chain = build_chain(cf, records)
    segments = chain_segments(cf, records, chain)
    ok = all(wit.side_checks == (True, True) for _, wit in segments)
    return CheckResult(
        name="segment-peaks",
        subject=_label(alpha),
        cases=len(segments),
        passed=ok,
    )


def check_product_conservation(alpha: Value, horizon: int) -> CheckResult:
    """(t, mu) -> (t/d, mu*d) keeps t*mu for exact rational d samples."""
    cf = expand(alpha, max_terms=horizon)
    records = convergents(cf, alpha, horizon)
    chain = build_chain(cf, records)
    cases = failures = 0
    for node in chain.nodes[:20]:
        t, mu = Fraction(node.Q), node.err
        for d in (Fraction(2), Fraction(3, 2), Fraction(7, 5)):
            cases += 1
            if (t / d) * (mu * d) != t * mu:
                failures += 1
    return CheckResult(
        name="hyperbolic-product-conservation",
        subject=_label(alpha),
        cases=cases,
        passed=failures == 0,
    )


def check_psi_concordance(alpha: Value, t_max: int = 200) -> CheckResult:
    cases = failures = 0
    for t in range(1, t_max + 1, 7):
        cases += 1
        if psi_eval(alpha, t, method="fast") != psi_eval(alpha, t, method="scan"):
            failures += 1
    return CheckResult(
        name="psi-fast-vs-scan",
        subject=_label(alpha),
        cases=cases,
        passed=failures == 0,
    )


def check_form_extremes(grid: int = 60) -> CheckResult:
    """F over the admissible region: minimum 1/4 at the origin, maximum 1/2
    attained exactly on the two boundary curves."""
    quarter, half = Fraction(1, 4), Fraction(1, 2)
    cases = failures = 0
    for i in range(grid):
        for j in range(grid):
            x, y = Fraction(i, grid), Fraction(j, grid)
            if not omega_contains(x, y):
                continue
            cases += 1
            v = F(x, y)
            if v < quarter or half < v:
                failures += 1
                continue
            on_boundary = (y != 0 and x + 1 / y == 2) or (x != 0 and 1 / x + y == 2)
            if (v == half) != on_boundary:
                failures += 1
            if (v == quarter) != (x == 0 and y == 0):
                failures += 1
    return CheckResult(
        name="form-extremes-grid",
        subject=f"{grid}x{grid}",
        cases=cases,
        passed=failures == 0,
    )


def run_suite(alphas: list[Value], horizon: int) -> list[CheckResult]:
    results = [check_form_extremes()]
    for alpha in alphas:
        results.append(check_convergent_identities(alpha, horizon))
        results.append(check_legendre_equivalence(alpha, horizon))
        results.append(check_chain_structure(alpha, horizon))
        results.append(check_segment_peaks(alpha, horizon))
        results.append(check_product_conservation(alpha, horizon))
        results.append(check_psi_concordance(alpha))
    return results
