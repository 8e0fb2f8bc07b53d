"""The piecewise-linear diagonal function mu, the step function psi, the
two-variable forms G and F, and exact closed-form peaks of t*mu per chain
segment.

Peak values are always computed along two independent routes and must agree
exactly: the quadratic closed form through the squared hyperbolic-rotation
parameter, and G or F evaluated at the reversed-tail/tail arguments of the
segment's gap.  A mismatch aborts.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .cf import CFExpansion, ConvergentRecord, cf_value, convergents, expand, tail
from .errors import InsufficientHorizonError, InternalConsistencyError, PoleError
from .legendre import SKIP, GapClass, LegendreChain
from .surd import Value, as_value


def G(x: Value | int, y: Value | int) -> Value:
    """(x + y + 1)/4, exactly."""
    return (as_value(x) + y + 1) / 4


def F(x: Value | int, y: Value | int) -> Value:
    """(1 - xy)^2 / (4 (1 + xy) (1 - x) (1 - y)), exactly."""
    x, y = as_value(x), as_value(y)
    xy = x * y
    if x == 1 or y == 1 or xy == -1:
        raise PoleError("F undefined at x = 1, y = 1 or xy = -1")
    num = (1 - xy) * (1 - xy)
    return num / (4 * (1 + xy) * (1 - x) * (1 - y))


def omega_contains(x: Value | int, y: Value | int) -> bool:
    """Membership in {0 <= x, y < 1, x + 1/y >= 2, 1/x + y >= 2}.

    At x = 0 or y = 0 the reciprocal term counts as +infinity, so the
    corresponding inequality holds vacuously.
    """
    x, y = as_value(x), as_value(y)
    if x < 0 or y < 0 or not x < 1 or not y < 1:
        return False
    if y != 0 and x + 1 / y < 2:
        return False
    if x != 0 and 1 / x + y < 2:
        return False
    return True


def psi_eval(
    alpha: Value,
    t: Value | int,
    method: str = "fast",
    records: list[ConvergentRecord] | None = None,
) -> Value:
    """min over integers 1 <= x <= t of the distance from x*alpha to Z.

    The fast path reads the convergent table (best approximations); the
    scan path tries every x and exists as an independent oracle.
    """
    alpha, t = as_value(alpha), as_value(t)
    if t < 1:
        raise ValueError("t must be >= 1")
    if method == "scan":
        best: Value | None = None
        for x in range(1, math.floor(t) + 1):
            v = x * alpha
            dist = abs(v - (math.floor(v + Fraction(1, 2))))
            if best is None or dist < best:
                best = dist
        assert best is not None
        return best
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    if records is None:
        cf = expand(alpha)
        n = 8
        while True:
            last = cf.last_index
            if last is not None:
                n = last
            records = convergents(cf, alpha, n)
            if records[-1].q > t or last is not None:
                break
            n *= 2
    best_nu = 0
    for rec in records:
        if rec.q <= t:
            best_nu = rec.nu
        else:
            break
    if records[best_nu].q > t:
        raise InsufficientHorizonError("table does not reach down to t")
    return records[best_nu].xi


def mu_eval(chain: LegendreChain, t: Value | int) -> Value:
    """Linear interpolation of the chain errors at t (exact for rational t)."""
    t = as_value(t)
    qs = chain.denominators
    if t < qs[0] or qs[-1] < t:
        raise InsufficientHorizonError(
            f"t outside built chain [{qs[0]}, {qs[-1]}]"
        )
    i = bisect_right(qs, t) - 1
    if i == len(qs) - 1:
        return chain.nodes[-1].err
    left, right = chain.nodes[i], chain.nodes[i + 1]
    span = right.Q - left.Q
    return ((right.Q - t) * left.err + (t - left.Q) * right.err) / span


@dataclass(frozen=True)
class PeakWitness:
    """Certificate for one closed-form segment peak.

    d_squared is the square of the hyperbolic-rotation parameter (kept
    squared so the value stays inside the quadratic field); side_checks
    records the two straddle inequalities
    d^2 * err_right / Q_right <= 1 <= d^2 * err_left / Q_left.
    """

    d_squared: Value
    M: Value
    side_checks: tuple[bool, bool]


@dataclass(frozen=True)
class MuSegment:
    left: tuple[int, Value]
    right: tuple[int, Value]
    gap: GapClass
    peak: Value


def segment_peak(
    left: tuple[int, Value],
    right: tuple[int, Value],
    gap: GapClass,
    star: Value,
    tail_next: Value,
) -> tuple[Value, PeakWitness]:
    """Exact max of t*mu over one chain segment, with its witness.

    `star` is the reversed-tail ratio and `tail_next` the forward tail that
    parameterize the gap: the skipped index's pair for a skip, the
    right-node pair for an adjacent step.  The closed form
    (d^2*err_l^2 + 2*Q_l*err_l + Q_l^2/d^2)/4 must equal G(star, 1/tail)
    on skips and F(star, 1/tail) on adjacent gaps; the straddle inequalities
    confirm the peak is interior to the segment.
    """
    ql, el = left[0], as_value(left[1])
    qr, er = right[0], as_value(right[1])
    d2 = (qr - ql) / (el - er)
    m_form = (d2 * el * el + 2 * ql * el + ql * ql / d2) / 4
    arg = 1 / as_value(tail_next)
    gf_form = G(star, arg) if gap.kind == SKIP else F(star, arg)
    if m_form != gf_form:
        raise InternalConsistencyError(
            f"peak routes disagree at gap nu={gap.nu}: {m_form} vs {gf_form}"
        )
    low_ok = not d2 * er > qr
    high_ok = not d2 * el < ql
    if not (low_ok and high_ok):
        raise InternalConsistencyError(f"straddle fails at gap nu={gap.nu}")
    return m_form, PeakWitness(d_squared=d2, M=m_form, side_checks=(low_ok, high_ok))


def chain_segments(
    cf: CFExpansion,
    records: list[ConvergentRecord],
    chain: LegendreChain,
) -> list[tuple[MuSegment, PeakWitness]]:
    """All chain segments with exact peaks and witnesses."""
    out: list[tuple[MuSegment, PeakWitness]] = []
    for i, gap in enumerate(chain.gaps):
        ln, rn = chain.nodes[i], chain.nodes[i + 1]
        star_nu = gap.nu if gap.kind == SKIP else gap.nu + 1
        star = records[star_nu].alpha_star
        tl = tail(cf, gap.nu + 2)
        peak, wit = segment_peak((ln.Q, ln.err), (rn.Q, rn.err), gap, star, tl)
        out.append((MuSegment((ln.Q, ln.err), (rn.Q, rn.err), gap, peak), wit))
    return out


def chain_for(alpha: Value, horizon: int = 200):
    """Convenience pipeline: expand, tabulate, filter.

    Returns (cf, records, chain) for an irrational alpha.
    """
    from .legendre import build_chain

    cf = expand(alpha, max_terms=horizon)
    records = convergents(cf, alpha, horizon)
    return cf, records, build_chain(cf, records)


def chain_covering(alpha: Value, t_hi: Value | int, horizon: int = 64):
    """Extend the horizon until the chain's last node reaches t_hi."""
    t_hi = as_value(t_hi)
    n = horizon
    while True:
        cf, records, chain = chain_for(alpha, n)
        if not chain.denominators[-1] < t_hi:
            return cf, records, chain
        if n > 1 << 20:
            raise InsufficientHorizonError(f"cannot cover t = {t_hi}")
        n *= 2
