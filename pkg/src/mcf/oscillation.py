"""Comparison of the diagonal functions of two numbers: certified dominance
and exact sign-change location on the merged breakpoint lattice.

Both diagonal functions are piecewise linear with breakpoints at their own
chain denominators, so their difference is affine between consecutive merged
breakpoints and every sign change is bracketed by one lattice interval.
Values from distinct quadratic fields are compared through the interval
ladder; a comparison that survives the precision cap is reported as
undecided, never dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EqualInputsError,
    InsufficientHorizonError,
    NotApplicableError,
    NotDefinedError,
    UndecidedError,
)
from .mu import chain_covering, mu_eval
from .spectra import lambda_of, m_of
from .surd import QuadraticSurd, Value, as_value, cross_compare


def proposition1_check(
    alpha: Value, beta: Value, cap_bits: int = 1024, horizon: int = 200
) -> bool:
    """Exact test of the dominance hypothesis m(alpha) < lambda(beta)."""
    return cross_compare(m_of(alpha, horizon), lambda_of(beta, horizon), cap_bits) < 0


def theorem3_precondition(
    alpha: Value, beta: Value, cap_bits: int = 1024, horizon: int = 200
) -> bool:
    """lambda(beta) < lambda(alpha) < m(beta) for independent quadratics.

    Two irrationals inside one quadratic field are always linearly dependent
    with 1 over Z, so same-field inputs are rejected as not applicable;
    distinct square-free radicands guarantee independence.
    """
    a, b = as_value(alpha), as_value(beta)
    if not isinstance(a, QuadraticSurd) or not isinstance(b, QuadraticSurd):
        raise NotApplicableError("both inputs must be quadratic irrationals")
    if a.d == b.d:
        raise NotApplicableError("same field: 1, alpha, beta are dependent over Z")
    la = lambda_of(a, horizon)
    lb = lambda_of(b, horizon)
    mb = m_of(b, horizon)
    return cross_compare(lb, la, cap_bits) < 0 and cross_compare(la, mb, cap_bits) < 0


@dataclass(frozen=True)
class CrossingReport:
    t_range: tuple[Fraction, Fraction]
    crossings: tuple[tuple[Fraction, Fraction], ...]
    undecided: tuple[tuple[Fraction, Fraction], ...]
    dominance_t0: Fraction | None
    precondition_naturel: bool
    breakpoint_signs: tuple[tuple[Fraction, int | None], ...]


def find_crossings(
    alpha: Value,
    beta: Value,
    t_lo: int | Fraction,
    t_hi: int | Fraction,
    cap_bits: int = 1024,
    horizon: int = 200,
) -> CrossingReport:
    """Locate sign changes of mu_alpha - mu_beta over [t_lo, t_hi].

    The lattice is the union of both chains' denominators inside the range
    plus the range endpoints.  Each lattice point's sign is certified
    exactly (same field) or by interval refinement; crossings are reported
    as the bracketing lattice intervals with certified opposite endpoint
    signs.  dominance_t0 is set only when the m(alpha) < lambda(beta)
    hypothesis holds exactly and the trailing signs are uniformly negative.
    """
    a, b = as_value(alpha), as_value(beta)
    if a == b:
        raise EqualInputsError("difference is identically zero")
    if not isinstance(a, QuadraticSurd) or not isinstance(b, QuadraticSurd):
        raise NotDefinedError("chains require quadratic irrationals")

    _, _, chain_a = chain_covering(a, t_hi, horizon)
    _, _, chain_b = chain_covering(b, t_hi, horizon)

    lo = Fraction(max(as_value(t_lo), chain_a.denominators[0], chain_b.denominators[0]))
    hi = Fraction(as_value(t_hi))
    if not lo < hi:
        raise InsufficientHorizonError("empty t range after clamping to the chains")

    points = {lo, hi}
    for chain in (chain_a, chain_b):
        points.update(
            Fraction(q) for q in chain.denominators if lo < q < hi
        )
    lattice = sorted(points)

    rows: list[tuple[Fraction, int | None]] = []
    for t in lattice:
        da, db = mu_eval(chain_a, t), mu_eval(chain_b, t)
        try:
            s: int | None = cross_compare(da, db, cap_bits)
        except UndecidedError:
            s = None
        rows.append((t, s))

    undecided: list[tuple[Fraction, Fraction]] = []
    for i, (t, s) in enumerate(rows):
        if s is None:
            left = rows[i - 1][0] if i > 0 else t
            right = rows[i + 1][0] if i + 1 < len(rows) else t
            undecided.append((left, right))

    crossings: list[tuple[Fraction, Fraction]] = []
    prev_idx: int | None = None
    for i, (t, s) in enumerate(rows):
        if s is None or s == 0:
            continue
        if prev_idx is not None:
            ps = rows[prev_idx][1]
            if ps is not None and ps != s:
                between = rows[prev_idx + 1 : i]
                if all(bs is not None for _, bs in between):
                    zeros = [bt for bt, bs in between if bs == 0]
                    if zeros:
                        crossings.append((zeros[0], zeros[-1]))
                    else:
                        crossings.append((rows[prev_idx][0], t))
        prev_idx = i

    try:
        hypothesis = proposition1_check(a, b, cap_bits, horizon)
    except (UndecidedError, NotDefinedError):
        hypothesis = False
    dominance_t0: Fraction | None = None
    if hypothesis:
        bad = [i for i, (_, s) in enumerate(rows) if s != -1]
        if not bad:
            dominance_t0 = rows[0][0]
        elif bad[-1] + 1 < len(rows):
            dominance_t0 = rows[bad[-1] + 1][0]

    try:
        naturel = theorem3_precondition(a, b, cap_bits, horizon)
    except NotApplicableError:
        naturel = False

    return CrossingReport(
        t_range=(lo, hi),
        crossings=tuple(crossings),
        undecided=tuple(undecided),
        dominance_t0=dominance_t0,
        precondition_naturel=naturel,
        breakpoint_signs=tuple(rows),
    )
