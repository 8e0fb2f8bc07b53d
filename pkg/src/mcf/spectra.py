"""Approximation spectra: the liminf constant of t*psi, the limsup constant
of t*psi, and the limsup constant of t*mu.

For an eventually periodic expansion the three quantities are exact: along
each residue class of the period the tail alpha_nu is literally constant and
the reversed ratio alpha*_nu converges to the purely periodic value of the
reversed rotated period word.  The liminf/limsup are then the min/max of the
class limits, all inside one quadratic field.  The reversed limit X_c is
cross-checked against the algebraic conjugate of the forward tail
(X_c = -conj(Y_{c+1})); a mismatch aborts.

Finite quotient words (truncations of irrational targets) get honest
finite-horizon estimates instead: the raw per-index sequences plus a
trailing-window extremum, flagged as carrying no convergence guarantee.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .cf import CFExpansion, cf_value, convergents, expand, purely_periodic_value, tail
from .errors import (
    InsufficientHorizonError,
    InternalConsistencyError,
    InvalidSequenceError,
    NotDefinedError,
)
from .legendre import ADJACENT, SKIP, GapClass, is_legendre
from .mu import F, G
from .surd import QuadraticSurd, Value, as_value


@dataclass(frozen=True)
class SpectraReport:
    lambda_: Value
    dirichlet: Value
    m: Value
    exact: bool
    horizon_used: int


def class_limits(period: tuple[int, ...]) -> tuple[list[Value], list[Value]]:
    """Per-residue-class limits (X, Y) for a period word.

    Y[c] is the purely periodic tail starting at period position c;
    X[c] is the limit of the reversed ratios along that class, computed from
    the reversed rotated word and verified against -conj(Y[c+1]).
    """
    p = len(period)
    ys: list[QuadraticSurd] = []
    hint: int | None = None
    for c in range(p):
        y = purely_periodic_value(period[c:] + period[:c], d_hint=hint)
        hint = y.d
        ys.append(y)
    xs: list[Value] = []
    for c in range(p):
        rev = tuple(period[(c - i) % p] for i in range(p))
        x = 1 / purely_periodic_value(rev, d_hint=hint)
        if x != -(ys[(c + 1) % p].conjugate()):
            raise InternalConsistencyError("reversed-tail limit fails conjugate check")
        xs.append(x)
    return xs, list(ys)


def _exact_lambda(period: tuple[int, ...]) -> Value:
    xs, ys = class_limits(period)
    p = len(period)
    return min(1 / (xs[c] + ys[(c + 1) % p]) for c in range(p))


def _exact_dirichlet(period: tuple[int, ...]) -> Value:
    xs, ys = class_limits(period)
    p = len(period)
    return max(ys[(c + 1) % p] / (xs[c] + ys[(c + 1) % p]) for c in range(p))


def _asymptotic_passes(period: tuple[int, ...]) -> list[bool]:
    """Eventual pass/fail of the 1/(2Q^2) filter per residue class.

    The limit criterion sum X_c + Y_{c+1} is irrational, so it never equals
    the threshold 2 and the strict comparison decides the eventual pattern.
    """
    xs, ys = class_limits(period)
    p = len(period)
    passes = [xs[c] + ys[(c + 1) % p] > 2 for c in range(p)]
    for c in range(p):
        if not passes[c] and not passes[(c + 1) % p]:
            raise InternalConsistencyError("two consecutive classes fail the filter")
        if not passes[c] and period[(c + 1) % p] != 1:
            raise InternalConsistencyError("failing class without unit successor")
    return passes


def _exact_m(period: tuple[int, ...]) -> Value:
    xs, ys = class_limits(period)
    p = len(period)
    passes = _asymptotic_passes(period)
    values: list[Value] = []
    for c in range(p):
        if not passes[c]:
            continue
        nc = (c + 1) % p
        if passes[nc]:
            values.append(F(xs[nc], 1 / ys[(c + 2) % p]))
        else:
            values.append(G(xs[nc], 1 / ys[(nc + 2) % p]))
    return max(values)


def gap_limit_value(cf: CFExpansion, gap: GapClass) -> Value:
    """Class-limit peak value for one observed chain gap.

    Valid for gaps past the preperiod, where the residue class of the gap's
    index determines the limit arguments.
    """
    if cf.finite:
        raise NotDefinedError("limit values need a periodic expansion")
    k, p = len(cf.preperiod), len(cf.period)
    if gap.nu <= k:
        raise InsufficientHorizonError("gap lies in the preperiod")
    xs, ys = class_limits(cf.period)
    c = (gap.nu - k - 1) % p
    if gap.kind == SKIP:
        return G(xs[c], 1 / ys[(c + 2) % p])
    return F(xs[(c + 1) % p], 1 / ys[(c + 2) % p])


# -- finite-horizon estimates ------------------------------------------


@dataclass(frozen=True)
class FiniteSpectraProfile:
    """Raw per-index spectra data for a finite quotient word.

    The sequences hold (index, value) pairs; m_seq additionally carries the
    gap kind so skip-driven and adjacent-driven subsequences can be read
    separately.  Estimates are extrema over the trailing quarter of each
    sequence and come with no convergence guarantee.
    """

    horizon: int
    lambda_seq: tuple[tuple[int, Fraction], ...]
    dirichlet_seq: tuple[tuple[int, Fraction], ...]
    m_seq: tuple[tuple[int, str, Fraction], ...]
    lambda_estimate: Fraction
    dirichlet_estimate: Fraction
    m_estimate: Fraction
    converged: bool = False


def _trailing(seq: Sequence) -> Sequence:
    start = (3 * len(seq)) // 4
    if start >= len(seq):
        start = len(seq) - 1
    return seq[start:]


def finite_profile(cf: CFExpansion) -> FiniteSpectraProfile:
    """Estimate profile for a finite word, treating it as a truncation."""
    if not cf.finite:
        raise NotDefinedError("finite_profile needs a finite word")
    last = cf.last_index
    assert last is not None
    if last < 4:
        raise InsufficientHorizonError("word too short for estimates")
    value = cf_value(cf)
    records = convergents(cf, value, last)

    lam = tuple(
        (nu, Fraction(1 / (records[nu].alpha_star + tail(cf, nu + 1))))
        for nu in range(last)
    )
    dir_ = tuple(
        (s, Fraction(tail(cf, s + 1) / (records[s].alpha_star + tail(cf, s + 1))))
        for s in range(1, last)
    )

    passing = [
        rec.nu
        for rec in records
        if is_legendre(rec, tail(cf, rec.nu + 1) if rec.nu < last else None)
    ]
    m_entries: list[tuple[int, str, Fraction]] = []
    for prev, cur in zip(passing, passing[1:]):
        step = cur - prev
        if step == 1:
            if prev + 2 <= last:
                val = F(records[prev + 1].alpha_star, 1 / tail(cf, prev + 2))
                m_entries.append((prev, ADJACENT, Fraction(val)))
        elif step == 2:
            if prev + 3 <= last:
                val = G(records[prev + 1].alpha_star, 1 / tail(cf, prev + 3))
                m_entries.append((prev + 1, SKIP, Fraction(val)))
        else:
            raise InternalConsistencyError("gap wider than one skipped convergent")
    if not m_entries:
        raise InsufficientHorizonError("no complete gaps within the word")

    return FiniteSpectraProfile(
        horizon=last,
        lambda_seq=lam,
        dirichlet_seq=dir_,
        m_seq=tuple(m_entries),
        lambda_estimate=min(v for _, v in _trailing(lam)),
        dirichlet_estimate=max(v for _, v in _trailing(dir_)),
        m_estimate=max(v for _, _, v in _trailing(m_entries)),
    )


# -- public operations -------------------------------------------------


def _as_cf(alpha: Value | CFExpansion, horizon: int) -> CFExpansion:
    if isinstance(alpha, CFExpansion):
        return alpha
    v = as_value(alpha)
    if isinstance(v, Fraction):
        raise NotDefinedError("limit quantities are undefined for rationals")
    return expand(v, max_terms=horizon)


def lambda_of(alpha: Value | CFExpansion, horizon: int = 200) -> Value:
    """liminf of t*psi: exact for periodic input, else a trailing estimate."""
    cf = _as_cf(alpha, horizon)
    if cf.finite:
        return finite_profile(cf).lambda_estimate
    return _exact_lambda(cf.period)


def dirichlet_of(alpha: Value | CFExpansion, horizon: int = 200) -> Value:
    """limsup of t*psi: exact for periodic input, else a trailing estimate."""
    cf = _as_cf(alpha, horizon)
    if cf.finite:
        return finite_profile(cf).dirichlet_estimate
    return _exact_dirichlet(cf.period)


def m_of(alpha: Value | CFExpansion, horizon: int = 200) -> Value:
    """limsup of t*mu: exact for periodic input, else a trailing estimate."""
    cf = _as_cf(alpha, horizon)
    if cf.finite:
        return finite_profile(cf).m_estimate
    return _exact_m(cf.period)


def spectra_report(alpha: Value | CFExpansion, horizon: int = 200) -> SpectraReport:
    cf = _as_cf(alpha, horizon)
    if cf.finite:
        prof = finite_profile(cf)
        return SpectraReport(
            lambda_=prof.lambda_estimate,
            dirichlet=prof.dirichlet_estimate,
            m=prof.m_estimate,
            exact=False,
            horizon_used=prof.horizon,
        )
    return SpectraReport(
        lambda_=_exact_lambda(cf.period),
        dirichlet=_exact_dirichlet(cf.period),
        m=_exact_m(cf.period),
        exact=True,
        horizon_used=len(cf.preperiod) + len(cf.period),
    )


# -- boundary generators -----------------------------------------------


def _sequence_values(
    spec: Callable[[int], int] | Sequence[int], count: int
) -> list[int]:
    if callable(spec):
        return [int(spec(k)) for k in range(1, count + 1)]
    vals = [int(v) for v in spec][:count]
    if len(vals) < count:
        raise InvalidSequenceError(f"sequence provides {len(vals)} < {count} values")
    return vals


def make_alpha_minus(
    growth: Callable[[int], int] | Sequence[int], terms: int
) -> CFExpansion:
    """Finite word [0; a_1..a_terms] with strictly increasing quotients.

    Along such words the adjacent-gap peak values sink toward 1/4.
    """
    if terms < 2:
        raise InvalidSequenceError("need at least two terms")
    vals = _sequence_values(growth, terms)
    if vals[0] < 1:
        raise InvalidSequenceError("quotients must be positive")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise InvalidSequenceError("growth sequence must be strictly increasing")
    return CFExpansion(a0=0, preperiod=tuple(vals), finite=True)


def make_alpha_plus(
    gap_values: Callable[[int], int] | Sequence[int], terms: int
) -> CFExpansion:
    """Finite word [0; 1,1,b_1, 1,1,b_2, ...] with b strictly increasing.

    Only complete three-quotient blocks are kept, so the word stays in
    canonical form; peak values climb toward 1/2 along both the skip-driven
    and the adjacent-driven gap subsequences.
    """
    blocks = terms // 3
    if blocks < 2:
        raise InvalidSequenceError("need at least two complete blocks")
    vals = _sequence_values(gap_values, blocks)
    if vals[0] < 2:
        raise InvalidSequenceError("block quotients must be >= 2")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise InvalidSequenceError("block quotients must be strictly increasing")
    word: list[int] = []
    for b in vals:
        word.extend((1, 1, b))
    return CFExpansion(a0=0, preperiod=tuple(word), finite=True)


# -- sampling ----------------------------------------------------------


def _m_of_period(word: tuple[int, ...]) -> Value:
    return _exact_m(word)


def sample_M(
    words: Sequence[Sequence[int]], jobs: int = 1
) -> list[tuple[tuple[int, ...], Value]]:
    """Exact m value per periodic word, order-preserving.

    Words are independent; with jobs > 1 they are distributed over worker
    processes and merged back in input order.
    """
    tuples = [tuple(int(a) for a in w) for w in words]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_m_of_period, tuples))
    else:
        values = [_m_of_period(w) for w in tuples]
    return list(zip(tuples, values))
