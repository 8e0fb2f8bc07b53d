"""Continued fractions: expansion with exact period detection, the
convergent table, tails and reversed tails, and the identity checks that
tie them together.

Indexing follows the classical convention: a continued fraction is
[a0; a1, a2, ...] with a0 an integer and all later quotients >= 1; the
convergent with index nu is p_nu/q_nu = [a0; a1, ..., a_nu].
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    FiniteExpansionError,
    HorizonExceededError,
    InternalConsistencyError,
    LiteralParseError,
)
from .surd import QuadraticSurd, Value, as_value, surd_make


@dataclass(frozen=True)
class CFExpansion:
    """Continued-fraction word [a0; preperiod, (period repeated)].

    `finite` means the word ends (the value is rational); then `period` is
    empty and the canonical form requires the final quotient to be >= 2.
    For irrational sources `period` is the (minimal) repeating block of the
    tail a1, a2, ....
    """

    a0: int
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()
    finite: bool = False

    def __post_init__(self) -> None:
        if any(a < 1 for a in self.preperiod) or any(a < 1 for a in self.period):
            raise ValueError("quotients after a0 must be >= 1")
        if self.finite:
            if self.period:
                raise ValueError("finite expansion cannot carry a period")
            if self.preperiod and self.preperiod[-1] == 1 and len(self.preperiod) >= 1:
                raise ValueError("canonical finite expansion ends with quotient >= 2")
        elif not self.period:
            raise ValueError("infinite expansion needs a nonempty period")

    @property
    def last_index(self) -> int | None:
        return len(self.preperiod) if self.finite else None

    def quotient(self, j: int) -> int:
        if j < 0:
            raise IndexError("quotient index must be >= 0")
        if j == 0:
            return self.a0
        k = j - 1
        if k < len(self.preperiod):
            return self.preperiod[k]
        if self.finite:
            raise FiniteExpansionError(f"expansion has no quotient a_{j}")
        return self.period[(k - len(self.preperiod)) % len(self.period)]

    def quotients(self, n: int) -> list[int]:
        """First n+1 quotients a_0..a_n."""
        return [self.quotient(j) for j in range(n + 1)]


def finite_word(a0: int, quotients: list[int] | tuple[int, ...]) -> CFExpansion:
    """Finite expansion, merging a trailing 1 into canonical form."""
    word = list(quotients)
    if word and word[-1] == 1:
        if len(word) == 1:
            return CFExpansion(a0=a0 + 1, finite=True)
        word = word[:-2] + [word[-2] + 1]
    return CFExpansion(a0=a0, preperiod=tuple(word), finite=True)


def expand(x: Value | int, max_terms: int = 200) -> CFExpansion:
    """Expand a rational or quadratic surd into its continued fraction.

    Rationals give the canonical finite word.  Surds run the quotient
    algorithm on exactly represented tail states; the period is detected at
    the first repeated state, which yields the minimal preperiod and minimal
    period.  HorizonExceededError is raised if no repetition shows up within
    `max_terms` quotients (never silent truncation).
    """
    x = as_value(x)
    if isinstance(x, Fraction):
        quotients: list[int] = []
        cur = x
        while True:
            a = math.floor(cur)
            quotients.append(a)
            frac = cur - a
            if frac == 0:
                break
            cur = 1 / frac
        return finite_word(quotients[0], quotients[1:])

    state: Value = x
    seen: dict[QuadraticSurd, int] = {}
    quots: list[int] = []
    for j in range(max_terms + 1):
        assert isinstance(state, QuadraticSurd)
        if state in seen:
            k = seen[state]
            if k == 0:
                # purely periodic word: the tail repeats (a1.. a_{j-1}, a0)
                cf = CFExpansion(a0=quots[0], period=tuple(quots[1:j]) + (quots[0],))
            else:
                cf = CFExpansion(
                    a0=quots[0], preperiod=tuple(quots[1:k]), period=tuple(quots[k:j])
                )
            _VALUE_CACHE.setdefault(cf, x)
            return cf
        seen[state] = j
        a = math.floor(state)
        quots.append(a)
        state = 1 / (state - a)
    raise HorizonExceededError(f"no period within {max_terms} quotients")


def _word_matrix(word: tuple[int, ...]) -> tuple[int, int, int, int]:
    """Product of [[a,1],[1,0]] over the word, as (m00, m01, m10, m11)."""
    m00, m01, m10, m11 = 1, 0, 0, 1
    for a in word:
        m00, m01, m10, m11 = m00 * a + m01, m00, m10 * a + m11, m10
    return m00, m01, m10, m11


def purely_periodic_value(word: tuple[int, ...], d_hint: int | None = None) -> QuadraticSurd:
    """Exact value of the purely periodic continued fraction over `word`.

    Solves the Moebius fixed point of one period; the result is the root
    greater than 1.
    """
    if not word:
        raise ValueError("period word must be nonempty")
    m00, m01, m10, m11 = _word_matrix(word)
    disc = (m00 - m11) ** 2 + 4 * m01 * m10
    value = surd_make(m00 - m11, 1, disc, 2 * m10, d_hint=d_hint)
    assert isinstance(value, QuadraticSurd)
    return value


def _fold_word(word: tuple[int, ...], seed: Value) -> Value:
    v = seed
    for a in reversed(word):
        v = a + 1 / v
    return v


_VALUE_CACHE: dict[CFExpansion, Value] = {}


def cf_value(cf: CFExpansion) -> Value:
    """Exact value of the expansion (Fraction or QuadraticSurd).

    Expansions produced by `expand` carry their source value in the cache,
    so reconstruction (and its discriminant factorization) only runs for
    word-built expansions.
    """
    cached = _VALUE_CACHE.get(cf)
    if cached is not None:
        return cached
    value: Value
    if cf.finite:
        if not cf.preperiod:
            value = Fraction(cf.a0)
        else:
            v: Value = Fraction(cf.preperiod[-1])
            v = _fold_word(cf.preperiod[:-1], v)
            value = cf.a0 + 1 / v
    else:
        t: Value = purely_periodic_value(cf.period)
        t = _fold_word(cf.preperiod, t)
        value = cf.a0 + 1 / t
    _VALUE_CACHE[cf] = value
    return value


@lru_cache(maxsize=None)
def _field_of(cf: CFExpansion) -> int | None:
    v = cf_value(cf)
    return v.d if isinstance(v, QuadraticSurd) else None


@lru_cache(maxsize=None)
def tail(cf: CFExpansion, nu: int) -> Value:
    """Exact tail value [a_nu; a_{nu+1}, ...]."""
    if nu < 0:
        raise IndexError("tail index must be >= 0")
    if nu == 0:
        return cf_value(cf)
    k = len(cf.preperiod)
    if cf.finite:
        if nu > k:
            raise FiniteExpansionError(f"expansion has no tail at {nu}")
        word = cf.preperiod[nu - 1 :]
        v: Value = Fraction(word[-1])
        return _fold_word(word[:-1], v)
    if nu <= k:
        t: Value = purely_periodic_value(cf.period, d_hint=_field_of(cf))
        return _fold_word(cf.preperiod[nu - 1 :], t)
    p = len(cf.period)
    off = (nu - k - 1) % p
    rotated = cf.period[off:] + cf.period[:off]
    return purely_periodic_value(rotated, d_hint=_field_of(cf))


@dataclass(frozen=True)
class ConvergentRecord:
    """One row of the convergent table.

    xi is the exact approximation error |q*alpha - p|; alpha_star is the
    reversed-quotient ratio q_{nu-1}/q_nu, verified against the direct
    evaluation of [0; a_nu, ..., a1] on construction.
    """

    nu: int
    p: int
    q: int
    xi: Value
    alpha_star: Fraction


def convergents(cf: CFExpansion, alpha: Value | None, n_max: int) -> list[ConvergentRecord]:
    """Convergent records for nu = 0..n_max.

    `alpha` must be the exact value of `cf` (pass None to derive it).  The
    determinant identity and the reversed-word identity for alpha_star are
    asserted exactly at every index.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if alpha is None:
        alpha = cf_value(cf)
    alpha = as_value(alpha)
    last = cf.last_index
    if last is not None and n_max > last:
        raise FiniteExpansionError(f"expansion ends at index {last}, got {n_max}")

    records: list[ConvergentRecord] = []
    p_prev, q_prev = 1, 0  # p_{-1}, q_{-1}
    p_cur, q_cur = cf.a0, 1
    # reversed evaluation of [0; a_nu, ..., a1] built incrementally:
    # r_nu = 1 / (a_nu + r_{nu-1}) with r_0 = 0
    rev = Fraction(0)
    for nu in range(n_max + 1):
        if nu >= 1:
            a = cf.quotient(nu)
            p_cur, p_prev = a * p_cur + p_prev, p_cur
            q_cur, q_prev = a * q_cur + q_prev, q_cur
            rev = 1 / (a + rev)
            if p_cur * q_prev - p_prev * q_cur != (-1) ** (nu - 1):
                raise InternalConsistencyError(f"determinant identity fails at {nu}")
            if rev != Fraction(q_prev, q_cur):
                raise InternalConsistencyError(f"reversed-word identity fails at {nu}")
        xi = abs(q_cur * alpha - p_cur)
        records.append(
            ConvergentRecord(nu=nu, p=p_cur, q=q_cur, xi=xi, alpha_star=Fraction(q_prev, q_cur))
        )
        if nu >= 1 and not records[nu].xi < records[nu - 1].xi:
            raise InternalConsistencyError(f"xi not strictly decreasing at {nu}")
        if nu >= 2 and not records[nu].q > records[nu - 1].q:
            raise InternalConsistencyError(f"q not strictly increasing at {nu}")
    return records


@dataclass(frozen=True)
class IdentityReport:
    """Exact pass/fail record for the convergent identities at one index.

    l1 is None when its guard a_{nu+1} = 1 does not hold.
    """

    nu: int
    cont1_star_tail: bool
    cont1_inverse_form: bool
    cont1_product_form: bool
    cont2: bool
    l1: bool | None

    @property
    def all_pass(self) -> bool:
        return (
            self.cont1_star_tail
            and self.cont1_inverse_form
            and self.cont1_product_form
            and self.cont2
            and self.l1 is not False
        )


def check_identities(cf: CFExpansion, records: list[ConvergentRecord], nu: int) -> IdentityReport:
    """Verify the product/ratio identities of the convergent table at `nu`.

    Checks, all exactly: q_nu*xi_nu against 1/(alpha*_nu + alpha_{nu+1}) and
    its two rewritings; xi_nu/xi_{nu+1} = alpha_{nu+2}; and, when
    a_{nu+1} = 1, xi_{nu-1}/xi_{nu+1} = alpha_{nu+2} + 1.
    """
    if nu < 1 or nu + 1 >= len(records):
        raise IndexError("need records at nu-1 .. nu+1")
    rec = records[nu]
    t1 = tail(cf, nu + 1)
    t2 = tail(cf, nu + 2)
    star = rec.alpha_star
    star1 = records[nu + 1].alpha_star
    prod = rec.q * rec.xi
    c1a = prod == 1 / (star + t1)
    c1b = prod == 1 / (1 / star1 + 1 / t2)
    c1c = prod == star1 * t2 / (star1 + t2)
    c2 = rec.xi / records[nu + 1].xi == t2
    l1: bool | None = None
    if cf.quotient(nu + 1) == 1:
        l1 = records[nu - 1].xi / records[nu + 1].xi == t2 + 1
    return IdentityReport(
        nu=nu,
        cont1_star_tail=c1a,
        cont1_inverse_form=c1b,
        cont1_product_form=c1c,
        cont2=c2,
        l1=l1,
    )


_CF_RE = re.compile(r"\Acf:\[(-?\d+)(?:;(.*))?\]\Z")


def parse_cf(text: str) -> CFExpansion:
    """Parse `cf:[a0;w1,w2,(b1,b2)]` word literals."""
    m = _CF_RE.match(text)
    if not m:
        raise LiteralParseError(f"not a cf: literal: {text!r}")
    a0 = int(m.group(1))
    rest = m.group(2)
    if rest is None or rest == "":
        return CFExpansion(a0=a0, finite=True)
    per_match = re.search(r"\((.*)\)\Z", rest)
    try:
        if per_match:
            head = rest[: per_match.start()].rstrip(",")
            pre = tuple(int(t) for t in head.split(",")) if head else ()
            period = tuple(int(t) for t in per_match.group(1).split(","))
            return CFExpansion(a0=a0, preperiod=pre, period=period)
        word = [int(t) for t in rest.split(",")]
        return finite_word(a0, word)
    except ValueError as exc:
        raise LiteralParseError(f"bad cf literal {text!r}: {exc}") from exc


def format_cf(cf: CFExpansion) -> str:
    parts = ",".join(str(a) for a in cf.preperiod)
    if cf.finite:
        return f"cf:[{cf.a0};{parts}]" if parts else f"cf:[{cf.a0}]"
    per = ",".join(str(a) for a in cf.period)
    if parts:
        return f"cf:[{cf.a0};{parts},({per})]"
    return f"cf:[{cf.a0};({per})]"
