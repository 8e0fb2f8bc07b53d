"""Exact arithmetic over real quadratic fields.

A value is either a `fractions.Fraction` or a `QuadraticSurd` representing
(p + q*sqrt(d))/r with integer components, square-free d >= 2, q != 0 and
r > 0.  Construction always canonicalizes, so a surd object is irrational by
construction and every comparison is decided by integer arithmetic; no
floating point is involved anywhere.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import TypeAlias, Union

from .errors import CrossFieldError, InvalidSurdError, LiteralParseError, UndecidedError

Value: TypeAlias = Union[Fraction, "QuadraticSurd"]


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


def _sqrt_sign(p: int, q: int, d: int) -> int:
    """Sign of p + q*sqrt(d) for square-free d >= 2."""
    if q == 0:
        return _sign(p)
    if p == 0:
        return _sign(q)
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    lhs, rhs = p * p, q * q * d
    # p, q of opposite signs; equality lhs == rhs would force sqrt(d) rational
    if p > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24, fixed extra bases above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < 3_317_044_064_679_887_385_961_981 else _MR_BASES + (41, 43, 47, 53, 59, 61, 67, 71)
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise InvalidSurdError(f"factorization failed for {n}")  # pragma: no cover


def _factor(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if _is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _factor(d, out)
    _factor(n // d, out)


def square_part(n: int, hint: int | None = None) -> tuple[int, int]:
    """Split n > 0 as s*s*f with f square-free, returning (s, f).

    `hint` short-circuits factorization when the square-free kernel is
    already known (all arithmetic inside one field hits this path).  A
    trial-division pass strips small primes; any large cofactor goes to
    Pollard rho, so discriminants of fixed-point equations stay tractable.
    """
    if n <= 0:
        raise InvalidSurdError("square_part requires a positive integer")
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    if hint is not None and hint > 1 and n % hint == 0:
        m = n // hint
        rm = math.isqrt(m)
        if rm * rm == m:
            return rm, hint
    s, f, k = 1, n, 2
    while k <= 10_000 and k * k <= f:
        kk = k * k
        while f % kk == 0:
            f //= kk
            s *= k
        k += 1
    if k * k > f:
        return s, f
    # f has no square factor below 1e8; finish on the factored cofactor
    r = math.isqrt(f)
    if r * r == f:
        return s * r, 1
    powers: dict[int, int] = {}
    _factor(f, powers)
    kernel = 1
    for prime, exp in powers.items():
        if exp % 2:
            kernel *= prime
        s *= prime ** (exp // 2)
    return s, kernel


def as_value(x: int | Fraction | "QuadraticSurd") -> Value:
    if isinstance(x, int):
        return Fraction(x)
    return x


def surd_make(p: int, q: int, d: int, r: int, *, d_hint: int | None = None) -> Value:
    """Canonical (p + q*sqrt(d))/r; collapses to Fraction when rational."""
    if r == 0:
        raise InvalidSurdError("denominator r must be nonzero")
    if d <= 0:
        raise InvalidSurdError("radicand d must be positive")
    s, d = square_part(d, hint=d_hint)
    q *= s
    if q == 0 or d == 1:
        return Fraction(p + q, r)
    if r < 0:
        p, q, r = -p, -q, -r
    g = math.gcd(math.gcd(abs(p), abs(q)), r)
    return QuadraticSurd(p // g, q // g, d, r // g)


@total_ordering
class QuadraticSurd:
    """Canonical irrational element (p + q*sqrt(d))/r of Q(sqrt(d)).

    Instances should be built through `surd_make`, which canonicalizes;
    `__init__` trusts its arguments.  Values are immutable and hashable.
    Arithmetic with int/Fraction operands works both ways and collapses to
    Fraction whenever the sqrt coefficient cancels; mixing two different
    fields raises CrossFieldError.
    """

    __slots__ = ("p", "q", "d", "r")

    def __init__(self, p: int, q: int, d: int, r: int) -> None:
        self.p = p
        self.q = q
        self.d = d
        self.r = r

    # -- basics --------------------------------------------------------

    def __repr__(self) -> str:
        return f"QuadraticSurd({self.p}, {self.q}, {self.d}, {self.r})"

    def __str__(self) -> str:
        return f"({self.p}{self.q:+}*sqrt{self.d})/{self.r}"

    def __hash__(self) -> int:
        return hash((self.p, self.q, self.d, self.r))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadraticSurd):
            return (
                self.p == other.p
                and self.q == other.q
                and self.d == other.d
                and self.r == other.r
            )
        if isinstance(other, (int, Fraction)):
            return False  # canonical surds are irrational
        return NotImplemented

    def _coerce(self, other: object) -> tuple[int, int, int] | None:
        """(p, q, r) of `other` over this surd's field, or None."""
        if isinstance(other, int):
            return other, 0, 1
        if isinstance(other, Fraction):
            return other.numerator, 0, other.denominator
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise CrossFieldError(
                    f"cannot mix sqrt{self.d} and sqrt{other.d} exactly; "
                    "use interval comparison"
                )
            return other.p, other.q, other.r
        return None

    def __lt__(self, other: object) -> bool:
        ops = self._coerce(other)
        if ops is None:
            return NotImplemented
        p2, q2, r2 = ops
        return _sqrt_sign(self.p * r2 - p2 * self.r, self.q * r2 - q2 * self.r, self.d) < 0

    def sign(self) -> int:
        return _sqrt_sign(self.p, self.q, self.d)

    # -- field arithmetic ----------------------------------------------

    def __add__(self, other: object) -> Value:
        ops = self._coerce(other)
        if ops is None:
            return NotImplemented
        p2, q2, r2 = ops
        return surd_make(
            self.p * r2 + p2 * self.r,
            self.q * r2 + q2 * self.r,
            self.d,
            self.r * r2,
            d_hint=self.d,
        )

    __radd__ = __add__

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.p, -self.q, self.d, self.r)

    def __sub__(self, other: object) -> Value:
        ops = self._coerce(other)
        if ops is None:
            return NotImplemented
        p2, q2, r2 = ops
        return surd_make(
            self.p * r2 - p2 * self.r,
            self.q * r2 - q2 * self.r,
            self.d,
            self.r * r2,
            d_hint=self.d,
        )

    def __rsub__(self, other: object) -> Value:
        return (-self) + other

    def __mul__(self, other: object) -> Value:
        ops = self._coerce(other)
        if ops is None:
            return NotImplemented
        p2, q2, r2 = ops
        return surd_make(
            self.p * p2 + self.q * q2 * self.d,
            self.p * q2 + self.q * p2,
            self.d,
            self.r * r2,
            d_hint=self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> Value:
        norm = self.p * self.p - self.q * self.q * self.d
        # norm != 0 since the surd is irrational
        return surd_make(self.r * self.p, -self.r * self.q, self.d, norm, d_hint=self.d)

    def __truediv__(self, other: object) -> Value:
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return surd_make(
                self.p * other.denominator,
                self.q * other.denominator,
                self.d,
                self.r * other.numerator,
                d_hint=self.d,
            )
        if isinstance(other, QuadraticSurd):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other: object) -> Value:
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __abs__(self) -> "QuadraticSurd":
        return self if self.sign() >= 0 else -self

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.p, -self.q, self.d, self.r)

    # -- order embedding into the reals --------------------------------

    def __floor__(self) -> int:
        t = math.isqrt(self.q * self.q * self.d)
        s = t if self.q > 0 else -(t + 1)
        c = (self.p + s) // self.r
        while not self < c + 1:
            c += 1
        while self < c:
            c -= 1
        return c

    def __float__(self) -> float:
        iv = approximate(self, Fraction(1, 1 << 64))
        return float((iv.lo + iv.hi) / 2)


def floor_value(x: Value) -> int:
    return math.floor(x)


def compare(a: Value, b: Value) -> int:
    """Exact total order on one field: -1, 0 or +1.

    Raises CrossFieldError when both operands are surds over different
    radicands (fall back to `cross_compare`).
    """
    a, b = as_value(a), as_value(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return _sign(a.numerator * b.denominator - b.numerator * a.denominator)
    if a == b:
        return 0
    return -1 if a < b else 1


def sign_value(x: Value) -> int:
    if isinstance(x, QuadraticSurd):
        return x.sign()
    f = as_value(x)
    return _sign(f.numerator)


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise InvalidSurdError("interval endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Value) -> bool:
        x = as_value(x)
        return not (x < self.lo) and not (self.hi < x)

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def approximate(x: Value, width: Fraction | int) -> RationalInterval:
    """Enclose `x` in a rational interval no wider than `width`.

    Deterministic bisection starting from the unit interval at floor(x);
    each step is a single exact comparison, so repeated calls with smaller
    widths produce nested intervals.
    """
    width = Fraction(width)
    if width <= 0:
        raise InvalidSurdError("width must be positive")
    x = as_value(x)
    if isinstance(x, Fraction):
        return RationalInterval(x, x)
    lo = Fraction(math.floor(x))
    hi = lo + 1
    while hi - lo > width:
        mid = (lo + hi) / 2
        if x < mid:
            hi = mid
        else:
            lo = mid
    return RationalInterval(lo, hi)


def cross_compare(a: Value, b: Value, cap_bits: int = 1024) -> int:
    """Compare possibly cross-field values: -1, 0 or +1.

    Same-field comparisons are exact.  Across fields, a precision-doubling
    interval ladder separates the values; hitting `cap_bits` without
    separation raises UndecidedError (genuine equality across two distinct
    quadratic fields is impossible unless both values are rational, which
    the exact path already covers).
    """
    a, b = as_value(a), as_value(b)
    try:
        return compare(a, b)
    except CrossFieldError:
        pass
    bits = 16
    while bits <= cap_bits:
        w = Fraction(1, 1 << bits)
        ia, ib = approximate(a, w), approximate(b, w)
        if ia.hi < ib.lo:
            return -1
        if ib.hi < ia.lo:
            return 1
        bits *= 2
    raise UndecidedError(f"values not separated at {cap_bits} bits")


def decimal_str(x: Value, digits: int) -> str:
    """Exact truncated decimal expansion of `x` to `digits` places.

    Truncation is toward minus infinity for the scaled value; exact because
    the scaled floor is computed in the field, never through floats.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = as_value(x)
    neg = sign_value(x) < 0
    v = abs(x)
    n = floor_value(v * 10**digits)
    s = str(n).rjust(digits + 1, "0")
    return ("-" if neg else "") + s[:-digits] + "." + s[-digits:]


def value_str(x: Value) -> str:
    """Canonical interchange rendering: `num/den` or `(p+q*sqrtd)/r`."""
    x = as_value(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


_RAT_RE = re.compile(r"\Arat:(-?\d+)(?:/(\d+))?\Z")
_SURD_RE = re.compile(r"\Asurd:\((-?\d+)([+-]\d+)\*sqrt(\d+)\)/(-?\d+)\Z")


def parse_value(text: str) -> Value:
    """Parse the `rat:` / `surd:` number-literal grammar (exact, no decimals)."""
    m = _RAT_RE.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise LiteralParseError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    m = _SURD_RE.match(text)
    if m:
        p, q, d, r = (int(m.group(i)) for i in range(1, 5))
        return surd_make(p, q, d, r)
    raise LiteralParseError(f"not a rat:/surd: literal: {text!r}")
