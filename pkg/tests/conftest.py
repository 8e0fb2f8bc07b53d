"""Shared generators and oracle helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from mcf import CFExpansion, QuadraticSurd, surd_make

SQUAREFREE = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30]

GOLDEN = surd_make(1, 1, 5, 2)
SQRT2 = surd_make(0, 1, 2, 1)
THETA = surd_make(1, 1, 3, 2)  # (1 + sqrt3)/2
PAPER_ALPHAS = [GOLDEN, SQRT2, THETA]

# frozen closed forms, each derived by hand from the class-limit formulas
LAMBDA_GOLDEN = surd_make(0, 1, 5, 5)  # 1/sqrt5
D_GOLDEN = surd_make(5, 1, 5, 10)  # 1/2 + 1/(2 sqrt5)
M_GOLDEN = surd_make(5, 2, 5, 20)  # 1/4 + 1/(2 sqrt5)
LAMBDA_SQRT2 = surd_make(0, 1, 2, 4)  # 1/sqrt8
D_SQRT2 = surd_make(2, 1, 2, 4)
M_SQRT2 = surd_make(2, 1, 2, 8)  # 1/4 + 1/(4 sqrt2)
LAMBDA_THETA = surd_make(0, 1, 3, 6)  # 1/sqrt12
D_THETA = surd_make(3, 1, 3, 6)
M_THETA = surd_make(0, 1, 3, 4)  # sqrt3/4


def random_surd(rng: random.Random, positive: bool = False) -> QuadraticSurd:
    d = rng.choice(SQUAREFREE)
    p = rng.randint(1, 15) if positive else rng.randint(-15, 15)
    q = rng.randint(1, 8)
    r = rng.randint(1, 8)
    s = surd_make(p, q, d, r)
    assert isinstance(s, QuadraticSurd)
    return s


def random_period(rng: random.Random, max_len: int = 4, max_q: int = 6) -> tuple[int, ...]:
    return tuple(rng.randint(1, max_q) for _ in range(rng.randint(1, max_len)))


def periodic_cf(period: tuple[int, ...]) -> CFExpansion:
    return CFExpansion(a0=1, preperiod=(), period=period)


# minimal interval arithmetic, used only as an independent oracle

def iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def iv_sub(a, b):
    return (a[0] - b[1], a[1] - b[0])


def iv_mul(a, b):
    prods = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return (min(prods), max(prods))


def iv_inv(a):
    if a[0] <= 0 <= a[1]:
        raise ZeroDivisionError("interval straddles zero")
    return (1 / a[1], 1 / a[0])


def iv_contains(iv, lo_hi) -> bool:
    return iv[0] <= lo_hi[0] and lo_hi[1] <= iv[1]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260809)
