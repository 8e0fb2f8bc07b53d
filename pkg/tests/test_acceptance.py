"""Acceptance criteria, one test per criterion.

Every test prints a single PASS line (with timing where a budget applies)
once all of its assertions hold; tolerances are pinned in the assertions.
Run with `pytest tests/test_acceptance.py -v -s`.
"""

import math
import random
import time
from fractions import Fraction

from conftest import (
    D_GOLDEN,
    GOLDEN,
    LAMBDA_GOLDEN,
    M_GOLDEN,
    M_SQRT2,
    M_THETA,
    SQRT2,
    THETA,
    periodic_cf,
    random_period,
    random_surd,
)
from mcf import (
    build_chain,
    cf_value,
    check_identities,
    chain_segments,
    convergents,
    decimal_str,
    dirichlet_of,
    expand,
    find_crossings,
    finite_profile,
    gap_limit_value,
    is_legendre,
    lambda_of,
    m_of,
    make_alpha_minus,
    make_alpha_plus,
    psi_eval,
    sample_M,
    surd_make,
    tail,
    theorem3_precondition,
)

MICRO = Fraction(1, 10**6)
NANO = Fraction(1, 10**9)


def report(n: int, label: str, detail: str) -> None:
    print(f"\nACCEPTANCE {n} ({label}): PASS  {detail}")


def test_criterion_1_golden_constants():
    # sqrt-digit oracle: floor(sqrt(num)/den * 10^12) by integer isqrt
    def sqrt_digits(num: int, den: int, shift: Fraction = Fraction(0)) -> str:
        scaled = math.isqrt(num * 10**24) // den + int(shift * 10**12)
        s = str(scaled).rjust(13, "0")
        return s[:-12] + "." + s[-12:]

    start = time.perf_counter()
    cases = [
        ("lambda(golden)", lambda_of(GOLDEN), LAMBDA_GOLDEN, sqrt_digits(5, 5)),
        ("d(golden)", dirichlet_of(GOLDEN), D_GOLDEN, sqrt_digits(5, 10, Fraction(1, 2))),
        ("m(golden)", m_of(GOLDEN), M_GOLDEN, sqrt_digits(5, 10, Fraction(1, 4))),
        ("m(sqrt2)", m_of(SQRT2), M_SQRT2, sqrt_digits(2, 8, Fraction(1, 4))),
        ("m(theta)", m_of(THETA), M_THETA, sqrt_digits(3, 4)),
    ]
    for name, got, frozen, digits in cases:
        t0 = time.perf_counter()
        assert got == frozen, name  # tolerance 0 in exact arithmetic
        assert decimal_str(got, 12) == digits, name
        assert time.perf_counter() - t0 < 1.0, name
    prefix_checks = {
        "0.4472": lambda_of(GOLDEN),
        "0.4736": m_of(GOLDEN),
        "0.4267": m_of(SQRT2),
        "0.4330": m_of(THETA),
    }
    for prefix, value in prefix_checks.items():
        assert decimal_str(value, 4) == prefix
    report(1, "golden-value constants", f"5 exact + 12-digit checks in {time.perf_counter() - start:.2f}s")


def test_criterion_2_limsup_equivalence():
    start = time.perf_counter()
    rng = random.Random(1001)
    for _ in range(20):
        word = random_period(rng, max_len=4, max_q=6)
        cf = periodic_cf(word)
        alpha = cf_value(cf)
        m = m_of(cf)
        horizon = 220
        while True:
            records = convergents(cf, alpha, horizon)
            chain = build_chain(cf, records)
            if len(chain.nodes) >= 101:
                break
            horizon += 60
        gaps_100 = chain.gaps[:100]
        p = len(word)
        # exact route: observed gap pattern of one asymptotic period
        exact_max = max(gap_limit_value(cf, g) for g in gaps_100[-p:])
        assert exact_max == m, word
        # numeric route: sampled limsup of t*mu over the trailing window
        best = Fraction(0)
        for i in range(len(gaps_100) - p, len(gaps_100)):
            (ql, el) = chain.nodes[i].Q, chain.nodes[i].err
            (qr, er) = chain.nodes[i + 1].Q, chain.nodes[i + 1].err
            n = 1000
            for k in range(n + 1):
                t = ql + Fraction(k * (qr - ql), n)
                prod = t * (((qr - t) * el + (t - ql) * er) / (qr - ql))
                if prod > best:
                    best = prod
        assert abs(m - best) < MICRO, word
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report(2, "limsup equivalence", f"20 random words, exact + 1e-6 sampled, {elapsed:.1f}s")


def test_criterion_3_lemma_suite():
    rng = random.Random(1002)
    alphas = [GOLDEN, SQRT2, THETA] + [random_surd(rng) for _ in range(20)]
    identity_cases = peak_cases = 0
    for alpha in alphas:
        cf = expand(alpha, max_terms=400)
        records = convergents(cf, alpha, 100)
        for nu in range(1, 99):
            rep = check_identities(cf, records, nu)
            assert rep.all_pass, (alpha, nu)
            identity_cases += 1
        chain = build_chain(cf, records)
        # dual-route peak equality and straddles are asserted inside
        segments = chain_segments(cf, records, chain)
        assert all(w.side_checks == (True, True) for _, w in segments)
        peak_cases += len(segments)
    report(3, "lemma suite", f"{identity_cases} identity and {peak_cases} peak cases, zero failures")


def test_criterion_4_dense_sampling_oracle():
    start = time.perf_counter()
    rng = random.Random(1003)
    segments = []
    while len(segments) < 50:
        alpha = random_surd(rng)
        cf = expand(alpha, max_terms=400)
        records = convergents(cf, alpha, 18)
        chain = build_chain(cf, records)
        segments.extend(seg for seg, _ in chain_segments(cf, records, chain)[:5])
    for seg in segments[:50]:
        (ql, el), (qr, er) = seg.left, seg.right
        best = Fraction(0)
        n = 1000
        for k in range(n + 1):
            t = ql + Fraction(k * (qr - ql), n)
            prod = t * (((qr - t) * el + (t - ql) * er) / (qr - ql))
            assert not seg.peak + NANO < prod
            if prod > best:
                best = prod
        assert seg.peak - best < MICRO
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    report(4, "dense-sampling oracle", f"50 segments x 1000 points in {elapsed:.1f}s")


def test_criterion_5_m_bounds_and_generators():
    quarter, half = Fraction(1, 4), Fraction(1, 2)
    words = []
    for length in range(1, 4):
        stack = [()]
        for _ in range(length):
            stack = [w + (a,) for w in stack for a in range(1, 9)]
        words.extend(stack)
    assert len(words) == 8 + 64 + 512
    for word, m in sample_M(words):
        assert not m < quarter, word
        assert not half < m, word

    minus = finite_profile(make_alpha_minus(lambda n: n, 40))
    assert abs(minus.m_estimate - quarter) < Fraction(2, 100)
    plus = finite_profile(make_alpha_plus(lambda k: k + 2, 45))
    assert abs(plus.m_estimate - half) < Fraction(2, 100)
    report(
        5,
        "m bounds",
        f"584 words in [1/4, 1/2]; generators at {float(minus.m_estimate):.4f} / {float(plus.m_estimate):.4f}",
    )


def test_criterion_6_dominance():
    start = time.perf_counter()
    for alpha, label in ((SQRT2, "sqrt2"), (THETA, "(1+sqrt3)/2")):
        rep = find_crossings(alpha, GOLDEN, 10, 10**6)
        assert rep.dominance_t0 is not None, label
        beyond = [s for t, s in rep.breakpoint_signs if t >= rep.dominance_t0]
        assert beyond and all(s == -1 for s in beyond), label
        after_t0 = [c for c in rep.crossings if c[0] >= rep.dominance_t0]
        assert after_t0 == [], label
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    report(6, "dominance", f"both pairs uniformly below golden past t0, {elapsed:.1f}s")


def test_criterion_7_oscillation():
    assert theorem3_precondition(SQRT2, THETA) is True
    rep = find_crossings(SQRT2, THETA, 10, 10**6)
    assert len(rep.crossings) >= 5
    wide = find_crossings(SQRT2, THETA, 10, 10**7)
    assert len(wide.crossings) >= len(rep.crossings)
    report(
        7,
        "oscillation",
        f"{len(rep.crossings)} certified sign changes, {len(wide.crossings)} on the wider window",
    )


def test_criterion_8_bruteforce_concordance():
    rng = random.Random(1004)
    t_max = 10**4
    half = Fraction(1, 2)
    for i in range(10):
        alpha = random_surd(rng)
        cf = expand(alpha, max_terms=400)
        horizon = 40
        records = convergents(cf, alpha, horizon)
        while records[-1].q <= t_max:
            horizon += 20
            records = convergents(cf, alpha, horizon)

        # incremental scan oracle against the table-driven fast path
        best = None
        idx = 0
        for x in range(1, t_max + 1):
            v = x * alpha
            dist = abs(v - math.floor(v + half))
            if best is None or dist < best:
                best = dist
            while idx + 1 < len(records) and records[idx + 1].q <= x:
                idx += 1
            assert records[idx].xi == best, (alpha, x)
        assert psi_eval(alpha, t_max, records=records) == best

        # filter criterion vs the direct inequality, every index
        for rec in records:
            direct = abs(alpha - Fraction(rec.p, rec.q)) < Fraction(1, 2 * rec.q**2)
            assert direct == is_legendre(rec, tail(cf, rec.nu + 1)), (alpha, rec.nu)

        # chain structure claims
        chain = build_chain(cf, records)
        for a, b in zip(chain.nodes, chain.nodes[1:]):
            assert b.source_nu - a.source_nu <= 2
        for g in chain.gaps:
            if g.kind == "skip":
                assert cf.quotient(g.nu + 1) == 1
    report(8, "brute-force concordance", "10 surds, psi scan to 1e4, all filters consistent")
