from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    D_GOLDEN,
    D_SQRT2,
    D_THETA,
    GOLDEN,
    LAMBDA_GOLDEN,
    LAMBDA_SQRT2,
    LAMBDA_THETA,
    M_GOLDEN,
    M_SQRT2,
    M_THETA,
    SQRT2,
    THETA,
    periodic_cf,
    random_period,
)
from mcf import (
    CFExpansion,
    build_chain,
    cf_value,
    convergents,
    cross_compare,
    dirichlet_of,
    expand,
    finite_profile,
    gap_limit_value,
    lambda_of,
    m_of,
    make_alpha_minus,
    make_alpha_plus,
    sample_M,
    spectra_report,
    surd_make,
    tail,
)
from mcf.errors import InvalidSequenceError, NotDefinedError

words = st.lists(st.integers(1, 6), min_size=1, max_size=4).map(tuple)


class TestExactValues:
    def test_golden(self):
        assert lambda_of(GOLDEN) == LAMBDA_GOLDEN
        assert dirichlet_of(GOLDEN) == D_GOLDEN
        assert m_of(GOLDEN) == M_GOLDEN

    def test_sqrt2(self):
        assert lambda_of(SQRT2) == LAMBDA_SQRT2
        assert dirichlet_of(SQRT2) == D_SQRT2
        assert m_of(SQRT2) == M_SQRT2

    def test_theta(self):
        assert lambda_of(THETA) == LAMBDA_THETA
        assert dirichlet_of(THETA) == D_THETA
        assert m_of(THETA) == M_THETA

    def test_rational_rejected(self):
        with pytest.raises(NotDefinedError):
            lambda_of(Fraction(22, 7))
        with pytest.raises(NotDefinedError):
            m_of(Fraction(3, 2))

    def test_report_flags(self):
        rep = spectra_report(GOLDEN)
        assert rep.exact is True
        assert rep.lambda_ == LAMBDA_GOLDEN and rep.m == M_GOLDEN


class TestInvariants:
    @given(words)
    @settings(max_examples=50, deadline=None)
    def test_rotation_invariance(self, word):
        base = periodic_cf(word)
        for k in range(1, len(word)):
            rot = periodic_cf(word[k:] + word[:k])
            assert lambda_of(base) == lambda_of(rot)
            assert dirichlet_of(base) == dirichlet_of(rot)
            assert m_of(base) == m_of(rot)

    @given(words)
    @settings(max_examples=50, deadline=None)
    def test_tail_shift_invariance(self, word):
        # spectra of a number and of its own tails agree exactly
        cf = periodic_cf(word)
        shifted = expand(tail(cf, 3), max_terms=400)
        assert m_of(cf) == m_of(shifted)
        assert lambda_of(cf) == lambda_of(shifted)

    @given(words)
    @settings(max_examples=60, deadline=None)
    def test_ordering(self, word):
        cf = periodic_cf(word)
        lam, d, m = lambda_of(cf), dirichlet_of(cf), m_of(cf)
        assert not m < lam
        assert not d < m
        assert not Fraction(1) < d

    @given(words)
    @settings(max_examples=60, deadline=None)
    def test_lambda_maximality(self, word):
        # no value beats the golden ratio's liminf constant
        assert cross_compare(lambda_of(periodic_cf(word)), LAMBDA_GOLDEN, 4096) <= 0

    @given(words)
    @settings(max_examples=60, deadline=None)
    def test_m_bounds(self, word):
        m = m_of(periodic_cf(word))
        assert not m < Fraction(1, 4)
        assert not Fraction(1, 2) < m


class TestChainCrossCheck:
    def test_node_products_approach_lambda(self, rng):
        # min over late chain-node products Q*err lands on the liminf value
        for cf in (expand(GOLDEN), expand(SQRT2), expand(THETA), periodic_cf(random_period(rng))):
            alpha = cf_value(cf)
            records = convergents(cf, alpha, 60)
            chain = build_chain(cf, records)
            late = [node.Q * node.err for node in chain.nodes[-8:]]
            assert abs(min(late) - lambda_of(cf)) < Fraction(1, 10**9)

    def test_limit_peaks_match_m(self, rng):
        # max over one asymptotic period of the observed chain's gap limit
        # values must equal the class-pattern computation exactly
        for _ in range(10):
            word = random_period(rng)
            cf = periodic_cf(word)
            alpha = cf_value(cf)
            records = convergents(cf, alpha, 60)
            chain = build_chain(cf, records)
            p = len(word)
            tail_gaps = chain.gaps[-p:]
            values = [gap_limit_value(cf, g) for g in tail_gaps]
            assert max(values) == m_of(cf)


class TestGenerators:
    def test_alpha_minus_word(self):
        cf = make_alpha_minus(lambda n: n, 12)
        assert cf.preperiod == tuple(range(1, 13))
        assert cf.a0 == 0 and cf.finite

    def test_alpha_minus_estimates_decrease(self):
        prof = finite_profile(make_alpha_minus(lambda n: n, 40))
        vals = [v for _, _, v in prof.m_seq]
        assert vals[-1] < vals[2]
        assert abs(prof.m_estimate - Fraction(1, 4)) < Fraction(2, 100)

    def test_alpha_minus_faster_growth_closer(self):
        slow = finite_profile(make_alpha_minus(lambda n: n, 20)).m_estimate
        fast = finite_profile(make_alpha_minus(lambda n: 2**n, 20)).m_estimate
        assert abs(fast - Fraction(1, 4)) < abs(slow - Fraction(1, 4))

    def test_alpha_minus_guards(self):
        with pytest.raises(InvalidSequenceError):
            make_alpha_minus(lambda n: 3, 10)  # constant
        with pytest.raises(InvalidSequenceError):
            make_alpha_minus(lambda n: 10 - n, 8)  # decreasing
        with pytest.raises(InvalidSequenceError):
            make_alpha_minus(lambda n: n, 1)

    def test_alpha_plus_word_pattern(self):
        cf = make_alpha_plus(lambda k: k + 2, 45)
        word = cf.preperiod
        assert len(word) == 45
        for j, a in enumerate(word, start=1):
            if j % 3 == 0:
                assert a == j // 3 + 2
            else:
                assert a == 1

    def test_alpha_plus_estimates_increase(self):
        prof = finite_profile(make_alpha_plus(lambda k: k + 2, 45))
        assert abs(prof.m_estimate - Fraction(1, 2)) < Fraction(2, 100)

    def test_alpha_plus_both_gap_kinds_reach_half(self):
        # consecutive block values keep every gap adjacent (the F route);
        # geometric growth forces skips, exercising the G route - both
        # subsequences climb toward 1/2
        adj = finite_profile(make_alpha_plus(lambda k: k + 2, 45))
        assert {kind for _, kind, _ in adj.m_seq[-6:]} == {"adjacent"}
        geo = finite_profile(make_alpha_plus(lambda k: 2 ** (k + 1), 45))
        kinds = {kind for _, kind, _ in geo.m_seq}
        assert "skip" in kinds
        skip_vals = [v for _, kind, v in geo.m_seq if kind == "skip"]
        assert abs(skip_vals[-1] - Fraction(1, 2)) < Fraction(2, 100)

    def test_alpha_plus_guards(self):
        with pytest.raises(InvalidSequenceError):
            make_alpha_plus(lambda k: 5, 30)
        with pytest.raises(InvalidSequenceError):
            make_alpha_plus(lambda k: k + 2, 4)


class TestSampleM:
    def test_three_reference_words(self):
        got = dict(sample_M([(1,), (2,), (2, 1)]))
        assert got[(1,)] == M_GOLDEN
        assert got[(2,)] == M_SQRT2
        assert got[(2, 1)] == M_THETA

    def test_bounds_and_rotation_consistency(self):
        words = [
            (a, b)
            for a in range(1, 6)
            for b in range(1, 6)
        ] + [(a,) for a in range(1, 6)]
        table = dict(sample_M(words))
        for word, m in table.items():
            assert not m < Fraction(1, 4)
            assert not Fraction(1, 2) < m
            if len(word) == 2:
                assert table[(word[1], word[0])] == m

    def test_parallel_matches_serial(self):
        words = [(1,), (2,), (3,), (1, 2), (4, 1)]
        assert sample_M(words, jobs=2) == sample_M(words, jobs=1)
