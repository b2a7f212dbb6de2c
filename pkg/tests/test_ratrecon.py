from fractions import Fraction
from math import isqrt, prod

import pytest
from hypothesis import given, settings, strategies as st

from supercong.ratrecon import (
    DuplicatePrimeError,
    InsufficientDataError,
    ResidueObservation,
    crt_combine,
    hunt_constant,
    reconstruct,
)

PRIMES_GE_11 = (11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def _obs(pairs):
    return [ResidueObservation(p, v) for p, v in pairs]


class TestCrt:
    def test_hand_example(self):
        value, M = crt_combine(_obs([(3, 2), (5, 3)]))
        assert (value, M) == (8, 15)

    def test_single_observation(self):
        assert crt_combine(_obs([(7, 4)])) == (4, 7)

    def test_constant_section(self):
        value, M = crt_combine(_obs([(7, 5), (11, 9), (13, 11)]))
        assert M == 1001 and value == M - 2

    def test_duplicate_prime(self):
        with pytest.raises(DuplicatePrimeError):
            crt_combine(_obs([(7, 1), (7, 2)]))

    def test_empty(self):
        with pytest.raises(InsufficientDataError):
            crt_combine([])

    @given(st.lists(st.sampled_from(PRIMES_GE_11), min_size=1, max_size=5, unique=True), st.data())
    @settings(max_examples=40)
    def test_reduces_back_to_inputs(self, primes, data):
        obs = [ResidueObservation(p, data.draw(st.integers(0, p - 1))) for p in primes]
        value, M = crt_combine(obs)
        assert M == prod(primes)
        for o in obs:
            assert value % o.p == o.value


class TestReconstruct:
    def test_small_negative_integer(self):
        for M in (11, 1001, 10**12 + 39):
            res = reconstruct(M - 2, M)
            assert res.found and res.candidate == Fraction(-2)
            assert res.bound == isqrt(M // 2)

    def test_minus_one_thirtieth(self):
        value, M = crt_combine(
            [ResidueObservation(p, -pow(30, -1, p) % p) for p in (11, 13, 17)]
        )
        res = reconstruct(value, M)
        assert res.found and res.candidate == Fraction(-1, 30)

    def test_zero(self):
        res = reconstruct(0, 1001)
        assert res.found and res.candidate == Fraction(0)

    def test_desk_scale_failure_reports_bound(self):
        # residues of a depth-9 normalized constant over primes 37..53;
        # no fraction within the symmetric bound matches, and the result
        # says which bound was excluded
        obs = []
        for p in (37, 41, 43, 47, 53):
            from supercong.ratrecon import _normalized_observation

            value, reason = _normalized_observation("qd", 9, 1, p)
            assert reason == ""
            obs.append(ResidueObservation(p, value))
        value, M = crt_combine(obs)
        res = reconstruct(value, M)
        assert not res.found
        assert res.candidate is None
        assert res.bound == isqrt(M // 2) > 0

    def test_domain(self):
        with pytest.raises(ValueError):
            reconstruct(15, 15)

    @given(
        num=st.integers(-50, 50),
        den=st.integers(1, 50),
        primes=st.lists(st.sampled_from(PRIMES_GE_11), min_size=4, max_size=8, unique=True),
    )
    @settings(max_examples=60)
    def test_round_trip(self, num, den, primes):
        q = Fraction(num, den)
        if any(q.denominator % p == 0 for p in primes):
            return
        obs = [
            ResidueObservation(p, q.numerator * pow(q.denominator, -1, p) % p) for p in primes
        ]
        value, M = crt_combine(obs)
        res = reconstruct(value, M)
        assert res.found and res.candidate == q

    def test_monotone_in_primes(self):
        # adding primes never flips found -> not-found for a true constant
        q = Fraction(-22, 7)
        found = []
        for k in range(4, len(PRIMES_GE_11) + 1):
            primes = PRIMES_GE_11[:k]
            obs = [
                ResidueObservation(p, q.numerator * pow(q.denominator, -1, p) % p)
                for p in primes
                if p != 7
            ]
            value, M = crt_combine(obs)
            res = reconstruct(value, M)
            found.append(res.found and res.candidate == q)
        assert all(found)


class TestHunt:
    def test_q3(self):
        res = hunt_constant("qd", 3, 1, list(range(7, 32)))
        assert res.found and res.candidate == Fraction(-2)
        assert res.used_primes == (7, 11, 13, 17, 19, 23, 29, 31)
        assert res.skipped == ()

    def test_q5_skips_the_irregular_prime(self):
        res = hunt_constant("qd", 5, 1, list(range(11, 38)))
        assert res.found and res.candidate == Fraction(-20)
        # 37 divides the numerator of B_32, so that prime carries no signal
        assert [p for p, _ in res.skipped] == [37]

    def test_q7(self):
        res = hunt_constant("qd", 7, 1, list(range(11, 38)))
        assert res.found and res.candidate == Fraction(-504)

    def test_q9_not_found_with_bound(self):
        res = hunt_constant("qd", 9, 1, list(range(11, 98)))
        assert res.status == "not-found-up-to-bound"
        assert res.candidate is None
        assert res.bound > 10**10
        assert 67 in [p for p, _ in res.skipped]
        assert "held-out" in res.note or "reconstruction" in res.note

    def test_c_family(self):
        assert hunt_constant("c", 5, 2, list(range(11, 32))).candidate == Fraction(2)
        assert hunt_constant("c", 7, 2, list(range(11, 32))).candidate == Fraction(3)
        assert hunt_constant("c", 7, 1, list(range(11, 32))).candidate == Fraction(-1)

    def test_cprime_family(self):
        assert hunt_constant("cprime", 5, 2, list(range(11, 32))).candidate == Fraction(-3)
        assert hunt_constant("cprime", 9, 2, list(range(11, 32))).candidate == Fraction(-5)

    def test_insufficient_data(self):
        with pytest.raises(InsufficientDataError):
            hunt_constant("qd", 9, 1, [2, 3, 5, 7])

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            hunt_constant("qx", 3, 1, [11, 13])

    def test_non_primes_ignored(self):
        res = hunt_constant("qd", 3, 1, [7, 8, 9, 10, 11, 12, 13])
        assert res.used_primes == (7, 11, 13)
