import random
from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from supercong.mhs import (
    Composition,
    mhs,
    mhs_restricted,
    unordered_sum,
    unordered_sum_bruteforce,
)
from supercong.modring import NonUnitError, PrimePowerModulus, rational_to_residue


def mhs_exact(N: int, parts: tuple[int, ...]) -> Fraction:
    """Independent oracle: exact rationals via the defining recurrence."""
    if not parts:
        return Fraction(1)
    if N < len(parts):
        return Fraction(0)
    return mhs_exact(N - 1, parts) + Fraction(1, N ** parts[0]) * mhs_exact(N - 1, parts[1:])


class TestComposition:
    def test_properties(self):
        c = Composition((2, 1, 3))
        assert c.depth == 3 and c.weight == 6

    def test_validation(self):
        with pytest.raises(ValueError):
            Composition(())
        with pytest.raises(ValueError):
            Composition((1, 0))


class TestMhs:
    def test_empty_range(self):
        assert mhs(0, (1, 2), PrimePowerModulus(7, 1)).value == 0

    def test_empty_composition_is_unit(self):
        assert mhs(5, (), PrimePowerModulus(7, 1)).value == 1

    def test_depth_one_spec_example(self):
        M = PrimePowerModulus(101, 1)
        assert mhs(4, (1,), M) == rational_to_residue(Fraction(25, 12), M)

    def test_depth_two_spec_example(self):
        # H_6(1,1) equals both the exact oracle and (H_6(1)^2 - H_6(2)) / 2
        M = PrimePowerModulus(7, 2)
        exact = mhs_exact(6, (1, 1))
        assert exact == (mhs_exact(6, (1,)) ** 2 - mhs_exact(6, (2,))) / 2
        assert mhs(6, (1, 1), M) == rational_to_residue(exact, M)

    def test_accepts_composition_objects(self):
        M = PrimePowerModulus(11, 1)
        assert mhs(5, Composition((2, 1)), M) == mhs(5, (2, 1), M)

    def test_non_unit_index_raises(self):
        with pytest.raises(NonUnitError):
            mhs(7, (1,), PrimePowerModulus(7, 1))

    def test_matches_exact_oracle(self):
        M = PrimePowerModulus(13, 2)
        for parts in [(1,), (2,), (1, 1), (2, 1), (1, 2), (1, 1, 1), (3, 2, 1)]:
            for N in (1, 4, 9, 12):
                assert mhs(N, parts, M) == rational_to_residue(mhs_exact(N, parts), M), (parts, N)

    def test_negative_range_rejected(self):
        with pytest.raises(ValueError):
            mhs(-1, (1,), PrimePowerModulus(5, 1))

    @given(
        N=st.integers(1, 50),
        a=st.integers(1, 4),
        b=st.integers(1, 4),
        pr=st.sampled_from([(53, 1), (61, 1), (11, 2)]),
    )
    @settings(max_examples=60)
    def test_stuffle_depth_one(self, N, a, b, pr):
        p, r = pr
        if N >= p:
            return
        M = PrimePowerModulus(p, r)
        lhs = mhs(N, (a,), M) * mhs(N, (b,), M)
        rhs = mhs(N, (a, b), M) + mhs(N, (b, a), M) + mhs(N, (a + b,), M)
        assert lhs == rhs


class TestRestricted:
    def test_equals_unrestricted_below_p(self):
        M = PrimePowerModulus(7, 2)
        for parts in [(1,), (1, 1), (2, 1)]:
            assert mhs_restricted(6, parts, M) == mhs(6, parts, M)

    def test_empty_range(self):
        assert mhs_restricted(0, (1,), PrimePowerModulus(5, 1)).value == 0

    def test_two_blocks_direct_sum(self):
        # N = 2p-1, depth 1, p = 5: eight unit terms
        M = PrimePowerModulus(5, 1)
        expected = sum(pow(k, -1, 5) for k in range(1, 10) if k % 5) % 5
        assert mhs_restricted(9, (1,), M).value == expected

    def test_skips_all_multiples(self):
        M = PrimePowerModulus(3, 2)
        exact = sum(Fraction(1, k) for k in range(1, 11) if k % 3)
        assert mhs_restricted(10, (1,), M) == rational_to_residue(exact, M)


class TestUnorderedSum:
    def test_depth_one_is_restricted_power_sum(self):
        M = PrimePowerModulus(5, 1)
        assert unordered_sum(1, (1,), M) == mhs_restricted(4, (1,), M)
        assert unordered_sum(1, (1,), M).value == 0  # 25/12 has numerator divisible by 5

    def test_spec_example_depth_two(self):
        assert unordered_sum(1, (1, 1), PrimePowerModulus(7, 2)).value == 35

    def test_depth_one_general_b(self):
        M = PrimePowerModulus(7, 2)
        for b, alpha in [(2, 1), (3, 2)]:
            assert unordered_sum(b, (alpha,), M) == mhs_restricted(b * 7 - 1, (alpha,), M)

    def test_equal_exponents_collapse_to_factorial(self):
        M = PrimePowerModulus(11, 2)
        for n, alpha in [(2, 1), (3, 1), (3, 2), (4, 1)]:
            expected = factorial(n) * mhs(10, (alpha,) * n, M).value % M.modulus
            assert unordered_sum(1, (alpha,) * n, M).value == expected

    def test_permutation_invariance(self):
        M = PrimePowerModulus(11, 2)
        base = (1, 2, 3)
        values = {unordered_sum(1, perm, M).value for perm in permutations(base)}
        assert len(values) == 1

    def test_matches_bruteforce(self):
        rng = random.Random(7)
        for _ in range(25):
            p = rng.choice([5, 7, 11])
            b = rng.randint(1, 3)
            n = rng.randint(1, 3)
            alphas = tuple(rng.randint(1, 3) for _ in range(n))
            M = PrimePowerModulus(p, rng.randint(1, 2))
            assert unordered_sum(b, alphas, M) == unordered_sum_bruteforce(b, alphas, M), (
                p, b, alphas, M,
            )

    def test_depth_eight_runs(self):
        # all-ones depth 8 exercises the multiplicity weight 8!
        M = PrimePowerModulus(11, 2)
        expected = factorial(8) * mhs(10, (1,) * 8, M).value % M.modulus
        assert unordered_sum(1, (1,) * 8, M).value == expected

    def test_requires_p_above_depth(self):
        with pytest.raises(ValueError):
            unordered_sum(1, (1, 1, 1), PrimePowerModulus(3, 1))

    def test_bruteforce_depth_guard(self):
        with pytest.raises(ValueError):
            unordered_sum_bruteforce(1, (1, 1, 1, 1), PrimePowerModulus(11, 1))

    def test_bad_b(self):
        with pytest.raises(ValueError):
            unordered_sum(0, (1,), PrimePowerModulus(5, 1))
