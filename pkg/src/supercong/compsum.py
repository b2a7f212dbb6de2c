"""Sums of reciprocal products over restricted compositions of m * p**r.

The evaluator reads one coefficient out of a truncated power of the unit
generating series f(x) = sum_{p not| l} x**l / l; binary powering keeps
that at O(log n) truncated multiplications. Convolutions run on int64
arrays while the accumulated dot products provably fit, and fall back to
exact big-integer schoolbook beyond that. A memoized recursive enumerator
doubles as an independent oracle at small scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .modring import PrimePowerModulus, Residue, binomial_mod

__all__ = [
    "ScaleGuardError",
    "CompSumSpec",
    "s_spec",
    "r_spec",
    "comp_sum",
    "comp_sum_bruteforce",
    "count_solutions",
    "count_solutions_exact",
    "gamma_n",
    "beta_n",
    "BRUTEFORCE_TARGET_CAP",
]

BRUTEFORCE_TARGET_CAP = 60


class ScaleGuardError(ValueError):
    """Brute-force enumeration refused: target too large."""


@dataclass(frozen=True)
class CompSumSpec:
    """One composition sum: n unit parts summing to target = m * p**r.

    With upper_bound = p**r each part stays strictly below p**r (the
    bounded family, nonempty only for m <= n - 1); with upper_bound = None
    parts are free (the family appearing at target m*p and in the lifted
    congruences). An explicit target decoupled from m * p**r is accepted
    for oracle-style evaluations at arbitrary sums.
    """

    n: int
    m: int
    p: int
    r: int = 1
    upper_bound: int | None = None
    target: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one part")
        if self.m < 1:
            raise ValueError(f"multiplier must be >= 1, got {self.m}")
        if self.r < 1:
            raise ValueError(f"exponent must be >= 1, got {self.r}")
        if self.upper_bound is not None and self.upper_bound != self.p**self.r:
            raise ValueError("the only supported part bound is p**r")
        if self.target is None:
            object.__setattr__(self, "target", self.m * self.p**self.r)
        elif self.target < 1:
            raise ValueError(f"target must be >= 1, got {self.target}")


def s_spec(n: int, m: int, p: int, r: int = 1) -> CompSumSpec:
    """Spec with every part strictly below p**r."""
    return CompSumSpec(n=n, m=m, p=p, r=r, upper_bound=p**r)


def r_spec(n: int, m: int, p: int, r: int = 1) -> CompSumSpec:
    """Spec with unbounded parts."""
    return CompSumSpec(n=n, m=m, p=p, r=r)


def _fits_int64(mod: int, length: int) -> bool:
    # every convolution cell is a sum of <= length products of values < mod
    return (mod - 1) ** 2 * length < 2**63


def _schoolbook_mul(a: list[int], b: list[int], N: int, mod: int) -> list[int]:
    out = [0] * (N + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        top = min(len(b) - 1, N - i)
        for j in range(top + 1):
            if b[j]:
                out[i + j] += ai * b[j]
    return [v % mod for v in out]


def _power_coefficient(base: list[int], n: int, N: int, mod: int) -> int:
    """Coefficient of x**N in (sum_l base[l] x**l)**n, all arithmetic mod mod."""
    if _fits_int64(mod, N + 1):
        cur = np.asarray(base, dtype=np.int64)

        def mul(u, v):
            return np.convolve(u, v)[: N + 1] % mod

    else:
        cur = list(base)

        def mul(u, v):
            return _schoolbook_mul(u, v, N, mod)

    acc = None
    e = n
    while e:
        if e & 1:
            acc = cur if acc is None else mul(acc, cur)
        e >>= 1
        if e:
            cur = mul(cur, cur)
    return int(acc[N])


def comp_sum(spec: CompSumSpec, modulus: PrimePowerModulus | None = None) -> Residue:
    """Sum of 1/(l_1 * ... * l_n) over the admissible compositions, as a residue.

    Evaluated mod p**spec.r unless an explicit modulus (same prime, any
    exponent) is supplied. Empty sums return 0, not an error: they are
    legitimate corner cases (e.g. a single part equal to m * p**r).
    """
    M = modulus if modulus is not None else PrimePowerModulus(spec.p, spec.r)
    if M.p != spec.p:
        raise ValueError(f"evaluation modulus prime {M.p} != spec prime {spec.p}")
    N = spec.target
    if N < spec.n:
        return M.residue(0)
    mod = M.modulus
    limit = N - spec.n + 1
    if spec.upper_bound is not None:
        limit = min(limit, spec.upper_bound - 1)
    base = [0] * (N + 1)
    for l in range(1, limit + 1):
        if l % spec.p:
            base[l] = pow(l, -1, mod)
    return M.residue(_power_coefficient(base, spec.n, N, mod))


def comp_sum_bruteforce(spec: CompSumSpec, modulus: PrimePowerModulus | None = None) -> Residue:
    """Independent oracle for comp_sum: recursive enumeration by first part.

    Shares suffix subtrees through a memo table, never touching the
    convolution path. Guarded to targets <= BRUTEFORCE_TARGET_CAP.
    """
    M = modulus if modulus is not None else PrimePowerModulus(spec.p, spec.r)
    if M.p != spec.p:
        raise ValueError(f"evaluation modulus prime {M.p} != spec prime {spec.p}")
    N = spec.target
    if N > BRUTEFORCE_TARGET_CAP:
        raise ScaleGuardError(f"brute force capped at target {BRUTEFORCE_TARGET_CAP}, got {N}")
    mod = M.modulus
    p = spec.p
    limit = N if spec.upper_bound is None else min(N, spec.upper_bound - 1)
    memo: dict[tuple[int, int], int] = {}

    def walk(parts_left: int, remaining: int) -> int:
        if parts_left == 0:
            return 1 if remaining == 0 else 0
        key = (parts_left, remaining)
        if key not in memo:
            acc = 0
            for l in range(1, min(limit, remaining - parts_left + 1) + 1):
                if l % p:
                    acc += pow(l, -1, mod) * walk(parts_left - 1, remaining - l)
            memo[key] = acc % mod
        return memo[key]

    return M.residue(walk(spec.n, N))


def count_solutions_exact(a: int, m: int, n: int, p: int) -> int:
    """Number of integer solutions of x_1 + ... + x_n = m*p - a, 0 <= x_i < p.

    Inclusion-exclusion over how many coordinates overflow p, with exact
    integer binomials.
    """
    if n < 1:
        raise ValueError("need at least one coordinate")
    target = m * p - a
    if target < 0:
        return 0
    total = 0
    for i in range(min(n, target // p) + 1):
        total += (-1) ** i * comb(n, i) * comb(n + target - i * p - 1, n - 1)
    return total


def count_solutions(a: int, m: int, n: int, p: int, modulus: PrimePowerModulus) -> Residue:
    """count_solutions_exact reduced into the given modulus."""
    return modulus.residue(count_solutions_exact(a, m, n, p))


def gamma_n(a: int, n: int) -> Fraction:
    """(-1)**(a-1) / (a * C(n-1, a)), for 1 <= a <= n-1."""
    if not 1 <= a <= n - 1:
        raise ValueError(f"a must be in 1..{n - 1}, got {a}")
    return Fraction((-1) ** (a - 1), a * comb(n - 1, a))


def beta_n(a: int, b: int, n: int, M: PrimePowerModulus) -> Residue:
    """C(b*p - a + n - 1, n - 1) mod p**r."""
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    return binomial_mod(b * M.p - a + n - 1, n - 1, M)
