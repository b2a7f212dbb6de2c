"""Multiple harmonic sums and distinct-index unordered sums mod p**r.

The nested sums are evaluated directly as residues through a single
O(N * depth) sweep; exact rationals overflow fast at weight >= 7, so they
appear only in tests as oracles. The empty composition acts as the unit
value 1, a convention used internally by the recursions.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Sequence

from .modring import NonUnitError, PrimePowerModulus, Residue

__all__ = [
    "Composition",
    "mhs",
    "mhs_restricted",
    "unordered_sum",
    "unordered_sum_bruteforce",
]


@dataclass(frozen=True)
class Composition:
    """Ordered tuple of positive integer exponents (s_1, ..., s_d)."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("composition needs at least one part")
        if any(s < 1 for s in self.parts):
            raise ValueError(f"composition parts must be >= 1: {self.parts}")

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)


def _parts(s: Composition | Sequence[int]) -> tuple[int, ...]:
    if isinstance(s, Composition):
        return s.parts
    parts = tuple(s)
    return Composition(parts).parts if parts else ()


def _sweep(N: int, parts: tuple[int, ...], M: PrimePowerModulus, restricted: bool) -> int:
    """Shared dynamic program: dp[j] accumulates the depth-(d-j) suffix sums."""
    mod = M.modulus
    p = M.p
    d = len(parts)
    if d == 0:
        return 1 % mod
    dp = [0] * d + [1]
    for k in range(1, N + 1):
        if k % p == 0:
            if restricted:
                continue
            raise NonUnitError(f"index {k} is divisible by {p}; use the restricted sum")
        invk = pow(k, -1, mod)
        pw: dict[int, int] = {}
        for j in range(d):
            e = parts[j]
            if e not in pw:
                pw[e] = pow(invk, e, mod)
            dp[j] = (dp[j] + pw[e] * dp[j + 1]) % mod
    return dp[0]


def mhs(N: int, s: Composition | Sequence[int], M: PrimePowerModulus) -> Residue:
    """H_N(s): sum over N >= k_1 > ... > k_d > 0 of prod k_i**(-s_i), mod p**r.

    The sum is unrestricted, so every index up to N must be a unit;
    NonUnitError is raised otherwise (use mhs_restricted when N >= p).
    """
    if N < 0:
        raise ValueError(f"negative range bound {N}")
    return M.residue(_sweep(N, _parts(s), M, restricted=False))


def mhs_restricted(N: int, s: Composition | Sequence[int], M: PrimePowerModulus) -> Residue:
    """Same nested sum with every index restricted to non-multiples of p."""
    if N < 0:
        raise ValueError(f"negative range bound {N}")
    return M.residue(_sweep(N, _parts(s), M, restricted=True))


def unordered_sum(b: int, alphas: Composition | Sequence[int], M: PrimePowerModulus) -> Residue:
    """U_b(a_1, ..., a_n): sum over pairwise-distinct unit indexes
    0 < l_i < b*p of prod l_i**(-a_i), mod p**r.

    Each unordered set of n distinct indexes contributes once per
    assignment of exponents to indexes, so the value equals the sum of
    descending-chain sums over the distinct rearrangements of the
    exponents, weighted by the product of multiplicity factorials. The
    result is invariant under permutations of the exponents.
    """
    parts = _parts(alphas)
    n = len(parts)
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    if n == 0:
        return M.residue(1 % M.modulus)
    if M.p <= n:
        raise ValueError(f"need p > depth (got p={M.p}, depth={n})")
    mod = M.modulus
    weight = 1
    for c in Counter(parts).values():
        weight *= factorial(c)
    acc = 0
    for chain in sorted(set(permutations(parts))):
        acc = (acc + _sweep(b * M.p - 1, chain, M, restricted=True)) % mod
    return M.residue(acc * (weight % mod) % mod)


def unordered_sum_bruteforce(
    b: int, alphas: Composition | Sequence[int], M: PrimePowerModulus
) -> Residue:
    """Direct nested-loop evaluation of the same sum, for depth <= 3."""
    parts = _parts(alphas)
    n = len(parts)
    if n > 3:
        raise ValueError("brute-force unordered sums handle at most 3 indexes")
    if n == 0:
        return M.residue(1 % M.modulus)
    mod = M.modulus
    units = [l for l in range(1, b * M.p) if l % M.p]
    pows = [{l: pow(l, -e, mod) for l in units} for e in parts]
    acc = 0
    for tup in product(units, repeat=n):
        if len(set(tup)) != n:
            continue
        term = 1
        for i, l in enumerate(tup):
            term = term * pows[i][l] % mod
        acc = (acc + term) % mod
    return M.residue(acc)
