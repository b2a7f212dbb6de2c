"""Bernoulli numbers as exact rationals and as residues mod p.

Convention: the generating series t / (exp(t) - 1), hence B_1 = -1/2.
The other common convention flips that sign, and every congruence in this
package depends on the choice, so it is fixed here once and loudly.

The mod-p recurrence table is the primary evaluator (O(p**2) per prime,
memoized); the exact-rational path exists to cross-check it and to feed
rational constants. Indexes k <= p - 3 are p-integral by von
Staudt-Clausen, which is exactly the range the tables cover.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .modring import PrimePowerModulus, Residue

__all__ = ["PoleError", "EXACT_CAP", "bernoulli_exact", "bernoulli_mod_p"]

EXACT_CAP = 120

_exact: list[Fraction] = [Fraction(1)]


class PoleError(ArithmeticError):
    """B_k has p in its denominator ((p-1) | k), so no mod-p image exists."""


def bernoulli_exact(k: int) -> Fraction:
    """B_k for 0 <= k <= EXACT_CAP, via sum_{j<=n} C(n+1, j) B_j = 0."""
    if not 0 <= k <= EXACT_CAP:
        raise ValueError(f"exact Bernoulli index must be in 0..{EXACT_CAP}, got {k}")
    while len(_exact) <= k:
        n = len(_exact)
        acc = sum(comb(n + 1, j) * _exact[j] for j in range(n))
        _exact.append(Fraction(-acc, n + 1))
    return _exact[k]


def _inverse_table(p: int) -> list[int]:
    # inv[i] = i**-1 mod p for 1 <= i < p
    inv = [0] * p
    if p > 1:
        inv[1] = 1
    for i in range(2, p):
        inv[i] = (p - p // i) * inv[p % i] % p
    return inv


@lru_cache(maxsize=None)
def mod_p_table(p: int) -> tuple[int, ...]:
    """B_0 .. B_{p-3} mod p (the guaranteed p-integral range)."""
    top = max(p - 3, 0)
    inv = _inverse_table(p)
    table = [1 % p]
    for n in range(1, top + 1):
        acc = 0
        c = 1  # C(n+1, j), updated in place
        for j in range(n):
            acc = (acc + c * table[j]) % p
            c = c * (n + 1 - j) % p * inv[j + 1] % p
        table.append(-acc * inv[n + 1] % p)
    return tuple(table)


def bernoulli_mod_p(k: int, p: int) -> Residue:
    """B_k mod p, defined for k = 0, odd k >= 1, and even k <= p - 3.

    Raises PoleError when (p-1) | k for k > 0: those B_k have p in the
    denominator and carry no residue.
    """
    M = PrimePowerModulus(p, 1)
    if k < 0:
        raise ValueError(f"negative Bernoulli index {k}")
    if k > 0 and k % (p - 1) == 0:
        raise PoleError(f"(p-1) | {k}, so B_{k} has no image mod {p}")
    if k == 0:
        return M.residue(1)
    if k == 1:
        return M.residue(Fraction(-1, 2))
    if k % 2 == 1:
        return M.residue(0)
    if k <= p - 3:
        return M.residue(mod_p_table(p)[k])
    raise ValueError(f"even index {k} above p-3 = {p - 3} is outside the table range")
