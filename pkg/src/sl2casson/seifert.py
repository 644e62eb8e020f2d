"""Closed-form SL(2,C) Casson invariants of Seifert fibered homology spheres.

A Seifert fibered homology sphere is determined by pairwise coprime
multiplicities ``a_1, ..., a_n``.  Its invariant is one quarter of the
third elementary symmetric polynomial in ``a_i - 1``; for Brieskorn spheres
(``n = 3``) this is a quarter of the Milnor number.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, prod
from typing import Iterable, Sequence

__all__ = [
    "DomainError",
    "SeifertTuple",
    "SumPiece",
    "extended_gcd",
    "bezout_coefficients",
    "lambda_seifert",
    "milnor_number",
    "euler_top_sum",
    "h1z2_of_surgery",
    "lambda_connected_sum",
]


class DomainError(ValueError):
    """Input lies outside the domain where an invariant formula applies."""


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b)`` and ``g >= 0``."""
    if a and b % a == 0:
        s = 1 if a > 0 else -1
        return abs(a), s, 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def bezout_coefficients(values: Sequence[int]) -> list[int]:
    """Integers ``c`` with ``sum(c_i * values_i) == gcd(values)``."""
    if not values:
        raise ValueError("need at least one value")
    g, coeffs = values[0], [1]
    if g < 0:
        g, coeffs = -g, [-1]
    for v in values[1:]:
        g, x, y = extended_gcd(g, v)
        coeffs = [c * x for c in coeffs] + [y]
    return coeffs


def _check_pairwise_coprime(values: Iterable[int]) -> None:
    values = list(values)
    for i, j in combinations(range(len(values)), 2):
        if gcd(values[i], values[j]) != 1:
            raise DomainError(f"entries {values[i]} and {values[j]} are not coprime")


@dataclass(frozen=True)
class SeifertTuple:
    """Pairwise coprime positive multiplicities of the exceptional fibres.

    The stored order is normalized: entries are sorted, then the (unique)
    even entry, if any, is moved to the front.  Tuples shorter than three are
    padded with 1s, which are inert for every invariant here.
    """

    a: tuple[int, ...]

    def __init__(self, a: Iterable[int]):
        values = [int(v) for v in a]
        if any(v < 1 for v in values):
            raise DomainError(f"multiplicities must be positive, got {values}")
        _check_pairwise_coprime(values)
        values += [1] * (3 - len(values))
        values.sort()
        evens = [v for v in values if v % 2 == 0]
        if evens:
            values.remove(evens[0])
            values.insert(0, evens[0])
        object.__setattr__(self, "a", tuple(values))

    def __iter__(self):
        return iter(self.a)

    def __len__(self) -> int:
        return len(self.a)

    def __getitem__(self, i):
        return self.a[i]

    @property
    def n(self) -> int:
        return len(self.a)

    def seifert_coefficients(self) -> list[int]:
        """Integers ``b_i`` with ``sum_i b_i * prod_{j != i} a_j == 1``.

        Not unique; callers needing a parity normalization adjust them.
        """
        total = prod(self.a)
        return bezout_coefficients([total // ai for ai in self.a])

    def __str__(self) -> str:
        return "Sigma(" + ",".join(map(str, self.a)) + ")"


def _as_tuple(a) -> SeifertTuple:
    return a if isinstance(a, SeifertTuple) else SeifertTuple(a)


def _elementary_symmetric(values: Sequence[int], k: int) -> int:
    # e_k via the product expansion prod(1 + v x)
    e = [1] + [0] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * v
    return e[k]


def lambda_seifert(a) -> Fraction:
    """SL(2,C) Casson invariant of the Seifert fibered homology sphere ``a``.

    >>> lambda_seifert((2, 3, 5))
    Fraction(2, 1)
    >>> lambda_seifert((2, 3, 5, 7))
    Fraction(23, 1)
    """
    st = _as_tuple(a)
    return Fraction(_elementary_symmetric([ai - 1 for ai in st], 3), 4)


def milnor_number(a) -> int:
    """Milnor number ``prod(a_i - 1)`` of the associated singularity."""
    return prod(ai - 1 for ai in _as_tuple(a))


def euler_top_sum(a) -> Fraction:
    """Sum of Euler characteristics over top-dimensional character components.

    Evaluates ``(n-1)(n-2) 2^(n-6) mu(a)``.
    """
    st = _as_tuple(a)
    n = st.n
    return Fraction((n - 1) * (n - 2) * milnor_number(st)) * Fraction(2) ** (n - 6)


def h1z2_of_surgery(p: int) -> int:
    """Order of ``H_1(K(p/q); Z/2)`` for surgery on a knot in a homology sphere."""
    if p == 0:
        raise DomainError("0-surgery is not a rational homology sphere")
    return 2 if p % 2 == 0 else 1


@dataclass(frozen=True)
class SumPiece:
    """A rational homology sphere summand: its invariant and ``|H_1(.; Z/2)|``."""

    lam: Fraction
    h1z2: int = 1

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam < 0:
            raise DomainError("the invariant is never negative")
        if self.h1z2 < 1:
            raise DomainError("|H_1(;Z/2)| is a positive integer")

    @classmethod
    def from_seifert(cls, a) -> SumPiece:
        return cls(lambda_seifert(a), 1)


def _sum_two(x: SumPiece, y: SumPiece) -> SumPiece:
    return SumPiece(y.h1z2 * x.lam + x.h1z2 * y.lam, x.h1z2 * y.h1z2)


def lambda_connected_sum(pieces: Sequence[SumPiece]) -> Fraction:
    """Invariant of a connected sum, folding the two-summand formula left to right."""
    if not pieces:
        raise ValueError("connected sum of no pieces")
    return reduce(_sum_two, pieces).lam
