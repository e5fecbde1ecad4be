"""Generalized binomial coefficients, LCM profiles, and basis expansions.

The quantity ``lcm_profile(m, t)`` is the least common multiple of all
products of at most m pairwise distinct positive integers <= t.  It controls
the denominators of the coefficients that rewrite a high generalized
binomial (a choose t) in the basis (a choose 0), ..., (a choose m-1) on a
set A of m integers; those expansion coefficients are what keep the
valuations of shifted sparse polynomials decaying slowly.

Everything here is exact: integer arithmetic plus fraction-free elimination
for the expansion solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .arith import _int_ord, is_prime


@dataclass(frozen=True)
class LcmProfile:
    m: int
    t: int
    value: int

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("lcm profile value must be positive")


@dataclass(frozen=True)
class BinomialExpansion:
    """Coefficients writing (a choose t) in the basis (a choose j), j < m.

    The reconstruction identity holds exactly at every a in A.
    """

    support: tuple[int, ...]
    t: int
    coefficients: tuple[Fraction, ...]


def _primes_up_to(t: int) -> list[int]:
    return [p for p in range(2, t + 1) if is_prime(p)]


def lcm_profile(m: int, t: int) -> LcmProfile:
    """Greedy per-prime evaluation of the lcm over distinct-factor products.

    For each prime p <= t the exponent is the largest total p-valuation
    achievable by at most m pairwise distinct integers in [1, t]; picking the
    m largest valuations independently per prime attains it.
    """
    if m < 0 or t < 0:
        raise ValueError("lcm profile arguments must be nonnegative")
    if m == 0 or t == 0:
        return LcmProfile(m, t, 1)
    value = 1
    for p in _primes_up_to(t):
        vals = sorted((_int_ord(k, p) for k in range(1, t + 1)), reverse=True)
        value *= p ** sum(vals[:m])
    return LcmProfile(m, t, value)


def lcm_profile_bruteforce(m: int, t: int) -> int:
    """Reference implementation: lcm over all distinct-factor products."""
    if m == 0 or t == 0:
        return 1
    out = 1
    for size in range(1, min(m, t) + 1):
        for combo in combinations(range(1, t + 1), size):
            out = math.lcm(out, math.prod(combo))
    return out


def gen_binomial(a: int, t: int) -> Fraction:
    """(a choose t) = prod_{i<t} (a-i)/(t-i); integer-valued for integer a."""
    if t < 0:
        raise ValueError("lower index must be nonnegative")
    result = Fraction(1)
    for i in range(t):
        result *= Fraction(a - i, t - i)
    return result


def expansion_coeffs(support: Sequence[int], t: int) -> BinomialExpansion:
    """Solve for the coefficients expanding (a choose t) over a in support.

    For t < m the answer is the Kronecker vector.  Otherwise the m x m
    integer system with entries (a choose j) is solved by fraction-free
    elimination; it is invertible because the binomial basis polynomials
    have degree < m and the support points are distinct.
    """
    a_sorted = tuple(sorted(support))
    m = len(a_sorted)
    if m == 0:
        raise ValueError("expansion needs a nonempty support")
    if len(set(a_sorted)) != m:
        raise ValueError("support elements must be distinct")
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t < m:
        coeffs = tuple(Fraction(1 if j == t else 0) for j in range(m))
        return BinomialExpansion(a_sorted, t, coeffs)
    from .linalg import solve_integer_bareiss

    rows = [[int(gen_binomial(a, j)) for j in range(m)] for a in a_sorted]
    rhs = [int(gen_binomial(a, t)) for a in a_sorted]
    coeffs = solve_integer_bareiss(rows, rhs)
    expansion = BinomialExpansion(a_sorted, t, tuple(coeffs))
    _check_reconstruction(expansion)
    return expansion


def _check_reconstruction(e: BinomialExpansion) -> None:
    for a in e.support:
        lhs = gen_binomial(a, e.t)
        rhs = sum(
            (c * gen_binomial(a, j) for j, c in enumerate(e.coefficients)),
            Fraction(0),
        )
        if lhs != rhs:
            raise ArithmeticError(f"expansion reconstruction failed at a={a}")
