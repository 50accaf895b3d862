"""Spin lifting invariant of product-one tuples of odd-order permutations.

Two engines: exact products of odd-order lifts in the Clifford algebra, and the
cycle-length formula (-1)^(sum w) valid for genus-zero tuples.  They are
cross-checked in the tests.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .clifford import DEFAULT_TERM_CAP, CliffordElement, dyadic_parts, int_mul
from .errors import InvariantViolation
from .groups import is_transitive
from .nielsen import genus_of_tuple
from .perm import Permutation, Raw, mul, raw_cycles, raw_identity, raw_order, raw_sign


def _raw(g) -> Raw:
    return g.raw if isinstance(g, Permutation) else tuple(g)


def _transposition_lift(i: int, j: int, n: int) -> CliffordElement:
    """e_i - e_j for the 0-based points i, j."""
    return CliffordElement({1 << i: 1, 1 << j: -1}, n)


@lru_cache(maxsize=100_000)
def _lift_even_raw(g: Raw, term_cap: int) -> CliffordElement:
    n = len(g)
    if raw_sign(g) != 1:
        raise ValueError("lift_even needs an even permutation")
    acc = CliffordElement.scalar(1, n)
    k2 = 0
    for cyc in raw_cycles(g):
        a = cyc[0]
        for b in cyc[1:]:
            acc = acc.mul(_transposition_lift(a, b, n), term_cap)
            k2 += 1
    return acc.scale(Fraction(1, 2 ** (k2 // 2)))


def lift_even(g, term_cap: int = DEFAULT_TERM_CAP) -> CliffordElement:
    """A lift of an even permutation to Spin_n, determined up to sign.

    A cycle (a1 ... al) is written (a1 a2)(a1 a3)...(a1 al); each transposition
    (i j) lifts to e_i - e_j, and the product of 2k of them is scaled by 2^-k.
    """
    return _lift_even_raw(_raw(g), term_cap)


@lru_cache(maxsize=100_000)
def _odd_lift_raw(g: Raw, term_cap: int) -> CliffordElement:
    m = raw_order(g)
    if m % 2 == 0:
        raise ValueError("odd_lift needs an odd-order permutation")
    h = _lift_even_raw(g, term_cap)
    s = h.pow(m, term_cap).scalar_value()
    if s not in (1, -1):
        raise InvariantViolation(f"lift^order is not +-1 (got {s})")
    return h if s == 1 else -h


def odd_lift(g, term_cap: int = DEFAULT_TERM_CAP) -> CliffordElement:
    """The unique lift of odd order (same order as g)."""
    return _odd_lift_raw(_raw(g), term_cap)


def lifting_invariant(t: Sequence, term_cap: int = DEFAULT_TERM_CAP) -> int:
    """Product of the odd-order lifts of a product-one tuple; +1 or -1."""
    raws = [_raw(g) for g in t]
    if not raws:
        return 1
    n = len(raws[0])
    acc = raw_identity(n)
    for g in raws:
        if raw_order(g) % 2 == 0:
            raise ValueError("lifting invariant needs odd-order entries")
        acc = mul(acc, g)
    if acc != raw_identity(n):
        raise ValueError("lifting invariant needs a product-one tuple")
    # multiply integer numerators, then divide by the accumulated power of 2
    acc_terms: dict[int, int] = {0: 1}
    k = 0
    for g in raws:
        num, e = _odd_lift_dyadic(g, term_cap)
        acc_terms = int_mul(acc_terms, num, term_cap)
        k += e
    if set(acc_terms) != {0} or abs(acc_terms[0]) != 1 << k:
        x = CliffordElement({m: Fraction(c, 1 << k) for m, c in acc_terms.items()}, n)
        raise InvariantViolation(f"product of odd lifts is not +-1: {x!r}")
    return 1 if acc_terms[0] > 0 else -1


@lru_cache(maxsize=100_000)
def _odd_lift_dyadic(g: Raw, term_cap: int) -> tuple[dict[int, int], int]:
    return dyadic_parts(_odd_lift_raw(g, term_cap))


def w_invariant(g) -> int:
    """Sum of (l^2 - 1)/8 over the cycle lengths l, mod 2."""
    raw = _raw(g)
    if raw_order(raw) % 2 == 0:
        raise ValueError("w is defined for odd-order permutations")
    return sum((len(c) ** 2 - 1) // 8 for c in raw_cycles(raw)) % 2


def w_of_cycle_lengths(lengths: Sequence[int]) -> int:
    if any(l % 2 == 0 for l in lengths):  # noqa: E741
        raise ValueError("w is defined for odd-order permutations")
    return sum((l * l - 1) // 8 for l in lengths) % 2  # noqa: E741


def serre_invariant(t: Sequence) -> int:
    """(-1)^(sum of w) for a transitive genus-zero product-one tuple."""
    raws = [_raw(g) for g in t]
    n = len(raws[0])
    acc = raw_identity(n)
    for g in raws:
        acc = mul(acc, g)
    if acc != raw_identity(n):
        raise ValueError("serre_invariant needs a product-one tuple")
    if not is_transitive(raws, n):
        raise ValueError("serre_invariant needs a transitive tuple")
    if genus_of_tuple(raws) != 0:
        raise ValueError("the cycle-length formula is only asserted in genus 0")
    return -1 if sum(w_invariant(g) for g in raws) % 2 else 1


def _cycle(n: int, pts: Sequence[int]) -> Raw:
    return Permutation.from_cycles([tuple(pts)], n).raw


def coalescing_tuple(k: int) -> tuple[Raw, ...]:
    """((1 ... k)^-1, (1 2 3), (1 4 5), ..., (1 k-1 k)) in degree k."""
    if k < 3 or k % 2 == 0:
        raise ValueError("k must be odd and >= 3")
    long_inv = _cycle(k, list(range(k, 0, -1)))
    return (long_inv,) + tuple(_cycle(k, (1, j, j + 1)) for j in range(2, k, 2))


def coalescing_unit(k: int, term_cap: int = DEFAULT_TERM_CAP) -> int:
    """Lifting invariant of ``coalescing_tuple(k)``, checked against its closed form."""
    s = lifting_invariant(coalescing_tuple(k), term_cap)
    expect = -1 if ((k * k - 1) // 8 + (k - 1) // 2) % 2 else 1
    if s != expect:
        raise InvariantViolation(f"coalescing unit for k={k}: computed {s}, expected {expect}")
    return s


__all__ = [
    "coalescing_tuple",
    "coalescing_unit",
    "lift_even",
    "lifting_invariant",
    "odd_lift",
    "serre_invariant",
    "w_invariant",
    "w_of_cycle_lengths",
]
