"""Sparse Clifford algebra over Q with generators e_1..e_n, e_i^2 = -1.

An element is a dict from basis bitmask (bit i-1 set means e_i is present,
indices increasing) to a nonzero Fraction.  Only what the spin lifts need.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import BudgetExceeded

DEFAULT_TERM_CAP = 2**20


_SIGN_CACHE: dict[tuple[int, int], int] = {}


def _popcount(x: int) -> int:
    return bin(x).count("1")


def blade_sign(a: int, b: int) -> int:
    """Sign of e_A e_B = sign * e_{A xor B}."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += _popcount(x & b)
        x >>= 1
    swaps += _popcount(a & b)  # each shared generator squares to -1
    return -1 if swaps & 1 else 1


class CliffordElement:
    __slots__ = ("terms", "n")

    def __init__(self, terms: Mapping[int, Fraction | int], n: int):
        self.n = n
        self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}

    @classmethod
    def scalar(cls, value, n: int) -> "CliffordElement":
        return cls({0: value}, n)

    @classmethod
    def generator(cls, i: int, n: int) -> "CliffordElement":
        """e_i for 1-based i."""
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range 1..{n}")
        return cls({1 << (i - 1): 1}, n)

    def mul(self, other: "CliffordElement", term_cap: int = DEFAULT_TERM_CAP) -> "CliffordElement":
        if self.n != other.n:
            raise ValueError("Clifford degree mismatch")
        out: dict[int, Fraction] = {}
        sign = _SIGN_CACHE
        other_items = list(other.terms.items())
        for a, ca in self.terms.items():
            for b, cb in other_items:
                key = (a, b)
                sg = sign.get(key)
                if sg is None:
                    sg = sign[key] = blade_sign(a, b)
                m = a ^ b
                v = ca * cb
                out[m] = out.get(m, 0) + (v if sg > 0 else -v)
            if len(out) > term_cap:
                raise BudgetExceeded("Clifford terms", len(out), term_cap)
        res = CliffordElement.__new__(CliffordElement)
        res.n = self.n
        res.terms = {m: c for m, c in out.items() if c != 0}
        return res

    __mul__ = mul

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return CliffordElement(out, self.n)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement({m: -c for m, c in self.terms.items()}, self.n)

    def scale(self, k) -> "CliffordElement":
        return CliffordElement({m: c * k for m, c in self.terms.items()}, self.n)

    def reverse(self) -> "CliffordElement":
        out = {}
        for m, c in self.terms.items():
            k = _popcount(m)
            out[m] = -c if (k * (k - 1) // 2) % 2 else c
        return CliffordElement(out, self.n)

    def inverse(self) -> "CliffordElement":
        """Inverse of a versor, via x * reverse(x) being a scalar."""
        rev = self.reverse()
        norm = self * rev
        s = norm.scalar_value()
        if s is None or s == 0:
            raise ValueError("element is not an invertible versor")
        return rev.scale(Fraction(1) / s)

    def pow(self, k: int, term_cap: int = DEFAULT_TERM_CAP) -> "CliffordElement":
        if k < 0:
            return self.inverse().pow(-k, term_cap)
        result = CliffordElement.scalar(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result.mul(base, term_cap)
            k >>= 1
            if k:
                base = base.mul(base, term_cap)
        return result

    def is_even(self) -> bool:
        return all(_popcount(m) % 2 == 0 for m in self.terms)

    def scalar_value(self) -> Fraction | None:
        """The coefficient of 1 if the element is a pure scalar, else None."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {0}:
            return self.terms[0]
        return None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CliffordElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            idx = [str(i + 1) for i in range(self.n) if m >> i & 1]
            parts.append(f"{self.terms[m]}" + ("*e" + "".join(idx) if idx else ""))
        return " + ".join(parts)


def dyadic_parts(x: CliffordElement) -> tuple[dict[int, int], int]:
    """Write x as N / 2^k with integer coefficients N (x must be dyadic)."""
    k = 0
    for c in x.terms.values():
        d = c.denominator
        e = d.bit_length() - 1
        if d != 1 << e:
            raise ValueError("coefficients are not dyadic")
        k = max(k, e)
    return {m: int(c * (1 << k)) for m, c in x.terms.items()}, k


def int_mul(a: dict[int, int], b: dict[int, int], term_cap: int = DEFAULT_TERM_CAP) -> dict[int, int]:
    """Product of integer-coefficient elements given as mask -> int dicts."""
    out: dict[int, int] = {}
    sign = _SIGN_CACHE
    b_items = list(b.items())
    for ma, ca in a.items():
        for mb, cb in b_items:
            key = (ma, mb)
            sg = sign.get(key)
            if sg is None:
                sg = sign[key] = blade_sign(ma, mb)
            m = ma ^ mb
            out[m] = out.get(m, 0) + (ca * cb if sg > 0 else -ca * cb)
        if len(out) > term_cap:
            raise BudgetExceeded("Clifford terms", len(out), term_cap)
    return {m: c for m, c in out.items() if c}
