"""Half-canonical classes on hyperelliptic curves and their monodromy.

A genus-g hyperelliptic curve has r = 2g + 2 branch points x_1..x_r; the last
one plays the role of x_inf.  Every half-canonical class is
sum_{i in S} x_i + m x_inf with S a subset of {1..r-1}, |S| + m = g - 1 and
|S| <= g, using 2(x_i - x_j) ~ 0 and sum_i (x_i - x_inf) ~ 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb, lcm
from typing import Sequence

from .groups import group_order
from .perm import Permutation, Raw, mul, raw_cycles
from .spin import lifting_invariant, w_invariant

EVEN = "even"
ODD = "odd"
MAX_R = 20


def _check_r(r: int) -> int:
    if r % 2 or r < 6:
        raise ValueError("r must be even and >= 6")
    if r > MAX_R:
        raise ValueError(f"r > {MAX_R} is refused (2^(2g) classes)")
    return (r - 2) // 2


@dataclass(frozen=True, order=True)
class HalfCanClass:
    r: int
    subset: frozenset
    m: int

    def __post_init__(self):
        g = _check_r(self.r)
        object.__setattr__(self, "subset", frozenset(self.subset))
        if any(not 1 <= i < self.r for i in self.subset):
            raise ValueError("subset must lie in 1..r-1")
        if len(self.subset) + self.m != g - 1:
            raise ValueError("|S| + m must equal g - 1")
        if len(self.subset) > g:
            raise ValueError("class is not in canonical form (|S| > g)")

    @property
    def genus(self) -> int:
        return (self.r - 2) // 2

    @property
    def s(self) -> int:
        return len(self.subset)

    def vector(self) -> tuple[int, ...]:
        """Raw multiplicities over x_1..x_r."""
        v = [1 if i in self.subset else 0 for i in range(1, self.r)]
        return tuple(v) + (self.m,)

    def sort_key(self):
        return (self.s, sorted(self.subset))

    def __str__(self) -> str:
        body = " + ".join(f"x{i}" for i in sorted(self.subset))
        tail = f"{self.m}*xinf"
        return f"{body} + {tail}" if body else tail


def normalize(v: Sequence[int]) -> HalfCanClass:
    """Reduce a multiplicity vector over x_1..x_r (last = x_inf) to canonical form."""
    r = len(v)
    g = _check_r(r)
    if sum(v) != g - 1:
        raise ValueError(f"degree {sum(v)} is not g - 1 = {g - 1}")
    v = list(v)

    def reduce():
        for i in range(r - 1):
            q = v[i] - (v[i] % 2)
            v[i] -= q
            v[r - 1] += q

    reduce()
    if sum(v[: r - 1]) > g:
        for i in range(r - 1):
            v[i] -= 1
        v[r - 1] += r - 1
        reduce()
    subset = frozenset(i + 1 for i in range(r - 1) if v[i])
    return HalfCanClass(r, subset, v[r - 1])


def act(i: int, c: HalfCanClass) -> HalfCanClass:
    """Image of c under the branch-point transposition (i i+1)."""
    if not 1 <= i < c.r:
        raise ValueError(f"transposition index must be in 1..{c.r - 1}")
    v = list(c.vector())
    v[i - 1], v[i] = v[i], v[i - 1]
    return normalize(v)


def all_classes(r: int) -> list[HalfCanClass]:
    g = _check_r(r)
    out = []
    for s in range(g + 1):
        for sub in combinations(range(1, r), s):
            out.append(HalfCanClass(r, frozenset(sub), g - 1 - s))
    return out


def parity(c: HalfCanClass) -> str:
    """Parity from the s-grouping of canonical classes.

    s = g is even.  For odd g, s = 0 is even iff (g+1)/2 is even.  Otherwise
    s and s-1 pair into blocks b = g - 2k (b the member congruent to g mod 2),
    and the block is odd iff k is odd.
    """
    g, s = c.genus, c.s
    if s == g:
        return EVEN
    if g % 2 == 1 and s == 0:
        return EVEN if ((g + 1) // 2) % 2 == 0 else ODD
    b = s if (s - g) % 2 == 0 else s - 1
    k = (g - b) // 2
    return ODD if k % 2 else EVEN


@dataclass(frozen=True)
class HypOrbit:
    s_values: tuple[int, ...]
    size: int
    parity: str

    @property
    def s_block(self) -> str:
        return ",".join(map(str, self.s_values))

    def to_json(self) -> dict:
        return {"s_block": self.s_block, "size": self.size, "parity": self.parity}


@dataclass(frozen=True)
class HypOrbitReport:
    r: int
    orbits: tuple[HypOrbit, ...]

    @property
    def even(self) -> int:
        return sum(o.size for o in self.orbits if o.parity == EVEN)

    @property
    def odd(self) -> int:
        return sum(o.size for o in self.orbits if o.parity == ODD)

    def sizes(self) -> list[int]:
        return sorted(o.size for o in self.orbits)

    def to_json(self) -> dict:
        return {"r": self.r, "orbits": [o.to_json() for o in self.orbits], "even": self.even, "odd": self.odd}

    @classmethod
    def from_json(cls, data: dict) -> "HypOrbitReport":
        orbits = tuple(
            HypOrbit(tuple(int(x) for x in o["s_block"].split(",")), o["size"], o["parity"]) for o in data["orbits"]
        )
        return cls(data["r"], orbits)


def expected_orbit_sizes(r: int) -> list[int]:
    """Closed-form orbit sizes.

    s = g is an orbit of size C(r-1, g).  For s = g-2, g-4, ... >= 0 the
    classes with s and s+1 form one orbit of size C(r-1, s) + C(r-1, s+1).
    When g is odd the single class with s = 0 is left fixed.
    """
    g = _check_r(r)
    sizes = [comb(r - 1, g)]
    s = g - 2
    while s >= 0:
        sizes.append(comb(r - 1, s) + comb(r - 1, s + 1))
        s -= 2
    if g % 2 == 1:
        sizes.append(1)
    return sorted(sizes)


def hyp_orbits(r: int) -> HypOrbitReport:
    """Orbits of the branch-point permutations on half-canonical classes."""
    g = _check_r(r)
    classes = all_classes(r)
    if len(classes) != 4**g:
        raise AssertionError("class count is not 2^(2g)")
    seen: set[HalfCanClass] = set()
    orbits = []
    for c in sorted(classes, key=HalfCanClass.sort_key):
        if c in seen:
            continue
        orb = {c}
        queue = deque([c])
        while queue:
            x = queue.popleft()
            for i in range(1, r):
                y = act(i, x)
                if y not in orb:
                    orb.add(y)
                    queue.append(y)
        seen |= orb
        pars = {parity(x) for x in orb}
        if len(pars) != 1:
            raise AssertionError(f"parity is not constant on the orbit of {c}")
        orbits.append(HypOrbit(tuple(sorted({x.s for x in orb})), len(orb), pars.pop()))
    orbits.sort(key=lambda o: o.s_values)
    report = HypOrbitReport(r, tuple(orbits))
    if report.sizes() != expected_orbit_sizes(r):
        raise AssertionError(f"orbit sizes {report.sizes()} differ from {expected_orbit_sizes(r)}")
    if (report.even, report.odd) != (2 ** (2 * g - 1) + 2 ** (g - 1), 2 ** (2 * g - 1) - 2 ** (g - 1)):
        raise AssertionError("even/odd totals differ from 2^(2g-1) +- 2^(g-1)")
    return report


# --------------------------------------------------------------------------
# component parity

ABSOLUTE_REP = "absolute"
INNER_REGULAR = "inner"


def regular_w(g: Raw, group_size: int) -> int:
    """w of the right-regular image of g: group_size/o cycles of length o."""
    o = 1
    for c in raw_cycles(g):
        o = lcm(o, len(c))
    if o % 2 == 0:
        raise ValueError("w needs odd-order entries")
    return ((group_size // o) * ((o * o - 1) // 8)) % 2


def right_regular_image(gens: Sequence[Raw], elems: Sequence[Raw]) -> list[Raw]:
    """Each generator as a permutation of ``elems`` by right multiplication."""
    pos = {x: i for i, x in enumerate(elems)}
    return [tuple(pos[mul(x, g)] for x in elems) for g in gens]


def component_theta_parity(t, representation: str = ABSOLUTE_REP) -> str:
    """even iff s(t) * (-1)^(sum w) = +1, with w taken in the chosen representation."""
    raws = [g.raw if isinstance(g, Permutation) else tuple(g) for g in t]
    s = lifting_invariant(raws)
    if representation == ABSOLUTE_REP:
        w = sum(w_invariant(g) for g in raws)
    elif representation == INNER_REGULAR:
        size = group_order(raws, len(raws[0]))
        w = sum(regular_w(g, size) for g in raws)
    else:
        raise ValueError(f"unknown representation {representation!r}")
    return EVEN if s * (-1) ** w == 1 else ODD


__all__ = [
    "EVEN",
    "ODD",
    "HalfCanClass",
    "HypOrbit",
    "HypOrbitReport",
    "act",
    "all_classes",
    "component_theta_parity",
    "expected_orbit_sizes",
    "hyp_orbits",
    "normalize",
    "parity",
    "regular_w",
    "right_regular_image",
]
