"""Permutations of {1..n} acting on the right.

Points are 1-based at every public boundary; internally an image table is a
0-based tuple ``img`` with ``img[i]`` the image of point ``i+1`` (minus one).
Products read left to right: ``(i)(g*h) == ((i)g)h``.

The raw helpers at the bottom (``mul``, ``inv``, ``conj``...) work directly on
0-based tuples and are what the enumeration and braid loops use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from itertools import permutations as _iter_perms
from itertools import product as _iter_product
from typing import Iterable, Sequence

Raw = tuple  # 0-based image table

SN = "Sn"
AN = "An"


class PermutationError(ValueError):
    pass


# --------------------------------------------------------------------------
# raw tuple helpers


def mul(a: Raw, b: Raw) -> Raw:
    """a first, then b."""
    return tuple([b[x] for x in a])


def inv(a: Raw) -> Raw:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def conj(g: Raw, h: Raw) -> Raw:
    """Relabel g by h, i.e. h^-1 g h: the point (i)h goes to ((i)g)h."""
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[h[i]] = h[x]
    return tuple(out)


def raw_identity(n: int) -> Raw:
    return tuple(range(n))


def raw_cycles(a: Raw, include_fixed: bool = False) -> list[tuple[int, ...]]:
    """Disjoint cycles (0-based), each starting at its least point, sorted."""
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = a[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = a[j]
        if len(cyc) > 1 or include_fixed:
            out.append(tuple(cyc))
    return out


def raw_cycle_lengths(a: Raw) -> tuple[int, ...]:
    """All cycle lengths including fixed points, sorted descending."""
    return tuple(sorted((len(c) for c in raw_cycles(a, True)), reverse=True))


def raw_sign(a: Raw) -> int:
    s = 0
    for c in raw_cycles(a):
        s += len(c) - 1
    return -1 if s % 2 else 1


def raw_order(a: Raw) -> int:
    o = 1
    for c in raw_cycles(a):
        o = lcm(o, len(c))
    return o


def raw_power(a: Raw, k: int) -> Raw:
    n = len(a)
    if k < 0:
        a = inv(a)
        k = -k
    result = raw_identity(n)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def raw_conjugator(g: Raw, h: Raw) -> Raw | None:
    """Some c in S_n with conj(g, c) == h, by aligning cycles of equal length."""
    cg = raw_cycles(g, True)
    ch = raw_cycles(h, True)
    if sorted(map(len, cg)) != sorted(map(len, ch)):
        return None
    cg.sort(key=len)
    ch.sort(key=len)
    c = [0] * len(g)
    for x, y in zip(cg, ch):
        for p, q in zip(x, y):
            c[p] = q
    return tuple(c)


def raw_centralizer(g: Raw) -> list[Raw]:
    """All elements of the S_n-centralizer of g (cycle permutations x rotations)."""
    n = len(g)
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for c in raw_cycles(g, True):
        by_len.setdefault(len(c), []).append(c)
    choices = []
    for length, cycs in sorted(by_len.items()):
        opts = []
        for perm in _iter_perms(range(len(cycs))):
            for rots in _iter_product(range(length), repeat=len(cycs)):
                pairs = []
                for src, (dst_idx, rot) in enumerate(zip(perm, rots)):
                    a = cycs[src]
                    b = cycs[dst_idx]
                    for t in range(length):
                        pairs.append((a[t], b[(t + rot) % length]))
                opts.append(pairs)
        choices.append(opts)
    out = []
    for combo in _iter_product(*choices):
        c = [0] * n
        for pairs in combo:
            for p, q in pairs:
                c[p] = q
        out.append(tuple(c))
    return out


def splits_in_an(cycle_lengths: Sequence[int]) -> bool:
    """An S_n class splits in A_n iff its full cycle type has distinct odd parts."""
    parts = list(cycle_lengths)
    return all(p % 2 == 1 for p in parts) and len(set(parts)) == len(parts)


def raw_same_class(g: Raw, h: Raw, ambient: str) -> bool:
    c = raw_conjugator(g, h)
    if c is None:
        return False
    if ambient == SN or raw_sign(c) == 1:
        return True
    return not splits_in_an(raw_cycle_lengths(g))


def raw_orbit_count(a: Raw) -> int:
    return len(raw_cycles(a, True))


# --------------------------------------------------------------------------
# public value type


class Permutation:
    """Immutable permutation of {1..n}; ``images[k]`` is the image of k+1."""

    __slots__ = ("_img",)

    def __init__(self, images: Iterable[int], *, check: bool = True):
        img = tuple(int(x) - 1 for x in images)
        if check and sorted(img) != list(range(len(img))):
            raise PermutationError(f"not a bijection of 1..{len(img)}: {tuple(images)}")
        self._img = img

    @classmethod
    def from_raw(cls, img: Raw) -> "Permutation":
        p = cls.__new__(cls)
        p._img = tuple(img)
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls.from_raw(raw_identity(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """Compose the given (1-based) cycles left to right."""
        result = raw_identity(n)
        for cyc in cycles:
            c = list(range(n))
            pts = [int(x) - 1 for x in cyc]
            if len(set(pts)) != len(pts):
                raise PermutationError(f"repeated point in cycle {tuple(cyc)}")
            for x in pts:
                if not 0 <= x < n:
                    raise PermutationError(f"point {x + 1} out of range 1..{n}")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                c[a] = b
            result = mul(result, tuple(c))
        return cls.from_raw(result)

    @property
    def raw(self) -> Raw:
        return self._img

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._img)

    def __call__(self, i: int) -> int:
        return self._img[i - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def inverse(self) -> "Permutation":
        return Permutation.from_raw(inv(self._img))

    def conjugate(self, h: "Permutation") -> "Permutation":
        """h^-1 * self * h."""
        return Permutation.from_raw(conj(self._img, h._img))

    def cycles(self) -> list[tuple[int, ...]]:
        return [tuple(x + 1 for x in c) for c in raw_cycles(self._img)]

    def cycle_type(self) -> "CycleType":
        return CycleType.of(self)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, x in enumerate(self._img) if x != i)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def sign(self) -> int:
        return raw_sign(self._img)

    def order(self) -> int:
        return raw_order(self._img)

    def index(self) -> int:
        return index(self)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Permutation({render(self)!r}, n={self.degree})"


@dataclass(frozen=True, order=True)
class CycleType:
    """Cycle lengths >= 2, descending; fixed points implied by ``degree``."""

    partition: tuple[int, ...]
    degree: int

    def __post_init__(self):
        if any(p < 2 for p in self.partition):
            raise ValueError("cycle type parts must be >= 2")
        if sum(self.partition) > self.degree:
            raise ValueError(f"cycle type {self.partition} does not fit in degree {self.degree}")

    @classmethod
    def of(cls, g: Permutation) -> "CycleType":
        return cls(tuple(p for p in raw_cycle_lengths(g.raw) if p > 1), g.degree)

    @property
    def full(self) -> tuple[int, ...]:
        return self.partition + (1,) * (self.degree - sum(self.partition))

    def index(self) -> int:
        return sum(p - 1 for p in self.partition)

    def order(self) -> int:
        return lcm(1, *self.partition)

    def is_even(self) -> bool:
        return sum(p - 1 for p in self.partition) % 2 == 0

    def splits(self) -> bool:
        return self.is_even() and splits_in_an(self.full)

    def standard_rep(self) -> Permutation:
        """Cycles on consecutive points from 1, longest first: (1 2 3 4 5)(6 7 8)."""
        cycles = []
        start = 1
        for p in self.partition:
            cycles.append(list(range(start, start + p)))
            start += p
        return Permutation.from_cycles(cycles, self.degree)


@dataclass(frozen=True)
class ClassLabel:
    """A conjugacy class of S_n or A_n.

    Split A_n classes carry a tag and a stored representative: the ``+`` class
    contains ``cycle_type.standard_rep()`` (so (1 2 3) is in C_{+3}), the ``-``
    class its conjugate by the transposition of the last two points of the
    first cycle ((1 3 2) for 3-cycles).
    """

    ambient: str
    cycle_type: CycleType
    split_tag: str | None = None

    def __post_init__(self):
        if self.ambient not in (SN, AN):
            raise ValueError(f"ambient must be Sn or An, got {self.ambient!r}")
        if self.ambient == AN and not self.cycle_type.is_even():
            raise ValueError(f"cycle type {self.cycle_type.partition} is odd; not in A_n")
        needs_tag = self.ambient == AN and self.cycle_type.splits()
        if needs_tag and self.split_tag not in ("+", "-"):
            raise ValueError(
                f"class {self.cycle_type.partition} splits in A_{self.cycle_type.degree}; need a +/- tag"
            )
        if not needs_tag and self.split_tag is not None:
            raise ValueError(f"class {self.cycle_type.partition} does not split; sign not allowed")

    @property
    def degree(self) -> int:
        return self.cycle_type.degree

    @property
    def representative(self) -> Permutation:
        rep = self.cycle_type.standard_rep()
        if self.split_tag == "-":
            a = self.cycle_type.partition[0]
            t = Permutation.from_cycles([(a - 1, a)], self.degree)
            rep = rep.conjugate(t)
        return rep

    def partner(self) -> "ClassLabel":
        """The other half of a split class (itself when unsplit)."""
        if self.split_tag is None:
            return self
        return ClassLabel(self.ambient, self.cycle_type, "-" if self.split_tag == "+" else "+")

    def contains(self, g: Permutation) -> bool:
        return self.contains_raw(g.raw)

    def contains_raw(self, g: Raw) -> bool:
        if len(g) != self.degree:
            return False
        if tuple(p for p in raw_cycle_lengths(g) if p > 1) != self.cycle_type.partition:
            return False
        if self.split_tag is None:
            return self.ambient == SN or raw_sign(g) == 1
        return raw_same_class(g, self.representative.raw, AN)

    def size(self) -> int:
        return len(class_elements(self))

    def __str__(self) -> str:
        body = ".".join(map(str, self.cycle_type.partition)) or "1"
        return (self.split_tag or "") + body


@lru_cache(maxsize=None)
def class_elements(label: ClassLabel) -> tuple[Raw, ...]:
    """Every element of the class, sorted by image table."""
    n = label.degree
    rep = label.representative.raw
    if label.ambient == SN or label.split_tag is None:
        gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
        gens.append(tuple(list(range(1, n)) + [0]))
    else:
        gens = [_three_cycle(n, 0, 1, k) for k in range(2, n)]
    seen = {rep}
    frontier = [rep]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                c = conj(g, h)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return tuple(sorted(seen))


def _three_cycle(n: int, a: int, b: int, c: int) -> Raw:
    img = list(range(n))
    img[a], img[b], img[c] = b, c, a
    return tuple(img)


def label_of(g: Permutation, ambient: str) -> ClassLabel:
    ct = g.cycle_type()
    if ambient == AN and ct.splits():
        plus = ClassLabel(AN, ct, "+")
        return plus if plus.contains(g) else plus.partner()
    return ClassLabel(ambient, ct)


# --------------------------------------------------------------------------
# public operations

_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_SEP_RE = re.compile(r"\s*,\s*|\s+")


def parse_cycles(text: str) -> list[list[int]]:
    """Split cycle notation into integer cycles without composing them."""
    s = text.strip()
    if s in ("", "()", "id", "1"):
        return []
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise PermutationError(f"malformed cycle notation near {s[pos:m.start()]!r}")
        body = m.group(1).strip()
        if not body:
            raise PermutationError("empty cycle '()' inside a product")
        try:
            pts = [int(tok) for tok in _SEP_RE.split(body)]
        except ValueError:
            raise PermutationError(f"malformed cycle ({body})") from None
        cycles.append(pts)
        pos = m.end()
    if s[pos:].strip():
        raise PermutationError(f"malformed cycle notation near {s[pos:]!r}")
    return cycles


def parse_perm(text: str, n: int) -> Permutation:
    """Parse "(1 2 3)(2 4)" style notation; cycles compose left to right.

    >>> parse_perm("(1 2)(2 3)", 3).images
    (3, 1, 2)
    """
    if n < 1:
        raise PermutationError("degree must be positive")
    return Permutation.from_cycles(parse_cycles(text), n)


def render(g: Permutation) -> str:
    """Disjoint cycles sorted by least moved point; identity is "()"."""
    cyc = g.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(g: Permutation, h: Permutation) -> Permutation:
    if g.degree != h.degree:
        raise PermutationError(f"degree mismatch: {g.degree} vs {h.degree}")
    return Permutation.from_raw(mul(g.raw, h.raw))


def product(perms: Sequence[Permutation]) -> Permutation:
    if not perms:
        raise PermutationError("empty product has no degree")
    acc = perms[0].raw
    for p in perms[1:]:
        if p.degree != len(acc):
            raise PermutationError("degree mismatch in product")
        acc = mul(acc, p.raw)
    return Permutation.from_raw(acc)


def index(g: Permutation) -> int:
    """n minus the number of orbits of <g>."""
    return g.degree - raw_orbit_count(g.raw)


def sign(g: Permutation) -> int:
    return g.sign()


def order(g: Permutation) -> int:
    return g.order()


def power(g: Permutation, k: int) -> Permutation:
    return Permutation.from_raw(raw_power(g.raw, k))


def same_class(g: Permutation, h: Permutation, ambient: str) -> bool:
    if g.degree != h.degree:
        raise PermutationError("degree mismatch")
    if ambient == AN and (g.sign() != 1 or h.sign() != 1):
        raise PermutationError("same_class in A_n needs even permutations")
    return raw_same_class(g.raw, h.raw, ambient)
