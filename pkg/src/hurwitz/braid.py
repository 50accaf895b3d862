"""Braid (Hurwitz monodromy) action on Nielsen tuples.

q_i with exponent +1 replaces positions (i, i+1) by (g_i g_{i+1} g_i^-1, g_i);
exponent -1 by (g_{i+1}, g_{i+1}^-1 g_i g_{i+1}).  Orbits are computed on
canonical forms, which is sound because the action commutes with
conjugation.
"""

from __future__ import annotations

import re
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .config import RunConfig
from .errors import BudgetExceeded, InvariantViolation, ParseError
from .nielsen import (
    INNER,
    Canonicalizer,
    ClassVector,
    GroupSpec,
    NielsenSpec,
    NielsenTuple,
    RawTuple,
    canonicalizer,
    conjugator_kind,
    enumerate_nielsen,
)
from .perm import Permutation, Raw, conj, inv, mul, parse_perm, raw_cycle_lengths, raw_identity, render
from .spin import lifting_invariant

# --------------------------------------------------------------------------
# words


_LETTER_RE = re.compile(r"q(\d+)(?:\^(-?\d+))?")


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(e)) for i, e in self.letters))
        for i, e in self.letters:
            if i < 1 or e not in (1, -1):
                raise ValueError(f"bad braid letter q{i}^{e}")

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        """``"q1 q3^-1 q2"``; ``q2^3`` expands to three letters; ``""`` or ``1`` is empty."""
        s = text.strip()
        if s in ("", "1", "id"):
            return cls()
        letters = []
        for tok in s.split():
            m = _LETTER_RE.fullmatch(tok)
            if not m:
                raise ParseError(f"bad braid letter {tok!r}")
            i = int(m.group(1))
            k = int(m.group(2)) if m.group(2) is not None else 1
            if i < 1 or k == 0:
                raise ParseError(f"bad braid letter {tok!r}")
            letters.extend([(i, 1 if k > 0 else -1)] * abs(k))
        return cls(tuple(letters))

    @classmethod
    def shift(cls, r: int) -> "BraidWord":
        """sh = q_1 q_2 ... q_{r-1}."""
        return cls(tuple((i, 1) for i in range(1, r)))

    @classmethod
    def hurwitz(cls, r: int) -> "BraidWord":
        """q_1 ... q_{r-1} q_{r-1} ... q_1, which conjugates a tuple by g_1."""
        return cls(tuple((i, 1) for i in range(1, r)) + tuple((i, 1) for i in range(r - 1, 0, -1)))

    @classmethod
    def entry_swap(cls) -> "BraidWord":
        """q_1^-1 q_3: on an H-M rep swaps the first two generators up to conjugation."""
        return cls(((1, -1), (3, 1)))

    @classmethod
    def block_swap(cls, a: int, b: int, start: int = 1) -> "BraidWord":
        """Move a block of ``a`` entries (at ``start``) past the next ``b`` entries.

        If the moved block has product one the other block comes out unchanged.
        """
        letters = []
        for k in range(start + a - 1, start - 1, -1):
            letters.extend((j, 1) for j in range(k, k + b))
        return cls(tuple(letters))

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def max_index(self) -> int:
        return max((i for i, _ in self.letters), default=0)

    def __str__(self) -> str:
        return " ".join(f"q{i}" + ("" if e == 1 else "^-1") for i, e in self.letters)


# --------------------------------------------------------------------------
# moves


def q_raw(t: RawTuple, i: int, e: int) -> RawTuple:
    """Apply q_i^e (1-based i) to a raw tuple."""
    a, b = t[i - 1], t[i]
    if e == 1:
        new = (conj(b, inv(a)), a)
    else:
        new = (b, conj(a, b))
    return t[: i - 1] + new + t[i + 1 :]


def word_raw(t: RawTuple, w: BraidWord) -> RawTuple:
    r = len(t)
    for i, e in w.letters:
        if not 1 <= i < r:
            raise IndexError(f"q{i} not defined on tuples of length {r}")
        t = q_raw(t, i, e)
    return t


def apply_q(t: NielsenTuple, i: int, exponent: int = 1) -> NielsenTuple:
    if not 1 <= i < t.r:
        raise IndexError(f"q{i} not defined on tuples of length {t.r}")
    if exponent not in (1, -1):
        raise ValueError("exponent must be +1 or -1")
    return NielsenTuple.from_raw(q_raw(t.raw, i, exponent), t.spec)


def apply_word(t: NielsenTuple, w: BraidWord | str) -> NielsenTuple:
    if isinstance(w, str):
        w = BraidWord.parse(w)
    return NielsenTuple.from_raw(word_raw(t.raw, w), t.spec)


# --------------------------------------------------------------------------
# relations


@dataclass
class RelationReport:
    checked: int = 0
    failures: list[tuple[str, RawTuple]] = field(default_factory=list)
    hurwitz_moves_raw: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def first_failure(self):
        return self.failures[0] if self.failures else None


def verify_relations(sample: Iterable, canon: Canonicalizer | None = None, max_failures: int = 10) -> RelationReport:
    """Check the braid relations on raw tuples and the Hurwitz word on canonical forms.

    ``canon`` is the inner canonicalizer used for the Hurwitz relation; it is
    built from the first tuple's degree when omitted (conjugation by S_n, which
    is coarser; pass the inner one for A_n classes).
    """
    rep = RelationReport()
    for t in sample:
        t = t.raw if isinstance(t, NielsenTuple) else tuple(t)
        r = len(t)
        if canon is None:
            canon = canonicalizer(len(t[0]), "Sn")
        rep.checked += 1
        for i in range(1, r):
            for j in range(i + 2, r):
                if q_raw(q_raw(t, i, 1), j, 1) != q_raw(q_raw(t, j, 1), i, 1):
                    rep.failures.append((f"far commutation q{i} q{j}", t))
        for i in range(1, r - 1):
            x = q_raw(q_raw(q_raw(t, i + 1, 1), i, 1), i + 1, 1)
            y = q_raw(q_raw(q_raw(t, i, 1), i + 1, 1), i, 1)
            if x != y:
                rep.failures.append((f"braid relation at {i}", t))
        h = word_raw(t, BraidWord.hurwitz(r))
        if h != t:
            rep.hurwitz_moves_raw += 1
        if canon(h) != canon(t):
            rep.failures.append(("Hurwitz relation on inner classes", t))
        if len(rep.failures) >= max_failures:
            break
    return rep


# --------------------------------------------------------------------------
# orbits


def _orbit_states(start: RawTuple, canon: Canonicalizer, max_states: int) -> list[RawTuple]:
    """BFS closure of a canonical tuple under q_1..q_{r-1} (positive letters suffice
    on a finite set).  Returned in visitation order."""
    r = len(start)
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for i in range(1, r):
            u = canon(q_raw(t, i, 1))
            if u not in seen:
                seen.add(u)
                order.append(u)
                queue.append(u)
                if len(seen) > max_states:
                    raise BudgetExceeded("orbit states", len(seen), max_states)
    return order


def _canon_for(spec: NielsenSpec, equivalence: str) -> Canonicalizer:
    return canonicalizer(spec.n, conjugator_kind(spec, equivalence))


def orbit(t: NielsenTuple, equivalence: str = INNER, spec: NielsenSpec | None = None,
          config: RunConfig | None = None) -> frozenset[RawTuple]:
    """The braid orbit of t as a set of canonical raw tuples."""
    spec = spec or t.spec
    if spec is None:
        raise ValueError("orbit() needs a spec")
    config = config or RunConfig()
    canon = _canon_for(spec, equivalence)
    return frozenset(_orbit_states(canon(t.raw), canon, config.max_states))


@dataclass(frozen=True)
class OrbitInfo:
    rep: RawTuple
    size: int
    invariant: int | None

    def to_json(self) -> dict:
        return {
            "rep": [render(Permutation.from_raw(g)) for g in self.rep],
            "size": self.size,
            "invariant": self.invariant,
        }


@dataclass
class OrbitReport:
    spec: NielsenSpec
    equivalence: str
    orbits: list[OrbitInfo]
    raw_size: int
    stats: dict = field(default_factory=dict, compare=False)
    members: list[list[RawTuple]] = field(default_factory=list, compare=False, repr=False)

    @property
    def class_count(self) -> int:
        return sum(o.size for o in self.orbits)

    def invariants(self) -> list[int | None]:
        return [o.invariant for o in self.orbits]

    def partition(self) -> list[frozenset]:
        return [frozenset(m) for m in self.members]

    def to_json(self) -> dict:
        return {
            **self.spec.header(),
            "equivalence": self.equivalence,
            "orbits": [o.to_json() for o in self.orbits],
            "class_count": self.class_count,
            "raw_size": self.raw_size,
            "budget": dict(self.stats),
        }

    @classmethod
    def from_json(cls, data: dict) -> "OrbitReport":
        group = GroupSpec.parse(data["group"])
        spec = NielsenSpec(group, ClassVector.parse(data["classes"], group))
        orbits = [
            OrbitInfo(tuple(parse_perm(s, group.degree).raw for s in o["rep"]), o["size"], o["invariant"])
            for o in data["orbits"]
        ]
        return cls(spec, data["equivalence"], orbits, data["raw_size"], dict(data.get("budget", {})))


def _orbit_sort_key(info: OrbitInfo):
    inv_key = 2 if info.invariant is None else info.invariant
    return (inv_key, info.size, info.rep)


def _odd_order_classes(spec: NielsenSpec) -> bool:
    return all(lab.cycle_type.order() % 2 == 1 for lab in spec.classes.labels)


def orbits_of_class(
    spec: NielsenSpec,
    equivalence: str = INNER,
    config: RunConfig | None = None,
    check_invariant: str = "auto",
    sample_size: int = 200,
) -> OrbitReport:
    """Partition the classes of ni(G, C) into braid orbits.

    Each orbit carries its lifting invariant (when all classes have odd
    order).  ``check_invariant`` controls the constancy check: ``all``,
    ``sample`` (evenly spaced members), ``none``, or ``auto`` (all for n <= 5,
    sample above).  A non-constant invariant raises InvariantViolation.
    """
    config = config or RunConfig()
    t0 = time.perf_counter()
    en = enumerate_nielsen(spec, equivalence, config)
    t1 = time.perf_counter()
    canon = _canon_for(spec, equivalence)
    remaining = set(en.classes)
    if len(remaining) > config.max_states:
        raise BudgetExceeded("orbit states", len(remaining), config.max_states)
    members: list[list[RawTuple]] = []
    for t in en.classes:
        if t not in remaining:
            continue
        orb = _orbit_states(t, canon, config.max_states)
        stray = [u for u in orb if u not in remaining]
        if stray:
            raise InvariantViolation(f"braid move left the enumerated class: {stray[0]}")
        remaining.difference_update(orb)
        members.append(sorted(orb))
    t2 = time.perf_counter()
    odd = _odd_order_classes(spec)
    mode = check_invariant
    if mode == "auto":
        mode = "all" if spec.n <= 5 else "sample"
    infos = []
    for mem in members:
        inv_val = None
        if odd:
            inv_val = lifting_invariant(mem[0])
            if mode == "all":
                check = mem
            elif mode == "sample":
                step = max(1, len(mem) // sample_size)
                check = mem[::step]
            else:
                check = []
            for u in check:
                if lifting_invariant(u) != inv_val:
                    raise InvariantViolation(f"lifting invariant not constant on the orbit of {mem[0]}")
        infos.append(OrbitInfo(mem[0], len(mem), inv_val))
    order = sorted(range(len(infos)), key=lambda k: _orbit_sort_key(infos[k]))
    t3 = time.perf_counter()
    stats = {
        "prefixes": en.prefixes,
        "candidates": en.candidates,
        "states": len(en.classes),
        "enumerate_s": round(t1 - t0, 3),
        "orbits_s": round(t2 - t1, 3),
        "invariant_s": round(t3 - t2, 3),
        "invariant_check": mode if odd else "n/a",
    }
    return OrbitReport(spec, equivalence, [infos[k] for k in order], en.raw_count, stats, [members[k] for k in order])


# --------------------------------------------------------------------------
# witnesses


def connect(a: NielsenTuple, b: NielsenTuple, equivalence: str = INNER, spec: NielsenSpec | None = None,
            max_states: int = 2_000_000) -> BraidWord | None:
    """A braid word taking a to b (up to the equivalence), or None if they lie in
    different orbits.  Bidirectional BFS with both letter signs; the word is
    replayed before it is returned."""
    spec = spec or a.spec or b.spec
    if spec is None:
        raise ValueError("connect() needs a spec")
    canon = _canon_for(spec, equivalence)
    ca, cb = canon(a.raw), canon(b.raw)
    r = len(ca)
    if ca == cb:
        return BraidWord()
    letters = [(i, e) for i in range(1, r) for e in (1, -1)]
    fwd = {ca: None}
    bwd = {cb: None}
    qf, qb = [ca], [cb]
    meet = None
    while qf and qb and meet is None:
        side_f = len(qf) <= len(qb)
        frontier, par, other = (qf, fwd, bwd) if side_f else (qb, bwd, fwd)
        nxt = []
        for t in frontier:
            for i, e in letters:
                u = canon(q_raw(t, i, e))
                if u in par:
                    continue
                par[u] = (t, (i, e))
                if u in other:
                    meet = u
                    break
                nxt.append(u)
            if meet is not None:
                break
        if len(fwd) + len(bwd) > max_states:
            raise BudgetExceeded("connect states", len(fwd) + len(bwd), max_states)
        if side_f:
            qf = nxt
        else:
            qb = nxt
    if meet is None:
        return None
    head = []
    x = meet
    while fwd[x] is not None:
        x, letter = fwd[x]
        head.append(letter)
    head.reverse()
    tail = []
    x = meet
    while bwd[x] is not None:
        x, (i, e) = bwd[x]
        tail.append((i, -e))
    w = BraidWord(tuple(head + tail))
    if canon(word_raw(a.raw, w)) != cb:
        raise InvariantViolation("connect: witness word failed replay")
    return w


def disappearing_sequence(t: NielsenTuple | Sequence, point: int) -> tuple[int, ...]:
    """Shortest (then lexicographically least) j_1 < ... < j_k with g_{j_1} moving
    ``point`` and g_{j_1} ... g_{j_k} fixing it.  Indices are 1-based."""
    raws = [g.raw if isinstance(g, Permutation) else tuple(g) for g in t]
    p = point - 1
    movers = [j for j, g in enumerate(raws) if g[p] != p]
    if not movers:
        raise ValueError(f"no entry moves {point}")
    n = len(raws[0])
    for k in range(2, len(raws) + 1):
        for js in combinations(range(len(raws)), k):
            if raws[js[0]][p] == p:
                continue
            acc = raw_identity(n)
            for j in js:
                acc = mul(acc, raws[j])
            if acc[p] == p:
                return tuple(j + 1 for j in js)
    raise InvariantViolation("no disappearing sequence; tuple is not product-one")


def has_short_disappearing(t: Sequence[Raw], length: int = 2) -> bool:
    """Some point has a disappearing sequence of the given length or shorter."""
    n = len(t[0])
    for p in range(n):
        if any(g[p] != p for g in t):
            try:
                if len(disappearing_sequence(t, p + 1)) <= length:
                    return True
            except InvariantViolation:
                pass
    return False


PAIR_TYPES = ("inverse", "overlap2-chain", "equal", "disjoint", "overlap2-double", "overlap1")


def pair_type(g: Permutation, h: Permutation) -> str:
    """Type of a pair of 3-cycles, read off the overlap and the product."""
    three = lambda x: tuple(p for p in raw_cycle_lengths(x.raw) if p > 1) == (3,)  # noqa: E731
    if not (three(g) and three(h)):
        raise ValueError("pair_type needs two 3-cycles")
    if g == h:
        return "equal"
    if g == h.inverse():
        return "inverse"
    k = len(g.support() & h.support())
    if k == 0:
        return "disjoint"
    if k == 1:
        return "overlap1"
    prod = tuple(p for p in raw_cycle_lengths(mul(g.raw, h.raw)) if p > 1)
    return "overlap2-chain" if prod == (3,) else "overlap2-double"


def coalescing_witness(t: NielsenTuple, equivalence: str = INNER, spec: NielsenSpec | None = None,
                       max_states: int = 2_000_000) -> tuple[BraidWord, RawTuple] | None:
    """Shortest braid word bringing t to a tuple whose first two entries are
    mutually inverse (so the tuple coalesces to length r - 2).  Returns the
    word and the reached canonical tuple, replay-checked."""
    spec = spec or t.spec
    canon = _canon_for(spec, equivalence)
    start = canon(t.raw)
    r = len(start)
    par = {start: None}
    queue = deque([start])
    found = None
    while queue:
        x = queue.popleft()
        if mul(x[0], x[1]) == raw_identity(len(x[0])):
            found = x
            break
        for i in range(1, r):
            for e in (1, -1):
                u = canon(q_raw(x, i, e))
                if u not in par:
                    par[u] = (x, (i, e))
                    queue.append(u)
        if len(par) > max_states:
            raise BudgetExceeded("coalescing search states", len(par), max_states)
    if found is None:
        return None
    letters = []
    x = found
    while par[x] is not None:
        x, letter = par[x]
        letters.append(letter)
    w = BraidWord(tuple(reversed(letters)))
    end = word_raw(t.raw, w)
    if canon(end) != found or mul(end[0], end[1]) != raw_identity(len(end[0])):
        raise InvariantViolation("coalescing witness failed replay")
    return w, found


__all__ = [
    "BraidWord",
    "OrbitInfo",
    "OrbitReport",
    "PAIR_TYPES",
    "RelationReport",
    "apply_q",
    "apply_word",
    "coalescing_witness",
    "connect",
    "disappearing_sequence",
    "has_short_disappearing",
    "orbit",
    "orbits_of_class",
    "pair_type",
    "q_raw",
    "verify_relations",
    "word_raw",
]
