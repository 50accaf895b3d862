"""Nielsen classes: tuples in given conjugacy classes with product one that
generate the group.

The enumeration and canonical-form code works on raw tuples (tuples of 0-based
image tables).  ``NielsenTuple`` is the 1-based value wrapper used at the API
boundary.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .config import RunConfig
from .errors import BudgetExceeded, NotRepresentable, ParseError
from .groups import ambient_order, generates, group_order, is_transitive
from .perm import (
    AN,
    SN,
    ClassLabel,
    CycleType,
    Permutation,
    PermutationError,
    Raw,
    class_elements,
    conj,
    inv,
    label_of,
    mul,
    parse_perm,
    raw_centralizer,
    raw_conjugator,
    raw_identity,
    raw_orbit_count,
    raw_sign,
    render,
)

RawTuple = tuple  # tuple of Raw

RAW = "raw"
INNER = "inner"
ABSOLUTE = "absolute"
EQUIVALENCES = (RAW, INNER, ABSOLUTE)


# --------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    degree: int

    def __post_init__(self):
        if self.kind not in (AN, SN):
            raise ValueError(f"group kind must be An or Sn, got {self.kind!r}")
        if self.degree < 3:
            raise ValueError("group degree must be >= 3")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        m = re.fullmatch(r"\s*([AS])_?(\d+)\s*", text)
        if not m:
            raise ParseError(f"group must look like A5 or S6, got {text!r}")
        return cls(AN if m.group(1) == "A" else SN, int(m.group(2)))

    def order(self) -> int:
        return ambient_order(self.kind, self.degree)

    def contains_raw(self, g: Raw) -> bool:
        return len(g) == self.degree and (self.kind == SN or raw_sign(g) == 1)

    def __str__(self) -> str:
        return ("A" if self.kind == AN else "S") + str(self.degree)


_TERM_RE = re.compile(r"(±|\+-|-\+|[+-])?(\d+(?:\.\d+)*)(?:\^(\d+))?")


@dataclass(frozen=True)
class ClassVector:
    """Multiset of conjugacy classes, stored sorted."""

    labels: tuple[ClassLabel, ...]

    def __post_init__(self):
        if not self.labels:
            raise ValueError("empty class vector")
        amb = {(c.ambient, c.degree) for c in self.labels}
        if len(amb) != 1:
            raise ValueError("class labels must share ambient group and degree")
        object.__setattr__(self, "labels", tuple(sorted(self.labels, key=_label_key)))

    @classmethod
    def of(cls, labels: Iterable[ClassLabel]) -> "ClassVector":
        return cls(tuple(labels))

    @classmethod
    def parse(cls, text: str, group: GroupSpec) -> "ClassVector":
        """Grammar: terms like ``3^4``, ``+3^2 -3^2``, ``+5 -5 3^2``.

        A sign is required on classes that split in A_n and refused on the
        rest.  ``±5`` (or ``+-5``) abbreviates ``+5 -5``.  Cycle types with
        several cycles are written with dots, e.g. ``2.2``.
        """
        labels = []
        tokens = text.replace(",", " ").split()
        if not tokens:
            raise ParseError("empty class vector")
        for tok in tokens:
            m = _TERM_RE.fullmatch(tok)
            if not m:
                raise ParseError(f"bad class term {tok!r}")
            sign, body, count = m.group(1), m.group(2), m.group(3)
            parts = tuple(sorted((int(p) for p in body.split(".")), reverse=True))
            k = int(count) if count is not None else 1
            if k < 1:
                raise ParseError(f"class multiplicity must be positive in {tok!r}")
            try:
                ct = CycleType(parts, group.degree)
            except ValueError as e:
                raise ParseError(f"{tok!r}: {e}") from None
            splits = group.kind == AN and ct.splits()
            if sign is None and splits:
                raise ParseError(f"class {body} splits in {group}; write +{body} or -{body}")
            if sign is not None and not splits:
                raise ParseError(f"class {body} does not split in {group}; a sign is not allowed")
            tags = ["+", "-"] if sign in ("±", "+-", "-+") else [sign]
            try:
                for tag in tags:
                    labels.extend([ClassLabel(group.kind, ct, tag)] * k)
            except ValueError as e:
                raise ParseError(f"{tok!r}: {e}") from None
        return cls(tuple(labels))

    @property
    def r(self) -> int:
        return len(self.labels)

    @property
    def degree(self) -> int:
        return self.labels[0].degree

    @property
    def ambient(self) -> str:
        return self.labels[0].ambient

    def counts(self) -> Counter:
        return Counter(self.labels)

    def distinct(self) -> list[ClassLabel]:
        return sorted(set(self.labels), key=_label_key)

    def swapped(self) -> "ClassVector":
        return ClassVector(tuple(c.partner() for c in self.labels))

    def is_swap_invariant(self) -> bool:
        return self.swapped() == self

    def __str__(self) -> str:
        out = []
        for lab in self.distinct():
            k = self.labels.count(lab)
            out.append(str(lab) + (f"^{k}" if k > 1 else ""))
        return " ".join(out)


def _label_key(c: ClassLabel):
    return (tuple(-p for p in c.cycle_type.partition), c.split_tag or "")


def three_cycle_vector(n: int, r: int) -> ClassVector:
    """r copies of the 3-cycle class of A_n (n >= 5, where it does not split)."""
    ct = CycleType((3,), n)
    if ct.splits():
        raise ValueError("3-cycles split in A_n for n <= 4; use signed_three_vector")
    return ClassVector((ClassLabel(AN, ct),) * r)


def signed_three_vector(s1: int, s2: int, n: int = 4) -> ClassVector:
    """s1 copies of C_{+3} and s2 of C_{-3} in A_n for n in {3, 4}."""
    ct = CycleType((3,), n)
    return ClassVector((ClassLabel(AN, ct, "+"),) * s1 + (ClassLabel(AN, ct, "-"),) * s2)


@dataclass(frozen=True)
class NielsenSpec:
    group: GroupSpec
    classes: ClassVector

    def __post_init__(self):
        if self.classes.degree != self.group.degree or self.classes.ambient != self.group.kind:
            raise ValueError(f"class vector {self.classes} does not live in {self.group}")

    @classmethod
    def parse(cls, n: int, classes: str, kind: str = AN) -> "NielsenSpec":
        g = GroupSpec(kind, n)
        return cls(g, ClassVector.parse(classes, g))

    @property
    def n(self) -> int:
        return self.group.degree

    @property
    def r(self) -> int:
        return self.classes.r

    def header(self) -> dict:
        return {"group": str(self.group), "classes": str(self.classes), "r": self.r}

    def __str__(self) -> str:
        return f"({self.group}, {self.classes})"


# --------------------------------------------------------------------------
# tuples


@dataclass(frozen=True)
class NielsenTuple:
    entries: tuple[Permutation, ...]
    spec: NielsenSpec | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        degs = {g.degree for g in self.entries}
        if len(degs) > 1:
            raise PermutationError("tuple entries have different degrees")

    @classmethod
    def from_raw(cls, t: RawTuple, spec: NielsenSpec | None = None) -> "NielsenTuple":
        return cls(tuple(Permutation.from_raw(g) for g in t), spec)

    @classmethod
    def parse(cls, text: str, n: int, spec: NielsenSpec | None = None) -> "NielsenTuple":
        return cls(tuple(parse_perm(s, n) for s in split_tuple_text(text)), spec)

    @property
    def raw(self) -> RawTuple:
        return tuple(g.raw for g in self.entries)

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return self.entries[0].degree

    def product(self) -> Permutation:
        acc = self.entries[0].raw
        for g in self.entries[1:]:
            acc = mul(acc, g.raw)
        return Permutation.from_raw(acc)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def strings(self) -> list[str]:
        return [render(g) for g in self.entries]

    def __str__(self) -> str:
        return "(" + ", ".join(self.strings()) + ")"

    def to_json(self) -> dict:
        out = {"degree": self.degree, "entries": self.strings()}
        if self.spec is not None:
            out.update(self.spec.header())
        return out


def split_tuple_text(text: str) -> list[str]:
    """Split tuple text into entry strings.

    Accepted: a JSON array of cycle strings; entries separated by ``;`` or
    ``|``; or bare juxtaposition, where every top-level parenthesised group is
    one entry (so ``(1 2 3)(3 2 1)`` is a pair).  Inside ``;``/``|`` separated
    entries, juxtaposed cycles are multiplied.
    """
    s = text.strip()
    if s.startswith("["):
        try:
            items = json.loads(s)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad JSON tuple: {e}") from None
        if not isinstance(items, list) or not all(isinstance(x, str) for x in items):
            raise ParseError("JSON tuple must be an array of cycle strings")
        return items
    if ";" in s or "|" in s:
        parts = [p.strip() for p in re.split(r"[;|]", s)]
        if any(p == "" for p in parts):
            raise ParseError("empty entry in tuple text")
        return parts
    # strip one optional outer pair of parentheses around a comma list
    groups = []
    depth = 0
    start = None
    for i, ch in enumerate(s):
        if ch == "(":
            if depth == 0:
                start = i
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses in tuple text")
            if depth == 0:
                groups.append(s[start : i + 1])
        elif depth == 0 and not (ch.isspace() or ch == ","):
            raise ParseError(f"unexpected {ch!r} outside parentheses in tuple text")
    if depth != 0:
        raise ParseError("unbalanced parentheses in tuple text")
    if len(groups) == 1 and "(" in groups[0][1:-1]:
        return split_tuple_text(groups[0][1:-1])
    if not groups:
        raise ParseError("empty tuple")
    return groups


# --------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class Membership:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


PRODUCT = "product-one"
CLASSES = "class-multiset"
GENERATION = "generation"


def is_in_nielsen(t: NielsenTuple | Sequence[Permutation], spec: NielsenSpec) -> Membership:
    """Check product-one, class multiset (in any order) and generation, in that order."""
    entries = tuple(t)
    n = spec.n
    if any(g.degree != n for g in entries):
        raise PermutationError(f"tuple degree does not match {spec.group}")
    raw = tuple(g.raw for g in entries)
    acc = raw_identity(n)
    for g in raw:
        acc = mul(acc, g)
    if acc != raw_identity(n):
        return Membership(False, PRODUCT)
    if len(raw) != spec.r or not all(spec.group.contains_raw(g) for g in raw):
        return Membership(False, CLASSES)
    got = Counter(label_of(g, spec.group.kind) for g in entries)
    if got != spec.classes.counts():
        return Membership(False, CLASSES)
    if not generates(raw, spec.group.kind, n):
        return Membership(False, GENERATION)
    return Membership(True)


def nonempty_mod3(s1: int, s2: int) -> bool:
    """Whether the A_4 class with s1 entries in C_{+3}, s2 in C_{-3} is nonempty."""
    if s1 < 0 or s2 < 0:
        raise ValueError("multiplicities must be non-negative")
    return (s1 - s2) % 3 == 0


# --------------------------------------------------------------------------
# canonical forms


def conjugator_kind(spec: NielsenSpec, equivalence: str) -> str | None:
    """Which ambient group conjugates: None for raw, else An or Sn."""
    if equivalence == RAW:
        return None
    if equivalence == INNER:
        return spec.group.kind
    if equivalence == ABSOLUTE:
        if spec.group.kind == SN or spec.classes.is_swap_invariant():
            return SN
        return AN
    raise ValueError(f"unknown equivalence {equivalence!r}")


class Canonicalizer:
    """Lexicographically least conjugate of a tuple under A_n or S_n.

    The least first entry ``m`` of a conjugate is the least element of the
    conjugacy class of ``g_1``; the conjugators achieving it are ``h0 * c``
    for one aligning ``h0`` and ``c`` in the centralizer of ``m``.  Conjugation
    tables per conjugator are filled lazily.
    """

    def __init__(self, n: int, kind: str | None):
        self.n = n
        self.kind = kind
        self._least: dict[Raw, Raw] = {}
        self._class_size: dict[Raw, int] = {}
        self._conjugators: dict[Raw, list[Raw]] = {}
        self._cent: dict[Raw, tuple[list[Raw], list[Raw]]] = {}
        self._tabs: dict[Raw, dict[Raw, Raw]] = {}
        if kind == SN or kind is None:
            gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
        else:
            gens = [_three(n, k) for k in range(2, n)]
        self._gens = gens

    def least(self, g: Raw) -> Raw:
        m = self._least.get(g)
        if m is None:
            seen = {g}
            frontier = [g]
            while frontier:
                nxt = []
                for x in frontier:
                    for h in self._gens:
                        y = conj(x, h)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            m = min(seen)
            for x in seen:
                self._least[x] = m
            self._class_size[m] = len(seen)
        return m

    def class_size(self, g: Raw) -> int:
        return self._class_size[self.least(g)]

    def _centralizer(self, m: Raw) -> tuple[list[Raw], list[Raw]]:
        c = self._cent.get(m)
        if c is None:
            allc = sorted(raw_centralizer(m))
            c = ([x for x in allc if raw_sign(x) == 1], [x for x in allc if raw_sign(x) == -1])
            self._cent[m] = c
        return c

    def conjugators(self, g: Raw) -> list[Raw]:
        """All h in the conjugating group with conj(g, h) == least(g)."""
        hs = self._conjugators.get(g)
        if hs is None:
            m = self.least(g)
            h0 = raw_conjugator(g, m)
            even, odd = self._centralizer(m)
            if self.kind == AN:
                cs = even if raw_sign(h0) == 1 else odd
            else:
                cs = even + odd
            hs = [mul(h0, c) for c in cs]
            self._conjugators[g] = hs
        return hs

    def stabilizer_size(self, t: RawTuple) -> int:
        return sum(1 for h in self.conjugators(t[0]) if self._apply(t, h) == t) if t else 0

    def _apply(self, t: RawTuple, h: Raw) -> RawTuple:
        tab = self._tabs.get(h)
        if tab is None:
            tab = self._tabs[h] = {}
        out = []
        for x in t:
            y = tab.get(x)
            if y is None:
                y = tab[x] = conj(x, h)
            out.append(y)
        return tuple(out)

    def __call__(self, t: RawTuple) -> RawTuple:
        if self.kind is None or not t:
            return tuple(t)
        best = None
        for h in self.conjugators(t[0]):
            cand = self._apply(t, h)
            if best is None or cand < best:
                best = cand
        return best


def _three(n: int, k: int) -> Raw:
    img = list(range(n))
    img[0], img[1], img[k] = 1, k, 0
    return tuple(img)


@lru_cache(maxsize=64)
def canonicalizer(n: int, kind: str | None) -> Canonicalizer:
    return Canonicalizer(n, kind)


def canonical(t: NielsenTuple, equivalence: str = INNER, spec: NielsenSpec | None = None) -> NielsenTuple:
    """Least tuple (by image tables, left to right) among the conjugates of t."""
    spec = spec or t.spec
    if spec is None:
        raise ValueError("canonical() needs a spec (on the tuple or passed in)")
    canon = canonicalizer(spec.n, conjugator_kind(spec, equivalence))
    return NielsenTuple.from_raw(canon(t.raw), spec)


# --------------------------------------------------------------------------
# enumeration


@dataclass
class Enumeration:
    spec: NielsenSpec
    equivalence: str
    classes: list[RawTuple]
    raw_count: int
    prefixes: int = 0
    candidates: int = 0

    def tuples(self) -> list[NielsenTuple]:
        return [NielsenTuple.from_raw(t, self.spec) for t in self.classes]

    def __len__(self) -> int:
        return len(self.classes)


class _Setup:
    """Per-spec tables shared by the sequential and worker paths."""

    def __init__(self, spec: NielsenSpec, equivalence: str):
        self.spec = spec
        self.n = n = spec.n
        self.r = spec.r
        kind = conjugator_kind(spec, equivalence)
        self.canon = canonicalizer(n, kind)
        labels = spec.classes.distinct()
        self.label_index: dict[Raw, int] = {}
        for i, lab in enumerate(labels):
            for g in class_elements(lab):
                self.label_index[g] = i
        self.universe = sorted(self.label_index)
        self.want = tuple(spec.classes.labels.count(lab) for lab in labels)
        self.all_three = all(lab.cycle_type.partition == (3,) for lab in labels)
        self.order = spec.group.order()
        self.kind = spec.group.kind
        # first entries: one per conjugacy class (under the conjugating group)
        if kind is None:
            self.firsts = list(self.universe)
        else:
            self.firsts = sorted({self.canon.least(g) for g in self.universe})
        self.pairs: dict[Raw, list[tuple[Raw, Raw]]] = {}
        for a in self.universe:
            for b in self.universe:
                self.pairs.setdefault(mul(a, b), []).append((a, b))
        self._gen_cache: dict[frozenset, bool] = {}

    def estimate(self) -> int:
        return len(self.firsts) * len(self.universe) ** max(0, self.r - 3)

    def generates(self, t: RawTuple) -> bool:
        key = frozenset(t)
        hit = self._gen_cache.get(key)
        if hit is None:
            if not is_transitive(t, self.n):
                hit = False
            elif self.kind == AN and self.all_three:
                hit = True
            else:
                hit = group_order(list(key), self.n) == self.order
            if len(self._gen_cache) < 200_000:
                self._gen_cache[key] = hit
        return hit

    def units(self) -> list[RawTuple]:
        """Top-level work items: (g1,) for r == 3, (g1, g2) otherwise."""
        if self.r <= 3:
            return [(m,) for m in self.firsts]
        out = []
        for m in self.firsts:
            for g2 in self.universe:
                if self._fits((m, g2)):
                    out.append((m, g2))
        return out

    def _fits(self, prefix: RawTuple) -> bool:
        c = [0] * len(self.want)
        for g in prefix:
            c[self.label_index[g]] += 1
        return all(x <= w for x, w in zip(c, self.want))

    def run(self, units: Sequence[RawTuple], memory_cap: int) -> tuple[set, Counter, int, int]:
        found: set = set()
        per_first: Counter = Counter()
        prefixes = 0
        candidates = 0
        r = self.r
        want = self.want
        idx = self.label_index
        ident = raw_identity(self.n)
        per_entry = 64 + 8 * r
        for unit in units:
            counts = [0] * len(want)
            acc = ident
            for g in unit:
                counts[idx[g]] += 1
                acc = mul(acc, g)
            stack = [(unit, acc, counts)]
            while stack:
                pre, acc, counts = stack.pop()
                if len(pre) < r - 2:
                    for g in self.universe:
                        i = idx[g]
                        if counts[i] < want[i]:
                            c2 = counts.copy()
                            c2[i] += 1
                            stack.append((pre + (g,), mul(acc, g), c2))
                    continue
                prefixes += 1
                need = inv(acc)
                for a, b in self.pairs.get(need, ()):
                    ia, ib = idx[a], idx[b]
                    counts[ia] += 1
                    counts[ib] += 1
                    ok = tuple(counts) == want
                    counts[ia] -= 1
                    counts[ib] -= 1
                    if not ok:
                        continue
                    t = pre + (a, b)
                    if not self.generates(t):
                        continue
                    candidates += 1
                    per_first[t[0]] += 1
                    found.add(self.canon(t))
                    if len(found) * per_entry > memory_cap:
                        raise BudgetExceeded("canonical-set memory (bytes)", len(found) * per_entry, memory_cap)
        return found, per_first, prefixes, candidates


def _worker(args):
    spec, equivalence, units, memory_cap = args
    setup = _Setup(spec, equivalence)
    return setup.run(units, memory_cap)


def enumerate_nielsen(
    spec: NielsenSpec, equivalence: str = INNER, config: RunConfig | None = None
) -> Enumeration:
    """All classes of ni(G, C) under the equivalence, as sorted canonical raw tuples.

    Entry 1 runs over least class representatives, entries 2..r-2 over the
    union of the listed classes, and the last two entries are looked up from a
    product table.  ``raw_count`` is the size of ni(G, C) itself.
    """
    if equivalence not in EQUIVALENCES:
        raise ValueError(f"unknown equivalence {equivalence!r}")
    config = config or RunConfig()
    if spec.r < 3:
        return Enumeration(spec, equivalence, [], 0)
    setup = _Setup(spec, equivalence)
    est = setup.estimate()
    if est > config.max_prefixes:
        raise BudgetExceeded("candidate prefixes", est, config.max_prefixes)
    units = setup.units()
    if config.workers > 1 and len(units) > 1:
        chunks = [units[i :: config.workers] for i in range(config.workers)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
            results = list(ex.map(_worker, [(spec, equivalence, c, config.memory_cap) for c in chunks]))
    else:
        results = [setup.run(units, config.memory_cap)]
    found: set = set()
    per_first: Counter = Counter()
    prefixes = candidates = 0
    for f, pf, p, c in results:
        found |= f
        per_first.update(pf)
        prefixes += p
        candidates += c
    if setup.canon.kind is None:
        raw_count = candidates
    else:
        raw_count = sum(setup.canon.class_size(m) * k for m, k in per_first.items())
    return Enumeration(spec, equivalence, sorted(found), raw_count, prefixes, candidates)


# --------------------------------------------------------------------------
# explicit representatives


def _cyc(n: int, *pts: int) -> Permutation:
    return Permutation.from_cycles([pts], n)


def hm_rep(gens: Sequence[Permutation]) -> NielsenTuple:
    """Bracket form (g_1, ..., g_u, g_u^-1, ..., g_1^-1); product one by telescoping."""
    gens = tuple(gens)
    return NielsenTuple(gens + tuple(g.inverse() for g in reversed(gens)))


def hm_head(u: int, n: int) -> tuple[Permutation, ...]:
    """g_1 = (1 2 3), g_2 = (1 4 5), ..., g_u = (1 2u 2u+1)."""
    if 2 * u + 1 > n:
        raise NotRepresentable(f"H-M head of length {u} needs degree >= {2 * u + 1}")
    return tuple(_cyc(n, 1, 2 * k, 2 * k + 1) for k in range(1, u + 1))


def _tail(n: int, count: int) -> tuple[Permutation, ...]:
    if count < 0:
        raise NotRepresentable("negative tail length")
    a, b = _cyc(n, 1, 2, 3), _cyc(n, 3, 2, 1)
    return (a, b) * count


def normal_form_rep(n: int, r: int, sign: int) -> NielsenTuple:
    """The explicit tuple in ni(A_n, C_{3^r}) with lifting invariant ``sign``.

    n == 4 has split 3-cycle classes and is handled by ``a4_rep``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if n == 4:
        raise NotRepresentable("degree 4 uses a4_rep (split 3-cycle classes)")
    if n < 5:
        raise NotRepresentable("normal forms need n >= 5")
    if r < n - 1:
        raise NotRepresentable(f"need r >= n - 1 = {n - 1}")
    c = lambda *p: _cyc(n, *p)  # noqa: E731
    nub3 = (c(1, n - 1, n),) * 3
    minus_nub = (c(1, n - 2, n - 1), c(1, n - 1, n), c(1, n, n - 2))
    if r % 2 == 1 and n % 2 == 1:
        head = hm_rep(hm_head((n - 3) // 2, n)).entries
        body = nub3 if sign == 1 else minus_nub
        tail = (r - n) // 2
    elif r % 2 == 1:
        if sign == 1:
            head = hm_rep(hm_head((n - 2) // 2, n)).entries
            body = nub3
            tail = (r - n - 1) // 2
        else:
            head = hm_rep(hm_head((n - 4) // 2, n)).entries
            body = minus_nub
            tail = (r - n + 1) // 2
    elif n % 2 == 1:
        if sign == 1:
            head = hm_rep(hm_head((n - 1) // 2, n)).entries
            body = ()
            tail = (r - n + 1) // 2
        else:
            head = hm_rep(hm_head((n - 3) // 2, n)).entries
            body = (c(1, n - 2, n - 1),) * 2 + (c(1, n - 2, n), c(1, n, n - 1))
            tail = (r - n - 1) // 2
    else:
        if sign == 1:
            head = hm_rep(hm_head((n - 2) // 2, n)).entries
            g = c(1, n - 1, n)
            body = (g, g.inverse())
        else:
            head = hm_rep(hm_head((n - 4) // 2, n)).entries
            body = (c(1, n - 1, n - 2),) * 2 + (c(1, n - 1, n), c(1, n, n - 2))
        tail = (r - n) // 2
    if tail < 0:
        raise NotRepresentable(f"no normal form for n={n}, r={r}, sign={sign:+d}")
    entries = head + body + _tail(n, tail)
    assert len(entries) == r, (n, r, sign, len(entries))
    spec = NielsenSpec(GroupSpec(AN, n), three_cycle_vector(n, r))
    return NielsenTuple(entries, spec)


def a4_rep(r: int, s1: int, s2: int, sign: int) -> NielsenTuple:
    """The explicit A_4 tuple with s1 entries in C_{+3}, s2 in C_{-3}."""
    if s1 + s2 != r:
        raise ValueError("s1 + s2 must equal r")
    if not nonempty_mod3(s1, s2):
        raise NotRepresentable(f"class with s1={s1}, s2={s2} is empty")
    n = 4
    c = lambda *p: _cyc(n, *p)  # noqa: E731
    spec = NielsenSpec(GroupSpec(AN, 4), signed_three_vector(s1, s2))
    g3m = (c(1, 2, 3), c(1, 3, 4), c(1, 4, 2))
    if r == 3:
        if sign == 1:
            raise NotRepresentable("no lifting invariant +1 tuple at r = 3")
        if s1 == 3:
            return NielsenTuple(g3m, spec)
        return _swap_classes(a4_rep(r, s2, s1, sign), spec)
    if r == 4:
        if sign == 1:
            return NielsenTuple((c(1, 3, 4), c(1, 4, 3), c(1, 2, 3), c(1, 3, 2)), spec)
        return NielsenTuple((c(1, 2, 3), c(1, 3, 4), c(1, 2, 4), c(1, 2, 4)), spec)
    if r < 3:
        raise NotRepresentable("r must be >= 3")
    if s1 < 3:
        return _swap_classes(a4_rep(r, s2, s1, sign), spec)
    tail = (c(1, 2, 3),) * (s1 - 3) + (c(3, 2, 1),) * s2
    head = (c(1, 3, 4),) * 3 if sign == 1 else g3m
    return NielsenTuple(head + tail, spec)


def _swap_classes(t: NielsenTuple, spec: NielsenSpec) -> NielsenTuple:
    beta = _cyc(4, 2, 3)
    return NielsenTuple(tuple(g.conjugate(beta) for g in t), spec)


# --------------------------------------------------------------------------
# Riemann-Hurwitz


STANDARD = "standard"
REGULAR = "regular"


def genus_of_class(spec: NielsenSpec, representation: str = STANDARD) -> int:
    """Genus g from 2(N + g - 1) = sum of indices, N the representation degree."""
    if representation == STANDARD:
        deg = spec.n
        total = sum(lab.cycle_type.index() for lab in spec.classes.labels)
    elif representation == REGULAR:
        deg = spec.group.order()
        total = sum(deg - deg // lab.cycle_type.order() for lab in spec.classes.labels)
    else:
        raise ValueError(f"unknown representation {representation!r}")
    two_g = total - 2 * deg + 2
    if two_g < 0 or two_g % 2:
        raise ValueError(f"class {spec.classes} is empty or inconsistent (2g = {two_g})")
    return two_g // 2


def genus_of_tuple(t: Sequence[Raw]) -> int:
    n = len(t[0])
    total = sum(n - raw_orbit_count(g) for g in t)
    two_g = total - 2 * n + 2
    if two_g < 0 or two_g % 2:
        raise ValueError(f"tuple is not a transitive product-one tuple (2g = {two_g})")
    return two_g // 2


__all__ = [
    "ABSOLUTE",
    "INNER",
    "RAW",
    "Canonicalizer",
    "ClassVector",
    "Enumeration",
    "GroupSpec",
    "Membership",
    "NielsenSpec",
    "NielsenTuple",
    "a4_rep",
    "canonical",
    "enumerate_nielsen",
    "genus_of_class",
    "genus_of_tuple",
    "hm_rep",
    "is_in_nielsen",
    "nonempty_mod3",
    "normal_form_rep",
    "split_tuple_text",
    "three_cycle_vector",
    "signed_three_vector",
]
