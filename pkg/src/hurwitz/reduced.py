"""Reduced Nielsen classes for r = 4.

Classes are taken modulo Q'' = <sh^2, q1 q3^-1>.  On the quotient, gamma_0 =
q1 q2, gamma_1 = q1 q2 q3 and gamma_inf = q2 act with gamma_0 gamma_1
gamma_inf = 1, and they are the branch cycles of the reduced cover of the
j-line.  Cusp orbits are gamma_inf orbits; their widths and the fixed points
of gamma_0 and gamma_1 give the genus of each component.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from .braid import BraidWord, word_raw
from .config import RunConfig
from .errors import InvariantViolation
from .nielsen import (
    INNER,
    NielsenSpec,
    NielsenTuple,
    RawTuple,
    canonicalizer,
    conjugator_kind,
    enumerate_nielsen,
)
from .perm import Permutation, parse_perm, render
from .spin import lifting_invariant

SH2 = BraidWord(((1, 1), (2, 1), (3, 1)) * 2)
Q13 = BraidWord(((1, 1), (3, -1)))
GAMMA_WORDS = {
    "gamma0": BraidWord(((1, 1), (2, 1))),
    "gamma1": BraidWord(((1, 1), (2, 1), (3, 1))),
    "gammainf": BraidWord(((2, 1),)),
}


def _cycles_of(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = perm[j]
            out.append(cyc)
    return out


def _orbits_of(perms: Sequence[Sequence[int]], size: int) -> list[list[int]]:
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, j in enumerate(p):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(size):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


@dataclass(frozen=True)
class ReducedClass:
    id: int
    members: tuple[RawTuple, ...]

    @property
    def representative(self) -> RawTuple:
        return self.members[0]


@dataclass(frozen=True)
class CuspOrbit:
    label: str
    members: tuple[int, ...]  # reduced-class ids, in gamma_inf cycle order

    @property
    def width(self) -> int:
        return len(self.members)


@dataclass
class ComponentReport4:
    component: int
    degree: int
    fixed_gamma0: int
    fixed_gamma1: int
    cusp_widths: list[int]
    indices: tuple[int, int, int]  # (gamma0, gamma1, gammainf)
    genus: int
    invariant: int | None
    cusps: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "component": self.component,
            "degree": self.degree,
            "fixed": {"gamma0": self.fixed_gamma0, "gamma1": self.fixed_gamma1},
            "cusp_widths": self.cusp_widths,
            "indices": {"gamma0": self.indices[0], "gamma1": self.indices[1], "gammainf": self.indices[2]},
            "genus": self.genus,
            "invariant": self.invariant,
            "cusps": self.cusps,
        }

    @classmethod
    def from_json(cls, d: dict) -> "ComponentReport4":
        ind = d["indices"]
        return cls(d["component"], d["degree"], d["fixed"]["gamma0"], d["fixed"]["gamma1"], list(d["cusp_widths"]),
                   (ind["gamma0"], ind["gamma1"], ind["gammainf"]), d["genus"], d["invariant"], list(d["cusps"]))


class ReducedSystem:
    """All r = 4 reduced-class data for one spec and equivalence."""

    def __init__(self, spec: NielsenSpec, equivalence: str = INNER, config: RunConfig | None = None,
                 fixture_labels: bool = False):
        if spec.r != 4:
            raise ValueError("reduced classes are implemented for r = 4 only")
        self.spec = spec
        self.equivalence = equivalence
        self.fixture_dir = config.fixture_dir if config else None
        self.canon = canonicalizer(spec.n, conjugator_kind(spec, equivalence))
        self.classes: list[RawTuple] = enumerate_nielsen(spec, equivalence, config).classes
        self.index = {t: i for i, t in enumerate(self.classes)}
        sh2 = self._act(SH2)
        q13 = self._act(Q13)
        self.qpp_generators = (sh2, q13)
        orbs = _orbits_of([sh2, q13], len(self.classes))
        self.reduced = [ReducedClass(k, tuple(self.classes[i] for i in orb)) for k, orb in enumerate(orbs)]
        self.red_of = [0] * len(self.classes)
        for k, orb in enumerate(orbs):
            for i in orb:
                self.red_of[i] = k
        self.gamma = {name: self._induced(self._act(w)) for name, w in GAMMA_WORDS.items()}
        self._check_relations()
        comp_orbs = _orbits_of([self.gamma["gamma0"], self.gamma["gamma1"]], len(self.reduced))
        self.component_of = [0] * len(self.reduced)
        self._component_invariant = []
        odd = all(lab.cycle_type.order() % 2 for lab in spec.classes.labels)
        comp_keys = []
        for orb in comp_orbs:
            inv_val = lifting_invariant(self.reduced[orb[0]].representative) if odd else None
            comp_keys.append(((-inv_val if inv_val is not None else 0), orb[0], orb, inv_val))
        comp_keys.sort()
        for c, (_, _, orb, inv_val) in enumerate(comp_keys):
            for k in orb:
                self.component_of[k] = c
            self._component_invariant.append(inv_val)
        self.cusps = self._cusp_orbits(fixture_labels)

    # -- construction helpers

    def _act(self, w: BraidWord) -> list[int]:
        out = []
        for t in self.classes:
            u = self.canon(word_raw(t, w))
            j = self.index.get(u)
            if j is None:
                raise InvariantViolation("braid word left the enumerated class")
            out.append(j)
        return out

    def _induced(self, perm: list[int]) -> list[int]:
        out = [-1] * len(self.reduced)
        for i, j in enumerate(perm):
            a, b = self.red_of[i], self.red_of[j]
            if out[a] == -1:
                out[a] = b
            elif out[a] != b:
                raise InvariantViolation("gamma action is not well defined on reduced classes")
        return out

    def _check_relations(self):
        g0, g1, gi = self.gamma["gamma0"], self.gamma["gamma1"], self.gamma["gammainf"]
        for k in range(len(self.reduced)):
            if g0[g0[g0[k]]] != k:
                raise InvariantViolation("gamma0^3 is not the identity on reduced classes")
            if g1[g1[k]] != k:
                raise InvariantViolation("gamma1^2 is not the identity on reduced classes")
            if gi[g1[g0[k]]] != k:
                raise InvariantViolation("gamma0 gamma1 gammainf is not the identity")

    def _cusp_orbits(self, fixture_labels: bool) -> list[CuspOrbit]:
        gi = self.gamma["gammainf"]
        cycles = _cycles_of(gi)
        # order within each component by least representative
        cycles.sort(key=lambda c: (self.component_of[c[0]], min(self.reduced[k].representative for k in c)))
        labels = _fixture_label_map(self, cycles) if fixture_labels else None
        out = []
        per_comp: dict[int, int] = {}
        for c in cycles:
            comp = self.component_of[c[0]]
            per_comp[comp] = per_comp.get(comp, 0) + 1
            if labels is not None:
                label = labels[tuple(c)]
            else:
                label = f"O_{{{comp + 1},{per_comp[comp]}}}^{len(c)}"
            out.append(CuspOrbit(label, tuple(c)))
        if labels is not None:
            out.sort(key=lambda o: (self.component_of[o.members[0]], _label_sort_key(o.label)))
        return out

    # -- queries

    def reduced_of(self, t: NielsenTuple | RawTuple) -> ReducedClass:
        raw = t.raw if isinstance(t, NielsenTuple) else t
        return self.reduced[self.red_of[self.index[self.canon(raw)]]]

    def gamma_action(self, c: ReducedClass, which: str) -> ReducedClass:
        key = {"γ0": "gamma0", "γ1": "gamma1", "γ∞": "gammainf", "gamma_inf": "gammainf"}.get(which, which)
        return self.reduced[self.gamma[key][c.id]]

    def qpp_orbit_lengths(self) -> list[int]:
        return sorted(len(c.members) for c in self.reduced)

    def cusp_of(self, k: int) -> CuspOrbit:
        for o in self.cusps:
            if k in o.members:
                return o
        raise KeyError(k)

    def incidence(self, which: str = "gamma1") -> list[list[int]]:
        """entry (O, O') = |O intersect (O')gamma|, over all cusp orbits."""
        g = self.gamma[which]
        sets = [set(o.members) for o in self.cusps]
        return [[len(a & {g[k] for k in b}) for b in sets] for a in sets]

    def components(self) -> list[ComponentReport4]:
        g0, g1 = self.gamma["gamma0"], self.gamma["gamma1"]
        out = []
        for c in range(len(self._component_invariant)):
            ks = [k for k in range(len(self.reduced)) if self.component_of[k] == c]
            deg = len(ks)
            fix0 = sum(1 for k in ks if g0[k] == k)
            fix1 = sum(1 for k in ks if g1[k] == k)
            cusps = [o for o in self.cusps if self.component_of[o.members[0]] == c]
            widths = [o.width for o in cusps]
            ind_inf = sum(w - 1 for w in widths)
            # direct index: degree minus number of cycles on the component
            direct0 = deg - len([cy for cy in _cycles_of(g0) if self.component_of[cy[0]] == c])
            direct1 = deg - len([cy for cy in _cycles_of(g1) if self.component_of[cy[0]] == c])
            if (deg - fix1) % 2 == 0 and (2 * (deg - fix0)) % 3 == 0:
                ind1 = (deg - fix1) // 2
                ind0 = 2 * (deg - fix0) // 3
                if (ind0, ind1) != (direct0, direct1):
                    raise InvariantViolation("fixed-point index formula disagrees with cycle count")
            else:
                ind0, ind1 = direct0, direct1
            total = ind0 + ind1 + ind_inf
            if total % 2:
                raise InvariantViolation("odd index sum on a reduced component")
            genus = total // 2 - deg + 1
            if genus < 0:
                raise InvariantViolation("negative genus on a reduced component")
            out.append(ComponentReport4(c + 1, deg, fix0, fix1, widths, (ind0, ind1, ind_inf), genus,
                                        self._component_invariant[c], [o.label for o in cusps]))
        return out


def _label_sort_key(label: str):
    m = re.match(r"O_\{(\d+),(\d+)\}", label)
    return (int(m.group(1)), int(m.group(2))) if m else (10**9, 0)


# --------------------------------------------------------------------------
# cusp-label aliases for (A4, C_{+-3^2})


def _parse_fixture(text: str) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, _, body = line.partition("=")
        out[name.strip()] = [s.strip() for s in body.split(";")]
    return out


def load_label_fixture(fixture_dir: str | None = None) -> dict[str, list[str]]:
    name = "a4_pm3_labels.txt"
    if fixture_dir:
        return _parse_fixture((Path(fixture_dir) / name).read_text())
    return _parse_fixture(resources.files("hurwitz.data").joinpath(name).read_text())


def _fixture_label_map(system: ReducedSystem, cycles: list[list[int]]) -> dict[tuple, str]:
    spec = system.spec
    if str(spec.group) != "A4" or str(spec.classes) != "+3^2 -3^2":
        raise ValueError("fixture labels exist only for (A4, +3^2 -3^2)")
    fix = load_label_fixture(system.fixture_dir)
    anchor: dict[tuple, str] = {}  # cusp members -> label stem
    plain = []
    for label, entries in fix.items():
        if entries == ["*"]:
            plain.append(label)
            continue
        t = tuple(parse_perm(s, 4).raw for s in entries)
        k = system.red_of[system.index[system.canon(t)]]
        cyc = next(c for c in cycles if k in c)
        anchor[tuple(cyc)] = label
    out = {}
    rest = []
    for c in cycles:
        if tuple(c) in anchor:
            out[tuple(c)] = f"{anchor[tuple(c)]}^{len(c)}"
        else:
            rest.append(c)
    # unanchored orbits take the remaining labels in canonical order
    rest.sort(key=lambda c: min(system.reduced[k].representative for k in c))
    if len(rest) != len(plain):
        raise InvariantViolation("fixture label count does not match unanchored cusp orbits")
    for c, label in zip(rest, sorted(plain, key=_label_sort_key)):
        out[tuple(c)] = f"{label}^{len(c)}"
    return out


# --------------------------------------------------------------------------
# public functions


def reduced_classes(spec: NielsenSpec, equivalence: str = INNER, config: RunConfig | None = None) -> list[ReducedClass]:
    return ReducedSystem(spec, equivalence, config).reduced


def gamma_action(system: ReducedSystem, c: ReducedClass, which: str) -> ReducedClass:
    return system.gamma_action(c, which)


@dataclass
class ShIncidence:
    labels: list[str]
    widths: list[int]
    matrix: list[list[int]]
    blocks: list[list[int]]  # index lists, one per component
    components: list[ComponentReport4]

    def block(self, b: int) -> list[list[int]]:
        idx = self.blocks[b]
        return [[self.matrix[i][j] for j in idx] for i in idx]

    def to_json(self) -> dict:
        return {
            "orbits": [{"label": l, "width": w} for l, w in zip(self.labels, self.widths)],  # noqa: E741
            "matrix": self.matrix,
            "blocks": self.blocks,
            "components": [c.to_json() for c in self.components],
        }

    @classmethod
    def from_json(cls, d: dict) -> "ShIncidence":
        return cls([o["label"] for o in d["orbits"]], [o["width"] for o in d["orbits"]], d["matrix"], d["blocks"],
                   [ComponentReport4.from_json(c) for c in d["components"]])

    def to_text(self) -> str:
        lines = []
        for b, idx in enumerate(self.blocks):
            comp = self.components[b]
            sign = {1: "+", -1: "-", None: str(b + 1)}[comp.invariant]
            head = [f"ni{sign} orbit"] + [self.labels[j] for j in idx]
            rows = [[self.labels[i]] + [str(self.matrix[i][j]) for j in idx] for i in idx]
            widths = [max(len(r[k]) for r in [head] + rows) for k in range(len(head))]
            fmt = lambda r: " | ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip()  # noqa: E731
            lines.append(fmt(head))
            lines.append("-+-".join("-" * w for w in widths))
            lines.extend(fmt(r) for r in rows)
            lines.append("")
        lines.append(" ".join(f"g{_sign_name(c.invariant, c.component)}={c.genus}" for c in self.components))
        return "\n".join(lines) + "\n"


def _sign_name(inv_val: int | None, k: int) -> str:
    return {1: "+", -1: "-"}.get(inv_val, str(k))


def sh_incidence(spec: NielsenSpec, equivalence: str = INNER, config: RunConfig | None = None,
                 fixture_labels: bool = False, system: ReducedSystem | None = None) -> ShIncidence:
    system = system or ReducedSystem(spec, equivalence, config, fixture_labels)
    m1 = system.incidence("gamma1")
    m0 = system.incidence("gamma0")
    if m1 != m0:
        raise InvariantViolation("sh-incidence counts via gamma1 and gamma0 disagree")
    widths = [o.width for o in system.cusps]
    for i, row in enumerate(m1):
        if sum(row) != widths[i]:
            raise InvariantViolation("sh-incidence row sum differs from cusp width")
    blocks = _blocks_from_pattern(m1)
    comp_blocks = []
    for c in range(len(system._component_invariant)):
        comp_blocks.append([i for i, o in enumerate(system.cusps) if system.component_of[o.members[0]] == c])
    if sorted(map(sorted, blocks)) != sorted(map(sorted, comp_blocks)):
        raise InvariantViolation("sh-incidence blocks do not match braid components")
    return ShIncidence([o.label for o in system.cusps], widths, m1, comp_blocks, system.components())


def _blocks_from_pattern(m: list[list[int]]) -> list[list[int]]:
    size = len(m)
    seen = [False] * size
    out = []
    for s in range(size):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(size):
                if not seen[j] and (m[i][j] or m[j][i]):
                    seen[j] = True
                    stack.append(j)
        out.append(sorted(comp))
    return out


def component_genus4(spec: NielsenSpec, equivalence: str = INNER, config: RunConfig | None = None) -> list[ComponentReport4]:
    return ReducedSystem(spec, equivalence, config).components()


def render_tuple(t: RawTuple) -> str:
    return "(" + ", ".join(render(Permutation.from_raw(g)) for g in t) + ")"


__all__ = [
    "ComponentReport4",
    "CuspOrbit",
    "ReducedClass",
    "ReducedSystem",
    "ShIncidence",
    "component_genus4",
    "gamma_action",
    "reduced_classes",
    "sh_incidence",
]
