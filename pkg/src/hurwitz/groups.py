"""Small permutation-group toolkit: orbits, group order, generation tests.

Only what the Nielsen-class generation test needs.  Group order uses a
deterministic Schreier-Sims with explicit transversals.
"""

from __future__ import annotations

from math import factorial
from typing import Iterable, Sequence

from .perm import AN, SN, Raw, inv, mul, raw_cycle_lengths, raw_identity, raw_sign


def orbits(gens: Sequence[Raw], n: int) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, x in enumerate(g):
            a, b = find(i), find(x)
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def is_transitive(gens: Sequence[Raw], n: int) -> bool:
    if n <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def ambient_order(kind: str, n: int) -> int:
    return factorial(n) if kind == SN else max(1, factorial(n) // 2)


def _orbit_transversal(base: int, gens: list[Raw], n: int) -> dict[int, Raw]:
    orb = {base: raw_identity(n)}
    frontier = [base]
    while frontier:
        nxt = []
        for x in frontier:
            ux = orb[x]
            for g in gens:
                y = g[x]
                if y not in orb:
                    orb[y] = mul(ux, g)
                    nxt.append(y)
        frontier = nxt
    return orb


def group_order(gens: Iterable[Raw], n: int) -> int:
    """|<gens>| by deterministic Schreier-Sims."""
    ident = raw_identity(n)
    gens = [g for g in gens if g != ident]
    if not gens:
        return 1

    def first_moved(g):
        return next(i for i, x in enumerate(g) if x != i)

    base: list[int] = []
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(first_moved(g))
    strong = [[g for g in gens if all(g[base[m]] == base[m] for m in range(lev))] for lev in range(len(base))]
    trans = [_orbit_transversal(base[lev], strong[lev], n) for lev in range(len(base))]

    def strip(g, start):
        for lev in range(start, len(base)):
            u = trans[lev].get(g[base[lev]])
            if u is None:
                return g, lev
            g = mul(g, inv(u))
        return g, len(base)

    i = len(base) - 1
    while i >= 0:
        found = False
        for x, ux in list(trans[i].items()):
            for s in strong[i]:
                sch = mul(mul(ux, s), inv(trans[i][s[x]]))
                if sch == ident:
                    continue
                h, j = strip(sch, i + 1)
                if h == ident:
                    continue
                if j == len(base):
                    base.append(first_moved(h))
                    strong.append([])
                    trans.append({})
                for lev in range(i + 1, j + 1):
                    strong[lev].append(h)
                    trans[lev] = _orbit_transversal(base[lev], strong[lev], n)
                i = j
                found = True
                break
            if found:
                break
        if not found:
            i -= 1
    order = 1
    for t in trans:
        order *= len(t)
    return order


def generates(gens: Sequence[Raw], kind: str, n: int) -> bool:
    """Do the entries generate A_n (resp. S_n) exactly?

    A transitive group generated by 3-cycles is A_n, which settles the common
    case without computing an order.
    """
    if not is_transitive(gens, n):
        return False
    if kind == AN and any(raw_sign(g) != 1 for g in gens):
        return False
    if kind == AN and n >= 3:
        three = (3,) + (1,) * (n - 3)
        if all(raw_cycle_lengths(g) == three for g in gens):
            return True
    return group_order(gens, n) == ambient_order(kind, n)


def an_generators(n: int) -> list[Raw]:
    """3-cycles (1 2 k), which generate A_n."""
    out = []
    for k in range(2, n):
        img = list(range(n))
        img[0], img[1], img[k] = 1, k, 0
        out.append(tuple(img))
    return out


def elements(gens: Sequence[Raw], n: int, limit: int = 10**6) -> list[Raw]:
    """Brute-force closure; for tests and small regular representations."""
    ident = raw_identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mul(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > limit:
                        raise ValueError("group larger than enumeration limit")
        frontier = nxt
    return sorted(seen)
