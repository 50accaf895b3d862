"""Named verification suites, run by ``hurwitz verify <suite>``.

Each suite is a list of cases.  A case either passes, fails with a reason, or
is skipped because it is long-running and ``allow_long`` is off.  Suites never
loosen a check to fit a budget; a budget overrun is reported as a failure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .braid import orbits_of_class, verify_relations
from .config import RunConfig
from .errors import BudgetExceeded, HurwitzError
from .groups import an_generators, elements
from .nielsen import (
    ABSOLUTE,
    INNER,
    GroupSpec,
    NielsenSpec,
    a4_rep,
    canonicalizer,
    conjugator_kind,
    enumerate_nielsen,
    nonempty_mod3,
    signed_three_vector,
    three_cycle_vector,
)
from .perm import AN, conj


@dataclass
class CaseResult:
    case: str
    status: str  # pass | fail | skip
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"case": self.case, "status": self.status, "detail": self.detail, "seconds": self.seconds}

    @classmethod
    def from_json(cls, d: dict) -> "CaseResult":
        return cls(d["case"], d["status"], d.get("detail", ""), d.get("seconds", 0.0))


@dataclass
class SuiteReport:
    suite: str
    results: list[CaseResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_json(self) -> dict:
        return {"suite": self.suite, "ok": self.ok, "results": [r.to_json() for r in self.results]}

    @classmethod
    def from_json(cls, d: dict) -> "SuiteReport":
        return cls(d["suite"], [CaseResult.from_json(x) for x in d["results"]])


def is_long(n: int, r: int) -> bool:
    """Cases expected to take well over a few minutes on one core."""
    return n >= 7 or (n == 6 and r >= 7) or (n == 5 and r >= 8) or (n == 4 and r >= 9)


def _run(name: str, fn: Callable[[], str | None], long: bool, config: RunConfig) -> CaseResult:
    if long and not config.allow_long:
        return CaseResult(name, "skip", "long-running; pass --allow-long")
    t0 = time.perf_counter()
    try:
        detail = fn() or ""
        status = "pass"
    except AssertionError as e:
        status, detail = "fail", str(e)
    except BudgetExceeded as e:
        status, detail = "fail", f"budget: {e}"
    except HurwitzError as e:
        status, detail = "fail", f"{type(e).__name__}: {e}"
    return CaseResult(name, status, detail, round(time.perf_counter() - t0, 3))


def _summary(rep) -> str:
    return " ".join(f"{o.size}:{'+' if o.invariant == 1 else '-' if o.invariant == -1 else '?'}" for o in rep.orbits)


# --------------------------------------------------------------------------
# suites


def suite_thm_a(config: RunConfig, n: int | None = None, nmax: int = 6, **_) -> list[CaseResult]:
    """One inner orbit on 3-cycle classes with r = n - 1, invariant (-1)^(n-1)."""
    ns = [n] if n else list(range(5, nmax + 1))
    out = []
    for k in ns:
        def case(k=k):
            spec = NielsenSpec(GroupSpec(AN, k), three_cycle_vector(k, k - 1))
            rep = orbits_of_class(spec, INNER, config)
            assert len(rep.orbits) == 1, f"{len(rep.orbits)} orbits: {_summary(rep)}"
            want = (-1) ** (k - 1)
            assert rep.orbits[0].invariant == want, f"invariant {rep.orbits[0].invariant}, expected {want}"
            return _summary(rep)
        out.append(_run(f"n={k} r={k - 1}", case, is_long(k, k - 1), config))
    return out


def suite_thm_b(config: RunConfig, n: int | None = None, rmax: int | None = None, **_) -> list[CaseResult]:
    """Two inner orbits separated by the lifting invariant, and two absolute orbits, for r >= n."""
    grid = [(n, r) for r in range(n, (rmax or n + 1) + 1)] if n else [(5, 5), (5, 6), (6, 6)]
    out = []
    for k, r in grid:
        def case(k=k, r=r):
            spec = NielsenSpec(GroupSpec(AN, k), three_cycle_vector(k, r))
            inner = orbits_of_class(spec, INNER, config)
            assert len(inner.orbits) == 2, f"inner: {_summary(inner)}"
            assert sorted(inner.invariants()) == [-1, 1], f"inner invariants {inner.invariants()}"
            absolute = orbits_of_class(spec, ABSOLUTE, config)
            assert len(absolute.orbits) == 2, f"absolute: {_summary(absolute)}"
            return f"inner {_summary(inner)}; absolute {_summary(absolute)}"
        out.append(_run(f"n={k} r={r}", case, is_long(k, r), config))
    return out


def suite_mod8(config: RunConfig, n: int | None = None, **_) -> list[CaseResult]:
    """d-cycles with d = (n+1)/2, four of them, n = 1 mod 4: one inner orbit if
    n = 5 mod 8, two if n = 1 mod 8."""
    ns = [n] if n else [5]
    out = []
    for k in ns:
        if k % 4 != 1:
            out.append(CaseResult(f"n={k}", "fail", "n must be 1 mod 4"))
            continue

        def case(k=k):
            d = (k + 1) // 2
            spec = NielsenSpec.parse(k, f"{d}^4")
            rep = orbits_of_class(spec, INNER, config)
            want = 1 if k % 8 == 5 else 2
            assert len(rep.orbits) == want, f"{len(rep.orbits)} orbits, expected {want}: {_summary(rep)}"
            return _summary(rep)
        out.append(_run(f"n={k} C_{(k + 1) // 2}^4", case, k >= 9, config))
    return out


def a4_grid_expected(r: int) -> int:
    return 1 if r == 3 else 2


def suite_a4grid(config: RunConfig, rmax: int | None = None, **_) -> list[CaseResult]:
    """A4 with s1 copies of +3 and s2 of -3: orbit counts per r, and each orbit
    holds the explicit representative of its lifting invariant."""
    out = []
    for r in range(3, (rmax or 6) + 1):
        for s1 in range(r + 1):
            s2 = r - s1
            if not nonempty_mod3(s1, s2):
                continue

            def case(r=r, s1=s1, s2=s2):
                spec = NielsenSpec(GroupSpec(AN, 4), signed_three_vector(s1, s2))
                counts = []
                for eq in (INNER, ABSOLUTE):
                    rep = orbits_of_class(spec, eq, config)
                    counts.append(len(rep.orbits))
                    canon = canonicalizer(4, conjugator_kind(spec, eq))
                    signs = (-1,) if r == 3 else (1, -1)
                    for sign in signs:
                        t = canon(a4_rep(r, s1, s2, sign).raw)
                        home = [o for o, mem in zip(rep.orbits, rep.members) if t in set(mem)]
                        assert home, f"{eq}: representative for sign {sign} is not in the class"
                        assert home[0].invariant == sign, f"{eq}: representative {sign} sits in orbit {home[0].invariant}"
                want = a4_grid_expected(r)
                assert counts[1] == want, f"absolute orbits {counts[1]}, expected {want}"
                assert counts[0] == want, f"inner orbits {counts[0]}, expected {want}"
                return f"inner {counts[0]} absolute {counts[1]}"
            out.append(_run(f"r={r} s=({s1},{s2})", case, is_long(4, r), config))
    return out


SMALL_CLASS_PAIRS = ("+5 -5 3^2", "+5^2 3^2", "+5^2 -5^2")


def suite_small_classes(config: RunConfig, **_) -> list[CaseResult]:
    """Two inner orbits, one per lifting invariant, on three small A5 classes."""
    out = []
    for text in SMALL_CLASS_PAIRS:
        def case(text=text):
            spec = NielsenSpec.parse(5, text)
            rep = orbits_of_class(spec, INNER, config, check_invariant="all")
            assert len(rep.orbits) == 2, _summary(rep)
            assert sorted(rep.invariants()) == [-1, 1], f"invariants {rep.invariants()}"
            return _summary(rep)
        out.append(_run(f"A5 {text}", case, False, config))
    return out


def suite_relations(config: RunConfig, samples: int = 10_000, seed: int = 0, **_) -> list[CaseResult]:
    """Braid relations on sampled raw tuples of several 3-cycle classes."""
    pools = [(4, "+3^2 -3^2"), (5, "3^5"), (5, "3^6"), (6, "3^6")]
    out = []
    rng = random.Random(seed)
    per = samples // len(pools)
    for k, text in pools:
        def case(k=k, text=text):
            spec = NielsenSpec.parse(k, text)
            classes = enumerate_nielsen(spec, INNER, config).classes
            canon = canonicalizer(k, conjugator_kind(spec, INNER))
            perms = elements(an_generators(k), k)
            sample = []
            for _ in range(per):
                t = rng.choice(classes)
                h = rng.choice(perms)
                sample.append(tuple(conj(g, h) for g in t))
            rep = verify_relations(sample, canon)
            assert rep.ok, f"{rep.first_failure()}"
            return f"{rep.checked} tuples"
        out.append(_run(f"{text} in A{k}", case, False, config))
    return out


def suite_theta(config: RunConfig, rmax: int = 14, **_) -> list[CaseResult]:
    from .theta import hyp_orbits

    out = []
    for r in range(6, rmax + 1, 2):
        def case(r=r):
            rep = hyp_orbits(r)
            return f"sizes {rep.sizes()} even {rep.even} odd {rep.odd}"
        out.append(_run(f"r={r}", case, r > 16, config))
    return out


def suite_parity(config: RunConfig, **_) -> list[CaseResult]:
    """Theta parity of the two components: s * (-1)^(sum w) per representation."""
    from .theta import EVEN, ODD, component_theta_parity

    out = []
    for k, r in [(5, 5), (5, 6), (6, 6)]:
        def case(k=k, r=r):
            spec = NielsenSpec(GroupSpec(AN, k), three_cycle_vector(k, r))
            rep = orbits_of_class(spec, INNER, config)
            seen = []
            for o in rep.orbits:
                plus = o.invariant == 1
                p_abs = component_theta_parity(o.rep, "absolute")
                p_in = component_theta_parity(o.rep, "inner")
                want_abs = (EVEN if plus else ODD) if r % 2 == 0 else (ODD if plus else EVEN)
                want_in = EVEN if plus else ODD
                assert p_abs == want_abs, f"absolute parity {p_abs} on H{'+' if plus else '-'}"
                assert p_in == want_in, f"inner parity {p_in} on H{'+' if plus else '-'}"
                seen.append(f"H{'+' if plus else '-'} abs={p_abs} in={p_in}")
            return "; ".join(seen)
        out.append(_run(f"n={k} r={r}", case, False, config))
    return out


SUITES: dict[str, Callable[..., list[CaseResult]]] = {
    "thmA": suite_thm_a,
    "thmB": suite_thm_b,
    "mod8": suite_mod8,
    "a4grid": suite_a4grid,
    "smallclasses": suite_small_classes,
    "relations": suite_relations,
    "theta": suite_theta,
    "parity": suite_parity,
}


def run_suite(name: str, config: RunConfig | None = None, **params) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    config = config or RunConfig.from_env()
    params = {k: v for k, v in params.items() if v is not None}
    return SuiteReport(name, SUITES[name](config, **params))


__all__ = ["CaseResult", "SUITES", "SuiteReport", "is_long", "run_suite"]
