"""Run configuration: budgets, worker count, output format, fixture path.

A config file is plain ``key = value`` lines (``#`` starts a comment).  Flags
given on the command line override file values.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ParseError

FIXTURE_ENV = "HURWITZ_FIXTURES"
ALLOW_LONG_ENV = "HURWITZ_ALLOW_LONG"
FORMATS = ("json", "text", "csv")


@dataclass(frozen=True)
class RunConfig:
    max_prefixes: int = 10**8
    max_states: int = 5 * 10**6
    memory_cap: int = 4 * 2**30
    clifford_terms: int = 2**20
    workers: int = 1
    format: str = "json"
    fixture_dir: str | None = None
    allow_long: bool = False

    def __post_init__(self):
        for name in ("max_prefixes", "max_states", "memory_cap", "clifford_terms"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    @classmethod
    def from_env(cls) -> "RunConfig":
        cfg = cls()
        if os.environ.get(FIXTURE_ENV):
            cfg = replace(cfg, fixture_dir=os.environ[FIXTURE_ENV])
        if os.environ.get(ALLOW_LONG_ENV, "").strip() not in ("", "0"):
            cfg = replace(cfg, allow_long=True)
        return cfg

    @classmethod
    def from_file(cls, path: str | Path, base: "RunConfig | None" = None) -> "RunConfig":
        base = base or cls.from_env()
        types = {f.name: f.type for f in fields(cls)}
        updates = {}
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"{path}:{lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in types:
                raise ParseError(f"{path}:{lineno}: unknown key {key!r}")
            updates[key] = _coerce(key, val, types[key])
        try:
            return replace(base, **updates)
        except ValueError as e:
            raise ParseError(str(e)) from None


def _coerce(key: str, val: str, typ) -> object:
    typ = str(typ)
    try:
        if typ.startswith("bool"):
            low = val.lower()
            if low not in ("1", "0", "true", "false", "yes", "no"):
                raise ValueError(val)
            return low in ("1", "true", "yes")
        if typ.startswith("int"):
            return int(float(val)) if "e" in val.lower() else int(val)
    except ValueError:
        raise ParseError(f"bad value for {key}: {val!r}") from None
    return val
