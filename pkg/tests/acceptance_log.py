"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

import functools
import time

LINES: list[tuple[int, str]] = []


def criterion(number: int, title: str, limit_s: float | None = None):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            status, note = "PASS", ""
            try:
                note = fn(*args, **kwargs) or ""
                dt = time.perf_counter() - t0
                if limit_s is not None and dt > limit_s:
                    status, note = "FAIL", f"took {dt:.1f}s, limit {limit_s:g}s"
                    raise AssertionError(note)
            except Exception as e:
                status = "FAIL"
                note = note or f"{type(e).__name__}: {e}"
                raise
            finally:
                dt = time.perf_counter() - t0
                line = f"criterion {number:>2} {status} ({dt:.1f}s) {title}" + (f": {note}" if note else "")
                LINES.append((number, line))
                print(line)
        return run
    return wrap
