"""Per-criterion result lines, shared between the acceptance tests and the pytest summary hook."""
import time
from contextlib import contextmanager

LINES: dict[int, str] = {}


@contextmanager
def criterion(n: int, title: str, limit: float | None = None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        slow = limit is not None and dt >= limit
        status = "PASS" if ok and not slow else "FAIL"
        bound = f" (limit {limit:g} s)" if limit is not None else ""
        LINES[n] = f"criterion {n:2d}: {status} {title} in {dt:.2f} s{bound}"
        print(LINES[n])
    if slow:
        raise AssertionError(f"criterion {n} took {dt:.2f} s, limit {limit} s")
