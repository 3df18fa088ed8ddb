"""Size guardrails shared by every module.

Caps are read at call time, so ``set_caps`` or the ``caps_override`` context
manager take effect immediately.  The CLI loads overrides from ``--caps FILE``.
"""
from __future__ import annotations

import contextlib
import dataclasses
import json
import threading
from pathlib import Path


class CapExceeded(ValueError):
    """Raised when an input would exceed a configured size cap."""


@dataclasses.dataclass(frozen=True)
class Caps:
    field_size: int = 2**20
    matrix_dim: int = 1024
    group_order: int = 1_000_000
    character_table_order: int = 100_000
    multiplication_table_order: int = 6000
    word_length: int = 14
    prime_search_bound: int = 10**7
    isotropy_height: int = 10**4
    isotropy_budget: int = 2_000_000


_lock = threading.Lock()
_current = Caps()


def get_caps() -> Caps:
    return _current


def set_caps(**overrides) -> Caps:
    global _current
    unknown = set(overrides) - {f.name for f in dataclasses.fields(Caps)}
    if unknown:
        raise ValueError(f"unknown cap(s): {sorted(unknown)}")
    with _lock:
        _current = dataclasses.replace(_current, **overrides)
    return _current


def load_caps(path: str | Path) -> Caps:
    return set_caps(**json.loads(Path(path).read_text()))


@contextlib.contextmanager
def caps_override(**overrides):
    global _current
    saved = _current
    set_caps(**overrides)
    try:
        yield _current
    finally:
        with _lock:
            _current = saved


def check_cap(name: str, value: int) -> None:
    limit = getattr(_current, name)
    if value > limit:
        raise CapExceeded(f"{name} cap exceeded: {value} > {limit}")
