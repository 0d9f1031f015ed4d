"""Global resource limits for constructions and searches."""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, fields

from .errors import OrderCapExceeded


@dataclass
class Limits:
    order_cap: int = 10_000
    search_budget: int = 5_000_000
    tuple_cap: int = 1_000_000
    subgroup_cap: int = 100_000


limits = Limits()


@contextmanager
def override(**kwargs):
    """Temporarily replace fields of the global limits."""
    names = {f.name for f in fields(Limits)}
    unknown = set(kwargs) - names
    if unknown:
        raise TypeError(f"unknown limit(s): {sorted(unknown)}")
    saved = {k: getattr(limits, k) for k in kwargs}
    for k, v in kwargs.items():
        if v is not None:
            if v <= 0:
                raise ValueError(f"{k} must be positive")
            setattr(limits, k, v)
    try:
        yield limits
    finally:
        for k, v in saved.items():
            setattr(limits, k, v)


def check_order(n: int, what: str = "group") -> None:
    if n > limits.order_cap:
        raise OrderCapExceeded(f"{what} of order {n} exceeds cap {limits.order_cap}")
