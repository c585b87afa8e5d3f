"""Ordered fan-out over a thread pool."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

T = TypeVar("T")
R = TypeVar("R")


def chunked(items: Sequence[T], size: int) -> list[Sequence[T]]:
    return [items[i : i + size] for i in range(0, len(items), size)]


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Map fn over items, results in input order whatever the worker count."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def ordered_flat_map(
    fn: Callable[[Sequence[T]], list[R]], items: Sequence[T], workers: int = 1, chunk: int = 256
) -> list[R]:
    """Apply fn to consecutive chunks and concatenate, preserving order."""
    out: list[R] = []
    for part in ordered_map(fn, chunked(items, chunk), workers):
        out.extend(part)
    return out
