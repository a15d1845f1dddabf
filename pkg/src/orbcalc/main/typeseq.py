"""Type sequences (d_0, d'_1, d_1, ..., d'_n, d_n) and their count.

A sequence of dimension n starts at d_0 = n. Either it stays constant at some c ≤ n, or
it drops to n ≥ d'_1 > d_1 and continues as a sequence of dimension d_1, padded with its
last value to length 2n + 1.
"""

from __future__ import annotations

from collections.abc import Iterator
from functools import cache
from typing import Self

from pydantic import BaseModel, ConfigDict, NonNegativeInt, model_validator

from .errors import DimensionTooLarge, OutOfRange
from .shared import TYPE_COUNT_DIMENSION_MAX, TYPE_DIMENSION_MAX


Entries = tuple[int, ...]


def _is_generated(entries: Entries) -> bool:
    n = entries[0]

    if len(entries) != 2 * n + 1:
        return False

    tail = entries[1:]

    if all(value == tail[0] for value in tail) and (not tail or tail[0] <= n):
        return True

    first_drop, first_dim = tail[0], tail[1]

    if not n >= first_drop > first_dim >= 0:
        return False

    rest = entries[2:]
    inner, padding = rest[: 2 * first_dim + 1], rest[2 * first_dim + 1 :]

    return all(value == inner[-1] for value in padding) and _is_generated(inner)


class TypeSequence(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: tuple[NonNegativeInt, ...]

    @model_validator(mode="after")
    def validate_entries(self) -> Self:
        entries = self.entries

        if not entries:
            raise ValueError("A type sequence has at least one entry.")

        if any(a < b for a, b in zip(entries, entries[1:], strict=False)):
            raise ValueError(f"Type sequence {self.format()} is not nonincreasing.")

        if not _is_generated(entries):
            raise ValueError(f"Type sequence {self.format()} is not generated by the grammar.")

        return self

    @property
    def n(self) -> int:
        return self.entries[0]

    def d(self, k: int) -> int:
        """d_k. Indices past n read the final value."""

        return self.entries[2 * k] if k <= self.n else self.entries[-1]

    def d_prime(self, k: int) -> int:
        """d'_k for k ≥ 1. Indices past n read the final value."""

        if k < 1:
            raise IndexError("d'_k is defined for k >= 1.")

        return self.entries[2 * k - 1] if k <= self.n else self.entries[-1]

    def format(self) -> str:
        return ",".join(str(value) for value in self.entries)


def count_types(n: int) -> int:
    """c(0) = 1, c(1) = 3 and c(n+1) = 3c(n) - c(n-1)."""

    if n < 0:
        raise OutOfRange(f"The dimension must be nonnegative, got {n}.")

    if n > TYPE_COUNT_DIMENSION_MAX:
        raise DimensionTooLarge(f"Dimension {n} exceeds the limit {TYPE_COUNT_DIMENSION_MAX}.")

    previous, current = 1, 3

    if n == 0:
        return previous

    for _ in range(n - 1):
        previous, current = current, 3 * current - previous

    return current


@cache
def _type_entries(n: int) -> tuple[Entries, ...]:
    return tuple(_generate(n))


def _generate(n: int) -> Iterator[Entries]:
    length = 2 * n + 1

    # Lexicographic: by d'_1, then d_1 with the constant sequence (d_1 = d'_1) last.
    for first_drop in range(n + 1):
        for first_dim in range(first_drop):
            for inner in _type_entries(first_dim):
                head = (n, first_drop, *inner)
                yield head + (inner[-1],) * (length - len(head))

        yield (n,) + (first_drop,) * (length - 1)


def iter_type_entries(n: int) -> Iterator[Entries]:
    if n < 0:
        raise OutOfRange(f"The dimension must be nonnegative, got {n}.")

    if n > TYPE_DIMENSION_MAX:
        raise DimensionTooLarge(f"Dimension {n} exceeds the limit {TYPE_DIMENSION_MAX}.")

    return _generate(n)


def enumerate_types(n: int, limit: int = TYPE_DIMENSION_MAX) -> list[TypeSequence]:
    if n > min(limit, TYPE_DIMENSION_MAX):
        raise DimensionTooLarge(f"Dimension {n} exceeds the limit {limit}.")

    # Generated sequences satisfy the grammar by construction.
    return [TypeSequence.model_construct(entries=entries) for entries in iter_type_entries(n)]


def length_of(t: TypeSequence) -> int:
    """The smallest k where the sequence has settled at d_n.

    That is d_k = d_{k+1} = d_n, or d'_{k-1} = d'_k = d_n.
    """

    final = t.entries[-1]

    for k in range(t.n + 1):
        if t.d(k) == t.d(k + 1) == final:
            return k

        if k >= 2 and t.d_prime(k - 1) == t.d_prime(k) == final:
            return k

    return t.n
