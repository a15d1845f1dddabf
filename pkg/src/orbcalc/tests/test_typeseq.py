from __future__ import annotations

import pytest
import sympy
from pydantic import ValidationError

from orbcalc.main.errors import DimensionTooLarge, OutOfRange
from orbcalc.main.shared import TYPE_COUNT_DIMENSION_MAX
from orbcalc.main.typeseq import (
    TypeSequence,
    count_types,
    enumerate_types,
    iter_type_entries,
    length_of,
)


def test_count_small() -> None:
    assert [count_types(n) for n in range(5)] == [1, 3, 8, 21, 55]


def test_count_largest_dimension() -> None:
    assert count_types(14) == 832_040


def test_count_rejects_negative() -> None:
    with pytest.raises(OutOfRange):
        count_types(-1)


def test_count_dimension_limit() -> None:
    assert str(count_types(TYPE_COUNT_DIMENSION_MAX))

    with pytest.raises(DimensionTooLarge):
        count_types(TYPE_COUNT_DIMENSION_MAX + 1)


@pytest.mark.parametrize("n", range(31))
def test_count_is_even_fibonacci(n: int) -> None:
    assert count_types(n) == sympy.fibonacci(2 * n + 2)


@pytest.mark.parametrize("n", range(0, 31, 5))
def test_count_closed_form(n: int) -> None:
    root = sympy.sqrt(5)
    closed = (
        ((3 + root) / 2) ** (n + 1) - ((3 - root) / 2) ** (n + 1)
    ) / root

    assert sympy.expand(closed) == count_types(n)


@pytest.mark.parametrize("n", range(1, 31))
def test_count_by_first_drop(n: int) -> None:
    # Constant sequences, plus a drop to (d'_1, d_1) followed by any type of dimension d_1.
    total = (n + 1) + sum(
        count_types(first_dim)
        for first_drop in range(n + 1)
        for first_dim in range(first_drop)
    )

    assert count_types(n) == total


# Enumeration --------------------------------------------------------------------------------------


def test_enumerate_one() -> None:
    assert [t.entries for t in enumerate_types(1)] == [(1, 0, 0), (1, 1, 0), (1, 1, 1)]


def test_enumerate_two() -> None:
    entries = [t.entries for t in enumerate_types(2)]

    assert len(entries) == 8
    assert (2, 2, 2, 2, 2) in entries
    assert (2, 2, 1, 1, 0) in entries
    assert (2, 1, 0, 0, 0) in entries


@pytest.mark.parametrize("n", range(13))
def test_enumerate_matches_count(n: int) -> None:
    entries = list(iter_type_entries(n))

    assert len(entries) == count_types(n)
    assert len(set(entries)) == len(entries)
    assert entries == sorted(entries)


@pytest.mark.slow
@pytest.mark.parametrize("n", [13, 14])
def test_enumerate_matches_count_largest(n: int) -> None:
    assert sum(1 for _ in iter_type_entries(n)) == count_types(n)


@pytest.mark.parametrize("n", range(7))
def test_enumerated_sequences_validate(n: int) -> None:
    for entries in iter_type_entries(n):
        t = TypeSequence(entries=entries)

        assert t.n == n
        assert len(t.entries) == 2 * n + 1


def test_enumerate_limits() -> None:
    with pytest.raises(DimensionTooLarge):
        enumerate_types(15)

    with pytest.raises(DimensionTooLarge):
        enumerate_types(5, limit=4)

    with pytest.raises(DimensionTooLarge):
        list(iter_type_entries(15))

    with pytest.raises(OutOfRange):
        iter_type_entries(-1)

    assert len(enumerate_types(4, limit=4)) == 55


# Sequences ----------------------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("entries", "message"),
    [
        ((), "at least one entry"),
        ((1, 0, 1), "not nonincreasing"),
        ((1, 0), "not generated"),
        ((2, 1, 1, 0, 0), "not generated"),
        ((1, 2, 2), "not nonincreasing"),
        ((2, 2, 2, 1, 0), "not generated"),
    ],
)
def test_sequence_validation(entries: tuple[int, ...], message: str) -> None:
    with pytest.raises(ValidationError, match=message):
        TypeSequence(entries=entries)


def test_sequence_accessors() -> None:
    t = TypeSequence(entries=(2, 2, 1, 1, 0))

    assert [t.d(k) for k in range(4)] == [2, 1, 0, 0]
    assert [t.d_prime(k) for k in range(1, 4)] == [2, 1, 0]
    assert t.format() == "2,2,1,1,0"

    with pytest.raises(IndexError):
        t.d_prime(0)


@pytest.mark.parametrize(
    ("entries", "expected"),
    [
        ((0,), 0),
        ((1, 1, 1), 0),
        ((1, 1, 0), 1),
        ((1, 0, 0), 1),
        ((2, 2, 1, 1, 0), 2),
        ((2, 1, 0, 0, 0), 1),
        ((2, 2, 2, 2, 2), 0),
    ],
)
def test_length_of(entries: tuple[int, ...], expected: int) -> None:
    assert length_of(TypeSequence(entries=entries)) == expected
