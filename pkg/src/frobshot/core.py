"""Validated coprime tuples and their reduction."""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import Duplicate, NotCoprime, TooSmall


@dataclass(frozen=True)
class NTuple:
    """Strictly increasing tuple of integers >= 2 with gcd 1.

    Build one through :func:`validate_tuple`; the constructor re-checks the
    invariants but does not sort.
    """

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(operator.index(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) < 2:
            raise TooSmall("need at least two entries")
        if entries[0] < 2:
            raise TooSmall(f"entries must be >= 2, got {entries[0]}")
        for x, y in zip(entries, entries[1:]):
            if x == y:
                raise Duplicate(f"repeated entry {x}")
            if x > y:
                raise ValueError("entries must be increasing; use validate_tuple to sort")
        if math.gcd(*entries) != 1:
            raise NotCoprime(f"gcd{entries} = {math.gcd(*entries)}")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def norm_sq(self) -> int:
        return sum(x * x for x in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.entries)) + ")"


def validate_tuple(raw: Iterable[int]) -> NTuple:
    """Sort ``raw`` and check it is a coprime tuple of distinct integers >= 2.

    >>> validate_tuple([7, 3, 5])
    NTuple(entries=(3, 5, 7))
    """
    values = sorted(operator.index(x) for x in raw)
    if len(values) < 2:
        raise TooSmall("need at least two entries")
    if values[0] < 2:
        raise TooSmall(f"entries must be >= 2, got {values[0]}")
    for x, y in zip(values, values[1:]):
        if x == y:
            raise Duplicate(f"repeated entry {x}")
    return NTuple(tuple(values))


@dataclass(frozen=True)
class Removal:
    index: int  # 0-based position in the original tuple
    value: int
    coefficients: tuple[int, ...]  # over original entries 0..index-1


@dataclass(frozen=True)
class ReductionResult:
    reduced: NTuple
    removed: tuple[Removal, ...]


def reduce_tuple(a: NTuple) -> ReductionResult:
    """Drop every entry that is a non-negative combination of earlier ones.

    Scans left to right; the semigroup, and so the Frobenius number, is
    unchanged by each removal.
    """
    from .semigroup import represent

    kept = [0]
    removed = []
    for i in range(1, a.n):
        gens = [a[j] for j in kept]
        coeffs = represent(gens, a[i])
        if coeffs is None:
            kept.append(i)
            continue
        full = [0] * i
        for j, c in zip(kept, coeffs):
            full[j] = c
        removed.append(Removal(index=i, value=a[i], coefficients=tuple(full)))
    return ReductionResult(reduced=NTuple(tuple(a[j] for j in kept)), removed=tuple(removed))


def is_reduced(a: NTuple) -> bool:
    return not reduce_tuple(a).removed
