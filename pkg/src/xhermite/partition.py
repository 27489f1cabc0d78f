"""Integer partitions and the admissible degree set of exceptional Hermite families."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, List

from .errors import NonIncreasingViolation, NonPositivePart


@dataclass(frozen=True)
class Partition:
    """A nonincreasing tuple of positive integers.

    The empty partition is allowed and stands for the classical Hermite case.
    """

    parts: tuple = ()
    is_even: bool = field(init=False, compare=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        for p in parts:
            if p < 1:
                raise NonPositivePart(f"part {p} of {parts} is not positive")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise NonIncreasingViolation(f"{parts} is not nonincreasing")
        r = len(parts)
        even = r % 2 == 0 and all(parts[2 * k] == parts[2 * k + 1] for k in range(r // 2))
        object.__setattr__(self, "is_even", even)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def excluded_degrees(self) -> List[int]:
        """Degrees ``|λ| + λ_i - i`` that the exceptional family skips."""
        s = self.size
        return [s + p - i for i, p in enumerate(self.parts, start=1)]

    def to_json(self) -> str:
        return json.dumps(list(self.parts))

    @classmethod
    def from_json(cls, text: str) -> "Partition":
        return make_partition(json.loads(text))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def make_partition(parts: Iterable[int] = ()) -> Partition:
    return Partition(tuple(parts))


def degree_set(lam: Partition, n_max: int) -> List[int]:
    """Admissible degrees ``n <= n_max`` of the exceptional polynomials for ``lam``.

    >>> degree_set(make_partition([1, 1]), 5)
    [0, 3, 4, 5]
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    lo = max(lam.size - lam.length, 0)
    excluded = set(lam.excluded_degrees())
    return [n for n in range(lo, n_max + 1) if n not in excluded]


def is_admissible(lam: Partition, n: int) -> bool:
    return n >= 0 and n in degree_set(lam, n)
