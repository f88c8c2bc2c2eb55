"""Rankings, profiles, and order-distance utilities.

Candidates are 0-based integers. A ballot position is 1-based (position 1
is the most preferred candidate), matching the usual s_1..s_m indexing of
scoring vectors. All types here are immutable after construction and safe
to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class Ranking:
    """A strict preference order: candidate indices from best to worst."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        m = len(self.order)
        if m < 1:
            raise ValueError("a ranking needs at least one candidate")
        if sorted(self.order) != list(range(m)):
            raise ValueError(f"not a permutation of 0..{m - 1}: {self.order}")

    @classmethod
    def of(cls, order: Sequence[int]) -> "Ranking":
        return cls(tuple(int(c) for c in order))

    @property
    def m(self) -> int:
        return len(self.order)

    @cached_property
    def positions(self) -> tuple[int, ...]:
        """Inverse permutation: positions[c] is the 0-based position of c."""
        inv = [0] * self.m
        for pos, c in enumerate(self.order):
            inv[c] = pos
        return tuple(inv)

    def rank_of(self, candidate: int) -> int:
        """1-based position of `candidate` (1 = best, m = worst)."""
        if not 0 <= candidate < self.m:
            raise ValueError(f"candidate {candidate} out of range for m={self.m}")
        return self.positions[candidate] + 1


def rank_of(ranking: Ranking, candidate: int) -> int:
    """1-based position of `candidate` in `ranking`."""
    return ranking.rank_of(candidate)


@dataclass(frozen=True)
class Profile:
    """An election instance: one ballot per voter, all over the same candidates."""

    ballots: tuple[Ranking, ...]

    def __post_init__(self) -> None:
        if not self.ballots:
            raise ValueError("a profile needs at least one ballot")
        m = self.ballots[0].m
        for i, b in enumerate(self.ballots):
            if b.m != m:
                raise ValueError(f"ballot {i} has m={b.m}, expected m={m}")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "Profile":
        return cls(tuple(Ranking.of(row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.ballots)

    @property
    def m(self) -> int:
        return self.ballots[0].m

    @cached_property
    def position_matrix(self) -> np.ndarray:
        """(n, m) int array: entry [i, c] is the 0-based position of c in ballot i."""
        mat = np.array([b.positions for b in self.ballots], dtype=np.intp)
        mat.setflags(write=False)
        return mat

    def without(self, voter: int) -> tuple[Ranking, ...]:
        """All ballots except voter's; may be empty when n = 1."""
        if not 0 <= voter < self.n:
            raise ValueError(f"voter {voter} out of range for n={self.n}")
        return self.ballots[:voter] + self.ballots[voter + 1 :]

    def replace(self, voter: int, ballot: Ranking) -> "Profile":
        """A new profile with voter's ballot swapped out."""
        if ballot.m != self.m:
            raise ValueError(f"replacement ballot has m={ballot.m}, expected {self.m}")
        if not 0 <= voter < self.n:
            raise ValueError(f"voter {voter} out of range for n={self.n}")
        return Profile(self.ballots[:voter] + (ballot,) + self.ballots[voter + 1 :])


def validate_profile(rows: Sequence[Sequence[int]]) -> list[str]:
    """Diagnose raw ballot rows; empty list means a well-formed profile.

    Works on unvalidated data (Ranking/Profile constructors reject bad input
    outright, so diagnostics have to happen before construction).
    """
    violations: list[str] = []
    if not rows:
        return ["profile has no ballots"]
    m = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != m:
            violations.append(f"m mismatch: ballot {i} has {len(row)} candidates, expected {m}")
            continue
        seen: set[int] = set()
        for c in row:
            if c in seen:
                violations.append(f"duplicate candidate {c} in ballot {i}")
            seen.add(c)
        missing = [c for c in range(m) if c not in seen]
        out_of_range = sorted(c for c in seen if not 0 <= c < m)
        if out_of_range:
            violations.append(f"ballot {i} has out-of-range candidates {out_of_range}")
        if missing and not any(f"ballot {i}" in v for v in violations):
            violations.append(f"ballot {i} is missing candidates {missing}")
    return violations


def kendall_tau(a: Ranking, b: Ranking) -> int:
    """Number of candidate pairs that a and b order differently.

    Computed as the inversion count of b's positions read in a's order,
    via merge sort (O(m log m)).
    """
    if a.m != b.m:
        raise ValueError(f"rankings disagree on m: {a.m} vs {b.m}")
    seq = [b.positions[c] for c in a.order]
    return _count_inversions(seq)


def _count_inversions(seq: list[int]) -> int:
    n = len(seq)
    if n < 2:
        return 0
    mid = n // 2
    left, right = seq[:mid], seq[mid:]
    count = _count_inversions(left) + _count_inversions(right)
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            count += len(left) - i
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    seq[:] = merged
    return count
