"""Single-voter strategic voting: achievable winners and the optimal ballot.

Every election involving a manipulator is scored the same way throughout
this module: fixed base totals from the other voters plus the manipulator's
per-candidate contribution, one float add per candidate. The greedy
feasibility test, the witness ballot check, and the brute-force oracle all
compare exactly those sums, so they can never disagree through rounding.

A from-scratch profile tally may associate its float additions differently;
on a profile where score totals tie exactly in real arithmetic (possible
under vectors with non-dyadic entries), the two orders can round that tie
apart. Integer and dyadic vectors (Borda, approval, geometric 2 and 0.5)
are immune, and results here are always internally consistent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

from .core import Profile, Ranking
from .rules import ScoringVector, elect

BRUTE_FORCE_MAX_M = 8


@dataclass(frozen=True)
class ManipulationResult:
    """The ballot a strategic voter casts and the winner it induces.

    `improved` is False exactly when no ballot beats the sincere outcome,
    in which case `ballot` is the voter's sincere ranking.
    """

    ballot: Ranking
    winner: int
    improved: bool


def base_totals(others: Sequence[Ranking], vector: ScoringVector) -> np.ndarray:
    """Score totals contributed by every voter except the manipulator."""
    m = vector.m
    if not others:
        return np.zeros(m, dtype=np.float64)
    positions = np.array([b.positions for b in others], dtype=np.intp)
    if positions.shape[1] != m:
        raise ValueError(f"ballots have m={positions.shape[1]}, vector has m={m}")
    return vector.array[positions].sum(axis=0)


def winner_with_ballot(base: np.ndarray, vector: ScoringVector, ballot: Ranking) -> int:
    """Winner when the manipulator casts `ballot` against fixed base totals."""
    return elect(base + vector.array[np.array(ballot.positions, dtype=np.intp)])


def _witness_for(base: np.ndarray, vector: ScoringVector, target: int) -> Ranking | None:
    """A ballot making `target` win, or None if no ballot can.

    Deadline matching: give the target s_1 (total T), then assign the
    remaining scores to the other candidates, smallest scores to the
    candidates with the least headroom. Candidate d may carry score s iff
    base[d] + s < T, or equals T with d losing the index tie-break. Those
    allowed sets are nested, so the greedy pairing is exact (Hall).
    """
    scores = vector.array
    m = vector.m
    threshold = base[target] + scores[0]
    others = np.concatenate([np.arange(target), np.arange(target + 1, m)])
    rest_ascending = scores[1:][::-1]

    totals = base[others][:, None] + rest_ascending[None, :]
    allowed = (totals < threshold) | ((totals == threshold) & (others > target)[:, None])
    # allowed scores form a prefix of the ascending list, so the count is the cap
    caps = allowed.sum(axis=1)
    order = np.argsort(caps, kind="stable")
    if not np.all(caps[order] > np.arange(m - 1)):
        return None
    # pairing j: j-th smallest remaining score -> j-th least-headroom candidate;
    # reversing the pairing lists the tail of the ballot best-first
    tail = others[order][::-1]
    return Ranking((target,) + tuple(int(d) for d in tail))


def can_make_winner(
    others: Sequence[Ranking], vector: ScoringVector, candidate: int
) -> Ranking | None:
    """A ballot under which `candidate` wins against `others`, if one exists."""
    if not 0 <= candidate < vector.m:
        raise ValueError(f"candidate {candidate} out of range for m={vector.m}")
    return _witness_for(base_totals(others, vector), vector, candidate)


def achievable_winners(others: Sequence[Ranking], vector: ScoringVector) -> set[int]:
    """All candidates some single ballot can make the winner."""
    base = base_totals(others, vector)
    return {c for c in range(vector.m) if _witness_for(base, vector, c) is not None}


def optimal_manipulation(profile: Profile, voter: int, vector: ScoringVector) -> ManipulationResult:
    """The strategic voter's best outcome and a ballot that realises it.

    Scans the voter's true ranking from the top and stops at the first
    candidate some ballot can elect; the sincere winner is always
    achievable, so the scan terminates at or before it. Welfare evaluation
    stays on the true profile; only the cast ballot changes.
    """
    if not 0 <= voter < profile.n:
        raise ValueError(f"voter {voter} out of range for n={profile.n}")
    if vector.m != profile.m:
        raise ValueError(f"vector length {vector.m} does not match profile m={profile.m}")
    sincere = profile.ballots[voter]
    base = base_totals(profile.without(voter), vector)
    sincere_winner = winner_with_ballot(base, vector, sincere)
    for candidate in sincere.order:
        if candidate == sincere_winner:
            return ManipulationResult(ballot=sincere, winner=sincere_winner, improved=False)
        witness = _witness_for(base, vector, candidate)
        if witness is not None:
            won = winner_with_ballot(base, vector, witness)
            if won != candidate:  # pragma: no cover - construction guarantees this
                raise RuntimeError(
                    f"witness ballot elected {won}, expected {candidate} (rule {vector.label})"
                )
            return ManipulationResult(ballot=witness, winner=candidate, improved=True)
    raise RuntimeError("unreachable: the sincere winner is always achievable")


@lru_cache(maxsize=None)
def _all_ballot_positions(m: int) -> np.ndarray:
    """Position vectors of all m! ballots, in lexicographic ballot order."""
    orders = np.array(list(permutations(range(m))), dtype=np.intp)
    return np.argsort(orders, axis=1)


def brute_force_manipulation(profile: Profile, voter: int, vector: ScoringVector) -> int:
    """Oracle: try every ballot, return the winner the voter likes best.

    Enumerates all m! ballots, so refuses m > 8.
    """
    m = profile.m
    if m > BRUTE_FORCE_MAX_M:
        raise ValueError(f"brute force refuses m={m} > {BRUTE_FORCE_MAX_M} ({math.factorial(m)} ballots)")
    if vector.m != m:
        raise ValueError(f"vector length {vector.m} does not match profile m={m}")
    base = base_totals(profile.without(voter), vector)
    totals = base[None, :] + vector.array[_all_ballot_positions(m)]
    winners = np.argmax(totals, axis=1)
    true_positions = np.array(profile.ballots[voter].positions, dtype=np.intp)
    best = winners[np.argmin(true_positions[winners])]
    return int(best)
