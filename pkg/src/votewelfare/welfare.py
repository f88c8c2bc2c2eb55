"""Ordinal welfare of an elected candidate, normalised to [0, 100].

All three measures are built on a candidate's Borda points: voter i gives
candidate c exactly m - pos(i, c) points, so a unanimous favourite collects
m-1 points per voter and a unanimous last place collects none.

- Borda welfare: mean points, scaled by the unanimous-favourite total.
- Rawls welfare: the unhappiest voter's points, scaled by m-1.
- Nash welfare: geometric mean of points, scaled by m-1. The zero point is
  pinned at the last position, so one last place forces Nash welfare to 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Profile


@dataclass(frozen=True)
class WelfareTriple:
    borda: float
    rawls: float
    nash: float

    def as_dict(self) -> dict[str, float]:
        return {"borda": self.borda, "rawls": self.rawls, "nash": self.nash}


MEASURES: tuple[str, ...] = ("borda", "rawls", "nash")


def borda_points(profile: Profile, candidate: int) -> np.ndarray:
    """Per-voter points for `candidate`: m - pos(i, c), each in [0, m-1]."""
    if not 0 <= candidate < profile.m:
        raise ValueError(f"candidate {candidate} out of range for m={profile.m}")
    return (profile.m - 1) - profile.position_matrix[:, candidate]


def _check_m(profile: Profile) -> None:
    if profile.m < 2:
        raise ValueError("welfare needs m >= 2 (a single candidate has no spread)")


def borda_welfare(profile: Profile, candidate: int) -> float:
    _check_m(profile)
    pts = borda_points(profile, candidate)
    return 100.0 * float(pts.sum()) / ((profile.m - 1) * profile.n)


def rawls_welfare(profile: Profile, candidate: int) -> float:
    _check_m(profile)
    pts = borda_points(profile, candidate)
    return 100.0 * float(pts.min()) / (profile.m - 1)


def nash_welfare(profile: Profile, candidate: int) -> float:
    """Geometric mean of Borda points, in log space to avoid overflow.

    Exactly 0 whenever any voter ranks the candidate last.
    """
    _check_m(profile)
    pts = borda_points(profile, candidate)
    if (pts == 0).any():
        return 0.0
    log_mean = float(np.log(pts.astype(np.float64)).mean())
    return 100.0 * float(np.exp(log_mean)) / (profile.m - 1)


def welfare_triple(profile: Profile, candidate: int) -> WelfareTriple:
    return WelfareTriple(
        borda=borda_welfare(profile, candidate),
        rawls=rawls_welfare(profile, candidate),
        nash=nash_welfare(profile, candidate),
    )


def borda_welfare_all(profile: Profile) -> np.ndarray:
    """Borda welfare of every candidate at once (length-m array)."""
    _check_m(profile)
    pts = (profile.m - 1) - profile.position_matrix
    return 100.0 * pts.sum(axis=0) / ((profile.m - 1) * profile.n)
