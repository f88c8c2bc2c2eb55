"""Scoring vectors, tallies, and winner determination.

The rule roster (15 rules):

- Borda family: full Borda (k = m-1), k = floor(m/2), k = floor(m/4), k = 5.
- Approval family: k = floor(m/2), k = floor(m/4), k = 5, plurality (k = 1).
- Geometric family: p in {2, 1.5, 1.2, 0.8, 0.65, 0.5}.
- Nash rule: logarithmic scores with a large negative last place, so no
  amount of first places compensates for a single last place.

Ties are always broken lexicographically: the smallest candidate index among
the top scorers wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Profile


@dataclass(frozen=True)
class ScoringVector:
    """Non-increasing scores s_1..s_m with s_1 > s_m, plus a display label."""

    scores: tuple[float, ...]
    label: str

    def __post_init__(self) -> None:
        s = self.scores
        if len(s) < 2:
            raise ValueError("a scoring vector needs at least two entries")
        if any(s[i] < s[i + 1] for i in range(len(s) - 1)):
            raise ValueError(f"scores must be non-increasing: {s}")
        if not s[0] > s[-1]:
            raise ValueError(f"degenerate vector (s_1 == s_m): {s}")

    @property
    def m(self) -> int:
        return len(self.scores)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.scores, dtype=np.float64)


@dataclass(frozen=True)
class RuleSpec:
    """One rule of the roster.

    For approval/borda exactly one of `k_fixed` / `k_divisor` is set, except
    full Borda which sets neither (k resolves to m-1). `p` is the geometric
    parameter; the Nash rule needs no parameter but its vector depends on n.
    """

    name: str
    family: str  # "approval" | "borda" | "geometric" | "nash"
    k_fixed: int | None = None
    k_divisor: int | None = None
    p: float | None = None

    def __post_init__(self) -> None:
        if self.family not in ("approval", "borda", "geometric", "nash"):
            raise ValueError(f"unknown rule family {self.family!r}")
        if self.family == "geometric":
            if self.p is None or self.p <= 0 or self.p == 1:
                raise ValueError(f"geometric rule needs p > 0, p != 1 (got {self.p})")
            if self.p > 1 and not math.isfinite(self.p):
                raise ValueError("geometric p must be finite")

    def resolve_k(self, m: int) -> int:
        """Truncation depth for approval/borda: clamped to [1, m-1]."""
        if self.k_fixed is not None:
            k = self.k_fixed
        elif self.k_divisor is not None:
            k = m // self.k_divisor
        else:
            k = m - 1
        return max(1, min(k, m - 1))


RULES: tuple[RuleSpec, ...] = (
    RuleSpec("borda", "borda"),
    RuleSpec("borda_m2", "borda", k_divisor=2),
    RuleSpec("borda_m4", "borda", k_divisor=4),
    RuleSpec("borda_5", "borda", k_fixed=5),
    RuleSpec("approval_m2", "approval", k_divisor=2),
    RuleSpec("approval_m4", "approval", k_divisor=4),
    RuleSpec("approval_5", "approval", k_fixed=5),
    RuleSpec("plurality", "approval", k_fixed=1),
    RuleSpec("geometric_2", "geometric", p=2.0),
    RuleSpec("geometric_1.5", "geometric", p=1.5),
    RuleSpec("geometric_1.2", "geometric", p=1.2),
    RuleSpec("geometric_0.8", "geometric", p=0.8),
    RuleSpec("geometric_0.65", "geometric", p=0.65),
    RuleSpec("geometric_0.5", "geometric", p=0.5),
    RuleSpec("nash", "nash"),
)

RULES_BY_NAME: dict[str, RuleSpec] = {r.name: r for r in RULES}

RULE_NAMES: tuple[str, ...] = tuple(r.name for r in RULES)


def rule_from_name(name: str) -> RuleSpec:
    try:
        return RULES_BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown rule {name!r}; known rules: {', '.join(RULE_NAMES)}") from None


def make_scoring_vector(spec: RuleSpec, m: int, n: int) -> ScoringVector:
    """Build the rule's length-m score sequence.

    Geometric scores are indexed from the bottom of the ballot so that the
    sequence decreases: s_i = p^(m+1-i) for convex rules (p > 1; with m = 5
    and p = 2 this is 32, 16, 8, 4, 2) and s_i = 1 - p^(m+1-i) for concave
    rules (0 < p < 1). Either form is affinely equivalent to the textbook
    one, and affine transforms never change the winner.
    """
    if m < 2:
        raise ValueError(f"scoring rules need m >= 2 (got m={m})")
    if n < 1:
        raise ValueError(f"need n >= 1 (got n={n})")
    if spec.family == "approval":
        k = spec.resolve_k(m)
        scores = tuple(1.0 if i <= k else 0.0 for i in range(1, m + 1))
    elif spec.family == "borda":
        k = spec.resolve_k(m)
        scores = tuple(float(max(k - i + 1, 0)) for i in range(1, m + 1))
    elif spec.family == "geometric":
        p = spec.p
        assert p is not None
        if p > 1:
            scores = tuple(p ** (m + 1 - i) for i in range(1, m + 1))
        else:
            scores = tuple(1.0 - p ** (m + 1 - i) for i in range(1, m + 1))
    elif spec.family == "nash":
        if m < 3:
            raise ValueError("the Nash rule degenerates for m=2 (s_1 would equal s_m)")
        scores = tuple(math.log(m - i) for i in range(1, m)) + (-n * math.log(m - 1),)
    else:  # pragma: no cover - guarded in RuleSpec
        raise ValueError(f"unknown rule family {spec.family!r}")
    return ScoringVector(scores, spec.name)


def tally(profile: Profile, vector: ScoringVector) -> np.ndarray:
    """Per-candidate score totals: totals[c] = sum_i s_{pos(i, c)}."""
    if vector.m != profile.m:
        raise ValueError(f"vector length {vector.m} does not match profile m={profile.m}")
    return vector.array[profile.position_matrix].sum(axis=0)


def elect(totals: np.ndarray | list[float] | tuple[float, ...]) -> int:
    """The winning candidate: smallest index among the top scorers."""
    arr = np.asarray(totals)
    if arr.size == 0:
        raise ValueError("cannot elect from empty totals")
    return int(np.argmax(arr))
