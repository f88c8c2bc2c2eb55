"""Seed-deterministic profile sampling from statistical cultures.

Cultures: impartial (uniform i.i.d. orders), k-Euclidean (unit-cube points,
closer is better), Mallows (probability proportional to phi^distance from a
reference order, sampled exactly by repeated insertion), mixed Mallows, and
bag-of-preferences (resampling observed ballots with replacement).

Every sampler is a pure function of its parameters and an RNG stream:
identical (seed, stream id) means bit-identical profiles, which is what lets
the sweep engine pair profiles across rules and run cells in parallel.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .core import Profile, Ranking
from .preflib import (
    BallotBag,
    MixtureComponent,
    load_mixture_file,
    parse_strict_order_file,
)


@dataclass(frozen=True)
class RngStream:
    """A named, replayable random stream: (seed, stream id) fixes every draw."""

    seed: int
    stream: int

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(self.stream,)))


def profile_stream(n: int, m: int, trial: int) -> int:
    """Stream id for one profile draw, unique per (n, m, trial) cell slot.

    Rules and behaviours are deliberately absent: every rule sees the same
    profile for a given trial, so rule comparisons are paired.
    """
    if not (0 < n < 1 << 16 and 0 < m < 1 << 16 and 0 <= trial < 1 << 32):
        raise ValueError(f"stream packing out of range: n={n}, m={m}, trial={trial}")
    return (n << 48) | (m << 32) | trial


@dataclass(frozen=True)
class CultureSpec:
    """A preference-generating distribution plus its parameters."""

    kind: str  # "impartial" | "euclidean" | "mallows" | "mixed_mallows" | "bag"
    label: str
    dims: int | None = None
    phi: float | None = None
    reference: Ranking | None = None
    components: tuple[MixtureComponent, ...] | None = None
    bag: BallotBag | None = None

    def __post_init__(self) -> None:
        if self.kind == "euclidean" and (self.dims is None or self.dims < 1):
            raise ValueError(f"euclidean culture needs dims >= 1, got {self.dims}")
        if self.kind == "mallows":
            if self.phi is None or not 0 < self.phi <= 1:
                raise ValueError(f"mallows needs phi in (0, 1], got {self.phi}")
        if self.kind == "mixed_mallows":
            if not self.components:
                raise ValueError("mixed mallows needs components")
            total = sum(c.weight for c in self.components)
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"component probabilities sum to {total!r}, expected 1")
            for c in self.components:
                if not 0 < c.phi <= 1:
                    raise ValueError(f"phi must be in (0, 1], got {c.phi}")
        if self.kind == "bag" and self.bag is None:
            raise ValueError("bag culture needs ballots")

    def fixed_m(self) -> int | None:
        """The candidate count pinned by data, if any (bags, fixed references)."""
        if self.kind == "bag":
            assert self.bag is not None
            return self.bag.m
        if self.kind == "mallows" and self.reference is not None:
            return self.reference.m
        if self.kind == "mixed_mallows":
            assert self.components is not None
            for c in self.components:
                if c.reference is not None:
                    return c.reference.m
        return None


def sample_impartial(m: int, n: int, rng: np.random.Generator) -> Profile:
    """n ballots drawn uniformly from all m! orders."""
    if m < 1 or n < 1:
        raise ValueError(f"need m >= 1 and n >= 1, got m={m}, n={n}")
    rows = rng.permuted(np.tile(np.arange(m), (n, 1)), axis=1)
    return Profile(tuple(Ranking(tuple(int(c) for c in row)) for row in rows))


def euclidean_profile(voters: np.ndarray, candidates: np.ndarray) -> Profile:
    """Ballots by ascending distance to each voter; exact ties go to the lower index."""
    diffs = voters[:, None, :] - candidates[None, :, :]
    dist2 = (diffs * diffs).sum(axis=2)
    rows = np.argsort(dist2, axis=1, kind="stable")
    return Profile(tuple(Ranking(tuple(int(c) for c in row)) for row in rows))


def sample_euclidean(dims: int, m: int, n: int, rng: np.random.Generator) -> Profile:
    """Voter and candidate points uniform in [0, 1]^dims."""
    if dims < 1:
        raise ValueError(f"need dims >= 1, got {dims}")
    voters = rng.random((n, dims))
    candidates = rng.random((m, dims))
    return euclidean_profile(voters, candidates)


def _insertion_cdfs(m: int, phi: float) -> list[list[float]]:
    """Slot CDFs for the repeated insertion model, one per insertion step.

    When the j-th reference candidate is inserted, slot i in {1..j} (1 = top)
    has probability phi^(j-i) / (1 + phi + ... + phi^(j-1)): placing it above
    k already-inserted candidates costs k discordant pairs, weighted phi^k.
    """
    cdfs: list[list[float]] = []
    for j in range(2, m + 1):
        weights = [phi ** (j - i) for i in range(1, j + 1)]
        total = sum(weights)
        acc = 0.0
        cdf = []
        for w in weights:
            acc += w
            cdf.append(acc / total)
        cdfs.append(cdf)
    return cdfs


def _insert_ballot(sigma_order: tuple[int, ...], cdfs: list[list[float]], u_row: np.ndarray) -> Ranking:
    ballot = [sigma_order[0]]
    for j in range(2, len(sigma_order) + 1):
        slot = bisect_right(cdfs[j - 2], u_row[j - 2])
        ballot.insert(min(slot, j - 1), sigma_order[j - 1])
    return Ranking(tuple(ballot))


def sample_mallows(sigma: Ranking, phi: float, n: int, rng: np.random.Generator) -> Profile:
    """n i.i.d. ballots with probability proportional to phi^kendall_tau(sigma, .)."""
    if not 0 < phi <= 1:
        raise ValueError(f"phi must be in (0, 1], got {phi}")
    m = sigma.m
    cdfs = _insertion_cdfs(m, phi)
    uniforms = rng.random((n, max(m - 1, 1)))
    return Profile(tuple(_insert_ballot(sigma.order, cdfs, uniforms[v]) for v in range(n)))


def mallows_probability(sigma: Ranking, phi: float, r: Ranking) -> float:
    """Exact probability of ballot r: phi^d(sigma, r) / Z.

    Z has the closed form prod_{j=1..m} (1 + phi + ... + phi^(j-1)), so this
    stays cheap for any m.
    """
    from .core import kendall_tau

    if not 0 < phi <= 1:
        raise ValueError(f"phi must be in (0, 1], got {phi}")
    z = 1.0
    for j in range(1, sigma.m + 1):
        z *= sum(phi**t for t in range(j))
    return phi ** kendall_tau(sigma, r) / z


def sample_mixture(
    components: tuple[MixtureComponent, ...], m: int, n: int, rng: np.random.Generator
) -> Profile:
    """One profile from a Mallows mixture.

    Components without a reference order get one drawn uniformly, once per
    profile; each voter then independently picks a component by weight.
    """
    total = sum(c.weight for c in components)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"component probabilities sum to {total!r}, expected 1")
    references: list[tuple[int, ...]] = []
    for comp in components:
        if comp.reference is None:
            references.append(tuple(int(c) for c in rng.permutation(m)))
        elif comp.reference.m != m:
            raise ValueError(f"component reference has m={comp.reference.m}, expected {m}")
        else:
            references.append(comp.reference.order)
    weights = np.array([c.weight for c in components], dtype=np.float64)
    choice = rng.choice(len(components), size=n, p=weights / weights.sum())
    uniforms = rng.random((n, max(m - 1, 1)))
    cdfs = {i: _insertion_cdfs(m, comp.phi) for i, comp in enumerate(components)}
    ballots = tuple(
        _insert_ballot(references[choice[v]], cdfs[int(choice[v])], uniforms[v])
        for v in range(n)
    )
    return Profile(ballots)


def sample_bag(bag: BallotBag, n: int, rng: np.random.Generator) -> Profile:
    """n draws with replacement, weighted by multiplicity."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    cumulative = np.cumsum([count for _, count in bag.entries])
    picks = np.searchsorted(cumulative, rng.random(n) * bag.total_weight, side="right")
    return Profile(tuple(bag.entries[int(i)][0] for i in picks))


def sample_profile(spec: CultureSpec, m: int, n: int, rng: np.random.Generator) -> Profile:
    """Dispatch to the right sampler, enforcing data-pinned candidate counts."""
    pinned = spec.fixed_m()
    if pinned is not None and m != pinned:
        raise ValueError(f"culture {spec.label!r} pins m={pinned}, got m={m}")
    if spec.kind == "impartial":
        return sample_impartial(m, n, rng)
    if spec.kind == "euclidean":
        assert spec.dims is not None
        return sample_euclidean(spec.dims, m, n, rng)
    if spec.kind == "mallows":
        assert spec.phi is not None
        sigma = spec.reference
        if sigma is None:
            sigma = Ranking(tuple(int(c) for c in rng.permutation(m)))
        return sample_mallows(sigma, spec.phi, n, rng)
    if spec.kind == "mixed_mallows":
        assert spec.components is not None
        return sample_mixture(spec.components, m, n, rng)
    if spec.kind == "bag":
        assert spec.bag is not None
        return sample_bag(spec.bag, n, rng)
    raise ValueError(f"unknown culture kind {spec.kind!r}")


CULTURE_NAMES: tuple[str, ...] = (
    "ic",
    "euclid_1",
    "euclid_2",
    "euclid_5",
    "mallows_0.8",
    "mallows_0.5",
    "mixed_mallows",
    "sushi",
    "skating_bag",
)


def _packaged_text(filename: str) -> str:
    return resources.files("votewelfare").joinpath("data", filename).read_text(encoding="utf-8")


def culture_from_name(
    name: str,
    sigma: Ranking | None = None,
    bag_path: str | None = None,
    mixture_path: str | None = None,
) -> CultureSpec:
    """Resolve a canonical culture name (plus optional data files) to a spec.

    `euclid_<dims>` and `mallows_<phi>` accept any valid parameter, not just
    the roster values. `sushi` and `skating_bag` read their bundled data
    files unless a replacement path is given.
    """
    if name == "ic":
        return CultureSpec(kind="impartial", label="ic")
    if name.startswith("euclid_"):
        try:
            dims = int(name.removeprefix("euclid_"))
        except ValueError:
            raise ValueError(f"bad euclidean culture name {name!r}") from None
        return CultureSpec(kind="euclidean", label=name, dims=dims)
    if name.startswith("mallows_"):
        try:
            phi = float(name.removeprefix("mallows_"))
        except ValueError:
            raise ValueError(f"bad mallows culture name {name!r}") from None
        return CultureSpec(kind="mallows", label=name, phi=phi, reference=sigma)
    if name == "mixed_mallows":
        half = MixtureComponent(weight=0.5, phi=0.5, reference=None)
        return CultureSpec(kind="mixed_mallows", label=name, components=(half, half))
    if name == "sushi":
        if mixture_path is not None:
            with open(mixture_path, encoding="utf-8") as fh:
                mixture = load_mixture_file(fh.read(), source=mixture_path)
        else:
            mixture = load_mixture_file(_packaged_text("sushi_mixture.txt"), source="sushi_mixture.txt")
        return CultureSpec(kind="mixed_mallows", label=name, components=mixture.components)
    if name == "skating_bag":
        if bag_path is not None:
            with open(bag_path, encoding="utf-8") as fh:
                bag = parse_strict_order_file(fh.read(), source=bag_path)
        else:
            bag = parse_strict_order_file(
                _packaged_text("skating_sample.soc"), source="skating_sample.soc"
            )
        return CultureSpec(kind="bag", label=name, bag=bag)
    raise ValueError(f"unknown culture {name!r}; known cultures: {', '.join(CULTURE_NAMES)}")
