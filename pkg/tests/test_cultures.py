import itertools

import numpy as np
import pytest

from votewelfare.core import Profile, Ranking, kendall_tau
from votewelfare.cultures import (
    CULTURE_NAMES,
    CultureSpec,
    RngStream,
    culture_from_name,
    euclidean_profile,
    mallows_probability,
    profile_stream,
    sample_bag,
    sample_euclidean,
    sample_impartial,
    sample_mallows,
    sample_mixture,
    sample_profile,
)
from votewelfare.preflib import BallotBag, MixtureComponent


def rng_for(seed=0, stream=0):
    return RngStream(seed, stream).generator()


class TestStreams:
    def test_same_stream_same_draws(self):
        a = rng_for(7, 3).random(10)
        b = rng_for(7, 3).random(10)
        np.testing.assert_array_equal(a, b)

    def test_different_streams_differ(self):
        a = rng_for(7, 3).random(10)
        b = rng_for(7, 4).random(10)
        assert not np.array_equal(a, b)

    def test_profile_stream_unique(self):
        seen = set()
        for n, m, t in itertools.product((3, 10, 100), (3, 10, 100), (0, 1, 9999)):
            seen.add(profile_stream(n, m, t))
        assert len(seen) == 27

    def test_profile_stream_bounds(self):
        with pytest.raises(ValueError):
            profile_stream(0, 3, 0)


class TestImpartial:
    def test_single_candidate(self):
        p = sample_impartial(1, 5, rng_for())
        assert all(b.order == (0,) for b in p.ballots)

    def test_uniform_frequencies(self):
        counts: dict[tuple, int] = {}
        p = sample_impartial(3, 60_000, rng_for(123))
        for b in p.ballots:
            counts[b.order] = counts.get(b.order, 0) + 1
        assert len(counts) == 6
        for order, c in counts.items():
            assert abs(c / 60_000 - 1 / 6) < 0.01, order

    def test_deterministic(self):
        a = sample_impartial(5, 10, rng_for(42, 9))
        b = sample_impartial(5, 10, rng_for(42, 9))
        assert a == b


class TestEuclidean:
    def test_closer_candidate_preferred(self):
        voters = np.array([[0.0, 0.0]])
        candidates = np.array([[0.1, 0.0], [0.5, 0.5]])
        p = euclidean_profile(voters, candidates)
        assert p.ballots[0].order == (0, 1)

    def test_exact_tie_breaks_by_index(self):
        voters = np.array([[0.5]])
        candidates = np.array([[0.25], [0.75]])
        p = euclidean_profile(voters, candidates)
        assert p.ballots[0].order == (0, 1)

    def test_ballots_are_permutations(self):
        for _ in range(20):
            p = sample_euclidean(2, 6, 50, rng_for(8))
            assert p.n == 50 and p.m == 6  # constructors validate permutations

    def test_dims_1_single_peaked(self):
        rng = rng_for(77)
        for _ in range(50):
            voters = rng.random((6, 1))
            candidates = rng.random((5, 1))
            p = euclidean_profile(voters, candidates)
            axis = list(np.argsort(candidates[:, 0], kind="stable"))
            for b in p.ballots:
                # every prefix of the ballot is contiguous on the axis
                for k in range(1, 6):
                    spots = sorted(axis.index(c) for c in b.order[:k])
                    assert spots == list(range(spots[0], spots[0] + k))


class TestMallows:
    def test_phi_out_of_range(self):
        with pytest.raises(ValueError):
            sample_mallows(Ranking.of([0, 1]), 0.0, 1, rng_for())
        with pytest.raises(ValueError):
            sample_mallows(Ranking.of([0, 1]), 1.5, 1, rng_for())

    def test_phi_1_is_uniform(self):
        p = sample_mallows(Ranking.of([0, 1, 2]), 1.0, 60_000, rng_for(5))
        counts: dict[tuple, int] = {}
        for b in p.ballots:
            counts[b.order] = counts.get(b.order, 0) + 1
        for c in counts.values():
            assert abs(c / 60_000 - 1 / 6) < 0.01

    def test_m2_closed_form(self):
        # P(ballot == sigma) = 1 / (1 + phi) = 2/3 at phi = 0.5
        p = sample_mallows(Ranking.of([0, 1]), 0.5, 100_000, rng_for(6))
        agree = sum(b.order == (0, 1) for b in p.ballots)
        assert abs(agree / 100_000 - 2 / 3) < 0.01

    def test_small_phi_concentrates_on_sigma(self):
        # closed form: P(d=0) = 1 / ((1+phi)(1+phi+phi^2)) = 0.98019... at phi=0.01
        sigma = Ranking.of([2, 0, 1])
        phi = 0.01
        expected = mallows_probability(sigma, phi, sigma)
        assert expected == pytest.approx(0.980199, abs=1e-6)
        p = sample_mallows(sigma, phi, 10_000, rng_for(7))
        same = sum(b == sigma for b in p.ballots)
        assert abs(same / 10_000 - expected) < 0.01

    def test_deterministic(self):
        sigma = Ranking.of([3, 1, 0, 2])
        a = sample_mallows(sigma, 0.7, 25, rng_for(1, 2))
        b = sample_mallows(sigma, 0.7, 25, rng_for(1, 2))
        assert a == b


class TestMallowsProbability:
    def test_uniform_at_phi_1(self):
        sigma = Ranking.of([0, 1, 2])
        for order in itertools.permutations(range(3)):
            assert mallows_probability(sigma, 1.0, Ranking.of(order)) == pytest.approx(1 / 6)

    def test_m2_reference(self):
        sigma = Ranking.of([0, 1])
        assert mallows_probability(sigma, 0.5, sigma) == pytest.approx(2 / 3)

    def test_normalisation(self):
        sigma = Ranking.of([2, 0, 3, 1])
        total = sum(
            mallows_probability(sigma, 0.7, Ranking.of(order))
            for order in itertools.permutations(range(4))
        )
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_sampler_matches_probabilities(self):
        # light version of the acceptance TV check
        sigma = Ranking.of([0, 1, 2])
        phi = 0.5
        p = sample_mallows(sigma, phi, 50_000, rng_for(9))
        counts: dict[tuple, int] = {}
        for b in p.ballots:
            counts[b.order] = counts.get(b.order, 0) + 1
        tv = 0.5 * sum(
            abs(counts.get(order, 0) / 50_000 - mallows_probability(sigma, phi, Ranking.of(order)))
            for order in itertools.permutations(range(3))
        )
        assert tv < 0.02

    def test_rim_total_variation_m4(self):
        # 200,000 draws over all 24 orders stay within TV 0.01 of the closed form
        sigma = Ranking.of([1, 3, 0, 2])
        for phi, stream in ((0.5, 0), (0.8, 1)):
            p = sample_mallows(sigma, phi, 200_000, rng_for(26, stream))
            counts: dict[tuple, int] = {}
            for b in p.ballots:
                counts[b.order] = counts.get(b.order, 0) + 1
            tv = 0.5 * sum(
                abs(
                    counts.get(order, 0) / 200_000
                    - mallows_probability(sigma, phi, Ranking.of(order))
                )
                for order in itertools.permutations(range(4))
            )
            assert tv < 0.01, (phi, tv)


class TestMixture:
    def test_single_component_is_plain_mallows(self):
        comp = (MixtureComponent(weight=1.0, phi=0.01, reference=Ranking.of([1, 2, 0])),)
        p = sample_mixture(comp, 3, 2_000, rng_for(3))
        same = sum(b.order == (1, 2, 0) for b in p.ballots)
        assert same / 2_000 >= 0.98

    def test_zero_weight_component_never_used(self):
        comps = (
            MixtureComponent(weight=1.0, phi=0.01, reference=Ranking.of([0, 1, 2])),
            MixtureComponent(weight=0.0, phi=0.01, reference=Ranking.of([2, 1, 0])),
        )
        p = sample_mixture(comps, 3, 5_000, rng_for(11))
        # under phi=0.01 a component-2 draw would land on (2,1,0) almost surely
        assert sum(b.order == (2, 1, 0) for b in p.ballots) == 0

    def test_two_fixed_components_match_analytic_mixture(self):
        sigma = Ranking.of([0, 1, 2])
        reverse = Ranking.of([2, 1, 0])
        comps = (
            MixtureComponent(weight=0.5, phi=0.5, reference=sigma),
            MixtureComponent(weight=0.5, phi=0.5, reference=reverse),
        )
        p = sample_mixture(comps, 3, 100_000, rng_for(13))
        counts: dict[tuple, int] = {}
        for b in p.ballots:
            counts[b.order] = counts.get(b.order, 0) + 1
        for order in itertools.permutations(range(3)):
            r = Ranking.of(order)
            expected = 0.5 * mallows_probability(sigma, 0.5, r) + 0.5 * mallows_probability(
                reverse, 0.5, r
            )
            assert abs(counts.get(order, 0) / 100_000 - expected) < 0.01

    def test_bad_weights_rejected(self):
        comps = (
            MixtureComponent(weight=0.6, phi=0.5, reference=Ranking.of([0, 1])),
            MixtureComponent(weight=0.5, phi=0.5, reference=Ranking.of([1, 0])),
        )
        with pytest.raises(ValueError):
            sample_mixture(comps, 2, 5, rng_for())

    def test_random_references_per_profile(self):
        spec = culture_from_name("mixed_mallows")
        seen_tops = set()
        for t in range(30):
            p = sample_profile(spec, 5, 8, rng_for(1, t))
            seen_tops.add(p.ballots[0].order[0])
        assert len(seen_tops) > 1  # references are not pinned across profiles


class TestBag:
    def bag(self) -> BallotBag:
        return BallotBag(
            entries=((Ranking.of([0, 1, 2]), 1), (Ranking.of([2, 1, 0]), 3)),
            m=3,
            source="test",
        )

    def test_single_entry(self):
        bag = BallotBag(entries=((Ranking.of([1, 0]), 1),), m=2, source="one")
        p = sample_bag(bag, 10, rng_for())
        assert all(b.order == (1, 0) for b in p.ballots)

    def test_weighted_frequencies(self):
        p = sample_bag(self.bag(), 40_000, rng_for(21))
        heavy = sum(b.order == (2, 1, 0) for b in p.ballots)
        assert abs(heavy / 40_000 - 0.75) < 0.01

    def test_members_only(self):
        p = sample_bag(self.bag(), 5_000, rng_for(22))
        allowed = {(0, 1, 2), (2, 1, 0)}
        assert all(b.order in allowed for b in p.ballots)


class TestCultureCatalog:
    def test_canonical_names_resolve(self):
        for name in CULTURE_NAMES:
            spec = culture_from_name(name)
            assert spec.label == name

    def test_unknown_culture(self):
        with pytest.raises(ValueError):
            culture_from_name("urn")

    def test_all_samplers_deterministic(self):
        for name in CULTURE_NAMES:
            spec = culture_from_name(name)
            m = spec.fixed_m() or 5
            a = sample_profile(spec, m, 6, rng_for(3, 14))
            b = sample_profile(spec, m, 6, rng_for(3, 14))
            assert a == b, name

    def test_data_cultures_pin_m(self):
        skating = culture_from_name("skating_bag")
        assert skating.fixed_m() == 30
        sushi = culture_from_name("sushi")
        assert sushi.fixed_m() == 10
        with pytest.raises(ValueError):
            sample_profile(sushi, 5, 3, rng_for())

    def test_mallows_reference_respected(self):
        sigma = Ranking.of([2, 0, 1])
        spec = culture_from_name("mallows_0.01", sigma=sigma)
        p = sample_profile(spec, 3, 50, rng_for(4))
        same = sum(b == sigma for b in p.ballots)
        assert same >= 45

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            CultureSpec(kind="mallows", label="bad", phi=1.5)
        with pytest.raises(ValueError):
            CultureSpec(kind="euclidean", label="bad", dims=0)
        with pytest.raises(ValueError):
            CultureSpec(kind="bag", label="bad")
