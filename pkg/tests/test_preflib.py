import pytest

from votewelfare.core import Ranking
from votewelfare.preflib import (
    BallotBag,
    MixtureComponent,
    MixtureFile,
    ParseError,
    load_mixture_file,
    parse_strict_order_file,
    serialize_ballot_bag,
)

SMALL_FILE = """\
# FILE NAME: small.soc
# NUMBER ALTERNATIVES: 3
# NUMBER VOTERS: 3
# ALTERNATIVE NAME 1: Alpha
# ALTERNATIVE NAME 2: Beta
# ALTERNATIVE NAME 3: Gamma
2: 1,3,2
1: 3,2,1
"""


class TestStrictOrderParsing:
    def test_small_file(self):
        bag = parse_strict_order_file(SMALL_FILE, source="small.soc")
        assert bag.m == 3
        assert bag.total_weight == 3
        assert bag.entries == (
            (Ranking.of([0, 2, 1]), 2),
            (Ranking.of([2, 1, 0]), 1),
        )
        assert bag.alternative_names == ("Alpha", "Beta", "Gamma")

    def test_empty_ballot_section(self):
        with pytest.raises(ParseError):
            parse_strict_order_file("# NUMBER ALTERNATIVES: 3\n")

    def test_duplicate_candidate(self):
        text = "# NUMBER ALTERNATIVES: 3\n1: 1,1,3\n"
        with pytest.raises(ParseError, match=r":2: duplicate candidate 1"):
            parse_strict_order_file(text)

    def test_incomplete_ranking(self):
        text = "# NUMBER ALTERNATIVES: 3\n1: 1,3\n"
        with pytest.raises(ParseError, match="incomplete"):
            parse_strict_order_file(text)

    def test_malformed_count(self):
        text = "# NUMBER ALTERNATIVES: 2\nx: 1,2\n"
        with pytest.raises(ParseError, match="malformed count"):
            parse_strict_order_file(text)

    def test_candidate_out_of_range(self):
        text = "# NUMBER ALTERNATIVES: 2\n1: 1,5\n"
        with pytest.raises(ParseError, match="outside"):
            parse_strict_order_file(text)

    def test_error_carries_line_number(self):
        text = "# NUMBER ALTERNATIVES: 2\n1: 1,2\n1: 2,2\n"
        with pytest.raises(ParseError) as err:
            parse_strict_order_file(text, source="f.soc")
        assert str(err.value).startswith("f.soc:3:")

    def test_ties_rejected(self):
        text = "# NUMBER ALTERNATIVES: 3\n1: 1,{2,3}\n"
        with pytest.raises(ParseError, match="tie"):
            parse_strict_order_file(text)

    def test_ties_broken_by_index_on_request(self):
        text = "# NUMBER ALTERNATIVES: 3\n1: {3,2},1\n"
        bag = parse_strict_order_file(text, break_ties_by_index=True)
        assert bag.entries[0][0] == Ranking.of([1, 2, 0])

    def test_vote_count_mismatch_warns(self, capsys):
        text = "# NUMBER ALTERNATIVES: 2\n# NUMBER VOTERS: 5\n1: 1,2\n"
        bag = parse_strict_order_file(text, source="w.soc")
        assert bag.total_weight == 1
        err = capsys.readouterr().err
        assert "w.soc:0: warning" in err

    def test_repeated_orders_merge(self):
        text = "# NUMBER ALTERNATIVES: 2\n1: 1,2\n2: 1,2\n"
        bag = parse_strict_order_file(text)
        assert bag.entries == ((Ranking.of([0, 1]), 3),)

    def test_round_trip(self):
        bag = parse_strict_order_file(SMALL_FILE, source="small.soc")
        again = parse_strict_order_file(serialize_ballot_bag(bag), source="small.soc")
        assert again == bag


class TestBallotBagInvariants:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            BallotBag(entries=(), m=3, source="x")

    def test_rejects_zero_multiplicity(self):
        with pytest.raises(ValueError):
            BallotBag(entries=((Ranking.of([0, 1]), 0),), m=2, source="x")

    def test_rejects_mixed_m(self):
        with pytest.raises(ValueError):
            BallotBag(entries=((Ranking.of([0, 1, 2]), 1),), m=2, source="x")


class TestMixtureFiles:
    def test_single_component(self):
        mix = load_mixture_file("1.0 0.5 0,1,2\n")
        assert mix.m == 3
        assert mix.components[0].phi == 0.5
        assert mix.components[0].reference == Ranking.of([0, 1, 2])

    def test_two_components(self):
        mix = load_mixture_file("0.6 0.5 0,1\n0.4 0.9 1,0\n")
        assert len(mix.components) == 2

    def test_probabilities_must_sum_to_one(self):
        with pytest.raises(ParseError):
            load_mixture_file("0.6 0.5 0,1\n0.5 0.9 1,0\n")

    def test_phi_out_of_range(self):
        with pytest.raises(ParseError):
            load_mixture_file("1.0 1.5 0,1\n")

    def test_bad_reference(self):
        with pytest.raises(ParseError):
            load_mixture_file("1.0 0.5 0,0\n")

    def test_comments_and_blanks_ignored(self):
        mix = load_mixture_file("# header\n\n1.0 0.5 1,0  # inline\n")
        assert mix.m == 2

    def test_empty_file(self):
        with pytest.raises(ParseError):
            load_mixture_file("# nothing here\n")

    def test_file_model_requires_references(self):
        with pytest.raises(ValueError):
            MixtureFile(components=(MixtureComponent(weight=1.0, phi=0.5, reference=None),))
