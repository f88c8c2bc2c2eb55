"""External preference data: Preflib strict-order files and mixture-parameter files.

Covers exactly two layouts:

- Preflib complete strict orders (the modern ``.soc`` layout): ``#``-prefixed
  metadata headers (NUMBER ALTERNATIVES, ALTERNATIVE NAME i, NUMBER VOTERS),
  then one ``count: c1,c2,...,cm`` line per distinct ranking. Alternative
  ids are mapped to 0-based candidate indices in declaration order.
- Mixture parameters: lines of ``probability phi ref_c1,ref_c2,...,ref_cm``
  with ``#`` comments, describing a fixed mixed-Mallows model.

Parse failures raise :class:`ParseError` carrying a ``source:line:`` prefix;
non-fatal oddities (a vote-count header that disagrees with the ballots) are
printed to stderr with the same prefix.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .core import Ranking


class ParseError(ValueError):
    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.source = source
        self.line = line


@dataclass(frozen=True)
class BallotBag:
    """Distinct complete rankings with multiplicities, e.g. one contest's judges."""

    entries: tuple[tuple[Ranking, int], ...]
    m: int
    source: str
    alternative_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("a ballot bag cannot be empty")
        for ranking, count in self.entries:
            if ranking.m != self.m:
                raise ValueError(f"bag entry has m={ranking.m}, expected {self.m}")
            if count < 1:
                raise ValueError(f"multiplicity must be >= 1, got {count}")

    @property
    def total_weight(self) -> int:
        return sum(count for _, count in self.entries)


@dataclass(frozen=True)
class MixtureComponent:
    """One Mallows component; reference None means "draw fresh per profile"."""

    weight: float
    phi: float
    reference: Ranking | None = None


@dataclass(frozen=True)
class MixtureFile:
    """A fixed mixed-Mallows model read from disk (e.g. pre-fitted parameters)."""

    components: tuple[MixtureComponent, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("a mixture needs at least one component")
        total = sum(c.weight for c in self.components)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"mixture probabilities sum to {total!r}, expected 1")
        for c in self.components:
            if not 0 < c.phi <= 1:
                raise ValueError(f"phi must be in (0, 1], got {c.phi}")
            if c.reference is None:
                raise ValueError("file-loaded mixtures need explicit reference orders")
            if c.reference.m != self.m:
                raise ValueError("mixture components disagree on m")

    @property
    def m(self) -> int:
        first = self.components[0].reference
        assert first is not None
        return first.m


def _split_ranking_tokens(body: str, source: str, lineno: int) -> list[str]:
    """Comma-split that keeps ``{...}`` tie groups together."""
    tokens: list[str] = []
    depth = 0
    current = ""
    for ch in body:
        if ch == "{":
            depth += 1
            current += ch
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise ParseError(source, lineno, "unbalanced '}' in ranking")
            current += ch
        elif ch == "," and depth == 0:
            tokens.append(current.strip())
            current = ""
        else:
            current += ch
    if depth != 0:
        raise ParseError(source, lineno, "unbalanced '{' in ranking")
    tokens.append(current.strip())
    return tokens


def parse_strict_order_file(
    text: str, source: str = "<string>", break_ties_by_index: bool = False
) -> BallotBag:
    """Parse a Preflib complete-strict-order file into a :class:`BallotBag`.

    Tied groups (``{a,b}``) are rejected: breaking them silently would change
    the preference distribution. Pass ``break_ties_by_index=True`` to expand
    tie groups in candidate-index order instead (a documented deviation from
    the source data).
    """
    m: int | None = None
    declared_voters: int | None = None
    names: dict[int, str] = {}
    counts: dict[tuple[int, ...], int] = {}
    order_seen: list[tuple[int, ...]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            header = line.lstrip("#").strip()
            if ":" not in header:
                continue
            key, _, value = header.partition(":")
            key = key.strip().upper()
            value = value.strip()
            if key == "NUMBER ALTERNATIVES":
                try:
                    m = int(value)
                except ValueError:
                    raise ParseError(source, lineno, f"bad NUMBER ALTERNATIVES: {value!r}") from None
            elif key == "NUMBER VOTERS":
                try:
                    declared_voters = int(value)
                except ValueError:
                    raise ParseError(source, lineno, f"bad NUMBER VOTERS: {value!r}") from None
            elif key.startswith("ALTERNATIVE NAME"):
                try:
                    alt_id = int(key[len("ALTERNATIVE NAME") :].strip())
                except ValueError:
                    raise ParseError(source, lineno, f"bad alternative header: {line!r}") from None
                names[alt_id] = value
            continue

        if ":" not in line:
            raise ParseError(source, lineno, f"expected 'count: ranking', got {line!r}")
        if m is None:
            raise ParseError(source, lineno, "ballot line before NUMBER ALTERNATIVES header")
        count_part, _, body = line.partition(":")
        try:
            count = int(count_part.strip())
        except ValueError:
            raise ParseError(source, lineno, f"malformed count {count_part.strip()!r}") from None
        if count < 1:
            raise ParseError(source, lineno, f"count must be >= 1, got {count}")

        order: list[int] = []
        for token in _split_ranking_tokens(body, source, lineno):
            if token.startswith("{"):
                if not break_ties_by_index:
                    raise ParseError(
                        source, lineno, f"tied candidates {token} (strict orders required)"
                    )
                group = [t.strip() for t in token[1:-1].split(",") if t.strip()]
                ids = sorted(_parse_alt_id(t, m, source, lineno) for t in group)
                order.extend(ids)
            elif token:
                order.append(_parse_alt_id(token, m, source, lineno))
        seen: set[int] = set()
        for c in order:
            if c in seen:
                raise ParseError(source, lineno, f"duplicate candidate {c + 1} in ranking")
            seen.add(c)
        if len(order) != m:
            raise ParseError(
                source, lineno, f"incomplete ranking: {len(order)} of {m} candidates"
            )
        key_t = tuple(order)
        if key_t not in counts:
            counts[key_t] = 0
            order_seen.append(key_t)
        counts[key_t] += count

    if m is None:
        raise ParseError(source, 0, "missing NUMBER ALTERNATIVES header")
    if not counts:
        raise ParseError(source, 0, "no ballots found")

    entries = tuple((Ranking(order), counts[order]) for order in order_seen)
    bag = BallotBag(
        entries=entries,
        m=m,
        source=source,
        alternative_names=tuple(names.get(i + 1, str(i + 1)) for i in range(m)),
    )
    if declared_voters is not None and bag.total_weight != declared_voters:
        print(
            f"{source}:0: warning: ballots sum to {bag.total_weight} votes, "
            f"header declares {declared_voters}",
            file=sys.stderr,
        )
    return bag


def _parse_alt_id(token: str, m: int, source: str, lineno: int) -> int:
    try:
        alt = int(token)
    except ValueError:
        raise ParseError(source, lineno, f"malformed candidate token {token!r}") from None
    if not 1 <= alt <= m:
        raise ParseError(source, lineno, f"candidate {alt} outside 1..{m}")
    return alt - 1


def serialize_ballot_bag(bag: BallotBag) -> str:
    """Render a bag back to the strict-order layout; parsing the result round-trips."""
    lines = [
        "# FILE NAME: " + bag.source,
        f"# NUMBER ALTERNATIVES: {bag.m}",
        f"# NUMBER VOTERS: {bag.total_weight}",
        f"# NUMBER UNIQUE ORDERS: {len(bag.entries)}",
    ]
    for i, name in enumerate(bag.alternative_names, start=1):
        lines.append(f"# ALTERNATIVE NAME {i}: {name}")
    for ranking, count in bag.entries:
        lines.append(f"{count}: " + ",".join(str(c + 1) for c in ranking.order))
    return "\n".join(lines) + "\n"


def load_mixture_file(text: str, source: str = "<string>") -> MixtureFile:
    """Parse ``probability phi ref_c1,...,ref_cm`` lines into a :class:`MixtureFile`."""
    components: list[MixtureComponent] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(
                source, lineno, f"expected 'probability phi ranking', got {line!r}"
            )
        try:
            weight = float(parts[0])
            phi = float(parts[1])
        except ValueError:
            raise ParseError(source, lineno, f"malformed numbers in {line!r}") from None
        try:
            reference = Ranking(tuple(int(t) for t in parts[2].split(",")))
        except ValueError as exc:
            raise ParseError(source, lineno, f"bad reference order: {exc}") from None
        if not 0 < phi <= 1:
            raise ParseError(source, lineno, f"phi must be in (0, 1], got {phi}")
        if weight <= 0:
            raise ParseError(source, lineno, f"probability must be positive, got {weight}")
        components.append(MixtureComponent(weight=weight, phi=phi, reference=reference))
    if not components:
        raise ParseError(source, 0, "no mixture components found")
    try:
        return MixtureFile(components=tuple(components))
    except ValueError as exc:
        raise ParseError(source, 0, str(exc)) from None
