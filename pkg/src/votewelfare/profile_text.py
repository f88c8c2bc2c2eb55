"""The plain-text profile format used by the CLI and service.

One ballot per line, 0-based candidate indices, comma-separated, best first;
a blank line separates profiles. Trivially diffable and maps 1:1 onto the
core types.
"""

from __future__ import annotations

from .core import Profile, validate_profile


def render_profile(profile: Profile) -> str:
    return "\n".join(",".join(str(c) for c in b.order) for b in profile.ballots) + "\n"


def render_profiles(profiles: list[Profile]) -> str:
    return "\n".join(render_profile(p) for p in profiles)


def parse_profile_rows(text: str, source: str = "<profile>") -> list[list[list[int]]]:
    """Raw ballot rows per profile; malformed integers fail with line numbers."""
    profiles: list[list[list[int]]] = []
    current: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if current:
                profiles.append(current)
                current = []
            continue
        try:
            current.append([int(tok) for tok in line.split(",")])
        except ValueError:
            raise ValueError(f"{source}:{lineno}: malformed ballot line {line!r}") from None
    if current:
        profiles.append(current)
    return profiles


def parse_single_profile(text: str, source: str = "<profile>") -> Profile:
    """Parse exactly one well-formed profile or fail with diagnostics."""
    profiles = parse_profile_rows(text, source)
    if len(profiles) != 1:
        raise ValueError(f"{source}: expected exactly one profile, found {len(profiles)}")
    violations = validate_profile(profiles[0])
    if violations:
        raise ValueError("\n".join(f"{source}: {v}" for v in violations))
    return Profile.of(profiles[0])
