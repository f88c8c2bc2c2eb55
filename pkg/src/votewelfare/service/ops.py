"""Service operations: the core package behind validated request/response models.

The FastAPI endpoints and the CLI both call these functions, so the two
surfaces cannot drift apart. Domain problems surface as ValueError; the app
maps them to HTTP 400 and the CLI to exit code 2.
"""

from __future__ import annotations

from dataclasses import asdict

from ..core import Profile, Ranking, validate_profile
from ..cultures import (
    CULTURE_NAMES,
    CultureSpec,
    RngStream,
    culture_from_name,
    profile_stream,
    sample_profile,
)
from ..experiments import (
    BEHAVIOURS,
    ExperimentRecord,
    SweepConfig,
    render_csv,
    run_sweep,
)
from ..manipulation import (
    achievable_winners,
    base_totals,
    optimal_manipulation,
    winner_with_ballot,
)
from ..profile_text import render_profiles
from ..rules import RULES, make_scoring_vector, rule_from_name
from ..welfare import welfare_triple
from .schemas import (
    CultureInfo,
    ManipulateRequest,
    ManipulateResponse,
    RecordModel,
    RuleInfo,
    SampleRequest,
    SampleResponse,
    SweepRequest,
    SweepResponse,
    WelfareOut,
)


def list_rules() -> list[RuleInfo]:
    return [RuleInfo(name=r.name, family=r.family) for r in RULES]


def list_cultures() -> list[CultureInfo]:
    return [CultureInfo(name=name, kind=_culture_kind(name)) for name in CULTURE_NAMES]


def _culture_kind(name: str) -> str:
    if name == "ic":
        return "impartial"
    if name.startswith("euclid_"):
        return "euclidean"
    if name.startswith("mallows_"):
        return "mallows"
    if name in ("mixed_mallows", "sushi"):
        return "mixed_mallows"
    return "bag"


def _resolve_culture(
    name: str,
    sigma: list[int] | None = None,
    bag_file: str | None = None,
    mixture_file: str | None = None,
) -> CultureSpec:
    reference = Ranking.of(sigma) if sigma is not None else None
    return culture_from_name(name, sigma=reference, bag_path=bag_file, mixture_path=mixture_file)


def _resolve_m(requested: int | None, culture: CultureSpec) -> int:
    pinned = culture.fixed_m()
    if requested is None:
        if pinned is None:
            raise ValueError(f"culture {culture.label!r} needs an explicit m")
        return pinned
    return requested


def run_sample(request: SampleRequest) -> SampleResponse:
    culture = _resolve_culture(request.culture, request.sigma, request.bag_file, request.mixture_file)
    m = _resolve_m(request.m, culture)
    if request.count < 1:
        raise ValueError(f"count must be >= 1, got {request.count}")
    profiles = [
        sample_profile(
            culture, m, request.n, RngStream(request.seed, profile_stream(request.n, m, i)).generator()
        )
        for i in range(request.count)
    ]
    rows = [[list(b.order) for b in p.ballots] for p in profiles]
    return SampleResponse(profiles=rows, text=render_profiles(profiles))


def run_manipulate(request: ManipulateRequest) -> ManipulateResponse:
    violations = validate_profile(request.ballots)
    if violations:
        raise ValueError("; ".join(violations))
    profile = Profile.of(request.ballots)
    if not 0 <= request.voter < profile.n:
        raise ValueError(f"voter {request.voter} out of range for n={profile.n}")
    rule = rule_from_name(request.rule)
    vector = make_scoring_vector(rule, profile.m, profile.n)
    others = profile.without(request.voter)
    result = optimal_manipulation(profile, request.voter, vector)
    sincere_winner = winner_with_ballot(
        base_totals(others, vector), vector, profile.ballots[request.voter]
    )
    return ManipulateResponse(
        sincere_winner=sincere_winner,
        achievable=sorted(achievable_winners(others, vector)),
        ballot=list(result.ballot.order),
        winner=result.winner,
        improved=result.improved,
        welfare_sincere=WelfareOut(**welfare_triple(profile, sincere_winner).as_dict()),
        welfare_manipulated=WelfareOut(**welfare_triple(profile, result.winner).as_dict()),
    )


def build_sweep_config(request: SweepRequest) -> SweepConfig:
    culture = _resolve_culture(request.culture, None, request.bag_file, request.mixture_file)
    rule_names = request.rules if request.rules is not None else [r.name for r in RULES]
    rules = tuple(rule_from_name(name) for name in rule_names)
    for behaviour in request.behaviours:
        if behaviour not in BEHAVIOURS:
            raise ValueError(f"unknown behaviour {behaviour!r}; expected one of {BEHAVIOURS}")
    if request.m_values is None:
        m_values = (_resolve_m(None, culture),)
    else:
        m_values = tuple(request.m_values)
    return SweepConfig(
        culture=culture,
        rules=rules,
        behaviours=tuple(request.behaviours),
        n_values=tuple(request.n_values),
        m_values=m_values,
        trials=request.trials,
        seed=request.seed,
    )


def run_sweep_request(request: SweepRequest) -> SweepResponse:
    records = run_sweep(build_sweep_config(request))
    return SweepResponse(
        records=[RecordModel(**_record_dict(r)) for r in records],
        csv=render_csv(records),
    )


def _record_dict(record: ExperimentRecord) -> dict:
    return asdict(record)
