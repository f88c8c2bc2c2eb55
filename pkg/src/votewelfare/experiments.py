"""The Monte Carlo sweep engine.

A sweep walks the Cartesian product of (n, m) cells, rules, and behaviours.
Within a cell, trial t always draws the same profile regardless of rule or
behaviour (the RNG stream is keyed only by n, m, and t), so every rule is
measured on common draws: comparisons are paired, which sharpens small-trial
contrasts considerably.

Cells are independent given their derived streams, so the runner may spread
them over worker processes; `SWEEP_THREADS` caps the pool (0 or unset means
one worker per CPU). Serial and parallel runs aggregate in fixed cell order
and produce byte-identical CSV output.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .cultures import CultureSpec, RngStream, profile_stream, sample_profile
from .manipulation import optimal_manipulation
from .rules import RULES, RuleSpec, elect, make_scoring_vector, tally
from .welfare import MEASURES, welfare_triple

BEHAVIOURS: tuple[str, ...] = ("sincere", "manipulator")

MANIPULATOR_VOTER = 0


class ConfigError(ValueError):
    """A sweep configuration that cannot be run."""


@dataclass(frozen=True)
class SweepConfig:
    culture: CultureSpec
    rules: tuple[RuleSpec, ...] = RULES
    behaviours: tuple[str, ...] = BEHAVIOURS
    n_values: tuple[int, ...] = (10,)
    m_values: tuple[int, ...] = (10,)
    trials: int = 10_000
    seed: int = 0
    out: str | None = None

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not self.rules:
            raise ConfigError("no rules configured")
        if not self.behaviours or any(b not in BEHAVIOURS for b in self.behaviours):
            raise ConfigError(f"behaviours must be a non-empty subset of {BEHAVIOURS}")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ConfigError(f"voter counts must be >= 1, got {self.n_values}")
        if not self.m_values or any(m < 3 for m in self.m_values):
            raise ConfigError(f"candidate counts must be >= 3, got {self.m_values}")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class ExperimentRecord:
    """One measured cell: mean welfare over `trials` profiles."""

    culture: str
    rule: str
    behaviour: str
    measure: str
    n: int
    m: int
    mean: float
    stderr: float
    trials: int
    seed: int

    @property
    def sort_key(self) -> tuple:
        return (
            self.culture,
            self.rule,
            self.behaviour,
            self.measure,
            self.n,
            self.m,
            self.trials,
            self.seed,
        )


def _finish(total: float, total_sq: float, trials: int) -> tuple[float, float]:
    mean = total / trials
    if trials < 2:
        return mean, 0.0
    variance = max((total_sq - trials * mean * mean) / (trials - 1), 0.0)
    return mean, math.sqrt(variance / trials)


def _run_group(
    culture: CultureSpec,
    rules: tuple[RuleSpec, ...],
    behaviours: tuple[str, ...],
    n: int,
    m: int,
    trials: int,
    seed: int,
) -> list[ExperimentRecord]:
    """All records for one (n, m) cell, every trial's profile shared across rules."""
    vectors = [(rule.name, make_scoring_vector(rule, m, n)) for rule in rules]
    totals: dict[tuple[str, str, str], list[float]] = {
        (name, behaviour, measure): [0.0, 0.0]
        for name, _ in vectors
        for behaviour in behaviours
        for measure in MEASURES
    }
    for t in range(trials):
        rng = RngStream(seed, profile_stream(n, m, t)).generator()
        profile = sample_profile(culture, m, n, rng)
        for name, vector in vectors:
            for behaviour in behaviours:
                if behaviour == "sincere":
                    winner = elect(tally(profile, vector))
                else:
                    winner = optimal_manipulation(profile, MANIPULATOR_VOTER, vector).winner
                triple = welfare_triple(profile, winner)
                for measure, value in triple.as_dict().items():
                    acc = totals[(name, behaviour, measure)]
                    acc[0] += value
                    acc[1] += value * value
    records = []
    for (name, behaviour, measure), (total, total_sq) in totals.items():
        mean, stderr = _finish(total, total_sq, trials)
        records.append(
            ExperimentRecord(
                culture=culture.label,
                rule=name,
                behaviour=behaviour,
                measure=measure,
                n=n,
                m=m,
                mean=mean,
                stderr=stderr,
                trials=trials,
                seed=seed,
            )
        )
    return records


def run_cell(
    culture: CultureSpec,
    rule: RuleSpec,
    behaviour: str,
    n: int,
    m: int,
    trials: int,
    seed: int,
) -> list[ExperimentRecord]:
    """The three welfare records (borda, rawls, nash) of one sweep cell."""
    return _run_group(culture, (rule,), (behaviour,), n, m, trials, seed)


def _worker_count(group_count: int) -> int:
    raw = os.environ.get("SWEEP_THREADS", "0")
    try:
        configured = int(raw)
    except ValueError:
        raise ConfigError(f"SWEEP_THREADS must be an integer, got {raw!r}") from None
    if configured < 0:
        raise ConfigError(f"SWEEP_THREADS must be >= 0, got {configured}")
    if configured == 0:
        configured = os.cpu_count() or 1
    return max(1, min(configured, group_count))


def _group_args(config: SweepConfig) -> list[tuple]:
    return [
        (config.culture, config.rules, config.behaviours, n, m, config.trials, config.seed)
        for n in config.n_values
        for m in config.m_values
    ]


def run_sweep(config: SweepConfig) -> list[ExperimentRecord]:
    """Run every configured cell and return records in stable sorted order."""
    groups = _group_args(config)
    workers = _worker_count(len(groups))
    if workers > 1:
        try:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                chunks = list(pool.map(_run_group_star, groups))
        except OSError:
            chunks = [_run_group(*args) for args in groups]
    else:
        chunks = [_run_group(*args) for args in groups]
    records = [record for chunk in chunks for record in chunk]
    records.sort(key=lambda r: r.sort_key)
    return records


def _run_group_star(args: tuple) -> list[ExperimentRecord]:
    return _run_group(*args)


CSV_HEADER = "culture,rule,behaviour,measure,n,m,mean,stderr,trials,seed"


def render_csv(records: list[ExperimentRecord]) -> str:
    """Stable CSV text: sorted rows, 6-decimal means, LF endings."""
    lines = [CSV_HEADER]
    for r in sorted(records, key=lambda r: r.sort_key):
        lines.append(
            f"{r.culture},{r.rule},{r.behaviour},{r.measure},{r.n},{r.m},"
            f"{r.mean:.6f},{r.stderr:.6f},{r.trials},{r.seed}"
        )
    return "\n".join(lines) + "\n"


def write_csv(records: list[ExperimentRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_csv(records))


def parse_int_axis(text: str) -> tuple[int, ...]:
    """`3..10` (inclusive range), `3,5,7` (list), or `10` (single value)."""
    text = text.strip()
    if ".." in text:
        lo_text, _, hi_text = text.partition("..")
        try:
            lo, hi = int(lo_text), int(hi_text)
        except ValueError:
            raise ConfigError(f"bad range {text!r}; expected e.g. 3..10") from None
        if hi < lo:
            raise ConfigError(f"empty range {text!r}")
        return tuple(range(lo, hi + 1))
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"bad integer list {text!r}") from None


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    """`key = value` lines with `#` comments, mirroring the sweep flags."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        values[key] = value.strip()
    return values


def with_output(config: SweepConfig, out: str | None) -> SweepConfig:
    return replace(config, out=out)
