"""Two-layer pace guidance.

Coarse layer: dual progress fractions (actual tokens spoken vs the ideal
linear time budget). Fine layer: a pace class computed from the recent
words-per-minute rate, driving triangle overlays (too fast / too slow) and
the fading underpainting (slightly slow).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .alignment import AlignmentState
from .package import ScriptPackage

FADE_FLOOR = 0.3


class PaceClass(Enum):
    TOO_FAST = "TooFast"
    ON_PACE = "OnPace"
    SLIGHTLY_SLOW = "SlightlySlow"
    TOO_SLOW = "TooSlow"


@dataclass(frozen=True)
class PaceConfig:
    time_limit_s: float
    target_wpm: float
    fast_ratio: float = 1.25
    slow_fade_lo: float = 0.75
    slow_fade_hi: float = 0.90
    rate_window_s: float = 15.0

    def __post_init__(self):
        if not 0 < self.slow_fade_lo < self.slow_fade_hi < 1 < self.fast_ratio:
            raise ValueError("need 0 < slow_fade_lo < slow_fade_hi < 1 < fast_ratio")

    @classmethod
    def for_package(cls, pkg: ScriptPackage, **overrides) -> "PaceConfig":
        return cls(time_limit_s=pkg.time_limit_s, target_wpm=pkg.target_wpm, **overrides)


@dataclass(frozen=True)
class PaceReport:
    actual_fraction: float
    ideal_fraction: float
    recent_wpm: float
    pace_class: PaceClass

    def to_dict(self) -> dict:
        return {
            "actual_fraction": self.actual_fraction,
            "ideal_fraction": self.ideal_fraction,
            "recent_wpm": self.recent_wpm,
            "pace_class": self.pace_class.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PaceReport":
        return cls(
            actual_fraction=d["actual_fraction"],
            ideal_fraction=d["ideal_fraction"],
            recent_wpm=d["recent_wpm"],
            pace_class=PaceClass(d["pace_class"]),
        )


def _clamp01(x: float) -> float:
    return max(0.0, min(1.0, x))


def ideal_fraction(elapsed_s: float, time_limit_s: float) -> float:
    """Linear time-budget progress, clamped to [0, 1]."""
    if time_limit_s <= 0:
        raise ValueError("time_limit_s must be positive")
    return _clamp01(elapsed_s / time_limit_s)


def classify_pace(recent_wpm: float, config: PaceConfig) -> PaceClass:
    target = config.target_wpm
    if recent_wpm > config.fast_ratio * target:
        return PaceClass.TOO_FAST
    if recent_wpm < config.slow_fade_lo * target:
        return PaceClass.TOO_SLOW
    if recent_wpm < config.slow_fade_hi * target:
        return PaceClass.SLIGHTLY_SLOW
    return PaceClass.ON_PACE


def recent_wpm(state: AlignmentState, elapsed_s: float, config: PaceConfig) -> float:
    """Token rate over the trailing window, scaled to per-minute."""
    if elapsed_s <= 0:
        return 0.0
    window = min(config.rate_window_s, elapsed_s)
    cutoff_ms = (elapsed_s - window) * 1000.0
    n = sum(count for t_ms, count in state.recent_events if t_ms > cutoff_ms)
    return n * 60.0 / window


def compute_pace(
    state: AlignmentState,
    elapsed_s: float,
    package: ScriptPackage,
    config: PaceConfig | None = None,
) -> PaceReport:
    if elapsed_s < 0:
        raise ValueError("elapsed_s must be >= 0")
    cfg = config or PaceConfig.for_package(package)
    total = package.total_tokens()
    wpm = recent_wpm(state, elapsed_s, cfg)
    return PaceReport(
        actual_fraction=_clamp01(state.tokens_heard / total) if total else 0.0,
        ideal_fraction=ideal_fraction(elapsed_s, cfg.time_limit_s),
        recent_wpm=wpm,
        pace_class=classify_pace(wpm, cfg),
    )


def fade_level(pace_class: PaceClass, recent_wpm: float, config: PaceConfig) -> float:
    """Underpainting opacity; only the slightly-slow band fades."""
    if pace_class is not PaceClass.SLIGHTLY_SLOW:
        return 1.0
    target = config.target_wpm
    lo = config.slow_fade_lo * target
    hi = config.slow_fade_hi * target
    frac = (recent_wpm - lo) / (hi - lo)
    return FADE_FLOOR + (1.0 - FADE_FLOOR) * max(0.0, min(1.0, frac))
