"""Delivery factors, the prompt vocabulary, and the emoji code table.

Nine delivery factors across three communication channels. Prompts are
(factor, modulation) pairs drawn from a closed 24-entry vocabulary; each
pair owns a stable ASCII emoji code (glyph rendering is the UI's job).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import EngineError


class Channel(Enum):
    VERBAL = "verbal"
    NONVERBAL = "nonverbal"
    VISUAL = "visual"


class Factor(Enum):
    VOCAL_PITCH = "VocalPitch"
    SPEECH_RATE = "SpeechRate"
    VOLUME = "Volume"
    EYE_CONTACT = "EyeContact"
    FACIAL_EXPRESSION = "FacialExpression"
    COMPOSURE = "Composure"
    GESTURE = "Gesture"
    POSTURE = "Posture"
    SLIDES = "Slides"

    @property
    def channel(self) -> Channel:
        return _CHANNELS[self]


_CHANNELS = {
    Factor.VOCAL_PITCH: Channel.VERBAL,
    Factor.SPEECH_RATE: Channel.VERBAL,
    Factor.VOLUME: Channel.VERBAL,
    Factor.EYE_CONTACT: Channel.NONVERBAL,
    Factor.FACIAL_EXPRESSION: Channel.NONVERBAL,
    Factor.COMPOSURE: Channel.NONVERBAL,
    Factor.GESTURE: Channel.NONVERBAL,
    Factor.POSTURE: Channel.NONVERBAL,
    Factor.SLIDES: Channel.VISUAL,
}

# Marker-text names used inside [factor - modulation] annotations.
MARKER_NAMES = {
    Factor.VOCAL_PITCH: "pitch",
    Factor.SPEECH_RATE: "rate",
    Factor.VOLUME: "volume",
    Factor.EYE_CONTACT: "eye contact",
    Factor.FACIAL_EXPRESSION: "facial",
    Factor.COMPOSURE: "composure",
    Factor.GESTURE: "gesture",
    Factor.POSTURE: "posture",
}
FACTOR_BY_MARKER = {name: f for f, name in MARKER_NAMES.items()}

# The full prompt vocabulary: (factor, modulation, emoji_code), table order.
PROMPT_TABLE: list[tuple[Factor, str, str]] = [
    (Factor.VOCAL_PITCH, "high", "PITCH_HIGH"),
    (Factor.VOCAL_PITCH, "normal", "PITCH_NORMAL"),
    (Factor.VOCAL_PITCH, "low", "PITCH_LOW"),
    (Factor.SPEECH_RATE, "fast", "RATE_FAST"),
    (Factor.SPEECH_RATE, "normal", "RATE_NORMAL"),
    (Factor.SPEECH_RATE, "slow", "RATE_SLOW"),
    (Factor.VOLUME, "loud", "VOLUME_LOUD"),
    (Factor.VOLUME, "normal", "VOLUME_NORMAL"),
    (Factor.VOLUME, "soft", "VOLUME_SOFT"),
    (Factor.FACIAL_EXPRESSION, "happy", "FACIAL_HAPPY"),
    (Factor.FACIAL_EXPRESSION, "sad", "FACIAL_SAD"),
    (Factor.FACIAL_EXPRESSION, "angry", "FACIAL_ANGRY"),
    (Factor.FACIAL_EXPRESSION, "surprised", "FACIAL_SURPRISED"),
    (Factor.FACIAL_EXPRESSION, "embarrassed", "FACIAL_EMBARRASSED"),
    (Factor.FACIAL_EXPRESSION, "serious", "FACIAL_SERIOUS"),
    (Factor.COMPOSURE, "calm", "COMPOSURE_CALM"),
    (Factor.COMPOSURE, "relaxed", "COMPOSURE_RELAXED"),
    (Factor.COMPOSURE, "confident", "COMPOSURE_CONFIDENT"),
    (Factor.GESTURE, "wave", "GESTURE_WAVE"),
    (Factor.GESTURE, "unfold", "GESTURE_UNFOLD"),
    (Factor.GESTURE, "point", "GESTURE_POINT"),
    (Factor.POSTURE, "stand", "POSTURE_STAND"),
    (Factor.POSTURE, "walk", "POSTURE_WALK"),
    (Factor.EYE_CONTACT, "direct", "EYE_CONTACT_DIRECT"),
]

_CODE_BY_PAIR = {(f, m): code for f, m, code in PROMPT_TABLE}
_PAIR_BY_CODE = {code: (f, m) for f, m, code in PROMPT_TABLE}

# Overload reminder threshold: warn when strictly more factors are selected.
OVERLOAD_THRESHOLD = 5

# Shipped default preset; survey-derived content is not published, so this
# is a configurable stand-in, not a claim of fidelity.
RECOMMENDED_PRESET = frozenset(
    {Factor.VOLUME, Factor.SPEECH_RATE, Factor.GESTURE, Factor.EYE_CONTACT, Factor.SLIDES}
)


class UnknownPromptPair(EngineError):
    def __init__(self, factor, modulation):
        super().__init__(f"unknown prompt pair ({factor}, {modulation})")
        self.factor = factor
        self.modulation = modulation


@dataclass(frozen=True)
class DeliveryPrompt:
    factor: Factor
    modulation: str

    def __post_init__(self):
        if (self.factor, self.modulation) not in _CODE_BY_PAIR:
            raise UnknownPromptPair(self.factor, self.modulation)

    @property
    def emoji_code(self) -> str:
        return _CODE_BY_PAIR[(self.factor, self.modulation)]


@dataclass(frozen=True)
class DeliveryConfig:
    selected_factors: frozenset[Factor] = field(default_factory=frozenset)
    used_preset: bool = False

    @classmethod
    def preset(cls) -> "DeliveryConfig":
        return cls(selected_factors=RECOMMENDED_PRESET, used_preset=True)


def prompt_to_emoji(factor: Factor, modulation: str) -> str:
    """Return the stable emoji code for a (factor, modulation) pair."""
    try:
        return _CODE_BY_PAIR[(factor, modulation)]
    except KeyError:
        raise UnknownPromptPair(factor, modulation) from None


def emoji_to_prompt(code: str) -> DeliveryPrompt:
    try:
        factor, modulation = _PAIR_BY_CODE[code]
    except KeyError:
        raise UnknownPromptPair(code, "?") from None
    return DeliveryPrompt(factor, modulation)


def emoji_lookup_table() -> list[tuple[Factor, str, str]]:
    """All 24 (factor, modulation, emoji_code) rows in stable table order."""
    return list(PROMPT_TABLE)


def check_factor_overload(config: DeliveryConfig) -> str | None:
    """Warning text when more than OVERLOAD_THRESHOLD factors are selected."""
    n = len(config.selected_factors)
    if n > OVERLOAD_THRESHOLD:
        return (
            f"{n} delivery factors selected (over {OVERLOAD_THRESHOLD}): "
            "risk of overload during delivery"
        )
    return None
