"""Presentation delivery support engine.

Preprocesses annotated presentation scripts (polish, delivery prompts,
emoji codes, syllabification, slide mapping) and, at presentation time,
tracks spoken progress, computes pace guidance, and synchronizes a
handheld prompter with a slide host over a session protocol.
"""

from .errors import EngineError
from .factors import (
    Channel,
    DeliveryConfig,
    DeliveryPrompt,
    Factor,
    UnknownPromptPair,
    check_factor_overload,
    emoji_lookup_table,
    prompt_to_emoji,
)
from .markup import (
    EmptyScript,
    MalformedMarker,
    Sentence,
    parse_annotated,
    serialize_annotated,
)
from .package import PackageError, ScriptPackage, SlideEntry
from .syllables import NonAlphabetic, segment_syllables

__version__ = "0.1.0"

__all__ = [
    "EngineError",
    "Channel",
    "Factor",
    "DeliveryPrompt",
    "DeliveryConfig",
    "UnknownPromptPair",
    "prompt_to_emoji",
    "emoji_lookup_table",
    "check_factor_overload",
    "Sentence",
    "parse_annotated",
    "serialize_annotated",
    "MalformedMarker",
    "EmptyScript",
    "ScriptPackage",
    "SlideEntry",
    "PackageError",
    "segment_syllables",
    "NonAlphabetic",
    "__version__",
]
