"""The preprocessed script package: slides, annotated sentences, config.

This is the bundle produced by preprocessing and uploaded to a session.
It serializes to a versioned JSON document ("trinity-package/1").
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import alignment
from .errors import EngineError
from .factors import DeliveryConfig, DeliveryPrompt, Factor
from .markup import Sentence

PACKAGE_VERSION = "trinity-package/1"


class PackageError(EngineError):
    pass


@dataclass(frozen=True)
class SlideEntry:
    slide_index: int
    thumbnail_ref: str = ""
    sentences: tuple = ()
    visual_notes: str = ""


@dataclass(frozen=True)
class ScriptPackage:
    slides: tuple
    config: DeliveryConfig = field(default_factory=DeliveryConfig)
    time_limit_s: float = 300.0
    target_wpm: float = 130.0
    version: str = PACKAGE_VERSION

    def __post_init__(self):
        validate_package(self)

    def all_sentences(self) -> list[Sentence]:
        return [s for slide in self.slides for s in slide.sentences]

    def sentence_tokens(self) -> list[list[str]]:
        return [list(s.tokens) for s in self.all_sentences()]

    def total_tokens(self) -> int:
        return sum(len(s.tokens) for s in self.all_sentences())

    def slide_of_sentence(self, sentence_index: int) -> int:
        n = 0
        for slide in self.slides:
            n += len(slide.sentences)
            if sentence_index < n:
                return slide.slide_index
        return self.slides[-1].slide_index


def validate_package(pkg: ScriptPackage) -> None:
    if pkg.version != PACKAGE_VERSION:
        raise PackageError(f"unsupported package version: {pkg.version!r}")
    if not pkg.slides:
        raise PackageError("package has no slides")
    if pkg.time_limit_s <= 0 or pkg.target_wpm <= 0:
        raise PackageError("time_limit_s and target_wpm must be positive")
    total = 0
    for pos, slide in enumerate(pkg.slides):
        if slide.slide_index != pos:
            raise PackageError(f"slide_index {slide.slide_index} at position {pos}")
        for sent in slide.sentences:
            total += 1
            n = len(sent.tokens)
            if tuple(alignment.tokenize(sent.text)) != tuple(sent.tokens):
                raise PackageError(f"tokens do not match text: {sent.text!r}")
            bad = [i for i in set(sent.keywords) | set(sent.syllabified) if not 0 <= i < n]
            if bad:
                raise PackageError(f"marked index out of range in {sent.text!r}: {bad}")
    if total == 0:
        raise PackageError("package has no sentences")


def _sentence_to_dict(s: Sentence) -> dict:
    return {
        "text": s.text,
        "tokens": list(s.tokens),
        "prompts": [
            {"factor": p.factor.value, "modulation": p.modulation, "emoji_code": p.emoji_code}
            for p in s.prompts
        ],
        "keywords": sorted(s.keywords),
        "syllabified": {str(i): v for i, v in sorted(s.syllabified.items())},
    }


def _sentence_from_dict(d: dict) -> Sentence:
    return Sentence(
        text=d["text"],
        tokens=tuple(d["tokens"]),
        prompts=tuple(
            DeliveryPrompt(Factor(p["factor"]), p["modulation"]) for p in d["prompts"]
        ),
        keywords=frozenset(d["keywords"]),
        syllabified={int(i): v for i, v in d.get("syllabified", {}).items()},
    )


def package_to_dict(pkg: ScriptPackage) -> dict:
    return {
        "version": pkg.version,
        "slides": [
            {
                "slide_index": sl.slide_index,
                "thumbnail_ref": sl.thumbnail_ref,
                "sentences": [_sentence_to_dict(s) for s in sl.sentences],
                "visual_notes": sl.visual_notes,
            }
            for sl in pkg.slides
        ],
        "config": {
            "selected_factors": sorted(f.value for f in pkg.config.selected_factors),
            "used_preset": pkg.config.used_preset,
        },
        "time_limit_s": pkg.time_limit_s,
        "target_wpm": pkg.target_wpm,
    }


def package_from_dict(data: dict) -> ScriptPackage:
    try:
        slides = tuple(
            SlideEntry(
                slide_index=sl["slide_index"],
                thumbnail_ref=sl.get("thumbnail_ref", ""),
                sentences=tuple(_sentence_from_dict(s) for s in sl["sentences"]),
                visual_notes=sl.get("visual_notes", ""),
            )
            for sl in data["slides"]
        )
        config = DeliveryConfig(
            selected_factors=frozenset(
                Factor(f) for f in data["config"]["selected_factors"]
            ),
            used_preset=data["config"]["used_preset"],
        )
        return ScriptPackage(
            slides=slides,
            config=config,
            time_limit_s=data["time_limit_s"],
            target_wpm=data["target_wpm"],
            version=data.get("version", ""),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise PackageError(f"invalid package document: {exc}") from exc


def dumps(pkg: ScriptPackage) -> str:
    return json.dumps(package_to_dict(pkg), ensure_ascii=False, indent=2)


def loads(text: str) -> ScriptPackage:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PackageError(f"package is not valid JSON: {exc}") from exc
    return package_from_dict(data)


def load_file(path) -> ScriptPackage:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save_file(pkg: ScriptPackage, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(pkg))
        fh.write("\n")
