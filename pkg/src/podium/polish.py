"""Script refinement via a pluggable language-model adapter.

The engine builds an instruction from the selected factors and time budget,
sends each slide's text through an adapter, and validates that the response
parses as annotated script. A deterministic mock adapter keeps tests and
acceptance fully offline; the HTTP adapter talks to any chat-completion
endpoint configured through environment variables.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import requests

from . import alignment, markup
from .errors import EngineError
from .factors import DeliveryPrompt, Factor
from .package import ScriptPackage

STYLE_CONSTRAINTS = (
    "Preserve the meaning of the script. Do not overuse embellishments or "
    "expand the text excessively. Keep the tone suitable for an academic "
    "oral presentation."
)

DSL_INSTRUCTIONS = (
    "Format the output as plain sentences. A sentence may start with one or "
    "more prompt markers of the form [factor - modulation]; wrap keywords "
    "as **word**."
)

DEFAULT_TARGET_WPM = 130.0

ENV_BASE_URL = "POLISH_BASE_URL"
ENV_MODEL = "POLISH_MODEL"
ENV_API_KEY = "POLISH_API_KEY"


class AdapterUnavailable(EngineError):
    pass


class UnparsableResponse(EngineError):
    def __init__(self, raw: str, cause: Exception):
        super().__init__(f"adapter response does not parse: {cause}")
        self.raw = raw
        self.cause = cause


@dataclass(frozen=True)
class PolishRequest:
    manuscript: tuple  # plain text per slide
    selected_factors: frozenset = frozenset()
    time_limit_s: float = 300.0
    style_constraints: str = STYLE_CONSTRAINTS

    def __post_init__(self):
        if self.time_limit_s <= 0:
            raise ValueError("time_limit_s must be positive")
        if not self.manuscript or not any(t.strip() for t in self.manuscript):
            raise ValueError("manuscript must be non-empty")


@dataclass(frozen=True)
class PolishResult:
    polished: tuple  # annotated text per slide
    model_id: str


def build_prompt(req: PolishRequest) -> str:
    """Instruction text sent alongside each slide's manuscript."""
    minutes = req.time_limit_s / 60.0
    lines = [
        "Polish the following presentation script.",
        req.style_constraints,
        f"The whole presentation must fit a time budget of {minutes:g} minutes "
        f"({req.time_limit_s:g} seconds).",
    ]
    if req.selected_factors:
        names = ", ".join(sorted(f.value for f in req.selected_factors))
        lines.append(
            f"Candidate delivery factors for modulation: {names}. Add a prompt "
            "marker only where modulation genuinely helps; markers are not "
            "obligatory for every sentence."
        )
        lines.append(DSL_INSTRUCTIONS)
    else:
        lines.append("Polish the wording only; do not add any prompt markers.")
    return "\n".join(lines)


class MockAdapter:
    """Deterministic offline adapter: echoes the text (keeping any keyword
    and syllable markup), and when Volume is a selected factor prefixes
    every sentence with "[volume - normal]"."""

    model_id = "mock"

    def polish_slide(self, req: PolishRequest, slide_text: str) -> str:
        sentences = markup.parse_annotated(slide_text)
        if Factor.VOLUME in req.selected_factors:
            from dataclasses import replace

            volume = DeliveryPrompt(Factor.VOLUME, "normal")
            sentences = [replace(s, prompts=(volume,) + s.prompts) for s in sentences]
        return markup.serialize_annotated(sentences)


class HttpAdapter:
    """Chat-completion adapter; endpoint and model come from the environment."""

    def __init__(self, base_url=None, model=None, api_key=None, timeout=60.0):
        self.base_url = base_url or os.environ.get(ENV_BASE_URL)
        self.model = model or os.environ.get(ENV_MODEL, "")
        self.api_key = api_key or os.environ.get(ENV_API_KEY, "")
        self.timeout = timeout
        if not self.base_url:
            raise AdapterUnavailable(f"{ENV_BASE_URL} is not configured")
        self.model_id = self.model or self.base_url

    def polish_slide(self, req: PolishRequest, slide_text: str) -> str:
        body = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": build_prompt(req)},
                {"role": "user", "content": slide_text},
            ],
        }
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        url = self.base_url.rstrip("/") + "/chat/completions"
        last_error = None
        for _ in range(2):  # one retry
            try:
                resp = requests.post(url, json=body, headers=headers, timeout=self.timeout)
                resp.raise_for_status()
                return resp.json()["choices"][0]["message"]["content"]
            except (requests.RequestException, KeyError, ValueError) as exc:
                last_error = exc
        raise AdapterUnavailable(f"adapter call failed: {last_error}")


def polish(req: PolishRequest, adapter) -> PolishResult:
    """Run every slide through the adapter; results are guaranteed to parse."""
    polished = []
    for slide_text in req.manuscript:
        raw = adapter.polish_slide(req, slide_text)
        try:
            markup.parse_annotated(raw)
        except EngineError as exc:
            raise UnparsableResponse(raw, exc) from exc
        polished.append(raw)
    return PolishResult(polished=tuple(polished), model_id=adapter.model_id)


@dataclass(frozen=True)
class DiffEntry:
    slide: int
    index: int
    op: str  # kept | changed | inserted | deleted


def diff_scripts(manuscript, polished) -> list[DiffEntry]:
    """Sentence-aligned diff between manuscript and polished slides.

    Markers and emphasis markup are ignored: the comparison runs on the
    plain sentence text. Indices refer to the polished side except for
    deletions, which index the manuscript.
    """
    import difflib

    entries = []
    for slide, (before_text, after_text) in enumerate(zip(manuscript, polished)):
        before = [s.text for s in markup.parse_annotated(before_text)]
        after = [s.text for s in markup.parse_annotated(after_text)]
        sm = difflib.SequenceMatcher(a=before, b=after, autojunk=False)
        for tag, i1, i2, j1, j2 in sm.get_opcodes():
            if tag == "equal":
                entries.extend(DiffEntry(slide, j, "kept") for j in range(j1, j2))
            elif tag == "replace":
                paired = min(i2 - i1, j2 - j1)
                entries.extend(DiffEntry(slide, j1 + k, "changed") for k in range(paired))
                entries.extend(
                    DiffEntry(slide, j, "inserted") for j in range(j1 + paired, j2)
                )
                entries.extend(
                    DiffEntry(slide, i, "deleted") for i in range(i1 + paired, i2)
                )
            elif tag == "insert":
                entries.extend(DiffEntry(slide, j, "inserted") for j in range(j1, j2))
            elif tag == "delete":
                entries.extend(DiffEntry(slide, i, "deleted") for i in range(i1, i2))
    return entries


def estimate_duration(source, target_wpm: float = DEFAULT_TARGET_WPM) -> int:
    """Predicted speaking time in whole seconds at the given rate."""
    if target_wpm <= 0:
        raise ValueError("target_wpm must be positive")
    if isinstance(source, ScriptPackage):
        words = source.total_tokens()
    elif isinstance(source, str):
        words = len(alignment.tokenize(source))
    else:
        words = sum(len(alignment.tokenize(t)) for t in source)
    return round(Fraction(words) * 60 / Fraction(target_wpm))
