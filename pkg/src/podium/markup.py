"""The inline annotation language for delivery scripts.

One sentence = zero or more leading `[factor - modulation]` prompt markers,
then words until terminal punctuation (`.`, `?`, `!`) followed by
whitespace or end-of-input. `**word**` marks a keyword; `{word}` requests
syllabification of that word. Prompts are only legal at sentence start.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import alignment
from .errors import EngineError
from .factors import FACTOR_BY_MARKER, MARKER_NAMES, DeliveryPrompt, UnknownPromptPair
from .syllables import segment_syllables

__all__ = [
    "Sentence",
    "MalformedMarker",
    "EmptyScript",
    "UnknownPromptPair",
    "parse_annotated",
    "serialize_annotated",
]


class MalformedMarker(EngineError):
    pass


class EmptyScript(EngineError):
    pass


@dataclass(frozen=True)
class Sentence:
    text: str
    tokens: tuple = ()
    prompts: tuple = ()
    keywords: frozenset = frozenset()
    syllabified: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Sentence):
            return NotImplemented
        return (
            self.text == other.text
            and self.tokens == other.tokens
            and self.prompts == other.prompts
            and self.keywords == other.keywords
            and self.syllabified == other.syllabified
        )


_MARKER_RE = re.compile(r"^\s*\[([^\[\]]*)\]")
_KEYWORD_RE = re.compile(r"^\*\*([^*{}]+)\*\*([^\w*{}]*)$")
_SYLLABLE_RE = re.compile(r"^\{([^*{}]+)\}([^\w*{}]*)$")


def _parse_marker(body: str) -> DeliveryPrompt:
    if "-" not in body:
        raise MalformedMarker(f"marker missing '-': [{body}]")
    name, _, modulation = body.partition("-")
    name = name.strip().lower()
    modulation = modulation.strip().lower()
    factor = FACTOR_BY_MARKER.get(name)
    if factor is None:
        raise UnknownPromptPair(name, modulation)
    return DeliveryPrompt(factor, modulation)


def _split_sentences(text: str) -> list[str]:
    chunks = []
    start = 0
    pos = 0
    depth = 0
    while pos < len(text):
        c = text[pos]
        if c == "[":
            depth += 1
        elif c == "]":
            depth -= 1
            if depth < 0:
                raise MalformedMarker("unbalanced ']'")
        elif c in ".?!" and depth == 0:
            nxt = text[pos + 1] if pos + 1 < len(text) else " "
            if nxt.isspace():
                chunks.append(text[start : pos + 1])
                start = pos + 1
        pos += 1
    if depth != 0:
        raise MalformedMarker("unbalanced '['")
    tail = text[start:].strip()
    if tail:
        raise MalformedMarker(f"unterminated sentence: {tail!r}")
    return [c.strip() for c in chunks if c.strip()]


def _parse_sentence(chunk: str) -> Sentence:
    prompts = []
    rest = chunk
    while True:
        m = _MARKER_RE.match(rest)
        if not m:
            break
        prompts.append(_parse_marker(m.group(1)))
        rest = rest[m.end() :]
    rest = rest.strip()
    if "[" in rest or "]" in rest:
        raise MalformedMarker(f"prompt marker not at sentence start: {chunk!r}")

    words = []
    keywords = set()
    syllabified = {}
    token_count = 0
    for raw in rest.split():
        keyword = False
        syllable = False
        m = _KEYWORD_RE.match(raw)
        if m:
            keyword = True
        else:
            m = _SYLLABLE_RE.match(raw)
            if m:
                syllable = True
            elif "*" in raw or "{" in raw or "}" in raw:
                raise MalformedMarker(f"bad emphasis markup in word: {raw!r}")
        core, trail = (m.group(1), m.group(2)) if m else (raw, "")
        plain = core + trail
        n_tokens = len(alignment.tokenize(plain))
        if (keyword or syllable) and n_tokens != 1:
            raise MalformedMarker(f"marked word is not a single token: {raw!r}")
        if keyword:
            keywords.add(token_count)
        if syllable:
            syllabified[token_count] = segment_syllables(core)
        token_count += n_tokens
        words.append(plain)

    text = " ".join(words)
    tokens = tuple(alignment.tokenize(text))
    if not tokens:
        raise MalformedMarker(f"sentence has no words: {chunk!r}")
    return Sentence(
        text=text,
        tokens=tokens,
        prompts=tuple(prompts),
        keywords=frozenset(keywords),
        syllabified=syllabified,
    )


def parse_annotated(text: str) -> list[Sentence]:
    """Parse annotated script text into sentences."""
    if not text or not text.strip():
        raise EmptyScript("script is empty")
    return [_parse_sentence(chunk) for chunk in _split_sentences(text)]


def _strip_trail(word: str):
    m = re.match(r"^(.*?)([^\w]*)$", word)
    return m.group(1), m.group(2)


def serialize_annotated(sentences: list[Sentence]) -> str:
    """Render sentences back to annotated text; inverse of parse_annotated."""
    parts = []
    for sentence in sentences:
        pieces = [
            f"[{MARKER_NAMES[p.factor]} - {p.modulation}]" for p in sentence.prompts
        ]
        token_count = 0
        for word in sentence.text.split():
            core, trail = _strip_trail(word)
            has_token = bool(alignment.tokenize(word))
            if has_token and token_count in sentence.keywords:
                word = f"**{core}**{trail}"
            elif has_token and token_count in sentence.syllabified:
                word = f"{{{core}}}{trail}"
            if has_token:
                token_count += 1
            pieces.append(word)
        parts.append(" ".join(pieces))
    return " ".join(parts)
