"""Speech-progress tracking over script sentences.

Recognized-text events are matched against the sentence corpus with Okapi
BM25 ranking. A hysteresis policy (candidate window, advance margin, score
floor, no automatic backward moves) keeps the tracked position stable under
recognition jitter; only explicit manual scrolling can move backwards.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, replace

_TOKEN_STRIP = re.compile(r"[\W_]+", re.UNICODE)

HISTORY_LIMIT = 256
RECENT_EVENT_LIMIT = 512


def tokenize(text: str) -> list[str]:
    """Lowercase, strip punctuation, split on whitespace."""
    out = []
    for raw in text.split():
        word = _TOKEN_STRIP.sub("", raw).lower()
        if word:
            out.append(word)
    return out


@dataclass(frozen=True)
class AlignmentConfig:
    k1: float = 1.2
    b: float = 0.75
    window_ahead: int = 3
    window_behind: int = 1
    query_len: int = 8
    advance_margin: float = 0.5
    min_score: float = 0.1

    def __post_init__(self):
        if self.k1 < 0 or not 0 <= self.b <= 1:
            raise ValueError("k1 must be >= 0 and b within [0, 1]")
        if self.window_ahead < 1 or self.query_len < 1 or self.advance_margin < 0:
            raise ValueError("window_ahead and query_len must be >= 1, margin >= 0")


class Bm25Index:
    """BM25 statistics over the whole sentence corpus, built once."""

    def __init__(self, sentences: list[list[str]], k1: float = 1.2, b: float = 0.75):
        if not sentences:
            raise ValueError("corpus must contain at least one sentence")
        self.k1 = k1
        self.b = b
        self.docs = [list(s) for s in sentences]
        self.n_docs = len(self.docs)
        self.doc_lens = [len(d) for d in self.docs]
        self.avgdl = sum(self.doc_lens) / self.n_docs or 1.0
        self.term_freqs = [Counter(d) for d in self.docs]
        df: Counter = Counter()
        for tf in self.term_freqs:
            df.update(tf.keys())
        self.idf = {
            t: math.log((self.n_docs - n + 0.5) / (n + 0.5) + 1.0) for t, n in df.items()
        }

    def score(self, query: list[str], index: int) -> float:
        tf = self.term_freqs[index]
        norm = self.k1 * (1 - self.b + self.b * self.doc_lens[index] / self.avgdl)
        total = 0.0
        for term in query:
            f = tf.get(term, 0)
            if not f:
                continue
            total += self.idf[term] * f * (self.k1 + 1) / (f + norm)
        return total


@dataclass(frozen=True)
class TranscriptEvent:
    t_ms: int
    text: str


@dataclass(frozen=True)
class AlignmentState:
    sentence_index: int = 0
    token_offset: int = 0
    confidence: float = 0.0
    tokens_heard: int = 0
    history: tuple = ()
    # last recognized tokens (query window source) and per-event token
    # counts with timestamps (pace-rate source); both bounded
    recent_tokens: tuple = ()
    recent_events: tuple = ()


def bm25_score(query: list[str], sentence_index: int, index: Bm25Index) -> float:
    return index.score(query, sentence_index)


def _offset_in_sentence(query: list[str], sentence: list[str], fallback: int) -> int:
    # longest query suffix found verbatim inside the sentence wins
    for k in range(min(len(query), len(sentence)), 0, -1):
        tail = query[-k:]
        for j in range(len(sentence) - k + 1):
            if sentence[j : j + k] == tail:
                return j + k
    return min(fallback, len(sentence))


def ingest(
    state: AlignmentState,
    event: TranscriptEvent,
    sentences: list[list[str]],
    index: Bm25Index,
    config: AlignmentConfig = AlignmentConfig(),
) -> AlignmentState:
    """Consume one recognized-text event and return the updated state."""
    new_tokens = tokenize(event.text)
    recent = (state.recent_tokens + tuple(new_tokens))[-config.query_len :]
    query = list(recent)
    cur = state.sentence_index

    lo = max(0, cur - config.window_behind)
    hi = min(len(sentences) - 1, cur + config.window_ahead)
    scores = {i: index.score(query, i) for i in range(lo, hi + 1)}
    cur_score = scores.get(cur, 0.0)

    best_idx, best_score = cur, cur_score
    for i in range(cur, hi + 1):
        if scores[i] > best_score:
            best_idx, best_score = i, scores[i]

    if (
        best_idx != cur
        and best_score >= cur_score + config.advance_margin
        and best_score >= config.min_score
    ):
        chosen, confidence = best_idx, best_score
        offset = _offset_in_sentence(query, sentences[chosen], fallback=0)
    else:
        chosen, confidence = cur, cur_score
        matched = sum(1 for t in new_tokens if t in set(sentences[cur]))
        offset = _offset_in_sentence(
            query, sentences[cur], fallback=state.token_offset + matched
        )

    history = (state.history + ((event.t_ms, chosen),))[-HISTORY_LIMIT:]
    events = (state.recent_events + ((event.t_ms, len(new_tokens)),))[-RECENT_EVENT_LIMIT:]
    return AlignmentState(
        sentence_index=chosen,
        token_offset=offset,
        confidence=confidence,
        tokens_heard=state.tokens_heard + len(new_tokens),
        history=history,
        recent_tokens=recent,
        recent_events=events,
    )


def manual_scroll(
    state: AlignmentState, delta_sentences: int, total_sentences: int
) -> AlignmentState:
    """Explicit scroll; the only way sentence_index may decrease."""
    target = max(0, min(total_sentences - 1, state.sentence_index + delta_sentences))
    return replace(state, sentence_index=target, token_offset=0, confidence=0.0)
