"""Shared generators for property and acceptance tests."""

from __future__ import annotations

import random
import string

from podium.factors import PROMPT_TABLE, DeliveryConfig, DeliveryPrompt
from podium.markup import Sentence, parse_annotated
from podium.package import ScriptPackage, SlideEntry

WORDS = [
    "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel",
    "india", "juliet", "kilo", "lima", "mike", "november", "oscar", "papa",
    "quebec", "romeo", "sierra", "tango", "uniform", "victor", "whiskey",
    "xray", "yankee", "zulu", "amber", "birch", "cedar", "dune", "ember",
    "fjord", "grove", "harbor", "inlet", "jetty", "knoll", "lagoon", "marsh",
    "nectar", "orchid", "prairie", "quarry", "ridge", "summit", "thicket",
    "upland", "valley", "willow", "zenith",
]


def random_word(rng: random.Random) -> str:
    return "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(2, 10)))


def random_sentence_text(rng: random.Random) -> str:
    """One random annotated sentence in DSL form."""
    parts = []
    for _ in range(rng.randint(0, 2)):
        factor, modulation, _ = rng.choice(PROMPT_TABLE)
        from podium.factors import MARKER_NAMES

        parts.append(f"[{MARKER_NAMES[factor]} - {modulation}]")
    n_words = rng.randint(1, 9)
    for i in range(n_words):
        word = rng.choice(WORDS)
        if rng.random() < 0.3:
            word = word.capitalize()
        mark = rng.random()
        if mark < 0.12:
            word = f"**{word}**"
        elif mark < 0.22:
            word = f"{{{word}}}"
        if i < n_words - 1 and rng.random() < 0.1:
            word += ","
        parts.append(word)
    parts[-1] += rng.choice([".", "?", "!"])
    return " ".join(parts)


def random_annotated_script(rng: random.Random, n_sentences=None) -> str:
    n = n_sentences or rng.randint(1, 8)
    return " ".join(random_sentence_text(rng) for _ in range(n))


def make_package(sentence_texts, slides=1, time_limit_s=300.0, target_wpm=130.0) -> ScriptPackage:
    """Package from plain or annotated sentence texts, split across slides."""
    sentences = parse_annotated(" ".join(sentence_texts))
    per_slide = max(1, (len(sentences) + slides - 1) // slides)
    entries = []
    for i in range(slides):
        chunk = tuple(sentences[i * per_slide : (i + 1) * per_slide])
        entries.append(SlideEntry(slide_index=i, thumbnail_ref=f"thumb-{i}", sentences=chunk))
    entries = [e for e in entries if e.sentences]
    entries = tuple(
        SlideEntry(slide_index=i, thumbnail_ref=e.thumbnail_ref, sentences=e.sentences)
        for i, e in enumerate(entries)
    )
    return ScriptPackage(
        slides=entries,
        config=DeliveryConfig(),
        time_limit_s=time_limit_s,
        target_wpm=target_wpm,
    )


def synthetic_script(rng: random.Random, n_sentences=30, words_per_sentence=8):
    """Distinct-vocabulary sentences plus per-sentence token lists."""
    vocab = list(WORDS)
    sentence_tokens = []
    for _ in range(n_sentences):
        sentence_tokens.append(rng.sample(vocab, words_per_sentence))
    texts = [" ".join(toks).capitalize() + "." for toks in sentence_tokens]
    return texts, [[t.lower() for t in toks] for toks in sentence_tokens]


def jittered_events(rng: random.Random, sentence_tokens, substitution=0.10, deletion=0.05):
    """One transcript event per sentence with seeded recognition errors.

    Returns (events, truth) where truth[i] is the sentence index a correct
    tracker should report after event i.
    """
    from podium.alignment import TranscriptEvent

    events, truth = [], []
    t_ms = 0
    for idx, tokens in enumerate(sentence_tokens):
        noisy = []
        for tok in tokens:
            r = rng.random()
            if r < deletion:
                continue
            if r < deletion + substitution:
                noisy.append(random_word(rng))
            else:
                noisy.append(tok)
        t_ms += 3000
        events.append(TranscriptEvent(t_ms=t_ms, text=" ".join(noisy)))
        truth.append(idx)
    return events, truth
