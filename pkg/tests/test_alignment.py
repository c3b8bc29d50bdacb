import math
import random

import pytest

from podium.alignment import (
    AlignmentConfig,
    AlignmentState,
    Bm25Index,
    TranscriptEvent,
    bm25_score,
    ingest,
    manual_scroll,
    tokenize,
)

from helpers import WORDS, jittered_events, synthetic_script


# Independent brute-force evaluation of the ranking formula, written
# before the index implementation and kept deliberately naive.
def brute_force_bm25(query, docs, doc_index, k1=1.2, b=0.75):
    n = len(docs)
    avgdl = sum(len(d) for d in docs) / n
    doc = docs[doc_index]
    score = 0.0
    for term in query:
        tf = sum(1 for t in doc if t == term)
        if tf == 0:
            continue
        df = sum(1 for d in docs if term in d)
        idf = math.log((n - df + 0.5) / (df + 0.5) + 1)
        score += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len(doc) / avgdl))
    return score


class TestTokenize:
    def test_basic(self):
        assert tokenize("Hello, World!") == ["hello", "world"]

    def test_empty(self):
        assert tokenize("") == []

    def test_hyphens_stripped(self):
        assert tokenize("Sub-se-quent-ly") == ["subsequently"]


class TestBm25:
    def test_single_sentence_corpus(self):
        docs = [["the", "cat", "sat"]]
        index = Bm25Index(docs)
        assert bm25_score(["the", "cat", "sat"], 0, index) > 0

    def test_empty_query_scores_zero(self):
        index = Bm25Index([["a", "b"], ["c", "d"]])
        assert bm25_score([], 0, index) == 0.0

    def test_toy_corpus_matches_hand_formula(self):
        docs = [["the", "cat", "sat"], ["the", "dog", "ran"], ["a", "cat", "ran"]]
        index = Bm25Index(docs)
        query = ["cat", "ran"]
        for i in range(3):
            assert bm25_score(query, i, index) == pytest.approx(
                brute_force_bm25(query, docs, i), abs=1e-9
            )

    def test_random_corpora_match_brute_force(self):
        rng = random.Random(99)
        vocab = WORDS[:12]
        for _ in range(200):
            docs = [
                [rng.choice(vocab) for _ in range(rng.randint(1, 8))]
                for _ in range(rng.randint(1, 10))
            ]
            index = Bm25Index(docs)
            query = [rng.choice(vocab) for _ in range(rng.randint(0, 6))]
            for i in range(len(docs)):
                assert index.score(query, i) == pytest.approx(
                    brute_force_bm25(query, docs, i), abs=1e-9
                )


def _run(events, sentences, config=None):
    config = config or AlignmentConfig()
    index = Bm25Index(sentences, k1=config.k1, b=config.b)
    state = AlignmentState()
    trace = []
    for event in events:
        state = ingest(state, event, sentences, index, config)
        trace.append(state)
    return state, trace


class TestIngest:
    def test_perfect_match_advances(self):
        sentences = [tokenize("the cat sat on the mat"), tokenize("a dog ran far away now")]
        events = [
            TranscriptEvent(1000, "the cat sat on the mat"),
            TranscriptEvent(2000, "a dog ran far away now"),
        ]
        state, trace = _run(events, sentences)
        assert state.sentence_index == 1
        indices = [s.sentence_index for s in trace]
        assert indices == sorted(indices)

    def test_noise_never_moves(self):
        sentences = [tokenize("alpha bravo charlie"), tokenize("delta echo foxtrot")]
        events = [TranscriptEvent(i * 500, "xyzzy plugh quux") for i in range(1, 6)]
        state, _ = _run(events, sentences)
        assert state.sentence_index == 0
        assert state.confidence == 0.0

    def test_window_soundness(self):
        rng = random.Random(3)
        texts, sentence_tokens = synthetic_script(rng, n_sentences=12)
        config = AlignmentConfig()
        index = Bm25Index(sentence_tokens, k1=config.k1, b=config.b)
        state = AlignmentState()
        for i, toks in enumerate(sentence_tokens):
            before = state.sentence_index
            state = ingest(
                state, TranscriptEvent((i + 1) * 1000, " ".join(toks)), sentence_tokens, index, config
            )
            assert before <= state.sentence_index <= before + config.window_ahead

    def test_determinism(self):
        rng = random.Random(7)
        _, sentence_tokens = synthetic_script(rng, n_sentences=10)
        events, _ = jittered_events(random.Random(8), sentence_tokens)
        final_a, trace_a = _run(events, sentence_tokens)
        final_b, trace_b = _run(events, sentence_tokens)
        assert final_a == final_b
        assert trace_a == trace_b

    def test_jittered_replay_tracks_ground_truth(self):
        rng = random.Random(42)
        _, sentence_tokens = synthetic_script(rng, n_sentences=30)
        events, truth = jittered_events(rng, sentence_tokens)
        _, trace = _run(events, sentence_tokens)
        indices = [s.sentence_index for s in trace]
        assert indices == sorted(indices), "history must be monotone"
        assert indices[-1] == len(sentence_tokens) - 1
        agreement = sum(1 for got, want in zip(indices, truth) if got == want) / len(truth)
        assert agreement >= 0.9


class TestManualScroll:
    def test_backward(self):
        state = AlignmentState(sentence_index=5)
        assert manual_scroll(state, -2, 10).sentence_index == 3

    def test_clamped(self):
        state = AlignmentState(sentence_index=0)
        assert manual_scroll(state, -1, 10).sentence_index == 0
        assert manual_scroll(state, 99, 10).sentence_index == 9

    def test_resets_confidence(self):
        state = AlignmentState(sentence_index=4, confidence=3.2, token_offset=2)
        scrolled = manual_scroll(state, -1, 10)
        assert scrolled.confidence == 0.0
        assert scrolled.token_offset == 0

    def test_reingestion_after_scroll(self):
        sentences = [
            tokenize("alpha bravo charlie delta mike oscar"),
            tokenize("echo foxtrot golf hotel papa quebec"),
            tokenize("india juliet kilo lima romeo tango"),
        ]
        config = AlignmentConfig()
        index = Bm25Index(sentences)
        state = AlignmentState()
        state = ingest(state, TranscriptEvent(1000, "alpha bravo charlie delta mike oscar"), sentences, index, config)
        state = ingest(state, TranscriptEvent(2000, "echo foxtrot golf hotel papa quebec"), sentences, index, config)
        assert state.sentence_index == 1
        state = manual_scroll(state, -1, len(sentences))
        assert state.sentence_index == 0
        state = ingest(state, TranscriptEvent(3000, "echo foxtrot golf hotel papa quebec"), sentences, index, config)
        assert state.sentence_index == 1
