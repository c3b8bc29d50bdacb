"""Rule-based syllable segmentation for pronunciation support.

Splits a word into pronounceable chunks joined by hyphens, e.g.
"Subsequently" -> "Sub-se-quent-ly". The rules are deliberately simple:
find vowel groups, then split each consonant cluster between two groups so
the following syllable starts with the longest legal English onset.
Joining the segments always reproduces the original word.
"""

from __future__ import annotations

from .errors import EngineError

VOWELS = set("aeiou")

# Legal syllable-initial consonant clusters (longest match wins).
ONSETS = {
    "bl", "br", "ch", "chr", "cl", "cr", "dr", "dw", "fl", "fr", "gl", "gr",
    "kn", "ph", "pl", "pr", "qu", "sc", "sch", "scr", "sh", "shr", "sk", "sl",
    "sm", "sn", "sp", "sph", "spl", "spr", "squ", "st", "str", "sw", "th",
    "thr", "tr", "tw", "wh", "wr",
}
# Single consonants that may open a syllable ('x' and 'y' stay in the coda).
SINGLE_ONSETS = set("bcdfghjklmnpqrstvwz")


class NonAlphabetic(EngineError):
    def __init__(self, word: str):
        super().__init__(f"cannot syllabify non-alphabetic word: {word!r}")
        self.word = word


def _vowel_mask(word: str) -> list[bool]:
    mask = []
    for i, c in enumerate(word):
        if c in VOWELS:
            mask.append(True)
        elif c == "y" and i > 0 and word[i - 1] not in VOWELS:
            mask.append(True)
        else:
            mask.append(False)
    return mask


def _vowel_groups(mask: list[bool]) -> list[tuple[int, int]]:
    groups = []
    i = 0
    while i < len(mask):
        if mask[i]:
            j = i
            while j + 1 < len(mask) and mask[j + 1]:
                j += 1
            groups.append((i, j))
            i = j + 1
        else:
            i += 1
    return groups


def _onset_len(cluster: str) -> int:
    for k in range(min(3, len(cluster)), 1, -1):
        if cluster[-k:] in ONSETS:
            return k
    return 1 if cluster[-1] in SINGLE_ONSETS else 0


def segment_syllables(word: str) -> str:
    """Hyphen-joined syllables of an alphabetic word, casing preserved."""
    if not word or not word.isalpha():
        raise NonAlphabetic(word)

    lower = word.lower()
    groups = _vowel_groups(_vowel_mask(lower))

    # Final silent 'e' merges into the previous syllable, except in the
    # consonant+"le" pattern ("ta-ble") where it stays pronounceable.
    if (
        len(groups) >= 2
        and groups[-1] == (len(lower) - 1, len(lower) - 1)
        and lower[-1] == "e"
        and not (len(lower) >= 2 and lower.endswith("le") and lower[-3] not in VOWELS)
    ):
        groups = groups[:-1]

    if len(groups) <= 1:
        return word

    cuts = []
    for (_, prev_end), (next_start, _) in zip(groups, groups[1:]):
        cluster = lower[prev_end + 1 : next_start]
        cuts.append(next_start - _onset_len(cluster))

    parts = []
    start = 0
    for cut in cuts:
        if cut <= start:
            continue
        parts.append(word[start:cut])
        start = cut
    parts.append(word[start:])
    return "-".join(parts)
