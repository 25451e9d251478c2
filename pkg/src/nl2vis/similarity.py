"""String similarity scores used for lexicon matching.

Two metrics are produced:

* syntactic -- cosine similarity between character-bigram count vectors of
  two lowercased, whitespace-normalized strings (spaces participate in
  bigrams, so word boundaries carry signal);
* semantic -- Wu-Palmer similarity over a WordNet-style hypernym graph
  (see ``wordnet``).

Single-pair scoring lives here; the batched kernel that scores one query
n-gram against the whole lexicon lives in ``kernels``.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass

_WS = re.compile(r"\s+")

SYNTACTIC = "syntactic"
SEMANTIC = "semantic"


@dataclass(frozen=True)
class SimilarityScore:
    value: float
    metric: str

    def __post_init__(self):
        if not (0.0 <= self.value <= 1.0):
            raise ValueError(f"similarity out of bounds: {self.value}")


def bigram_counts(text: str) -> Counter:
    """Character-bigram counts of a lowercased, space-normalized string."""
    norm = _WS.sub(" ", text.strip().lower())
    if len(norm) < 2:
        # degenerate strings count the single character (or nothing) once
        return Counter([norm] if norm else [])
    return Counter(norm[i : i + 2] for i in range(len(norm) - 1))


def cosine_sim(a: str, b: str) -> SimilarityScore:
    """Cosine of the character-bigram count vectors of two strings."""
    ca, cb = bigram_counts(a), bigram_counts(b)
    if not ca or not cb:
        return SimilarityScore(0.0, SYNTACTIC)
    if ca == cb:
        return SimilarityScore(1.0, SYNTACTIC)
    dot = sum(count * cb[gram] for gram, count in ca.items())
    norm = math.sqrt(sum(c * c for c in ca.values())) * math.sqrt(
        sum(c * c for c in cb.values()))
    value = dot / norm if norm else 0.0
    return SimilarityScore(min(value, 1.0), SYNTACTIC)
