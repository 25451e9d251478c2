"""Query parsing: normalization, POS tagging, relation edges, n-grams.

The default tagger is a deterministic closed-class lexicon plus suffix
heuristics; a real tagger/dependency parser can be plugged in (it must map
its output onto the five relation labels consumed downstream: conj, mod,
compare, groupby, of).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .config import Config
from .stemming import porter_stem

NOUN, VERB, ADJ, ADV, NUM, CONJ, PREP, DET, OTHER = (
    "NOUN", "VERB", "ADJ", "ADV", "NUM", "CONJ", "PREP", "DET", "OTHER")

CONTENT_POS = (NOUN, VERB, ADJ, NUM)

_CONJUNCTIONS = frozenset({"and", "or", "nor", "but"})
_PREPOSITIONS = frozenset("""
of in on at by for with from to as about into through during between over
under above below across per against within without
""".split())
_DETERMINERS = frozenset({"a", "an", "the", "this", "that", "these", "those"})
_COMMAND_VERBS = frozenset("""
show create display visualize visualise draw make plot chart give correlate
compare relate find
""".split())
_ADJECTIVES = frozenset("""
average mean total maximum minimum highest lowest different
""".split())

_NUMBER = re.compile(r"^\d+(\.\d+)?$")
_SUFFIXED_NUMBER = re.compile(r"^(\d+(?:\.\d+)?)([kmb])$")
_SUFFIX_MULT = {"k": 1_000, "m": 1_000_000, "b": 1_000_000_000}


@dataclass(frozen=True)
class Token:
    text: str
    stem: str
    pos: str
    index: int
    is_stop: bool
    numeric_value: float | int | None = None


@dataclass(frozen=True)
class RelationEdge:
    head: int
    dependent: int
    label: str  # conj | mod | compare | groupby | of


@dataclass(frozen=True)
class NGram:
    text: str  # space-joined stems
    surface: str  # space-joined original token texts
    span: tuple[int, int]  # inclusive positions within the trimmed token list
    length: int


@dataclass(frozen=True)
class ParsedQuery:
    raw: str
    normalized: str
    tokens: tuple[Token, ...]
    relations: tuple[RelationEdge, ...]
    trimmed: tuple[Token, ...]
    ngrams: tuple[NGram, ...]

    def original_index(self, trimmed_pos: int) -> int:
        return self.trimmed[trimmed_pos].index


def normalize_query(raw: str) -> str:
    """Lowercase, strip punctuation (keeping in-word hyphens and decimal
    points), and expand numeric suffixes (100m -> 100000000)."""
    text = raw.lower()
    text = re.sub(r"(?<=\d),(?=\d)", "", text)  # thousands separators
    text = re.sub(r"[^a-z0-9.\-\s]", " ", text)
    text = re.sub(r"(?<!\d)\.", " ", text)  # dots not in numbers
    text = re.sub(r"\.(?!\d)", " ", text)
    text = re.sub(r"(?<![a-z0-9])-", " ", text)  # stray hyphens
    text = re.sub(r"-(?![a-z0-9])", " ", text)
    parts = []
    for token in text.split():
        suffixed = _SUFFIXED_NUMBER.match(token)
        if suffixed:
            value = float(suffixed.group(1)) * _SUFFIX_MULT[suffixed.group(2)]
            token = str(int(value)) if value.is_integer() else str(value)
        parts.append(token)
    return " ".join(parts)


def default_tagger(words: list[str]) -> list[str]:
    tags = []
    for word in words:
        if _NUMBER.match(word):
            tags.append(NUM)
        elif word in _CONJUNCTIONS:
            tags.append(CONJ)
        elif word in _DETERMINERS:
            tags.append(DET)
        elif word in _PREPOSITIONS:
            tags.append(PREP)
        elif word in _ADJECTIVES:
            tags.append(ADJ)
        elif word in _COMMAND_VERBS or word.endswith("ing") or word.endswith("ed"):
            tags.append(VERB)
        elif word.endswith("ly"):
            tags.append(ADV)
        elif word.isalpha() or "-" in word:
            tags.append(NOUN)
        else:
            tags.append(OTHER)
    return tags


class QueryParser:
    """Config-bound parser; pure and safe for concurrent use."""

    def __init__(self, config: Config, tagger: Callable[[list[str]], list[str]] | None = None):
        self.config = config
        self.tagger = tagger or default_tagger
        self._stopwords = config.effective_stopwords
        self._stop_stems = frozenset(porter_stem(w) for w in self._stopwords)
        # single-token task keyword stems; sources of "of" edges
        self._task_stems = frozenset(
            porter_stem(phrase) for table in config.task_keywords.values()
            for phrase in table if " " not in phrase)

    # -- spec operations ------------------------------------------------------

    def tokenize_and_tag(self, normalized: str) -> tuple[Token, ...]:
        words: list[str] = []
        for raw in normalized.split():
            # hyphenated tokens split into components; the lexicon tokenizes
            # its surfaces the same way, so containment still lines up
            if "-" in raw:
                words.extend(p for p in raw.split("-") if p)
            else:
                words.append(raw)
        tags = self.tagger(words)
        tokens = []
        for i, (word, tag) in enumerate(zip(words, tags)):
            numeric = None
            if tag == NUM:
                value = float(word)
                numeric = int(value) if value.is_integer() else value
            is_stop = (word in self._stopwords or porter_stem(word) in self._stop_stems) \
                and word not in self.config.keep_words
            tokens.append(Token(text=word, stem=porter_stem(word), pos=tag,
                                index=i, is_stop=is_stop, numeric_value=numeric))
        return tuple(tokens)

    def extract_relations(self, tokens: tuple[Token, ...]) -> tuple[RelationEdge, ...]:
        edges: list[RelationEdge] = []
        texts = [t.text for t in tokens]
        n = len(tokens)

        def nearest(start: int, step: int, want, limit: int, skip=frozenset()):
            pos = start + step
            steps = 0
            while 0 <= pos < n and steps < limit:
                if pos not in skip and tokens[pos].pos in want:
                    return pos
                pos += step
                steps += 1
            return None

        # conj edges between content tokens flanking and/or
        for i, token in enumerate(tokens):
            if token.text in ("and", "or"):
                left = nearest(i, -1, CONTENT_POS, 3)
                right = nearest(i, +1, CONTENT_POS, 3)
                if left is not None and right is not None:
                    edges.append(RelationEdge(left, right, "conj"))

        # compare edges from comparator phrases to numbers, with a content
        # anchor recorded as a mod edge
        consumed: set[int] = set()
        i = 0
        while i < n:
            phrase = None
            length = 1
            two = " ".join(texts[i : i + 2])
            if two in self.config.compare_words:
                phrase, length = two, 2
            elif texts[i] in self.config.compare_words:
                phrase = texts[i]
            if phrase is None or i in consumed:
                i += 1
                continue
            operator = self.config.compare_words[phrase]
            first = nearest(i + length - 1, +1, (NUM,), 4)
            if first is None:
                i += 1
                continue
            num_targets = [first]
            if operator == "RANGE":
                second = nearest(first, +1, (NUM,), 3)
                if second is None:
                    i += 1
                    continue
                num_targets.append(second)
            for target in num_targets:
                edges.append(RelationEdge(i, target, "compare"))
            anchor = nearest(i, -1, (NOUN, VERB), 6)
            if anchor is not None:
                edges.append(RelationEdge(i, anchor, "mod"))
            consumed.update(range(i, i + length))
            i += length

        # groupby edges from by/across/per to the following noun
        for i, token in enumerate(tokens):
            if token.text in self.config.groupby_words:
                target = nearest(i, +1, (NOUN,), 4)
                if target is not None:
                    edges.append(RelationEdge(i, target, "groupby"))

        # of edges from single-token task keywords to the nearest noun
        for i, token in enumerate(tokens):
            if token.stem in self._task_stems and not token.is_stop:
                target = None
                for dist in range(1, 5):
                    for pos in (i + dist, i - dist):
                        if 0 <= pos < n and tokens[pos].pos == NOUN:
                            target = pos
                            break
                    if target is not None:
                        break
                if target is not None:
                    edges.append(RelationEdge(i, target, "of"))
        return tuple(edges)

    def trim_and_stem(self, tokens: tuple[Token, ...]) -> tuple[Token, ...]:
        return tuple(t for t in tokens if not t.is_stop)

    def generate_ngrams(self, trimmed: tuple[Token, ...], max_n: int | None = None) -> tuple[NGram, ...]:
        limit = max_n or self.config.max_ngram
        count = len(trimmed)
        grams = []
        for n in range(min(limit, count), 0, -1):
            for start in range(0, count - n + 1):
                span = trimmed[start : start + n]
                grams.append(NGram(
                    text=" ".join(t.stem for t in span),
                    surface=" ".join(t.text for t in span),
                    span=(start, start + n - 1),
                    length=n))
        return tuple(grams)

    def parse(self, raw: str) -> ParsedQuery:
        normalized = normalize_query(raw)
        tokens = self.tokenize_and_tag(normalized)
        relations = self.extract_relations(tokens)
        trimmed = self.trim_and_stem(tokens)
        ngrams = self.generate_ngrams(trimmed)
        return ParsedQuery(raw=raw, normalized=normalized, tokens=tokens,
                           relations=relations, trimmed=trimmed, ngrams=ngrams)
