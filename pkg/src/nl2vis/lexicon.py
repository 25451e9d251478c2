"""Matching lexicon: attribute names, aliases, data values, task and chart keywords.

Every surface is lowercased, tokenized (whitespace and hyphens split), and
stemmed with the same Porter stemmer the query parser uses. Entries that can
name attributes (attribute/alias/value kinds) are additionally indexed two
ways for the matcher:

* stem postings      -- token-containment candidates;
* CSR bigram vectors -- cosine candidates, scored by the batched kernel.

Task and chart keywords are exact stem-phrase lookups and skip similarity
scoring entirely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .config import Config
from .profiling import DatasetProfile
from .similarity import bigram_counts
from .stemming import porter_stem
from .wordnet import WordNetGraph

KIND_ATTRIBUTE = "attribute"
KIND_ALIAS = "alias"
KIND_VALUE = "value"
KIND_TASK = "taskKeyword"
KIND_VIS = "visKeyword"

_SPLIT = re.compile(r"[\s\-_]+")


def tokenize_surface(surface: str) -> tuple[str, ...]:
    return tuple(t for t in _SPLIT.split(surface.strip().lower()) if t)


@dataclass(frozen=True)
class LexEntry:
    surface: str
    kind: str
    canonical: str  # attribute name, task id, or chart id
    parent_attribute: str | None = None  # kind=value only
    display: str = ""  # original-cased value / attribute name
    operator: str | None = None  # derived-value keyword operator
    tokens: tuple[str, ...] = ()
    stems: tuple[str, ...] = ()
    stem_text: str = ""

    def __post_init__(self):
        if self.kind == KIND_VALUE and not self.parent_attribute:
            raise ValueError("value entries need a parent attribute")


@dataclass
class Lexicon:
    """Immutable after build_lexicon returns; shareable across queries."""

    entries: list[LexEntry]
    matchable_ids: np.ndarray  # entry indices of attribute/alias/value kinds
    attrish_ids: list[int]  # attribute/alias kinds (semantic candidates)
    stem_postings: dict[str, np.ndarray]
    bigram_vocab: dict[str, int]
    bigram_postings: dict[int, np.ndarray]
    csr_indptr: np.ndarray
    csr_ids: np.ndarray
    csr_counts: np.ndarray
    csr_norms: np.ndarray
    task_lookup: dict[str, list[tuple[str, str | None]]]  # stem phrase -> [(task, op)]
    vis_lookup: dict[str, str]  # stem phrase -> chart id
    graph: WordNetGraph | None = None
    warnings: tuple[str, ...] = ()
    _surface_ids: dict[str, list[int]] = field(default_factory=dict)

    def entries_with_surface(self, surface: str) -> list[int]:
        return self._surface_ids.get(surface, [])


def _keyword_stem_phrase(phrase: str, config: Config) -> str:
    """Normalize a keyword phrase the way queries are trimmed and stemmed."""
    stems = []
    for token in tokenize_surface(phrase):
        if token in config.effective_stopwords and token not in config.keep_words:
            continue
        stems.append(porter_stem(token))
    return " ".join(stems)


def build_lexicon(profile: DatasetProfile, config: Config,
                  graph: WordNetGraph | None = None) -> Lexicon:
    entries: list[LexEntry] = []

    def add(surface: str, kind: str, canonical: str, *, parent: str | None = None,
            display: str = "", operator: str | None = None) -> None:
        tokens = tokenize_surface(surface)
        if not tokens:
            return
        stems = tuple(porter_stem(t) for t in tokens)
        entries.append(LexEntry(
            surface=" ".join(tokens), kind=kind, canonical=canonical,
            parent_attribute=parent, display=display or canonical,
            operator=operator, tokens=tokens, stems=stems,
            stem_text=" ".join(stems)))

    for name, meta in profile.attributes.items():
        add(name, KIND_ATTRIBUTE, name, display=name)
        for alias in meta.aliases:
            add(alias, KIND_ALIAS, name, display=name)
    for value, owners in profile.value_index.items():
        for owner in owners:
            add(value, KIND_VALUE, owner, parent=owner, display=_display_value(profile, owner, value))
    for task, keywords in config.task_keywords.items():
        for phrase, operator in keywords.items():
            add(phrase, KIND_TASK, task, operator=operator)
    for phrase, chart in config.vis_keywords.items():
        add(phrase, KIND_VIS, chart)

    matchable = [i for i, e in enumerate(entries)
                 if e.kind in (KIND_ATTRIBUTE, KIND_ALIAS, KIND_VALUE)]
    attrish = [i for i, e in enumerate(entries) if e.kind in (KIND_ATTRIBUTE, KIND_ALIAS)]

    stem_postings: dict[str, list[int]] = {}
    for i in matchable:
        for stem in set(entries[i].stems):
            stem_postings.setdefault(stem, []).append(i)

    # CSR bigram store over matchable entries' stem texts
    vocab: dict[str, int] = {}
    indptr = np.zeros(len(entries) + 1, dtype=np.int64)
    all_ids: list[int] = []
    all_counts: list[float] = []
    norms = np.zeros(len(entries), dtype=np.float32)
    bigram_postings: dict[int, list[int]] = {}
    matchable_set = set(matchable)
    for i, entry in enumerate(entries):
        indptr[i] = len(all_ids)
        if i in matchable_set:
            counts = bigram_counts(entry.stem_text)
            norms[i] = np.sqrt(sum(c * c for c in counts.values()))
            for gram in sorted(counts):
                gid = vocab.setdefault(gram, len(vocab))
                all_ids.append(gid)
                all_counts.append(float(counts[gram]))
                bigram_postings.setdefault(gid, []).append(i)
    indptr[len(entries)] = len(all_ids)

    task_lookup: dict[str, list[tuple[str, str | None]]] = {}
    vis_lookup: dict[str, str] = {}
    for task, keywords in config.task_keywords.items():
        for phrase, operator in keywords.items():
            stem_phrase = _keyword_stem_phrase(phrase, config)
            if stem_phrase:
                hits = task_lookup.setdefault(stem_phrase, [])
                if (task, operator) not in hits:
                    hits.append((task, operator))
    for phrase, chart in config.vis_keywords.items():
        stem_phrase = _keyword_stem_phrase(phrase, config)
        if stem_phrase:
            vis_lookup[stem_phrase] = chart

    surface_ids: dict[str, list[int]] = {}
    for i in matchable:
        surface_ids.setdefault(entries[i].surface, []).append(i)

    return Lexicon(
        entries=entries,
        matchable_ids=np.asarray(matchable, dtype=np.int64),
        attrish_ids=attrish,
        stem_postings={s: np.asarray(ids, dtype=np.int64) for s, ids in stem_postings.items()},
        bigram_vocab=vocab,
        bigram_postings={g: np.asarray(ids, dtype=np.int64) for g, ids in bigram_postings.items()},
        csr_indptr=indptr,
        csr_ids=np.asarray(all_ids, dtype=np.int32),
        csr_counts=np.asarray(all_counts, dtype=np.float32),
        csr_norms=norms,
        task_lookup=task_lookup,
        vis_lookup=vis_lookup,
        graph=graph,
        _surface_ids=surface_ids,
    )


def _display_value(profile: DatasetProfile, owner: str, lowered: str) -> str:
    for value in profile.attributes[owner].domain:
        if value.lower() == lowered:
            return value
    return lowered


def query_vector(lexicon: Lexicon, text: str) -> tuple[np.ndarray, float]:
    """Dense bigram vector over the lexicon vocabulary plus the full norm.

    Bigrams unseen in the lexicon contribute to the norm (they still
    penalize the cosine) but not to the dense vector.
    """
    counts = bigram_counts(text)
    qvec = np.zeros(max(len(lexicon.bigram_vocab), 1), dtype=np.float32)
    sq = 0.0
    for gram, count in counts.items():
        sq += count * count
        gid = lexicon.bigram_vocab.get(gram)
        if gid is not None:
            qvec[gid] = count
    return qvec, float(np.sqrt(sq))


def containment_candidates(lexicon: Lexicon, stems: tuple[str, ...]) -> np.ndarray:
    """Entries whose stem set contains every stem of the n-gram."""
    postings = []
    for stem in set(stems):
        rows = lexicon.stem_postings.get(stem)
        if rows is None:
            return np.empty(0, dtype=np.int64)
        postings.append(rows)
    postings.sort(key=len)
    result = postings[0]
    for rows in postings[1:]:
        result = np.intersect1d(result, rows, assume_unique=False)
        if result.size == 0:
            break
    return result


def cosine_candidates(lexicon: Lexicon, text: str) -> np.ndarray:
    """Entries sharing at least one bigram with the n-gram text."""
    counts = bigram_counts(text)
    hit_lists = []
    for gram in counts:
        gid = lexicon.bigram_vocab.get(gram)
        if gid is not None:
            hit_lists.append(lexicon.bigram_postings[gid])
    if not hit_lists:
        return np.empty(0, dtype=np.int64)
    return np.unique(np.concatenate(hit_lists))
