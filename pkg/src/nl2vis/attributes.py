"""Attribute inference: map query n-grams to data attributes.

Matching policy per (n-gram, entry):

* syntactic 1.0 when every stemmed n-gram token appears among the entry's
  stemmed tokens (token containment; lets "budget" hit "Production Budget");
* otherwise the bigram-cosine of the two stem texts (batched kernel);
* semantic Wu-Palmer phrase score, computed for attribute/alias entries only
  (value strings are matched lexically; taxonomy distance over arbitrary cell
  values produces spurious cross-value hits).

The final score is max(syntactic, semantic); an n-gram maps to an entry when
that score clears the threshold. Resolution then applies longest-span-wins,
groups equal-phrase survivors into ambiguity sets, and orders the map by
first span position.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .lexicon import KIND_ALIAS, KIND_ATTRIBUTE, KIND_VALUE, LexEntry, Lexicon, \
    containment_candidates, cosine_candidates, query_vector
from .parsing import NGram
from .similarity import SEMANTIC, SYNTACTIC
from .wordnet import wup_sim

EXPLICIT = "explicit"
IMPLICIT = "implicit"

# matches within this margin of a phrase's best score join the ambiguity group
AMBIGUITY_MARGIN = 0.05


@dataclass(frozen=True)
class AttributeMatch:
    attribute: str
    query_phrase: str  # original surface of the n-gram
    stem_phrase: str
    span: tuple[int, int]
    score: float
    metric: str
    entry: LexEntry


@dataclass
class AttributeEntry:
    """One attributeMap entry plus the provenance the pipeline needs."""

    name: str
    query_phrases: list[str] = field(default_factory=list)
    inference_type: str = IMPLICIT
    is_ambiguous: bool = False
    ambiguity: list[str] = field(default_factory=list)
    encode: bool = True
    score: float = 0.0
    metric: str = SYNTACTIC
    spans: list[tuple[int, int]] = field(default_factory=list)
    # per-phrase matched domain values, for filter building: phrase -> displays
    value_matches: dict[str, list[str]] = field(default_factory=dict)
    first_position: int = 10_000

    def covers_span(self, span: tuple[int, int]) -> bool:
        return any(s <= span[0] and span[1] <= e for s, e in self.spans)


AttributeMap = dict[str, AttributeEntry]


def _span_overlap(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return not (a[1] < b[0] or b[1] < a[0])


class _SemanticCache:
    """Per-query cache of token-pair Wu-Palmer scores."""

    def __init__(self, graph):
        self.graph = graph
        self._cache: dict[tuple[str, str], float] = {}

    def token_pair(self, a: str, b: str) -> float:
        key = (a, b) if a <= b else (b, a)
        score = self._cache.get(key)
        if score is None:
            score = wup_sim(a, b, self.graph).value
            self._cache[key] = score
        return score

    def phrase(self, query_tokens: tuple[str, ...], entry_tokens: tuple[str, ...]) -> float:
        if self.graph is None or not query_tokens or not entry_tokens:
            return 0.0
        total = 0.0
        for qt in query_tokens:
            total += max(self.token_pair(qt, et) for et in entry_tokens)
        return total / len(query_tokens)


def match_ngrams(ngrams: tuple[NGram, ...], lexicon: Lexicon,
                 threshold: float = 0.8, debug: list | None = None) -> list[AttributeMatch]:
    matches: list[AttributeMatch] = []
    semantic = _SemanticCache(lexicon.graph)

    for ngram in ngrams:
        scored: dict[int, tuple[float, str]] = {}

        stems = tuple(t for t in ngram.text.split())
        for row in containment_candidates(lexicon, stems):
            scored[int(row)] = (1.0, SYNTACTIC)

        candidates = cosine_candidates(lexicon, ngram.text)
        if candidates.size:
            qvec, qnorm = query_vector(lexicon, ngram.text)
            scores = kernels.batch_cosine(
                qvec, qnorm, lexicon.csr_indptr, lexicon.csr_ids,
                lexicon.csr_counts, lexicon.csr_norms, candidates)
            for row, score in zip(candidates, scores):
                row = int(row)
                value = float(score)
                if value >= threshold and value > scored.get(row, (0.0, ""))[0]:
                    scored[row] = (value, SYNTACTIC)

        query_tokens = tuple(ngram.surface.split())
        for row in lexicon.attrish_ids:
            current = scored.get(row, (0.0, ""))[0]
            if current >= 1.0:
                continue
            value = semantic.phrase(query_tokens, lexicon.entries[row].tokens)
            if value >= threshold and value > current:
                scored[row] = (value, SEMANTIC)

        for row, (score, metric) in sorted(scored.items()):
            if score < threshold:
                continue
            entry = lexicon.entries[row]
            matches.append(AttributeMatch(
                attribute=entry.canonical, query_phrase=ngram.surface,
                stem_phrase=ngram.text, span=ngram.span,
                score=round(score, 4), metric=metric, entry=entry))
            if debug is not None:
                debug.append({
                    "ngram": ngram.surface, "entry": entry.surface,
                    "kind": entry.kind, "attribute": entry.canonical,
                    "metric": metric, "score": round(score, 4)})
    return matches


def resolve_matches(matches: list[AttributeMatch],
                    debug_dropped: list | None = None) -> AttributeMap:
    """Greedy span resolution into an ordered attribute map.

    Spans are accepted best-score-first (longer spans win ties, so an exact
    "imdb rating" still beats its "rating" sub-span); a span overlapping an
    already accepted one is dropped. Score-first ordering keeps a sloppy
    long n-gram from swallowing exact shorter matches, and makes the
    accepted set shrink monotonically as the threshold rises.
    """
    by_span: dict[tuple[int, int], list[AttributeMatch]] = {}
    for match in matches:
        by_span.setdefault(match.span, []).append(match)

    def order(span):
        best = max(m.score for m in by_span[span])
        return (-best, -(span[1] - span[0]), span[0])

    accepted: list[tuple[int, int]] = []
    for span in sorted(by_span, key=order):
        if any(_span_overlap(span, a) for a in accepted):
            if debug_dropped is not None:
                phrase = by_span[span][0].query_phrase
                debug_dropped.append(
                    {"reason": "overlapping span suppressed", "phrase": phrase})
            continue
        accepted.append(span)

    attr_map: AttributeMap = {}
    for span in sorted(accepted, key=lambda s: s[0]):
        span_matches = by_span[span]
        best = max(m.score for m in span_matches)
        kept = [m for m in span_matches if m.score >= best - AMBIGUITY_MARGIN]
        dropped = [m for m in span_matches if m.score < best - AMBIGUITY_MARGIN]
        if debug_dropped is not None:
            for m in dropped:
                debug_dropped.append({
                    "reason": "below ambiguity margin", "phrase": m.query_phrase,
                    "attribute": m.attribute, "score": m.score})
        group_names: list[str] = []
        for m in kept:
            if m.attribute not in group_names:
                group_names.append(m.attribute)
        for m in kept:
            entry = attr_map.get(m.attribute)
            if entry is None:
                entry = AttributeEntry(name=m.attribute)
                attr_map[m.attribute] = entry
            if m.query_phrase not in entry.query_phrases:
                entry.query_phrases.append(m.query_phrase)
            entry.spans.append(m.span)
            entry.first_position = min(entry.first_position, m.span[0])
            if m.score > entry.score:
                entry.score, entry.metric = m.score, m.metric
            if m.entry.kind in (KIND_ATTRIBUTE, KIND_ALIAS):
                entry.inference_type = EXPLICIT
            if m.entry.kind == KIND_VALUE:
                displays = entry.value_matches.setdefault(m.query_phrase, [])
                if m.entry.display not in displays:
                    displays.append(m.entry.display)
            if len(group_names) > 1:
                entry.is_ambiguous = True
                for sibling in group_names:
                    if sibling != m.attribute and sibling not in entry.ambiguity:
                        entry.ambiguity.append(sibling)

    ordered = sorted(attr_map.values(), key=lambda e: (e.first_position, e.name))
    return {entry.name: entry for entry in ordered}


def apply_overrides(attr_map: AttributeMap, attribute_overrides: dict[str, str],
                    debug_dropped: list | None = None) -> AttributeMap:
    """Collapse ambiguity groups per the caller's phrase -> attribute choices."""
    if not attribute_overrides:
        return attr_map
    result: AttributeMap = {}
    for name, entry in attr_map.items():
        chosen_against = [
            phrase for phrase, choice in attribute_overrides.items()
            if phrase in entry.query_phrases and choice != name
            and (choice in entry.ambiguity or choice in attr_map)]
        # drop the entry only if every supporting phrase was overridden away
        if chosen_against and set(chosen_against) >= set(entry.query_phrases):
            if debug_dropped is not None:
                debug_dropped.append({"reason": "override collapsed", "attribute": name})
            continue
        if entry.is_ambiguous:
            for phrase, choice in attribute_overrides.items():
                if phrase in entry.query_phrases and choice == name:
                    entry.is_ambiguous = False
                    entry.ambiguity = []
        result[name] = entry
    # recompute sibling lists against surviving entries
    for entry in result.values():
        entry.ambiguity = [s for s in entry.ambiguity if s in result]
        if not entry.ambiguity:
            entry.is_ambiguous = False
    return result
