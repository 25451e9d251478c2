"""Wu-Palmer semantic similarity over a WordNet-style hypernym graph.

Reads noun and verb synsets from Princeton database files (``index.noun`` /
``data.noun`` layout). The package bundles a trimmed subset covering the
fixture vocabularies; pointing ``wordnetPath`` at a full WordNet ``dict``
directory is a drop-in replacement.

Lemma lookup is stem-keyed: both query tokens and lemmas are run through the
same Porter stemmer, so inflected forms ("movies") reach their synsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import ResourceError
from .similarity import SEMANTIC, SimilarityScore
from .stemming import porter_stem

_HYPERNYM_SYMBOLS = {"@", "@i"}
_POS_FILES = (("noun", "n"), ("verb", "v"))


@dataclass(frozen=True)
class Synset:
    sid: str  # "00001740-n"
    pos: str
    lemmas: tuple[str, ...]
    parents: tuple[str, ...]


class WordNetGraph:
    """Immutable hypernym DAG with cached depths and ancestor sets."""

    def __init__(self, synsets: dict[str, Synset]):
        self.synsets = synsets
        self.depths: dict[str, int] = {}
        self.ancestors: dict[str, frozenset[str]] = {}
        self.stem_index: dict[str, tuple[str, ...]] = {}
        self._build_caches()

    def _build_caches(self) -> None:
        children: dict[str, list[str]] = {sid: [] for sid in self.synsets}
        roots = []
        for sid, syn in self.synsets.items():
            for parent in syn.parents:
                if parent not in self.synsets:
                    raise ResourceError(f"dangling hypernym pointer {parent} from {sid}")
                children[parent].append(sid)
            if not syn.parents:
                roots.append(sid)
        if not roots:
            raise ResourceError("hypernym graph has no roots")

        # min depth from any root; roots sit at depth 1
        frontier = roots
        for sid in roots:
            self.depths[sid] = 1
        while frontier:
            nxt = []
            for sid in frontier:
                for child in children[sid]:
                    if child not in self.depths:
                        self.depths[child] = self.depths[sid] + 1
                        nxt.append(child)
            frontier = nxt
        if len(self.depths) != len(self.synsets):
            unreachable = set(self.synsets) - set(self.depths)
            raise ResourceError(f"synsets unreachable from any root: {sorted(unreachable)[:5]}")

        memo = self.ancestors

        def anc(sid: str, trail: tuple[str, ...]) -> frozenset[str]:
            if sid in memo:
                return memo[sid]
            if sid in trail:
                raise ResourceError(f"hypernym cycle through {sid}")
            out = {sid}
            for parent in self.synsets[sid].parents:
                out |= anc(parent, trail + (sid,))
            memo[sid] = frozenset(out)
            return memo[sid]

        for sid in self.synsets:
            anc(sid, ())

        stems: dict[str, set[str]] = {}
        for sid, syn in self.synsets.items():
            for lemma in syn.lemmas:
                if "_" in lemma:
                    continue  # multiword lemmas are not single-token targets
                stems.setdefault(porter_stem(lemma.lower()), set()).add(sid)
        self.stem_index = {stem: tuple(sorted(sids)) for stem, sids in stems.items()}

    def token_synsets(self, token: str) -> tuple[str, ...]:
        return self.stem_index.get(porter_stem(token.lower()), ())


def wup_sim(a: str, b: str, graph: WordNetGraph | None) -> SimilarityScore:
    """Max over sense pairs of 2*depth(lcs) / (depth(a) + depth(b)).

    The least common subsumer is the deepest shared ancestor (including the
    synsets themselves). Returns 0 when either token has no synset in the
    loaded graph -- absence of semantic evidence, not an error. Values are
    clamped to 1.0 to keep the score in bounds on irregular DAGs.
    """
    if graph is None:
        return SimilarityScore(0.0, SEMANTIC)
    sa = graph.token_synsets(a)
    sb = graph.token_synsets(b)
    best = 0.0
    for s1 in sa:
        for s2 in sb:
            common = graph.ancestors[s1] & graph.ancestors[s2]
            if not common:
                continue
            lcs_depth = max(graph.depths[c] for c in common)
            value = 2.0 * lcs_depth / (graph.depths[s1] + graph.depths[s2])
            best = max(best, min(value, 1.0))
    return SimilarityScore(best, SEMANTIC)


def wup_phrase(tokens_a: list[str], tokens_b: list[str], graph: WordNetGraph | None) -> float:
    """Phrase-level semantic score: mean over tokens_a of the best per-token match."""
    if graph is None or not tokens_a or not tokens_b:
        return 0.0
    total = 0.0
    for qt in tokens_a:
        total += max(wup_sim(qt, et, graph).value for et in tokens_b)
    return total / len(tokens_a)


def _parse_data_file(path: Path, pos: str, synsets: dict[str, Synset]) -> None:
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if line.startswith("  ") or not line.strip():
                continue  # license header / blanks
            try:
                fields = line.split(" | ")[0].split()
                offset, ss_type = fields[0], fields[2]
                if ss_type not in ("n", "v"):
                    continue
                w_cnt = int(fields[3], 16)
                lemmas = tuple(fields[4 + 2 * i] for i in range(w_cnt))
                base = 4 + 2 * w_cnt
                p_cnt = int(fields[base])
                parents = []
                for j in range(p_cnt):
                    sym, p_off, p_pos, _src = fields[base + 1 + 4 * j : base + 5 + 4 * j]
                    if sym in _HYPERNYM_SYMBOLS:
                        parents.append(f"{p_off}-{p_pos}")
                sid = f"{offset}-{pos}"
                synsets[sid] = Synset(sid, pos, lemmas, tuple(parents))
            except (IndexError, ValueError) as exc:
                raise ResourceError(f"{path.name}:{lineno}: malformed synset line") from exc


def load_wordnet(path: str | Path) -> WordNetGraph:
    """Load noun and verb synsets from a WordNet database directory."""
    base = Path(path)
    if not base.is_dir():
        raise ResourceError(f"WordNet directory not found: {base}")
    synsets: dict[str, Synset] = {}
    for name, pos in _POS_FILES:
        data_file = base / f"data.{name}"
        index_file = base / f"index.{name}"
        if not data_file.exists() or not index_file.exists():
            raise ResourceError(f"missing WordNet files for pos {name!r} in {base}")
        _parse_data_file(data_file, pos, synsets)
    if not synsets:
        raise ResourceError(f"no synsets found under {base}")
    return WordNetGraph(synsets)
