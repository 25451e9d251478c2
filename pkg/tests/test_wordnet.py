import random
from pathlib import Path

import pytest

from nl2vis.config import Config
from nl2vis.errors import ResourceError
from nl2vis.wordnet import Synset, WordNetGraph, load_wordnet, wup_phrase, wup_sim


@pytest.fixture(scope="module")
def graph():
    return load_wordnet(Config().wordnet_path)


def test_root_depth(graph):
    root = next(s for s in graph.synsets.values() if "entity" in s.lemmas)
    assert graph.depths[root.sid] == 1


def test_identical_token(graph):
    assert wup_sim("movie", "movie", graph).value == 1.0


def test_shared_synset_pairs(graph):
    assert wup_sim("film", "movie", graph).value == 1.0
    assert wup_sim("car", "automobile", graph).value == 1.0


def test_stopword_has_no_synset(graph):
    assert wup_sim("budget", "and", graph).value == 0.0


def test_inflected_lookup(graph):
    # stem-keyed index reaches synsets from inflected forms
    assert wup_sim("movies", "film", graph).value == 1.0


def test_home_house_near_synonyms(graph):
    value = wup_sim("home", "house", graph).value
    assert 0.8 <= value < 1.0


def test_metric_label(graph):
    assert wup_sim("car", "truck", graph).metric == "semantic"


def test_missing_directory():
    with pytest.raises(ResourceError):
        load_wordnet("/nonexistent/wordnet-dir")


def test_corrupt_file(tmp_path: Path):
    for name in ("data.noun", "index.noun", "data.verb", "index.verb"):
        (tmp_path / name).write_text("garbage line that is not a synset\n")
    with pytest.raises(ResourceError):
        load_wordnet(tmp_path)


def test_missing_pos_files(tmp_path: Path):
    (tmp_path / "data.noun").write_text("")
    with pytest.raises(ResourceError):
        load_wordnet(tmp_path)


def test_phrase_equals_single_token_case(graph):
    single = wup_sim("home", "house", graph).value
    assert wup_phrase(["home"], ["house"], graph) == pytest.approx(single)


def test_phrase_mean_over_query_tokens(graph):
    a = wup_phrase(["home", "type"], ["house", "type"], graph)
    home = wup_sim("home", "house", graph).value
    assert a == pytest.approx((home + 1.0) / 2)


# --- brute-force oracle on a random 50-synset taxonomy -----------------------


def _toy_graph(seed: int, size: int = 50) -> WordNetGraph:
    """Layered random DAG: parents always come from earlier synsets."""
    rng = random.Random(seed)
    synsets = {}
    for i in range(size):
        sid = f"{i:08d}-n"
        if i == 0:
            parents = ()
        else:
            count = 1 if i < 5 or rng.random() < 0.8 else 2
            parents = tuple(f"{p:08d}-n" for p in
                            sorted(rng.sample(range(i), min(count, i))))
        synsets[sid] = Synset(sid, "n", (f"word{i}", f"syn{i}"), parents)
    return WordNetGraph(synsets)


def _oracle_wup(graph: WordNetGraph, a: str, b: str) -> float:
    """Independent brute force: BFS depths, all sense pairs, all ancestors."""
    def bfs_depth(sid):
        best = None
        frontier = [(sid, 1)]
        while frontier:
            node, ups = frontier.pop()
            syn = graph.synsets[node]
            if not syn.parents:
                best = ups if best is None else min(best, ups)
            for parent in syn.parents:
                frontier.append((parent, ups + 1))
        return best

    def all_ancestors(sid):
        out = {sid}
        stack = [sid]
        while stack:
            node = stack.pop()
            for parent in graph.synsets[node].parents:
                if parent not in out:
                    out.add(parent)
                    stack.append(parent)
        return out

    sa = [sid for sid, syn in graph.synsets.items() if a in syn.lemmas]
    sb = [sid for sid, syn in graph.synsets.items() if b in syn.lemmas]
    best = 0.0
    for s1 in sa:
        for s2 in sb:
            common = all_ancestors(s1) & all_ancestors(s2)
            for c in common:
                score = 2.0 * bfs_depth(c) / (bfs_depth(s1) + bfs_depth(s2))
                best = max(best, min(score, 1.0))
    return best


def test_wup_equals_bruteforce_oracle_on_toy_graph():
    graph = _toy_graph(seed=1234)
    assert len(graph.synsets) == 50
    rng = random.Random(99)
    pairs = [(f"word{rng.randrange(50)}", f"word{rng.randrange(50)}")
             for _ in range(200)]
    for a, b in pairs:
        assert wup_sim(a, b, graph).value == pytest.approx(
            _oracle_wup(graph, a, b), abs=1e-12), (a, b)


def test_depth_cache_equals_bfs_on_toy_graph():
    graph = _toy_graph(seed=777)
    for sid in graph.synsets:
        frontier = [(sid, 1)]
        best = None
        while frontier:
            node, ups = frontier.pop()
            if not graph.synsets[node].parents:
                best = ups if best is None else min(best, ups)
            else:
                frontier.extend((p, ups + 1) for p in graph.synsets[node].parents)
        assert graph.depths[sid] == best
