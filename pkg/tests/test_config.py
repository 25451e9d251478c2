import json

import pytest

from nl2vis import NL2Vis
from nl2vis.config import Config


def test_threshold_bounds():
    with pytest.raises(ValueError):
        Config(similarity_threshold=0.0)
    with pytest.raises(ValueError):
        Config(similarity_threshold=1.2)
    Config(similarity_threshold=1.0)  # inclusive upper bound


def test_tables_must_be_nonempty():
    with pytest.raises(ValueError):
        Config(task_keywords={})
    with pytest.raises(ValueError):
        Config(vis_keywords={})


def test_from_dict_merges_defaults():
    config = Config.from_dict({
        "similarityThreshold": 0.7,
        "maxN": 3,
        "rankingWeights": {"taskMatch": 25},
    })
    assert config.similarity_threshold == 0.7
    assert config.max_ngram == 3
    assert config.ranking_weights["taskMatch"] == 25
    assert config.ranking_weights["explicitRequest"] == 100  # default kept
    assert "correlation" in config.task_keywords


def test_env_variable_config(tmp_path, monkeypatch):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"maxN": 2}))
    monkeypatch.setenv("NL2VIS_CONFIG", str(path))
    assert Config.load_default().max_ngram == 2
    monkeypatch.delenv("NL2VIS_CONFIG")
    assert Config.load_default().max_ngram == 5


def test_special_word_lists(data_dir):
    # "r" is normally swallowed as a stopword-ish token; a keep list makes a
    # single-letter grade value matchable
    config = Config.from_dict({"specialWordLists": {"keep": ["r"], "ignore": ["budget"]}})
    assert "r" not in config.effective_stopwords
    assert "budget" in config.effective_stopwords
    nl = NL2Vis(data_dir / "movies.csv", config=config)
    spec = nl.analyze_query("show gross for r movies")
    (inst,) = spec.task_map["filter"]
    assert inst["attributes"] == ["Content Rating"]
    assert inst["values"] == ["R"]
    # and the ignored word no longer matches its attribute
    assert "Production Budget" not in nl.analyze_query("show budget").attribute_map


def test_custom_task_keyword_flows_through(data_dir):
    config = Config.from_dict({"taskKeywordTable": {
        "correlation": {"jointly": None},
        "distribution": {"spread": None},
        "derivedvalue": {"typical": "AVG"},
        "trend": {"drift": None},
    }})
    nl = NL2Vis(data_dir / "movies.csv", config=config)
    spec = nl.analyze_query("budget jointly with gross")
    pairs = {tuple(i["attributes"]) for i in spec.task_map["correlation"]}
    assert ("Production Budget", "Worldwide Gross") in pairs
    # the default keyword is gone in the replaced table: "relationship" no
    # longer yields an explicit task (the QxQ chart still implies one)
    followup = nl.analyze_query("relationship of budget and gross")
    assert all(i["inferenceType"] == "implicit"
               for i in followup.task_map.get("correlation", []))


def test_custom_vis_keyword(data_dir):
    config = Config.from_dict({"visKeywordTable": {"sketch": "scatterplot"}})
    nl = NL2Vis(data_dir / "movies.csv", config=config)
    spec = nl.analyze_query("sketch of budget and gross")
    assert spec.vis_list[0]["inferenceType"] == "explicit"
    assert spec.vis_list[0]["vlSpec"]["mark"] == "point"
