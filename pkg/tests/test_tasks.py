import pytest

from nl2vis.attributes import match_ngrams, resolve_matches
from nl2vis.config import Config
from nl2vis.tasks import (detect_explicit_tasks, extract_filters,
                          infer_implicit_tasks, occupied_spans)
from nl2vis.visgen import detect_explicit_vis
from tests.conftest import RUNNING_QUERY

CONFIG = Config()


def _pipeline(instance, query):
    parsed = instance._parser.parse(query)
    attr_map = resolve_matches(
        match_ngrams(parsed.ngrams, instance.lexicon, 0.8))
    occupied = occupied_spans(attr_map)
    request = detect_explicit_vis(parsed, instance.lexicon, occupied)
    if request is not None:
        occupied.append(request.span)
    task_map = detect_explicit_tasks(parsed, attr_map, instance.lexicon,
                                     instance.profile, occupied)
    filters = extract_filters(parsed, attr_map, instance.profile, CONFIG)
    if filters:
        task_map["filter"] = filters
    return parsed, attr_map, task_map, request


def test_running_query_correlations(movies):
    _, attr_map, task_map, _ = _pipeline(movies, RUNNING_QUERY)
    instances = task_map["correlation"]
    assert len(instances) == 3
    pairs = {inst.attributes for inst in instances}
    assert pairs == {
        ("Production Budget", "Content Rating"),
        ("Production Budget", "IMDB Rating"),
        ("Production Budget", "Rotten Tomatoes Rating")}
    assert all(inst.is_attr_ambiguous for inst in instances)
    assert all(inst.operator == "NONE" for inst in instances)


def test_running_query_filters(movies):
    _, attr_map, task_map, _ = _pipeline(movies, RUNNING_QUERY)
    filters = task_map["filter"]
    assert [(f.attributes[0], f.operator, list(f.values)) for f in filters] == [
        ("Genre", "IN", ["Action", "Adventure"]),
        ("Worldwide Gross", "GT", [100000000])]
    assert attr_map["Genre"].encode is False
    assert attr_map["Worldwide Gross"].encode is False
    assert attr_map["Production Budget"].encode is True


def test_average_binds_via_of_edge(movies):
    _, _, task_map, _ = _pipeline(
        movies, "Show average gross across genres for science fiction movies")
    (inst,) = task_map["derivedvalue"]
    assert inst.attributes == ("Worldwide Gross",)
    assert inst.operator == "AVG"


def test_no_keywords_no_tasks(movies):
    _, _, task_map, _ = _pipeline(movies, "show budget")
    assert task_map == {}


def test_distribution_keyword(movies):
    _, _, task_map, request = _pipeline(
        movies, "Create a histogram showing the distribution of IMDB ratings")
    assert request is not None and request.chart_id == "histogram"
    (inst,) = task_map["distribution"]
    assert inst.attributes == ("IMDB Rating",)


def test_value_ambiguity_fiction(movies):
    _, _, task_map, _ = _pipeline(movies, "show gross for fiction movies")
    (inst,) = task_map["filter"]
    assert inst.attributes == ("Creative Type",)
    assert inst.operator == "IN"
    assert set(inst.values) == {
        "Science Fiction", "Contemporary Fiction", "Historical Fiction"}
    assert inst.is_value_ambiguous
    assert dict(inst.value_phrases)["fiction"]


def test_range_filter(movies):
    _, _, task_map, _ = _pipeline(
        movies, "movies with budget between 50 and 100")
    filters = [f for f in task_map["filter"] if f.operator == "RANGE"]
    assert filters and filters[0].values == (50, 100)
    assert filters[0].attributes == ("Production Budget",)


def test_compare_without_attribute_anchor_dropped(movies):
    dropped = []
    parsed = movies._parser.parse("anything over 100")
    attr_map = resolve_matches(match_ngrams(parsed.ngrams, movies.lexicon, 0.8))
    filters = extract_filters(parsed, attr_map, movies.profile, CONFIG, dropped)
    assert filters == []
    assert any("anchor" in d["reason"] for d in dropped)


def test_keyword_conflicting_with_attribute_prefers_attribute(olympics):
    # "total" is a derived-value keyword but also names Total Medals
    _, attr_map, task_map, _ = _pipeline(olympics, "show total medals by country")
    assert "Total Medals" in attr_map
    assert not attr_map["Total Medals"].is_ambiguous
    assert "derivedvalue" not in task_map


def test_trend_keyword_consumed_by_attribute_span(housing):
    # "over the years" overlaps the span that matched Year, so no trend task
    _, attr_map, task_map, _ = _pipeline(
        housing, "Show average prices for different home types over the years")
    assert "Year" in attr_map
    assert "trend" not in task_map
    assert list(task_map["derivedvalue"][0].attributes) == ["Price"]


def test_trend_keyword_fires_when_unconsumed(movies):
    _, _, task_map, _ = _pipeline(movies, "gross trend")
    assert "trend" in task_map


def test_correlation_needs_two_attributes(movies):
    _, _, task_map, _ = _pipeline(movies, "correlate")
    assert "correlation" not in task_map


def test_correlation_fallback_extends_to_encodable(movies):
    _, _, task_map, _ = _pipeline(movies, "correlate budget with gross")
    pairs = {inst.attributes for inst in task_map["correlation"]}
    assert ("Production Budget", "Worldwide Gross") in pairs


def test_numeric_operator_requires_quantitative(movies):
    # Genre is nominal: AVG falls back to no instance for it
    _, _, task_map, _ = _pipeline(movies, "average genre")
    derived = task_map.get("derivedvalue", [])
    assert all(inst.attributes != ("Genre",) for inst in derived)


def test_duplicate_instances_removed(movies):
    _, _, task_map, _ = _pipeline(movies, "relationship between budget and gross "
                                          "and correlation between budget and gross")
    pairs = [inst.attributes for inst in task_map["correlation"]]
    assert len(pairs) == len(set(pairs))


# --- implicit tasks ---------------------------------------------------------------


class _FakeEntry:
    def __init__(self, chart_task, attrs, ambiguous=False):
        self.chart_task = chart_task
        self.task_attributes = attrs
        self.from_ambiguous = ambiguous


def test_implicit_tasks_from_charts():
    task_map = {}
    entries = [_FakeEntry("correlation", ("A", "B")),
               _FakeEntry("correlation", ("A", "C")),
               _FakeEntry("derivedvalue", ("A",))]
    result = infer_implicit_tasks(entries, task_map)
    assert len(result["correlation"]) == 2
    assert len(result["derivedvalue"]) == 1
    assert all(inst.inference_type == "implicit"
               for insts in result.values() for inst in insts)
    assert all(inst.operator == "NONE"
               for insts in result.values() for inst in insts)


def test_implicit_skipped_when_explicit_base_task_present(movies):
    _, _, task_map, _ = _pipeline(movies, RUNNING_QUERY)
    before = {t: [i.dedupe_key() for i in v] for t, v in task_map.items()}
    entries = [_FakeEntry("correlation", ("Production Budget", "IMDB Rating"))]
    result = infer_implicit_tasks(entries, task_map)
    after = {t: [i.dedupe_key() for i in v] for t, v in result.items()}
    assert before == after


def test_implicit_dedupes_identical_charts():
    entries = [_FakeEntry("distribution", ("A",)),
               _FakeEntry("distribution", ("A",))]
    result = infer_implicit_tasks(entries, {})
    assert len(result["distribution"]) == 1
