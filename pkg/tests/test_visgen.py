import pytest

from nl2vis.attributes import match_ngrams, resolve_matches
from nl2vis.config import Config
from nl2vis.tasks import detect_explicit_tasks, extract_filters, occupied_spans
from nl2vis.visgen import (MARK_FOR_KIND, detect_explicit_vis,
                           enumerate_combinations, generate_entries, rank_vis)
from nl2vis.vlspec import validate_spec
from tests.conftest import RUNNING_QUERY

CONFIG = Config()


def _stage(instance, query, overrides=None):
    parsed = instance._parser.parse(query)
    attr_map = resolve_matches(match_ngrams(parsed.ngrams, instance.lexicon, 0.8))
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


def _entries(instance, query):
    _, attr_map, task_map, request = _stage(instance, query)
    combos = enumerate_combinations(attr_map, CONFIG.max_resolutions)
    entries = generate_entries(combos, attr_map, task_map, instance.profile,
                               request, instance.profile.name)
    return rank_vis(entries, task_map, attr_map, instance.profile, request,
                    CONFIG.ranking_weights)


# --- explicit chart requests -------------------------------------------------


def test_histogram_request(movies):
    _, _, _, request = _stage(
        movies, "Create a histogram showing the distribution of IMDB ratings")
    assert request.chart_id == "histogram"
    assert request.query_phrase == "histogram"


def test_scatterplot_request_overrides_defaults(movies):
    entries = _entries(movies, "Show average gross across genres as a scatterplot")
    spec = entries[0].vl_spec
    assert spec["mark"] == "point"
    assert spec["encoding"]["x"]["field"] == "Genre"
    assert spec["encoding"]["y"] == {
        "field": "Worldwide Gross", "type": "quantitative", "aggregate": "mean"}


def test_no_vis_keyword_no_request(movies):
    _, _, _, request = _stage(movies, "show budget and rating")
    assert request is None


# --- combinations ---------------------------------------------------------------


def test_fig1c_combinations(movies):
    _, attr_map, _, _ = _stage(movies, "Visualize rating and budget")
    combos = enumerate_combinations(attr_map, 32)
    assert combos == [
        ("Content Rating", "Production Budget"),
        ("IMDB Rating", "Production Budget"),
        ("Rotten Tomatoes Rating", "Production Budget")]


def test_running_query_filters_excluded_from_combinations(movies):
    _, attr_map, task_map, _ = _stage(movies, RUNNING_QUERY)
    combos = enumerate_combinations(attr_map, 32)
    assert len(combos) == 3
    for combo in combos:
        assert "Genre" not in combo
        assert "Worldwide Gross" not in combo


def test_single_attribute_combination(movies):
    _, attr_map, _, _ = _stage(movies, "show budget")
    assert enumerate_combinations(attr_map, 32) == [("Production Budget",)]


def test_combination_cap_and_truncation(movies):
    _, attr_map, _, _ = _stage(
        movies, "budget gross rating runtime genre director")
    combos = enumerate_combinations(attr_map, 4)
    assert 0 < len(combos) <= 4
    for combo in combos:
        assert len(combo) <= 3


# --- implicit mapping rules -----------------------------------------------------


def test_qq_scatter(movies):
    entries = _entries(movies, "budget and gross")
    spec = entries[0].vl_spec
    assert spec["mark"] == "point"
    assert {spec["encoding"]["x"]["field"], spec["encoding"]["y"]["field"]} == \
        {"Production Budget", "Worldwide Gross"}


def test_nq_bar_mean_default(movies):
    entries = _entries(movies, "gross by genre")
    spec = entries[0].vl_spec
    assert spec["mark"] == "bar"
    assert spec["encoding"]["x"] == {"field": "Genre", "type": "nominal"}
    assert spec["encoding"]["y"]["aggregate"] == "mean"


def test_tq_line(housing):
    entries = _entries(housing, "price by year")
    spec = entries[0].vl_spec
    assert spec["mark"] == "line"
    assert spec["encoding"]["x"]["type"] == "temporal"


def test_single_q_histogram(movies):
    entries = _entries(movies, "show budget")
    spec = entries[0].vl_spec
    assert spec["mark"] == "bar"
    assert spec["encoding"]["x"]["bin"] is True
    assert spec["encoding"]["y"]["aggregate"] == "count"


def test_single_n_count_bar(movies):
    entries = _entries(movies, "show genre")
    spec = entries[0].vl_spec
    assert spec["mark"] == "bar"
    assert spec["encoding"]["y"]["aggregate"] == "count"
    assert entries[0].chart_task == "distribution"


def test_third_attribute_channels(movies):
    entries = _entries(movies, "budget gross and running time")
    spec = entries[0].vl_spec
    assert spec["mark"] == "point"
    assert spec["encoding"]["size"]["field"] == "Running Time"

    entries = _entries(movies, "budget gross and genre")
    spec = entries[0].vl_spec
    assert spec["encoding"]["color"]["field"] == "Genre"


def test_correlation_forces_point_on_nq(movies):
    entries = _entries(movies, "relationship between budget and content rating")
    assert all(e.vl_spec["mark"] == "point" for e in entries)


def test_unsupported_combination_falls_to_table(movies):
    entries = _entries(movies, "genre and content rating")
    assert entries[0].vl_spec["mark"] == "text"
    assert entries[0].chart_kind == "table"


def test_filter_only_query_yields_table_fallback(movies):
    entries = _entries(movies, "just show action movies")
    assert len(entries) == 1
    assert entries[0].vl_spec["mark"] == "text"
    assert entries[0].vl_spec["transform"] == [
        {"filter": {"field": "Genre", "oneOf": ["Action"]}}]


def test_transforms_attached_to_every_entry(movies):
    entries = _entries(movies, RUNNING_QUERY)
    for entry in entries:
        fields = [t["filter"]["field"] for t in entry.vl_spec["transform"]]
        assert fields == ["Genre", "Worldwide Gross"]
        assert entry.vl_spec["transform"][1]["filter"]["gt"] == 100000000


def test_boxplot_request(cars):
    entries = _entries(cars, "Create a boxplot of acceleration")
    spec = entries[0].vl_spec
    assert spec["mark"] == "boxplot"
    assert spec["encoding"]["y"]["field"] == "Acceleration"


def test_pie_request(movies):
    entries = _entries(movies, "pie chart of genre")
    spec = entries[0].vl_spec
    assert spec["mark"] == "arc"
    assert spec["encoding"]["theta"]["aggregate"] == "count"
    assert spec["encoding"]["color"]["field"] == "Genre"


def test_strip_request(cars):
    entries = _entries(cars, "strip plot of horsepower")
    assert entries[0].vl_spec["mark"] == "tick"


def test_heatmap_request(cars):
    entries = _entries(cars, "heatmap of horsepower and mpg")
    spec = entries[0].vl_spec
    assert spec["encoding"]["x"]["bin"] is True
    assert spec["encoding"]["y"]["bin"] is True
    assert spec["encoding"]["color"]["aggregate"] == "count"


# --- ranking ----------------------------------------------------------------------


def test_running_query_ranking(movies):
    entries = _entries(movies, RUNNING_QUERY)
    ordered = [e.combination[1] for e in entries]
    assert ordered == ["IMDB Rating", "Rotten Tomatoes Rating", "Content Rating"]
    assert entries[0].score > entries[-1].score


def test_explicit_request_dominates(movies):
    entries = _entries(movies, "histogram of budget and rating")
    assert entries[0].vl_spec["mark"] == "bar"
    assert entries[0].inference_type == "explicit"
    assert entries[0].score >= 100


def test_tie_break_keeps_map_order(movies):
    entries = _entries(movies, "Visualize rating and budget")
    combos = [e.combination[0] for e in entries]
    assert combos == sorted(combos)


# --- structural validation ----------------------------------------------------------


def test_all_entry_specs_validate(movies, cars, housing, olympics):
    cases = [
        (movies, RUNNING_QUERY),
        (movies, "Visualize rating and budget"),
        (movies, "Show average gross across genres for science fiction movies"),
        (movies, "histogram of imdb rating"),
        (cars, "Create a boxplot of acceleration"),
        (cars, "Visualize horsepower mpg and cylinders"),
        (housing, "Show average prices for different home types over the years"),
        (olympics, "Show me medals for hockey and skating by country"),
    ]
    for instance, query in cases:
        for entry in _entries(instance, query):
            assert validate_spec(entry.vl_spec, instance.profile) == [], \
                (query, entry.vl_spec)


def test_validator_flags_problems(movies):
    profile = movies.profile
    assert validate_spec({"mark": "hexbin"}, profile)
    assert validate_spec(
        {"mark": "bar", "encoding": {"x": {"field": "Nope", "type": "nominal"}}},
        profile)
    assert validate_spec(
        {"mark": "bar", "encoding": {"x": {"field": "Genre", "type": "quantitative"}}},
        profile)
    assert validate_spec(
        {"mark": "bar", "encoding": {"theta": {"field": "Genre", "type": "nominal"}}},
        profile)
    assert validate_spec(
        {"mark": "bar",
         "encoding": {"x": {"field": "Genre", "type": "nominal", "bin": True}}},
        profile)
    assert validate_spec(
        {"mark": "bar",
         "encoding": {"x": {"field": "Genre", "type": "nominal"}},
         "transform": [{"filter": {"field": "Genre", "oneOf": ["Action"]}}]},
        profile)


def test_mark_kind_table_complete():
    for kind, mark in MARK_FOR_KIND.items():
        assert isinstance(mark, str) and mark


def test_oversized_combination_raises_contract_error(movies):
    from nl2vis.errors import ContractError
    with pytest.raises(ContractError):
        generate_entries([("Genre", "Director", "Title", "Content Rating")],
                         {}, {}, movies.profile, None, "movies")
