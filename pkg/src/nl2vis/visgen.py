"""Chart generation: attribute combinations -> ranked Vega-Lite specifications.

Implicit mapping rules (explicit chart requests override the mark choice):

* two quantitatives (+ any third)     -> point scatterplot
* temporal + quantitative (+ N/O)    -> line chart, mean-aggregated y
* nominal/ordinal + quantitative     -> aggregated bar chart
* single quantitative                 -> binned histogram bar
* single nominal/ordinal              -> count bar chart
* single temporal                     -> count line chart
* anything else                       -> text-mark table fallback

Third attributes take color when nominal/ordinal, size when quantitative,
and a column facet when temporal. Filter-task attributes are never encoded;
they become filter transforms on every emitted spec.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice, product
from math import prod

from .attributes import AttributeMap, EXPLICIT, IMPLICIT
from .errors import ContractError
from .profiling import DatasetProfile, N, O, Q, T
from .lexicon import Lexicon
from .parsing import ParsedQuery
from .tasks import BASE_TASKS, FILTER, TaskInstance, TaskMap, _encodable_groups, _overlaps

VEGA_LITE_SCHEMA = "https://vega.github.io/schema/vega-lite/v5.json"

MARK_FOR_KIND = {
    "histogram": "bar", "barchart": "bar", "linechart": "line",
    "areachart": "area", "scatterplot": "point", "piechart": "arc",
    "boxplot": "boxplot", "stripplot": "tick", "heatmap": "bar",
    "table": "text",
}

_AGGREGATE_FOR_OPERATOR = {
    "AVG": "mean", "SUM": "sum", "COUNT": "count", "MIN": "min", "MAX": "max",
}

_CHANNEL_ORDER = ("x", "y", "color", "size", "column", "row", "theta", "text")


@dataclass(frozen=True)
class ChartRequest:
    chart_id: str
    query_phrase: str
    span: tuple[int, int]


@dataclass
class VisEntry:
    chart_kind: str
    chart_task: str | None
    combination: tuple[str, ...]
    task_attributes: tuple[str, ...]
    attributes: tuple[str, ...]
    inference_type: str
    from_ambiguous: bool
    vl_spec: dict
    score: float = 0.0
    tasks: list[str] = field(default_factory=list)
    score_parts: dict = field(default_factory=dict)


def detect_explicit_vis(parsed: ParsedQuery, lexicon: Lexicon,
                        occupied: list[tuple[int, int]]) -> ChartRequest | None:
    """First (longest-span) chart keyword not consumed by attribute matches."""
    for ngram in parsed.ngrams:
        if any(_overlaps(ngram.span, span) for span in occupied):
            continue
        chart = lexicon.vis_lookup.get(ngram.text)
        if chart:
            return ChartRequest(chart_id=chart, query_phrase=ngram.surface,
                                span=ngram.span)
    return None


def enumerate_combinations(attr_map: AttributeMap, max_resolutions: int,
                           debug_dropped: list | None = None) -> list[tuple[str, ...]]:
    """One combination per ambiguity resolution, capped at three attributes."""
    groups = _encodable_groups(attr_map)
    if not groups:
        return []
    total = prod(len(g) for g in groups)
    combos = list(islice(product(*groups), max_resolutions))
    if debug_dropped is not None and total > len(combos):
        debug_dropped.append({
            "reason": "resolution cap reached",
            "enumerated": len(combos), "total": total})
    out: list[tuple[str, ...]] = []
    for combo in combos:
        trimmed = combo[:3]
        if trimmed not in out:
            out.append(trimmed)
    return out


def _encoding(name: str, profile: DatasetProfile, **extra) -> dict:
    spec = {"field": name, "type": profile.attributes[name].vega_type}
    spec.update(extra)
    return spec


_COUNT = {"aggregate": "count", "type": "quantitative"}


def _aggregate_for(task_map: TaskMap, y_field: str) -> str:
    for inst in task_map.get("derivedvalue", []):
        if inst.inference_type == EXPLICIT and inst.attributes == (y_field,) \
                and inst.operator in _AGGREGATE_FOR_OPERATOR:
            return _AGGREGATE_FOR_OPERATOR[inst.operator]
    return "mean"


def _third_channel(encodings: dict, name: str, profile: DatasetProfile) -> None:
    attr_type = profile.attributes[name].attr_type
    if attr_type in (N, O):
        channel = "color" if "color" not in encodings else "column"
    elif attr_type == Q:
        channel = "size" if "size" not in encodings else "color"
    else:  # temporal
        channel = "column" if "column" not in encodings else "row"
    if channel not in encodings:
        encodings[channel] = _encoding(name, profile)


def _correlation_force(combination, task_map: TaskMap):
    for inst in task_map.get("correlation", []):
        if inst.inference_type == EXPLICIT and set(inst.attributes) <= set(combination):
            return inst.attributes
    return None


def _implicit_chart(combination, profile, task_map):
    """Returns (kind, encodings, chart_task, task_attrs) or None for table."""
    types = {name: profile.attributes[name].attr_type for name in combination}
    qs = [n for n in combination if types[n] == Q]
    nos = [n for n in combination if types[n] in (N, O)]
    ts = [n for n in combination if types[n] == T]

    forced = _correlation_force(combination, task_map)
    if forced is not None:
        x, y = forced[0], forced[1]
        enc = {"x": _encoding(x, profile), "y": _encoding(y, profile)}
        rest = [n for n in combination if n not in (x, y)]
        for name in rest:
            _third_channel(enc, name, profile)
        return "scatterplot", enc, "correlation", (x, y)

    if len(combination) == 1:
        name = combination[0]
        if types[name] == Q:
            enc = {"x": _encoding(name, profile, bin=True), "y": dict(_COUNT)}
            return "histogram", enc, "distribution", (name,)
        if types[name] in (N, O):
            enc = {"x": _encoding(name, profile), "y": dict(_COUNT)}
            return "barchart", enc, "distribution", (name,)
        enc = {"x": _encoding(name, profile), "y": dict(_COUNT)}
        return "linechart", enc, "trend", (name,)

    if len(qs) >= 2:
        x, y = qs[0], qs[1]
        enc = {"x": _encoding(x, profile), "y": _encoding(y, profile)}
        for name in combination:
            if name not in (x, y):
                _third_channel(enc, name, profile)
        return "scatterplot", enc, "correlation", (x, y)

    if ts and qs:
        x, y = ts[0], qs[0]
        enc = {"x": _encoding(x, profile),
               "y": _encoding(y, profile, aggregate=_aggregate_for(task_map, y))}
        extras = [n for n in combination if n not in (x, y)]
        if any(types[n] not in (N, O) for n in extras):
            return None  # second temporal etc: unsupported
        for name in extras:
            _third_channel(enc, name, profile)
        return "linechart", enc, "trend", (x,)

    if nos and qs:
        x, y = nos[0], qs[0]
        enc = {"x": _encoding(x, profile),
               "y": _encoding(y, profile, aggregate=_aggregate_for(task_map, y))}
        for name in combination:
            if name not in (x, y):
                _third_channel(enc, name, profile)
        return "barchart", enc, "derivedvalue", (y,)

    return None


def _requested_chart(kind, combination, profile, task_map):
    """Encodings for an explicitly requested chart type; None when the
    combination cannot support it (caller falls back to a table)."""
    types = {name: profile.attributes[name].attr_type for name in combination}
    qs = [n for n in combination if types[n] == Q]
    nos = [n for n in combination if types[n] in (N, O)]
    ts = [n for n in combination if types[n] == T]

    def third(enc, used):
        for name in combination:
            if name not in used:
                _third_channel(enc, name, profile)

    if kind == "histogram":
        if qs:
            enc = {"x": _encoding(qs[0], profile, bin=True), "y": dict(_COUNT)}
            return enc, "distribution", (qs[0],)
        if nos:
            enc = {"x": _encoding(nos[0], profile), "y": dict(_COUNT)}
            return enc, "distribution", (nos[0],)
        return None
    if kind == "barchart":
        if nos and qs:
            enc = {"x": _encoding(nos[0], profile),
                   "y": _encoding(qs[0], profile, aggregate=_aggregate_for(task_map, qs[0]))}
            third(enc, (nos[0], qs[0]))
            return enc, "derivedvalue", (qs[0],)
        if ts and qs:
            enc = {"x": _encoding(ts[0], profile),
                   "y": _encoding(qs[0], profile, aggregate=_aggregate_for(task_map, qs[0]))}
            third(enc, (ts[0], qs[0]))
            return enc, "derivedvalue", (qs[0],)
        if nos:
            enc = {"x": _encoding(nos[0], profile), "y": dict(_COUNT)}
            return enc, "distribution", (nos[0],)
        if qs:
            enc = {"x": _encoding(qs[0], profile, bin=True), "y": dict(_COUNT)}
            return enc, "distribution", (qs[0],)
        return None
    if kind in ("linechart", "areachart"):
        axis = ts or [n for n in combination if types[n] == O]
        if axis and qs:
            enc = {"x": _encoding(axis[0], profile),
                   "y": _encoding(qs[0], profile, aggregate=_aggregate_for(task_map, qs[0]))}
            third(enc, (axis[0], qs[0]))
            return enc, "trend", (axis[0],)
        return None
    if kind == "scatterplot":
        if len(qs) >= 2:
            enc = {"x": _encoding(qs[0], profile), "y": _encoding(qs[1], profile)}
            third(enc, (qs[0], qs[1]))
            return enc, "correlation", (qs[0], qs[1])
        if nos and qs:
            enc = {"x": _encoding(nos[0], profile),
                   "y": _encoding(qs[0], profile, aggregate=_aggregate_for(task_map, qs[0]))}
            third(enc, (nos[0], qs[0]))
            return enc, "correlation", (nos[0], qs[0])
        if ts and qs:
            enc = {"x": _encoding(ts[0], profile),
                   "y": _encoding(qs[0], profile, aggregate=_aggregate_for(task_map, qs[0]))}
            third(enc, (ts[0], qs[0]))
            return enc, "correlation", (ts[0], qs[0])
        if combination:
            return {"x": _encoding(combination[0], profile)}, "correlation", (combination[0],)
        return None
    if kind == "piechart":
        if nos and qs:
            enc = {"color": _encoding(nos[0], profile),
                   "theta": _encoding(qs[0], profile, aggregate=_aggregate_for(task_map, qs[0]))}
            return enc, "derivedvalue", (qs[0],)
        if nos:
            enc = {"color": _encoding(nos[0], profile), "theta": dict(_COUNT)}
            return enc, "distribution", (nos[0],)
        return None
    if kind == "boxplot":
        if qs:
            enc = {"y": _encoding(qs[0], profile)}
            if nos:
                enc = {"x": _encoding(nos[0], profile), "y": enc["y"]}
            return enc, "distribution", (qs[0],)
        return None
    if kind == "stripplot":
        if qs:
            enc = {"x": _encoding(qs[0], profile)}
            if nos:
                enc["y"] = _encoding(nos[0], profile)
            return enc, "distribution", (qs[0],)
        return None
    if kind == "heatmap":
        if len(qs) >= 2:
            enc = {"x": _encoding(qs[0], profile, bin=True),
                   "y": _encoding(qs[1], profile, bin=True),
                   "color": dict(_COUNT)}
            return enc, "distribution", (qs[0], qs[1])
        if len(nos) >= 2:
            enc = {"x": _encoding(nos[0], profile), "y": _encoding(nos[1], profile),
                   "color": dict(_COUNT)}
            return enc, "distribution", (nos[0], nos[1])
        if nos and qs:
            enc = {"x": _encoding(nos[0], profile),
                   "y": _encoding(qs[0], profile, bin=True), "color": dict(_COUNT)}
            return enc, "distribution", (nos[0], qs[0])
        return None
    return None  # "table" and unknown kinds


def _filter_predicate(inst: TaskInstance) -> dict:
    name = inst.attributes[0]
    if inst.operator == "IN":
        return {"field": name, "oneOf": list(inst.values)}
    if inst.operator == "GT":
        return {"field": name, "gt": inst.values[0]}
    if inst.operator == "LT":
        return {"field": name, "lt": inst.values[0]}
    if inst.operator == "EQ":
        return {"field": name, "equal": inst.values[0]}
    if inst.operator == "RANGE":
        return {"field": name, "range": list(inst.values[:2])}
    raise ValueError(f"unsupported filter operator {inst.operator}")


def _assemble(kind: str, encodings: dict, filters: list[TaskInstance],
              dataset_name: str) -> dict:
    spec: dict = {
        "$schema": VEGA_LITE_SCHEMA,
        "data": {"name": dataset_name},
        "mark": MARK_FOR_KIND[kind],
    }
    ordered = {ch: encodings[ch] for ch in _CHANNEL_ORDER if ch in encodings}
    if ordered:
        spec["encoding"] = ordered
    if filters:
        spec["transform"] = [{"filter": _filter_predicate(i)} for i in filters]
    return spec


def generate_entries(combinations: list[tuple[str, ...]], attr_map: AttributeMap,
                     task_map: TaskMap, profile: DatasetProfile,
                     request: ChartRequest | None, dataset_name: str) -> list[VisEntry]:
    filters = task_map.get(FILTER, [])
    filtered_attrs = tuple(inst.attributes[0] for inst in filters)
    entries: list[VisEntry] = []

    def build(combination: tuple[str, ...]) -> VisEntry:
        if len(combination) > 3:
            raise ContractError(
                f"combination of {len(combination)} attributes; "
                "enumerate_combinations must cap at 3")
        kind, encodings, task, task_attrs = "table", {}, None, ()
        if request is not None:
            built = _requested_chart(request.chart_id, combination, profile, task_map)
            if built is not None:
                encodings, task, task_attrs = built
                kind = request.chart_id
        else:
            built = _implicit_chart(combination, profile, task_map)
            if built is not None:
                kind, encodings, task, task_attrs = built
        ambiguous = any(attr_map[name].is_ambiguous for name in combination
                        if name in attr_map)
        all_attrs = combination + tuple(a for a in filtered_attrs if a not in combination)
        return VisEntry(
            chart_kind=kind, chart_task=task, combination=combination,
            task_attributes=tuple(task_attrs), attributes=all_attrs,
            inference_type=EXPLICIT if request is not None else IMPLICIT,
            from_ambiguous=ambiguous,
            vl_spec=_assemble(kind, encodings, filters, dataset_name))

    for combination in combinations:
        entries.append(build(combination))
    if not entries and (attr_map or filters):
        # nothing encodable (e.g. all attributes filtered): table fallback
        entries.append(VisEntry(
            chart_kind="table", chart_task=None, combination=(),
            task_attributes=(), attributes=filtered_attrs,
            inference_type=EXPLICIT if request is not None else IMPLICIT,
            from_ambiguous=False,
            vl_spec=_assemble("table", {}, filters, dataset_name)))
    return entries


def _type_affinity(task: str, types: list[str]) -> bool:
    if task == "correlation":
        return types.count(Q) >= 2
    if task == "derivedvalue":
        return Q in types and any(t in (N, O) for t in types)
    if task == "distribution":
        return len(types) == 1 and types[0] == Q
    if task == "trend":
        return T in types
    return False


def rank_vis(entries: list[VisEntry], task_map: TaskMap, attr_map: AttributeMap,
             profile: DatasetProfile, request: ChartRequest | None,
             weights: dict[str, int]) -> list[VisEntry]:
    """Additive ranking; ties keep enumeration (attribute map) order."""
    explicit_tasks = [
        task for task in BASE_TASKS
        if any(i.inference_type == EXPLICIT for i in task_map.get(task, []))]
    for entry in entries:
        parts = {}
        if request is not None and entry.chart_kind == request.chart_id:
            parts["explicitRequest"] = weights["explicitRequest"]
        if entry.chart_task in explicit_tasks:
            parts["taskMatch"] = weights["taskMatch"]
        types = [profile.attributes[name].attr_type for name in entry.combination]
        if any(_type_affinity(task, types) for task in explicit_tasks):
            parts["typeAffinity"] = weights["typeAffinity"]
        explicit_encoded = sum(
            1 for name in entry.combination
            if name in attr_map and attr_map[name].inference_type == EXPLICIT)
        if explicit_encoded:
            parts["explicitAttribute"] = weights["explicitAttribute"] * explicit_encoded
        entry.score = sum(parts.values())
        entry.score_parts = parts
    return sorted(entries, key=lambda e: -e.score)


def finalize_tasks(entries: list[VisEntry], task_map: TaskMap) -> None:
    """Populate each entry's task list from the final task map."""
    for entry in entries:
        tasks = []
        covered = set(entry.attributes)
        for task, instances in task_map.items():
            if task == FILTER:
                continue
            if any(set(inst.attributes) <= covered for inst in instances):
                tasks.append(task)
        if entry.vl_spec.get("transform"):
            tasks.append(FILTER)
        entry.tasks = tasks
