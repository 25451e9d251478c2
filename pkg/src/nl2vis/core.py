"""Pipeline facade: analyze_query / render_vis and the serialized response.

The response is a JSON object with exactly the top-level keys
``attributeMap``, ``taskMap`` and ``visList`` (plus ``debug`` on request),
with stable key ordering so identical inputs serialize byte-identically.
"""

from __future__ import annotations

import copy
import json
import logging
import time
from dataclasses import dataclass
from typing import Any

from .attributes import AttributeMap, apply_overrides, match_ngrams, resolve_matches
from .config import Config
from .datasets import Dataset, load_dataset
from .errors import EmptyQueryError, NoVisualizationError, ResourceError
from .lexicon import Lexicon, build_lexicon
from .parsing import QueryParser
from .profiling import (DatasetProfile, get_metadata, infer_metadata,
                        set_alias_map, set_attribute_type, typed_rows)
from .tasks import (FILTER, TaskInstance, TaskMap, detect_explicit_tasks,
                    extract_filters, infer_implicit_tasks, occupied_spans)
from .visgen import (ChartRequest, VisEntry, detect_explicit_vis,
                     enumerate_combinations, finalize_tasks, generate_entries,
                     rank_vis)
from .wordnet import load_wordnet

logger = logging.getLogger(__name__)

EXPLICIT = "explicit"


@dataclass(frozen=True)
class AnalyticSpec:
    """Serialized-shape analytic specification (plain dicts and lists)."""

    attribute_map: dict[str, Any]
    task_map: dict[str, Any]
    vis_list: list[Any]
    debug: dict[str, Any] | None = None

    def to_payload(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "attributeMap": self.attribute_map,
            "taskMap": self.task_map,
            "visList": self.vis_list,
        }
        if self.debug is not None:
            payload["debug"] = self.debug
        return payload


def serialize(spec: AnalyticSpec) -> str:
    """Canonical JSON text for an analytic spec."""
    return json.dumps(spec.to_payload(), ensure_ascii=False, separators=(",", ":"))


def deserialize(text: str) -> AnalyticSpec:
    payload = json.loads(text)
    return AnalyticSpec(
        attribute_map=payload.get("attributeMap", {}),
        task_map=payload.get("taskMap", {}),
        vis_list=payload.get("visList", []),
        debug=payload.get("debug"))


@dataclass
class SessionState:
    """Dialog context: the previous response's resolved pipeline state."""

    attr_map: AttributeMap
    task_map: TaskMap
    request: ChartRequest | None


def merge_followup(previous: SessionState, attr_map: AttributeMap,
                   task_map: TaskMap, request: ChartRequest | None):
    """Conversational merge rules.

    A query introducing encodable attributes replaces the context. Otherwise
    the previous encoded attributes are inherited; new filters stack on top;
    a bare chart-type request re-specs the previous attributes with the new
    mark. Previously encoded attributes keep their encode flag even when the
    follow-up filters on them.
    """
    if any(entry.encode for entry in attr_map.values()):
        return attr_map, task_map, request

    merged_attrs = copy.deepcopy(previous.attr_map)
    for name, entry in attr_map.items():
        if name in merged_attrs:
            prev = merged_attrs[name]
            for phrase in entry.query_phrases:
                if phrase not in prev.query_phrases:
                    prev.query_phrases.append(phrase)
            for phrase, values in entry.value_matches.items():
                prev.value_matches.setdefault(phrase, list(values))
        else:
            merged_attrs[name] = copy.deepcopy(entry)

    merged_tasks = copy.deepcopy(previous.task_map)
    for task, instances in task_map.items():
        bucket = merged_tasks.setdefault(task, [])
        seen = {inst.dedupe_key() for inst in bucket}
        for inst in instances:
            if inst.dedupe_key() not in seen:
                bucket.append(inst)
                seen.add(inst.dedupe_key())
    return merged_attrs, merged_tasks, request or previous.request


def _apply_value_overrides(task_map: TaskMap, value_overrides: dict,
                           profile: DatasetProfile) -> None:
    """Collapse value-level ambiguity per (attribute, phrase) choices."""
    if not value_overrides or FILTER not in task_map:
        return
    replaced = []
    for inst in task_map[FILTER]:
        attr = inst.attributes[0]
        choices = value_overrides.get(attr)
        if not choices or not inst.value_phrases:
            replaced.append(inst)
            continue
        domain = set(profile.attributes[attr].domain)
        values: list[str] = []
        remaining_phrases = []
        for phrase, candidates in inst.value_phrases:
            chosen = choices.get(phrase)
            if chosen is None:
                remaining_phrases.append((phrase, candidates))
                picked = list(candidates)
            else:
                picked = [chosen] if isinstance(chosen, str) else list(chosen)
                for value in picked:
                    if value not in domain:
                        raise ValueError(
                            f"override value {value!r} not in domain of {attr!r}")
            for value in picked:
                if value not in values:
                    values.append(value)
        ambiguous = any(len(c) > 1 for _, c in remaining_phrases)
        replaced.append(TaskInstance(
            task=FILTER, inference_type=inst.inference_type,
            attributes=inst.attributes, operator=inst.operator,
            values=tuple(values), is_attr_ambiguous=inst.is_attr_ambiguous,
            is_value_ambiguous=ambiguous,
            value_phrases=tuple(remaining_phrases) if ambiguous else ()))
    task_map[FILTER] = replaced


def _attr_payload(attr_map: AttributeMap, debug: bool) -> dict:
    out = {}
    for name, entry in attr_map.items():
        row: dict[str, Any] = {
            "queryPhrase": list(entry.query_phrases),
            "inferenceType": entry.inference_type,
            "isAmbiguous": entry.is_ambiguous,
            "ambiguity": list(entry.ambiguity),
            "encode": entry.encode,
        }
        if debug:
            row["meta"] = {"score": entry.score, "metric": entry.metric}
        out[name] = row
    return out


def _task_payload(task_map: TaskMap) -> dict:
    out = {}
    for task, instances in task_map.items():
        rows = []
        for inst in instances:
            row: dict[str, Any] = {
                "inferenceType": inst.inference_type,
                "attributes": list(inst.attributes),
                "operator": inst.operator,
                "values": list(inst.values),
                "isAttrAmbiguous": inst.is_attr_ambiguous,
                "isValueAmbiguous": inst.is_value_ambiguous,
            }
            if inst.value_phrases:
                row["valuePhrases"] = {p: list(c) for p, c in inst.value_phrases}
            rows.append(row)
        out[task] = rows
    return out


def _vis_payload(entries: list[VisEntry]) -> list:
    return [{
        "attributes": list(entry.attributes),
        "tasks": list(entry.tasks),
        "inferenceType": entry.inference_type,
        "score": entry.score,
        "vlSpec": entry.vl_spec,
    } for entry in entries]


class NL2Vis:
    """One instance = one dataset profile + configuration.

    ``analyze_query`` is pure with respect to the profile and lexicon;
    the only mutable state is the dialog session context, which belongs to
    a single session owner. Concurrent sessions should pass their own
    SessionState via ``analyze_with_state``.
    """

    def __init__(self, data=None, *, format: str | None = None,
                 name: str | None = None, dataset: Dataset | None = None,
                 alias_map: dict | None = None, config: Config | None = None,
                 tagger=None):
        if dataset is None:
            if data is None:
                raise ValueError("provide a data path/stream or a Dataset")
            dataset = load_dataset(data, format=format, name=name)
        self.config = config or Config.load_default()
        self._profile = infer_metadata(dataset)
        self.warnings: list[str] = list(self._profile.warnings)
        if alias_map:
            self._profile = set_alias_map(self._profile, alias_map)
        self._graph = None
        try:
            self._graph = load_wordnet(self.config.wordnet_path)
        except ResourceError as exc:
            self.warnings.append(f"semantic matching disabled: {exc}")
            logger.warning("WordNet unavailable (%s); syntactic matching only", exc)
        self._parser = QueryParser(self.config, tagger)
        self._lexicon: Lexicon | None = None
        self._session: SessionState | None = None

    # -- dataset management ----------------------------------------------------

    @property
    def profile(self) -> DatasetProfile:
        return self._profile

    @property
    def lexicon(self) -> Lexicon:
        if self._lexicon is None:
            self._lexicon = build_lexicon(self._profile, self.config, self._graph)
        return self._lexicon

    def get_metadata(self):
        return get_metadata(self._profile)

    def set_attribute_type(self, attribute: str, new_type: str):
        self._profile = set_attribute_type(self._profile, attribute, new_type)
        self._lexicon = None
        return get_metadata(self._profile)

    def set_alias_map(self, alias_map: dict):
        self._profile = set_alias_map(self._profile, alias_map)
        self._lexicon = None
        return get_metadata(self._profile)

    # -- analysis ---------------------------------------------------------------

    def analyze_query(self, query: str, dialog: bool = False, debug: bool = False,
                      overrides: dict | None = None) -> AnalyticSpec:
        spec, state = self.analyze_with_state(
            query, self._session if dialog else None,
            dialog=dialog, debug=debug, overrides=overrides)
        self._session = state if dialog else None
        return spec

    def analyze_with_state(self, query: str, previous: SessionState | None,
                           dialog: bool = False, debug: bool = False,
                           overrides: dict | None = None):
        """Stateless analysis step returning (spec, new session state)."""
        if query is None or not str(query).strip():
            raise EmptyQueryError("query is empty")
        started = time.perf_counter()
        overrides = overrides or {}
        dbg: dict[str, Any] | None = None
        matches_dbg = dropped = None
        if debug:
            dbg = {"ngramMatches": [], "droppedCandidates": [],
                   "rankingScores": [], "timings": {}}
            matches_dbg, dropped = dbg["ngramMatches"], dbg["droppedCandidates"]

        def lap(key, t0):
            if dbg is not None:
                dbg["timings"][key] = round((time.perf_counter() - t0) * 1000, 3)
            return time.perf_counter()

        lexicon = self.lexicon
        t = time.perf_counter()
        parsed = self._parser.parse(str(query))
        t = lap("parseMs", t)

        matches = match_ngrams(parsed.ngrams, lexicon,
                               self.config.similarity_threshold, matches_dbg)
        attr_map = resolve_matches(matches, dropped)
        attr_map = apply_overrides(attr_map, overrides.get("attributes", {}), dropped)
        t = lap("attributesMs", t)

        occupied = occupied_spans(attr_map)
        request = detect_explicit_vis(parsed, lexicon, occupied)
        if request is not None:
            occupied.append(request.span)
        task_map = detect_explicit_tasks(parsed, attr_map, lexicon,
                                         self._profile, occupied, dropped)
        filters = extract_filters(parsed, attr_map, self._profile,
                                  self.config, dropped)
        if filters:
            task_map[FILTER] = filters
        _apply_value_overrides(task_map, overrides.get("values", {}), self._profile)
        t = lap("tasksMs", t)

        if dialog and previous is not None:
            attr_map, task_map, request = merge_followup(
                previous, attr_map, task_map, request)

        entries: list[VisEntry] = []
        if self.config.generate_vis:
            combinations = enumerate_combinations(
                attr_map, self.config.max_resolutions, dropped)
            entries = generate_entries(combinations, attr_map, task_map,
                                       self._profile, request, self._profile.name)
            entries = rank_vis(entries, task_map, attr_map, self._profile,
                               request, self.config.ranking_weights)
            task_map = infer_implicit_tasks(entries, task_map)
            finalize_tasks(entries, task_map)
            if dbg is not None:
                dbg["rankingScores"] = [{
                    "attributes": list(e.combination), "chart": e.chart_kind,
                    "score": e.score, "parts": e.score_parts} for e in entries]
        lap("visMs", t)

        new_state = None
        if dialog:
            explicit_tasks = {
                task: [inst for inst in instances if inst.inference_type == EXPLICIT]
                for task, instances in task_map.items()}
            explicit_tasks = {k: v for k, v in explicit_tasks.items() if v}
            new_state = SessionState(
                attr_map=copy.deepcopy(attr_map),
                task_map=copy.deepcopy(explicit_tasks),
                request=request)

        if dbg is not None:
            dbg["timings"]["totalMs"] = round((time.perf_counter() - started) * 1000, 3)
            dbg["kernel"] = __import__("nl2vis.kernels", fromlist=["x"]).active_kernel_name()
        spec = AnalyticSpec(
            attribute_map=_attr_payload(attr_map, debug),
            task_map=_task_payload(task_map),
            vis_list=_vis_payload(entries),
            debug=dbg)
        return spec, new_state

    def render_vis(self, query: str, dialog: bool = False) -> dict:
        """First visualization for the query, with data inlined for embedding."""
        spec = self.analyze_query(query, dialog=dialog)
        if not spec.vis_list:
            raise NoVisualizationError(f"no visualization for query: {query!r}")
        vl_spec = copy.deepcopy(spec.vis_list[0]["vlSpec"])
        vl_spec["data"] = {"values": typed_rows(self._profile)}
        return vl_spec

    def reset_dialog(self) -> None:
        self._session = None
