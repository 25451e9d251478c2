"""Analytic-task inference: correlation, distribution, derived value, trend, filter.

Base tasks come from keyword spans left over after attribute (and chart
keyword) matching; filters come from matched data values and from compare
relation edges anchored to quantitative attributes. Implicit tasks are read
off the generated charts when the query stated no base task.
"""

from __future__ import annotations

from dataclasses import dataclass

from .attributes import AttributeMap, EXPLICIT, IMPLICIT
from .config import Config
from .lexicon import Lexicon
from .parsing import ParsedQuery
from .profiling import DatasetProfile, Q

FILTER = "filter"
BASE_TASKS = ("correlation", "distribution", "derivedvalue", "trend")
NUMERIC_OPERATORS = ("AVG", "SUM", "MIN", "MAX")


@dataclass(frozen=True)
class TaskInstance:
    task: str
    inference_type: str = EXPLICIT
    attributes: tuple[str, ...] = ()
    operator: str = "NONE"
    values: tuple = ()
    is_attr_ambiguous: bool = False
    is_value_ambiguous: bool = False
    # phrase -> candidate values, present only for value-ambiguous filters
    value_phrases: tuple[tuple[str, tuple[str, ...]], ...] = ()

    def dedupe_key(self):
        return (self.task, self.attributes, self.operator,
                tuple(str(v) for v in self.values))


TaskMap = dict[str, list[TaskInstance]]


def _overlaps(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return not (a[1] < b[0] or b[1] < a[0])


def occupied_spans(attr_map: AttributeMap) -> list[tuple[int, int]]:
    return [span for entry in attr_map.values() for span in entry.spans]


def _coverage_groups(parsed: ParsedQuery, attr_map: AttributeMap) -> dict[int, tuple[str, ...]]:
    """Original token index -> ordered attribute alternatives covering it."""
    coverage: dict[int, list[str]] = {}
    for entry in attr_map.values():
        for span in entry.spans:
            for pos in range(span[0], span[1] + 1):
                orig = parsed.original_index(pos)
                names = coverage.setdefault(orig, [])
                if entry.name not in names:
                    names.append(entry.name)
    return {idx: tuple(names) for idx, names in coverage.items()}


def _encodable_groups(attr_map: AttributeMap) -> list[tuple[str, ...]]:
    """Encodable attributes as alternative-groups (ambiguity sets as one unit)."""
    groups: list[tuple[str, ...]] = []
    seen: set[str] = set()
    for entry in attr_map.values():
        if not entry.encode or entry.name in seen:
            continue
        if entry.is_ambiguous:
            members = [entry.name] + [s for s in entry.ambiguity
                                      if s in attr_map and attr_map[s].encode]
            members.sort(key=lambda n: list(attr_map).index(n))
            groups.append(tuple(members))
            seen.update(members)
        else:
            groups.append((entry.name,))
            seen.add(entry.name)
    return groups


def bind_task_attributes(keyword_indices: set[int], parsed: ParsedQuery,
                         attr_map: AttributeMap) -> list[tuple[str, ...]]:
    """Attribute alternative-groups reached from a keyword via of/conj edges.

    Falls back to every encodable attribute group when no edge lands on an
    attribute-bearing token.
    """
    coverage = _coverage_groups(parsed, attr_map)
    targets = [edge.dependent for edge in parsed.relations
               if edge.label == "of" and edge.head in keyword_indices]
    adjacency: dict[int, list[int]] = {}
    for edge in parsed.relations:
        if edge.label == "conj":
            adjacency.setdefault(edge.head, []).append(edge.dependent)
            adjacency.setdefault(edge.dependent, []).append(edge.head)
    reached: list[int] = []
    frontier = list(targets)
    while frontier:
        idx = frontier.pop(0)
        if idx in reached:
            continue
        reached.append(idx)
        frontier.extend(adjacency.get(idx, []))

    groups: list[tuple[str, ...]] = []
    for idx in sorted(reached):
        group = coverage.get(idx)
        if group and group not in groups:
            groups.append(group)
    if not groups:
        groups = _encodable_groups(attr_map)
    return groups


def _instances_for_keyword(task: str, operator: str | None,
                           groups: list[tuple[str, ...]],
                           attr_map: AttributeMap,
                           profile: DatasetProfile) -> list[TaskInstance]:
    instances: list[TaskInstance] = []
    if task == "correlation":
        pool = list(groups)
        if len(pool) < 2:
            for extra in _encodable_groups(attr_map):
                if extra not in pool:
                    pool.append(extra)
                if len(pool) >= 2:
                    break
        if len(pool) < 2:
            return []
        first, second = pool[0], pool[1]
        ambiguous = len(first) > 1 or len(second) > 1
        for a in first:
            for b in second:
                if a == b:
                    continue
                instances.append(TaskInstance(
                    task=task, attributes=(a, b), is_attr_ambiguous=ambiguous))
        return instances

    op = operator or "NONE"
    for group in groups:
        alternatives = group
        if op in NUMERIC_OPERATORS:
            alternatives = tuple(
                name for name in group
                if profile.attributes[name].attr_type == Q)
        for name in alternatives:
            instances.append(TaskInstance(
                task=task, attributes=(name,), operator=op,
                is_attr_ambiguous=len(group) > 1))
    return instances


def detect_explicit_tasks(parsed: ParsedQuery, attr_map: AttributeMap,
                          lexicon: Lexicon, profile: DatasetProfile,
                          occupied: list[tuple[int, int]],
                          debug_dropped: list | None = None) -> TaskMap:
    """Keyword-driven base tasks over n-grams not consumed by attributes/charts."""
    taken = list(occupied)
    hits = []  # (span, [(task, operator)])
    for ngram in parsed.ngrams:  # ordered longest-first
        if any(_overlaps(ngram.span, span) for span in taken):
            continue
        found = lexicon.task_lookup.get(ngram.text)
        if not found:
            continue
        hits.append((ngram, found))
        taken.append(ngram.span)

    task_map: TaskMap = {}
    for ngram, found in sorted(hits, key=lambda h: h[0].span[0]):
        keyword_indices = {parsed.original_index(pos)
                           for pos in range(ngram.span[0], ngram.span[1] + 1)}
        groups = bind_task_attributes(keyword_indices, parsed, attr_map)
        for task, operator in found:
            instances = _instances_for_keyword(task, operator, groups, attr_map, profile)
            if not instances and debug_dropped is not None:
                debug_dropped.append({
                    "reason": "task keyword unbound", "task": task,
                    "phrase": ngram.surface})
            bucket = task_map.setdefault(task, [])
            seen = {inst.dedupe_key() for inst in bucket}
            for inst in instances:
                if inst.dedupe_key() not in seen:
                    bucket.append(inst)
                    seen.add(inst.dedupe_key())
    return {task: insts for task, insts in task_map.items() if insts}


def _comparator_operator(parsed: ParsedQuery, head: int, config: Config) -> str | None:
    texts = [t.text for t in parsed.tokens]
    if head + 1 < len(texts):
        two = f"{texts[head]} {texts[head + 1]}"
        if two in config.compare_words:
            return config.compare_words[two]
    return config.compare_words.get(texts[head])


def extract_filters(parsed: ParsedQuery, attr_map: AttributeMap,
                    profile: DatasetProfile, config: Config,
                    debug_dropped: list | None = None) -> list[TaskInstance]:
    """Filters from matched data values and from compare edges.

    Side effect: every filter attribute's map entry gets encode=False.
    """
    instances: list[TaskInstance] = []

    # (a) value-kind matches -> IN filters, values in query order
    for entry in attr_map.values():
        if not entry.value_matches:
            continue
        values: list[str] = []
        phrase_candidates: list[tuple[str, tuple[str, ...]]] = []
        ambiguous = False
        for phrase in entry.query_phrases:
            displays = entry.value_matches.get(phrase)
            if not displays:
                continue
            phrase_candidates.append((phrase, tuple(displays)))
            if len(displays) > 1:
                ambiguous = True
            for display in displays:
                if display not in values:
                    values.append(display)
        if not values:
            continue
        instances.append(TaskInstance(
            task=FILTER, attributes=(entry.name,), operator="IN",
            values=tuple(values), is_attr_ambiguous=entry.is_ambiguous,
            is_value_ambiguous=ambiguous,
            value_phrases=tuple(phrase_candidates) if ambiguous else ()))

    # (b) compare edges anchored to a quantitative attribute
    coverage = _coverage_groups(parsed, attr_map)
    compare_targets: dict[int, list[int]] = {}
    anchors: dict[int, int] = {}
    for edge in parsed.relations:
        if edge.label == "compare":
            compare_targets.setdefault(edge.head, []).append(edge.dependent)
        elif edge.label == "mod":
            anchors.setdefault(edge.head, edge.dependent)
    for head in sorted(compare_targets):
        operator = _comparator_operator(parsed, head, config)
        numbers = [parsed.tokens[dep].numeric_value
                   for dep in compare_targets[head]]
        numbers = [n for n in numbers if n is not None]
        anchor = anchors.get(head)
        group = coverage.get(anchor, ()) if anchor is not None else ()
        quantitative = [name for name in group
                        if profile.attributes[name].attr_type == Q]
        if operator is None or not numbers or not quantitative:
            if debug_dropped is not None:
                debug_dropped.append({
                    "reason": "compare edge without quantitative anchor",
                    "comparator": parsed.tokens[head].text,
                    "values": [str(n) for n in numbers]})
            continue
        if operator == "RANGE":
            if len(numbers) < 2:
                if debug_dropped is not None:
                    debug_dropped.append({
                        "reason": "range comparator with a single bound",
                        "comparator": parsed.tokens[head].text})
                continue
            values = tuple(sorted(numbers[:2]))
        else:
            values = (numbers[0],)
        instances.append(TaskInstance(
            task=FILTER, attributes=(quantitative[0],), operator=operator,
            values=values, is_attr_ambiguous=len(group) > 1))

    deduped: list[TaskInstance] = []
    seen = set()
    for inst in instances:
        if inst.dedupe_key() in seen:
            continue
        seen.add(inst.dedupe_key())
        deduped.append(inst)
        attr_map[inst.attributes[0]].encode = False
    return deduped


def infer_implicit_tasks(vis_entries, task_map: TaskMap) -> TaskMap:
    """Chart-derived tasks (Table-1 direction) when no base task was stated."""
    if any(task in task_map and task_map[task] for task in BASE_TASKS):
        return task_map
    existing = {inst.dedupe_key() for insts in task_map.values() for inst in insts}
    for entry in vis_entries:
        if not entry.chart_task:
            continue
        inst = TaskInstance(
            task=entry.chart_task, inference_type=IMPLICIT,
            attributes=tuple(entry.task_attributes),
            is_attr_ambiguous=entry.from_ambiguous)
        if inst.dedupe_key() in existing:
            continue
        existing.add(inst.dedupe_key())
        task_map.setdefault(entry.chart_task, []).append(inst)
    # keep filter listed last for stable serialization
    if FILTER in task_map:
        filters = task_map.pop(FILTER)
        task_map[FILTER] = filters
    return task_map
