"""Structural validation of emitted Vega-Lite specs against a profile.

Checks only the supported mark/encoding subset; it is not a full Vega-Lite
schema validator. ``validate_spec`` returns a list of problems (empty means
the spec is structurally sound).
"""

from __future__ import annotations

from .profiling import DatasetProfile

ALLOWED_MARKS = frozenset(
    {"bar", "tick", "line", "area", "point", "arc", "boxplot", "text"})
ALLOWED_CHANNELS = ("x", "y", "color", "size", "column", "row", "theta", "text")
ALLOWED_FIELD_TYPES = frozenset(
    {"quantitative", "nominal", "ordinal", "temporal"})
_FILTER_KEYS = ("oneOf", "gt", "lt", "equal", "range")


def validate_spec(spec: dict, profile: DatasetProfile) -> list[str]:
    problems: list[str] = []
    mark = spec.get("mark")
    if mark not in ALLOWED_MARKS:
        problems.append(f"unsupported mark {mark!r}")

    encoding = spec.get("encoding", {})
    encoded_fields: set[str] = set()
    for channel, definition in encoding.items():
        if channel not in ALLOWED_CHANNELS:
            problems.append(f"unsupported channel {channel!r}")
            continue
        if channel == "theta" and mark != "arc":
            problems.append("theta encoding requires the arc mark")
        if channel == "text" and mark != "text":
            problems.append("text encoding requires the text mark")
        field = definition.get("field")
        ftype = definition.get("type")
        if ftype not in ALLOWED_FIELD_TYPES:
            problems.append(f"channel {channel}: bad type {ftype!r}")
        if field is None:
            if definition.get("aggregate") != "count":
                problems.append(f"channel {channel}: fieldless encoding must be a count")
            continue
        encoded_fields.add(field)
        meta = profile.attributes.get(field)
        if meta is None:
            problems.append(f"channel {channel}: unknown field {field!r}")
        elif meta.vega_type != ftype:
            problems.append(
                f"channel {channel}: field {field!r} is {meta.vega_type}, spec says {ftype}")
        if definition.get("bin") and (meta is None or meta.vega_type != "quantitative"):
            problems.append(f"channel {channel}: bin on non-quantitative field {field!r}")

    if len(encoded_fields) > 3:
        problems.append(f"{len(encoded_fields)} fields encoded; at most 3 allowed")

    for i, transform in enumerate(spec.get("transform", [])):
        predicate = transform.get("filter")
        if not isinstance(predicate, dict):
            problems.append(f"transform {i}: missing filter predicate")
            continue
        field = predicate.get("field")
        if field not in profile.attributes:
            problems.append(f"transform {i}: unknown field {field!r}")
        if field in encoded_fields:
            problems.append(f"transform {i}: filtered field {field!r} is also encoded")
        if not any(key in predicate for key in _FILTER_KEYS):
            problems.append(f"transform {i}: no recognised predicate key")
    return problems
