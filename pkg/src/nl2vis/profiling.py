"""Per-attribute metadata inference and developer overrides.

Attribute types follow Vega-Lite's quartet: Q(uantitative), N(ominal),
O(rdinal), T(emporal). Inference is deterministic:

* >= 90% of non-empty cells parse as dates          -> T
* else >= 95% of non-empty cells parse as numbers   -> Q
* else                                              -> N

Ordinal is never inferred automatically; it only arises from
``set_attribute_type``. Date formats: ISO 8601, MM/DD/YYYY, "Mon YYYY",
and bare 4-digit years in [1500, 2100] when the attribute name contains a
calendar word (so an integer "Day" column stays quantitative).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from datetime import datetime
from types import MappingProxyType
from typing import Mapping

from .datasets import Dataset
from .errors import AliasConflictError, TypeCoercionError

Q, N, O, T = "Q", "N", "O", "T"
ATTR_TYPES = (Q, N, O, T)

VEGA_TYPE = {Q: "quantitative", N: "nominal", O: "ordinal", T: "temporal"}

DATE_VOTE_SHARE = 0.90
NUMBER_VOTE_SHARE = 0.95
MAX_INDEXED_VALUE_LEN = 60

_CALENDAR_WORDS = ("year", "date", "month", "day", "time")
_CURRENCY = "$€£"
_BARE_YEAR = re.compile(r"^\d{4}$")
_DATE_FORMATS = ("%Y-%m-%d", "%Y-%m-%dT%H:%M:%S", "%m/%d/%Y", "%b %Y")


def parse_number(raw) -> float | None:
    """Parse a cell as a number; strips currency symbols and thousands commas."""
    if isinstance(raw, bool):
        return None
    if isinstance(raw, (int, float)):
        return float(raw)
    text = str(raw).strip()
    if not text:
        return None
    if text[0] in _CURRENCY:
        text = text[1:]
    text = text.replace(",", "")
    try:
        return float(text)
    except ValueError:
        return None


def parse_date(raw, allow_bare_year: bool) -> datetime | None:
    text = str(raw).strip()
    if not text:
        return None
    if _BARE_YEAR.match(text):
        year = int(text)
        if allow_bare_year and 1500 <= year <= 2100:
            return datetime(year, 1, 1)
        return None
    for fmt in _DATE_FORMATS:
        candidate = text.title() if fmt == "%b %Y" else text
        try:
            return datetime.strptime(candidate, fmt)
        except ValueError:
            continue
    return None


def _has_calendar_word(attribute: str) -> bool:
    lowered = attribute.lower()
    return any(word in lowered for word in _CALENDAR_WORDS)


def _cell_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value).strip()


@dataclass(frozen=True)
class AttributeMetadata:
    name: str
    attr_type: str
    domain: tuple
    aliases: tuple[str, ...] = ()
    type_overridden: bool = False

    @property
    def vega_type(self) -> str:
        return VEGA_TYPE[self.attr_type]


@dataclass(frozen=True)
class DatasetProfile:
    """Immutable snapshot of a dataset plus inferred attribute metadata.

    Override operations return new profiles; instances are safe to share
    across concurrent consumers.
    """

    dataset: Dataset = field(repr=False)
    attributes: dict[str, AttributeMetadata]
    value_index: dict[str, tuple[str, ...]] = field(repr=False)
    warnings: tuple[str, ...] = ()

    @property
    def row_count(self) -> int:
        return self.dataset.row_count

    @property
    def name(self) -> str:
        return self.dataset.name

    def attribute_names(self) -> tuple[str, ...]:
        return self.dataset.columns


def _column_values(dataset: Dataset, attribute: str) -> list[str]:
    return [text for row in dataset.rows if (text := _cell_text(row.get(attribute)))]


def _infer_type(attribute: str, values: list[str]) -> str:
    if not values:
        return N
    bare_year_ok = _has_calendar_word(attribute)
    date_votes = sum(1 for v in values if parse_date(v, bare_year_ok) is not None)
    if date_votes / len(values) >= DATE_VOTE_SHARE:
        return T
    number_votes = sum(1 for v in values if parse_number(v) is not None)
    if number_votes / len(values) >= NUMBER_VOTE_SHARE:
        return Q
    return N


def _compute_domain(attribute: str, attr_type: str, values: list[str],
                    strict: bool) -> tuple:
    """Domain under a given type. strict=True (overrides) rejects any
    non-conforming value with TypeCoercionError."""
    if attr_type == Q:
        numbers = []
        for v in values:
            number = parse_number(v)
            if number is None:
                if strict:
                    raise TypeCoercionError(attribute, Q, v)
                continue
            numbers.append(number)
        return (min(numbers), max(numbers)) if numbers else ()
    if attr_type == T:
        allow_bare = strict or _has_calendar_word(attribute)
        stamps = []
        for v in values:
            stamp = parse_date(v, allow_bare)
            if stamp is None:
                if strict:
                    raise TypeCoercionError(attribute, T, v)
                continue
            stamps.append(stamp)
        if not stamps:
            return ()
        return (min(stamps).date().isoformat(), max(stamps).date().isoformat())
    return tuple(sorted(set(values)))


def _build_value_index(attributes: Mapping[str, AttributeMetadata]) -> dict[str, tuple[str, ...]]:
    index: dict[str, list[str]] = {}
    for meta in attributes.values():
        if meta.attr_type not in (N, O):
            continue
        for value in meta.domain:
            if len(value) > MAX_INDEXED_VALUE_LEN:
                continue  # free-text values poison matching
            index.setdefault(value.lower(), []).append(meta.name)
    return {value: tuple(owners) for value, owners in index.items()}


def infer_metadata(dataset: Dataset) -> DatasetProfile:
    """Profile every column of a non-empty dataset."""
    if not dataset.rows:
        raise ValueError("cannot profile an empty dataset")
    attributes: dict[str, AttributeMetadata] = {}
    warnings = []
    for column in dataset.columns:
        values = _column_values(dataset, column)
        if not values:
            warnings.append(f"attribute {column!r} has no non-empty values; typed N")
        attr_type = _infer_type(column, values)
        domain = _compute_domain(column, attr_type, values, strict=False)
        attributes[column] = AttributeMetadata(column, attr_type, domain)
    return DatasetProfile(
        dataset=dataset,
        attributes=attributes,
        value_index=_build_value_index(attributes),
        warnings=tuple(warnings),
    )


def get_metadata(profile: DatasetProfile) -> Mapping[str, AttributeMetadata]:
    """Read-only view of the attribute metadata map."""
    return MappingProxyType(profile.attributes)


def set_attribute_type(profile: DatasetProfile, attribute: str, new_type: str) -> DatasetProfile:
    """Override an attribute's type; the domain is recomputed strictly."""
    if attribute not in profile.attributes:
        raise KeyError(attribute)
    if new_type not in ATTR_TYPES:
        raise ValueError(f"unknown attribute type {new_type!r}")
    values = _column_values(profile.dataset, attribute)
    domain = _compute_domain(attribute, new_type, values, strict=True)
    meta = replace(profile.attributes[attribute], attr_type=new_type,
                   domain=domain, type_overridden=True)
    attributes = dict(profile.attributes)
    attributes[attribute] = meta
    return DatasetProfile(
        dataset=profile.dataset,
        attributes=attributes,
        value_index=_build_value_index(attributes),
        warnings=profile.warnings,
    )


def set_alias_map(profile: DatasetProfile, alias_map: Mapping[str, list[str]]) -> DatasetProfile:
    """Merge developer-supplied aliases (lowercased, deduplicated)."""
    attributes = dict(profile.attributes)
    lowered_names = {name.lower(): name for name in attributes}
    for attribute, aliases in alias_map.items():
        if attribute not in attributes:
            raise KeyError(attribute)
        merged = list(attributes[attribute].aliases)
        for alias in aliases:
            lowered = alias.strip().lower()
            if not lowered:
                continue
            owner = lowered_names.get(lowered)
            if owner is not None and owner != attribute:
                raise AliasConflictError(
                    f"alias {alias!r} for {attribute!r} collides with attribute {owner!r}")
            if lowered not in merged:
                merged.append(lowered)
        attributes[attribute] = replace(attributes[attribute], aliases=tuple(merged))
    return DatasetProfile(
        dataset=profile.dataset,
        attributes=attributes,
        value_index=profile.value_index,
        warnings=profile.warnings,
    )


def typed_rows(profile: DatasetProfile) -> list[dict]:
    """Rows with cells coerced per attribute type (for inline chart data)."""
    out = []
    for row in profile.dataset.rows:
        typed: dict = {}
        for column, meta in profile.attributes.items():
            text = _cell_text(row.get(column))
            if not text:
                typed[column] = None
            elif meta.attr_type == Q:
                number = parse_number(text)
                if number is None:
                    typed[column] = None
                elif number.is_integer():
                    typed[column] = int(number)
                else:
                    typed[column] = number
            elif meta.attr_type == T:
                stamp = parse_date(text, allow_bare_year=True)
                typed[column] = stamp.date().isoformat() if stamp else text
            else:
                typed[column] = text
        out.append(typed)
    return out
