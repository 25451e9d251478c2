#!/usr/bin/env python3
"""Regenerate the bundled WordNet subset under src/nl2vis/resources/wordnet.

The subset is a hand-curated hypernym taxonomy covering the vocabulary of the
bundled fixture datasets (movies, cars, housing, olympics) plus the upper
scaffolding needed for sensible Wu-Palmer depths. Files are emitted in the
Princeton database format (data.noun/index.noun style) with genuine byte
offsets, so a full WordNet ``dict`` directory is interchangeable.

Curation rule: two single-word lemmas land within one synset, or in a
parent/child pair, only when treating them as near-synonyms is desirable for
attribute matching (e.g. home~house, car=automobile, film=movie). Unrelated
fixture vocabulary is kept on branches distant enough that Wu-Palmer stays
below the 0.8 matching threshold.
"""

from __future__ import annotations

import sys
from collections import defaultdict
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "nl2vis" / "resources" / "wordnet"

# (key, space-separated lemmas, space-separated parent keys)
NOUNS = [
    ("entity", "entity", ""),
    ("physical_entity", "physical_entity", "entity"),
    ("abstraction", "abstraction abstract_entity", "entity"),
    # physical branch
    ("object", "object physical_object", "physical_entity"),
    ("whole", "whole unit", "object"),
    ("artifact", "artifact artefact", "whole"),
    ("structure", "structure construction", "artifact"),
    ("building", "building edifice", "structure"),
    ("housing", "housing lodging living_accommodations", "structure"),
    ("dwelling", "dwelling home abode domicile habitation", "housing"),
    ("house", "house", "dwelling"),
    ("instrumentality", "instrumentality instrumentation", "artifact"),
    ("conveyance", "conveyance transport", "instrumentality"),
    ("vehicle", "vehicle", "conveyance"),
    ("wheeled_vehicle", "wheeled_vehicle", "vehicle"),
    ("self_propelled_vehicle", "self-propelled_vehicle", "wheeled_vehicle"),
    ("motor_vehicle", "motor_vehicle automotive_vehicle", "self_propelled_vehicle"),
    ("car", "car auto automobile machine motorcar", "motor_vehicle"),
    ("truck", "truck motortruck", "motor_vehicle"),
    ("device", "device", "instrumentality"),
    ("living_thing", "living_thing animate_thing", "whole"),
    ("organism", "organism being", "living_thing"),
    ("person", "person individual someone somebody mortal soul", "organism"),
    ("leader", "leader", "person"),
    ("director", "director manager managing_director", "leader"),
    ("contestant", "contestant", "person"),
    ("athlete", "athlete jock", "contestant"),
    ("entertainer", "entertainer", "person"),
    ("performer", "performer performing_artist", "entertainer"),
    ("actor", "actor histrion thespian role_player", "performer"),
    ("location", "location", "object"),
    ("region", "region", "location"),
    ("district", "district territory dominion", "region"),
    ("administrative_district", "administrative_district administrative_division", "district"),
    ("country", "state nation country land commonwealth", "administrative_district"),
    ("city", "city metropolis urban_center", "administrative_district"),
    # abstraction branch
    ("attribute", "attribute", "abstraction"),
    ("property", "property", "attribute"),
    ("physical_property", "physical_property", "property"),
    ("weight", "weight", "physical_property"),
    ("measure", "measure quantity amount", "abstraction"),
    ("definite_quantity", "definite_quantity", "measure"),
    ("number", "number", "definite_quantity"),
    ("integer", "integer whole_number", "number"),
    ("unit_of_measurement", "unit_of_measurement unit", "definite_quantity"),
    ("power_unit", "power_unit", "unit_of_measurement"),
    ("horsepower", "horsepower", "power_unit"),
    ("time_period", "time_period period period_of_time", "measure"),
    ("year", "year twelvemonth yr", "time_period"),
    ("month", "month", "time_period"),
    ("week", "week", "time_period"),
    ("season", "season", "time_period"),
    ("relation", "relation", "abstraction"),
    ("magnitude_relation", "magnitude_relation quantitative_relation", "relation"),
    ("rate", "rate", "magnitude_relation"),
    ("acceleration", "acceleration", "rate"),
    ("speed", "speed velocity", "rate"),
    ("ratio", "ratio", "magnitude_relation"),
    ("mileage", "mileage fuel_consumption_rate", "ratio"),
    ("possession", "possession", "abstraction"),
    ("assets", "assets", "possession"),
    ("fund", "fund monetary_fund", "assets"),
    ("budget", "budget", "fund"),
    ("income", "income", "assets"),
    ("revenue", "gross revenue receipts", "income"),
    ("earnings", "earnings wage salary pay", "income"),
    ("expenditure", "expenditure outgo spending outlay", "possession"),
    ("cost", "cost monetary_value", "expenditure"),
    ("price", "price terms", "cost"),
    ("psychological_feature", "psychological_feature", "abstraction"),
    ("cognition", "cognition knowledge noesis", "psychological_feature"),
    ("concept", "concept conception construct", "cognition"),
    ("category", "category", "concept"),
    ("type", "type", "category"),
    ("kind", "kind sort form variety", "category"),
    ("event", "event", "psychological_feature"),
    ("social_event", "social_event", "event"),
    ("show", "show", "social_event"),
    ("movie", "movie film picture moving_picture motion_picture pic flick", "show"),
    ("act", "act deed human_action human_activity", "event"),
    ("activity", "activity", "act"),
    ("diversion", "diversion recreation", "activity"),
    ("sport", "sport athletics", "diversion"),
    ("game", "game", "diversion"),
    ("communication", "communication", "abstraction"),
    ("name", "name", "communication"),
    ("title", "title", "name"),
    ("symbol", "symbol", "communication"),
    ("award", "award accolade honor laurels", "symbol"),
    ("medal", "medal decoration medallion palm ribbon", "award"),
    ("message", "message content subject_matter substance", "communication"),
    ("statement", "statement", "message"),
    ("judgment", "judgment judgement assessment", "statement"),
    ("evaluation", "evaluation valuation rating", "judgment"),
    ("score", "score grade mark", "evaluation"),
    ("expressive_style", "expressive_style style", "communication"),
    ("genre", "genre writing_style literary_genre", "expressive_style"),
    ("group", "group grouping", "abstraction"),
    ("social_group", "social_group", "group"),
    ("organization", "organization organisation", "social_group"),
    ("company", "company", "organization"),
    ("institution", "institution establishment", "organization"),
    ("school", "school", "institution"),
]

VERBS = [
    ("v_act", "act move", ""),
    ("v_make", "make create produce", "v_act"),
    ("v_change", "change alter modify", "v_act"),
    ("v_increase", "increase grow", "v_change"),
    ("v_decrease", "decrease diminish lessen", "v_change"),
    ("v_communicate", "communicate intercommunicate", "v_act"),
    ("v_show", "show demo exhibit present demonstrate", "v_communicate"),
    ("v_get", "get acquire", ""),
    ("v_earn", "earn gain take_in clear gross", "v_get"),
    ("v_think", "think cogitate", ""),
    ("v_compare", "compare", "v_think"),
    ("v_relate", "relate associate link colligate connect correlate", "v_think"),
]

HEADER = (
    "  1 This file is part of the trimmed lexical subset bundled with nl2vis.\n"
    "  2 It follows the Princeton WordNet database file format; a full WordNet\n"
    "  3 dict directory may be used in its place via the wordnetPath setting.\n"
)


def build_pos(table, pos: str, lex_filenum: str):
    """Render (data_text, index_text) for one part of speech."""
    keys = [key for key, _, _ in table]
    lemmas = {key: row.split() for key, row, _ in table}
    parents = {key: (row.split() if row else []) for key, _, row in table}
    children = defaultdict(list)
    for key in keys:
        for parent in parents[key]:
            children[parent].append(key)

    def line_body(key: str, offsets: dict[str, str]) -> str:
        words = " ".join(f"{lemma} 0" for lemma in lemmas[key])
        ptrs = [f"@ {offsets[p]} {pos} 0000" for p in parents[key]]
        ptrs += [f"~ {offsets[c]} {pos} 0000" for c in children[key]]
        ptr_part = f"{len(ptrs):03d}" + ("" if not ptrs else " " + " ".join(ptrs))
        gloss = f"bundled subset sense of '{lemmas[key][0].replace('_', ' ')}'"
        return (f"{{off}} {lex_filenum} {pos} {len(lemmas[key]):02x} {words} "
                f"{ptr_part} | {gloss}\n")

    # pass 1: compute line lengths with placeholder offsets (offsets are
    # fixed-width, so lengths are final)
    placeholder = {key: "00000000" for key in keys}
    offsets: dict[str, str] = {}
    cursor = len(HEADER.encode())
    for key in keys:
        offsets[key] = f"{cursor:08d}"
        body = line_body(key, placeholder).format(off="00000000")
        cursor += len(body.encode())

    data_text = HEADER + "".join(
        line_body(key, offsets).format(off=offsets[key]) for key in keys)

    by_lemma: dict[str, list[str]] = defaultdict(list)
    for key in keys:
        for lemma in lemmas[key]:
            by_lemma[lemma].append(offsets[key])
    index_lines = []
    for lemma in sorted(by_lemma):
        offs = by_lemma[lemma]
        index_lines.append(
            f"{lemma} {pos} {len(offs)} 2 @ ~ {len(offs)} 0 {' '.join(offs)}\n")
    return data_text, HEADER + "".join(index_lines)


def main() -> int:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for table, name, pos, lexnum in ((NOUNS, "noun", "n", "03"),
                                     (VERBS, "verb", "v", "29")):
        data_text, index_text = build_pos(table, pos, lexnum)
        (OUT_DIR / f"data.{name}").write_text(data_text, encoding="utf-8")
        (OUT_DIR / f"index.{name}").write_text(index_text, encoding="utf-8")
        print(f"wrote data.{name} ({len(table)} synsets), index.{name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
