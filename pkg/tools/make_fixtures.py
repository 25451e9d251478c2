#!/usr/bin/env python3
"""Regenerate the bundled fixture datasets under data/.

Deterministic (seeded) synthetic data. Vocabulary is curated so that fixture
values never collide with the attribute names or query keywords exercised by
the test suites (e.g. no movie title contains "budget" or "action").
"""

from __future__ import annotations

import csv
import random
import sys
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def write_csv(name: str, columns: list[str], rows: list[list]) -> None:
    path = DATA_DIR / name
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def make_movies(rng: random.Random) -> None:
    first = ["Crimson", "Silent", "Midnight", "Scarlet", "Iron", "Velvet",
             "Hollow", "Winter", "Ember", "Azure"]
    second = ["Horizon", "Echo", "Tide", "Empire", "Garden", "Road", "Harbor",
              "Crown", "Signal", "Mirror"]
    suffixes = ["", " II", " III"]
    genres = ["Action", "Adventure", "Comedy", "Drama", "Horror", "Thriller", "Musical"]
    creative = ["Science Fiction", "Fantasy", "Contemporary Fiction",
                "Historical Fiction", "Dramatization"]
    content = ["G", "PG", "PG-13", "R"]
    directors = [f"{i}. {s}" for i in "ABCDEJKLMR"
                 for s in ["Morgan", "Blake", "Reyes", "Novak", "Archer", "Kovac"]]
    rows = []
    for suffix in suffixes:
        for a in first:
            for b in second:
                title = f"{a} {b}{suffix}"
                budget = rng.randrange(200_000, 300_000_000, 50_000)
                gross = int(budget * rng.uniform(0.1, 9.0))
                rows.append([
                    title,
                    gross,
                    budget,
                    rng.randint(1980, 2015),
                    rng.choice(content),
                    round(rng.uniform(1.4, 9.7), 1),
                    rng.randint(5, 100),
                    rng.choice(genres),
                    rng.choice(creative),
                    rng.choice(directors),
                    rng.randint(72, 189),
                ])
    write_csv("movies.csv",
              ["Title", "Worldwide Gross", "Production Budget", "Release Year",
               "Content Rating", "IMDB Rating", "Rotten Tomatoes Rating",
               "Genre", "Creative Type", "Director", "Running Time"],
              rows)


def make_cars(rng: random.Random) -> None:
    models = ["Falcon", "Comet", "Raptor", "Pioneer", "Strada", "Lumen",
              "Vertex", "Nimbus"]
    origins = ["USA", "Europe", "Japan"]
    rows = []
    for model in models:
        for trim in range(25):
            cylinders = rng.choice([3, 4, 4, 4, 5, 6, 6, 8])
            displacement = cylinders * rng.randint(18, 55)
            horsepower = int(displacement * rng.uniform(0.4, 0.8))
            rows.append([
                f"{model} {100 + trim}",
                round(rng.uniform(9.0, 46.5), 1),
                cylinders,
                displacement,
                horsepower,
                rng.randint(1600, 5200),
                round(rng.uniform(8.0, 24.9), 1),
                rng.randint(1970, 1982),
                rng.choice(origins),
            ])
    write_csv("cars.csv",
              ["Model", "MPG", "Cylinders", "Displacement", "Horsepower",
               "Weight", "Acceleration", "Model Year", "Origin"],
              rows)


def make_housing(rng: random.Random) -> None:
    types = ["Condo", "Duplex", "Townhouse", "Single Family"]
    neighborhoods = ["Northside", "Riverton", "Lakeside", "Brookfield", "Summit"]
    base = {"Condo": 190_000, "Duplex": 260_000, "Townhouse": 310_000,
            "Single Family": 380_000}
    rows = []
    for year in range(2006, 2016):
        for _ in range(24):
            house_type = rng.choice(types)
            drift = 1.0 + 0.035 * (year - 2006)
            price = int(base[house_type] * drift * rng.uniform(0.6, 1.6))
            rows.append([
                year,
                price,
                house_type,
                rng.choice(neighborhoods),
                rng.randint(1, 6),
                rng.randint(420, 4200),
            ])
    write_csv("housing.csv",
              ["Year", "Price", "House Type", "Neighborhood", "Bedrooms",
               "Square Feet"],
              rows)


def make_olympics(rng: random.Random) -> None:
    countries = ["United States", "Canada", "Norway", "Germany", "Russia",
                 "Sweden", "Finland", "Switzerland", "Austria", "Netherlands",
                 "China", "Japan", "South Korea", "France", "Italy"]
    sports = ["Ice Hockey", "Hockey", "Figure Skating", "Speed Skating",
              "Curling", "Biathlon", "Alpine Skiing", "Ski Jumping", "Luge"]
    rows = []
    for year in (1992, 1994, 1998, 2002, 2006, 2010, 2014):
        for country in countries:
            for sport in rng.sample(sports, 2):
                bronze = rng.randint(0, 6)
                silver = rng.randint(0, 6)
                gold = rng.randint(0, 6)
                rows.append([country, sport, year, bronze, silver, gold,
                             bronze + silver + gold])
    write_csv("olympics.csv",
              ["Country", "Sport", "Year", "Bronze Medals", "Silver Medals",
               "Gold Medals", "Total Medals"],
              rows)


def main() -> int:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240615)
    make_movies(rng)
    make_cars(rng)
    make_housing(rng)
    make_olympics(rng)
    return 0


if __name__ == "__main__":
    sys.exit(main())
