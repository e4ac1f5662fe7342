"""Leaderboard construction and rendering from score tables.

Rows are ranked competition-style on the primary metric: tied systems
share the smaller rank and are listed alphabetically, and the rank after
an m-way tie at r is r + m.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .techniques import TECHNIQUES

_PRIMARY = {"si": "f1", "tc": "micro_f1"}
_SI_COLUMNS = ("f1", "precision", "recall")


@dataclass(slots=True)
class LeaderboardRow:
    rank: int
    name: str
    scores: dict[str, float]


@dataclass(slots=True)
class Leaderboard:
    task: str
    columns: tuple[str, ...]
    rows: list[LeaderboardRow]

    def to_json(self) -> list[dict]:
        return [
            {"rank": row.rank, "name": row.name, **row.scores} for row in self.rows
        ]

    def to_csv(self) -> str:
        from io import StringIO

        buf = StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["rank", "name", *self.columns])
        for row in self.rows:
            writer.writerow(
                [row.rank, row.name, *(f"{row.scores[c]:.2f}" for c in self.columns)]
            )
        return buf.getvalue()

    def to_markdown(self) -> str:
        headers = ["Rank", "System", *self.columns]
        lines = [
            "| " + " | ".join(headers) + " |",
            "|" + "|".join("---" for _ in headers) + "|",
        ]
        for row in self.rows:
            cells = [str(row.rank), row.name]
            cells += [f"{row.scores[c]:.2f}" for c in self.columns]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"


def build_leaderboard(task: str, entries: list[dict]) -> Leaderboard:
    """Rank score entries. Each entry maps 'name' plus metric columns."""
    if task not in _PRIMARY:
        raise ValueError(f"task must be 'si' or 'tc', got {task!r}")
    primary = _PRIMARY[task]
    if task == "si":
        columns = _SI_COLUMNS
    else:
        extra = tuple(
            name for name in TECHNIQUES if entries and name in entries[0]
        )
        columns = ("micro_f1", *extra)
    for entry in entries:
        missing = [c for c in ("name", *columns) if c not in entry]
        if missing:
            raise ValueError(f"entry {entry.get('name')!r} lacks columns {missing}")

    ordered = sorted(entries, key=lambda e: (-e[primary], e["name"]))
    rows: list[LeaderboardRow] = []
    rank = 0
    prev: float | None = None
    for i, entry in enumerate(ordered, start=1):
        if prev is None or entry[primary] != prev:
            rank = i
            prev = entry[primary]
        rows.append(
            LeaderboardRow(
                rank=rank,
                name=entry["name"],
                scores={c: float(entry[c]) for c in columns},
            )
        )
    return Leaderboard(task=task, columns=columns, rows=rows)


def load_scores_csv(path: str | Path, task: str) -> list[dict]:
    """Read a score table: `name,f1,precision,recall` for SI, or
    `name,micro_f1[,<class columns>]` for TC."""
    if task not in _PRIMARY:
        raise ValueError(f"task must be 'si' or 'tc', got {task!r}")
    entries: list[dict] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "name" not in reader.fieldnames:
            raise ParseError(f"{path}: missing header with a 'name' column", line=1)
        for lineno, raw in enumerate(reader, start=2):
            entry: dict = {"name": raw["name"]}
            for key, value in raw.items():
                if key == "name" or value is None:
                    continue
                try:
                    entry[key] = float(value)
                except ValueError:
                    raise ParseError(
                        f"{path}: non-numeric {key}={value!r}", line=lineno
                    ) from None
            entries.append(entry)
    return entries
