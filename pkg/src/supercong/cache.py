"""Append-only CSV cache for expensive residue computations.

Columns: quantity,p,r,params,residue. Lookups are exact-match on the
first four columns; the file is human-inspectable and diff-friendly.
"""

from __future__ import annotations

import csv
import os
from pathlib import Path

COLUMNS = ("quantity", "p", "r", "params", "residue")
ENV_VAR = "SUPERCONG_CACHE"

CacheKey = tuple[str, int, int, str]


class ResidueCache:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.rows: dict[CacheKey, int] = {}
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        with self.path.open(newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is not None and tuple(header) != COLUMNS:
                raise ValueError(f"{self.path} is not a residue cache (header {header})")
            for row in reader:
                if len(row) != len(COLUMNS):
                    raise ValueError(f"malformed cache row {row!r} in {self.path}")
                quantity, p, r, params, residue = row
                self.rows[(quantity, int(p), int(r), params)] = int(residue)

    def append(self, new_rows: dict[CacheKey, int]) -> int:
        """Append unseen rows (sorted by key) and fold them in; returns count."""
        fresh = {k: v for k, v in new_rows.items() if k not in self.rows}
        if not fresh:
            return 0
        new_file = not self.path.exists()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            if new_file:
                writer.writerow(COLUMNS)
            for key in sorted(fresh):
                writer.writerow([key[0], key[1], key[2], key[3], fresh[key]])
        self.rows.update(fresh)
        return len(fresh)


def default_cache_path() -> str | None:
    return os.environ.get(ENV_VAR)
