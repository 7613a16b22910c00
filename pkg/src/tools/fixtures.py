"""
Reference tables of component dimensions, and cell-level diffs against them.

Fixture CSVs hold the published tables verbatim; suspected errata are
annotated in a side-car file (errata.csv) rather than corrected in place.
"""

import csv
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from ..core.config import get_settings
from ..core.errors import CatalogCorrupt
from ..curves.decomp import DecompositionReport, DecompositionTable
from ..curves.genus2 import AutGroupId, catalog_entry

logger = logging.getLogger(__name__)

ERRATA_FILE = "errata.csv"


@dataclass(frozen=True)
class SuspectedErratum:
    published_value: int
    derived_value: int
    note: str = ""


@dataclass(frozen=True)
class FixtureTable:
    group: AutGroupId
    columns: Tuple[int, ...]
    rows: Dict[int, Dict[int, int]]
    errata: Dict[Tuple[int, int], SuspectedErratum] = field(default_factory=dict)

    def cell(self, order: int, n: int) -> int:
        return self.rows.get(order, {}).get(n, 0)

    def annotation(self, order: int, n: int) -> Union[str, SuspectedErratum]:
        return self.errata.get((order, n), "Confirmed")


def _column_index(name: str) -> int:
    if not name.startswith("n:"):
        raise CatalogCorrupt(f"Bad fixture column {name!r}")
    return int(name[2:])


def load_errata(fixtures_dir: Path) -> Dict[str, Dict[Tuple[int, int], SuspectedErratum]]:
    path = fixtures_dir / ERRATA_FILE
    errata: Dict[str, Dict[Tuple[int, int], SuspectedErratum]] = {}
    if not path.exists():
        return errata
    with open(path, newline="") as f:
        for record in csv.DictReader(f):
            key = (int(record["row"]), _column_index(record["cell"]))
            errata.setdefault(record["group"], {})[key] = SuspectedErratum(
                published_value=int(record["published_value"]),
                derived_value=int(record["derived_value"]),
                note=record.get("note", ""),
            )
    return errata


@lru_cache(maxsize=None)
def load_fixture(gid: AutGroupId, fixtures_dir: Path = None) -> Optional[FixtureTable]:
    """
    Load the reference table of a group.

    Returns:
        FixtureTable, or None for groups without a table (no very ample D_H)
    """
    filename = catalog_entry(gid).fixture
    if not filename:
        return None
    fixtures_dir = Path(fixtures_dir) if fixtures_dir else get_settings().fixtures_dir

    with open(fixtures_dir / filename, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if not header or header[0] != "H":
            raise CatalogCorrupt(f"{filename}: header must start with 'H'")
        columns = tuple(_column_index(name) for name in header[1:])
        rows = {}
        for values in reader:
            if not values:
                continue
            cells = [int(v) for v in values]
            rows[cells[0]] = dict(zip(columns, cells[1:]))

    table = FixtureTable(gid, columns, rows, load_errata(fixtures_dir).get(gid.value, {}))
    logger.debug("Loaded fixture %s: %d rows, %d columns", filename, len(rows), len(columns))
    return table


class CellStatus(str, Enum):
    MATCH = "Match"
    MISMATCH = "Mismatch"
    KNOWN_ERRATUM = "KnownErratum"


@dataclass(frozen=True)
class CellDiff:
    order: int
    n: int
    expected: int
    computed: int
    status: CellStatus


@dataclass(frozen=True)
class FixtureDiff:
    group: AutGroupId
    cells: Tuple[CellDiff, ...]

    @property
    def mismatches(self) -> List[CellDiff]:
        return [c for c in self.cells if c.status == CellStatus.MISMATCH]

    @property
    def known_errata(self) -> List[Tuple[AutGroupId, int]]:
        """Distinct (group, row) pairs whose differing cells are all annotated errata"""
        rows = sorted({c.order for c in self.cells if c.status != CellStatus.MATCH})
        return [
            (self.group, order)
            for order in rows
            if all(c.status != CellStatus.MISMATCH for c in self.cells if c.order == order)
        ]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def totals(self, order: int) -> Tuple[int, int]:
        """(expected, computed) row sums"""
        row = [c for c in self.cells if c.order == order]
        return sum(c.expected for c in row), sum(c.computed for c in row)


def diff_against_fixture(computed: Union[DecompositionReport, DecompositionTable],
                         fixture: FixtureTable) -> FixtureDiff:
    """
    Compare computed histograms with a reference table, cell by cell.

    Every cell of the union of fixture columns and computed dimensions is
    visited once per row. A single report is compared against its own row.
    """
    if computed.group != fixture.group:
        raise ValueError(f"Cannot diff {computed.group.value} against the {fixture.group.value} fixture")

    if isinstance(computed, DecompositionReport):
        histograms = {computed.order: computed.histogram}
        orders = [computed.order]
    else:
        histograms = computed.histograms
        orders = sorted(set(fixture.rows) | set(histograms))

    cells = []
    for order in orders:
        got = histograms.get(order, {})
        columns = sorted(set(fixture.columns) | {n for n, count in got.items() if count})
        for n in columns:
            expected = fixture.cell(order, n)
            value = got.get(n, 0)
            status = CellStatus.MATCH
            if value != expected:
                erratum = fixture.errata.get((order, n))
                known = erratum and erratum.published_value == expected and erratum.derived_value == value
                status = CellStatus.KNOWN_ERRATUM if known else CellStatus.MISMATCH
            cells.append(CellDiff(order, n, expected, value, status))
    return FixtureDiff(fixture.group, tuple(cells))
