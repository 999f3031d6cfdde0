"""Particle catalogs: ingest, unit conversion, and the embedded hadron table.

A record carries exactly one of width (MeV) or lifetime (s) on input; the
other is derived through Gamma * tau = hbar.  Internally everything is
normalized to width, because the embedded reference table is
width-denominated.  E* for a decaying particle is identified with its rest
mass.
"""

import csv
import io
import json
from dataclasses import dataclass, field

from .constants import HBAR_MEV_S

CSV_COLUMNS = ["name", "mass_mev", "width_mev", "lifetime_s",
               "expected_n", "expected_n0"]


class NonPositive(ValueError):
    """Width or lifetime must be strictly positive."""


class ParseError(ValueError):
    def __init__(self, row, column, reason):
        self.row, self.column, self.reason = row, column, reason
        super().__init__(f"row {row}, column {column!r}: {reason}")


class DuplicateName(ValueError):
    """Two records share a name within one catalog."""


class MissingRequiredColumn(ValueError):
    """Input lacks one of the required header columns."""


def width_to_lifetime(width_mev: float, hbar: float = HBAR_MEV_S) -> float:
    """tau = hbar / Gamma, in seconds."""
    if width_mev <= 0:
        raise NonPositive(f"width must be positive, got {width_mev}")
    return hbar / width_mev

def lifetime_to_width(lifetime_s: float, hbar: float = HBAR_MEV_S) -> float:
    """Gamma = hbar / tau, in MeV."""
    if lifetime_s <= 0:
        raise NonPositive(f"lifetime must be positive, got {lifetime_s}")
    return hbar / lifetime_s


@dataclass(frozen=True)
class ParticleRecord:
    """One particle: name, mass, width (normalized), optional expected indices."""

    name: str
    mass_mev: float
    width_mev: float
    expected_n: int = None
    expected_n0: int = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("name must be non-empty")
        if not self.mass_mev > 0:
            raise ValueError(f"mass must be positive, got {self.mass_mev}")
        if not self.width_mev > 0:
            raise NonPositive(f"width must be positive, got {self.width_mev}")

    @property
    def lifetime_s(self) -> float:
        return width_to_lifetime(self.width_mev)

    @classmethod
    def from_raw(cls, name, mass_mev, width_mev=None, lifetime_s=None,
                 expected_n=None, expected_n0=None):
        """Build from raw input holding exactly one of width / lifetime."""
        if (width_mev is None) == (lifetime_s is None):
            raise ValueError("exactly one of width_mev / lifetime_s required")
        if width_mev is None:
            width_mev = lifetime_to_width(lifetime_s)
        return cls(name, mass_mev, width_mev, expected_n, expected_n0)


@dataclass(frozen=True)
class Catalog:
    records: tuple
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        names = [r.name for r in self.records]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise DuplicateName(f"duplicate names: {dup}")

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def _float_cell(row_num, column, text):
    try:
        return float(text)
    except ValueError:
        raise ParseError(row_num, column, f"not a number: {text!r}") from None


def _int_cell(row_num, column, text):
    try:
        return int(text)
    except ValueError:
        raise ParseError(row_num, column, f"not an integer: {text!r}") from None


def _record_from_cells(row_num, cells):
    """Validate one row of name/mass/width/lifetime/expected cells."""
    name = (cells.get("name") or "").strip()
    if not name:
        raise ParseError(row_num, "name", "missing name")
    mass = _float_cell(row_num, "mass_mev", cells.get("mass_mev") or "")
    width_txt = (cells.get("width_mev") or "").strip()
    life_txt = (cells.get("lifetime_s") or "").strip()
    if width_txt and life_txt:
        raise ParseError(row_num, "width_mev",
                         "both width and lifetime given (ambiguous)")
    if not width_txt and not life_txt:
        raise ParseError(row_num, "width_mev", "neither width nor lifetime given")
    width = _float_cell(row_num, "width_mev", width_txt) if width_txt else None
    life = _float_cell(row_num, "lifetime_s", life_txt) if life_txt else None
    en_txt = (cells.get("expected_n") or "").strip()
    en0_txt = (cells.get("expected_n0") or "").strip()
    en = _int_cell(row_num, "expected_n", en_txt) if en_txt else None
    en0 = _int_cell(row_num, "expected_n0", en0_txt) if en0_txt else None
    try:
        return ParticleRecord.from_raw(name, mass, width, life, en, en0)
    except (ValueError, NonPositive) as exc:
        raise ParseError(row_num, "mass_mev", str(exc)) from None


def parse_catalog(data, fmt: str = "csv", source: str = "") -> Catalog:
    """Strict parse of CSV or JSON catalog data (str or bytes).

    CSV grammar: header line with the documented column names, '#' comment
    lines, empty cell = absent, UTF-8.  JSON: array of objects with the
    same field names.  Invalid rows raise with the row number; nothing is
    silently defaulted.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if fmt == "json":
        try:
            items = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(0, "-", f"invalid JSON: {exc}") from None
        if not isinstance(items, list):
            raise ParseError(0, "-", "JSON catalog must be an array of objects")
        records = []
        for i, obj in enumerate(items, start=1):
            if not isinstance(obj, dict):
                raise ParseError(i, "-", "entry is not an object")
            cells = {c: ("" if obj.get(c) is None else str(obj.get(c)))
                     for c in CSV_COLUMNS}
            records.append(_record_from_cells(i, cells))
        return Catalog(records, source=source)
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [ln for ln in data.splitlines() if not ln.lstrip().startswith("#")]
    reader = csv.reader(io.StringIO("\n".join(lines)))
    rows = [row for row in reader if row]
    if not rows:
        raise MissingRequiredColumn(f"empty input; expected header {CSV_COLUMNS}")
    header = [h.strip() for h in rows[0]]
    for col in ("name", "mass_mev"):
        if col not in header:
            raise MissingRequiredColumn(f"missing required column {col!r}")
    records = []
    for row_num, row in enumerate(rows[1:], start=2):
        cells = dict(zip(header, row))
        records.append(_record_from_cells(row_num, cells))
    return Catalog(records, source=source)


def serialize_catalog(catalog: Catalog, fmt: str = "csv") -> str:
    """Render a catalog so that parse_catalog round-trips it (width-denominated)."""
    if fmt == "json":
        return json.dumps([
            {"name": r.name, "mass_mev": r.mass_mev, "width_mev": r.width_mev,
             "lifetime_s": None, "expected_n": r.expected_n,
             "expected_n0": r.expected_n0}
            for r in catalog], ensure_ascii=False, indent=2)
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(CSV_COLUMNS)
    for r in catalog:
        w.writerow([r.name, repr(r.mass_mev), repr(r.width_mev), "",
                    "" if r.expected_n is None else r.expected_n,
                    "" if r.expected_n0 is None else r.expected_n0])
    return buf.getvalue()


# Reference hadron table: mass (MeV), width (MeV), and the two published
# index columns.  Values are stored verbatim (the Lambda mass included).
_TABLE1 = [
    ("n",                939.0, 7.43e-25, 97, 93),
    ("Λ",               1120.0, 2.5e-12,  54, 52),
    ("B⁰",              5280.0, 4.39e-10, 49, 46),
    ("J/ψ(1S)",         3100.0, 8.8e-2,   19, 18),
    ("χ_c1(1P)",        3510.0, 8.8e-1,   16, 15),
    ("D_s1(2536)±",     2536.0, 4.5,      13, 12),
    ("ψ(4415)",         4415.0, 43.0,     10, 10),
    ("Ξ(1820) D13",     1820.0, 24.0,      9,  9),
    ("Λ(1690) D03",     1690.0, 60.0,      8,  8),
    ("Σ(1750) S11",     1750.0, 110.0,     7,  7),
    ("N(1520) D13",     1520.0, 123.0,     6,  7),
    ("Δ(1232) P33",     1232.0, 120.0,     6,  6),
]


def table1_fixture() -> Catalog:
    """The embedded 12-hadron reference table, widths spanning ~27 decades."""
    return Catalog(
        [ParticleRecord(name, mass, width, n, n0)
         for name, mass, width, n, n0 in _TABLE1],
        source="embedded reference table",
    )
