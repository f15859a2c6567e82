"""On-disk dataset store: ingest raw IPEDS-style completions files or the
canonical long CSV into a dataset directory (records.csv + manifest.json),
then answer filtered record queries over the immutable snapshot.
"""
from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    MalformedRow,
    MissingColumn,
    NegativeCount,
    SchemeMismatch,
    UnknownInstitution,
)
from .scheme import (
    DEFAULT_SCHEME,
    EXTRA_RACES,
    CategoryScheme,
    Cell,
    DegreeRecord,
    RecordFilter,
    aggregate,
)

CANONICAL_HEADER = ["institution_id", "year", "cip_family", "award_level", "gender", "race", "count"]

RECORDS_FILE = "records.csv"
MANIFEST_FILE = "manifest.json"
NAMES_FILE = "names.csv"  # optional institution_id,name lookup

# IPEDS AWLEVEL codes for the levels we care about
AWARD_LEVELS = {
    "3": "Associates",
    "5": "Bachelors",
    "7": "Masters",
    "17": "Doctors",
}

DEFAULT_CIP_PREFIXES = ("11",)


def _sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class IngestOptions:
    award_level: str = "Bachelors"
    include_second_majors: bool = False
    include_nonresident: bool = False
    include_unknown: bool = False
    cip_prefixes: tuple = DEFAULT_CIP_PREFIXES  # the "computing" filter, not an ingest filter

    def scheme(self) -> CategoryScheme:
        return CategoryScheme(
            include_nonresident=self.include_nonresident,
            include_unknown=self.include_unknown,
        )


@dataclass
class ColumnMap:
    """Maps raw source column headers to canonical fields and cells.

    File format, one mapping per line (``#`` comments allowed)::

        UNITID = institution_id
        CIPCODE = cip
        AWLEVEL = award_level
        MAJORNUM = major_number
        CHISPM  = cell: Men | Hispanic or Latino
        CTOTALM = ignore
    """

    fields: dict = field(default_factory=dict)  # canonical field -> raw column
    cells: dict = field(default_factory=dict)  # raw column -> Cell

    REQUIRED_FIELDS = ("institution_id", "cip")

    @classmethod
    def load(cls, path: str | Path) -> "ColumnMap":
        cm = cls()
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise MalformedRow(f"{path}:{lineno}: expected 'RAWCOL = target'")
            raw, target = (s.strip() for s in line.split("=", 1))
            if target.startswith("cell:"):
                parts = [p.strip() for p in target[len("cell:"):].split("|")]
                if len(parts) != 2:
                    raise MalformedRow(f"{path}:{lineno}: cell needs 'gender | race'")
                cm.cells[raw] = Cell(parts[0], parts[1])
            elif target == "ignore":
                pass
            else:
                cm.fields[target] = raw
        return cm

    def validate(self, scheme: CategoryScheme, raw_header: list) -> list:
        """Check required fields and exactly-once cell coverage; return the
        raw columns the map does not account for (reported, never silent)."""
        for f in self.REQUIRED_FIELDS:
            if f not in self.fields:
                raise MissingColumn(f"column map lacks a '{f}' mapping")
        seen: dict = {}
        for raw, cell in self.cells.items():
            if cell in seen:
                raise SchemeMismatch(f"cell {cell!r} mapped twice ({seen[cell]}, {raw})")
            seen[cell] = raw
        for cell in scheme.cells():
            if cell not in seen:
                raise MissingColumn(f"scheme cell {cell!r} has no raw column mapping")
        mapped = set(self.fields.values()) | set(self.cells)
        for raw in self.fields.values():
            if raw not in raw_header:
                raise MissingColumn(f"raw file lacks mapped column {raw!r}")
        for raw in self.cells:
            if raw not in raw_header:
                raise MissingColumn(f"raw file lacks mapped column {raw!r}")
        return [c for c in raw_header if c not in mapped]


@dataclass
class DatasetManifest:
    name: str
    year_min: int | None = None
    year_max: int | None = None
    institutions: int = 0
    scheme: str = DEFAULT_SCHEME.describe()
    sources: dict = field(default_factory=dict)  # digest -> source filename
    options: dict = field(default_factory=dict)
    record_count: int = 0
    digest: str = ""  # sha256 of records.csv

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DatasetManifest":
        return cls(**json.loads(text))


def _read_records(path: Path, scheme: CategoryScheme) -> list:
    records = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != CANONICAL_HEADER:
            raise MissingColumn(
                f"{path}: header must be exactly {','.join(CANONICAL_HEADER)}"
            )
        for lineno, row in enumerate(reader, 2):
            if len(row) != len(CANONICAL_HEADER):
                raise MalformedRow(f"{path}:{lineno}: expected {len(CANONICAL_HEADER)} fields")
            inst, year, cip, award, gender, race, count = row
            try:
                year_i = int(year)
                count_i = int(count)
            except ValueError as e:
                raise MalformedRow(f"{path}:{lineno}: {e}") from None
            if count_i < 0:
                raise NegativeCount(f"{path}:{lineno}: negative count {count_i}")
            if gender not in scheme.gender_axis or (
                race not in scheme.races and race not in EXTRA_RACES
            ):
                raise SchemeMismatch(f"{path}:{lineno}: unknown labels ({gender}, {race})")
            records.append(
                DegreeRecord(inst, year_i, cip, award, Cell(gender, race), count_i)
            )
    return records


def _write_records(path: Path, records: list) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(CANONICAL_HEADER)
        for r in sorted(
            records, key=lambda r: (r.institution_id, r.year, r.cip_family, r.award_level, r.cell)
        ):
            w.writerow(
                [r.institution_id, r.year, r.cip_family, r.award_level, r.cell.gender, r.cell.race, r.count]
            )


def _merge_duplicates(records: list, warnings: list) -> list:
    merged: dict = {}
    for r in records:
        key = (r.institution_id, r.year, r.cip_family, r.award_level, r.cell)
        if key in merged:
            warnings.append(f"duplicate key {key}: counts summed")
            old = merged[key]
            merged[key] = DegreeRecord(*key[:4], key[4], old.count + r.count)
        else:
            merged[key] = r
    return list(merged.values())


class Dataset:
    """An immutable snapshot of one dataset directory."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        manifest_path = self.directory / MANIFEST_FILE
        if not manifest_path.exists():
            raise MissingColumn(f"no manifest in {self.directory}")
        self.manifest = DatasetManifest.from_json(manifest_path.read_text())
        opts = self.manifest.options
        self.scheme = CategoryScheme(
            include_nonresident=opts.get("include_nonresident", False),
            include_unknown=opts.get("include_unknown", False),
        )
        records_path = self.directory / RECORDS_FILE
        actual = _sha256_file(records_path)
        if self.manifest.digest and actual != self.manifest.digest:
            raise MalformedRow(
                f"{records_path}: digest mismatch (manifest {self.manifest.digest[:12]}, "
                f"file {actual[:12]})"
            )
        self.records = tuple(_read_records(records_path, self.scheme))
        self.names = {}
        names_path = self.directory / NAMES_FILE
        if names_path.exists():
            with open(names_path, newline="") as f:
                for row in csv.reader(f):
                    if len(row) >= 2 and row[0] != "institution_id":
                        self.names[row[0]] = row[1]

    @property
    def digest(self) -> str:
        return self.manifest.digest

    def institutions(self) -> list:
        return sorted({r.institution_id for r in self.records})

    def years(self, institution: str | None = None) -> list:
        ys = {r.year for r in self.records if institution is None or r.institution_id == institution}
        return sorted(ys)

    def cip_prefixes(self) -> tuple:
        return tuple(self.manifest.options.get("cip_prefixes", DEFAULT_CIP_PREFIXES))

    def scope_prefixes(self, scope: str) -> tuple | None:
        """Translate a scope name to CIP prefixes; None means all fields."""
        if scope == "all":
            return None
        if scope == "cip11":
            return self.cip_prefixes()
        if scope.startswith("cip:"):
            return tuple(p.strip() for p in scope[len("cip:"):].split("+") if p.strip())
        raise MalformedRow(f"unknown field scope: {scope!r}")

    def check_institutions(self, institutions) -> None:
        known = set(self.institutions())
        for inst in institutions:
            if inst not in known:
                raise UnknownInstitution(f"unknown institution: {inst}")

    def query(
        self,
        institutions=None,
        years=None,
        scope: str = "all",
        award_level: str | None = "Bachelors",
    ) -> list:
        flt = RecordFilter(
            institutions=None if institutions is None else frozenset(institutions),
            years=None if years is None else frozenset(years),
            cip_prefixes=self.scope_prefixes(scope),
            award_level=award_level,
        )
        return [r for r in self.records if flt.matches(r)]

    def table(self, institutions=None, years=None, scope="all", award_level="Bachelors"):
        return aggregate(
            self.query(institutions, years, scope, award_level), scheme=self.scheme
        )


def _update_store(
    dataset_dir: Path,
    name: str,
    new_records: list,
    source_path: Path,
    options: IngestOptions,
    warnings: list,
) -> DatasetManifest:
    dataset_dir.mkdir(parents=True, exist_ok=True)
    manifest_path = dataset_dir / MANIFEST_FILE
    records_path = dataset_dir / RECORDS_FILE
    scheme = options.scheme()

    digest = _sha256_file(source_path)
    if manifest_path.exists():
        manifest = DatasetManifest.from_json(manifest_path.read_text())
        if digest in manifest.sources:
            warnings.append(f"source {source_path.name} already ingested; no-op")
            return manifest
        existing = _read_records(records_path, scheme)
    else:
        manifest = DatasetManifest(
            name=name,
            scheme=scheme.describe(),
            options={
                "award_level": options.award_level,
                "include_second_majors": options.include_second_majors,
                "include_nonresident": options.include_nonresident,
                "include_unknown": options.include_unknown,
                "cip_prefixes": list(options.cip_prefixes),
            },
        )
        existing = []

    merged = _merge_duplicates(existing + new_records, warnings)
    _write_records(records_path, merged)
    manifest.sources[digest] = source_path.name
    manifest.record_count = len(merged)
    years = [r.year for r in merged]
    manifest.year_min = min(years) if years else None
    manifest.year_max = max(years) if years else None
    manifest.institutions = len({r.institution_id for r in merged})
    manifest.digest = _sha256_file(records_path)
    manifest_path.write_text(manifest.to_json())
    return manifest


def ingest_canonical(
    csv_path: str | Path,
    dataset_dir: str | Path,
    name: str | None = None,
    options: IngestOptions | None = None,
    warnings: list | None = None,
) -> DatasetManifest:
    """Ingest a canonical long-format CSV; duplicate keys are summed with a
    warning.  Re-ingesting an already-seen file is a no-op."""
    csv_path = Path(csv_path)
    dataset_dir = Path(dataset_dir)
    options = options or IngestOptions()
    warnings = warnings if warnings is not None else []
    records = _read_records(csv_path, options.scheme())
    return _update_store(
        dataset_dir, name or dataset_dir.name, records, csv_path, options, warnings
    )


def ingest_raw(
    source_path: str | Path,
    column_map: ColumnMap,
    dataset_dir: str | Path,
    year: int,
    name: str | None = None,
    options: IngestOptions | None = None,
    warnings: list | None = None,
) -> DatasetManifest:
    """Ingest a raw IPEDS-style completions file (one row per institution x
    CIP x award level, demographic cells as columns).

    Raw files carry no year column, so the survey year is an argument.
    Keeps first-major rows only unless ``include_second_majors`` is set, and
    only the configured award level.  All-or-nothing: any malformed row
    aborts the whole file.
    """
    source_path = Path(source_path)
    dataset_dir = Path(dataset_dir)
    options = options or IngestOptions()
    warnings = warnings if warnings is not None else []
    scheme = options.scheme()

    with open(source_path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise MissingColumn(f"{source_path}: empty file, no header")
        header = [h.strip() for h in header]
        unmapped = column_map.validate(scheme, header)
        if unmapped:
            warnings.append(f"unmapped raw columns: {', '.join(unmapped)}")
        idx = {col: header.index(col) for col in header}

        records = []
        rows_read = 0
        for lineno, row in enumerate(reader, 2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise MalformedRow(f"{source_path}:{lineno}: expected {len(header)} fields")
            rows_read += 1

            def cellv(col):
                v = row[idx[col]].strip()
                if not v:
                    return 0
                try:
                    n = int(v)
                except ValueError:
                    raise MalformedRow(f"{source_path}:{lineno}: non-integer count {v!r} in {col}") from None
                if n < 0:
                    raise NegativeCount(f"{source_path}:{lineno}: negative count in {col}")
                return n

            if "award_level" in column_map.fields:
                code = row[idx[column_map.fields["award_level"]]].strip()
                level = AWARD_LEVELS.get(code, code)
                if level != options.award_level:
                    continue
            else:
                level = options.award_level
            if "major_number" in column_map.fields and not options.include_second_majors:
                if row[idx[column_map.fields["major_number"]]].strip() not in ("", "1"):
                    continue
            inst = row[idx[column_map.fields["institution_id"]]].strip()
            cip = row[idx[column_map.fields["cip"]]].strip().strip('"').lstrip("=")
            for col, cell in column_map.cells.items():
                n = cellv(col)
                if cell.race in EXTRA_RACES and cell.race not in scheme.race_axis:
                    continue
                if n:
                    records.append(DegreeRecord(inst, year, cip, level, cell, n))
        warnings.append(f"{source_path.name}: {rows_read} rows -> {len(records)} records")

    return _update_store(
        dataset_dir, name or dataset_dir.name, records, source_path, options, warnings
    )
