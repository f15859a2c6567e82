"""Demographic category schemes, count tables, and the operations that
turn raw degree counts into normalized distributions.

Everything here is immutable and side-effect free; analyses layer on top.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import SchemeMismatch, UnknownGroup, ZeroPopulation

DEFAULT_GENDERS = ("Men", "Women")

# The seven federal race/ethnicity reporting categories.
DEFAULT_RACES = (
    "American Indian or Alaska Native",
    "Asian",
    "Black or African American",
    "Hispanic or Latino",
    "Native Hawaiian or Other Pacific Islander",
    "White",
    "Two or more races",
)

EXTRA_RACES = ("Nonresident", "Unknown")


class Cell(NamedTuple):
    gender: str
    race: str

    def label(self) -> str:
        return f"{self.race}, {self.gender}"


Key = Union[Cell, str]


@dataclass(frozen=True)
class CategoryScheme:
    """The active demographic axes: an ordered gender list and race list.

    ``include_nonresident`` / ``include_unknown`` pull the two IPEDS
    residual categories into the race axis for sensitivity analysis;
    by default they are excluded.
    """

    genders: tuple = DEFAULT_GENDERS
    races: tuple = DEFAULT_RACES
    include_nonresident: bool = False
    include_unknown: bool = False

    def __post_init__(self):
        for axis in (self.genders, self.races):
            if len(axis) < 1:
                raise SchemeMismatch("each axis needs at least one category")
            if len(set(axis)) != len(axis):
                raise SchemeMismatch(f"duplicate category labels: {axis}")

    @property
    def race_axis(self) -> tuple:
        extra = []
        if self.include_nonresident:
            extra.append("Nonresident")
        if self.include_unknown:
            extra.append("Unknown")
        return self.races + tuple(extra)

    @property
    def gender_axis(self) -> tuple:
        return self.genders

    def cells(self) -> tuple:
        return tuple(Cell(g, r) for g in self.gender_axis for r in self.race_axis)

    def validate_cell(self, cell: Cell) -> Cell:
        if cell.gender not in self.gender_axis or cell.race not in self.race_axis:
            raise SchemeMismatch(f"cell {cell!r} not in active scheme")
        return cell

    def describe(self) -> str:
        return (
            f"{len(self.gender_axis)} gender x {len(self.race_axis)} race "
            f"({len(self.cells())} cells)"
        )


DEFAULT_SCHEME = CategoryScheme()


@dataclass(frozen=True)
class DegreeRecord:
    """One aggregate observation: counts for a single demographic cell of a
    single institution / year / CIP family / award level."""

    institution_id: str
    year: int
    cip_family: str
    award_level: str
    cell: Cell
    count: int

    def __post_init__(self):
        if self.count < 0:
            raise SchemeMismatch(f"negative count for {self.cell}: {self.count}")


@dataclass(frozen=True)
class CountTable:
    """Counts over an ordered category domain (intersectional cells or one
    axis's labels), zero-filled so every category is present."""

    categories: tuple
    counts: Mapping[Key, int] = field(default_factory=dict)

    def __post_init__(self):
        filled = {c: int(self.counts.get(c, 0)) for c in self.categories}
        unknown = set(self.counts) - set(self.categories)
        if unknown:
            raise SchemeMismatch(f"counts outside domain: {sorted(map(str, unknown))}")
        for c, n in filled.items():
            if n < 0:
                raise SchemeMismatch(f"negative count for {c}: {n}")
        object.__setattr__(self, "counts", filled)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def count_of(self, key: Key) -> int:
        if key not in self.counts:
            raise UnknownGroup(f"unknown category: {key}")
        return self.counts[key]


@dataclass(frozen=True)
class Distribution:
    """Probability vector over the same kind of domain as CountTable."""

    categories: tuple
    probabilities: Mapping[Key, float]

    def __post_init__(self):
        filled = {c: float(self.probabilities.get(c, 0.0)) for c in self.categories}
        for c, p in filled.items():
            if not 0.0 <= p <= 1.0:
                raise SchemeMismatch(f"probability out of [0,1] for {c}: {p}")
        if abs(sum(filled.values()) - 1.0) > 1e-9:
            raise SchemeMismatch(f"probabilities sum to {sum(filled.values())}, not 1")
        object.__setattr__(self, "probabilities", filled)

    def __getitem__(self, key: Key) -> float:
        return self.probabilities[key]


def marginalize(table: CountTable, axis: str) -> CountTable:
    """Collapse an intersectional table onto one axis ("gender" or "race")."""
    if axis not in ("gender", "race"):
        raise UnknownGroup(f"unknown axis: {axis}")
    cells = [c for c in table.categories if isinstance(c, Cell)]
    if len(cells) != len(table.categories):
        raise SchemeMismatch("marginalize needs an intersectional table")
    labels: list = []
    sums: dict = {}
    for cell in cells:
        label = cell.gender if axis == "gender" else cell.race
        if label not in sums:
            labels.append(label)
            sums[label] = 0
        sums[label] += table.counts[cell]
    return CountTable(tuple(labels), sums)


def normalize(table: CountTable) -> Distribution:
    if table.total == 0:
        raise ZeroPopulation("cannot normalize a table with zero total")
    total = table.total
    return Distribution(table.categories, {c: n / total for c, n in table.counts.items()})


@dataclass(frozen=True)
class RecordFilter:
    """Selection over records; None means "any"."""

    institutions: frozenset | None = None
    years: frozenset | None = None
    cip_prefixes: tuple | None = None  # None = all fields
    award_level: str | None = "Bachelors"

    def matches(self, rec: DegreeRecord) -> bool:
        if self.institutions is not None and rec.institution_id not in self.institutions:
            return False
        if self.years is not None and rec.year not in self.years:
            return False
        if self.award_level is not None and rec.award_level != self.award_level:
            return False
        if self.cip_prefixes is not None and not any(
            rec.cip_family.startswith(p) for p in self.cip_prefixes
        ):
            return False
        return True


def aggregate(
    records: Iterable[DegreeRecord],
    flt: RecordFilter | None = None,
    scheme: CategoryScheme = DEFAULT_SCHEME,
) -> CountTable:
    """Sum matching records into an intersectional CountTable."""
    cells = scheme.cells()
    domain = set(cells)
    sums = {c: 0 for c in cells}
    for rec in records:
        if flt is not None and not flt.matches(rec):
            continue
        if rec.cell not in domain:
            # Extras land here when the scheme excludes them; other labels
            # are genuinely foreign.
            if rec.cell.race in EXTRA_RACES and rec.cell.gender in scheme.gender_axis:
                continue
            raise SchemeMismatch(f"record cell {rec.cell!r} not in active scheme")
        sums[rec.cell] += rec.count
    return CountTable(cells, sums)


class Group(NamedTuple):
    """A resolved group descriptor: an intersectional cell or one axis label."""

    kind: str  # "cell" | "gender" | "race"
    cell: Cell | None
    label: str | None

    def describe(self) -> str:
        return self.cell.label() if self.kind == "cell" else self.label


def _match_label(text: str, axis: Sequence[str]) -> str | None:
    for label in axis:
        if text == label:
            return label
    lowered = text.lower()
    hits = [l for l in axis if l.lower().startswith(lowered)]
    return hits[0] if len(hits) == 1 else None


def resolve_group(text: str, scheme: CategoryScheme = DEFAULT_SCHEME) -> Group:
    """Parse a group descriptor: ``"Race,Gender"`` (either order) names a
    cell; a single token names an axis label.  Exact matches win; otherwise
    a unique case-insensitive prefix is accepted ("Hispanic" for
    "Hispanic or Latino")."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) == 1:
        g = _match_label(parts[0], scheme.gender_axis)
        r = _match_label(parts[0], scheme.race_axis)
        if g and not r:
            return Group("gender", None, g)
        if r and not g:
            return Group("race", None, r)
        raise UnknownGroup(f"ambiguous or unknown group: {text!r}")
    if len(parts) == 2:
        for a, b in (parts, parts[::-1]):
            r = _match_label(a, scheme.race_axis)
            g = _match_label(b, scheme.gender_axis)
            if r and g:
                return Group("cell", Cell(g, r), None)
        raise UnknownGroup(f"unknown cell descriptor: {text!r}")
    raise UnknownGroup(f"cannot parse group: {text!r}")


def group_count(table: CountTable, group: Group) -> int:
    """Count for a group in an intersectional table (axis labels via
    marginalization)."""
    if group.kind == "cell":
        return table.count_of(group.cell)
    axis_table = marginalize(table, group.kind)
    return axis_table.count_of(group.label)
