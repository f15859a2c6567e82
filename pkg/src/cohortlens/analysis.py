"""The four analysis lenses over count tables: standard shares, cohort
shares, opportunity-gap reports, evenness series, and Jensen-Shannon
distance comparisons.

Shares are percentages (0-100) at full precision; display rounding is the
presentation layer's job.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyCohort, EmptyRange, ZeroPopulation
from .metrics import equitability, js_distance
from .scheme import (
    Cell,
    CountTable,
    Group,
    group_count,
    marginalize,
    normalize,
    resolve_group,
)


@dataclass(frozen=True)
class SeriesPoint:
    year: int
    value: float
    group: str
    metric: str  # standard | cohort | evenness | jsdistance


@dataclass(frozen=True)
class GapRow:
    cell: Cell
    program_share: float
    university_share: float

    @property
    def gap(self) -> float:
        return self.program_share - self.university_share


@dataclass(frozen=True)
class ComparisonRow:
    institution_id: str
    metric_label: str
    value: float | None  # None marks an empty cohort
    note: str = ""


@dataclass(frozen=True)
class DistanceRow:
    institution_id: str
    distance: float


def standard_share(field_table: CountTable, group: Group) -> float:
    """A group's degrees in a field as a percentage of all degrees in the
    field (the critiqued baseline)."""
    if field_table.total == 0:
        raise ZeroPopulation("no degrees in the field selection")
    return 100.0 * group_count(field_table, group) / field_table.total


def cohort_share(field_table: CountTable, all_table: CountTable, group: Group) -> float:
    """A group's field degrees as a percentage of that group's degrees
    across all fields (the cohort lens)."""
    cohort_total = group_count(all_table, group)
    if cohort_total == 0:
        raise EmptyCohort(f"group {group.describe()} has no degrees overall")
    return 100.0 * group_count(field_table, group) / cohort_total


def _parse_years(years) -> list:
    ys = sorted(years)
    if not ys:
        raise EmptyRange("empty year range")
    return ys


def series(
    dataset,
    metric: str,
    group_text: str,
    years,
    institutions=None,
    scope: str = "cip11",
    award_level: str = "Bachelors",
):
    """Per-year standard or cohort shares.  Years where the share is
    undefined are omitted and reported in the warnings list."""
    group = resolve_group(group_text, dataset.scheme)
    if institutions is not None:
        dataset.check_institutions(institutions)
    points, warnings = [], []
    for year in _parse_years(years):
        field_table = dataset.table(institutions, [year], scope, award_level)
        try:
            if metric == "standard":
                value = standard_share(field_table, group)
            elif metric == "cohort":
                all_table = dataset.table(institutions, [year], "all", award_level)
                value = cohort_share(field_table, all_table, group)
            else:
                raise EmptyRange(f"unknown series metric: {metric!r}")
        except (ZeroPopulation, EmptyCohort) as e:
            warnings.append(f"{year}: skipped ({e.name})")
            continue
        points.append(SeriesPoint(year, value, group.describe(), metric))
    return points, warnings


def opportunity_gap(program_table: CountTable, university_table: CountTable) -> list:
    """Per-cell program share minus university share, sorted deficit-first."""
    prog = normalize(program_table)
    univ = normalize(university_table)
    rows = [
        GapRow(cell, 100.0 * prog[cell], 100.0 * univ[cell])
        for cell in program_table.categories
    ]
    return sorted(rows, key=lambda r: r.gap)


def _axis_distribution(table: CountTable, axis: str):
    if axis == "intersectional":
        return normalize(table), len(table.categories)
    axis_table = marginalize(table, axis)
    return normalize(axis_table), len(axis_table.categories)


def evenness_series(
    dataset,
    institution: str,
    axis: str,
    years,
    scope: str = "cip11",
    award_level: str = "Bachelors",
):
    """Equitability per year, as percent.  k is the full category count for
    the axis under the active scheme (2 / 7 / 14 by default), so zero-count
    categories depress the score."""
    dataset.check_institutions([institution])
    points, warnings = [], []
    for year in _parse_years(years):
        table = dataset.table([institution], [year], scope, award_level)
        if table.total == 0:
            warnings.append(f"{year}: skipped (zero_population)")
            continue
        dist, k = _axis_distribution(table, axis)
        value = 100.0 * equitability(dist, k)
        points.append(SeriesPoint(year, value, axis, "evenness"))
    return points, warnings


def js_distance_report(
    dataset,
    institutions,
    year: int,
    program_scope: str = "cip11",
    reference_scope: str = "all",
    award_level: str = "Bachelors",
):
    """Per-institution JS distance between the intersectional program
    distribution and the reference distribution, largest first.  Lower
    values mean the program mirrors the reference population more closely.
    Institutions lacking data in either scope are skipped, not fatal."""
    dataset.check_institutions(institutions)
    rows, skipped = [], []
    for inst in institutions:
        program = dataset.table([inst], [year], program_scope, award_level)
        reference = dataset.table([inst], [year], reference_scope, award_level)
        if program.total == 0 or reference.total == 0:
            which = "program" if program.total == 0 else "reference"
            skipped.append(f"{inst}: zero {which} degrees in {year}")
            continue
        rows.append(DistanceRow(inst, js_distance(normalize(program), normalize(reference))))
    rows.sort(key=lambda r: (-r.distance, r.institution_id))
    return rows, skipped


def compare_institutions(
    dataset,
    institutions,
    year: int,
    metric_specs,
    scope: str = "cip11",
    award_level: str = "Bachelors",
):
    """Side-by-side table of (metric, group) values per institution, the
    shape of a two-university comparison.  metric_specs is a list of
    ("standard"|"cohort", group-descriptor) pairs.  Empty cohorts become
    marked rows rather than failures."""
    dataset.check_institutions(institutions)
    rows = []
    for metric, group_text in metric_specs:
        group = resolve_group(group_text, dataset.scheme)
        if metric == "standard":
            label = f"{group.describe()} % of program degrees"
        else:
            label = f"{group.describe()} program degrees as % of cohort degrees"
        for inst in institutions:
            field_table = dataset.table([inst], [year], scope, award_level)
            try:
                if metric == "standard":
                    value = standard_share(field_table, group)
                else:
                    all_table = dataset.table([inst], [year], "all", award_level)
                    value = cohort_share(field_table, all_table, group)
                rows.append(ComparisonRow(inst, label, value))
            except (ZeroPopulation, EmptyCohort) as e:
                rows.append(ComparisonRow(inst, label, None, e.name))
    return rows
