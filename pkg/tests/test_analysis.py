import random

import pytest

from cohortlens import (
    DEFAULT_SCHEME,
    Cell,
    CountTable,
    cohort_share,
    compare_institutions,
    evenness_series,
    equitability,
    js_distance_report,
    normalize,
    opportunity_gap,
    resolve_group,
    series,
    standard_share,
)
from cohortlens.errors import EmptyCohort, EmptyRange, UnknownInstitution, ZeroPopulation

CELLS = DEFAULT_SCHEME.cells()
HW = resolve_group("Hispanic,Women")
HM = resolve_group("Hispanic,Men")
HISP = resolve_group("Hispanic")


def cell_table(counts):
    return CountTable(CELLS, counts)


class TestShares:
    def test_single_group_table_is_100(self):
        t = cell_table({Cell("Women", "White"): 9})
        assert standard_share(t, resolve_group("White,Women")) == 100.0

    def test_standard_share_zero_population(self):
        with pytest.raises(ZeroPopulation):
            standard_share(cell_table({}), HW)

    def test_standard_shares_partition_sums_to_100(self):
        rng = random.Random(2)
        t = cell_table({c: rng.randrange(1, 40) for c in CELLS})
        total = sum(standard_share(t, resolve_group(f"{c.race},{c.gender}")) for c in CELLS)
        assert total == pytest.approx(100.0, abs=0.1)

    def test_cohort_share_zero_field_count(self):
        field = cell_table({})
        field = cell_table({Cell("Men", "White"): 4})
        allt = cell_table({Cell("Men", "White"): 4, Cell("Women", "Asian"): 10})
        assert cohort_share(field, allt, resolve_group("Asian,Women")) == 0.0

    def test_cohort_share_empty_cohort_reported(self):
        field = cell_table({Cell("Men", "White"): 4})
        allt = cell_table({Cell("Men", "White"): 4})
        with pytest.raises(EmptyCohort):
            cohort_share(field, allt, HW)

    def test_two_university_standard_shares(self, two_universities):
        ds = two_universities
        t1 = ds.table(["INST1"], [2020], "cip11")
        t2 = ds.table(["INST2"], [2020], "cip11")
        assert t1.total == 112 and t2.total == 580
        assert standard_share(t1, HISP) == pytest.approx(90.2, abs=0.05)
        assert standard_share(t1, HW) == pytest.approx(14.3, abs=0.05)
        assert standard_share(t2, HW) == pytest.approx(1.7, abs=0.05)

    def test_two_university_cohort_shares(self, two_universities):
        ds = two_universities
        for inst, group, expected in [
            ("INST1", HISP, 3.2), ("INST2", HISP, 3.4),
            ("INST1", HW, 0.9), ("INST2", HW, 2.7),
            ("INST1", HM, 6.4), ("INST2", HM, 4.3),
        ]:
            ft = ds.table([inst], [2020], "cip11")
            at = ds.table([inst], [2020], "all")
            assert cohort_share(ft, at, group) == pytest.approx(expected, abs=0.05)

    def test_cohort_locality(self):
        # perturbing another group's counts cannot move the target's cohort share
        rng = random.Random(9)
        field = cell_table({c: rng.randrange(1, 30) for c in CELLS})
        allt = cell_table({c: field.counts[c] + rng.randrange(0, 60) for c in CELLS})
        target = resolve_group("Black,Women")
        before = cohort_share(field, allt, target)
        other = Cell("Men", "White")
        bumped_f = dict(field.counts)
        bumped_a = dict(allt.counts)
        bumped_f[other] += 500
        bumped_a[other] += 700
        after = cohort_share(cell_table(bumped_f), cell_table(bumped_a), target)
        assert after == before  # bit-identical
        assert standard_share(cell_table(bumped_f), target) != standard_share(field, target)


class TestSeries:
    def test_constant_data_constant_series(self, tmp_path):
        from cohortlens import ingest_canonical, Dataset
        rows = ["institution_id,year,cip_family,award_level,gender,race,count"]
        for year in range(2015, 2020):
            rows.append(f"I,{year},11,Bachelors,Women,White,10")
            rows.append(f"I,{year},11,Bachelors,Men,White,30")
            rows.append(f"I,{year},24,Bachelors,Women,White,60")
        src = tmp_path / "c.csv"
        src.write_text("\n".join(rows) + "\n")
        ingest_canonical(src, tmp_path / "ds")
        ds = Dataset(tmp_path / "ds")
        pts, warnings = series(ds, "cohort", "Women", range(2015, 2020))
        assert not warnings
        values = {p.value for p in pts}
        assert len(values) == 1
        # women's CS / women's total = 10/70
        assert values.pop() == pytest.approx(100 * 10 / 70)

    def test_missing_years_warned_not_zero_filled(self, national_2021):
        pts, warnings = series(national_2021, "standard", "Hispanic,Men", [2020, 2021])
        assert [p.year for p in pts] == [2021]
        assert any("2020" in w for w in warnings)

    def test_empty_range_rejected(self, national_2021):
        with pytest.raises(EmptyRange):
            series(national_2021, "standard", "Women", [])

    def test_unknown_institution_rejected(self, national_2021):
        with pytest.raises(UnknownInstitution):
            series(national_2021, "standard", "Women", [2021], institutions=["NOPE"])

    def test_standard_declines_while_cohort_flat(self, tmp_path):
        # group A's cohort share constant; group B grows -> A's standard
        # share falls while A's cohort share stays flat
        from cohortlens import ingest_canonical, Dataset
        rows = ["institution_id,year,cip_family,award_level,gender,race,count"]
        for i, year in enumerate(range(2010, 2020)):
            rows.append(f"I,{year},11,Bachelors,Women,White,20")
            rows.append(f"I,{year},24,Bachelors,Women,White,80")
            rows.append(f"I,{year},11,Bachelors,Men,White,{20 + 15 * i}")
            rows.append(f"I,{year},24,Bachelors,Men,White,100")
        src = tmp_path / "c.csv"
        src.write_text("\n".join(rows) + "\n")
        ingest_canonical(src, tmp_path / "ds")
        ds = Dataset(tmp_path / "ds")
        std, _ = series(ds, "standard", "Women", range(2010, 2020))
        coh, _ = series(ds, "cohort", "Women", range(2010, 2020))
        std_values = [p.value for p in std]
        assert all(b < a for a, b in zip(std_values, std_values[1:]))
        # hand-formula oracle for both lenses
        for i, (s, c) in enumerate(zip(std, coh)):
            assert s.value == pytest.approx(100 * 20 / (40 + 15 * i))
            assert c.value == pytest.approx(20.0)
        assert max(p.value for p in coh) - min(p.value for p in coh) == 0.0


class TestOpportunityGap:
    def test_national_2021_hispanic_cells(self, national_2021):
        rows = opportunity_gap(
            national_2021.table(years=[2021], scope="cip11"),
            national_2021.table(years=[2021], scope="all"),
        )
        by_cell = {r.cell: r for r in rows}
        hw = by_cell[Cell("Women", "Hispanic or Latino")]
        hm = by_cell[Cell("Men", "Hispanic or Latino")]
        assert hw.program_share == pytest.approx(2.0, abs=0.1)
        assert hw.university_share == pytest.approx(9.0, abs=0.1)
        assert hw.gap == pytest.approx(-7.0, abs=0.1)
        assert hm.gap == pytest.approx(2.0, abs=0.1)

    def test_sorted_deficit_first_and_gaps_sum_to_zero(self, national_2021):
        rows = opportunity_gap(
            national_2021.table(years=[2021], scope="cip11"),
            national_2021.table(years=[2021], scope="all"),
        )
        gaps = [r.gap for r in rows]
        assert gaps == sorted(gaps)
        assert sum(gaps) == pytest.approx(0.0, abs=0.1)
        assert sum(r.program_share for r in rows) == pytest.approx(100.0, abs=0.1)
        assert sum(r.university_share for r in rows) == pytest.approx(100.0, abs=0.1)

    def test_proportional_tables_zero_gaps(self):
        rng = random.Random(4)
        base = {c: rng.randrange(1, 50) for c in CELLS}
        prog = cell_table(base)
        univ = cell_table({c: 10 * n for c, n in base.items()})
        for r in opportunity_gap(prog, univ):
            assert r.gap == pytest.approx(0.0, abs=1e-9)

    def test_zero_population_rejected(self):
        with pytest.raises(ZeroPopulation):
            opportunity_gap(cell_table({}), cell_table({Cell("Men", "White"): 1}))


class TestEvennessSeries:
    def test_evenness_gender_endpoints(self, evenness_decade):
        pts, _ = evenness_series(evenness_decade, "EV1", "gender", range(2010, 2020))
        by_year = {p.year: p.value for p in pts}
        assert by_year[2010] == pytest.approx(65.0, abs=0.05)
        assert by_year[2019] == pytest.approx(67.2, abs=0.05)

    def test_evenness_race_endpoints(self, evenness_decade):
        pts, _ = evenness_series(evenness_decade, "EV1", "race", range(2010, 2020))
        by_year = {p.year: p.value for p in pts}
        assert by_year[2010] == pytest.approx(36.5, abs=0.05)
        assert by_year[2019] == pytest.approx(67.3, abs=0.05)

    def test_uniform_cohort_is_100(self, tmp_path):
        from cohortlens import ingest_canonical, Dataset
        rows = ["institution_id,year,cip_family,award_level,gender,race,count"]
        for year in (2018, 2019):
            for cell in CELLS:
                rows.append(f"I,{year},11,Bachelors,{cell.gender},{cell.race},5")
        src = tmp_path / "c.csv"
        src.write_text("\n".join(rows) + "\n")
        ingest_canonical(src, tmp_path / "ds")
        ds = Dataset(tmp_path / "ds")
        for axis in ("gender", "race", "intersectional"):
            pts, _ = evenness_series(ds, "I", axis, [2018, 2019])
            assert all(p.value == pytest.approx(100.0, abs=1e-9) for p in pts)

    def test_zero_years_warned(self, evenness_decade):
        pts, warnings = evenness_series(evenness_decade, "EV1", "gender", range(2009, 2020))
        assert 2009 not in {p.year for p in pts}
        assert any("2009" in w for w in warnings)

    def test_cross_module_oracle(self, evenness_decade):
        # values must equal equitability applied to independently aggregated tables
        from cohortlens import marginalize
        pts, _ = evenness_series(evenness_decade, "EV1", "race", range(2010, 2020))
        for p in pts:
            table = marginalize(evenness_decade.table(["EV1"], [p.year], "cip11"), "race")
            assert p.value == 100.0 * equitability(normalize(table), 7)


class TestJsDistanceReport:
    def test_concentrated_outlier_ranks_highest(self, js_five):
        rows, skipped = js_distance_report(js_five, ["NC1", "NC2", "NC3", "NC4", "NC5"], 2020)
        assert not skipped
        assert rows[0].institution_id == "NC5"
        assert all(0.0 <= r.distance <= 0.8326 for r in rows)
        assert rows[-1].institution_id == "NC1"
        assert rows[-1].distance == pytest.approx(0.0, abs=1e-9)

    def test_descending_order(self, js_five):
        rows, _ = js_distance_report(js_five, ["NC1", "NC2", "NC3", "NC4", "NC5"], 2020)
        distances = [r.distance for r in rows]
        assert distances == sorted(distances, reverse=True)

    def test_program_equals_reference_all_zero(self, js_five):
        rows, _ = js_distance_report(js_five, ["NC3"], 2020, "cip11", "cip11")
        assert rows[0].distance == 0.0

    def test_missing_year_skipped_not_fatal(self, js_five):
        rows, skipped = js_distance_report(js_five, ["NC1"], 1999)
        assert rows == [] and len(skipped) == 1


class TestCompare:
    def test_table_shape_values(self, two_universities):
        rows = compare_institutions(
            two_universities, ["INST1", "INST2"], 2020,
            [("cohort", "Hispanic"), ("standard", "Hispanic,Women")],
        )
        cohort_rows = [r for r in rows if "% of cohort" in r.metric_label]
        assert {r.institution_id: round(r.value, 1) for r in cohort_rows} == {
            "INST1": 3.2, "INST2": 3.4}
        std_rows = [r for r in rows if "% of program" in r.metric_label]
        assert {r.institution_id: round(r.value, 1) for r in std_rows} == {
            "INST1": 14.3, "INST2": 1.7}

    def test_identical_institutions_identical_rows(self, two_universities):
        rows = compare_institutions(
            two_universities, ["INST1", "INST1"], 2020, [("cohort", "Hispanic")]
        )
        assert rows[0].value == rows[1].value

    def test_empty_cohort_marker(self, two_universities):
        rows = compare_institutions(
            two_universities, ["INST1"], 2020, [("cohort", "Native Hawaiian")]
        )
        assert rows[0].value is None and rows[0].note == "empty_cohort"
