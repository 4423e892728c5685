"""Loader, validation, and slicing contracts."""

import pytest

from inertia import data, errors


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


# ---------------------------------------------------------------------------
# long CSV


def test_long_single_row(tmp_path):
    p = write(tmp_path, "a.csv", "country,year,gdp_pc\nAUS,1950,7412\n")
    ds = data.load_long_csv(p, "GK1990")
    assert ds.countries() == ["AUS"]
    s = ds.get("AUS")
    assert s.observations() == [(1950, 7412.0)]
    assert s.basis == "GK1990"


def test_long_sorts_and_groups(tmp_path):
    p = write(tmp_path, "a.csv",
              "country,year,gdp_pc\nAUS,1951,7700\nAUT,1950,3706\nAUS,1950,7412\n")
    ds = data.load_long_csv(p, "GK1990")
    assert ds.countries() == ["AUS", "AUT"]
    assert ds.get("AUS").observations() == [(1950, 7412.0), (1951, 7700.0)]


def test_long_lowercase_codes_uppercased(tmp_path):
    p = write(tmp_path, "a.csv", "country,year,gdp_pc\naus,1950,7412\n")
    assert data.load_long_csv(p, "x").countries() == ["AUS"]


def test_long_errors(tmp_path):
    with pytest.raises(errors.MissingFileError):
        data.load_long_csv(tmp_path / "nope.csv", "x")
    p = write(tmp_path, "h.csv", "country,year,gdp\nAUS,1950,7412\n")
    with pytest.raises(errors.MalformedHeaderError):
        data.load_long_csv(p, "x")
    p = write(tmp_path, "r.csv", "country,year,gdp_pc\nAUS,abcd,7412\n")
    with pytest.raises(errors.UnparsableRowError) as ei:
        data.load_long_csv(p, "x")
    assert ei.value.line_no == 2
    p = write(tmp_path, "neg.csv", "country,year,gdp_pc\nAUS,1950,-3\n")
    with pytest.raises(errors.UnparsableRowError):
        data.load_long_csv(p, "x")
    p = write(tmp_path, "d.csv",
              "country,year,gdp_pc\nAUS,1950,7412\nAUS,1950,7413\n")
    with pytest.raises(errors.DuplicateObservationError) as ei:
        data.load_long_csv(p, "x")
    assert (ei.value.country, ei.value.year) == ("AUS", 1950)
    p = write(tmp_path, "e.csv", "country,year,gdp_pc\n")
    with pytest.raises(errors.EmptyDatasetError):
        data.load_long_csv(p, "x")


# ---------------------------------------------------------------------------
# wide CSV


def test_wide_equivalent_to_long(tmp_path):
    wide = write(tmp_path, "w.csv", "year,AUS\n1950,7412\n")
    long = write(tmp_path, "l.csv", "country,year,gdp_pc\nAUS,1950,7412\n")
    a = data.load_wide_csv(wide, "GK1990")
    b = data.load_long_csv(long, "GK1990")
    assert a.countries() == b.countries()
    assert a.get("AUS").observations() == b.get("AUS").observations()
    assert a.get("AUS").basis == b.get("AUS").basis


def test_wide_blank_cells_skipped(tmp_path):
    p = write(tmp_path, "w.csv", "year,AUS,ESP\n1870,3273,\n1871,3300,1200\n")
    ds = data.load_wide_csv(p, "x")
    assert ds.get("ESP").first_year == 1871
    assert ds.get("AUS").observations() == [(1870, 3273.0), (1871, 3300.0)]


def test_wide_errors(tmp_path):
    p = write(tmp_path, "w.csv", "country,AUS\n1870,3273\n")
    with pytest.raises(errors.MalformedHeaderError):
        data.load_wide_csv(p, "x")
    p = write(tmp_path, "rag.csv", "year,AUS,ESP\n1870,3273\n")
    with pytest.raises(errors.RaggedRowError) as ei:
        data.load_wide_csv(p, "x")
    assert ei.value.line_no == 2


def test_bundled_fixture_shapes(pre_dataset, post_dataset):
    assert len(pre_dataset) == 13
    assert len(post_dataset) == 13
    for code in pre_dataset.countries():
        s = pre_dataset.get(code)
        assert s.first_year == 1870 and s.last_year == 1940
        assert len(s) == 71
    for code in post_dataset.countries():
        s = post_dataset.get(code)
        assert s.first_year <= 1950 and s.last_year >= 2011


# ---------------------------------------------------------------------------
# cohort CSV


def test_cohort_loader(tmp_path):
    p = write(tmp_path, "c.csv",
              "country,year,population\nUSA,1950,3500000\nUSA,1951,3600000\n")
    cohorts = data.load_cohort_csv(p)
    assert list(cohorts) == ["USA"]
    assert cohorts["USA"].count_at(1951) == 3600000.0


def test_cohort_requires_contiguous_years(tmp_path):
    p = write(tmp_path, "c.csv",
              "country,year,population\nUSA,1950,100\nUSA,1952,120\n")
    with pytest.raises(ValueError):
        data.load_cohort_csv(p)


# ---------------------------------------------------------------------------
# round trip and merge


def test_long_round_trip(tmp_path, post_dataset):
    out = tmp_path / "rt.csv"
    data.write_long_csv(post_dataset, out)
    again = data.load_long_csv(out, fixture_basis(post_dataset))
    assert again.countries() == post_dataset.countries()
    for code in again.countries():
        assert again.get(code).years == post_dataset.get(code).years
        assert again.get(code).values == post_dataset.get(code).values


def fixture_basis(ds):
    return ds.get(ds.countries()[0]).basis


def test_merge_datasets(pre_dataset, post_dataset):
    panel = data.merge_datasets(pre_dataset, post_dataset)
    s = panel.get("AUS")
    assert s.first_year == 1870 and s.last_year == 2011
    assert len(s) == 71 + 62  # the 1941-1949 war gap stays open


def test_merge_conflict(tmp_path):
    a = data.load_long_csv(
        write(tmp_path, "a.csv", "country,year,gdp_pc\nAUS,1950,7412\n"), "x")
    b = data.load_long_csv(
        write(tmp_path, "b.csv", "country,year,gdp_pc\nAUS,1950,9999\n"), "x")
    with pytest.raises(errors.DuplicateObservationError):
        data.merge_datasets(a, b)


# ---------------------------------------------------------------------------
# segments and slicing


def test_segment_defaults():
    pre = data.SegmentSpec.pre()
    post = data.SegmentSpec.post()
    assert pre.level_years == (1870, 1940)
    assert pre.increment_years == (1871, 1940)
    assert post.level_years == (1950, 2011)
    assert post.increment_years == (1951, 2011)
    assert pre.n_levels == 71 and pre.n_increments == 70
    assert post.n_levels == 62 and post.n_increments == 61


def test_segment_validation():
    with pytest.raises(ValueError):
        data.SegmentSpec("CUSTOM", (1950, 1960), (1950, 1960))  # inc = first level year
    with pytest.raises(ValueError):
        data.SegmentSpec("CUSTOM", (1950, 1960), (1951, 1961))  # inc beyond levels


def test_slice_ranges(pre_dataset, post_dataset, panel):
    s = panel.get("CHE")
    pre = data.slice_segment(s, data.SegmentSpec.pre())
    post = data.slice_segment(s, data.SegmentSpec.post())
    assert len(pre) == 71 and pre.years[0] == 1870 and pre.years[-1] == 1940
    assert len(post) == 62 and post.years[0] == 1950 and post.years[-1] == 2011


def test_slice_idempotent(panel):
    seg = data.SegmentSpec.post()
    once = data.slice_segment(panel.get("USA"), seg)
    twice = data.slice_segment(once, seg)
    assert once.years == twice.years and once.values == twice.values


def test_slice_gap_reports_first_missing_year(tmp_path):
    rows = ["country,year,gdp_pc"]
    for y in range(1870, 1941):
        if y not in (1914, 1915):
            rows.append(f"AUS,{y},{3000 + y - 1870}")
    ds = data.load_long_csv(write(tmp_path, "gap.csv", "\n".join(rows) + "\n"),
                            "x")
    with pytest.raises(errors.GapInSegmentError) as ei:
        data.slice_segment(ds.get("AUS"), data.SegmentSpec.pre())
    assert ei.value.year == 1914
    assert ei.value.country == "AUS"


def test_slice_not_covered(tmp_path):
    ds = data.load_long_csv(
        write(tmp_path, "s.csv",
              "country,year,gdp_pc\nAUS,1950,100\nAUS,1951,101\nAUS,1952,102\n"),
        "x")
    with pytest.raises(errors.SegmentNotCoveredError):
        data.slice_segment(ds.get("AUS"), data.SegmentSpec.post())


def test_restrict_unknown_country(post_dataset):
    with pytest.raises(errors.SegmentNotCoveredError):
        post_dataset.restrict(["AUS", "ZZZ"])
