"""Country GDP panels: loading, validation, and segment slicing.

Two interchange formats are supported. Long CSV has the header
``country,year,gdp_pc`` with one observation per row; wide CSV has a
``year`` column followed by one column per country code, blank cells
meaning missing years. Cohort (specific-age population) files use
``country,year,population``. All values are UTF-8, comma-separated,
``.`` decimal, no thousands separators.

Series are immutable after construction. Missing years inside a requested
segment are an error, never interpolated: the increment analysis needs
genuine first differences.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path

from inertia.errors import (
    DuplicateObservationError,
    EmptyDatasetError,
    GapInSegmentError,
    MalformedHeaderError,
    MissingFileError,
    RaggedRowError,
    SegmentNotCoveredError,
    UnparsableRowError,
)

LONG_HEADER = ["country", "year", "gdp_pc"]
COHORT_HEADER = ["country", "year", "population"]


@dataclass(frozen=True, order=True)
class CountryId:
    """Short uppercase country code plus an optional display name."""

    code: str
    display_name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.code:
            raise ValueError("country code must be non-empty")

    @property
    def label(self):
        return self.display_name or self.code


@dataclass(frozen=True)
class GdpSeries:
    """Year-indexed real GDP per capita for one country.

    ``basis`` tags the constant-price PPP convention of the values (for
    example "GK1990" or "EKS2011") and is carried as opaque metadata.
    Years are strictly increasing; values are positive and finite.
    """

    country: CountryId
    basis: str
    years: tuple
    values: tuple

    def __post_init__(self):
        if len(self.years) != len(self.values):
            raise ValueError("years and values must have equal length")
        for a, b in zip(self.years, self.years[1:]):
            if b <= a:
                raise ValueError(f"{self.country.code}: years not strictly "
                                 f"increasing at {b}")
        for y, v in zip(self.years, self.values):
            if not (v > 0 and v == v and v != float("inf")):
                raise ValueError(f"{self.country.code}: non-positive or "
                                 f"non-finite value {v!r} in {y}")

    def __len__(self):
        return len(self.years)

    @property
    def first_year(self):
        return self.years[0]

    @property
    def last_year(self):
        return self.years[-1]

    def observations(self):
        return list(zip(self.years, self.values))

    def value_at(self, year):
        return self.values[self.years.index(year)]


@dataclass(frozen=True)
class CohortSeries:
    """Count of persons of the country-specific age, by year.

    Years must be contiguous over the whole span (the series is consumed as
    log-differences).
    """

    country: CountryId
    years: tuple
    counts: tuple

    def __post_init__(self):
        if len(self.years) != len(self.counts):
            raise ValueError("years and counts must have equal length")
        for a, b in zip(self.years, self.years[1:]):
            if b != a + 1:
                raise ValueError(f"{self.country.code}: cohort years must be "
                                 f"contiguous, gap before {b}")
        for y, c in zip(self.years, self.counts):
            if not c > 0:
                raise ValueError(f"{self.country.code}: non-positive cohort "
                                 f"count in {y}")

    def __len__(self):
        return len(self.years)

    def count_at(self, year):
        return self.counts[year - self.years[0]]

    def covers(self, first, last):
        return self.years[0] <= first and self.years[-1] >= last


@dataclass(frozen=True)
class SegmentSpec:
    """An analysis window: level years plus the increment years inside it.

    Both ranges are inclusive. Increment years must satisfy
    ``first_level_year < y <= last_level_year`` so each increment has both
    its endpoints inside the level window.
    """

    label: str
    level_years: tuple
    increment_years: tuple

    PRE_DEFAULT = ((1870, 1940), (1871, 1940))
    POST_DEFAULT = ((1950, 2011), (1951, 2011))

    def __post_init__(self):
        lv0, lv1 = self.level_years
        in0, in1 = self.increment_years
        if lv1 < lv0 or in1 < in0:
            raise ValueError("year ranges must be non-decreasing")
        if in0 <= lv0 or in1 > lv1:
            raise ValueError("increment years must lie strictly inside "
                             "(first_level_year, last_level_year]")

    @classmethod
    def pre(cls, level_years=None, increment_years=None):
        lv, inc = cls.PRE_DEFAULT
        return cls("PRE", tuple(level_years or lv),
                   tuple(increment_years or inc))

    @classmethod
    def post(cls, level_years=None, increment_years=None):
        lv, inc = cls.POST_DEFAULT
        return cls("POST", tuple(level_years or lv),
                   tuple(increment_years or inc))

    @classmethod
    def custom(cls, level_years, increment_years=None):
        lv0, lv1 = level_years
        if increment_years is None:
            increment_years = (lv0 + 1, lv1)
        return cls("CUSTOM", (lv0, lv1), tuple(increment_years))

    @property
    def n_levels(self):
        return self.level_years[1] - self.level_years[0] + 1

    @property
    def n_increments(self):
        return self.increment_years[1] - self.increment_years[0] + 1


@dataclass(frozen=True)
class Dataset:
    """A collection of GDP series (and optional cohort series) by country."""

    series: dict  # code -> GdpSeries
    cohorts: dict = field(default_factory=dict)  # code -> CohortSeries
    provenance: str = ""

    def countries(self):
        """Country codes in sorted order (the canonical processing order)."""
        return sorted(self.series)

    def get(self, code):
        return self.series[code]

    def __len__(self):
        return len(self.series)

    def restrict(self, codes):
        """Dataset limited to the given country codes."""
        missing = [c for c in codes if c not in self.series]
        if missing:
            raise SegmentNotCoveredError(missing[0], "country not in dataset")
        return Dataset(series={c: self.series[c] for c in codes},
                       cohorts={c: self.cohorts[c] for c in codes
                                if c in self.cohorts},
                       provenance=self.provenance)


def _parse_year(text, line_no):
    try:
        return int(text)
    except ValueError:
        raise UnparsableRowError(line_no, f"bad year {text!r}") from None


def _parse_value(text, line_no, what="gdp_pc"):
    try:
        v = float(text)
    except ValueError:
        raise UnparsableRowError(line_no, f"bad {what} {text!r}") from None
    if not (v > 0) or v != v or v == float("inf"):
        raise UnparsableRowError(line_no, f"{what} must be positive and "
                                          f"finite, got {text!r}")
    return v


def _open_rows(path):
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(str(path))
    with path.open(newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def _build_dataset(per_country, basis, provenance):
    if not per_country:
        raise EmptyDatasetError("no data rows")
    series = {}
    for code in sorted(per_country):
        obs = sorted(per_country[code].items())
        series[code] = GdpSeries(
            country=CountryId(code),
            basis=basis,
            years=tuple(y for y, _ in obs),
            values=tuple(v for _, v in obs),
        )
    return Dataset(series=series, provenance=provenance)


def load_long_csv(path, basis):
    """Load a ``country,year,gdp_pc`` file into a Dataset.

    Country codes are uppercased; duplicate (country, year) rows and empty
    files are errors.
    """
    rows = _open_rows(path)
    if not rows or rows[0] != LONG_HEADER:
        raise MalformedHeaderError(
            f"{path}: expected header {','.join(LONG_HEADER)!r}")
    per_country = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise UnparsableRowError(line_no, f"expected 3 fields, got {len(row)}")
        code = row[0].strip().upper()
        if not code:
            raise UnparsableRowError(line_no, "empty country code")
        year = _parse_year(row[1].strip(), line_no)
        value = _parse_value(row[2].strip(), line_no)
        obs = per_country.setdefault(code, {})
        if year in obs:
            raise DuplicateObservationError(code, year)
        obs[year] = value
    return _build_dataset(per_country, basis, provenance=str(path))


def load_wide_csv(path, basis):
    """Load a ``year,<code>,<code>,...`` matrix file into a Dataset.

    Blank cells produce no observation; a row with the wrong number of
    cells is an error.
    """
    rows = _open_rows(path)
    if not rows or not rows[0] or rows[0][0] != "year":
        raise MalformedHeaderError(f"{path}: first header cell must be 'year'")
    codes = [c.strip().upper() for c in rows[0][1:]]
    if not codes or any(not c for c in codes):
        raise MalformedHeaderError(f"{path}: empty country column name")
    per_country = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(codes) + 1:
            raise RaggedRowError(line_no, f"expected {len(codes) + 1} cells, "
                                          f"got {len(row)}")
        year = _parse_year(row[0].strip(), line_no)
        for code, cell in zip(codes, row[1:]):
            cell = cell.strip()
            if not cell:
                continue
            value = _parse_value(cell, line_no)
            obs = per_country.setdefault(code, {})
            if year in obs:
                raise DuplicateObservationError(code, year)
            obs[year] = value
    return _build_dataset(per_country, basis, provenance=str(path))


def load_cohort_csv(path):
    """Load a ``country,year,population`` file into CohortSeries by code."""
    rows = _open_rows(path)
    if not rows or rows[0] != COHORT_HEADER:
        raise MalformedHeaderError(
            f"{path}: expected header {','.join(COHORT_HEADER)!r}")
    per_country = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise UnparsableRowError(line_no, f"expected 3 fields, got {len(row)}")
        code = row[0].strip().upper()
        year = _parse_year(row[1].strip(), line_no)
        value = _parse_value(row[2].strip(), line_no, what="population")
        obs = per_country.setdefault(code, {})
        if year in obs:
            raise DuplicateObservationError(code, year)
        obs[year] = value
    if not per_country:
        raise EmptyDatasetError("no data rows")
    cohorts = {}
    for code in sorted(per_country):
        obs = sorted(per_country[code].items())
        cohorts[code] = CohortSeries(
            country=CountryId(code),
            years=tuple(y for y, _ in obs),
            counts=tuple(v for _, v in obs),
        )
    return cohorts


def write_long_csv(dataset, path):
    """Write a Dataset in long form, full precision, countries sorted.

    Values are written with ``repr`` so a reload reproduces them exactly.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(LONG_HEADER)
        for code in dataset.countries():
            s = dataset.get(code)
            for year, value in zip(s.years, s.values):
                writer.writerow([code, year, repr(value)])


def merge_datasets(first, second):
    """Union of two datasets covering different eras of the same panel.

    Observations are merged per country; the same (country, year) appearing
    in both with different values is an error. Series bases must already
    agree (the caller checks; cross-era ratios only make sense in one
    basis). Cohorts are merged with first taking precedence.
    """
    merged = {}
    for code in sorted(set(first.series) | set(second.series)):
        obs = {}
        sample = None
        for ds in (first, second):
            if code not in ds.series:
                continue
            s = ds.get(code)
            sample = sample or s
            for y, v in zip(s.years, s.values):
                if y in obs and obs[y] != v:
                    raise DuplicateObservationError(code, y)
                obs[y] = v
        pairs = sorted(obs.items())
        merged[code] = GdpSeries(country=sample.country, basis=sample.basis,
                                 years=tuple(y for y, _ in pairs),
                                 values=tuple(v for _, v in pairs))
    cohorts = dict(second.cohorts)
    cohorts.update(first.cohorts)
    return Dataset(series=merged, cohorts=cohorts,
                   provenance=f"{first.provenance} + {second.provenance}")


def slice_segment(series, seg):
    """Restrict a series to a segment's level years, gap-checked.

    The segment must be fully covered: a series that starts late or ends
    early raises SegmentNotCoveredError, and an interior hole raises
    GapInSegmentError naming the first missing year.
    """
    first, last = seg.level_years
    if series.first_year > first or series.last_year < last:
        raise SegmentNotCoveredError(
            series.country.code,
            f"has {series.first_year}-{series.last_year}, "
            f"segment needs {first}-{last}")
    have = set(series.years)
    for y in range(first, last + 1):
        if y not in have:
            raise GapInSegmentError(series.country.code, y)
    pairs = [(y, v) for y, v in zip(series.years, series.values)
             if first <= y <= last]
    return GdpSeries(country=series.country, basis=series.basis,
                     years=tuple(y for y, _ in pairs),
                     values=tuple(v for _, v in pairs))
