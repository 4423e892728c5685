"""Bundled demonstration dataset.

The two CSV snapshots here are synthetic: ``scripts/make_fixture.py``
simulates each of the thirteen OECD economies with the inertial-growth
model and calibrates per-country increment means, dispersions, and trend
slopes to published estimates for 1870-1940 and 1950-2011. They exercise
the full pipeline out of the box but are not the underlying historical
source data; point the CLI at real long/wide CSV files for production use.
"""

from importlib import resources

PRE_WIDE = "gdp_1870_1940_wide.csv"
POST_LONG = "gdp_1950_2011_long.csv"

PRE_BASIS = "GK1990"
POST_BASIS = "GK1990"


def fixture_path(name):
    """Filesystem path of a bundled fixture file."""
    return resources.files(__name__).joinpath(name)
