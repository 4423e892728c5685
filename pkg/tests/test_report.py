"""Table emission and SVG rendering contracts."""

import csv
import json
import re

import pytest

from inertia import errors, report, stats


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


# ---------------------------------------------------------------------------
# tables


def test_tabledoc_validates_row_width():
    with pytest.raises(ValueError):
        report.TableDoc("t", ("a", "b"), (("only",),))


def test_emit_empty_table_is_header_only(tmp_path):
    doc = report.TableDoc("empty", ("country", "slope"), ())
    p = report.emit_table(doc, "csv", tmp_path / "empty.csv")
    assert p.read_text(encoding="utf-8") == "country,slope\n"


def test_csv_and_json_carry_identical_values(tmp_path):
    doc = report.TableDoc("vals", ("country", "ratio"),
                          (("CHE", 4.026059732), ("ESP", 22.03448275862069)))
    report.emit_table(doc, "csv", tmp_path / "v.csv")
    report.emit_table(doc, "json", tmp_path / "v.json")
    rows = read_csv(tmp_path / "v.csv")[1:]
    payload = json.loads((tmp_path / "v.json").read_text(encoding="utf-8"))
    assert payload["columns"] == ["country", "ratio"]
    for (code, ratio), jrow in zip(rows, payload["rows"]):
        assert code == jrow[0]
        assert float(ratio) == jrow[1]  # full-precision round trip


def test_round_flag_is_display_only(tmp_path):
    doc = report.TableDoc("r", ("country", "ratio"), (("CHE", 4.026059732),))
    report.emit_table(doc, "csv", tmp_path / "r.csv", round_digits=1)
    assert read_csv(tmp_path / "r.csv")[1] == ["CHE", "4.0"]


def test_unknown_format_rejected(tmp_path):
    doc = report.TableDoc("x", ("a",), (("1",),))
    with pytest.raises(ValueError):
        report.emit_table(doc, "yaml", tmp_path / "x.yaml")


# ---------------------------------------------------------------------------
# scatter


def fit_like(slope, intercept, p=0.005):
    return stats.OlsFit(slope=slope, intercept=intercept, slope_se=0.001,
                        t_stat=slope / 0.001, p_value=p, r_squared=0.5, n=10)


def test_scatter_marker_count(tmp_path):
    pts = [(1.0, 2.0), (2.0, 3.0), (3.0, 2.5), (4.0, 4.0), (5.0, 3.5)]
    p = report.render_scatter(pts, tmp_path / "s.svg")
    text = p.read_text(encoding="utf-8")
    assert text.count("<circle") == 5
    assert text.startswith("<svg ")


def test_scatter_fit_line_matches_equation(tmp_path):
    pts = [(float(x), 10.0 + 0.5 * x + ((-1) ** x) * 2.0) for x in range(12)]
    fit = fit_like(0.75, 8.0)
    p = report.render_scatter(pts, tmp_path / "f.svg", fit=fit)
    text = p.read_text(encoding="utf-8")

    # recover the data->pixel affine map from the two extreme markers,
    # which are independent knowns, then invert the drawn line endpoints
    circles = re.findall(r'<circle cx="([0-9.]+)" cy="([0-9.]+)"', text)
    assert len(circles) == len(pts)
    px = [(float(a), float(b)) for a, b in circles]
    (x0, y0), (x1, y1) = pts[0], pts[-1]
    (cx0, cy0), (cx1, cy1) = px[0], px[-1]
    sx = (cx1 - cx0) / (x1 - x0)
    ys = sorted(set(q[1] for q in pts))
    cys = [c for _, c in px]
    # use two points with distinct y for the vertical scale
    lo = pts.index(next(q for q in pts if q[1] == ys[0]))
    hi = pts.index(next(q for q in pts if q[1] == ys[-1]))
    sy = (px[hi][1] - px[lo][1]) / (pts[hi][1] - pts[lo][1])

    m = re.search(r'<line class="fit" x1="([0-9.]+)" y1="([0-9.]+)" '
                  r'x2="([0-9.]+)" y2="([0-9.]+)"', text)
    assert m
    lx0, ly0, lx1, ly1 = map(float, m.groups())
    for lx, ly in ((lx0, ly0), (lx1, ly1)):
        x = x0 + (lx - cx0) / sx
        y = pts[lo][1] + (ly - px[lo][1]) / sy
        expected_y = fit.intercept + fit.slope * x
        assert abs((y - expected_y) * sy) < 0.5  # within half a pixel


def test_scatter_equation_text(tmp_path):
    pts = [(1000.0 * k, 300.0 + 0.016 * 1000.0 * k) for k in range(8)]
    p = report.render_scatter(pts, tmp_path / "eq.svg",
                              fit=fit_like(0.016, 300.0))
    assert "y = 0.016x + 300.0" in p.read_text(encoding="utf-8")


def test_scatter_empty_input(tmp_path):
    with pytest.raises(errors.EmptyInputError):
        report.render_scatter([], tmp_path / "e.svg")


def test_scatter_deterministic_bytes(tmp_path):
    pts = [(float(x), float(x * x % 7)) for x in range(30)]
    a = report.render_scatter(pts, tmp_path / "a.svg", fit=fit_like(1.0, 0.0))
    b = report.render_scatter(pts, tmp_path / "b.svg", fit=fit_like(1.0, 0.0))
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------------------
# histogram


def test_histogram_single_bar(tmp_path):
    h = stats.histogram([10.0], 200.0)
    p = report.render_histogram(h, tmp_path / "h.svg")
    text = p.read_text(encoding="utf-8")
    assert text.count("<rect") == 2  # background + one bar


def test_histogram_bar_heights_proportional(tmp_path):
    h = stats.histogram([-250.0, -50.0, 10.0, 199.0, 450.0], 200.0)
    p = report.render_histogram(h, tmp_path / "h5.svg")
    text = p.read_text(encoding="utf-8")
    heights = [float(v) for v in
               re.findall(r'<rect x="[0-9.]+" y="[0-9.]+" width="[0-9.]+" '
                          r'height="([0-9.]+)"', text)]
    assert len(heights) == 4
    # bins sorted by index hold counts 1,1,2,1
    assert abs(heights[0] - heights[1]) < 0.02
    assert abs(heights[2] - 2 * heights[0]) < 0.02
    assert abs(heights[3] - heights[0]) < 0.02


def test_histogram_overlay_two_series(tmp_path):
    raw = stats.histogram([100.0, 300.0, 350.0, 500.0], 200.0)
    demeaned = stats.histogram([-212.5, -12.5, 37.5, 187.5], 200.0)
    p = report.render_histogram(raw, tmp_path / "o.svg", overlay=demeaned)
    text = p.read_text(encoding="utf-8")
    assert '<g class="series-0">' in text
    assert '<g class="series-1">' in text
    assert "original" in text and "demeaned" in text


def test_histogram_empty_input(tmp_path):
    h = stats.histogram([], 200.0)
    with pytest.raises(errors.EmptyInputError):
        report.render_histogram(h, tmp_path / "e.svg")
