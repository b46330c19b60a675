import csv
import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from holocorr.loci import Raster, Status, Window, render_parameter_locus, tile_regular_set
from holocorr.plotting import raster_figure, save_raster_png, save_tiling_png
from holocorr.ppm import CSV_HEADER, csv_text, gray_levels, ppm_bytes, read_ppm, write_csv, write_ppm

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def make_raster(status, iterations, max_iter):
    status = np.asarray(status, dtype=np.uint8)
    h, w = status.shape
    return Raster(w, h, Window(0, 1, 0, 1), max_iter, status,
                  np.asarray(iterations, dtype=np.int64),
                  np.zeros((h, w)), np.zeros((h, w)))


@pytest.fixture(scope="module")
def small_render():
    return render_parameter_locus("mgamma", Window(1, 7, -3, 3), 24, 16, 200)


def test_palette_examples():
    r = make_raster([[0, 0, 0, 1]], [[0, 50, 99, 100]], 100)
    assert gray_levels(r).tolist() == [[0, 127, 252, 0]]


@given(st.integers(1, 5000), st.data())
def test_palette_is_floor_formula(max_iter, data):
    its = data.draw(st.lists(st.integers(0, max_iter), min_size=1, max_size=20))
    r = make_raster([[0] * len(its)], [its], max_iter)
    assert gray_levels(r).tolist() == [[(255 * n) // max_iter for n in its]]


def test_zero_max_iter_is_black():
    r = make_raster([[0, 0]], [[0, 0]], 0)
    assert gray_levels(r).tolist() == [[0, 0]]


def test_ppm_header_and_round_trip(tmp_path, small_render):
    data = ppm_bytes(small_render)
    assert data.startswith(b"P6\n24 16\n255\n")
    assert len(data) == len(b"P6\n24 16\n255\n") + 24 * 16 * 3
    path = tmp_path / "t.ppm"
    write_ppm(small_render, path)
    pix = read_ppm(path)
    assert pix.shape == (16, 24, 3)
    assert np.array_equal(pix[:, :, 0], gray_levels(small_render))
    assert np.array_equal(pix[:, :, 0], pix[:, :, 2])


def test_read_ppm_rejects_other_formats(tmp_path):
    p = tmp_path / "x.ppm"
    p.write_bytes(b"P5\n1 1\n255\n\x00")
    with pytest.raises(ValueError):
        read_ppm(p)


def test_csv_matches_ppm(tmp_path, small_render):
    path = tmp_path / "t.csv"
    write_csv(small_render, path)
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert path.read_text().splitlines()[0] == CSV_HEADER
    assert len(rows) == 24 * 16
    levels = gray_levels(small_render)
    for row in rows:
        x, y, n = int(row["x"]), int(row["y"]), int(row["iterations"])
        bounded = row["status"] == "bounded"
        assert bounded == (small_render.status[y, x] == Status.BOUNDED)
        expected = 0 if bounded else (255 * n) // small_render.max_iter
        assert levels[y, x] == expected
        assert complex(float(row["re"]), float(row["im"])) == small_render.centre(y, x)


def test_csv_floats_round_trip(small_render):
    xs = small_render.window.columns(small_render.width)
    text = csv_text(small_render)
    col0 = [float(line.split(",")[2]) for line in text.splitlines()[1:small_render.width + 1]]
    assert col0 == list(xs)


def test_rerender_is_byte_identical(small_render):
    again = render_parameter_locus("mgamma", Window(1, 7, -3, 3), 24, 16, 200, threads=3)
    assert ppm_bytes(again) == ppm_bytes(small_render)
    assert csv_text(again) == csv_text(small_render)


def test_png_figures(tmp_path, small_render):
    p = save_raster_png(small_render, tmp_path / "r.png", title="mgamma")
    assert p.read_bytes().startswith(PNG_MAGIC)
    q = save_tiling_png(tile_regular_set(4.5, 1, 40), tmp_path / "t.png", title="tiles")
    assert q.read_bytes().startswith(PNG_MAGIC)
    fig = raster_figure(small_render)
    extent = fig.axes[0].images[0].get_extent()
    assert list(extent) == [1, 7, -3, 3]


def test_png_is_deterministic(tmp_path, small_render):
    a = save_raster_png(small_render, tmp_path / "a.png").read_bytes()
    b = save_raster_png(small_render, tmp_path / "b.png").read_bytes()
    assert a == b
