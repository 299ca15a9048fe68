import numpy as np
import pytest
from lxml import etree

from civd.civd import CIVD
from civd.influence import DensityInfluence, VectorInfluence
from civd.server.artifact import load_artifact, save_artifact
from civd.server.points_io import read_points
from civd.server.svg import SVG_NS, render_svg, site_color
from civd.utils.exceptions import DimensionMismatchError, InputFileError, InvalidPointError, UnsupportedDimensionError


@pytest.fixture(scope="module", params=["vector", "density"])
def civd(request):
    points = np.array([[0.0, 0.0], [1.0, 0.2], [0.1, 1.1], [5.0, 5.0], [5.3, 4.8]])
    if request.param == "vector":
        return CIVD.build(points, VectorInfluence(2, 0.3, t=2, beta=0.45))
    return CIVD.build(points, DensityInfluence(2, 0.2, beta=0.45))


def test_artifact_is_stable(civd, tmp_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    save_artifact(civd, first)
    loaded = load_artifact(first)
    save_artifact(loaded, second)
    assert first.read_bytes() == second.read_bytes()


def test_loaded_diagram_answers_the_same(civd, tmp_path, rng):
    path = tmp_path / "civd.json"
    save_artifact(civd, path)
    loaded = load_artifact(path)
    assert loaded.model.beta == civd.model.beta
    for query in rng.uniform(-1, 7, size=(100, 2)):
        assert loaded.query(query) == civd.query(query)


def test_broken_artifact(tmp_path):
    path = tmp_path / "civd.json"
    path.write_text('{"format_version": 1}')
    with pytest.raises(InputFileError) as excinfo:
        load_artifact(path)
    assert "Cannot read CIVD artifact" in str(excinfo.value)


def test_read_points(tmp_path):
    path = tmp_path / "points.json"
    path.write_text('{"dim": 2, "points": [[0, 1], [2, 3]]}')
    assert read_points(path).tolist() == [[0.0, 1.0], [2.0, 3.0]]
    path.write_text('{"dim": 2, "points": [[0, 1], [2]]}')
    with pytest.raises(InputFileError):
        read_points(path)
    with pytest.raises(InputFileError):
        read_points(tmp_path / "missing.csv")


def test_read_points_rejects_non_finite(tmp_path):
    path = tmp_path / "inf.csv"
    path.write_text("0,0\n1,inf\n")
    with pytest.raises(InvalidPointError) as excinfo:
        read_points(path)
    assert "inf.csv" in str(excinfo.value)
    with pytest.raises(DimensionMismatchError):
        read_points(tmp_path / "inf.csv", dim=3)


def test_svg_cells(civd):
    root = render_svg(civd)
    paths = root.findall(f".//{{{SVG_NS}}}path")
    assert len(paths) == len(civd.cells)
    assert all(path.get("fill-rule") == "evenodd" for path in paths)
    assert len(root.findall(f".//{{{SVG_NS}}}circle")) == 5
    assert etree.tostring(root).startswith(b"<svg")


def test_site_color_ignores_order():
    assert site_color([3, 1, 2]) == site_color([1, 2, 3])
    assert site_color([1]) != site_color([2])


def test_svg_needs_planar_diagram():
    civd = CIVD.build([[0.0], [1.0], [3.0]], DensityInfluence(1, 0.2, beta=0.3))
    with pytest.raises(UnsupportedDimensionError):
        render_svg(civd)
