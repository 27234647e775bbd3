import json

import numpy as np
import pytest

from errors import BadEmbeddingIndex, IoFailure, UnboundedEmbedding
from field_kernel import make_base
from fractal import (
    PointCloud,
    default_embeddings,
    diameter,
    export,
    hull_area,
    point_cloud,
    translation_proxy,
)


@pytest.fixture(scope="module")
def cloud(tribonacci):
    return point_cloud(tribonacci, "neg", count=200)


def test_default_embeddings(tribonacci, cubic):
    # real roots first, then the complex pair ordered by imaginary part
    assert default_embeddings(tribonacci) == (2,)
    assert default_embeddings(cubic) == (0, 1)


def test_cloud_is_bounded(cloud, tribonacci):
    assert len(cloud) == 200
    assert cloud.source == "neg_base"
    assert cloud.embeddings == (2,)
    # |conjugate| = beta^(-1/2) for the Tribonacci number
    modulus = float(tribonacci.beta) ** -0.5
    assert cloud.bound == pytest.approx(1 / (1 - modulus), rel=1e-9)
    assert np.all(np.abs(cloud.points) <= cloud.bound)


def test_zero_embeds_to_origin(cloud):
    # points are sorted by absolute value, so 0 comes first
    np.testing.assert_allclose(cloud.points[0], [0.0, 0.0])


def test_positive_cloud(tribonacci, cubic):
    pos = point_cloud(tribonacci, "pos", count=50)
    assert pos.source == "pos_base"
    assert len(pos) == 50
    both = point_cloud(tribonacci, "pos", count=50, symmetric=True)
    assert len(both) == 50
    real = point_cloud(cubic, "neg", count=50)
    assert real.embeddings == (0, 1)
    assert np.all(np.abs(real.points) <= real.bound)


def test_embedding_validation():
    ctx = make_base((1, -5, 6))
    with pytest.raises(UnboundedEmbedding):
        point_cloud(ctx, "pos", count=5, embeddings=(0,))
    with pytest.raises(BadEmbeddingIndex):
        point_cloud(ctx, "pos", count=5, embeddings=(1,))
    with pytest.raises(BadEmbeddingIndex):
        point_cloud(ctx, "pos", count=5, embeddings=(4,))


def test_unknown_source(tribonacci):
    with pytest.raises(ValueError):
        point_cloud(tribonacci, "both", count=5)


def test_hull_and_diameter(cloud):
    assert hull_area(cloud) > 0
    assert diameter(cloud) > 0
    tiny = PointCloud(np.array([[0.0, 0.0], [1.0, 0.0]]), "neg_base", 2, 1.0)
    assert hull_area(tiny) == 0.0
    assert diameter(tiny) == pytest.approx(1.0)


def test_translation_proxy(cloud):
    shifted = PointCloud(cloud.points + np.array([5.0, -3.0]), cloud.source, cloud.count, cloud.bound)
    assert translation_proxy(cloud, cloud) == pytest.approx(0.0)
    assert translation_proxy(cloud, shifted) == pytest.approx(0.0, abs=1e-9)
    scaled = PointCloud(cloud.points * 2, cloud.source, cloud.count, cloud.bound)
    assert translation_proxy(cloud, scaled) > 0.01


def test_export_csv(cloud, tmp_path):
    path = export(cloud, "csv", tmp_path / "cloud.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "x,y"
    assert len(lines) == len(cloud) + 1


def test_export_json_and_svg(cloud, tmp_path):
    data = json.loads(export(cloud, "json", tmp_path / "cloud.json").read_text())
    assert len(data) == len(cloud)
    svg = export(cloud, "svg", tmp_path / "cloud.svg").read_text()
    assert svg.startswith("<svg")
    assert svg.count("<circle") == len(cloud)


def test_export_png(cloud, tmp_path):
    path = export(cloud, "png", tmp_path / "cloud.png")
    assert path.stat().st_size > 0


def test_export_errors(cloud, tmp_path):
    with pytest.raises(ValueError):
        export(cloud, "bmp", tmp_path / "cloud.bmp")
    with pytest.raises(IoFailure):
        export(cloud, "csv", tmp_path / "missing" / "cloud.csv")


@pytest.fixture(scope="module")
def tribonacci_pair(tribonacci):
    def pair(count):
        neg = point_cloud(tribonacci, "neg", count=count)
        pos = point_cloud(tribonacci, "pos", count=count, symmetric=True)
        return neg, pos

    return pair


@pytest.mark.slow
def test_tribonacci_clouds_agree_up_to_translation(tribonacci_pair):
    small = translation_proxy(*tribonacci_pair(1000))
    large = translation_proxy(*tribonacci_pair(10000))
    assert large < 0.01
    assert large < small


@pytest.mark.slow
def test_cubic_clouds_do_not_agree(tribonacci_pair, cubic):
    # measured at 3000 points: 0.0081 for Tribonacci, 0.0487 for the cubic
    reference = translation_proxy(*tribonacci_pair(3000))
    neg = point_cloud(cubic, "neg", count=3000)
    pos = point_cloud(cubic, "pos", count=3000, symmetric=True)
    assert translation_proxy(neg, pos) >= 5 * reference


@pytest.mark.slow
def test_hull_area_grows_with_count(tribonacci_pair):
    small_neg, small_pos = tribonacci_pair(1000)
    large_neg, large_pos = tribonacci_pair(10000)
    # the first 1000 integers are a subset of the first 10000
    assert hull_area(large_neg) >= hull_area(small_neg) - 1e-9
    assert hull_area(large_pos) >= hull_area(small_pos) - 1e-9
    assert hull_area(large_neg) <= np.pi * large_neg.bound**2
