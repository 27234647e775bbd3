# fractal.py
# Conjugate embeddings of beta-integers and (-beta)-integers as planar point clouds

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import mpmath
import numpy as np
from scipy.spatial import ConvexHull, QhullError, cKDTree
from scipy.spatial.distance import pdist
from shapely.geometry import MultiPoint

from errors import BadEmbeddingIndex, IoFailure, UnboundedEmbedding
from field_kernel import beta_index, embedding_roots
from integer_sets import enumerate_beta_integers, enumerate_negbeta_integers

logger = logging.getLogger(__name__)

EXPORT_FORMATS = ("csv", "json", "svg", "png")
SVG_SIZE = 800
SVG_RADIUS = 0.5


@dataclass(frozen=True)
class PointCloud:
    """
    Embedded integers as an (n, 2) array.

    Attributes:
        points: Coordinates, one row per integer
        source: pos_base or neg_base
        count: Number of integers embedded
        bound: Bound on the absolute value of each coordinate
        embeddings: Embedding indices used, into field_kernel.embedding_roots
    """

    points: np.ndarray
    source: str
    count: int
    bound: float
    embeddings: tuple = ()

    def __len__(self):
        return len(self.points)

    def centroid(self):
        return self.points.mean(axis=0) if len(self.points) else np.zeros(2)


def default_embeddings(ctx, prec_bits=128):
    """
    Embedding indices giving a plane.

    One complex conjugate when the polynomial has a non-real root, otherwise
    the real roots other than beta (one of them for degree 2).
    """
    roots = embedding_roots(ctx, prec_bits)
    if ctx.poly.degree > 3:
        raise BadEmbeddingIndex(f"degree {ctx.poly.degree} needs explicit embedding indices")
    for i, z in enumerate(roots):
        if isinstance(z, mpmath.mpc) and z.imag > 0:
            return (i,)
    own = beta_index(ctx, prec_bits)
    return tuple(i for i in range(len(roots)) if i != own)[:2]


def _coordinates(values, embeddings, roots):
    # One complex embedding gives (re, im); otherwise the real parts in order
    if len(embeddings) == 1 and isinstance(roots[embeddings[0]], mpmath.mpc):
        z = values[0]
        return float(z.real), float(z.imag)
    coords = [float(mpmath.re(v)) for v in values]
    return (coords[0], coords[1] if len(coords) > 1 else 0.0)


def point_cloud(ctx, which="neg", count=1000, embeddings=None, prec_bits=128, symmetric=False):
    """
    Embed the integers of smallest absolute value with the conjugates of beta.

    Args:
        ctx: BaseContext
        which: neg for the (-beta)-integers, pos for the beta-integers
        count: Number of integers embedded
        embeddings: Embedding indices; chosen by default_embeddings when omitted
        prec_bits: Working precision of the conjugate roots
        symmetric: For pos, embed the integers of both signs

    Returns:
        PointCloud
    """
    roots = embedding_roots(ctx, prec_bits)
    embeddings = tuple(embeddings) if embeddings is not None else default_embeddings(ctx, prec_bits)
    for i in embeddings:
        if not 0 <= i < len(roots):
            raise BadEmbeddingIndex(f"embedding index {i} outside 0..{len(roots) - 1}")
        if i == beta_index(ctx, prec_bits):
            raise BadEmbeddingIndex(f"embedding index {i} is beta itself")
        if abs(roots[i]) >= 1:
            raise UnboundedEmbedding(f"conjugate {mpmath.nstr(roots[i], 8)} of {ctx.poly} has modulus >= 1")

    if which == "neg":
        window = enumerate_negbeta_integers(ctx, count=count)
        sign, digit_max = -1, ctx.alphabet_max
        points = sorted(window.points, key=lambda p: abs(float(p[0])))[:count]
    elif which == "pos":
        window = enumerate_beta_integers(ctx, count=count, symmetric=symmetric)
        sign, digit_max = 1, ctx.positive_alphabet_max
        points = sorted(window.points, key=lambda p: abs(float(p[0])))[:count]
    else:
        raise ValueError(f"unknown source {which!r}")

    mirror = which == "pos"
    rows = []
    with mpmath.workprec(prec_bits):
        bases = [sign * mpmath.mpc(roots[i]) for i in embeddings]
        for value, digits in points:
            images = []
            for base in bases:
                total = mpmath.mpc(0)
                for d in digits:
                    total = total * base + d
                # Mirrored beta-integers reuse the digits of their positive twin
                images.append(-total if mirror and float(value) < 0 else total)
            rows.append(_coordinates(images, embeddings, roots))
        modulus = max((abs(roots[i]) for i in embeddings), default=mpmath.mpf(0))
        bound = float(digit_max / (1 - modulus))

    array = np.array(rows, dtype=float).reshape(-1, 2)
    logger.info("Embedded %d %s-integers of %s", len(array), which, ctx.poly)
    return PointCloud(array, f"{which}_base", len(array), bound, embeddings)


def hull_area(cloud):
    """Area of the convex hull of the cloud."""
    if len(cloud) < 3:
        return 0.0
    return MultiPoint([tuple(p) for p in cloud.points]).convex_hull.area


def diameter(cloud):
    if len(cloud) < 2:
        return 0.0
    try:
        vertices = cloud.points[ConvexHull(cloud.points).vertices]
    except QhullError:
        # Degenerate (collinear) clouds have no 2-d hull
        vertices = cloud.points
    return float(pdist(vertices).max())


def translation_proxy(a, b):
    """
    Distance between two clouds after moving b onto the centroid of a.

    Mean nearest-neighbour distance taken in both directions, relative to the
    diameter of a. Clouds that agree up to a translation give values near 0.

    Args:
        a: PointCloud
        b: PointCloud

    Returns:
        float
    """
    if not len(a) or not len(b):
        raise ValueError("translation proxy needs two non-empty clouds")
    moved = b.points - b.centroid() + a.centroid()
    forward = cKDTree(moved).query(a.points)[0].mean()
    backward = cKDTree(a.points).query(moved)[0].mean()
    size = diameter(a)
    return float((forward + backward) / 2 / size) if size else 0.0


def _svg(cloud):
    bound = cloud.bound or 1.0
    scale = SVG_SIZE / (2 * bound)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">'
    ]
    for x, y in cloud.points:
        cx = (x + bound) * scale
        cy = (bound - y) * scale
        lines.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{SVG_RADIUS}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export(cloud, fmt, path):
    """
    Write the cloud to a file.

    Args:
        cloud: PointCloud
        fmt: csv, json, svg or png
        path: Destination

    Returns:
        Path written
    """
    if fmt not in EXPORT_FORMATS:
        raise ValueError(f"unknown export format {fmt!r}")
    path = Path(path)
    try:
        if fmt == "csv":
            np.savetxt(path, cloud.points, delimiter=",", header="x,y", comments="", fmt="%.17g")
        elif fmt == "json":
            path.write_text(json.dumps([[float(x), float(y)] for x, y in cloud.points]))
        elif fmt == "svg":
            path.write_text(_svg(cloud))
        else:
            from visualization import render_point_cloud

            render_point_cloud(cloud, path)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    logger.info("Wrote %d points to %s", len(cloud), path)
    return path
