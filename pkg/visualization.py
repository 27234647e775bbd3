# visualization.py
# Matplotlib figures for point clouds and integer windows

import logging

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.collections import LineCollection

from errors import IoFailure

logger = logging.getLogger(__name__)


def plot_point_cloud(cloud, title=None):
    """
    Scatter plot of an embedded point cloud.

    Args:
        cloud: fractal.PointCloud
        title: Title for the plot

    Returns:
        Figure and axis objects
    """
    fig, ax = plt.subplots(figsize=(8, 8))
    if len(cloud):
        ax.scatter(cloud.points[:, 0], cloud.points[:, 1], s=0.5, c="black", linewidths=0)

    # Frame the exact bound so clouds of one base share a scale
    bound = cloud.bound or 1.0
    ax.set_xlim(-bound, bound)
    ax.set_ylim(-bound, bound)
    ax.set_aspect("equal")
    ax.set_title(title or f"{cloud.source}, {cloud.count} points")
    ax.grid(True, alpha=0.3)
    plt.tight_layout()
    return fig, ax


def plot_integer_window(window, title=None):
    """
    Integer window on the real line, each gap coloured by its letter.

    Args:
        window: integer_sets.IntegerWindow
        title: Title for the plot

    Returns:
        Figure and axis objects
    """
    xs = [float(value) for value, _ in window.points]
    letters = sorted(set(window.gap_letters))
    cmap = plt.get_cmap("tab10")
    colour = {letter: cmap(i % 10) for i, letter in enumerate(letters)}

    fig, ax = plt.subplots(figsize=(12, 2.5))
    segments = [[(a, 0), (b, 0)] for a, b in zip(xs, xs[1:])]
    ax.add_collection(LineCollection(segments, colors=[colour[k] for k in window.gap_letters], linewidths=6))
    ax.scatter(xs, [0] * len(xs), s=12, c="black", zorder=3)
    if xs:
        ax.axvline(xs[window.zero_index], color="gray", linestyle="--", alpha=0.5)
        ax.set_xlim(xs[0] - 0.5, xs[-1] + 0.5)
    ax.set_ylim(-1, 1)
    ax.set_yticks([])

    for letter in letters:
        ax.plot([], [], color=colour[letter], linewidth=6, label=str(letter))
    if letters:
        ax.legend(title="letter", loc="upper right", ncol=len(letters), fontsize=8)
    ax.set_title(title or f"{window.sign} integers, {len(xs)} points")
    plt.tight_layout()
    return fig, ax


def _save(fig, path):
    try:
        fig.savefig(path, dpi=150)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    finally:
        plt.close(fig)
    logger.info("Saved figure to %s", path)
    return path


def render_point_cloud(cloud, path, title=None):
    fig, _ = plot_point_cloud(cloud, title)
    return _save(fig, path)


def render_integer_window(window, path, title=None):
    fig, _ = plot_integer_window(window, title)
    return _save(fig, path)
