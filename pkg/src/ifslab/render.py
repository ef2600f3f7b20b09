"""Chaos-game rendering to ASCII PGM images."""

from __future__ import annotations

import numpy as np

from .errors import UnsupportedDimension
from .core import IfsSystem, centroid


def chaos_game(sys: IfsSystem, iters: int, burn_in: int, seed: int):
    """Orbit of the random map x -> f_j(x) with uniform digit choice.

    Returns the (iters - burn_in, d) float array of post-burn-in points.
    """
    if not (iters > burn_in >= 100):
        raise ValueError("need iters > burn_in >= 100")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    digits = rng.integers(0, sys.m, size=iters)
    lam = float(sys.lam)
    P = [[float(v) for v in p] for p in sys.points]
    d = sys.d
    x = [float(v) for v in centroid(sys)]
    out = np.empty((iters - burn_in, d))
    for i in range(iters):
        p = P[digits[i]]
        x = [lam * x[k] + (1 - lam) * p[k] for k in range(d)]
        if i >= burn_in:
            out[i - burn_in] = x
    return out


def bin_to_grid(sys: IfsSystem, pts, resolution: int):
    """Occupancy grid over the bounding box of Omega (True = occupied)."""
    lo, hi = sys.omega.bounding_box()
    lo = np.array([float(v) for v in lo])
    hi = np.array([float(v) for v in hi])
    span = np.where(hi > lo, hi - lo, 1.0)
    idx = np.floor((pts - lo) / span * resolution).astype(np.int64)
    idx = np.clip(idx, 0, resolution - 1)
    grid = np.zeros((resolution, resolution), dtype=bool)
    if sys.d == 1:
        # a 1-D attractor renders as a strip: every row repeats the occupancy
        grid[:, np.unique(idx[:, 0])] = True
    elif sys.d == 2:
        # image rows grow downward; flip the y index so the picture is upright
        grid[resolution - 1 - idx[:, 1], idx[:, 0]] = True
    else:
        raise UnsupportedDimension("rendering is implemented for dim <= 2")
    return grid


def render_attractor(sys: IfsSystem, iters: int, burn_in: int, resolution: int, seed: int):
    """Chaos-game image: occupied cells 0 (black), empty cells 255."""
    pts = chaos_game(sys, iters, burn_in, seed)
    grid = bin_to_grid(sys, pts, resolution)
    return np.where(grid, 0, 255).astype(np.uint8)


def write_pgm(stream, image) -> None:
    """ASCII PGM (magic P2, maxval 255, row-major pixels)."""
    h, w = image.shape
    stream.write(f"P2\n{w} {h}\n255\n")
    for row in image:
        stream.write(" ".join(str(int(v)) for v in row))
        stream.write("\n")
