"""Shared fixtures and independent oracles.

The oracles here avoid the code paths they are used to check: prefix counts
come from direct interval images via the closed-form partial sums, and the
gasket clouds come from explicit base-m digit expansion.
"""

from fractions import Fraction

import numpy as np

from ifslab.core import new_ifs

RIGHT_TRIANGLE = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))
RIGHT_TRIANGLE_EXACT = (
    (Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
)


def unit_system(lam):
    return new_ifs(lam, [(0.0,), (1.0,)])


def triangle_system(lam):
    return new_ifs(lam, RIGHT_TRIANGLE)


def triangle_system_exact(lam):
    return new_ifs(Fraction(lam), RIGHT_TRIANGLE_EXACT)


def count_true_prefixes_1d(lam, points, x, depth):
    """Exhaustive prefix counts for a 1-D system by direct interval images.

    For every word w of each length, the image of [lo, hi] is computed from
    the closed-form partial sum (no inverse maps involved) and x is tested
    against its endpoints.  Returns counts[k] for k = 0..depth.
    """
    m = len(points)
    lo = min(p[0] for p in points)
    hi = max(p[0] for p in points)
    counts = [1]
    words = [((), 0.0)]  # (word, translation sum(1-lam)*lam^(k-1)*p)
    for dep in range(1, depth + 1):
        nxt = []
        hits = 0
        for w, t in words:
            for j in range(m):
                t2 = t + (1 - lam) * lam ** (dep - 1) * points[j][0]
                a = lam**dep * lo + t2
                b = lam**dep * hi + t2
                if a <= x <= b:
                    hits += 1
                    nxt.append((w + (j,), t2))
        counts.append(hits)
        words = nxt
    return counts


def gasket_corner_cloud(k):
    """All depth-k corner points f_w(p_0) of the lam=1/2 right-triangle gasket.

    These are the dyadic translations t_w, pairwise distinct, exactly 3^k of
    them, each the lower-left corner of its own 2^-k mesh cell.
    """
    pts = [(0.0, 0.0)]
    anchors = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
    for _ in range(k):
        pts = [
            (0.5 * x + 0.5 * a, 0.5 * y + 0.5 * b)
            for (x, y) in pts
            for (a, b) in anchors
        ]
    return np.array(sorted(set(pts)))
