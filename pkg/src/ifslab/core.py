"""One-parameter similitude families f_j(x) = lam*x + (1-lam)*p_j.

The same code serves two arithmetic paths.  With float inputs everything is
double precision; with ``Fraction`` inputs (lam and every coordinate) all
maps, inverses and membership tests are exact, which is what uniqueness
certification relies on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadProbabilityVector,
    DegenerateAffineHull,
    DigitOutOfRange,
    DuplicatePoints,
    LambdaOutOfRange,
)
from .geometry import Polytope, hull_polytope, is_exact_scalar, is_exact_point


@dataclass(frozen=True)
class IfsSystem:
    lam: object
    points: tuple
    omega: Polytope

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.points[0])

    @property
    def is_exact(self) -> bool:
        return is_exact_scalar(self.lam) and all(is_exact_point(p) for p in self.points)

    def diameter(self) -> float:
        return self.omega.diameter()


def new_ifs(lam, points) -> IfsSystem:
    """Validated system: 0 < lam < 1, distinct points, full affine dimension."""
    if not (0 < lam < 1):
        raise LambdaOutOfRange(f"lambda must lie strictly inside (0,1), got {lam}")
    pts = tuple(tuple(p) for p in points)
    if len(pts) < 2:
        raise DuplicatePoints("need at least two anchor points")
    if len(set(pts)) != len(pts):
        raise DuplicatePoints("anchor points must be pairwise distinct")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DegenerateAffineHull("anchor points of mixed dimension")
    if _affine_rank(pts) != d:
        raise DegenerateAffineHull(
            f"anchor points span affine dimension {_affine_rank(pts)} < {d}; "
            "re-embed them in that dimension"
        )
    return IfsSystem(lam=lam, points=pts, omega=hull_polytope(pts))


def _affine_rank(pts):
    # exact Gaussian elimination on the difference vectors; floats are
    # promoted to exact rationals so the verdict never depends on rounding
    base = [Fraction(v) for v in pts[0]]
    rows = [[Fraction(v) - b for v, b in zip(p, base)] for p in pts[1:]]
    d = len(base)
    rank = 0
    col = 0
    while col < d and rank < len(rows):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _check_digit(sys: IfsSystem, j):
    if not (isinstance(j, int) and 0 <= j < sys.m):
        raise DigitOutOfRange(f"digit {j} not in 0..{sys.m - 1}")


def apply_map(sys: IfsSystem, j: int, x):
    """f_j(x) = lam*x + (1-lam)*p_j."""
    _check_digit(sys, j)
    lam = sys.lam
    p = sys.points[j]
    return tuple(lam * xi + (1 - lam) * pi for xi, pi in zip(x, p))


def apply_inverse(sys: IfsSystem, j: int, x):
    """f_j^{-1}(x) = (x - (1-lam)*p_j) / lam."""
    _check_digit(sys, j)
    lam = sys.lam
    p = sys.points[j]
    return tuple((xi - (1 - lam) * pi) / lam for xi, pi in zip(x, p))


def project_prefix(sys: IfsSystem, w, x0):
    """f_{w_1} o ... o f_{w_n}(x0), composed right to left (innermost digit last)."""
    x = tuple(x0)
    for j in reversed(tuple(w)):
        x = apply_map(sys, j, x)
    return x


def prefix_closed_form(sys: IfsSystem, w, x0):
    """lam^n * x0 + (1-lam) * sum_k lam^(k-1) p_{w_k}; regression oracle for project_prefix."""
    lam = sys.lam
    n = len(w)
    acc = [lam**n * v for v in x0]
    scale = 1 - lam
    for k, j in enumerate(tuple(w)):
        _check_digit(sys, j)
        c = scale * lam**k
        acc = [a + c * pv for a, pv in zip(acc, sys.points[j])]
    return tuple(acc)


def centroid(sys: IfsSystem):
    m = sys.m
    return tuple(sum(p[k] for p in sys.points) / m for k in range(sys.d))


def load_system(path, exact=False):
    """Read the IFS definition file; returns (system, probs-or-None).

    Format: {"lambda": number, "points": [[..], ..], "probs": [..]?}.
    With exact=True the decimal literals are parsed as exact rationals.
    """
    if exact:
        kw = {"parse_float": Fraction, "parse_int": Fraction}
    else:
        kw = {}
    with open(path, "r", encoding="utf-8") as f:
        raw = json.load(f, **kw)
    return system_from_dict(raw)


def system_from_dict(raw):
    try:
        lam = raw["lambda"]
        points = raw["points"]
    except (KeyError, TypeError) as e:
        raise ValueError(f"IFS definition must carry 'lambda' and 'points': {e}") from e
    pts = [[v for v in p] for p in points]
    sys = new_ifs(lam, pts)
    probs = raw.get("probs")
    if probs is not None:
        probs = tuple(float(v) for v in probs)
        if len(probs) != sys.m:
            raise BadProbabilityVector(f"probs has length {len(probs)}, need {sys.m}")
        if any(v < 0 for v in probs):
            raise BadProbabilityVector("probabilities must be nonnegative")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise BadProbabilityVector(f"probabilities sum to {sum(probs)}, need 1 +- 1e-9")
    return sys, probs
