"""Closed forms and the digit-forcing procedure for the three-map triangle family.

Everything here works in normalised barycentric coordinates (x, y, z) with
x + y + z = 1: the three maps act on a triple as t -> lam*t + (1-lam)*e_j, so
all the inequalities below are independent of the actual triangle shape.
Cartesian systems are converted through an affine change of basis first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DimensionMismatch, IrrationalInput

SUM_TOL = 1e-12


@dataclass(frozen=True)
class BarycentricTriple:
    x: object
    y: object
    z: object

    def __post_init__(self):
        s = self.x + self.y + self.z
        if abs(float(s) - 1.0) > SUM_TOL:
            raise ValueError(f"barycentric coordinates must sum to 1, got {float(s)}")
        if min(float(self.x), float(self.y), float(self.z)) < -SUM_TOL:
            raise ValueError(f"barycentric coordinates must be nonnegative: {self}")

    def as_tuple(self):
        return (self.x, self.y, self.z)

    @property
    def is_exact(self):
        return all(isinstance(v, Rational) for v in self.as_tuple())


def golden_ratio() -> float:
    """(sqrt(5)-1)/2, the sharp one-dimensional multiplicity threshold."""
    return (5.0**0.5 - 1.0) / 2.0


def lambda0() -> float:
    """Unique positive root of t^3 + t = 1, the triangle threshold (~0.68233)."""
    lo, hi = 0.5, 1.0
    for _ in range(60):
        mid = (lo + hi) / 2
        if mid**3 + mid - 1 < 0:
            lo = mid
        else:
            hi = mid
    t = (lo + hi) / 2
    for _ in range(4):  # Newton polish to the last bit
        t -= (t**3 + t - 1) / (3 * t * t + 1)
    return t


def pi_point(lam) -> BarycentricTriple:
    """(lam^2, lam, 1) / (1 + lam + lam^2), the period-3 uniqueness candidate."""
    den = 1 + lam + lam * lam
    return BarycentricTriple(lam * lam / den, lam / den, 1 / den)


def pi_prime_point(lam) -> BarycentricTriple:
    """The reversed triple: generator of the mirror 3-cycle."""
    den = 1 + lam + lam * lam
    return BarycentricTriple(1 / den, lam / den, lam * lam / den)


def gamma_nonempty(lam) -> bool:
    """Whether the corner region Gamma_0 = {x<(1-lam)/lam, y<1-lam, z<1-lam} is nonempty.

    The open triangle {x<a, y<b, z<c} is nondegenerate iff a+b+c > 1; this
    predicate equals lam < 1/sqrt(2) identically.
    """
    return (1 - lam) / lam + 2 * (1 - lam) > 1


def m_point(lam) -> BarycentricTriple:
    """Top-left corner of the pulled-back corner region (needs 1/2 < lam < 1).

    The corner only lies inside the closed triangle once lam + lam^2 >= 1,
    i.e. lam at least the golden ratio; below that its z-coordinate is
    negative and the validated triple cannot be built.
    """
    if not (0.5 < lam < 1):
        raise ValueError(f"the M point is meaningful for lam in (1/2, 1), got {lam}")
    a = (1 - lam) / lam
    return BarycentricTriple(a * a, a, (-1 + lam + lam * lam) / (lam * lam))


def m_separation_holds(lam) -> bool:
    """z_M > 1 - lam: the pulled-back corner clears the neighbouring rhombus.

    Computed directly from the corner's z-coordinate so it stays defined on
    all of (1/2, 1); algebraically equivalent to lam > lambda0().
    """
    if not (0.5 < lam < 1):
        raise ValueError(f"the separation test needs lam in (1/2, 1), got {lam}")
    z = (-1 + lam + lam * lam) / (lam * lam)
    return z > 1 - lam


def in_delta_region(t: BarycentricTriple, i: int, lam) -> bool:
    """Membership in Delta_i = Delta minus the other two map images (closed complement)."""
    coords = t.as_tuple()
    return all(coords[j] < 1 - lam for j in range(3) if j != i)


def in_gamma_region(t: BarycentricTriple, i: int, lam) -> bool:
    """Membership in Gamma_i, the sub-corner of Delta_i that survives one pull-back."""
    coords = t.as_tuple()
    if not coords[i] < (1 - lam) / lam:
        return False
    return all(coords[j] < 1 - lam for j in range(3) if j != i)


class ForcingKind(enum.Enum):
    UNIQUE_BY_CYCLE = "unique-by-cycle"
    FORCED_PREFIX_THEN_BRANCH = "forced-prefix-then-branch"
    DEAD_END = "dead-end"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class ForcingResult:
    kind: ForcingKind
    step: int       # branch/dead-end step, or the step at which the cycle closed
    period: int | None
    digits: tuple   # forced digit indices (0: a_n=1, 1: b_n=1, 2: c_n=1)


def digit_forcing(lam, target, max_steps: int = 10_000) -> ForcingResult:
    """Force the digit triples of a barycentric target with exact rationals.

    Each step divides out one power of lam from the three expansions
    sum a_n lam^n = x/(1-lam) (and likewise y, z); a digit triple is feasible
    when all three shifted remainders stay inside [0, 1/(1-lam)], endpoints
    included so that uniqueness conclusions stay conservative.  Exactly one
    feasible triple forces the step; an exact remainder repeat certifies the
    unique address forever.
    """
    if not isinstance(lam, Rational):
        raise IrrationalInput(
            "digit forcing certifies with exact rationals; for float inputs "
            "use addresses.classify_point, which reports Unknown-grade results"
        )
    lam = Fraction(lam)
    if not (0 < lam < 1):
        raise ValueError(f"lambda must lie in (0,1), got {lam}")
    triple = target.as_tuple() if isinstance(target, BarycentricTriple) else tuple(target)
    if not all(isinstance(v, Rational) for v in triple):
        raise IrrationalInput("digit forcing needs exact rational target coordinates")
    triple = tuple(Fraction(v) for v in triple)
    if sum(triple) != 1:
        raise ValueError("barycentric target must satisfy x + y + z = 1 exactly")

    top = 1 / (1 - lam)
    state = tuple(v / (1 - lam) for v in triple)
    seen = {state: 0}
    digits = []
    for step in range(max_steps):
        feasible = []
        for d in range(3):
            nxt = tuple((state[c] - (1 if c == d else 0)) / lam for c in range(3))
            if all(0 <= v <= top for v in nxt):
                feasible.append((d, nxt))
        if not feasible:
            return ForcingResult(ForcingKind.DEAD_END, step, None, tuple(digits))
        if len(feasible) >= 2:
            return ForcingResult(ForcingKind.FORCED_PREFIX_THEN_BRANCH, step, None, tuple(digits))
        d, state = feasible[0]
        digits.append(d)
        if state in seen:
            return ForcingResult(
                ForcingKind.UNIQUE_BY_CYCLE, step + 1, step + 1 - seen[state], tuple(digits)
            )
        seen[state] = step + 1
    return ForcingResult(ForcingKind.EXHAUSTED, max_steps, None, tuple(digits))


# ---------------------------------------------------------------------------
# conversions between a concrete planar 3-map system and barycentric triples


def _require_triangle(sys):
    if sys.m != 3 or sys.d != 2:
        raise DimensionMismatch("barycentric conversion needs a 3-map planar system")


def barycentric_to_point(sys, t: BarycentricTriple):
    """x*p0 + y*p1 + z*p2 for the system's anchor triangle."""
    _require_triangle(sys)
    p0, p1, p2 = sys.points
    w = t.as_tuple()
    return tuple(w[0] * p0[k] + w[1] * p1[k] + w[2] * p2[k] for k in range(2))


def point_to_barycentric(sys, pt) -> BarycentricTriple:
    _require_triangle(sys)
    p0, p1, p2 = sys.points
    # solve [p0-p2 | p1-p2] (x, y)^T = pt - p2 by Cramer's rule
    a, b = p0[0] - p2[0], p1[0] - p2[0]
    c, d = p0[1] - p2[1], p1[1] - p2[1]
    det = a * d - b * c
    rx, ry = pt[0] - p2[0], pt[1] - p2[1]
    x = (rx * d - b * ry) / det
    y = (a * ry - rx * c) / det
    return BarycentricTriple(x, y, 1 - x - y)


def gamma_uniqueness_scan(lam, resolution: int = 60, max_steps: int = 400):
    """Exploratory scan of the corner regions for forcing-unique points.

    Walks a barycentric grid over Gamma_0 and returns the grid points whose
    digit forcing certifies a unique address.  This probes the conjecture
    that only the two period-3 cycles survive for 2/3 <= lam < lambda0; it
    is reported as-is and asserted nowhere.
    """
    lam = Fraction(lam)
    out = []
    for ix in range(1, resolution):
        for iy in range(1, resolution - ix):
            t = BarycentricTriple(
                Fraction(ix, resolution),
                Fraction(iy, resolution),
                Fraction(resolution - ix - iy, resolution),
            )
            if not any(in_gamma_region(t, i, lam) for i in range(3)):
                continue
            r = digit_forcing(lam, t, max_steps=max_steps)
            if r.kind is ForcingKind.UNIQUE_BY_CYCLE:
                out.append((t, r))
    return out
