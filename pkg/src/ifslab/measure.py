"""Natural-measure sampling, mesh-cube counting and box-dimension estimates.

Monte Carlo runs are seeded and chunk their randomness through spawned
generator streams, so outputs are reproducible and independent of how the
work is scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadProbabilityVector, CertificateRequired, TooFewScales, UnsupportedDimension
from .conditions import resolve_no_holes
from .core import IfsSystem, centroid
from .geometry import DEFAULT_TOL, np_halfspaces


def default_truncation(lam, tol=DEFAULT_TOL) -> int:
    """Depth at which the sampling truncation error drops below the tolerance."""
    return max(1, math.ceil(math.log(tol) / math.log(float(lam))))


@dataclass
class MeasureSampler:
    sys: IfsSystem
    probs: tuple
    seed: int
    trunc: int = 0

    def __post_init__(self):
        p = tuple(float(v) for v in self.probs)
        if len(p) != self.sys.m:
            raise BadProbabilityVector(f"need {self.sys.m} probabilities, got {len(p)}")
        if any(v < 0 for v in p):
            raise BadProbabilityVector("probabilities must be nonnegative")
        if abs(sum(p) - 1.0) > 1e-9:
            raise BadProbabilityVector(f"probabilities sum to {sum(p)}, need 1 +- 1e-9")
        self.probs = p
        if self.trunc <= 0:
            self.trunc = default_truncation(self.sys.lam)

    @property
    def truncation_error(self) -> float:
        return float(self.sys.lam) ** self.trunc * self.sys.diameter()


def sample_natural_measure(sampler: MeasureSampler, n: int):
    """n i.i.d. draws from the push-down of the Bernoulli(probs) measure.

    Addresses are truncated at sampler.trunc digits and projected from the
    centroid of Omega, so every point is within truncation_error of its
    infinite-address limit.  Returns (points (n,d) array, digits (n,trunc)).
    """
    if n < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(np.random.SeedSequence(sampler.seed))
    sys = sampler.sys
    digits = rng.choice(sys.m, size=(n, sampler.trunc), p=sampler.probs)
    pts = project_digit_rows(sys, digits)
    return pts, digits


def project_digit_rows(sys: IfsSystem, digits):
    """Vectorised project_prefix over rows of digits, started at the centroid."""
    lam = float(sys.lam)
    P = np.array([[float(v) for v in p] for p in sys.points])
    n, T = digits.shape
    weights = (1 - lam) * lam ** np.arange(T)
    pts = np.einsum("t,ntd->nd", weights, P[digits])
    x0 = np.array([float(v) for v in centroid(sys)])
    return pts + lam**T * x0


def chain_walk(sys: IfsSystem, pts, depth: int, tol=DEFAULT_TOL):
    """Follow each point's feasible chain while it stays single (dim <= 2).

    Returns (bif_depth, dead_depth): per point, the depth of the first step
    with two or more feasible children, and the depth of the first step with
    none; -1 where the event never happens within `depth`.
    """
    if sys.omega.halfspaces is None:
        raise UnsupportedDimension("the batch classifier needs dim <= 2")
    A, b, norms = np_halfspaces(sys.omega)
    slack = b + tol * norms
    lam = float(sys.lam)
    P = np.array([[float(v) for v in p] for p in sys.points])

    pts = np.asarray(pts, dtype=float)
    n = len(pts)
    bif = np.full(n, -1, dtype=np.int64)
    dead = np.full(n, -1, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    r = pts.copy()
    for dep in range(depth):
        if not alive.any():
            break
        cand = (r[:, None, :] - (1 - lam) * P[None, :, :]) / lam  # (n, m, d)
        feas = np.all(cand @ A.T <= slack, axis=2)  # (n, m)
        cnt = feas.sum(axis=1)
        bif[alive & (cnt >= 2)] = dep
        dead[alive & (cnt == 0)] = dep
        alive &= cnt == 1
        # advance single chains to their unique feasible child
        pick = np.argmax(feas, axis=1)
        r = cand[np.arange(n), pick]
    return bif, dead


def chain_bifurcation_depths(sys: IfsSystem, pts, depth: int, tol=DEFAULT_TOL):
    """First-bifurcation depth per point, -1 where the chain never splits."""
    bif, _ = chain_walk(sys, pts, depth, tol=tol)
    return bif


def mu_bifurcation_fraction(sampler: MeasureSampler, n: int, depth: int,
                            no_holes_certified=None, tol=DEFAULT_TOL):
    """(fraction of mu-samples that bifurcate within depth, standard error)."""
    if not resolve_no_holes(sampler.sys, no_holes_certified):
        raise CertificateRequired("bifurcation fractions are only meaningful with no holes")
    pts, _ = sample_natural_measure(sampler, n)
    depths = chain_bifurcation_depths(sampler.sys, pts, depth, tol=tol)
    frac = float(np.mean(depths >= 0))
    stderr = math.sqrt(max(frac * (1 - frac), 1.0 / n) / n)
    return frac, stderr


@dataclass(frozen=True)
class MeshGrid:
    """Occupied eps-mesh cells of a point set; cell of x is floor(x_i/eps) per axis."""

    epsilon: float
    occupied: frozenset

    @classmethod
    def from_points(cls, points, epsilon):
        if epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {epsilon}")
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if len(pts) == 0:
            return cls(float(epsilon), frozenset())
        cells = np.floor(pts / epsilon).astype(np.int64)
        return cls(float(epsilon), frozenset(map(tuple, cells.tolist())))


def mesh_count(points, epsilon) -> int:
    """Number of occupied eps-mesh cells."""
    return len(MeshGrid.from_points(points, epsilon).occupied)


def box_dim_estimate(points, eps_list):
    """Least-squares slope of log N_eps against log(1/eps).

    Returns (slope, rms fit residual, table of (eps, N_eps)).  The scales are
    used exactly as supplied; inspect the table rather than trusting the
    slope blindly.
    """
    eps = [float(e) for e in eps_list]
    if len(set(eps)) < 3:
        raise TooFewScales("need at least three distinct scales")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise TooFewScales("scales must be strictly decreasing")
    table = [(e, mesh_count(points, e)) for e in eps]
    if any(cnt == 0 for _, cnt in table):
        raise ValueError("empty point set at some scale; no slope to fit")
    logs = np.log([1.0 / e for e, _ in table])
    logn = np.log([cnt for _, cnt in table])
    A = np.vstack([logs, np.ones_like(logs)]).T
    coef, *_ = np.linalg.lstsq(A, logn, rcond=None)
    fit = A @ coef
    residual = float(np.sqrt(np.mean((fit - logn) ** 2)))
    return float(coef[0]), residual, table


def grid_points(sys: IfsSystem, resolution: int):
    """Lattice over Omega: interior fractions k/resolution in 1-D, cell centres in 2-D."""
    lo, hi = sys.omega.bounding_box()
    if sys.d == 1:
        lo, hi = float(lo[0]), float(hi[0])
        ks = np.arange(1, resolution) / resolution
        return (lo + ks * (hi - lo))[:, None]
    if sys.d == 2:
        lo = np.array([float(v) for v in lo])
        hi = np.array([float(v) for v in hi])
        c = (np.arange(resolution) + 0.5) / resolution
        gx, gy = np.meshgrid(c, c, indexing="ij")
        pts = lo + np.stack([gx.ravel(), gy.ravel()], axis=1) * (hi - lo)
        from .geometry import contains_many

        return pts[contains_many(sys.omega, pts)]
    raise UnsupportedDimension("uniqueness grids are built for dim <= 2")


def uniqueness_grid(sys: IfsSystem, resolution: int, depth: int, mode=None,
                    no_holes_certified=None, tol=DEFAULT_TOL):
    """Grid points whose feasible-prefix tree is a single chain to `depth`.

    A shrinking over-approximation of the set of uniqueness: deepening can
    only remove points.  Dead-end chains (possible when the attractor has
    holes) are excluded, since such points carry no address at all.  The
    membership computation is the same in both feasibility modes; selecting
    exact-no-holes merely asserts the certificate that makes single chains
    mean single true prefixes.
    """
    from .addresses import Mode

    if resolution < 8:
        raise ValueError(f"resolution must be at least 8, got {resolution}")
    if mode is Mode.EXACT_NO_HOLES and not resolve_no_holes(sys, no_holes_certified):
        raise CertificateRequired("exact-no-holes grids need a no-holes certificate")
    pts = grid_points(sys, resolution)
    bif, dead = chain_walk(sys, pts, depth, tol=tol)
    return pts[(bif < 0) & (dead < 0)]


def attractor_point_cloud(sys: IfsSystem, finest_eps, max_points: int = 4_000_000):
    """Deterministic attractor cloud: every depth-K projection, K matched to finest_eps.

    K is the smallest depth at which image diameters drop below finest_eps,
    so the cloud resolves every requested mesh scale without randomness.
    """
    from .errors import BudgetExceeded

    lam = float(sys.lam)
    diam = sys.diameter()
    K = max(1, math.ceil(math.log(float(finest_eps) / diam) / math.log(lam)))
    if sys.m**K > max_points:
        raise BudgetExceeded(
            f"attractor cloud at scale {finest_eps} needs {sys.m**K} points "
            f"(budget {max_points}); use a coarser scale"
        )
    idx = np.arange(sys.m**K, dtype=np.int64)
    digits = np.empty((len(idx), K), dtype=np.int64)
    for t in range(K):
        digits[:, t] = (idx // sys.m**t) % sys.m
    return project_digit_rows(sys, digits)
