"""Feasible-prefix enumeration and uniqueness/multiplicity classification.

A digit i is a feasible continuation at a point x when f_i^{-1}(x) stays in
Omega.  Because the attractor is contained in Omega, this over-approximates
the set of true first digits; when the attractor has no holes (a certificate
from the conditions module) it is that set exactly, which is what turns
finite-depth observations into certificates:

* a bifurcation whose two children are solidly inside Omega plus a no-holes
  certificate proves at least two addresses exist;
* a single feasible chain whose exact-rational remainder revisits an earlier
  value proves the address is unique forever, with no certificate needed,
  since the over-approximation already bounds the true tree from above.

Float-path single chains are never certified: they report Unknown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import BudgetExceeded, CertificateRequired, PointOutsideOmega
from .core import IfsSystem, apply_inverse
from .geometry import DEFAULT_TOL, contains, is_exact_point

DEFAULT_NODE_BUDGET = 10**6
CERT_MARGIN = 1e-9  # interior margin required of both branches before certifying multiplicity


class Mode(enum.Enum):
    RELAXED_OMEGA = "relaxed-omega"
    EXACT_NO_HOLES = "exact-no-holes"


class Verdict(enum.Enum):
    UNIQUE_CERTIFIED = "unique-certified"
    MULTIPLE_CERTIFIED = "multiple-certified"
    MULTIPLE_LIKELY = "multiple-likely"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PrefixNode:
    prefix: tuple
    remainder: tuple
    depth: int


@dataclass
class PrefixTree:
    point: tuple
    levels: list  # levels[k] = list of PrefixNode at depth k

    @property
    def counts(self):
        return [len(lv) for lv in self.levels]


@dataclass(frozen=True)
class CycleCertificate:
    """Remainder orbit re-entered itself: digits repeat with this period forever."""

    entry_depth: int
    period: int
    digits: tuple  # the full forced digit chain up to cycle closure


@dataclass
class ClassificationReport:
    verdict: Verdict
    explored_depth: int
    first_bifurcation: int | None
    prefix_counts: list
    certificate: CycleCertificate | None = None
    exact: bool = False


def _require_mode(sys, x, mode, no_holes_certified, tol):
    if mode is Mode.EXACT_NO_HOLES:
        if not no_holes_certified:
            raise CertificateRequired(
                "exact-no-holes mode needs a no-holes certificate "
                "(conditions.no_holes_sufficient or a Pedicini certificate)"
            )
        if not contains(sys.omega, x, tol=tol):
            raise PointOutsideOmega(f"{x} is outside Omega")


def feasible_children(sys: IfsSystem, x, mode=Mode.RELAXED_OMEGA,
                      no_holes_certified=False, tol=DEFAULT_TOL):
    """Digits i with f_i^{-1}(x) in Omega (closed membership).

    In exact-no-holes mode this equals the set of true first address digits;
    in relaxed mode it is a superset of it.
    """
    _require_mode(sys, x, mode, no_holes_certified, tol)
    out = []
    for j in range(sys.m):
        if contains(sys.omega, apply_inverse(sys, j, x), tol=tol):
            out.append(j)
    return tuple(out)


def enumerate_prefixes(sys: IfsSystem, x, depth: int, mode=Mode.RELAXED_OMEGA,
                       no_holes_certified=False, tol=DEFAULT_TOL,
                       node_budget=DEFAULT_NODE_BUDGET) -> PrefixTree:
    """Breadth-first tree of every feasible prefix of x down to `depth`.

    Distinct prefixes with equal remainders are kept distinct: the object of
    study is the address count, not the remainder orbit.
    """
    _require_mode(sys, x, mode, no_holes_certified, tol)
    x = tuple(x)
    root = PrefixNode(prefix=(), remainder=x, depth=0)
    levels = [[root]]
    total = 1
    for dep in range(depth):
        nxt = []
        for node in levels[dep]:
            for j in range(sys.m):
                r = apply_inverse(sys, j, node.remainder)
                if contains(sys.omega, r, tol=tol):
                    nxt.append(PrefixNode(prefix=node.prefix + (j,), remainder=r, depth=dep + 1))
                    total += 1
                    if total > node_budget:
                        raise BudgetExceeded(f"prefix tree exceeded {node_budget} nodes at depth {dep + 1}")
        levels.append(nxt)
        if not nxt:
            break
    return PrefixTree(point=x, levels=levels)


def first_bifurcation(sys: IfsSystem, x, depth: int, mode=Mode.RELAXED_OMEGA,
                      no_holes_certified=False, tol=DEFAULT_TOL):
    """Least n at which a common prefix of length n has two feasible continuations."""
    _require_mode(sys, x, mode, no_holes_certified, tol)
    r = tuple(x)
    for dep in range(depth):
        ch = feasible_children(sys, r, tol=tol)
        if len(ch) >= 2:
            return dep
        if not ch:
            return None
        r = apply_inverse(sys, ch[0], r)
    return None


def classify_point(sys: IfsSystem, x, depth: int, mode=Mode.RELAXED_OMEGA,
                   no_holes_certified=False, tol=DEFAULT_TOL,
                   node_budget=DEFAULT_NODE_BUDGET) -> ClassificationReport:
    """Classify the address structure of x from its feasible-prefix tree.

    Verdicts:

    * UNIQUE_CERTIFIED -- exact arithmetic, one feasible child at every
      depth, and the remainder sequence revisited an earlier exact value;
      the periodicity extends the single chain to an infinite certificate.
    * MULTIPLE_CERTIFIED -- requires no_holes_certified.  Some node has two
      feasible children; on the float path both must additionally sit
      inside Omega with interior margin 1e-9 so that rounding cannot have
      invented the branch.
    * MULTIPLE_LIKELY -- a bifurcation was seen and at least two prefixes
      survive to the horizon, but no certificate applies.
    * UNKNOWN -- anything else (single float chain, no cycle yet, or the
      tree died out, which in relaxed mode means x is not in the attractor).
    """
    _require_mode(sys, x, mode, no_holes_certified, tol)
    x = tuple(x)
    exact = sys.is_exact and is_exact_point(x)

    frontier = [(x, ())]
    counts = [1]
    bifurcation = None
    seen = {x: 0} if exact else None
    chain_digits = []
    pure_chain = True
    total_nodes = 1

    for dep in range(depth):
        nxt = []
        for r, pref in frontier:
            children = []
            for j in range(sys.m):
                rj = apply_inverse(sys, j, r)
                if contains(sys.omega, rj, tol=tol):
                    children.append((j, rj))
            if len(children) >= 2:
                if bifurcation is None:
                    bifurcation = dep
                if no_holes_certified:
                    if exact:
                        solid = children
                    else:
                        solid = [c for c in children if contains(sys.omega, c[1], margin=CERT_MARGIN, tol=tol)]
                    if len(solid) >= 2:
                        counts.append(len(nxt) + len(children))
                        return ClassificationReport(
                            verdict=Verdict.MULTIPLE_CERTIFIED,
                            explored_depth=dep + 1,
                            first_bifurcation=bifurcation,
                            prefix_counts=counts,
                            exact=exact,
                        )
            nxt.extend((rj, pref + (j,)) for j, rj in children)
            total_nodes += len(children)
            if total_nodes > node_budget:
                raise BudgetExceeded(f"classification exceeded {node_budget} nodes at depth {dep + 1}")
        if not nxt:
            counts.append(0)
            return ClassificationReport(
                verdict=Verdict.UNKNOWN,
                explored_depth=dep + 1,
                first_bifurcation=bifurcation,
                prefix_counts=counts,
                exact=exact,
            )
        counts.append(len(nxt))
        if pure_chain and len(nxt) == 1:
            j = nxt[0][1][-1]
            chain_digits.append(j)
            if exact:
                r = nxt[0][0]
                if r in seen:
                    period = (dep + 1) - seen[r]
                    return ClassificationReport(
                        verdict=Verdict.UNIQUE_CERTIFIED,
                        explored_depth=dep + 1,
                        first_bifurcation=None,
                        prefix_counts=counts,
                        certificate=CycleCertificate(
                            entry_depth=seen[r], period=period, digits=tuple(chain_digits)
                        ),
                        exact=True,
                    )
                seen[r] = dep + 1
        else:
            pure_chain = False
        frontier = nxt

    if counts[-1] >= 2:
        verdict = Verdict.MULTIPLE_LIKELY
    else:
        verdict = Verdict.UNKNOWN
    return ClassificationReport(
        verdict=verdict,
        explored_depth=depth,
        first_bifurcation=bifurcation,
        prefix_counts=counts,
        exact=exact,
    )
