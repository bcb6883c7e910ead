"""Depth computations: point depth in closed form, cut depth by LP.

The depth of a point is its distance to the boundary measured inside the
affine hull; the depth of a cut is the largest depth among the points it
removes. For a normalized polyhedron the former is a row-margin minimum
and the latter is a linear program over the shrunken bodies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import lp
from .errors import EmptyPolyhedron, PointOutsideHull, PointOutsidePolyhedron
from .linalg import as_vector
from .polyhedron import Cut, NormalizedPolyhedron, StandardFormModel, bound_rows

# membership tolerance for point queries
POINT_TOL = 1e-7


class DepthKind(Enum):
    FINITE = "finite"
    UNBOUNDED = "unbounded"
    NOT_VIOLATED = "not-violated"


@dataclass(frozen=True, eq=False)
class DepthResult:
    """Outcome of a cut-depth computation.

    Finite results carry the value and, when the LP attained it, a deepest
    removed point. Unbounded results surface a recession direction along
    which removed points of arbitrary depth exist.
    """

    kind: DepthKind
    value: float | None = None
    point: np.ndarray | None = None
    ray: np.ndarray | None = None

    def __post_init__(self):
        if self.kind == DepthKind.FINITE:
            if self.value is None or not (self.value >= 0.0):
                raise ValueError("finite depth must carry a value >= 0")
        elif self.value is not None:
            raise ValueError(f"{self.kind.value} results carry no value")

    @classmethod
    def finite(cls, value: float, point: np.ndarray | None = None) -> "DepthResult":
        return cls(DepthKind.FINITE, value=value, point=point)

    @classmethod
    def unbounded(cls, ray: np.ndarray | None = None) -> "DepthResult":
        return cls(DepthKind.UNBOUNDED, ray=ray)

    @classmethod
    def not_violated(cls) -> "DepthResult":
        return cls(DepthKind.NOT_VIOLATED)

    @property
    def is_finite(self) -> bool:
        return self.kind == DepthKind.FINITE


def point_depth(poly: NormalizedPolyhedron, x) -> float:
    """Depth of a feasible point: the minimum row margin offsets - normals @ x.

    Returns +inf when the polyhedron has no inequality rows. Raises
    PointOutsideHull / PointOutsidePolyhedron when x is not a member within
    POINT_TOL.
    """
    x = as_vector(x, "x")
    if x.shape[0] != poly.dim:
        raise ValueError(f"x has length {x.shape[0]}, expected {poly.dim}")
    if not poly.space.contains(x, POINT_TOL):
        raise PointOutsideHull("x does not satisfy the affine-hull equalities")
    if poly.num_rows == 0:
        return math.inf
    margins = poly.offsets - poly.normals @ x
    worst = float(margins.min())
    if worst < -POINT_TOL:
        raise PointOutsidePolyhedron(f"x violates a row by {-worst:.3e}")
    return worst


def _depth_program(poly: NormalizedPolyhedron, cut: Cut) -> lp.LinearProgram:
    """max lam s.t. normals @ x + lam <= offsets, cut.coeffs @ x <= cut.rhs,
    x on the hull, lam >= 0. Variables are (x, lam)."""
    n = poly.dim
    m = poly.num_rows
    space = poly.space
    p = space.num_equalities
    A = np.zeros((m + 1 + p, n + 1))
    rhs = np.zeros(m + 1 + p)
    relations: list[str] = []
    A[:m, :n] = poly.normals
    A[:m, n] = 1.0
    rhs[:m] = poly.offsets
    relations += [lp.LESS_EQUAL] * m
    A[m, :n] = cut.coeffs
    rhs[m] = cut.rhs
    relations.append(lp.LESS_EQUAL)
    if p:
        A[m + 1 :, :n] = space.A
        rhs[m + 1 :] = space.b
    relations += [lp.EQUAL] * p
    objective = np.zeros(n + 1)
    objective[n] = 1.0
    domains = (lp.FREE,) * n + (lp.NONNEGATIVE,)
    return lp.LinearProgram(objective, A, tuple(relations), rhs, domains)


def _feasibility_program(poly: NormalizedPolyhedron) -> lp.LinearProgram:
    n = poly.dim
    m = poly.num_rows
    space = poly.space
    p = space.num_equalities
    A = np.zeros((m + p, n))
    rhs = np.zeros(m + p)
    A[:m] = poly.normals
    rhs[:m] = poly.offsets
    if p:
        A[m:] = space.A
        rhs[m:] = space.b
    relations = (lp.LESS_EQUAL,) * m + (lp.EQUAL,) * p
    return lp.LinearProgram(np.zeros(n), A, relations, rhs, (lp.FREE,) * n)


def cut_depth(poly: NormalizedPolyhedron, cut: Cut) -> DepthResult:
    """Depth of the cut coeffs @ x >= rhs with respect to the polyhedron.

    Finite with the optimum and an attaining point when the depth LP is
    bounded; Unbounded when it is not (the integer set is empty or the cut
    is invalid); NotViolated when the cut removes nothing. Raises
    EmptyPolyhedron when the polyhedron itself is infeasible.
    """
    if cut.dim != poly.dim:
        raise ValueError(f"cut has dimension {cut.dim}, expected {poly.dim}")
    outcome = lp.solve(_depth_program(poly, cut))
    if outcome.status == lp.LpStatus.INFEASIBLE:
        feas = lp.solve(_feasibility_program(poly))
        if feas.status == lp.LpStatus.INFEASIBLE:
            raise EmptyPolyhedron("the polyhedron has no feasible point")
        return DepthResult.not_violated()
    n = poly.dim
    if outcome.status == lp.LpStatus.UNBOUNDED:
        return DepthResult.unbounded(ray=outcome.ray[:n])
    return DepthResult.finite(max(outcome.objective, 0.0), outcome.x[:n])


def _standard_form_program(
    model: StandardFormModel, cut: Cut | None
) -> lp.LinearProgram:
    """The sparse-friendly depth LP over a standard-form model.

    Equality rows are kept untouched; every finite bound contributes one row
    x_j -/+ |gamma_j| lam -/+ slack = bound. Variables are
    (x, lam, one slack per bound row); cut is None for plain feasibility.
    """
    rows, _ = bound_rows(model)
    n = model.dim
    space = model.space
    p = space.num_equalities
    k = len(rows)
    num_rows = k + p + (1 if cut is not None else 0)
    num_cols = n + 1 + k
    A = np.zeros((num_rows, num_cols))
    rhs = np.zeros(num_rows)
    relations: list[str] = []
    for i, r in enumerate(rows):
        A[i, r.var] = 1.0
        sign = 1.0 if r.is_upper else -1.0
        A[i, n] = sign * r.norm
        A[i, n + 1 + i] = sign
        rhs[i] = r.value
        relations.append(lp.EQUAL)
    if p:
        A[k : k + p, :n] = space.A
        rhs[k : k + p] = space.b
    relations += [lp.EQUAL] * p
    if cut is not None:
        A[k + p, :n] = cut.coeffs
        rhs[k + p] = cut.rhs
        relations.append(lp.LESS_EQUAL)
    objective = np.zeros(num_cols)
    objective[n] = 1.0
    domains = (lp.FREE,) * n + (lp.NONNEGATIVE,) * (1 + k)
    return lp.LinearProgram(objective, A, tuple(relations), rhs, domains)


def cut_depth_standard_form(model: StandardFormModel, cut: Cut) -> DepthResult:
    """Depth of a cut over { x : A x = b, lower <= x <= upper }.

    Agrees with cut_depth over from_standard_form(model); the formulation
    here keeps the equality rows intact and attaches the shrink variable to
    the bound rows only.
    """
    if cut.dim != model.dim:
        raise ValueError(f"cut has dimension {cut.dim}, expected {model.dim}")
    outcome = lp.solve(_standard_form_program(model, cut))
    if outcome.status == lp.LpStatus.INFEASIBLE:
        feas = lp.solve(_standard_form_program(model, None))
        if feas.status == lp.LpStatus.INFEASIBLE:
            raise EmptyPolyhedron("the model has no feasible point")
        return DepthResult.not_violated()
    n = model.dim
    if outcome.status == lp.LpStatus.UNBOUNDED:
        return DepthResult.unbounded(ray=outcome.ray[:n])
    return DepthResult.finite(max(outcome.objective, 0.0), outcome.x[:n])


def volume_lower_bound(n: int, depth: float) -> float:
    """Half the volume of an n-ball of the given radius.

    Any point at this depth that a cut removes contributes at least such a
    half-ball to the removed volume.
    """
    if n < 1 or int(n) != n:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not (depth >= 0.0) or not math.isfinite(depth):
        raise ValueError(f"depth must be finite and >= 0, got {depth}")
    n = int(n)
    ball = math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0) * depth**n
    return 0.5 * ball
