"""Polyhedron representations and normalization onto an affine hull.

A polyhedron is given either in inequality form { x in hull : A x <= b } or
in solver standard form { x : A x = b, lower <= x <= upper }. Both are
rewritten over the hull with unit-norm, in-hull constraint rows, which is
the form every depth computation consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateConstraint
from .linalg import as_matrix, as_vector, cholesky_factor, cholesky_solve_factored

# Rows whose projected normal is shorter than this are orthogonal to the hull.
DEGENERATE_NORM_TOL = 1e-10
# Unit-norm and in-hull tolerances for normalized rows.
UNIT_NORM_TOL = 1e-10
IN_HULL_TOL = 1e-9
# Tolerance when checking a fixed variable's implied value against its bound.
IMPLIED_BOUND_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class AffineSpace:
    """The affine space { x : A x = b } with A of full row rank (p may be 0)."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A, "A"))
        object.__setattr__(self, "b", as_vector(self.b, "b"))
        if self.b.shape[0] != self.A.shape[0]:
            raise ValueError(
                f"b has length {self.b.shape[0]}, expected {self.A.shape[0]}"
            )
        # full row rank is certified by the Cholesky factorization succeeding
        self.gram_factor

    @classmethod
    def full_space(cls, n: int) -> "AffineSpace":
        return cls(np.zeros((0, n)), np.zeros(0))

    @property
    def dim(self) -> int:
        """Ambient dimension n."""
        return self.A.shape[1]

    @property
    def num_equalities(self) -> int:
        return self.A.shape[0]

    @cached_property
    def gram_factor(self) -> np.ndarray:
        """Cholesky factor of A A^T, shared by all projections onto the hull."""
        return cholesky_factor(self.A @ self.A.T)

    def contains(self, x: np.ndarray, tol: float) -> bool:
        if self.num_equalities == 0:
            return True
        return float(np.abs(self.A @ x - self.b).max()) <= tol


def _project_with_multipliers(space: AffineSpace, a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Project a onto the direction space { d : A d = 0 }.

    Returns (gamma, mu) with gamma = a + A^T mu and A gamma = 0. On the
    hull, gamma @ x = a @ x + mu @ b, which is what turns right-hand sides
    into hull-relative offsets.
    """
    if space.num_equalities == 0:
        return a.copy(), np.zeros(0)
    mu = cholesky_solve_factored(space.gram_factor, -(space.A @ a))
    return a + space.A.T @ mu, mu


def project_onto_direction_space(space: AffineSpace, a) -> np.ndarray:
    """Component of a lying in the direction space of the affine hull."""
    a = as_vector(a, "a")
    if a.shape[0] != space.dim:
        raise ValueError(f"a has length {a.shape[0]}, expected {space.dim}")
    gamma, _ = _project_with_multipliers(space, a)
    return gamma


@dataclass(frozen=True, eq=False)
class HPolyhedron:
    """{ x in space : A x <= b }."""

    A: np.ndarray
    b: np.ndarray
    space: AffineSpace

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A, "A"))
        object.__setattr__(self, "b", as_vector(self.b, "b"))
        if self.A.shape[1] != self.space.dim:
            raise ValueError(
                f"A has {self.A.shape[1]} columns, expected {self.space.dim}"
            )
        if self.b.shape[0] != self.A.shape[0]:
            raise ValueError(
                f"b has length {self.b.shape[0]}, expected {self.A.shape[0]}"
            )

    @property
    def num_rows(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True, eq=False)
class NormalizedPolyhedron:
    """{ x in space : normals @ x <= offsets } with unit-norm in-hull rows."""

    normals: np.ndarray
    offsets: np.ndarray
    space: AffineSpace
    # rows for bounds on variables fixed by the equalities are dropped; this
    # counter records how many (presolve-style diagnostic)
    dropped_bounds: int = 0

    def __post_init__(self):
        object.__setattr__(self, "normals", as_matrix(self.normals, "normals"))
        object.__setattr__(self, "offsets", as_vector(self.offsets, "offsets"))
        if self.normals.shape[1] != self.space.dim:
            raise ValueError(
                f"normals have {self.normals.shape[1]} columns, expected {self.space.dim}"
            )
        if self.offsets.shape[0] != self.normals.shape[0]:
            raise ValueError(
                f"offsets have length {self.offsets.shape[0]}, "
                f"expected {self.normals.shape[0]}"
            )
        if self.num_rows:
            norms = np.linalg.norm(self.normals, axis=1)
            if float(np.abs(norms - 1.0).max()) > UNIT_NORM_TOL:
                raise ValueError("normalized rows must have unit Euclidean norm")
            if self.space.num_equalities:
                resid = float(np.abs(self.space.A @ self.normals.T).max())
                if resid > IN_HULL_TOL:
                    raise ValueError("normalized rows must lie in the hull's direction space")

    @property
    def num_rows(self) -> int:
        return self.normals.shape[0]

    @property
    def dim(self) -> int:
        return self.normals.shape[1]


def normalize(poly: HPolyhedron) -> NormalizedPolyhedron:
    """Rewrite an inequality-form polyhedron with unit-norm in-hull rows.

    Row i becomes gamma_i / |gamma_i| with offset (b_i + mu_i @ space.b) / |gamma_i|,
    where gamma_i is the projection of the i-th normal onto the direction
    space. Raises DegenerateConstraint for rows orthogonal to the hull.
    """
    space = poly.space
    m = poly.num_rows
    normals = np.zeros((m, space.dim))
    offsets = np.zeros(m)
    for i in range(m):
        gamma, mu = _project_with_multipliers(space, poly.A[i])
        nrm = float(np.linalg.norm(gamma))
        if nrm < DEGENERATE_NORM_TOL:
            raise DegenerateConstraint(
                f"row {i}: normal is orthogonal to the affine hull"
            )
        normals[i] = gamma / nrm
        offsets[i] = (poly.b[i] + float(mu @ space.b)) / nrm
    return NormalizedPolyhedron(normals, offsets, space)


def shrink(poly: NormalizedPolyhedron, lam: float) -> NormalizedPolyhedron:
    """The body of points at depth >= lam: offsets move inward by lam."""
    if not (lam >= 0.0) or not math.isfinite(lam):
        raise ValueError(f"lam must be a finite value >= 0, got {lam}")
    return NormalizedPolyhedron(
        poly.normals, poly.offsets - lam, poly.space, poly.dropped_bounds
    )


@dataclass(frozen=True, eq=False)
class StandardFormModel:
    """Solver-style input { x : A x = b, lower <= x <= upper }.

    Bound entries may be -inf / +inf; infinity handling is confined to
    bound_rows below.
    """

    space: AffineSpace
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lower", as_vector(self.lower, "lower", allow_infinite=True))
        object.__setattr__(self, "upper", as_vector(self.upper, "upper", allow_infinite=True))
        n = self.space.dim
        if self.lower.shape[0] != n or self.upper.shape[0] != n:
            raise ValueError(
                f"bounds have lengths {self.lower.shape[0]}/{self.upper.shape[0]}, expected {n}"
            )
        if np.any(self.lower > self.upper):
            raise ValueError("lower bounds must not exceed upper bounds")
        if np.any(self.lower == math.inf) or np.any(self.upper == -math.inf):
            raise ValueError("bounds must leave a non-empty interval per variable")

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True, eq=False)
class BoundRow:
    """One finite variable bound, projected onto the hull.

    gamma is the projection of the coordinate direction, norm its length,
    and shift = mu @ space.b the hull-relative correction to the bound value.
    """

    var: int
    is_upper: bool
    value: float
    gamma: np.ndarray
    norm: float
    shift: float


def bound_rows(model: StandardFormModel) -> tuple[list[BoundRow], int]:
    """Projected rows for every finite bound, plus the dropped-row count.

    Variables fixed by the equalities (projection of the coordinate
    direction is zero) get no row: their implied value is checked against
    the bound and the row is dropped if implied, while a violated bound
    raises DegenerateConstraint.
    """
    space = model.space
    rows: list[BoundRow] = []
    dropped = 0
    basis = np.eye(space.dim)
    for j in range(space.dim):
        lo = float(model.lower[j])
        up = float(model.upper[j])
        if lo == -math.inf and up == math.inf:
            continue
        gamma, mu = _project_with_multipliers(space, basis[j])
        nrm = float(np.linalg.norm(gamma))
        shift = float(mu @ space.b)
        if nrm < DEGENERATE_NORM_TOL:
            implied = -shift  # e_j = -A^T mu, so x_j = -mu @ b on the hull
            if lo != -math.inf:
                if implied < lo - IMPLIED_BOUND_TOL:
                    raise DegenerateConstraint(
                        f"variable {j} is fixed to {implied} by the equalities, "
                        f"violating its lower bound {lo}"
                    )
                dropped += 1
            if up != math.inf:
                if implied > up + IMPLIED_BOUND_TOL:
                    raise DegenerateConstraint(
                        f"variable {j} is fixed to {implied} by the equalities, "
                        f"violating its upper bound {up}"
                    )
                dropped += 1
            continue
        if lo != -math.inf:
            rows.append(BoundRow(j, False, lo, gamma, nrm, shift))
        if up != math.inf:
            rows.append(BoundRow(j, True, up, gamma, nrm, shift))
    return rows, dropped


def from_standard_form(model: StandardFormModel) -> NormalizedPolyhedron:
    """Normalized polyhedron over the hull { x : A x = b } with one row per
    finite variable bound."""
    rows, dropped = bound_rows(model)
    n = model.dim
    normals = np.zeros((len(rows), n))
    offsets = np.zeros(len(rows))
    for i, r in enumerate(rows):
        if r.is_upper:
            normals[i] = r.gamma / r.norm
            offsets[i] = (r.value + r.shift) / r.norm
        else:
            normals[i] = -r.gamma / r.norm
            offsets[i] = -(r.value + r.shift) / r.norm
    return NormalizedPolyhedron(normals, offsets, model.space, dropped)


@dataclass(frozen=True, eq=False)
class Cut:
    """The inequality coeffs @ x >= rhs."""

    coeffs: np.ndarray
    rhs: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", as_vector(self.coeffs, "coeffs"))
        object.__setattr__(self, "rhs", float(self.rhs))
        if not math.isfinite(self.rhs):
            raise ValueError("cut right-hand side must be finite")
        if not np.any(self.coeffs != 0.0):
            raise ValueError("cut coefficients must not all be zero")

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]
