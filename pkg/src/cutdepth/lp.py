"""Self-contained dense two-phase simplex solver.

Maximizes a linear objective subject to <=, =, >= rows over free or
nonnegative variables. Deterministic: Dantzig pricing with ties broken by
lowest index, switching to Bland's rule after a fixed number of degenerate
pivots. Free variables are split into positive and negative parts, which
keeps the tableau classic at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import IterationLimit
from .linalg import as_matrix, as_vector

LESS_EQUAL = "<="
EQUAL = "="
GREATER_EQUAL = ">="
FREE = "free"
NONNEGATIVE = "nonneg"

FEASIBILITY_TOL = 1e-7
PIVOT_TOL = 1e-9
MAX_PIVOTS = 100_000
# a ratio this small means the pivot will not move the objective
_DEGENERATE_RATIO = 1e-12

_RELATIONS = (LESS_EQUAL, EQUAL, GREATER_EQUAL)
_DOMAINS = (FREE, NONNEGATIVE)


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """max objective @ x subject to A x (rel) rhs, x_j free or >= 0."""

    objective: np.ndarray
    A: np.ndarray
    relations: tuple[str, ...]
    rhs: np.ndarray
    domains: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "objective", as_vector(self.objective, "objective"))
        object.__setattr__(self, "A", as_matrix(self.A, "A"))
        object.__setattr__(self, "rhs", as_vector(self.rhs, "rhs"))
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "domains", tuple(self.domains))
        m, n = self.A.shape
        if self.objective.shape[0] != n:
            raise ValueError(f"objective has length {self.objective.shape[0]}, expected {n}")
        if self.rhs.shape[0] != m:
            raise ValueError(f"rhs has length {self.rhs.shape[0]}, expected {m}")
        if len(self.relations) != m:
            raise ValueError(f"{len(self.relations)} relations for {m} rows")
        if len(self.domains) != n:
            raise ValueError(f"{len(self.domains)} domains for {n} columns")
        for rel in self.relations:
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
        for dom in self.domains:
            if dom not in _DOMAINS:
                raise ValueError(f"unknown domain {dom!r}")

    @property
    def num_rows(self) -> int:
        return self.A.shape[0]

    @property
    def num_cols(self) -> int:
        return self.A.shape[1]


@dataclass(frozen=True, eq=False)
class LpOutcome:
    """Solve result. Optimal carries x and the objective value; Unbounded
    carries a feasible point and an improving ray."""

    status: LpStatus
    x: np.ndarray | None = None
    objective: float | None = None
    ray: np.ndarray | None = None


class _Unbounded(Exception):
    def __init__(self, entering: int):
        self.entering = entering


def _pivot(M: np.ndarray, row: int, col: int) -> None:
    M[row] /= M[row, col]
    factors = M[:, col].copy()
    factors[row] = 0.0
    M -= np.outer(factors, M[row])
    M[:, col] = 0.0
    M[row, col] = 1.0


def _run_simplex(
    M: np.ndarray,
    basis: np.ndarray,
    cost: np.ndarray,
    bland_threshold: int,
    pivots_used: int,
) -> tuple[int, bool]:
    """Pivot until optimal (returns pivots used) or raise _Unbounded.

    M is the tableau [columns | rhs] with an identity embedded at the basis
    columns; cost is the standard-form objective (maximized).
    """
    degenerate = 0
    bland = False
    while True:
        reduced = cost[basis] @ M[:, :-1] - cost
        if bland:
            candidates = np.nonzero(reduced < -PIVOT_TOL)[0]
            if candidates.size == 0:
                return pivots_used, bland
            enter = int(candidates[0])
        else:
            enter = int(np.argmin(reduced))
            if reduced[enter] >= -PIVOT_TOL:
                return pivots_used, bland
        col = M[:, enter]
        eligible = np.nonzero(col > PIVOT_TOL)[0]
        if eligible.size == 0:
            raise _Unbounded(enter)
        ratios = M[eligible, -1] / col[eligible]
        best = ratios.min()
        tied = eligible[ratios <= best + _DEGENERATE_RATIO * (1.0 + abs(best))]
        leave = int(tied[np.argmin(basis[tied])])
        if M[leave, -1] / col[leave] < _DEGENERATE_RATIO:
            degenerate += 1
            if degenerate > bland_threshold:
                bland = True
        _pivot(M, leave, enter)
        basis[leave] = enter
        pivots_used += 1
        if pivots_used > MAX_PIVOTS:
            raise IterationLimit(f"simplex exceeded {MAX_PIVOTS} pivots")


def solve(lp: LinearProgram) -> LpOutcome:
    """Solve the program; see LpOutcome for the result contract."""
    m, n = lp.num_rows, lp.num_cols

    # structural columns: one per nonnegative variable, a +/- pair per free one
    col_var: list[tuple[int, float]] = []
    for j, dom in enumerate(lp.domains):
        col_var.append((j, 1.0))
        if dom == FREE:
            col_var.append((j, -1.0))
    ns = len(col_var)

    A_std = np.zeros((m, ns))
    for k, (j, sign) in enumerate(col_var):
        A_std[:, k] = sign * lp.A[:, j]
    b = lp.rhs.copy()
    rels = list(lp.relations)
    for i in range(m):
        if b[i] < 0.0:
            A_std[i] *= -1.0
            b[i] = -b[i]
            if rels[i] == LESS_EQUAL:
                rels[i] = GREATER_EQUAL
            elif rels[i] == GREATER_EQUAL:
                rels[i] = LESS_EQUAL

    ineq_rows = [i for i in range(m) if rels[i] != EQUAL]
    slack_col = {}
    slack_block = np.zeros((m, len(ineq_rows)))
    for k, i in enumerate(ineq_rows):
        slack_block[i, k] = 1.0 if rels[i] == LESS_EQUAL else -1.0
        slack_col[i] = ns + k
    art_rows = [i for i in range(m) if rels[i] != LESS_EQUAL]
    art_start = ns + len(ineq_rows)
    art_block = np.zeros((m, len(art_rows)))
    art_col = {}
    for k, i in enumerate(art_rows):
        art_block[i, k] = 1.0
        art_col[i] = art_start + k

    M = np.column_stack([A_std, slack_block, art_block, b])
    basis = np.empty(m, dtype=int)
    for i in range(m):
        basis[i] = art_col[i] if i in art_col else slack_col[i]

    bland_threshold = 3 * (m + n)
    pivots = 0
    total_cols = M.shape[1] - 1

    if art_rows:
        cost1 = np.zeros(total_cols)
        cost1[art_start:] = -1.0
        try:
            pivots, _ = _run_simplex(M, basis, cost1, bland_threshold, pivots)
        except _Unbounded:  # pragma: no cover - phase 1 objective is bounded
            raise RuntimeError("phase 1 reported unbounded; tableau is corrupt")
        infeasibility = -float(cost1[basis] @ M[:, -1])
        if infeasibility > FEASIBILITY_TOL:
            return LpOutcome(LpStatus.INFEASIBLE)
        # drive leftover artificials out of the basis, dropping redundant rows
        drop: list[int] = []
        for i in range(m):
            if basis[i] < art_start:
                continue
            options = np.nonzero(np.abs(M[i, :art_start]) > PIVOT_TOL)[0]
            if options.size:
                _pivot(M, i, int(options[0]))
                basis[i] = int(options[0])
            else:
                drop.append(i)
        if drop:
            M = np.delete(M, drop, axis=0)
            basis = np.delete(basis, drop)
        M = np.delete(M, np.s_[art_start:-1], axis=1)

    cost2 = np.zeros(M.shape[1] - 1)
    for k, (j, sign) in enumerate(col_var):
        cost2[k] = sign * lp.objective[j]

    def fold(values: np.ndarray) -> np.ndarray:
        out = np.zeros(n)
        for k, (j, sign) in enumerate(col_var):
            out[j] += sign * values[k]
        return out

    def basic_values() -> np.ndarray:
        v = np.zeros(M.shape[1] - 1)
        v[basis] = M[:, -1]
        return v

    try:
        pivots, _ = _run_simplex(M, basis, cost2, bland_threshold, pivots)
    except _Unbounded as u:
        point = fold(basic_values()[:ns])
        ray_std = np.zeros(M.shape[1] - 1)
        ray_std[u.entering] = 1.0
        ray_std[basis] = -M[:, u.entering]
        ray = fold(ray_std[:ns])
        return LpOutcome(LpStatus.UNBOUNDED, x=point, ray=ray)

    x = fold(basic_values()[:ns])
    return LpOutcome(LpStatus.OPTIMAL, x=x, objective=float(lp.objective @ x))
