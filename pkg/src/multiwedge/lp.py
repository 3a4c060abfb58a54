"""Exact rational linear programming: two-phase primal simplex.

Variables are unrestricted in sign by default and split internally.
Bland's pivot rule is used throughout, so every solve terminates and the
result is deterministic for identical input. All outcomes (Optimal,
Unbounded, Infeasible) are returned as values, never raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import QVector, qparse

try:  # gmp-backed rationals make the tableau arithmetic ~10x faster
    from gmpy2 import mpq as _tq
except ImportError:  # pragma: no cover - gmpy2 is an optional accelerator
    _tq = Fraction

_ZERO = _tq(0)
_ONE = _tq(1)


def _to_fraction(e) -> Fraction:
    # Keep plain-int internals so round trips through _tq stay valid.
    return Fraction(int(e.numerator), int(e.denominator))

LE, GE, EQ = "<=", ">=", "=="
_RELATIONS = (LE, GE, EQ)


@dataclass(frozen=True)
class Constraint:
    row: QVector
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in _RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")


@dataclass(frozen=True)
class LinearProgram:
    n: int
    objective: QVector
    sense: str = "min"
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        if self.objective.dim != self.n:
            raise ValueError("objective length must equal the variable count")
        for c in self.constraints:
            if c.row.dim != self.n:
                raise ValueError("constraint row length must equal the variable count")


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    point: QVector
    # Constraint multipliers y with A^T y = objective and y . rhs = value;
    # populated on direct solves, see lp_solve.
    dual: tuple[Fraction, ...] | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Unbounded:
    ray: QVector


@dataclass(frozen=True)
class Infeasible:
    pass


LPResult = Optimal | Unbounded | Infeasible


def constraint(row, rel, rhs) -> Constraint:
    """Convenience constructor coercing entries to rationals."""
    return Constraint(QVector(row), rel, qparse(rhs))


def lp_solve(p: LinearProgram) -> LPResult:
    """Solve exactly; deterministic via Bland's rule.

    Optimal carries the attaining point and dual multipliers for the rows
    as given (for 'min': >= rows get dual >= 0, <= rows dual <= 0, == rows
    free; signs flip for 'max'). Unbounded carries a feasible recession
    direction that strictly improves the objective.
    """
    c = [_tq(e) for e in p.objective.entries]
    if p.sense == "max":
        c = [-e for e in c]
    rows = [[_tq(e) for e in con.row.entries] for con in p.constraints]
    rels = [con.rel for con in p.constraints]
    rhs = [_tq(con.rhs) for con in p.constraints]
    status, point, duals = _simplex(p.n, c, rows, rels, rhs)
    if status == "infeasible":
        return Infeasible()
    if status == "unbounded":
        return Unbounded(QVector(_to_fraction(e) for e in point))
    x = QVector(_to_fraction(e) for e in point)
    value = p.objective.dot(x)
    if p.sense == "max":
        duals = [-y for y in duals]
    return Optimal(value, x, tuple(_to_fraction(y) for y in duals))


def _simplex(n, c, rows, rels, rhs):
    """Minimize c.x subject to rows[i] . x (rels[i]) rhs[i], x free.

    Returns ("optimal", x, duals) | ("unbounded", ray, None) |
    ("infeasible", None, None) with x/ray in the original n variables.
    """
    m = len(rows)
    # Normalize to nonnegative right-hand sides.
    flipped = [False] * m
    work_rows, work_rels, work_rhs = [], [], []
    for i in range(m):
        r, rel, b = rows[i], rels[i], rhs[i]
        if b < 0:
            r = [-e for e in r]
            b = -b
            rel = LE if rel == GE else (GE if rel == LE else EQ)
            flipped[i] = True
        work_rows.append(r)
        work_rels.append(rel)
        work_rhs.append(b)

    # Columns: x+ (n), x- (n), one slack/surplus per inequality row, then
    # one artificial per row (kept in the tableau as dual markers).
    nslack = sum(1 for rel in work_rels if rel != EQ)
    ncols = 2 * n + nslack + m
    art0 = 2 * n + nslack

    tableau = []
    basis = []
    slack_idx = 2 * n
    for i in range(m):
        row = [_ZERO] * (ncols + 1)
        for j, e in enumerate(work_rows[i]):
            if e:
                row[j] = e
                row[n + j] = -e
        if work_rels[i] == LE:
            row[slack_idx] = _ONE
            basic = slack_idx
            slack_idx += 1
        elif work_rels[i] == GE:
            row[slack_idx] = -_ONE
            basic = art0 + i
            slack_idx += 1
        else:
            basic = art0 + i
        row[art0 + i] = _ONE
        row[ncols] = work_rhs[i]
        tableau.append(row)
        basis.append(basic)

    # Phase 1: minimize the sum of artificial variables.
    if any(b >= art0 for b in basis):
        cost1 = [_ZERO] * ncols
        for j in range(art0, ncols):
            cost1[j] = _ONE
        status, _ = _run(tableau, basis, cost1, ncols, banned_from=None)
        if status != "optimal":
            raise AssertionError("phase 1 cannot be unbounded")
        if _objective_value(tableau, basis, cost1) != 0:
            return "infeasible", None, None
        _drive_out_artificials(tableau, basis, art0)

    # Phase 2: original (split) objective; artificials may not re-enter.
    cost2 = [_ZERO] * ncols
    for j in range(n):
        cost2[j] = c[j]
        cost2[n + j] = -c[j]
    status, info = _run(tableau, basis, cost2, ncols, banned_from=art0)
    if status == "unbounded":
        ray_cols = info
        ray = [ray_cols[j] - ray_cols[n + j] for j in range(n)]
        return "unbounded", ray, None

    values = [_ZERO] * ncols
    for row, b in zip(tableau, basis):
        values[b] = row[-1]
    x = [values[j] - values[n + j] for j in range(n)]

    # Duals from the reduced costs of the artificial marker columns: the
    # marker block holds the accumulated row transform, so -reduced there is
    # c_B B^{-1} per original row. The split variables force A^T y = c for
    # every original column, and slack-column optimality gives the signs,
    # so the certificate stays valid even when redundant rows were dropped.
    reduced = _reduced_costs(tableau, basis, cost2, ncols)
    duals = [-reduced[art0 + i] for i in range(m)]
    for i in range(m):
        if flipped[i]:
            duals[i] = -duals[i]
    return "optimal", x, duals


def _objective_value(tableau, basis, cost):
    return sum((cost[b] * row[-1] for row, b in zip(tableau, basis)), _ZERO)


def _reduced_costs(tableau, basis, cost, ncols):
    reduced = list(cost)
    for row, b in zip(tableau, basis):
        cb = cost[b]
        if cb:
            for j in range(ncols):
                if row[j]:
                    reduced[j] -= cb * row[j]
    return reduced


def _run(tableau, basis, cost, ncols, banned_from):
    """Bland-rule simplex iterations for one phase.

    Returns ("optimal", None) or ("unbounded", ray_in_column_space).
    """
    reduced = _reduced_costs(tableau, basis, cost, ncols)
    while True:
        enter = -1
        for j in range(ncols):
            if banned_from is not None and j >= banned_from:
                break
            if reduced[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal", None
        # Ratio test; ties broken by smallest basic variable index (Bland).
        leave = -1
        best = None
        for i, row in enumerate(tableau):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            ray = [_ZERO] * ncols
            ray[enter] = _ONE
            for i, row in enumerate(tableau):
                if basis[i] < ncols:
                    ray[basis[i]] = -row[enter]
            return "unbounded", ray
        _pivot(tableau, reduced, leave, enter)
        basis[leave] = enter


def _pivot(tableau, reduced, leave, enter):
    # In-place rational pivot; iterate only over the nonzero pivot-row
    # columns, which dominates running time on these sparse tableaus.
    prow = tableau[leave]
    piv = prow[enter]
    nz = [j for j, e in enumerate(prow) if e]
    if piv != 1:
        inv = 1 / piv
        for j in nz:
            prow[j] *= inv
    for i, row in enumerate(tableau):
        if i == leave:
            continue
        f = row[enter]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
    f = reduced[enter]
    if f:
        ncols = len(reduced)
        for j in nz:
            if j < ncols:
                reduced[j] -= f * prow[j]


def _drive_out_artificials(tableau, basis, art0):
    """Pivot basic artificials out after phase 1; drop redundant rows."""
    i = 0
    while i < len(tableau):
        if basis[i] >= art0:
            row = tableau[i]
            pivot_col = -1
            for j in range(art0):
                if row[j]:
                    pivot_col = j
                    break
            if pivot_col >= 0:
                dummy = [_ZERO] * len(row)
                _pivot(tableau, dummy, i, pivot_col)
                basis[i] = pivot_col
            else:
                del tableau[i]
                del basis[i]
                continue
        i += 1
