"""Shared samplers and independent brute-force oracles for the test suite.

The oracles here deliberately avoid the library code paths they are used
to check: linear systems are solved by a local Gaussian elimination, LP
optima by basic-point enumeration, and polytope vertices by active-set
enumeration.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from multiwedge import QVector, Wedge

F = Fraction


def gauss_solve(rows, rhs):
    """Unique solution of a square-rank system, or None when singular.

    ``rows`` is a list of coefficient lists (may be more rows than
    columns); consistency of extra rows is NOT checked here - callers
    filter by feasibility afterwards.
    """
    n = len(rows[0])
    aug = [[F(e) for e in r] + [F(b)] for r, b in zip(rows, rhs)]
    pivot_rows = []
    used = [False] * len(aug)
    for col in range(n):
        sel = None
        for i, row in enumerate(aug):
            if not used[i] and row[col] != 0:
                sel = i
                break
        if sel is None:
            return None
        used[sel] = True
        pivot_rows.append((col, sel))
        piv = aug[sel][col]
        aug[sel] = [e / piv for e in aug[sel]]
        for i in range(len(aug)):
            if i != sel and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[sel])]
    x = [F(0)] * n
    for col, i in pivot_rows:
        x[col] = aug[i][n]
    return x


def enumerate_lp_minimum(n, objective, constraints):
    """Brute-force LP oracle: best objective over all basic feasible points.

    ``constraints`` is a list of (row, rel, rhs) with rel in <=, >=, ==.
    Returns (value, point) of the minimum, or None when no basic feasible
    point exists. Correct for LPs whose optimum is attained at a vertex
    (bounded feasible region).
    """
    best = None
    rows = [list(c[0]) for c in constraints]
    rels = [c[1] for c in constraints]
    rhs = [c[2] for c in constraints]
    m = len(rows)
    for subset in combinations(range(m), n):
        x = gauss_solve([rows[i] for i in subset], [rhs[i] for i in subset])
        if x is None:
            continue
        if not point_feasible(x, rows, rels, rhs):
            continue
        val = sum(o * xi for o, xi in zip(objective, x))
        if best is None or val < best[0]:
            best = (val, x)
    return best


def point_feasible(x, rows, rels, rhs):
    for row, rel, b in zip(rows, rels, rhs):
        v = sum(a * xi for a, xi in zip(row, x))
        if rel == "<=" and v > b:
            return False
        if rel == ">=" and v < b:
            return False
        if rel == "==" and v != b:
            return False
    return True


def polytope_vertices(eq_rows, eq_rhs, ineq_rows, ineq_rhs):
    """All vertices of {x : eq x = eq_rhs, ineq x >= ineq_rhs} by active sets."""
    n = len(eq_rows[0]) if eq_rows else len(ineq_rows[0])
    need = n - len(eq_rows)
    verts = set()
    for subset in combinations(range(len(ineq_rows)), need):
        rows = list(eq_rows) + [ineq_rows[i] for i in subset]
        rhs = list(eq_rhs) + [ineq_rhs[i] for i in subset]
        x = gauss_solve(rows, rhs)
        if x is None:
            continue
        ok = all(
            sum(a * xi for a, xi in zip(row, x)) == b for row, b in zip(rows, rhs)
        ) and all(
            sum(a * xi for a, xi in zip(row, x)) >= b
            for row, b in zip(ineq_rows, ineq_rhs)
        )
        if ok:
            verts.add(tuple(x))
    return sorted(verts)


try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = F


def _mpq_inverse(rows):
    """Gauss-Jordan inverse over rationals; None when singular."""
    n = len(rows)
    aug = [list(r) + [_mpq(1) if i == j else _mpq(0) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        sel = None
        for i in range(col, n):
            if aug[i][col] != 0:
                sel = i
                break
        if sel is None:
            return None
        aug[col], aug[sel] = aug[sel], aug[col]
        piv = aug[col][col]
        if piv != 1:
            aug[col] = [e / piv for e in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


class VertexEnumerator:
    """Active-set vertex enumeration with the factorizations reused.

    The constraint geometry {x : eq x = rhs, ineq x >= 0} is fixed per
    instance while the equality right-hand side varies, so each candidate
    active-set matrix is inverted once and reused for every rhs.
    """

    def __init__(self, eq_rows, ineq_rows):
        self.n = len(eq_rows[0]) if eq_rows else len(ineq_rows[0])
        self.eq_count = len(eq_rows)
        self.ineq = [[_mpq(e) for e in r] for r in ineq_rows]
        base = [[_mpq(e) for e in r] for r in eq_rows]
        need = self.n - self.eq_count
        self.inverses = []
        for subset in combinations(range(len(ineq_rows)), need):
            rows = [list(r) for r in base] + [list(self.ineq[i]) for i in subset]
            inv = _mpq_inverse(rows)
            if inv is not None:
                self.inverses.append(inv)

    def vertices(self, eq_rhs):
        rhs = [_mpq(e) for e in eq_rhs]
        m = self.eq_count
        seen = set()
        out = []
        for inv in self.inverses:
            point = [
                sum((inv[i][j] * rhs[j] for j in range(m)), _mpq(0))
                for i in range(self.n)
            ]
            key = tuple(point)
            if key in seen:
                continue
            feasible = True
            for row in self.ineq:
                total = _mpq(0)
                for a, e in zip(row, point):
                    if a and e:
                        total += a * e
                if total < 0:
                    feasible = False
                    break
            if not feasible:
                continue
            seen.add(key)
            out.append(tuple(F(int(e.numerator), int(e.denominator)) for e in point))
        return out


def rand_fraction(rng, lo=-4, hi=4, max_den=3):
    return F(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_vector(rng, dim, lo=-4, hi=4, max_den=3):
    return QVector([rand_fraction(rng, lo, hi, max_den) for _ in range(dim)])


def rand_wedge(rng, dim, max_vectors=None):
    """Random wedge from either generators or halfspaces (possibly trivial)."""
    count = rng.randint(1, max_vectors or dim + 1)
    vecs = []
    for _ in range(count):
        v = QVector([rng.randint(-3, 3) for _ in range(dim)])
        if not v.is_zero():
            vecs.append(v)
    if not vecs:
        vecs = [QVector.unit(dim, 0)]
    if rng.random() < 0.5:
        return Wedge(dim, generators=vecs)
    return Wedge(dim, halfspaces=vecs)


def rand_acute_cone(rng, dim, max_rays=None):
    """Pointed cone whose nonzero members all have positive first coordinate.

    Guarantees that finitely many such cones give bounded decomposition
    polytopes: no nonzero directions can cancel in a sum.
    """
    count = rng.randint(1, max_rays or dim)
    gens = []
    for _ in range(count):
        gens.append(QVector([1] + [rng.randint(-3, 3) for _ in range(dim - 1)]))
    return Wedge(dim, generators=gens)


def rand_member(rng, wedge, scale=3):
    """Random nonnegative rational combination of the wedge's generators."""
    out = QVector.zero(wedge.dim)
    for g in wedge.canonical_generators:
        out = out + F(rng.randint(0, scale), rng.randint(1, 2)) * g
    return out


@pytest.fixture
def rng():
    return random.Random(20240811)
