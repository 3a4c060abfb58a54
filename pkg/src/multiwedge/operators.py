"""Positive operators between wedge-ordered spaces and their multi-suprema.

Operators are plain QMatrix values (codomain_dim x domain_dim). The heart
of the module is op_msup: the pointwise supremum values

    sup { sum_i T_i(y_i) : y_i in W_i, sum_i y_i = x }

are computed by exact LP for each canonical generator x of the sum wedge,
projected along the lineality of the codomain wedge, and assembled into a
linear representative. When the domain family lacks the decomposition
property this assembly is impossible or produces a non-dominating map,
and the failure is reported instead of silently returning a wrong answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    InconsistentValues,
    InvalidInstance,
    NoMultiSupremum,
    NotInSumWedge,
    NotMultiBoundedAbove,
    NotMultiBoundedBelow,
    RDPViolated,
    ZeroSpace,
)
from .linalg import (
    QMatrix,
    QVector,
    complement_basis,
    independent_indices,
    matrix_inverse,
    nullspace,
)
from .lp import EQ, GE, Constraint, Infeasible, LinearProgram, Optimal, Unbounded, lp_solve
from .multiorder import MultiSupSet
from .wedges import Wedge, intersect, is_cone, is_generating, lineality, wedge_sum

_ZERO = Fraction(0)
_ONE = Fraction(1)

LinearOperator = QMatrix


@dataclass(frozen=True)
class ProjectionPair:
    """Complementary projections: p_d onto D(V), p_u = I - p_d onto U."""

    p_d: QMatrix
    p_u: QMatrix


@dataclass(frozen=True)
class OperatorMSupResult:
    """Multi-supremum set of operators: representative + span(lineality_ops)."""

    representative: QMatrix
    lineality_ops: tuple[QMatrix, ...]

    @property
    def is_proper(self) -> bool:
        return not self.lineality_ops

    def to_json(self) -> dict:
        return {
            "representative": self.representative.to_json(),
            "lineality_ops": [t.to_json() for t in self.lineality_ops],
        }


def op_is_positive(t: QMatrix, w: Wedge, v: Wedge) -> bool:
    """Whether T(W) is contained in V, tested on the generators of W."""
    if t.cols != w.dim or t.rows != v.dim:
        raise ValueError("operator shape does not match the wedges")
    return all(v.member(t.apply(g)) for g in w.generators)


def op_wedge_lineality(ws: Sequence[Wedge], vs: Sequence[Wedge]) -> list[QMatrix]:
    """Basis of the operator subspace {T : T(sum of W_i) in D(intersection of V_j)}.

    This is the lineality space of the intersection of the positivity
    wedges, expressed as a homogeneous linear system on matrix entries.
    """
    if not ws or not vs:
        raise ValueError("need at least one domain wedge and one codomain wedge")
    q = ws[0].dim
    p = vs[0].dim
    d_basis = lineality(intersect(vs))
    if len(d_basis) == p:
        annihilator: list[QVector] = []
    elif d_basis:
        annihilator = nullspace(QMatrix.from_rows([d.entries for d in d_basis]))
    else:
        annihilator = [QVector.unit(p, i) for i in range(p)]
    gens = wedge_sum(ws).canonical_generators
    rows = []
    for g in gens:
        for r in annihilator:
            row = [_ZERO] * (p * q)
            for a in range(p):
                ra = r[a]
                if ra:
                    for c in range(q):
                        if g[c]:
                            row[a * q + c] = ra * g[c]
            rows.append(row)
    if not rows:
        flat_basis = [QVector.unit(p * q, i) for i in range(p * q)]
    else:
        flat_basis = nullspace(QMatrix.from_rows(rows))
    return [QMatrix(p, q, v.entries) for v in flat_basis]


def op_wedge_is_cone(ws: Sequence[Wedge], vs: Sequence[Wedge]) -> bool:
    """Pointedness criterion for the intersection of operator positivity wedges."""
    if not ws or not vs:
        raise ValueError("need at least one domain wedge and one codomain wedge")
    if ws[0].dim == 0 or vs[0].dim == 0:
        raise ZeroSpace("ambient spaces must be nonzero")
    return is_generating(wedge_sum(ws)) and is_cone(intersect(vs))


def extend_additive(
    domain_wedge: Wedge,
    values: Mapping[QVector, QVector],
    codomain_dim: int,
    *,
    complement_order: str = "forward",
) -> QMatrix:
    """Extend generator values to a linear map, zero on a standard complement.

    Picks a maximal independent subset of the wedge's generators (in
    listed order), solves for a matrix matching it, and verifies that the
    remaining generators agree; raises InconsistentValues otherwise. When
    the wedge is generating the complement is empty, so the extension is
    the unique one.
    """
    if complement_order not in ("forward", "backward"):
        raise ValueError("complement_order must be 'forward' or 'backward'")
    dim = domain_wedge.dim
    gens = domain_wedge.generators
    for g in gens:
        if g not in values:
            raise ValueError("a value is required for every generator of the wedge")
    kept = independent_indices(gens, dim)
    basis = [gens[i] for i in kept]
    comp = complement_basis(basis, dim, reverse=(complement_order == "backward"))
    cols = list(basis) + list(comp)
    m = QMatrix.from_cols(cols, nrows=dim)
    value_cols = [values[g] for g in basis] + [QVector.zero(codomain_dim)] * len(comp)
    v = QMatrix.from_cols(value_cols, nrows=codomain_dim)
    t = v @ matrix_inverse(m)
    for g in gens:
        if t.apply(g) != values[g]:
            raise InconsistentValues(
                "generator values are not the restriction of any linear map"
            )
    return t


def projections(v_wedge: Wedge) -> ProjectionPair:
    """Projection onto D(V) along the greedy standard complement, and I minus it."""
    p = v_wedge.dim
    d_basis = lineality(v_wedge)
    comp = complement_basis(d_basis, p)
    m = QMatrix.from_cols(list(d_basis) + list(comp), nrows=p)
    selector = QMatrix(
        p,
        p,
        [
            _ONE if (i == j and i < len(d_basis)) else _ZERO
            for i in range(p)
            for j in range(p)
        ],
    )
    p_d = m @ selector @ matrix_inverse(m)
    return ProjectionPair(p_d, QMatrix.identity(p) - p_d)


@dataclass(frozen=True)
class RDPInstance:
    """Data of a decomposition instance: wedges W_j, vectors x_i and y_j.

    Invariants: y_j in W_j, every x_i in the sum of the W_j, and the two
    sums agree.
    """

    wedges: tuple[Wedge, ...]
    xs: tuple[QVector, ...]
    ys: tuple[QVector, ...]

    @property
    def dim(self) -> int:
        return self.wedges[0].dim

    def validate(self, _sum_wedge: Wedge | None = None) -> None:
        if not self.wedges or not self.xs:
            raise InvalidInstance("need at least one wedge and one x")
        if len(self.wedges) != len(self.ys):
            raise InvalidInstance("one y per wedge is required")
        dim = self.dim
        if any(w.dim != dim for w in self.wedges) or any(
            v.dim != dim for v in self.xs + self.ys
        ):
            raise InvalidInstance("mismatched dimensions")
        for w, y in zip(self.wedges, self.ys):
            if not w.member(y):
                raise InvalidInstance("some y_j is not a member of its wedge")
        total_x = QVector.zero(dim)
        for x in self.xs:
            total_x = total_x + x
        total_y = QVector.zero(dim)
        for y in self.ys:
            total_y = total_y + y
        if total_x != total_y:
            raise InvalidInstance("sum of xs does not equal sum of ys")
        sw = _sum_wedge if _sum_wedge is not None else wedge_sum(self.wedges)
        for x in self.xs:
            if not sw.member(x):
                raise InvalidInstance("some x_i is outside the sum of the wedges")

    def to_json(self) -> dict:
        return {
            "wedges": [w.to_json() for w in self.wedges],
            "xs": [x.to_json() for x in self.xs],
            "ys": [y.to_json() for y in self.ys],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RDPInstance":
        return cls(
            tuple(Wedge.from_json(w) for w in data["wedges"]),
            tuple(QVector.from_json(x) for x in data["xs"]),
            tuple(QVector.from_json(y) for y in data["ys"]),
        )


def decomposition_ok(inst: RDPInstance, z: Sequence[Sequence[QVector]]) -> bool:
    """Check a witness matrix: memberships plus exact row and column sums."""
    m, n, dim = len(inst.xs), len(inst.wedges), inst.dim
    if len(z) != m or any(len(row) != n for row in z):
        return False
    for row in z:
        for w, zij in zip(inst.wedges, row):
            if not w.member(zij):
                return False
    for i in range(m):
        total = QVector.zero(dim)
        for j in range(n):
            total = total + z[i][j]
        if total != inst.xs[i]:
            return False
    for j in range(n):
        total = QVector.zero(dim)
        for i in range(m):
            total = total + z[i][j]
        if total != inst.ys[j]:
            return False
    return True


def rdp_check(
    inst: RDPInstance, *, _sum_wedge: Wedge | None = None
) -> list[list[QVector]] | None:
    """Find z_ij in W_j with row sums x_i and column sums y_j, or None.

    Exact LP feasibility in the stacked z variables; None means no
    decomposition exists (the instance witnesses a decomposition failure).
    """
    inst.validate(_sum_wedge)
    m, n, dim = len(inst.xs), len(inst.wedges), inst.dim
    nvars = m * n * dim

    def var(i: int, j: int, c: int) -> int:
        return (i * n + j) * dim + c

    cons = []
    for i in range(m):
        for j, w in enumerate(inst.wedges):
            for a in w.halfspaces:
                row = [_ZERO] * nvars
                for c in range(dim):
                    if a[c]:
                        row[var(i, j, c)] = a[c]
                cons.append(Constraint(QVector(row), GE, _ZERO))
    for i in range(m):
        for c in range(dim):
            row = [_ZERO] * nvars
            for j in range(n):
                row[var(i, j, c)] = _ONE
            cons.append(Constraint(QVector(row), EQ, inst.xs[i][c]))
    for j in range(n):
        for c in range(dim):
            row = [_ZERO] * nvars
            for i in range(m):
                row[var(i, j, c)] = _ONE
            cons.append(Constraint(QVector(row), EQ, inst.ys[j][c]))

    res = lp_solve(LinearProgram(nvars, QVector.zero(nvars), "min", tuple(cons)))
    if isinstance(res, Infeasible):
        return None
    assert isinstance(res, Optimal)
    point = res.point
    return [
        [QVector(point[var(i, j, c)] for c in range(dim)) for j in range(n)]
        for i in range(m)
    ]


def _random_member(rng: random.Random, w: Wedge) -> QVector:
    """Random nonnegative rational combination of the canonical generators."""
    out = QVector.zero(w.dim)
    for g in w.canonical_generators:
        coef = Fraction(rng.randint(0, 3), rng.randint(1, 2))
        if coef:
            out = out + coef * g
    return out


def rdp_search(
    wedges: Sequence[Wedge],
    m: int,
    n: int,
    seed: int = 0,
    budget: int = 500,
) -> RDPInstance | None:
    """Randomized refutation of the (m, n) decomposition property.

    Samples y_j from n wedges (drawn with repetition), splits their sum
    into m pieces inside the sum wedge, and returns the first instance
    rdp_check reports infeasible; None when the budget runs out.
    Deterministic for a fixed seed.
    """
    if not wedges:
        raise ValueError("need at least one wedge")
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    rng = random.Random(seed)
    sum_cache: dict[tuple[int, ...], Wedge] = {}
    for _ in range(budget):
        js = tuple(rng.randrange(len(wedges)) for _ in range(n))
        key = tuple(sorted(set(js)))
        if key not in sum_cache:
            sum_cache[key] = wedge_sum([wedges[i] for i in key])
        sw = sum_cache[key]
        ys = [_random_member(rng, wedges[j]) for j in js]
        total = QVector.zero(sw.dim)
        for y in ys:
            total = total + y
        xs = [_random_member(rng, sw) for _ in range(m - 1)]
        last = total
        for x in xs:
            last = last - x
        if not sw.member(last):
            continue
        xs.append(last)
        inst = RDPInstance(tuple(wedges[j] for j in js), tuple(xs), tuple(ys))
        if rdp_check(inst, _sum_wedge=sw) is None:
            return inst
    return None


def _coordinate_wedge(s_size: int, s: int) -> Wedge:
    return Wedge(s_size, halfspaces=[QVector.unit(s_size, s)])


def fs_decompose(
    s_size: int,
    js: Sequence[int],
    xs: Sequence[QVector],
    ys: Sequence[QVector],
) -> list[list[QVector]]:
    """Constructive decomposition over coordinate wedges {f : f(s_j) >= 0}.

    When all the wedges coincide the shared coordinate is split by the
    scalar decomposition of nonnegative reals (northwest-corner filling)
    and the free coordinates by an explicit transportation pattern. When
    two wedges differ, the first n-1 rows are split between columns 1 and
    j2 by a case formula that vanishes on the constrained coordinate of
    its column, and the last row absorbs the remainder.
    """
    nx, my = len(xs), len(ys)
    if nx < 1 or my < 1 or len(js) != my:
        raise InvalidInstance("need xs, ys, and one wedge index per y")
    if any(not (0 <= j < s_size) for j in js):
        raise InvalidInstance("wedge index out of range")
    if any(v.dim != s_size for v in list(xs) + list(ys)):
        raise InvalidInstance("vector dimension must equal the index set size")
    for j, y in zip(js, ys):
        if y[j] < 0:
            raise InvalidInstance("some y_j is not a member of its wedge")
    total_x = QVector.zero(s_size)
    for x in xs:
        total_x = total_x + x
    total_y = QVector.zero(s_size)
    for y in ys:
        total_y = total_y + y
    if total_x != total_y:
        raise InvalidInstance("sum of xs does not equal sum of ys")

    if nx == 1:
        return [list(ys)]
    if my == 1:
        if any(x[js[0]] < 0 for x in xs):
            raise InvalidInstance("some x_i is outside the sum of the wedges")
        return [[x] for x in xs]

    if all(j == js[0] for j in js):
        s = js[0]
        if any(x[s] < 0 for x in xs):
            raise InvalidInstance("some x_i is outside the sum of the wedges")
        shared = _northwest(
            [x[s] for x in xs], [y[s] for y in ys]
        )
        z = [[[_ZERO] * s_size for _ in range(my)] for _ in range(nx)]
        for i in range(nx):
            for j in range(my):
                z[i][j][s] = shared[i][j]
        for t in range(s_size):
            if t == s:
                continue
            for i in range(nx - 1):
                z[i][0][t] = xs[i][t]
            acc = xs[nx - 1][t]
            for j in range(1, my):
                z[nx - 1][j][t] = ys[j][t]
                acc -= ys[j][t]
            z[nx - 1][0][t] = acc
        return [[QVector(cell) for cell in row] for row in z]

    s0 = js[0]
    j2 = next(j for j in range(my) if js[j] != s0)
    z: list[list[QVector]] = []
    for i in range(nx - 1):
        row = []
        for j in range(my):
            if j == 0:
                row.append(QVector(_ZERO if t == s0 else xs[i][t] for t in range(s_size)))
            elif j == j2:
                row.append(QVector(xs[i][t] if t == s0 else _ZERO for t in range(s_size)))
            else:
                row.append(QVector.zero(s_size))
        z.append(row)
    last = []
    for j in range(my):
        rem = ys[j]
        for i in range(nx - 1):
            rem = rem - z[i][j]
        last.append(rem)
    z.append(last)
    return z


def _northwest(rows: list[Fraction], cols: list[Fraction]) -> list[list[Fraction]]:
    """Transportation filling of nonnegative row/column sums."""
    rem_r = list(rows)
    rem_c = list(cols)
    out = [[_ZERO] * len(cols) for _ in rows]
    i = j = 0
    while i < len(rows) and j < len(cols):
        t = min(rem_r[i], rem_c[j])
        out[i][j] = t
        rem_r[i] -= t
        rem_c[j] -= t
        if rem_r[i] == 0 and i < len(rows) - 1:
            i += 1
        elif rem_c[j] == 0 and j < len(cols) - 1:
            j += 1
        elif rem_r[i] == 0 and rem_c[j] == 0:
            break
        elif rem_r[i] == 0:
            i += 1
        else:
            j += 1
    return out


def _value_constraints(
    ops: Sequence[QMatrix], wedges: Sequence[Wedge], x: QVector
) -> tuple[int, list[Constraint]]:
    k = len(ops)
    q = wedges[0].dim
    nvars = k * q
    cons = []
    for i, w in enumerate(wedges):
        for a in w.halfspaces:
            row = [_ZERO] * nvars
            for c in range(q):
                if a[c]:
                    row[i * q + c] = a[c]
            cons.append(Constraint(QVector(row), GE, _ZERO))
    for c in range(q):
        row = [_ZERO] * nvars
        for i in range(k):
            row[i * q + c] = _ONE
        cons.append(Constraint(QVector(row), EQ, x[c]))
    return nvars, cons


def _check_rk_shapes(
    ops: Sequence[QMatrix], wedges: Sequence[Wedge], v_wedge: Wedge
) -> tuple[int, int]:
    if not ops or len(ops) != len(wedges):
        raise ValueError("need one operator per domain wedge")
    q = wedges[0].dim
    p = v_wedge.dim
    if any(w.dim != q for w in wedges):
        raise ValueError("domain wedges have mismatched dimensions")
    if any(t.cols != q or t.rows != p for t in ops):
        raise ValueError("operator shapes do not match the wedges")
    return p, q


def rk_value(
    ops: Sequence[QMatrix],
    wedges: Sequence[Wedge],
    v_wedge: Wedge,
    x: QVector,
) -> MultiSupSet:
    """Multi-supremum over V of { sum_i T_i(y_i) : y_i in W_i, sum y_i = x }.

    For each canonical normal b of V the exact LP supremum s_b of
    b . sum T_i(y_i) is computed over the decompositions of x; a point z
    with b . z = s_b for every b, together with the lineality of V,
    describes the full multi-supremum set.
    """
    p, q = _check_rk_shapes(ops, wedges, v_wedge)
    if x.dim != q:
        raise ValueError("x dimension does not match the domain")
    nvars, cons = _value_constraints(ops, wedges, x)
    normals = v_wedge.canonical_halfspaces
    v_lin = tuple(lineality(v_wedge))

    if not normals:
        res = lp_solve(LinearProgram(nvars, QVector.zero(nvars), "min", tuple(cons)))
        if isinstance(res, Infeasible):
            raise NotInSumWedge("x is not in the sum of the domain wedges")
        return MultiSupSet(QVector.zero(p), v_lin)

    sups = []
    for b in normals:
        objective = [_ZERO] * nvars
        for i, t in enumerate(ops):
            bt = t.transpose().apply(b)
            for c in range(q):
                objective[i * q + c] = bt[c]
        res = lp_solve(LinearProgram(nvars, QVector(objective), "max", tuple(cons)))
        if isinstance(res, Infeasible):
            raise NotInSumWedge("x is not in the sum of the domain wedges")
        if isinstance(res, Unbounded):
            raise NotMultiBoundedAbove("the value set is unbounded in the V order")
        sups.append((b, res.value))

    eq_cons = tuple(Constraint(b, EQ, s) for b, s in sups)
    res = lp_solve(LinearProgram(p, QVector.zero(p), "min", eq_cons))
    if isinstance(res, Infeasible):
        raise NoMultiSupremum(
            "the codomain wedge admits no multi-supremum for this value set"
        )
    assert isinstance(res, Optimal)
    return MultiSupSet(res.point, v_lin)


def _assert_multi_bounded(
    ops: Sequence[QMatrix], wedges: Sequence[Wedge], v_wedge: Wedge, p: int, q: int
) -> None:
    """LP feasibility of an operator S with S - T_i positive for every i."""
    nvars = p * q
    cons = []
    for t, w in zip(ops, wedges):
        for g in w.generators:
            tg = t.apply(g)
            for b in v_wedge.halfspaces:
                row = [_ZERO] * nvars
                for a in range(p):
                    ba = b[a]
                    if ba:
                        for c in range(q):
                            if g[c]:
                                row[a * q + c] = ba * g[c]
                cons.append(Constraint(QVector(row), GE, b.dot(tg)))
    res = lp_solve(LinearProgram(nvars, QVector.zero(nvars), "min", tuple(cons)))
    if isinstance(res, Infeasible):
        raise NotMultiBoundedAbove("no operator dominates the whole family")


def op_msup(
    ops: Sequence[QMatrix], wedges: Sequence[Wedge], v_wedge: Wedge
) -> OperatorMSupResult:
    """Multi-supremum of (T_i, L_{W_i,V}) as representative + operator lineality.

    The representative is zero on the complement of the span of the sum
    wedge; the full multi-supremum set is recovered by adding the span of
    ``lineality_ops``. Raises RDPViolated when the supremum values fail to
    extend additively or the assembled map does not dominate every T_i:
    both certify that the domain family lacks the required decomposition
    property.
    """
    p, q = _check_rk_shapes(ops, wedges, v_wedge)
    _assert_multi_bounded(ops, wedges, v_wedge, p, q)
    proj = projections(v_wedge)
    sum_gens = wedge_sum(wedges).canonical_generators
    sw = Wedge(q, generators=list(sum_gens))
    values = {}
    for g in sum_gens:
        ms = rk_value(ops, wedges, v_wedge, g)
        values[g] = proj.p_u.apply(ms.witness)
    try:
        rep = extend_additive(sw, values, p)
    except InconsistentValues as exc:
        raise RDPViolated(
            "supremum values are not additive on the generators of the sum wedge"
        ) from exc
    for t, w in zip(ops, wedges):
        if not op_is_positive(rep - t, w, v_wedge):
            raise RDPViolated(
                "assembled representative does not dominate the family; "
                "the decomposition hypothesis fails for these wedges"
            )
    return OperatorMSupResult(rep, tuple(op_wedge_lineality(wedges, [v_wedge])))


def functional_msup(
    phis: Sequence[QVector], wedges: Sequence[Wedge]
) -> OperatorMSupResult:
    """Specialization of op_msup to functionals (codomain Q with wedge Q+)."""
    if not phis:
        raise ValueError("need at least one functional")
    q = phis[0].dim
    ops = [QMatrix(1, q, phi.entries) for phi in phis]
    positive_ray = Wedge(
        1, generators=[QVector([_ONE])], halfspaces=[QVector([_ONE])]
    )
    return op_msup(ops, wedges, positive_ray)


def op_minf(
    ops: Sequence[QMatrix], wedges: Sequence[Wedge], v_wedge: Wedge
) -> OperatorMSupResult:
    """Multi-infimum via negation of the multi-supremum of the negated family."""
    try:
        res = op_msup([-t for t in ops], wedges, v_wedge)
    except NotMultiBoundedAbove as exc:
        raise NotMultiBoundedBelow("no operator is dominated by the whole family") from exc
    return OperatorMSupResult(-res.representative, res.lineality_ops)
