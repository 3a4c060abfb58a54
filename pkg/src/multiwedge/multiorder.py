"""Multi-bounds and multi-suprema of translated-wedge families.

A family is a list of (apex, wedge) pairs. Its multi-upper bounds form
the polyhedron P = intersection of apex_i + W_i. A point z is a
multi-supremum exactly when P = z + C with C = intersection of the W_i,
so the whole multi-supremum set is z + D(C); we find z by minimizing each
canonical normal of C over P and intersecting the resulting equalities
with P. Everything is exact LP over the rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotMultiBoundedAbove, NotMultiBoundedBelow
from .linalg import QVector, span_contains
from .lp import EQ, GE, Constraint, Infeasible, LinearProgram, Optimal, Unbounded, lp_solve
from .wedges import Wedge, intersect, lineality


@dataclass(frozen=True)
class TranslatedWedge:
    """A pair (apex, wedge); the translate is apex + wedge."""

    apex: QVector
    wedge: Wedge

    def __post_init__(self):
        if self.apex.dim != self.wedge.dim:
            raise ValueError("apex dimension does not match the wedge")

    def to_json(self) -> dict:
        return {"apex": self.apex.to_json(), "wedge": self.wedge.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "TranslatedWedge":
        return cls(QVector.from_json(data["apex"]), Wedge.from_json(data["wedge"]))


@dataclass(frozen=True)
class MultiSupSet:
    """The set of multi-suprema: witness + span(lineality_basis)."""

    witness: QVector
    lineality_basis: tuple[QVector, ...]

    @property
    def is_proper(self) -> bool:
        return not self.lineality_basis

    def contains(self, x: QVector) -> bool:
        return span_contains(self.lineality_basis, x - self.witness, self.witness.dim)

    def to_json(self) -> dict:
        return {
            "witness": self.witness.to_json(),
            "lineality": [v.to_json() for v in self.lineality_basis],
        }


@dataclass(frozen=True)
class Counterexample:
    """A multi-bounded family whose multi-supremum set is empty."""

    apexes: tuple[QVector, ...]
    wedge_indices: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "apexes": [a.to_json() for a in self.apexes],
            "wedge_indices": list(self.wedge_indices),
        }


def _family_dim(family: Sequence[TranslatedWedge]) -> int:
    if not family:
        raise ValueError("family must be nonempty")
    dim = family[0].apex.dim
    if any(tw.apex.dim != dim for tw in family):
        raise ValueError("family members have mismatched dimensions")
    return dim


def _upper_bound_constraints(family: Sequence[TranslatedWedge]) -> list[Constraint]:
    cons = []
    for tw in family:
        for a in tw.wedge.halfspaces:
            cons.append(Constraint(a, GE, a.dot(tw.apex)))
    return cons


def is_multi_upper_bound(u: QVector, family: Sequence[TranslatedWedge]) -> bool:
    """Whether u - apex_i lies in W_i for every pair of the family."""
    dim = _family_dim(family)
    if u.dim != dim:
        raise ValueError("dimension mismatch")
    return all(tw.wedge.member(u - tw.apex) for tw in family)


def multi_bounded_above(family: Sequence[TranslatedWedge]) -> QVector | None:
    """A multi-upper bound of the family, or None when none exists."""
    dim = _family_dim(family)
    cons = _upper_bound_constraints(family)
    res = lp_solve(LinearProgram(dim, QVector.zero(dim), "min", tuple(cons)))
    if isinstance(res, Infeasible):
        return None
    assert isinstance(res, Optimal)
    return res.point


def msup(
    family: Sequence[TranslatedWedge],
    *,
    _combined: tuple[Sequence[QVector], Sequence[QVector]] | None = None,
) -> MultiSupSet | None:
    """Multi-suprema of the family, None when the set is empty.

    Raises NotMultiBoundedAbove when the family has no multi-upper bound
    at all (the translate intersection P is empty); that case is an error
    by definition, distinct from an empty multi-supremum set.

    ``_combined`` optionally supplies (canonical normals, lineality basis)
    of the intersection of the family's wedges, so searches can cache the
    conversion per wedge combination.
    """
    dim = _family_dim(family)
    if _combined is None:
        cw = intersect([tw.wedge for tw in family])
        c_normals = cw.canonical_halfspaces
        c_lin = tuple(lineality(cw))
    else:
        c_normals, c_lin = _combined
    cons = _upper_bound_constraints(family)

    # Each normal of C is bounded below on P (the recession cone of a
    # nonempty P is exactly C), so the only non-Optimal outcome here is
    # an empty P, which is the not-multi-bounded error case.
    targets = []
    for a in c_normals:
        res = lp_solve(LinearProgram(dim, a, "min", tuple(cons)))
        if isinstance(res, Infeasible):
            raise NotMultiBoundedAbove("the family has no multi-upper bound")
        if isinstance(res, Unbounded):
            raise AssertionError("normal of the recession cone cannot be unbounded below")
        targets.append((a, res.value))

    eq_cons = list(cons) + [Constraint(a, EQ, m) for a, m in targets]
    res = lp_solve(LinearProgram(dim, QVector.zero(dim), "min", tuple(eq_cons)))
    if isinstance(res, Optimal):
        return MultiSupSet(res.point, tuple(c_lin))
    if not targets:
        # No normals means C is the whole space; infeasibility then means
        # P itself is empty.
        raise NotMultiBoundedAbove("the family has no multi-upper bound")
    return None


def minf(family: Sequence[TranslatedWedge]) -> MultiSupSet | None:
    """Multi-infima: the negated multi-suprema of the negated apexes."""
    negated = [TranslatedWedge(-tw.apex, tw.wedge) for tw in family]
    try:
        res = msup(negated)
    except NotMultiBoundedAbove as exc:
        raise NotMultiBoundedBelow("the family has no multi-lower bound") from exc
    if res is None:
        return None
    return MultiSupSet(-res.witness, res.lineality_basis)


def is_proper(result: MultiSupSet) -> bool:
    """Whether the multi-supremum set is a single point."""
    return result.is_proper


def sample_apex(rng: random.Random, dim: int, bound: int) -> QVector:
    """Integer point in [-bound, bound]^dim plus a denominator <= 4 perturbation."""
    entries = []
    for _ in range(dim):
        base = rng.randint(-bound, bound)
        entries.append(base + Fraction(rng.randint(-2, 2), rng.randint(1, 4)))
    return QVector(entries)


def multilattice_search(
    wedges: Sequence[Wedge],
    k: int,
    seed: int = 0,
    budget: int = 1000,
    bound: int = 5,
) -> Counterexample | None:
    """Randomized refutation of the k-multi-lattice property.

    Samples families of k pairs (wedges drawn with repetition, rational
    apexes) and returns the first multi-bounded-above family whose
    multi-supremum set is empty; None when the budget is exhausted.
    Deterministic for a fixed seed. Trials that are not multi-bounded
    above count against the budget.
    """
    if not wedges:
        raise ValueError("need at least one wedge")
    if k < 1:
        raise ValueError("arity must be at least 1")
    dim = wedges[0].dim
    rng = random.Random(seed)
    combo_cache: dict[tuple[int, ...], tuple[tuple[QVector, ...], tuple[QVector, ...]]] = {}
    for _ in range(budget):
        indices = tuple(rng.randrange(len(wedges)) for _ in range(k))
        apexes = tuple(sample_apex(rng, dim, bound) for _ in range(k))
        key = tuple(sorted(set(indices)))
        if key not in combo_cache:
            cw = intersect([wedges[i] for i in key])
            combo_cache[key] = (cw.canonical_halfspaces, tuple(lineality(cw)))
        family = [TranslatedWedge(a, wedges[i]) for a, i in zip(apexes, indices)]
        try:
            res = msup(family, _combined=combo_cache[key])
        except NotMultiBoundedAbove:
            continue
        if res is None:
            return Counterexample(apexes, indices)
    return None
