"""Polyhedral wedges in Q^n with dual generator/halfspace representations.

A wedge is a set closed under addition and nonnegative scaling. It is
stored either as a V-representation (conic hull of finitely many rays;
lines appear as two opposite rays) or an H-representation (intersection
of homogeneous halfspaces {x : a.x >= 0}), or both. Whichever side is
missing is computed lazily, exactly, and cached.

Conventions: an empty generator list denotes {0}; an empty halfspace list
denotes all of Q^n. Canonical representations scale every ray/normal to
coprime integer entries and sort lexicographically.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .linalg import (
    QMatrix,
    QVector,
    complement_basis,
    nullspace,
    span_rank,
    _rref_rows,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _primitive(v: QVector) -> QVector:
    """Scale by a positive rational so entries are coprime integers."""
    num_gcd = 0
    den_lcm = 1
    for e in v.entries:
        num_gcd = gcd(num_gcd, e.numerator)
        den_lcm = den_lcm * e.denominator // gcd(den_lcm, e.denominator)
    if num_gcd == 0:
        return v
    scale = Fraction(den_lcm, num_gcd)
    return QVector(e * scale for e in v.entries)


def _canonical_set(vectors: Iterable[QVector]) -> tuple[QVector, ...]:
    return tuple(sorted({_primitive(v) for v in vectors}, key=lambda v: v.entries))


def _solve_rays(normals: Sequence[QVector], dim: int) -> tuple[list[QVector], list[QVector]]:
    """Lineality basis and extreme rays of {x : a.x >= 0 for a in normals}.

    The lineality space is the common kernel of the normals. The pointed
    part lives in a greedy standard complement of it; each of its extreme
    rays is cut out by some (d-1)-subset of independent active constraints,
    so enumerating those subsets finds exactly the extreme rays.
    """
    normals = [n for n in normals if not n.is_zero()]
    if not normals:
        basis = [QVector.unit(dim, i) for i in range(dim)]
        return basis, []
    lin = nullspace(QMatrix.from_rows([n.entries for n in normals]))
    comp = complement_basis(lin, dim)
    d = len(comp)
    if d == 0:
        return lin, []
    restricted = []
    seen_rows = set()
    for a in normals:
        row = tuple(a.dot(u) for u in comp)
        key = _primitive(QVector(row)).entries
        if key in seen_rows:
            continue
        seen_rows.add(key)
        restricted.append(row)
    rays: set[QVector] = set()
    for subset in combinations(range(len(restricted)), d - 1):
        rows = [list(restricted[i]) for i in subset]
        pivots = _rref_rows(rows)
        if len(pivots) != d - 1:
            continue
        direction = [_ZERO] * d
        pivot_set = set(pivots)
        free = next(j for j in range(d) if j not in pivot_set)
        direction[free] = _ONE
        for r, pc in enumerate(pivots):
            direction[pc] = -rows[r][free]
        signs = [sum(row[j] * direction[j] for j in range(d)) for row in restricted]
        if all(s >= 0 for s in signs):
            pass
        elif all(s <= 0 for s in signs):
            direction = [-e for e in direction]
        else:
            continue
        ray = QVector.zero(dim)
        for coef, u in zip(direction, comp):
            if coef:
                ray = ray + coef * u
        rays.add(_primitive(ray))
    return lin, sorted(rays, key=lambda v: v.entries)


def hrep_to_vrep(halfspaces: Sequence[QVector], dim: int) -> list[QVector]:
    """Canonical generators of the wedge cut out by ``halfspaces``."""
    lin, rays = _solve_rays(list(halfspaces), dim)
    gens = [v for b in lin for v in (b, -b)] + rays
    return list(_canonical_set(gens))


def vrep_to_hrep(generators: Sequence[QVector], dim: int) -> list[QVector]:
    """Canonical halfspace normals of the conic hull of ``generators``.

    The normals of W are exactly the generators of the dual wedge
    {a : a.g >= 0 for all g}, so this is the same ray enumeration with the
    roles of points and normals swapped.
    """
    return hrep_to_vrep(list(generators), dim)


class Wedge:
    """A polyhedral wedge; immutable apart from an internally locked cache."""

    __slots__ = (
        "dim",
        "_generators",
        "_halfspaces",
        "_lock",
        "_computed_generators",
        "_computed_halfspaces",
        "_canon_generators",
        "_canon_halfspaces",
        "_lineality",
    )

    def __init__(
        self,
        dim: int,
        generators: Sequence[QVector] | None = None,
        halfspaces: Sequence[QVector] | None = None,
    ):
        if generators is None and halfspaces is None:
            raise ValueError("a wedge needs generators or halfspaces (or both)")
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        self._generators = None if generators is None else tuple(generators)
        self._halfspaces = None if halfspaces is None else tuple(halfspaces)
        for vs in (self._generators, self._halfspaces):
            if vs is not None and any(v.dim != dim for v in vs):
                raise ValueError("vector dimension does not match the wedge dimension")
        if self._generators is not None and self._halfspaces is not None:
            for a in self._halfspaces:
                for g in self._generators:
                    if a.dot(g) < 0:
                        raise ValueError(
                            "inconsistent double description: generator violates halfspace"
                        )
        self._lock = threading.Lock()
        self._computed_generators = None
        self._computed_halfspaces = None
        self._canon_generators = None
        self._canon_halfspaces = None
        self._lineality = None

    @property
    def generators(self) -> tuple[QVector, ...]:
        """Generators as given, or the canonical set computed from halfspaces."""
        if self._generators is not None:
            return self._generators
        with self._lock:
            if self._computed_generators is None:
                self._computed_generators = tuple(hrep_to_vrep(self._halfspaces, self.dim))
                self._canon_generators = self._computed_generators
            return self._computed_generators

    @property
    def halfspaces(self) -> tuple[QVector, ...]:
        """Halfspace normals as given, or the canonical set from generators."""
        if self._halfspaces is not None:
            return self._halfspaces
        with self._lock:
            if self._computed_halfspaces is None:
                self._computed_halfspaces = tuple(vrep_to_hrep(self._generators, self.dim))
                self._canon_halfspaces = self._computed_halfspaces
            return self._computed_halfspaces

    @property
    def canonical_halfspaces(self) -> tuple[QVector, ...]:
        """Irredundant canonical H-representation."""
        if self._canon_halfspaces is None:
            gens = self.generators
            with self._lock:
                if self._canon_halfspaces is None:
                    self._canon_halfspaces = tuple(vrep_to_hrep(gens, self.dim))
        return self._canon_halfspaces

    @property
    def canonical_generators(self) -> tuple[QVector, ...]:
        """Irredundant canonical V-representation (lineality pairs + extreme rays)."""
        if self._canon_generators is None:
            hs = self.halfspaces
            with self._lock:
                if self._canon_generators is None:
                    self._canon_generators = tuple(hrep_to_vrep(hs, self.dim))
        return self._canon_generators

    def member(self, x: QVector) -> bool:
        if x.dim != self.dim:
            raise ValueError("dimension mismatch in membership test")
        return all(a.dot(x) >= 0 for a in self.halfspaces)

    def __repr__(self) -> str:
        parts = [f"dim={self.dim}"]
        if self._generators is not None:
            parts.append(f"generators={len(self._generators)}")
        if self._halfspaces is not None:
            parts.append(f"halfspaces={len(self._halfspaces)}")
        return f"Wedge({', '.join(parts)})"

    def to_json(self, canonical: bool = False) -> dict:
        out: dict = {"dim": self.dim}
        if canonical:
            out["generators"] = [g.to_json() for g in self.canonical_generators]
            out["halfspaces"] = [h.to_json() for h in self.canonical_halfspaces]
            return out
        if self._generators is not None:
            out["generators"] = [g.to_json() for g in self._generators]
        if self._halfspaces is not None:
            out["halfspaces"] = [h.to_json() for h in self._halfspaces]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Wedge":
        if "dim" not in data:
            raise ValueError("wedge JSON needs a 'dim' field")
        dim = int(data["dim"])
        gens = data.get("generators")
        hs = data.get("halfspaces")
        return cls(
            dim,
            generators=None if gens is None else [QVector.from_json(v) for v in gens],
            halfspaces=None if hs is None else [QVector.from_json(v) for v in hs],
        )


def member(w: Wedge, x: QVector) -> bool:
    """Whether x belongs to the wedge (a.x >= 0 for every halfspace a)."""
    return w.member(x)


def wedge_sum(ws: Sequence[Wedge]) -> Wedge:
    """Smallest wedge containing every wedge in ``ws`` (union of generators)."""
    dim = _common_dim(ws)
    gens = []
    seen = set()
    for w in ws:
        for g in w.generators:
            p = _primitive(g)
            if p.entries not in seen:
                seen.add(p.entries)
                gens.append(p)
    return Wedge(dim, generators=gens)


def intersect(ws: Sequence[Wedge]) -> Wedge:
    """Intersection of wedges (union of halfspace systems)."""
    dim = _common_dim(ws)
    hs = []
    seen = set()
    for w in ws:
        for a in w.halfspaces:
            p = _primitive(a)
            if p.entries not in seen:
                seen.add(p.entries)
                hs.append(p)
    return Wedge(dim, halfspaces=hs)


def lineality(w: Wedge) -> list[QVector]:
    """Basis of D(W) = W n (-W), the largest subspace contained in W."""
    if w._lineality is None:
        hs = [a for a in w.halfspaces if not a.is_zero()]
        if not hs:
            basis = [QVector.unit(w.dim, i) for i in range(w.dim)]
        else:
            basis = [_primitive(v) for v in nullspace(QMatrix.from_rows([a.entries for a in hs]))]
        with w._lock:
            if w._lineality is None:
                w._lineality = tuple(basis)
    return list(w._lineality)


def is_cone(w: Wedge) -> bool:
    """Whether W is pointed: W n (-W) = {0}."""
    return not lineality(w)


def is_generating(w: Wedge) -> bool:
    """Whether W - W is the whole space (the generators span Q^n)."""
    return span_rank(w.generators, w.dim) == w.dim


def dual_wedge(w: Wedge) -> Wedge:
    """Dual wedge W' = {a : a.x >= 0 for all x in W}.

    The generators of W serve directly as the halfspace normals of W'.
    """
    return Wedge(w.dim, halfspaces=list(w.generators))


def wedge_equal(w1: Wedge, w2: Wedge) -> bool:
    """Set equality via mutual generator membership."""
    if w1.dim != w2.dim:
        return False
    return all(w2.member(g) for g in w1.generators) and all(
        w1.member(g) for g in w2.generators
    )


def _common_dim(ws: Sequence[Wedge]) -> int:
    if not ws:
        raise ValueError("need at least one wedge")
    dim = ws[0].dim
    if any(w.dim != dim for w in ws):
        raise ValueError("wedges have mismatched dimensions")
    return dim
