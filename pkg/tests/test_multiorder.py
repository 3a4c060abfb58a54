import random
from fractions import Fraction as F

import pytest

from multiwedge import (
    NotMultiBoundedAbove,
    NotMultiBoundedBelow,
    QVector,
    TranslatedWedge,
    Wedge,
    intersect,
    is_multi_upper_bound,
    is_proper,
    lineality,
    minf,
    msup,
    multi_bounded_above,
    multilattice_search,
    span_contains,
)

from conftest import rand_vector, rand_wedge

V = QVector


def halfplane(normal):
    return Wedge(2, halfspaces=[V(normal)])


def w123():
    return halfplane([1, 0]), halfplane([0, 1]), halfplane([1, 1])


def triple_family():
    w1, w2, w3 = w123()
    return [
        TranslatedWedge(V([0, 0]), w1),
        TranslatedWedge(V([0, 0]), w2),
        TranslatedWedge(V([1, 1]), w3),
    ]


def test_upper_bound_examples():
    fam = triple_family()
    assert is_multi_upper_bound(V([2, 2]), fam)
    assert not is_multi_upper_bound(V([0, 0]), fam)
    single = [TranslatedWedge(V([3, -1]), halfplane([1, 2]))]
    assert is_multi_upper_bound(V([3, -1]), single)


def test_multi_bounded_above_overlapping_halflines():
    # translates [-1, oo) and (-oo, 1] along the x-axis overlap
    fam = [
        TranslatedWedge(V([-1, 0]), halfplane([1, 0])),
        TranslatedWedge(V([1, 0]), halfplane([-1, 0])),
    ]
    witness = multi_bounded_above(fam)
    assert witness is not None
    assert is_multi_upper_bound(witness, fam)
    # cross-check against a grid feasibility oracle
    grid_hit = any(
        is_multi_upper_bound(V([F(i, 2), F(j, 2)]), fam)
        for i in range(-8, 9)
        for j in range(-8, 9)
    )
    assert grid_hit


def test_multi_bounded_above_disjoint_translates():
    ray_pos = Wedge(1, halfspaces=[V([1])])
    ray_neg = Wedge(1, halfspaces=[V([-1])])
    fam = [TranslatedWedge(V([1]), ray_pos), TranslatedWedge(V([-1]), ray_neg)]
    assert multi_bounded_above(fam) is None
    grid_hit = any(is_multi_upper_bound(V([F(i, 2)]), fam) for i in range(-20, 21))
    assert not grid_hit


def test_single_pair_bounded_with_apex_witness():
    w = halfplane([1, 1])
    fam = [TranslatedWedge(V([2, 5]), w)]
    witness = multi_bounded_above(fam)
    assert witness is not None and is_multi_upper_bound(witness, fam)


def test_msup_triple_empty():
    assert msup(triple_family()) is None


def test_msup_pair_proper_origin():
    w1, w2, _ = w123()
    res = msup([TranslatedWedge(V([0, 0]), w1), TranslatedWedge(V([0, 0]), w2)])
    assert res is not None
    assert res.witness == V([0, 0])
    assert is_proper(res)


def test_msup_single_pair():
    w = halfplane([1, 1])
    apex = V([3, -2])
    res = msup([TranslatedWedge(apex, w)])
    assert res is not None
    # witness may differ from the apex only along the lineality of W
    assert span_contains(res.lineality_basis, res.witness - apex, 2)
    assert [v.entries for v in res.lineality_basis] == [
        v.entries for v in lineality(w)
    ]


def test_msup_not_bounded_raises():
    ray_pos = Wedge(1, halfspaces=[V([1])])
    ray_neg = Wedge(1, halfspaces=[V([-1])])
    fam = [TranslatedWedge(V([1]), ray_pos), TranslatedWedge(V([-1]), ray_neg)]
    with pytest.raises(NotMultiBoundedAbove):
        msup(fam)


def test_minf_mirrors_msup():
    fam = triple_family()
    neg = [TranslatedWedge(-tw.apex, tw.wedge) for tw in fam]
    assert minf(neg) is None
    w1, w2, _ = w123()
    res = minf([TranslatedWedge(V([0, 0]), w1), TranslatedWedge(V([0, 0]), w2)])
    assert res is not None and res.witness == V([0, 0]) and is_proper(res)
    with pytest.raises(NotMultiBoundedBelow):
        ray_pos = Wedge(1, halfspaces=[V([1])])
        ray_neg = Wedge(1, halfspaces=[V([-1])])
        minf([TranslatedWedge(V([-1]), ray_pos), TranslatedWedge(V([1]), ray_neg)])


def test_is_proper_examples():
    w1, w2, _ = w123()
    pair = msup([TranslatedWedge(V([0, 0]), w1), TranslatedWedge(V([0, 0]), w2)])
    assert is_proper(pair)
    half = msup([TranslatedWedge(V([1, 1]), w1)])
    assert not is_proper(half)
    cone_pair = msup([TranslatedWedge(V([1, 1]), Wedge(2, generators=[V([1, 2])]))])
    assert is_proper(cone_pair)


def test_search_finds_triple_counterexample():
    w1, w2, w3 = w123()
    cx = multilattice_search([w1, w2, w3], 3, seed=0, budget=1000)
    assert cx is not None
    wedges = [w1, w2, w3]
    fam = [
        TranslatedWedge(a, wedges[i]) for a, i in zip(cx.apexes, cx.wedge_indices)
    ]
    assert multi_bounded_above(fam) is not None
    assert msup(fam) is None


def test_search_pairs_find_nothing():
    w1, w2, w3 = w123()
    assert multilattice_search([w1, w2, w3], 2, seed=0, budget=1000) is None


def test_search_complete_pair_finds_nothing_up_to_five():
    quadrant = Wedge(2, generators=[V([1, 0]), V([0, 1])])
    diag = Wedge(2, generators=[V([1, 1])])
    for k in (2, 3, 4, 5):
        assert multilattice_search([quadrant, diag], k, seed=0, budget=1000) is None


def test_search_deterministic():
    w1, w2, w3 = w123()
    a = multilattice_search([w1, w2, w3], 3, seed=7, budget=400)
    b = multilattice_search([w1, w2, w3], 3, seed=7, budget=400)
    assert (a is None) == (b is None)
    if a is not None:
        assert a.apexes == b.apexes and a.wedge_indices == b.wedge_indices


def _same_msup_set(a, b, dim):
    if a is None or b is None:
        return a is b
    if [v.entries for v in a.lineality_basis] != [v.entries for v in b.lineality_basis]:
        return False
    return span_contains(a.lineality_basis, a.witness - b.witness, dim)


def _random_bounded_family(rng, dim, size):
    wedges = [rand_wedge(rng, dim) for _ in range(size)]
    apexes = [rand_vector(rng, dim, -3, 3, 2) for _ in range(size)]
    fam = [TranslatedWedge(a, w) for a, w in zip(apexes, wedges)]
    if multi_bounded_above(fam) is None:
        return None
    return fam


def test_translation_identity_sampled():
    # msup(y + x_i, W_i) = y + msup(x_i, W_i) as sets
    rng = random.Random(60)
    done = 0
    while done < 120:
        dim = rng.randint(1, 3)
        fam = _random_bounded_family(rng, dim, rng.randint(1, 3))
        if fam is None:
            continue
        done += 1
        y = rand_vector(rng, dim, -3, 3, 2)
        base = msup(fam)
        shifted = msup([TranslatedWedge(y + tw.apex, tw.wedge) for tw in fam])
        if base is None:
            assert shifted is None
            continue
        moved = type(base)(base.witness + y, base.lineality_basis)
        assert _same_msup_set(moved, shifted, dim)


def test_scaling_identity_sampled():
    rng = random.Random(61)
    done = 0
    while done < 120:
        dim = rng.randint(1, 3)
        fam = _random_bounded_family(rng, dim, rng.randint(1, 3))
        if fam is None:
            continue
        done += 1
        lam = F(rng.randint(1, 5), rng.randint(1, 3))
        base = msup(fam)
        scaled = msup([TranslatedWedge(lam * tw.apex, tw.wedge) for tw in fam])
        if base is None:
            assert scaled is None
            continue
        moved = type(base)(lam * base.witness, base.lineality_basis)
        assert _same_msup_set(moved, scaled, dim)


def test_negation_identity_sampled():
    rng = random.Random(62)
    done = 0
    while done < 120:
        dim = rng.randint(1, 3)
        fam = _random_bounded_family(rng, dim, rng.randint(1, 3))
        if fam is None:
            continue
        done += 1
        below = [TranslatedWedge(-tw.apex, tw.wedge) for tw in fam]
        mi = minf(below)
        ms = msup(fam)
        if ms is None:
            assert mi is None
            continue
        moved = type(ms)(-ms.witness, ms.lineality_basis)
        assert _same_msup_set(moved, mi, dim)


def test_msup_witness_soundness_sampled():
    # the witness is an upper bound below every sampled upper bound
    rng = random.Random(63)
    done = 0
    while done < 40:
        dim = rng.randint(1, 3)
        fam = _random_bounded_family(rng, dim, rng.randint(1, 3))
        if fam is None:
            continue
        res = msup(fam)
        if res is None:
            continue
        done += 1
        z = res.witness
        assert is_multi_upper_bound(z, fam)
        cone = intersect([tw.wedge for tw in fam])
        normals = cone.canonical_halfspaces
        from multiwedge import GE, Constraint, LinearProgram, Optimal, lp_solve

        cons = []
        for tw in fam:
            for a in tw.wedge.halfspaces:
                cons.append(Constraint(a, GE, a.dot(tw.apex)))
        for _ in range(10):
            if normals:
                weights = [F(rng.randint(0, 3)) for _ in normals]
                objective = QVector.zero(dim)
                for wgt, a in zip(weights, normals):
                    objective = objective + wgt * a
            else:
                objective = QVector.zero(dim)
            r = lp_solve(LinearProgram(dim, objective, "min", tuple(cons)))
            assert isinstance(r, Optimal)
            u = r.point
            assert is_multi_upper_bound(u, fam)
            for tw in fam:
                assert tw.wedge.member(u - z)


def test_intersection_closed_family_stays_lattice():
    # closure under pairwise intersection + 2-lattice behaviour propagates
    # to higher arities (sampled)
    w1 = halfplane([1, 0])
    w3 = halfplane([1, 1])
    meet = intersect([w1, w3])
    family = [w1, w3, meet]
    assert multilattice_search(family, 2, seed=3, budget=150) is None
    for k in range(3, 7):
        assert multilattice_search(family, k, seed=3, budget=150) is None


def test_family_json_roundtrip():
    fam = triple_family()
    again = [TranslatedWedge.from_json(tw.to_json()) for tw in fam]
    assert [tw.apex for tw in again] == [tw.apex for tw in fam]
    res = msup([tw for tw in again][:2])
    payload = res.to_json()
    assert set(payload) == {"witness", "lineality"}
