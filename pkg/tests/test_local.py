import itertools
import random

import pytest

from helpers import (CM_GENS, CM_Q, NC_A_LISTED, NC_GENS, NC_Q, R2, X5, polys,
                     random_monomial_ideal, socle_of_monomials)
from fibercone.errors import InputError, NotPrimaryError, NotReductionError
from fibercone.groebner import Ideal
from fibercone.local import (PowerLadder, TruncationContext, build_candidate_ideal, build_ladder,
                             exact_polynomial_membership_gap, fiber_colength_rhs, in_ideal_locally,
                             minimal_rank, reduction_number, select_min_gens, socle_bound,
                             solve_z_relation)


def ladder_for(gens_text, qidx, extra=0):
    gens = polys(gens_text, R2)
    ctx = TruncationContext(socle_bound(gens), extra)
    return build_ladder(gens, qidx, ctx)


@pytest.fixture(scope="module")
def cm_ladder():
    return ladder_for(CM_GENS, CM_Q)


@pytest.fixture(scope="module")
def nc_ladder():
    return ladder_for(NC_GENS, NC_Q)


@pytest.mark.parametrize("gens,s", [
    (["x", "y"], 1),
    (["x^7", "x^5*y", "x^4*y^2", "x^2*y^6", "y^12"], 13),
    (["x", "y^2"], 2),
    (["x^2 + y^3", "y^2"], 3),
])
def test_socle_bound(gens, s):
    assert socle_bound(polys(gens, R2)) == s


def test_socle_bound_not_primary():
    with pytest.raises(NotPrimaryError):
        socle_bound(polys(["x^2", "x*y"], R2), cap=10)


def test_socle_bound_matches_monomial_staircase():
    rng = random.Random(11)
    for _ in range(30):
        I = random_monomial_ideal(rng)
        mins = [next(iter(g.terms)) for g in I]
        assert socle_bound(I) == socle_of_monomials(mins)


def test_cm_ladder(cm_ladder):
    assert cm_ladder.r == 2
    assert cm_ladder.u == (3, 1)
    assert fiber_colength_rhs(cm_ladder) == 5


def test_non_cm_ladder(nc_ladder):
    assert nc_ladder.r == 3
    assert nc_ladder.u == (3, 2, 2)
    assert fiber_colength_rhs(nc_ladder) == 8


def test_trivial_ladder():
    ladder = ladder_for(["x", "y"], (0, 1))
    assert ladder.r == 0 and ladder.u == ()
    assert fiber_colength_rhs(ladder) == 1
    assert reduction_number(polys(["x", "y"], R2), (0, 1)) == 0


def test_reduction_numbers():
    assert reduction_number(polys(CM_GENS, R2), CM_Q) == 2
    assert reduction_number(polys(NC_GENS, R2), NC_Q) == 3


def test_not_a_reduction():
    gens = polys(["x^2", "x*y", "y^2"], R2)
    with pytest.raises(NotReductionError):
        build_ladder(gens, (0, 1), TruncationContext(socle_bound(gens), 0, power_cap=3))


def test_bad_q_index_count():
    gens = polys(["x", "y"], R2)
    with pytest.raises(InputError):
        build_ladder(gens, (0,), TruncationContext(1))


def test_min_gens(cm_ladder, nc_ladder):
    assert select_min_gens(cm_ladder).chosen == {2: ((3, 3),)}
    assert select_min_gens(nc_ladder).chosen == {2: ((1, 1), (3, 3)), 3: ((1, 1, 1), (3, 3, 3))}
    assert select_min_gens(ladder_for(["x", "y"], (0, 1))).chosen == {}


def test_z_relations_examples(cm_ladder, nc_ladder):
    sel = select_min_gens(cm_ladder)
    assert solve_z_relation((2, 2), cm_ladder, sel).poly == X5.parse("X3^2 - X1*X3")
    assert solve_z_relation((2, 3), cm_ladder, sel).poly == X5.parse("X3*X4")
    sel = select_min_gens(nc_ladder)
    assert solve_z_relation((1, 1, 1, 1), nc_ladder, sel).poly == X5.parse("X2^4 - X1^3*X4")


def test_z_provenance(cm_ladder):
    sel = select_min_gens(cm_ladder)
    prov = solve_z_relation((2, 2), cm_ladder, sel).provenance()
    assert prov["multiset"] == [3, 3]
    assert prov["poly"] == "-X1*X3 + X3^2"


def test_candidate_trivial():
    gens = polys(["x", "y"], R2)
    cand = build_candidate_ideal(gens, (0, 1), TruncationContext(1))
    assert cand.generators == []


def test_candidate_non_cm_contains_listed():
    gens = polys(NC_GENS, R2)
    cand = build_candidate_ideal(gens, NC_Q)
    ours = Ideal(cand.generators, X5)
    assert ours.contains_ideal(Ideal(polys(NC_A_LISTED, X5), X5))


def test_membership_gap_examples():
    gens = polys(CM_GENS, R2)
    gap = exact_polynomial_membership_gap(gens, CM_Q, 3)
    assert gap.witnesses
    assert all(loc for _, _, loc in gap.entries)
    assert exact_polynomial_membership_gap(polys(["x", "y"], R2), (0, 1), 1).witnesses == []
    assert exact_polynomial_membership_gap(polys(["x^2", "y^2"], R2), (0, 1), 2).witnesses == []


def test_minimal_rank_and_local_membership():
    gens = polys(["x^2", "y^2", "x^2 + y^2", "x^2*y"], R2)
    rank, keep = minimal_rank(gens, TruncationContext(3))
    assert rank == 2 and keep == [0, 1]
    # x^2 + x^3 is a unit multiple of x^2 in the power series ring
    assert in_ideal_locally(R2.parse("x^2 + x^3"), polys(["x^2 + x^3*y", "y^3"], R2), 6)
    assert not in_ideal_locally(R2.parse("x"), polys(["x^2", "y"], R2), 4)


def test_truncation_stability(cm_ladder, nc_ladder):
    for text, q, ladder in ((CM_GENS, CM_Q, cm_ladder), (NC_GENS, NC_Q, nc_ladder)):
        other = ladder_for(text, q, extra=2)
        assert other.u == ladder.u
        assert select_min_gens(other).chosen == select_min_gens(ladder).chosen
        assert other.fiber_dims(ladder.r + 1) == ladder.fiber_dims(ladder.r + 1)


# brute-force monomial oracle for the local equality test

def _min_gens(exps):
    exps = set(exps)
    return {e for e in exps if not any(o != e and o[0] <= e[0] and o[1] <= e[1] for o in exps)}


def _power(gens, i):
    if i == 0:
        return {(0, 0)}
    return _min_gens(tuple(map(sum, zip(*c))) for c in itertools.combinations_with_replacement(gens, i))


def _brute_u(mins, qidx, i):
    """Minimal generators of I^i outside Q I^(i-1), i.e. dim I^i/(QI^(i-1) + mI^i)."""
    q = [mins[k] for k in qidx]
    prev = _power(mins, i - 1)
    qi = [(a[0] + b[0], a[1] + b[1]) for a in q for b in prev]
    return sum(1 for m in _power(mins, i) if not any(g[0] <= m[0] and g[1] <= m[1] for g in qi))


def test_local_equality_matches_monomial_enumeration():
    rng = random.Random(5)
    reductions = 0
    for _ in range(25):
        I = random_monomial_ideal(rng, smax=4)
        mins = [next(iter(g.terms)) for g in I]
        qidx = (0, len(mins) - 1)  # the two pure powers, not always a reduction
        ladder = PowerLadder(tuple(I), qidx, TruncationContext(socle_bound(I)))
        for i in range(1, 5):
            u = _brute_u(mins, qidx, i) if i > 1 else len(mins) - 2
            assert ladder.level(i).u == u, (mins, i)
        reductions += ladder.level(4).u == 0
    assert reductions > 0
