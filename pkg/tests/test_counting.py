import random

import pytest

from kleinzeta.counting import (BadReduction, BudgetExceeded, CM_CURVE, CountRecord,
                                HomogeneousForm, WeierstrassCurve, count_hypersurface_naive,
                                count_klein_fast, count_weierstrass, fermat_cover_substitution,
                                klein_cubic_form, quadratic_root_count, verify_fermat_cover)
from kleinzeta.ffield import build_field

# independently frozen oracle values (naive enumeration, plus the trace rule
# cross-checked at the curve level)
KNOWN_COUNTS = {(3, 1): 40, (3, 2): 820, (2, 1): 15, (2, 2): 85, (5, 1): 156, (23, 1): 13755}


def test_klein_form_shape():
    S = klein_cubic_form()
    assert S.degree == 3 and S.nvars == 5 and len(S.terms) == 5


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (2, 1), (2, 2), (5, 1)])
def test_fast_counter_known_values(p, k):
    assert count_klein_fast(build_field(p, k)) == KNOWN_COUNTS[(p, k)]


def test_fast_counter_f23_equals_naive_and_prediction():
    F = build_field(23)
    n = count_klein_fast(F)
    assert n == KNOWN_COUNTS[(23, 1)]
    assert n == count_hypersurface_naive(klein_cubic_form(), F)


@pytest.mark.parametrize("q,p,k", [(2, 2, 1), (3, 3, 1), (4, 2, 2), (5, 5, 1),
                                   (7, 7, 1), (8, 2, 3), (9, 3, 2), (11, 11, 1), (13, 13, 1)])
def test_fast_equals_naive(q, p, k):
    F = build_field(p, k)
    assert count_klein_fast(F) == count_hypersurface_naive(klein_cubic_form(), F)


def test_prime_field_counts_against_tableless_loop():
    # a third route sharing nothing with the package's field tables:
    # plain integers mod p over projective representatives
    def plain_count(p):
        total = 0
        reps = []
        for lead in range(5):
            import itertools
            for tail in itertools.product(range(p), repeat=4 - lead):
                reps.append((0,) * lead + (1,) + tail)
        for pt in reps:
            s = sum(pt[i] * pt[i] * pt[(i + 1) % 5] for i in range(5))
            total += s % p == 0
        return total

    for p in (2, 3, 5, 7):
        assert count_klein_fast(build_field(p)) == plain_count(p)


def test_hyperplane_counts_are_projective_spaces():
    # x0 = 0 cuts out P^3; the same holds for the cube of the coordinate
    x0 = HomogeneousForm.from_dict(5, {(1, 0, 0, 0, 0): 1})
    x0cubed = HomogeneousForm.from_dict(5, {(3, 0, 0, 0, 0): 1})
    for p, k in [(3, 1), (2, 2), (5, 1)]:
        F = build_field(p, k)
        q = F.q
        expected = q ** 3 + q ** 2 + q + 1
        assert count_hypersurface_naive(x0, F) == expected
        assert count_hypersurface_naive(x0cubed, F) == expected


def test_partition_independence():
    F = build_field(3, 3)
    baseline = count_klein_fast(F, chunks=1)
    for chunks in (2, 5, 9):
        assert count_klein_fast(F, chunks=chunks) == baseline


def test_budget_enforced():
    with pytest.raises(BudgetExceeded):
        count_klein_fast(build_field(3, 5), budget=10 ** 6)
    with pytest.raises(BudgetExceeded):
        count_hypersurface_naive(klein_cubic_form(), build_field(31), budget=10 ** 5)


def test_count_record_bound():
    with pytest.raises(ValueError):
        CountRecord(3, 1, 10 ** 9, "quad-fiber", 0.0)


def test_weierstrass_counts():
    assert count_weierstrass(CM_CURVE, build_field(3)) == 5
    assert count_weierstrass(CM_CURVE, build_field(5)) == 9
    assert count_weierstrass(CM_CURVE, build_field(2)) == 3


def test_weierstrass_hasse_bound():
    for p in (3, 5, 7, 13, 23, 97, 199):
        F = build_field(p)
        n = count_weierstrass(CM_CURVE, F)
        assert (p + 1 - n) ** 2 <= 4 * p


def test_weierstrass_bad_reduction():
    assert CM_CURVE.discriminant == -11 ** 3
    with pytest.raises(BadReduction):
        count_weierstrass(CM_CURVE, build_field(11))


def test_weierstrass_generic_curve_matches_direct_enumeration():
    E = WeierstrassCurve(1, 0, 1, -1, 2)   # discriminant -2262 = -2*3*13*29
    for p in (5, 7, 17):
        F = build_field(p)
        direct = 1
        for x in F.elements():
            for y in F.elements():
                lhs = y * y + F.element([E.a1]) * x * y + F.element([E.a3]) * y
                rhs = (x * x * x + F.element([E.a2]) * x * x
                       + F.element([E.a4]) * x + F.element([E.a6]))
                direct += lhs == rhs
        assert count_weierstrass(E, F) == direct


def test_quadratic_root_count_examples():
    F7 = build_field(7)
    e = F7.element
    assert quadratic_root_count(e([1]), e([0]), e([-1])) == 2
    assert quadratic_root_count(e([1]), e([0]), e([1])) == 0
    F5 = build_field(5)
    z = F5.zero()
    assert quadratic_root_count(z, z, z) == 5
    assert quadratic_root_count(z, F5.one(), F5.element([3])) == 1
    with pytest.raises(ValueError):
        quadratic_root_count(*[build_field(2, 2).one()] * 3)


def test_quadratic_root_count_exhaustive():
    rng = random.Random(3)
    F = build_field(7)
    elems = list(F.elements())
    for _ in range(100):
        a, b, c = (rng.choice(elems) for _ in range(3))
        direct = sum((a * x * x + b * x + c).is_zero() for x in elems)
        assert quadratic_root_count(a, b, c) == direct


def test_fermat_cover_identity():
    assert verify_fermat_cover()


def test_fermat_cover_substitution_shape():
    sub = fermat_cover_substitution()
    # each substituted variable has degree 17, so the image has degree 51
    assert sub.degree == 51
    assert sub.term_dict()[(8, 8, 8, 19, 8)] == 1  # image of x0^2 x1
    assert len(sub.terms) == 5
