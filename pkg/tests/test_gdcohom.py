import random
from fractions import Fraction

import pytest

from kleinzeta.cyclo import CyclotomicNumber
from kleinzeta.gdcohom import (CycPoly, RationalDifferential, alpha_pullback,
                               eigenspace_split, fil2_eigenvector_map, gorenstein_pairing_matrix,
                               gorenstein_pairing_nondegenerate, graded_dim, griffiths_reduce,
                               h3_basis, jacobian_generators, klein_form, lift_to_jacobian_ideal,
                               matrix_power, monomial, monomials_of_degree)
from kleinzeta.linalg import rank


def rand_poly(rng, d, density=0.5, bound=4):
    terms = {}
    for m in monomials_of_degree(d):
        if rng.random() < density:
            c = rng.randint(-bound, bound)
            if c:
                terms[m] = Fraction(c)
    return CycPoly.make(terms, d)


def test_jacobian_generators():
    gens = jacobian_generators()
    assert len(gens) == 5
    assert gens[0].dict() == {(1, 1, 0, 0, 0): Fraction(2), (0, 0, 0, 0, 2): Fraction(1)}
    for i, g in enumerate(gens):
        assert g.degree == 2
        # cyclic shifts of each other
        assert g.rotate_vars() == gens[(i + 1) % 5]


def test_graded_dims_hilbert_function():
    dims = [graded_dim(d)[0] for d in range(8)]
    assert dims == [1, 5, 10, 10, 5, 1, 0, 0]


def test_degree_one_complement_is_all_variables():
    _, mons = graded_dim(1)
    assert mons == monomials_of_degree(1)


def test_lift_examples():
    gens = jacobian_generators()
    A = monomial((2, 0, 0, 0, 0)) * gens[0]
    B = lift_to_jacobian_ideal(A)
    assert B is not None
    recomposed = CycPoly.make({}, 4)
    for Bi, g in zip(B, gens):
        recomposed = recomposed + Bi * g
    assert recomposed == A

    assert lift_to_jacobian_ideal(monomial((1, 0, 0, 0, 0))) is None  # J_1 = 0

    rng = random.Random(9)
    for _ in range(3):
        A6 = rand_poly(rng, 6)
        if A6.is_zero():
            continue
        B6 = lift_to_jacobian_ideal(A6)  # (R/J)_6 = 0, so everything lifts
        assert B6 is not None


def test_griffiths_reduce_examples():
    basis = h3_basis()
    A = CycPoly.make({(3, 1, 0, 0, 0): Fraction(2), (2, 0, 0, 0, 2): Fraction(1)})
    coords = griffiths_reduce(RationalDifferential(A, 3), basis)
    assert coords == [Fraction(1)] + [Fraction(0)] * 9  # x0 Omega / S^2

    x1 = monomial((0, 1, 0, 0, 0))
    coords = griffiths_reduce(RationalDifferential(x1, 2), basis)
    assert coords == [Fraction(0), Fraction(1)] + [Fraction(0)] * 8

    # two lifts of dS_0 * dS_1 give the same class
    gens = jacobian_generators()
    prod = gens[0] * gens[1]
    via0 = griffiths_reduce(RationalDifferential(prod, 3), basis,
                            first_lift=[gens[1]] + [CycPoly.make({}, 2)] * 4)
    via1 = griffiths_reduce(RationalDifferential(prod, 3), basis,
                            first_lift=[CycPoly.make({}, 2), gens[0]]
                            + [CycPoly.make({}, 2)] * 3)
    assert via0 == via1 == griffiths_reduce(RationalDifferential(prod, 3), basis)


def test_degree_balance_enforced():
    with pytest.raises(ValueError):
        RationalDifferential(monomial((1, 0, 0, 0, 0)), 3)
    with pytest.raises(ValueError):
        RationalDifferential(monomial((1, 0, 0, 0, 0)), 1)


def test_reduce_linearity():
    rng = random.Random(31)
    basis = h3_basis()
    for _ in range(10):
        w1, w2 = rand_poly(rng, 4), rand_poly(rng, 4)
        a, b = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        combo = w1.scale(a) + w2.scale(b)
        r1 = griffiths_reduce(RationalDifferential(w1, 3), basis)
        r2 = griffiths_reduce(RationalDifferential(w2, 3), basis)
        rc = griffiths_reduce(RationalDifferential(combo, 3), basis)
        assert rc == [a * x + b * y for x, y in zip(r1, r2)]


def test_reduce_idempotent_on_basis():
    basis = h3_basis()
    for j, diff in enumerate(basis.differentials()):
        coords = griffiths_reduce(diff, basis)
        expected = [Fraction(int(i == j)) for i in range(10)]
        assert coords == expected


def test_pole_four_reduction_is_lift_independent():
    # degree-5 lift data: A = sum B_i dS_i with deg B_i = 5, pole order 4
    rng = random.Random(41)
    gens = jacobian_generators()
    basis = h3_basis()
    for _ in range(3):
        B = [rand_poly(rng, 5, 0.25) for _ in range(5)]
        A = CycPoly.make({}, 7)
        for Bi, g in zip(B, gens):
            A = A + Bi * g
        if A.is_zero():
            continue
        omega = RationalDifferential(A, 4)
        assert (griffiths_reduce(omega, basis)
                == griffiths_reduce(omega, basis, first_lift=B))


def test_exact_forms_reduce_to_zero_shift():
    # a pure ideal numerator at pole 3 must land entirely in the pole-2 block
    rng = random.Random(7)
    gens = jacobian_generators()
    basis = h3_basis()
    for _ in range(5):
        B = [rand_poly(rng, 2, 0.5) for _ in range(5)]
        A = CycPoly.make({}, 4)
        for Bi, g in zip(B, gens):
            A = A + Bi * g
        coords = griffiths_reduce(RationalDifferential(A, 3), basis)
        assert all(c == 0 for c in coords[5:])


def test_h3_basis_shape():
    basis = h3_basis()
    assert basis.dimension == 10
    assert len(basis.pole2_monomials) == 5
    assert len(basis.pole3_monomials) == 5
    assert all(sum(m) == 4 for m in basis.pole3_monomials)


def test_klein_form_invariant_under_rotation():
    S = klein_form()
    assert S.rotate_vars() == S


def test_alpha_pullback_structure():
    basis = h3_basis()
    M = alpha_pullback(basis)
    # Fil2 block is the 5-cycle permutation
    for i in range(5):
        for j in range(5):
            assert M[i][j] == Fraction(int(i == (j + 1) % 5))
    # pole-2 block never feeds the pole-3 block
    for i in range(5, 10):
        for j in range(5):
            assert M[i][j] == 0
    assert matrix_power(M, 5) == matrix_power(M, 0)


def test_eigenspace_split():
    M = alpha_pullback()
    split = eigenspace_split(M)
    assert split.dims == (2, 2, 2, 2, 2)
    assert split.fil2_dims == (1, 1, 1, 1, 1)


def test_fourier_vectors_are_eigenvectors():
    M = alpha_pullback()
    eigmap = fil2_eigenvector_map(M)
    # v_j carries eigenvalue zeta^(-j); the indexing is a bijection
    assert eigmap == {j: (-j) % 5 for j in range(5)}


def test_gorenstein_pairing():
    mat = gorenstein_pairing_matrix()
    assert len(mat) == 5 and len(mat[0]) == 5
    assert rank(mat) == 5
    assert gorenstein_pairing_nondegenerate()


def test_reduce_handles_cyclotomic_coefficients():
    # the Fourier combination of the Hodge-block classes, with zeta coefficients
    basis = h3_basis()
    z = CyclotomicNumber.zeta_pow
    terms = {m: z(5, (i + 1)) for i, m in enumerate(basis.pole2_monomials)}
    vj = CycPoly.make(terms, 1)
    coords = griffiths_reduce(RationalDifferential(vj, 2), basis)
    assert coords[:5] == [z(5, (i + 1)) for i in range(5)]
    image = vj.rotate_vars()
    icoords = griffiths_reduce(RationalDifferential(image, 2), basis)
    lam = z(5, -1)
    assert icoords[:5] == [lam * c for c in coords[:5]]
