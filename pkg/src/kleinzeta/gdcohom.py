"""Middle de Rham cohomology of the Klein cubic by pole-order reduction.

Classes on the complement are written A*Omega/S^m with A homogeneous of
degree 3m - 5 and Omega the Euler 4-form sum_i x_i dx_0 ^ ... ^ dx_i-hat
^ ... ^ dx_4.  A class whose numerator lies in the Jacobian ideal
A = sum_i B_i dS/dx_i drops pole order through

    A Omega / S^m  ==  (1/(m-1)) (sum_i dB_i/dx_i) Omega / S^(m-1)

modulo exact forms.  The Jacobian ring here is Artinian Gorenstein with
Hilbert function 1, 5, 10, 10, 5, 1, so reduced classes live at pole
order 2 (degree 1, five classes, the Hodge-filtration block) and pole
order 3 (degree 4, five classes over the monomial complement of the
ideal).  The cyclic coordinate rotation acts on this 10-dimensional space
with five 2-dimensional eigenspaces over Q(zeta_5).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import CyclotomicNumber
from .linalg import Echelon, rank, solve_sparse

NVARS = 5


def monomials_of_degree(d: int, nvars: int = NVARS) -> list:
    """Exponent tuples of total degree d, graded-reverse-lex descending."""
    if d < 0:
        return []
    mons = []
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        exps = []
        prev = -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + nvars - 2 - prev)
        mons.append(tuple(exps))
    # grevlex descending == ascending lexicographic order of reversed tuples
    mons.sort(key=lambda e: e[::-1])
    return mons


def _czero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


@dataclass(frozen=True)
class CycPoly:
    """Homogeneous polynomial in x_0..x_4, coefficients in Q or Q(zeta_5)."""
    degree: int
    terms: tuple  # sorted ((exps, coeff), ...) with no zero coefficients

    @staticmethod
    def make(terms: dict, degree: int | None = None) -> "CycPoly":
        clean = {e: c for e, c in terms.items() if not _czero(c)}
        if clean:
            degrees = {sum(e) for e in clean}
            if len(degrees) != 1:
                raise ValueError("polynomial is not homogeneous")
            (d,) = degrees
            if degree is not None and degree != d:
                raise ValueError("declared degree does not match terms")
            degree = d
        elif degree is None:
            degree = 0
        return CycPoly(degree, tuple(sorted(clean.items())))

    def dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "CycPoly") -> "CycPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        out = self.dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return CycPoly.make(out, self.degree)

    def __neg__(self) -> "CycPoly":
        return CycPoly(self.degree, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "CycPoly") -> "CycPoly":
        return self + (-other)

    def scale(self, f) -> "CycPoly":
        if _czero(f):
            return CycPoly.make({}, self.degree)
        return CycPoly(self.degree, tuple((e, c * f) for e, c in self.terms))

    def __mul__(self, other: "CycPoly") -> "CycPoly":
        out = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return CycPoly.make(out, self.degree + other.degree)

    def diff(self, var: int) -> "CycPoly":
        out = {}
        for e, c in self.terms:
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = out.get(tuple(ne), 0) + c * e[var]
        return CycPoly.make(out, max(self.degree - 1, 0))

    def rotate_vars(self) -> "CycPoly":
        """Substitution x_i -> x_(i+1) (indices mod 5)."""
        out = {}
        for e, c in self.terms:
            ne = tuple(e[(j - 1) % NVARS] for j in range(NVARS))
            out[ne] = out.get(ne, 0) + c
        return CycPoly.make(out, self.degree)


def monomial(exps, coeff=Fraction(1)) -> CycPoly:
    return CycPoly.make({tuple(exps): coeff})


def klein_form() -> CycPoly:
    terms = {}
    for i in range(NVARS):
        e = [0] * NVARS
        e[i] = 2
        e[(i + 1) % NVARS] = 1
        terms[tuple(e)] = Fraction(1)
    return CycPoly.make(terms)


def jacobian_generators() -> list:
    """dS/dx_i = 2 x_i x_(i+1) + x_(i-1)^2, degree 2, cyclic shifts."""
    S = klein_form()
    return [S.diff(i) for i in range(NVARS)]


# ---------------------------------------------------------------------------
# graded structure of the Jacobian ring


class DegreeData:
    """Echelonized image of (R_(d-2))^5 -> R_d, (B_i) -> sum B_i dS/dx_i."""

    def __init__(self, d: int):
        self.degree = d
        self.monomials = monomials_of_degree(d)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        gens = jacobian_generators()
        ech = Echelon()
        if d >= 2:
            for g in gens:
                for m in monomials_of_degree(d - 2):
                    prod = monomial(m) * g
                    ech.insert({self.index[e]: c for e, c in prod.terms})
        self.echelon = ech
        pivots = set(ech.pivot_cols)
        self.complement = [m for i, m in enumerate(self.monomials) if i not in pivots]

    @property
    def quotient_dim(self) -> int:
        return len(self.complement)

    def split(self, poly: CycPoly):
        """poly = harmonic + ideal: coordinates over the complement, and the rest."""
        if poly.is_zero():
            zero = [Fraction(0)] * self.quotient_dim
            return zero, poly
        vec = {self.index[e]: c for e, c in poly.terms}
        red = self.echelon.reduce(vec)
        comp_index = {self.index[m]: j for j, m in enumerate(self.complement)}
        coords = [Fraction(0)] * self.quotient_dim
        harm_terms = {}
        for col, v in red.items():
            j = comp_index.get(col)
            if j is None:
                raise ArithmeticError("normal form escaped the complement")
            coords[j] = v
            harm_terms[self.monomials[col]] = v
        harmonic = CycPoly.make(harm_terms, poly.degree)
        return coords, poly - harmonic


@lru_cache(maxsize=32)
def degree_data(d: int) -> DegreeData:
    return DegreeData(d)


def graded_dim(d: int):
    """(dim (R/J)_d, monomial complement), by exact row reduction."""
    data = degree_data(d)
    return data.quotient_dim, list(data.complement)


def lift_to_jacobian_ideal(A: CycPoly):
    """Solve A = sum_i B_i dS/dx_i; returns the five B_i or None."""
    d = A.degree
    if A.is_zero():
        zero = CycPoly.make({}, max(d - 2, 0))
        return [zero] * NVARS
    if d < 2:
        return None
    data = degree_data(d)
    lower = monomials_of_degree(d - 2)
    gens = jacobian_generators()
    # unknown (i, m) -> column index
    col_of = {}
    columns = []
    for i in range(NVARS):
        for m in lower:
            col_of[(i, m)] = len(columns)
            columns.append((i, m))
    eq_rows = [dict() for _ in data.monomials]
    for (i, m), j in col_of.items():
        for e, c in (monomial(m) * gens[i]).terms:
            eq_rows[data.index[e]][j] = eq_rows[data.index[e]].get(j, 0) + c
    rhs = [Fraction(0)] * len(data.monomials)
    for e, c in A.terms:
        rhs[data.index[e]] = c
    sol = solve_sparse(eq_rows, rhs)
    if sol is None:
        return None
    parts = [dict() for _ in range(NVARS)]
    for j, v in sol.items():
        i, m = columns[j]
        parts[i][m] = parts[i].get(m, 0) + v
    return [CycPoly.make(t, d - 2) for t in parts]


# ---------------------------------------------------------------------------
# rational differentials and reduction


@dataclass(frozen=True)
class RationalDifferential:
    """A * Omega / S^m on the hypersurface complement."""
    form: CycPoly
    pole_order: int

    def __post_init__(self):
        if self.pole_order < 2:
            raise ValueError("pole order must be >= 2")
        if not self.form.is_zero() and self.form.degree != 3 * self.pole_order - 5:
            raise ValueError(
                f"degree balance broken: deg A = {self.form.degree}, "
                f"pole order {self.pole_order} needs {3 * self.pole_order - 5}")


@dataclass(frozen=True)
class CohomologyBasis:
    pole2_monomials: tuple  # the five x_i
    pole3_monomials: tuple  # degree-4 complement of the Jacobian ideal

    @property
    def dimension(self) -> int:
        return len(self.pole2_monomials) + len(self.pole3_monomials)

    def differentials(self) -> list:
        out = [RationalDifferential(monomial(m), 2) for m in self.pole2_monomials]
        out += [RationalDifferential(monomial(m), 3) for m in self.pole3_monomials]
        return out


def h3_basis() -> CohomologyBasis:
    """Five classes x_i Omega/S^2 (the Hodge block) plus five A Omega/S^3."""
    dim1, mons1 = graded_dim(1)
    dim4, mons4 = graded_dim(4)
    if dim1 != 5 or dim4 != 5:
        raise ArithmeticError(f"unexpected graded dimensions ({dim1}, {dim4})")
    return CohomologyBasis(tuple(mons1), tuple(mons4))


def griffiths_reduce(omega: RationalDifferential, basis: CohomologyBasis | None = None,
                     first_lift=None) -> list:
    """Coordinates of the class of omega in the 10-element basis.

    first_lift, when given, must be an exact lift of the full numerator
    (five polynomials with sum_i B_i dS/dx_i = A); it is applied at the
    first reduction step in place of the solver, which lets callers check
    that the reduction does not depend on the lift.
    """
    basis = basis or h3_basis()
    pending = {omega.pole_order: omega.form}
    harmonic3 = CycPoly.make({}, 4)
    for m in range(omega.pole_order, 2, -1):
        A = pending.pop(m, None)
        if A is None or A.is_zero():
            continue
        if m == 3:
            _, ideal_part = degree_data(4).split(A)
            harmonic3 = harmonic3 + (A - ideal_part)
            A = ideal_part
            if A.is_zero():
                continue
        else:
            # (R/J)_d vanishes for d = 3m-5 > 5, so A is entirely ideal
            coords, A_ideal = degree_data(A.degree).split(A)
            if any(not _czero(c) for c in coords):
                raise ArithmeticError("nonzero harmonic part above the socle degree")
            A = A_ideal
        if first_lift is not None and m == omega.pole_order:
            B = first_lift
            recomposed = CycPoly.make({}, A.degree)
            for Bi, g in zip(B, jacobian_generators()):
                recomposed = recomposed + Bi * g
            if not (recomposed - A).is_zero():
                raise ValueError("provided lift does not recompose the numerator")
        else:
            B = lift_to_jacobian_ideal(A)
            if B is None:
                raise ArithmeticError("ideal membership failed during reduction")
        nxt = CycPoly.make({}, 3 * (m - 1) - 5)
        for i in range(NVARS):
            nxt = nxt + B[i].diff(i)
        nxt = nxt.scale(Fraction(1, m - 1))
        if not nxt.is_zero():
            prev = pending.get(m - 1)
            pending[m - 1] = nxt if prev is None else prev + nxt
    pole2 = pending.pop(2, CycPoly.make({}, 1))
    if pending:
        raise ArithmeticError("reduction left unprocessed pole orders")
    d2 = pole2.dict()
    coords = [d2.get(m, Fraction(0)) for m in basis.pole2_monomials]
    d3 = harmonic3.dict()
    coords += [d3.get(m, Fraction(0)) for m in basis.pole3_monomials]
    return coords


# ---------------------------------------------------------------------------
# cyclic rotation action and its eigenspaces


def alpha_pullback(basis: CohomologyBasis | None = None):
    """10x10 matrix of the coordinate-rotation pullback on the basis.

    Entries are rational (a submatrix of the action over Q(zeta_5));
    column j holds the reduced coordinates of the image of basis class j.
    """
    basis = basis or h3_basis()
    cols = []
    for diff in basis.differentials():
        image = RationalDifferential(diff.form.rotate_vars(), diff.pole_order)
        cols.append(griffiths_reduce(image, basis))
    n = basis.dimension
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matrix_power(M, e: int):
    n = len(M)
    out = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    base = M
    while e:
        if e & 1:
            out = [[sum(out[i][k] * base[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        base = [[sum(base[i][k] * base[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        e >>= 1
    return out


def _to_cyclo_matrix(M):
    out = []
    for row in M:
        out.append([c if isinstance(c, CyclotomicNumber)
                    else CyclotomicNumber.rational(5, c) for c in row])
    return out


@dataclass(frozen=True)
class EigenSplit:
    # per power j of zeta_5: (dimension, dimension of the Hodge-block slice)
    dims: tuple
    fil2_dims: tuple


def eigenspace_split(M) -> EigenSplit:
    """Kernel dimensions of (M - zeta_5^j) over Q(zeta_5), with the
    intersection against the pole-order-2 block (first five coordinates)."""
    n = len(M)
    ident = matrix_power(M, 0)
    M5 = matrix_power(M, 5)
    if M5 != ident:
        raise ArithmeticError("rotation matrix does not have order dividing 5")
    Mc = _to_cyclo_matrix(M)
    dims = []
    fil2 = []
    for j in range(5):
        z = CyclotomicNumber.zeta_pow(5, j)
        shifted = [[Mc[i][k] - (z if i == k else CyclotomicNumber.zero(5))
                    for k in range(n)] for i in range(n)]
        dims.append(n - rank(shifted))
        sub = [[shifted[i][k] for k in range(5)] for i in range(n)]
        fil2.append(5 - rank(sub))
    if sum(dims) != n:
        raise ArithmeticError(f"eigenspace dimensions {dims} do not sum to {n}")
    return EigenSplit(tuple(dims), tuple(fil2))


def fil2_eigenvector_map(M) -> dict:
    """For each j, check v_j = (zeta^(j(i+1)))_i in the Hodge block is an
    eigenvector of M; returns {j: eigenvalue power}."""
    Mc = _to_cyclo_matrix(M)
    n = len(M)
    out = {}
    for j in range(5):
        v = [CyclotomicNumber.zeta_pow(5, j * (i + 1)) for i in range(5)]
        v += [CyclotomicNumber.zero(5)] * (n - 5)
        image = [sum((Mc[i][k] * v[k] for k in range(n)), CyclotomicNumber.zero(5))
                 for i in range(n)]
        lam = None
        for i in range(n):
            if not v[i].is_zero():
                cand = image[i] / v[i]
                if lam is None:
                    lam = cand
                elif lam != cand:
                    raise ArithmeticError("v_j is not an eigenvector")
            elif not image[i].is_zero():
                raise ArithmeticError("v_j is not an eigenvector")
        power = next(k for k in range(5)
                     if (lam - CyclotomicNumber.zeta_pow(5, k)).is_zero())
        out[j] = power
    return out


def gorenstein_pairing_matrix():
    """Multiplication (R/J)_1 x (R/J)_4 -> (R/J)_5 in the socle coordinate."""
    dim5, socle = graded_dim(5)
    if dim5 != 1:
        raise ArithmeticError("socle is not 1-dimensional")
    data5 = degree_data(5)
    _, mons1 = graded_dim(1)
    _, mons4 = graded_dim(4)
    rows = []
    for m1 in mons1:
        row = []
        for m4 in mons4:
            prod = monomial(m1) * monomial(m4)
            coords, _ = data5.split(prod)
            row.append(coords[0])
        rows.append(row)
    return rows


def gorenstein_pairing_nondegenerate() -> bool:
    return rank(gorenstein_pairing_matrix()) == 5
