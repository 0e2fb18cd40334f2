"""Exact sparse/dense linear algebra over Q or Q(zeta_5).

Rows are dicts {column index: coefficient}; coefficients may be Fraction or
CyclotomicNumber (any type with field arithmetic and an is-zero test).
Everything is deterministic: rows are processed in input order and pivots
prefer the smallest column index.
"""

from __future__ import annotations


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


class Echelon:
    """Reduced row echelon form maintained incrementally."""

    def __init__(self):
        self.rows = []          # reduced rows, parallel to pivot_cols
        self.pivot_cols = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        """Return row reduced modulo the current echelon (fresh dict)."""
        out = dict(row)
        for pc, prow in zip(self.pivot_cols, self.rows):
            c = out.get(pc)
            if c is None or _is_zero(c):
                continue
            for col, v in prow.items():
                nv = out.get(col, 0) - c * v
                if _is_zero(nv):
                    out.pop(col, None)
                else:
                    out[col] = nv
        return {c: v for c, v in out.items() if not _is_zero(v)}

    def insert(self, row: dict) -> bool:
        """Reduce then insert; returns True if the row added a new pivot."""
        red = self.reduce(row)
        if not red:
            return False
        pc = min(red)
        inv = red[pc]
        norm = {c: v / inv for c, v in red.items()}
        # keep earlier rows fully reduced
        for i, prow in enumerate(self.rows):
            c = prow.get(pc)
            if c is not None and not _is_zero(c):
                newr = dict(prow)
                for col, v in norm.items():
                    nv = newr.get(col, 0) - c * v
                    if _is_zero(nv):
                        newr.pop(col, None)
                    else:
                        newr[col] = nv
                self.rows[i] = newr
        self.rows.append(norm)
        self.pivot_cols.append(pc)
        return True


# reserved column key for right-hand sides; sorts after every unknown so it
# can only become a pivot when a row reduces to "0 = nonzero"
RHS = 1 << 62


def solve_sparse(eq_rows, rhs_values):
    """One solution of the sparse system, or None if inconsistent.

    eq_rows: list of dicts over unknown indices; rhs_values: parallel list.
    Free unknowns are set to zero.  Each augmented row encodes
    sum_j M_j x_j - b = 0 with the RHS column holding -b.
    """
    ech = Echelon()
    for row, b in zip(eq_rows, rhs_values):
        aug = {k: v for k, v in row.items() if not _is_zero(v)}
        if not _is_zero(b):
            aug[RHS] = -b
        ech.insert(aug)
    out = {}
    for pc, row in zip(ech.pivot_cols, ech.rows):
        if pc == RHS:
            return None
        c = row.get(RHS)
        if c is not None and not _is_zero(c):
            # pivot row reads x_pc + c = 0 once free unknowns vanish
            out[pc] = -c
    return out


def rank(matrix) -> int:
    ech = Echelon()
    for r in matrix:
        ech.insert({j: v for j, v in enumerate(r) if not _is_zero(v)})
    return ech.rank
