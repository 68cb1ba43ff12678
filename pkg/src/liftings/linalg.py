"""Exact sparse Gaussian elimination over Q.

Rows are ``{column: Fraction}`` dicts.  Columns can be any hashable keys; a
``order`` key function fixes which column becomes the pivot, so results are
deterministic.
"""

from __future__ import annotations

from fractions import Fraction


def _axpy(row: dict, pivot_row: dict, factor) -> None:
    """row -= factor * pivot_row, in place."""
    for k, v in pivot_row.items():
        nv = row.get(k, 0) - factor * v
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)


class Eliminator:
    """Incremental echelon form; ``add`` reports whether a row was independent."""

    def __init__(self, order=None):
        self.order = order
        self.pivots = {}  # column -> normalized row with 1 at column

    def _pick(self, row):
        if self.order is None:
            return min(row, key=repr) if not all(isinstance(k, int) for k in row) else min(row)
        return max(row, key=self.order)

    def reduce(self, row: dict) -> dict:
        row = {k: Fraction(v) for k, v in row.items() if v}
        changed = True
        while changed:
            changed = False
            for k in list(row):
                if k in row and k in self.pivots:
                    _axpy(row, self.pivots[k], row[k])
                    changed = True
        return row

    def add(self, row: dict) -> dict:
        """Reduce row; if non-zero, add it as a new pivot. Returns the reduced row."""
        r = self.reduce(row)
        if r:
            col = self._pick(r)
            inv = 1 / r[col]
            r = {k: v * inv for k, v in r.items()}
            for other in self.pivots.values():
                if col in other:
                    _axpy(other, r, other[col])
            self.pivots[col] = r
        return r

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows, order=None) -> int:
    e = Eliminator(order)
    for r in rows:
        e.add(r)
    return e.rank


def rref(rows, order=None) -> dict:
    """Reduced echelon form as {pivot column: row}."""
    e = Eliminator(order)
    for r in rows:
        e.add(r)
    return e.pivots


def nullspace(rows, columns, order=None) -> list:
    """Basis of {v : sum_k row[k] v[k] = 0 for every row}, over ``columns``."""
    piv = rref(rows, order)
    free = [c for c in columns if c not in piv]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for pc, r in piv.items():
            if f in r:
                v[pc] = -r[f]
        basis.append(v)
    return basis


CONST = "__const__"


def solve_linear(equations, order=None):
    """Solve sum_k a_k y_k + b = 0 (rows with the constant under ``CONST``).

    Returns ``None`` when inconsistent, else ``{pivot: {var: coeff, CONST: b}}``
    expressing each pivot variable as an affine function of the free ones.
    """

    def key(k):
        if k == CONST:
            return (-1,)
        return (0, order(k)) if order else (0, k)

    piv = rref(equations, order=key)
    if CONST in piv:
        return None
    out = {}
    for col, r in piv.items():
        out[col] = {k: -v for k, v in r.items() if k != col}
    return out
