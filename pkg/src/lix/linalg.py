"""Exact linear algebra over the rationals.

Vectors cross the API as dense lists of Fractions; internally rows are
sparse dicts kept in reduced row echelon form. The reduced form is
unique, so pivots and particular solutions (free variables set to zero)
depend only on column order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class Echelon:
    """Incrementally maintained reduced row echelon basis of a span."""

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}  # pivot column -> row with 1 there

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        for c in [c for c in v if c in self.rows]:
            f = v.get(c)
            if not f:
                continue
            for k, x in self.rows[c].items():
                s = v.get(k, 0) - f * x
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert a vector; False if it was already in the span."""
        v = self.reduce(vec)
        if not v:
            return False
        c = min(v)
        inv = 1 / v[c]
        v = {k: x * inv for k, x in v.items()}
        for row in self.rows.values():
            f = row.get(c)
            if f:
                for k, x in v.items():
                    s = row.get(k, 0) - f * x
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
        self.rows[c] = v
        return True

    def __len__(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)


def _sparse(v) -> dict:
    return {i: Fraction(x) for i, x in enumerate(v) if x}


def _dense(v: dict, n: int) -> list:
    out = [Fraction(0)] * n
    for k, x in v.items():
        out[k] = x
    return out


def _echelon(rows) -> Echelon:
    e = Echelon()
    for r in rows:
        e.add(_sparse(r))
    return e


def rref(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    e = _echelon(rows)
    piv = e.pivots()
    return [_dense(e.rows[c], ncols) for c in piv], piv


def rank(rows, ncols: int) -> int:
    return len(_echelon(rows))


def nullspace(rows, ncols: int) -> list[list]:
    """Basis of {x : A x = 0} for A given by rows."""
    e = _echelon(rows)
    free = [c for c in range(ncols) if c not in e.rows]
    basis = []
    for f in free:
        x = {f: Fraction(1)}
        for p, row in e.rows.items():
            if f in row:
                x[p] = -row[f]
        basis.append(_dense(x, ncols))
    return basis


def solve(rows, rhs, ncols: int):
    """One solution of A x = rhs (free variables zero), or None."""
    e = Echelon()
    for r, b in zip(rows, rhs):
        v = _sparse(r)
        if b:
            v[ncols] = Fraction(b)
        e.add(v)
    if ncols in e.rows:
        return None
    return _dense({p: row[ncols] for p, row in e.rows.items() if ncols in row}, ncols)


def span_basis(vectors, dim: int) -> list[list]:
    """Canonical (reduced) basis of the span."""
    return rref(vectors, dim)[0]


def in_span(basis, v, dim: int) -> bool:
    return not _echelon(basis).reduce(_sparse(v))


def intersection(us, ws, dim: int) -> list[list]:
    """Basis of span(us) ∩ span(ws)."""
    us = span_basis(us, dim)
    ws = span_basis(ws, dim)
    if not us or not ws:
        return []
    # a·U = b·W  <=>  [U; -W]^T (a, b) = 0
    cols = us + [[-x for x in w] for w in ws]
    rows = [[c[i] for c in cols] for i in range(dim)]
    out = []
    for sol in nullspace(rows, len(cols)):
        out.append([sum((sol[k] * us[k][i] for k in range(len(us)) if sol[k]), Fraction(0)) for i in range(dim)])
    return span_basis(out, dim)


def complement(vectors, sub, dim: int) -> list[list]:
    """Vectors picked greedily from ``vectors`` that are independent modulo span(sub)."""
    e = _echelon(sub)
    return [list(v) for v in vectors if e.add(_sparse(v))]


def coordinates(v, basis, dim: int):
    """Coefficients c with sum c_i basis_i = v, or None."""
    rows = [[b[i] for b in basis] for i in range(dim)]
    return solve(rows, v, len(basis))


def matmul(a, b):
    inner = len(b)
    ncols = len(b[0]) if b else 0
    return [[sum((row[k] * b[k][j] for k in range(inner) if row[k]), Fraction(0)) for j in range(ncols)] for row in a]
