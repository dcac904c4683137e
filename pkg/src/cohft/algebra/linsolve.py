"""Exact sparse linear systems over Q (via flint's fmpq_mat row reduction)."""

from __future__ import annotations

from fractions import Fraction

import flint


class InconsistentSystem(ArithmeticError):
    pass


class UnderdeterminedSystem(ArithmeticError):
    pass


def solve_sparse(columns, rhs, unique: bool = True):
    """Solve sum_j x_j * columns[j] = rhs.

    ``columns`` is a list of dicts (equation key -> rational coefficient)
    and ``rhs`` a dict of the same shape. Returns the list of x_j as
    Fractions. Free variables are set to zero unless ``unique`` is set, in
    which case an underdetermined system raises.
    """
    keys = sorted({k for col in columns for k in col} | set(rhs))
    index = {k: i for i, k in enumerate(keys)}
    nunk = len(columns)
    if nunk == 0:
        if any(v != 0 for v in rhs.values()):
            raise InconsistentSystem("no unknowns but nonzero right-hand side")
        return []
    mat = flint.fmpq_mat(len(keys), nunk + 1)
    for j, col in enumerate(columns):
        for k, v in col.items():
            v = Fraction(v)
            mat[index[k], j] = flint.fmpq(v.numerator, v.denominator)
    for k, v in rhs.items():
        v = Fraction(v)
        mat[index[k], nunk] = flint.fmpq(v.numerator, v.denominator)
    red, rank = mat.rref()
    solution = [Fraction(0)] * nunk
    pivots = []
    for r in range(rank):
        row = [red[r, c] for c in range(nunk + 1)]
        lead = next((c for c in range(nunk + 1) if row[c] != 0), None)
        if lead == nunk:
            raise InconsistentSystem("linear system has no solution")
        pivots.append(lead)
        val = row[nunk]
        solution[lead] = Fraction(int(val.p), int(val.q))
    if unique and len(pivots) < nunk:
        raise UnderdeterminedSystem(f"{nunk - len(pivots)} free parameter(s) left")
    return solution


def solve_with_kernel(columns, rhs):
    """Particular solution (free variables zero) and a kernel basis.

    Kernel vectors are returned as dicts {unknown index: value}.
    """
    keys = sorted({k for col in columns for k in col} | set(rhs))
    index = {k: i for i, k in enumerate(keys)}
    nunk = len(columns)
    mat = flint.fmpq_mat(max(len(keys), 1), nunk + 1)
    for j, col in enumerate(columns):
        for k, v in col.items():
            v = Fraction(v)
            mat[index[k], j] = flint.fmpq(v.numerator, v.denominator)
    for k, v in rhs.items():
        v = Fraction(v)
        mat[index[k], nunk] = flint.fmpq(v.numerator, v.denominator)
    red, rank = mat.rref()
    solution = [Fraction(0)] * nunk
    pivots = {}
    for r in range(rank):
        lead = next(c for c in range(nunk + 1) if red[r, c] != 0)
        if lead == nunk:
            raise InconsistentSystem("linear system has no solution")
        pivots[lead] = r
        v = red[r, nunk]
        solution[lead] = Fraction(int(v.p), int(v.q))
    kernel = []
    for f in range(nunk):
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, r in pivots.items():
            v = red[r, f]
            if v != 0:
                vec[p] = -Fraction(int(v.p), int(v.q))
        kernel.append(vec)
    return solution, kernel
