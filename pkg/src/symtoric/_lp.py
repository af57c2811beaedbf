"""Exact linear programming over Q: dense two-phase simplex, Bland's rule.

Desk-scale solver behind polyhedral feasibility, implicit-equality
detection, and relative-interior points.  Variables are free; constraints
are a·x >= b and a·x == b.  Not meant for large systems.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


class LPResult(NamedTuple):
    status: str
    value: Fraction | None
    point: tuple[Fraction, ...] | None


def _pivot(tab, basis, prow, pcol):
    piv = tab[prow][pcol]
    inv = 1 / piv
    tab[prow] = [x * inv for x in tab[prow]]
    for r, row in enumerate(tab):
        if r != prow and row[pcol] != 0:
            f = row[pcol]
            tab[r] = [x - f * y for x, y in zip(row, tab[prow])]
    basis[prow] = pcol


def _run_simplex(tab, basis, allowed):
    """Maximize with objective in the last tableau row.  Bland's rule."""
    m = len(tab) - 1
    obj = tab[m]
    while True:
        enter = next((j for j in allowed if obj[j] > 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for r in range(m):
            coef = tab[r][enter]
            if coef > 0:
                ratio = tab[r][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave is None:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter)
        obj = tab[m]


def _canonicalize_objective(tab, basis):
    m = len(tab) - 1
    for r in range(m):
        b = basis[r]
        if tab[m][b] != 0:
            f = tab[m][b]
            tab[m] = [x - f * y for x, y in zip(tab[m], tab[r])]


def maximize(
    objective: Sequence,
    ineqs: Sequence[tuple[Sequence, object]],
    eqs: Sequence[tuple[Sequence, object]] = (),
    num_vars: int | None = None,
) -> LPResult:
    """Maximize objective·x subject to a·x >= b (ineqs) and a·x == b (eqs)."""
    n = num_vars if num_vars is not None else len(objective)
    c = [Fraction(x) for x in objective]
    if len(c) != n:
        raise ValueError("objective length mismatch")

    rows = []
    nslack = len(ineqs)
    width = 2 * n + nslack  # x = u - w plus one surplus per inequality
    for i, (a, b) in enumerate(ineqs):
        coeffs = [Fraction(x) for x in a]
        row = coeffs + [-x for x in coeffs] + [0] * nslack
        row[2 * n + i] = Fraction(-1)
        rows.append((row, Fraction(b)))
    for a, b in eqs:
        coeffs = [Fraction(x) for x in a]
        rows.append((coeffs + [-x for x in coeffs] + [0] * nslack, Fraction(b)))

    m = len(rows)
    if m == 0:
        if any(x != 0 for x in c):
            return LPResult(UNBOUNDED, None, None)
        return LPResult(OPTIMAL, Fraction(0), tuple([Fraction(0)] * n))

    # tableau columns: structural vars, artificials, rhs
    total = width + m
    tab = []
    basis = []
    for i, (row, rhs) in enumerate(rows):
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        line = row + [Fraction(0)] * m + [rhs]
        line[width + i] = Fraction(1)
        tab.append(line)
        basis.append(width + i)

    # phase 1: maximize -sum(artificials)
    tab.append([Fraction(0)] * (total + 1))
    for j in range(width, total):
        tab[m][j] = Fraction(-1)
    _canonicalize_objective(tab, basis)
    status = _run_simplex(tab, basis, range(width))
    assert status == OPTIMAL
    if tab[m][-1] != 0:
        return LPResult(INFEASIBLE, None, None)

    # drive remaining artificial basics out; drop redundant rows
    drop = []
    for r in range(m):
        if basis[r] >= width:
            col = next((j for j in range(width) if tab[r][j] != 0), None)
            if col is None:
                drop.append(r)
            else:
                _pivot(tab, basis, r, col)
    for r in sorted(drop, reverse=True):
        del tab[r]
        del basis[r]

    # phase 2
    tab[-1] = [Fraction(0)] * (total + 1)
    for j in range(n):
        tab[-1][j] = c[j]
        tab[-1][n + j] = -c[j]
    _canonicalize_objective(tab, basis)
    status = _run_simplex(tab, basis, range(width))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None)

    values = [Fraction(0)] * width
    for r, b in enumerate(basis):
        if b < width:
            values[b] = tab[r][-1]
    point = tuple(values[j] - values[n + j] for j in range(n))
    value = sum(ci * xi for ci, xi in zip(c, point))
    return LPResult(OPTIMAL, value, point)


def feasible_point(
    ineqs: Sequence[tuple[Sequence, object]],
    eqs: Sequence[tuple[Sequence, object]] = (),
    num_vars: int = 0,
) -> tuple[Fraction, ...] | None:
    res = maximize([0] * num_vars, ineqs, eqs, num_vars)
    return res.point if res.status == OPTIMAL else None
