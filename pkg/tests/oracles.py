"""Independent brute-force oracles used to pin expected values.

Everything here is deliberately naive and separate from the library code
paths it checks: elementary divisors via gcds of minors, a textbook
first-nonzero-pivot diagonalization, rational rank by Gaussian elimination,
a from-scratch coboundary builder, and an exact barycentric-cone volume.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


def det_fraction(rows):
    """Determinant of a square matrix over Q by fraction Gaussian elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def rational_rank(rows):
    """Rank over Q by Gaussian elimination (no SNF involved)."""
    a = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _det_int(rows):
    """Integer determinant via the fraction path (exact)."""
    d = det_fraction(rows)
    assert d.denominator == 1
    return d.numerator


def minor_gcd_divisors(rows):
    """Elementary divisors from gcds of j x j minors, by full enumeration.

    d_1 * ... * d_j = gcd of all j x j minors.  Only viable for small
    matrices; that is the point.
    """
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    divisors = []
    prev = 1
    for j in range(1, min(nr, nc) + 1):
        g = 0
        for ridx in combinations(range(nr), j):
            for cidx in combinations(range(nc), j):
                sub = [[rows[r][c] for c in cidx] for r in ridx]
                g = gcd(g, abs(_det_int(sub)))
        if g == 0:
            divisors.extend([0] * (min(nr, nc) - j + 1))
            break
        divisors.append(g // prev)
        prev = g
    return tuple(divisors)


def naive_elementary_divisors(rows):
    """Textbook diagonalization (first-nonzero pivot, no strategy), divisors only.

    Independent of the library's Smith routine: different pivot choice,
    no transform tracking, plain Euclidean clearing.
    """
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    a = [[int(x) for x in row] for row in rows]
    t = 0
    while True:
        pos = next(
            ((i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j] != 0),
            None,
        )
        if pos is None:
            break
        i0, j0 = pos
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            done = True
            for i in range(t + 1, nr):
                while a[i][t] != 0:
                    if abs(a[i][t]) < abs(a[t][t]):
                        a[t], a[i] = a[i], a[t]
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    done = False
            for j in range(t + 1, nc):
                while a[t][j] != 0:
                    if abs(a[t][j]) < abs(a[t][t]):
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    done = False
            if done:
                break
        bad = next(
            (
                (i, j)
                for i in range(t + 1, nr)
                for j in range(t + 1, nc)
                if a[i][j] % a[t][t] != 0
            ),
            None,
        )
        if bad is not None:
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
            continue
        t += 1
    return tuple(abs(a[i][i]) for i in range(min(nr, nc)))


def simplices_from_maximal(maximal, p):
    """All p-simplices of the downward closure, sorted; independent builder."""
    out = set()
    for m in maximal:
        for s in combinations(sorted(m), p + 1):
            out.add(s)
    return sorted(out)


def coboundary_oracle(maximal, p):
    """Integer matrix of the coboundary C^p -> C^(p+1), ascending-vertex signs.

    Row per (p+1)-simplex, column per p-simplex; entry (-1)^i on the face
    obtained by dropping vertex number i.
    """
    lo = simplices_from_maximal(maximal, p)
    hi = simplices_from_maximal(maximal, p + 1)
    col = {s: j for j, s in enumerate(lo)}
    mat = [[0] * len(lo) for _ in hi]
    for r, tau in enumerate(hi):
        for i in range(len(tau)):
            face = tau[:i] + tau[i + 1 :]
            mat[r][col[face]] += (-1) ** i
    return mat, lo, hi


def cohomology_oracle(maximal, degree):
    """(free_rank, torsion, rational_dim) of H^degree by rank/divisor counting."""
    d_up, mid, _hi = coboundary_oracle(maximal, degree)
    d_down, _lo, _mid2 = coboundary_oracle(maximal, degree - 1) if degree > 0 else (
        [[] for _ in simplices_from_maximal(maximal, 0)],
        [],
        None,
    )
    m = len(mid)
    r_up = rational_rank(d_up) if d_up and d_up[0] else 0
    if degree == 0:
        r_down = 0
        torsion = ()
    else:
        r_down = rational_rank(d_down) if d_down and d_down[0] else 0
        divs = naive_elementary_divisors(d_down) if d_down and d_down[0] else ()
        torsion = tuple(d for d in divs if d not in (0, 1))
    free = m - r_up - r_down
    return free, torsion, free


def polytope_volume(vertices, halfspaces):
    """Exact volume of conv(vertices) by barycentric cone decomposition.

    halfspaces: list of (normal tuple, offset Fraction) with <x,u> >= c.
    Faces are identified by which constraints are tight on which vertices;
    the decomposition cones each face from its own vertex barycenter, a
    different rule from any insertion-order triangulation.
    """
    n = len(vertices[0])
    verts = [tuple(Fraction(x) for x in v) for v in vertices]

    def tight(v, hs):
        u, c = hs
        return sum(Fraction(a) * b for a, b in zip(u, v)) == Fraction(c)

    def active(v):
        return frozenset(j for j, hs in enumerate(halfspaces) if tight(v, hs))

    act = {v: active(v) for v in verts}

    def affine_dim(vs):
        if len(vs) <= 1:
            return 0
        base = vs[0]
        return rational_rank([[a - b for a, b in zip(v, base)] for v in vs[1:]])

    def bary(vs):
        k = len(vs)
        return tuple(sum(col) / k for col in zip(*vs))

    def simplices(vs, dim):
        vs = sorted(set(vs))
        if len(vs) == dim + 1:
            return [tuple(vs)]
        b = bary(vs)
        out = []
        common = frozenset.intersection(*(act[v] for v in vs))
        for j in range(len(halfspaces)):
            if j in common:
                continue
            sub = [v for v in vs if j in act[v]]
            if len(sub) >= dim and affine_dim(sub) == dim - 1:
                for s in simplices(sub, dim - 1):
                    out.append(s + (b,))
        return out

    total = Fraction(0)
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    for s in simplices(verts, n):
        mat = [[s[i + 1][j] - s[0][j] for j in range(n)] for i in range(n)]
        total += abs(det_fraction(mat)) / fact
    return total
