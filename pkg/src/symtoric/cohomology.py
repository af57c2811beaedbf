"""Simplicial cohomology with Z^n, R, and Z^n + R coefficients.

Groups are computed from the two coboundary matrices around the requested
degree: Smith normal form gives the integer structure (free rank plus a
torsion divisor chain) and, since the kernel lattice is saturated, the
rational structure falls out of the same transforms.  Classes carry
canonical coordinates, so cohomologous cocycles map to equal class
objects.  Real coordinates stay exact rationals.

Orientation convention: simplices are oriented by ascending vertex order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complexes import SimplicialComplex
from .lattice import IntegerMatrix, smith_normal_form


class CohomologyError(ValueError):
    """Bad coefficient data, presentation mismatch, or malformed cochain."""


class CocycleError(CohomologyError):
    """Input cochain is not a cocycle; names the violated simplex."""


@dataclass(frozen=True)
class Coefficients:
    """Coefficient system Z^int_rank, R, or their direct sum."""

    int_rank: int
    real: bool

    def __post_init__(self):
        if self.int_rank < 0:
            raise CohomologyError("negative lattice rank")
        if self.int_rank == 0 and not self.real:
            raise CohomologyError("empty coefficient system")

    @classmethod
    def lattice(cls, n: int) -> "Coefficients":
        return cls(n, False)

    @classmethod
    def reals(cls) -> "Coefficients":
        return cls(0, True)

    @classmethod
    def mixed(cls, n: int) -> "Coefficients":
        return cls(n, True)

    @property
    def tag(self) -> str:
        parts = []
        if self.int_rank == 1:
            parts.append("Z")
        elif self.int_rank > 1:
            parts.append(f"Z^{self.int_rank}")
        if self.real:
            parts.append("R")
        return "+".join(parts)


def coboundary_matrix(complex_: SimplicialComplex, p: int) -> IntegerMatrix:
    """delta_p : C^p -> C^(p+1), rows per (p+1)-simplex, ascending-order signs."""
    lo = complex_.simplices(p)
    hi = complex_.simplices(p + 1)
    col = {s: j for j, s in enumerate(lo)}
    rows = []
    for tau in hi:
        row = [0] * len(lo)
        for i in range(len(tau)):
            face = tau[:i] + tau[i + 1 :]
            row[col[face]] += (-1) ** i
        rows.append(row)
    return IntegerMatrix.from_rows(rows, len(lo))


def _solve_full_column_rank(columns, rhs):
    """Solve M w = rhs for M with full column rank, given M as column list.

    Returns the unique rational solution; asserts consistency (the callers
    only pass vectors known to lie in the column span).
    """
    z = len(columns)
    m = len(rhs)
    aug = [[Fraction(columns[j][i]) for j in range(z)] + [Fraction(rhs[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(z):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    assert len(pivots) == z, "kernel basis lost column rank"
    assert all(aug[i][z] == 0 for i in range(r, m)), "vector outside column span"
    sol = [Fraction(0)] * z
    for i, c in enumerate(pivots):
        sol[c] = aug[i][z]
    return sol


class _ScalarClassifier:
    """Normal-form machinery for one scalar coefficient (Z or Q) in one degree."""

    def __init__(self, complex_: SimplicialComplex, degree: int):
        self.degree = degree
        self.cochain_len = len(complex_.simplices(degree))
        self.up_simplices = complex_.simplices(degree + 1)
        up = coboundary_matrix(complex_, degree)
        down = coboundary_matrix(complex_, degree - 1) if degree > 0 else IntegerMatrix.from_rows(
            [[] for _ in range(self.cochain_len)], 0
        )
        self.up = up
        snf_up = smith_normal_form(up)
        rank_up = snf_up.rank
        # columns of the right transform at zero-divisor positions span the
        # full (saturated) integer kernel lattice
        kernel_cols = [
            tuple(snf_up.right.entries[i][j] for i in range(up.cols))
            for j in range(up.cols)
            if j >= len(snf_up.diag) or snf_up.diag[j] == 0
        ]
        self.kernel_basis = kernel_cols  # list of length-z columns
        self.z = len(kernel_cols)
        # coboundary image, rewritten in kernel coordinates
        w_cols = []
        for j in range(down.cols):
            col = [down.entries[i][j] for i in range(down.rows)]
            sol = _solve_full_column_rank(self.kernel_basis, col) if self.z else []
            assert all(x.denominator == 1 for x in sol)
            w_cols.append([int(x) for x in sol])
        w_rows = [[w_cols[j][i] for j in range(len(w_cols))] for i in range(self.z)]
        snf_w = smith_normal_form(IntegerMatrix.from_rows(w_rows, len(w_cols)))
        self.u2 = snf_w.left
        self.divisors = snf_w.diag
        self.rank_w = snf_w.rank
        self.torsion_positions = [
            i for i in range(self.rank_w) if self.divisors[i] > 1
        ]
        self.torsion = tuple(self.divisors[i] for i in self.torsion_positions)
        self.free_rank = self.z - self.rank_w

    def check_cocycle(self, values):
        for r, tau in enumerate(self.up_simplices):
            acc = sum(
                self.up.entries[r][j] * values[j] for j in range(self.cochain_len)
            )
            if acc != 0:
                raise CocycleError(
                    f"not a cocycle: coboundary is nonzero on simplex {tau}"
                )

    def classify(self, values, integral: bool):
        """(torsion coords, free coords) of a verified cocycle."""
        if self.z == 0:
            return (), ()
        w = _solve_full_column_rank(self.kernel_basis, values)
        u = [
            sum(self.u2.entries[i][j] * w[j] for j in range(self.z))
            for i in range(self.z)
        ]
        free = tuple(u[i] for i in range(self.rank_w, self.z))
        if integral:
            assert all(x.denominator == 1 for x in u)
            tors = tuple(int(u[i]) % self.divisors[i] for i in self.torsion_positions)
            return tors, tuple(int(x) for x in free)
        return (), tuple(Fraction(x) for x in free)


@dataclass(frozen=True)
class CohomologyGroup:
    """Presentation of H^degree(K; coefficients) with class machinery attached."""

    coefficients: Coefficients
    degree: int
    free_rank: int
    torsion: tuple[int, ...]
    real_dim: int
    classifier: "_ScalarClassifier" = field(compare=False, repr=False)

    def as_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "coefficients": self.coefficients.tag,
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "real_dim": self.real_dim,
        }

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion and self.real_dim == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0 and self.real_dim == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise CohomologyError("group is infinite")
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def zero(self) -> "CohomologyClass":
        return CohomologyClass(
            self,
            (0,) * self.free_rank,
            (0,) * len(self.torsion),
            (Fraction(0),) * self.real_dim,
        )

    def from_coords(self, free=(), torsion=(), real=()) -> "CohomologyClass":
        """Class with the given coordinates; omitted sectors default to zero."""
        free = tuple(int(x) for x in free) or (0,) * self.free_rank
        torsion = tuple(int(x) for x in torsion) or (0,) * len(self.torsion)
        real = tuple(
            Fraction(str(x)) if isinstance(x, str) else Fraction(x) for x in real
        ) or (Fraction(0),) * self.real_dim
        if len(free) != self.free_rank or len(torsion) != len(self.torsion) or len(real) != self.real_dim:
            raise CohomologyError("coordinate shape does not match presentation")
        torsion = tuple(t % d for t, d in zip(torsion, self.torsion))
        return CohomologyClass(self, free, torsion, real)


@dataclass(frozen=True)
class CohomologyClass:
    group: CohomologyGroup
    free: tuple[int, ...]
    torsion: tuple[int, ...]
    real: tuple[Fraction, ...]

    def __post_init__(self):
        for t, d in zip(self.torsion, self.group.torsion):
            if not 0 <= t < d:
                raise CohomologyError(f"torsion coordinate {t} outside [0, {d})")

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if self.group != other.group:
            raise CohomologyError("presentation mismatch in class addition")
        return CohomologyClass(
            self.group,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple((a + b) % d for a, b, d in zip(self.torsion, other.torsion, self.group.torsion)),
            tuple(a + b for a, b in zip(self.real, other.real)),
        )

    def __neg__(self) -> "CohomologyClass":
        return CohomologyClass(
            self.group,
            tuple(-a for a in self.free),
            tuple((-a) % d for a, d in zip(self.torsion, self.group.torsion)),
            tuple(-a for a in self.real),
        )

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + (-other)

    @property
    def is_zero(self) -> bool:
        return (
            all(x == 0 for x in self.free)
            and all(x == 0 for x in self.torsion)
            and all(x == 0 for x in self.real)
        )

    def coords_json(self) -> dict:
        return {
            "free": list(self.free),
            "torsion": list(self.torsion),
            "real": [str(x) for x in self.real],
        }


def cohomology(
    complex_: SimplicialComplex, coefficients: Coefficients, degree: int
) -> CohomologyGroup:
    """H^degree(K; coefficients), computed componentwise over the splitting."""
    if degree < 0:
        raise CohomologyError("negative degree")
    cls = _ScalarClassifier(complex_, degree)
    n = coefficients.int_rank
    free_rank = n * cls.free_rank
    torsion = tuple(d for d in cls.torsion for _ in range(n))
    real_dim = cls.free_rank if coefficients.real else 0
    return CohomologyGroup(coefficients, degree, free_rank, torsion, real_dim, cls)


def class_add(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    return a + b


def class_neg(a: CohomologyClass) -> CohomologyClass:
    return -a


def class_zero(group: CohomologyGroup) -> CohomologyClass:
    return group.zero()


def _split_values(values, coefficients: Coefficients, length: int):
    """Component lists: int components first, then the real component."""
    if len(values) != length:
        raise CohomologyError(
            f"expected {length} cochain values, got {len(values)}"
        )
    n = coefficients.int_rank
    int_parts = [[] for _ in range(n)]
    real_part = []
    for v in values:
        if coefficients.real and n > 0:
            ints, re = v
        elif coefficients.real:
            ints, re = (), v
        else:
            ints, re = v, None
        if n == 1 and isinstance(ints, int):
            ints = (ints,)
        if n > 0:
            ints = tuple(int(x) for x in ints)
            if len(ints) != n:
                raise CohomologyError("integer component has wrong width")
            for c in range(n):
                int_parts[c].append(ints[c])
        if coefficients.real:
            real_part.append(Fraction(str(re)) if isinstance(re, str) else Fraction(re))
    return int_parts, real_part


def cocycle_to_class(
    complex_: SimplicialComplex,
    coefficients: Coefficients,
    degree: int,
    values: Sequence,
) -> CohomologyClass:
    """Normal-form class of a cocycle given by its values on d-simplices.

    Values follow the sorted simplex order of ``complex_.simplices(degree)``.
    For Z^n coefficients each value is an n-tuple (a bare int when n = 1);
    for R a rational; for Z^n + R a pair (integer part, real part).
    """
    group = cohomology(complex_, coefficients, degree)
    cls = group.classifier
    int_parts, real_part = _split_values(values, coefficients, cls.cochain_len)
    for comp in int_parts:
        cls.check_cocycle(comp)
    if real_part:
        cls.check_cocycle(real_part)
    free = []
    torsion = []
    per_comp = [cls.classify(comp, integral=True) for comp in int_parts]
    for pos in range(len(cls.torsion)):
        for comp in per_comp:
            torsion.append(comp[0][pos])
    for pos in range(cls.free_rank):
        for comp in per_comp:
            free.append(comp[1][pos])
    real = ()
    if coefficients.real:
        if real_part:
            real = cls.classify(real_part, integral=False)[1]
        else:
            real = (Fraction(0),) * cls.free_rank
    return CohomologyClass(group, tuple(free), tuple(torsion), tuple(real))
