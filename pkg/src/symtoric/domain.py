"""Rational polyhedral domains in g*: stratification and Delzant-type checks.

A domain is a finite union of full-dimensional convex rational polyhedra
(cells, H-representation) that pairwise intersect in common faces.  The
embedding into g* is the inclusion, so checking the generalized Delzant
condition reduces to checking the cone at every stratum.

Bounded cells are stratified combinatorially from their vertex/facet
incidence; unbounded cells fall back to exact LP (implicit-equality
detection and relative-interior points via the simplex in ``_lp``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import _lp
from .cones import Cone, cone_at_face, dot
from .lattice import IntegerMatrix, elementary_divisors, primitive


class DomainError(ValueError):
    """Invalid polyhedral data or a violated precondition."""


@dataclass(frozen=True)
class Halfspace:
    """<x, normal> >= offset with a primitive integer normal."""

    normal: tuple[int, ...]
    offset: Fraction

    @classmethod
    def make(cls, normal: Sequence[int], offset) -> "Halfspace":
        vec = tuple(int(x) for x in normal)
        if not any(vec):
            raise DomainError("zero normal in halfspace")
        off = Fraction(offset)
        prim = primitive(vec)
        scale = next(v // p for v, p in zip(vec, prim) if p != 0)
        return cls(prim, off / scale)

    def slack(self, point) -> Fraction:
        return dot(point, self.normal) - self.offset


Cell = tuple[Halfspace, ...]


@dataclass(frozen=True)
class Face:
    """A stratum: owning cell, closed active set, codimension, witness point."""

    cell: int
    active: tuple[int, ...]
    codim: int
    relint_point: tuple[Fraction, ...]


@dataclass(frozen=True)
class StratumReport:
    cell: int
    active: tuple[int, ...]
    codim: int
    apex: tuple[Fraction, ...]
    normals: tuple[tuple[int, ...], ...]
    cone: Cone | None
    unimodular: bool
    reason: str
    snf_divisors: tuple[int, ...] | None

    def as_json_dict(self) -> dict:
        return {
            "cell": self.cell,
            "active": list(self.active),
            "codim": self.codim,
            "apex": [str(x) for x in self.apex],
            "normals": [list(v) for v in self.normals],
            "unimodular": self.unimodular,
            "reason": self.reason,
            "snf_divisors": list(self.snf_divisors) if self.snf_divisors is not None else None,
        }


def _rank_int(rows: Sequence[Sequence[int]], ncols: int) -> int:
    if not rows:
        return 0
    return sum(1 for d in elementary_divisors(IntegerMatrix.from_rows(rows, ncols)) if d)


def _active_at(cell: Cell, point) -> frozenset:
    return frozenset(j for j, h in enumerate(cell) if h.slack(point) == 0)


def _point_in_cell(cell: Cell, point) -> bool:
    return all(h.slack(point) >= 0 for h in cell)


def _solve_square(rows, rhs):
    """Exact solution of a square rational system, or None if singular."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[r][n] for r in range(n))


def _max_min_slack(cell: Cell, active: frozenset, n: int) -> _lp.LPResult:
    """max t with active constraints tight, others at slack >= t, t <= 1."""
    eqs = [(list(cell[j].normal) + [0], cell[j].offset) for j in sorted(active)]
    ineqs = [
        (list(h.normal) + [-1], h.offset)
        for j, h in enumerate(cell)
        if j not in active
    ]
    ineqs.append(([0] * n + [-1], -1))
    return _lp.maximize([0] * n + [1], ineqs, eqs, n + 1)


def _closure_lp(cell: Cell, active: frozenset, n: int):
    """Closed active set and relative-interior point of F(active), or None."""
    res = _max_min_slack(cell, active, n)
    if res.status == _lp.INFEASIBLE:
        return None
    assert res.status == _lp.OPTIMAL
    if res.value > 0:
        return frozenset(active), res.point[:n]
    closed = set(active)
    eqs = [(cell[j].normal, cell[j].offset) for j in sorted(active)]
    ineqs = [(h.normal, h.offset) for j, h in enumerate(cell) if j not in active]
    for j, h in enumerate(cell):
        if j in active:
            continue
        top = _lp.maximize(h.normal, ineqs, eqs, n)
        if top.status == _lp.OPTIMAL and top.value == h.offset:
            closed.add(j)
    res2 = _max_min_slack(cell, frozenset(closed), n)
    assert res2.status == _lp.OPTIMAL and res2.value > 0
    return frozenset(closed), res2.point[:n]


def _faces_lp(cell_index: int, cell: Cell, n: int) -> list[Face]:
    root = _closure_lp(cell, frozenset(), n)
    assert root is not None and root[0] == frozenset()
    found = {}
    queue = [root]
    while queue:
        active, point = queue.pop(0)
        if active in found:
            continue
        codim = _rank_int([cell[j].normal for j in sorted(active)], n)
        found[active] = Face(cell_index, tuple(sorted(active)), codim, point)
        for j in range(len(cell)):
            if j in active:
                continue
            child = _closure_lp(cell, active | {j}, n)
            if child is not None and child[0] not in found:
                queue.append(child)
    return list(found.values())


def _vertices_of_cell(cell: Cell, n: int) -> list[tuple[Fraction, ...]]:
    seen = set()
    out = []
    for idx in combinations(range(len(cell)), n):
        sol = _solve_square([cell[j].normal for j in idx], [cell[j].offset for j in idx])
        if sol is None or sol in seen:
            continue
        if _point_in_cell(cell, sol):
            seen.add(sol)
            out.append(sol)
    return sorted(out)


def _barycenter(points) -> tuple[Fraction, ...]:
    k = len(points)
    return tuple(sum(col, Fraction(0)) / k for col in zip(*points))


def _faces_bounded(cell_index: int, cell: Cell, n: int) -> list[Face]:
    verts = _vertices_of_cell(cell, n)
    assert verts, "bounded nonempty cell must have vertices"
    vert_active = {v: _active_at(cell, v) for v in verts}

    def closure(subset):
        carrier = [v for v in verts if subset <= vert_active[v]]
        if not carrier:
            return None
        closed = frozenset.intersection(*(vert_active[v] for v in carrier))
        return closed, carrier

    found = {}
    queue = [frozenset()]
    while queue:
        subset = queue.pop(0)
        got = closure(subset)
        if got is None:
            continue
        closed, carrier = got
        if closed in found:
            continue
        codim = _rank_int([cell[j].normal for j in sorted(closed)], n)
        found[closed] = Face(cell_index, tuple(sorted(closed)), codim, _barycenter(carrier))
        for j in range(len(cell)):
            if j not in closed:
                queue.append(closed | {j})
    return list(found.values())


def _is_bounded(cell: Cell, n: int) -> bool:
    if _rank_int([h.normal for h in cell], n) < n:
        return False
    recession = [(h.normal, 0) for h in cell]
    for i in range(n):
        unit = [0] * n
        for sign in (1, -1):
            unit[i] = sign
            if _lp.feasible_point(recession, [(list(unit), 1)], n) is not None:
                return False
        unit[i] = 0
    return True


class PolyhedralDomain:
    """Union of full-dimensional rational cells meeting in common faces."""

    def __init__(self, ambient_dim: int, cells: Iterable[Iterable], bounding_box=None):
        if ambient_dim < 1:
            raise DomainError("ambient dimension must be positive")
        self.ambient_dim = int(ambient_dim)
        self.cells: tuple[Cell, ...] = tuple(
            self._normalize_cell(cell) for cell in cells
        )
        if not self.cells:
            raise DomainError("domain needs at least one cell")
        self.bounding_box = self._parse_box(bounding_box)
        self._interior_points = tuple(self._validate_cell(c) for c in self.cells)
        self._validate_pairwise()
        self._bounded_flags = tuple(_is_bounded(c, self.ambient_dim) for c in self.cells)

    def _normalize_cell(self, cell) -> Cell:
        out = []
        for item in cell:
            if isinstance(item, Halfspace):
                hs = Halfspace.make(item.normal, item.offset)
            else:
                normal, offset = item
                hs = Halfspace.make(normal, offset)
            if len(hs.normal) != self.ambient_dim:
                raise DomainError("halfspace dimension mismatch")
            if hs in out:
                raise DomainError(f"duplicate halfspace {hs.normal} >= {hs.offset}")
            out.append(hs)
        return tuple(out)

    def _parse_box(self, box):
        if box is None:
            return None
        box = [(Fraction(lo), Fraction(hi)) for lo, hi in box]
        if len(box) != self.ambient_dim:
            raise DomainError("bounding box dimension mismatch")
        if any(lo >= hi for lo, hi in box):
            raise DomainError("bounding box interval is empty")
        return tuple(box)

    def _validate_cell(self, cell: Cell):
        res = _max_min_slack(cell, frozenset(), self.ambient_dim)
        if res.status != _lp.OPTIMAL or res.value <= 0:
            raise DomainError("cell is empty or not full-dimensional")
        return res.point[: self.ambient_dim]

    def _validate_pairwise(self):
        n = self.ambient_dim
        for i, j in combinations(range(len(self.cells)), 2):
            ci, cj = self.cells[i], self.cells[j]
            both = [(h.normal, h.offset) for h in ci + cj]
            if _lp.feasible_point(both, (), n) is None:
                continue
            for cell_a, cell_b in ((ci, cj), (cj, ci)):
                tight = []
                for k, h in enumerate(cell_a):
                    top = _lp.maximize(h.normal, both, (), n)
                    if top.status == _lp.OPTIMAL and top.value == h.offset:
                        tight.append(k)
                eqs = [(cell_a[k].normal, cell_a[k].offset) for k in tight]
                ineqs = [
                    (h.normal, h.offset)
                    for k, h in enumerate(cell_a)
                    if k not in tight
                ]
                for h in cell_b:
                    low = _lp.maximize([-x for x in h.normal], ineqs, eqs, n)
                    if low.status == _lp.UNBOUNDED or -low.value < h.offset:
                        raise DomainError(
                            f"cells {i} and {j} do not intersect in a common face"
                        )

    # -- queries ---------------------------------------------------------

    def interior_point(self, cell_index: int) -> tuple[Fraction, ...]:
        return self._interior_points[cell_index]

    def cell_bounded(self, cell_index: int) -> bool:
        return self._bounded_flags[cell_index]

    def all_bounded(self) -> bool:
        return all(self._bounded_flags)

    def truncated(self) -> "PolyhedralDomain":
        """Domain with the bounding box intersected into every cell."""
        if self.bounding_box is None:
            raise DomainError("no bounding box to truncate with")
        n = self.ambient_dim
        extra = []
        for i, (lo, hi) in enumerate(self.bounding_box):
            e = [0] * n
            e[i] = 1
            extra.append((tuple(e), lo))
            e2 = [0] * n
            e2[i] = -1
            extra.append((tuple(e2), -hi))
        new_cells = []
        for cell in self.cells:
            items = [(h.normal, h.offset) for h in cell]
            for hs in extra:
                if hs not in items:
                    items.append(hs)
            new_cells.append(items)
        return PolyhedralDomain(n, new_cells)

    @classmethod
    def from_json(cls, data: dict) -> "PolyhedralDomain":
        try:
            n = int(data["ambient_dim"])
            cells = []
            for cell in data["cells"]:
                cells.append(
                    [(hs["normal"], Fraction(str(hs["offset"]))) for hs in cell["halfspaces"]]
                )
            box = data.get("bounding_box")
            if box is not None:
                box = [(Fraction(str(lo)), Fraction(str(hi))) for lo, hi in box]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"malformed domain description: {exc}") from exc
        return cls(n, cells, box)


def enumerate_strata(domain: PolyhedralDomain) -> list[Face]:
    """All faces of all cells, shared faces reported once."""
    n = domain.ambient_dim
    kept: list[Face] = []
    for ci, cell in enumerate(domain.cells):
        if domain.cell_bounded(ci):
            faces = _faces_bounded(ci, cell, n)
        else:
            faces = _faces_lp(ci, cell, n)
        for face in faces:
            duplicate = False
            for other in kept:
                if other.codim != face.codim or other.cell == ci:
                    continue
                other_cell = domain.cells[other.cell]
                if _point_in_cell(other_cell, face.relint_point) and _active_at(
                    other_cell, face.relint_point
                ) == frozenset(other.active):
                    duplicate = True
                    break
            if not duplicate:
                kept.append(face)
    kept.sort(key=lambda f: (f.codim, f.cell, f.active))
    return kept


def _report_for_face(domain: PolyhedralDomain, face: Face) -> StratumReport:
    cell = domain.cells[face.cell]
    normals = tuple(primitive(cell[j].normal) for j in face.active)
    k = len(normals)
    if k != face.codim:
        cone = None
        if k <= domain.ambient_dim:
            cone = cone_at_face(
                [(h.normal, h.offset) for h in cell], face.active, face.relint_point
            )
        return StratumReport(
            face.cell, face.active, face.codim, face.relint_point, normals, cone, False,
            f"non-simple: {k} active facets on a codimension-{face.codim} stratum",
            None,
        )
    cone = cone_at_face(
        [(h.normal, h.offset) for h in cell], face.active, face.relint_point
    )
    divisors = elementary_divisors(
        IntegerMatrix.from_rows(cone.normals, domain.ambient_dim)
    )
    ok = all(d == 1 for d in divisors)
    reason = "unimodular cone" if ok else f"elementary divisors {tuple(divisors)} != all ones"
    return StratumReport(
        face.cell, face.active, face.codim, face.relint_point, cone.normals, cone, ok,
        reason, divisors,
    )


def check_unimodular_local_embedding(domain: PolyhedralDomain) -> list[StratumReport]:
    """One report per stratum; the domain passes iff every report does."""
    return [_report_for_face(domain, f) for f in enumerate_strata(domain)]


def check_delzant(halfspaces, ambient_dim: int) -> tuple[bool, list[StratumReport]]:
    """Vertex-by-vertex Delzant test of a single bounded polytope."""
    domain = PolyhedralDomain(ambient_dim, [halfspaces])
    if not domain.cell_bounded(0):
        raise DomainError("check_delzant requires a bounded polytope")
    reports = [
        _report_for_face(domain, f)
        for f in enumerate_strata(domain)
        if f.codim == ambient_dim
    ]
    return all(r.unimodular for r in reports), reports
