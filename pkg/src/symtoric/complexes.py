"""Simplicial complexes, open-star covers, and polyhedral triangulation.

Triangulation of a domain uses the pulling rule with the global
lexicographic vertex order: every face is coned from its smallest vertex
over the pulled triangulations of the facets avoiding it.  The rule is
intrinsic to each face, so cells sharing a face triangulate it
identically, and simplices never cross strata.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .domain import (
    DomainError,
    PolyhedralDomain,
    _active_at,
    _faces_bounded,
    _vertices_of_cell,
)


class ComplexError(ValueError):
    """Malformed simplicial data or an unmet triangulation precondition."""


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite abstract complex given by its maximal simplices.

    Vertices are 0..n_vertices-1; optional rational coordinates attach a
    geometric realization.  Simplex orientation is the ascending vertex
    order throughout.
    """

    n_vertices: int
    maximal_simplices: tuple[tuple[int, ...], ...]
    coordinates: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        if self.n_vertices < 0:
            raise ComplexError("negative vertex count")
        for s in self.maximal_simplices:
            if len(set(s)) != len(s):
                raise ComplexError(f"repeated vertex in simplex {s}")
            if any(not (0 <= v < self.n_vertices) for v in s):
                raise ComplexError(f"vertex index out of range in simplex {s}")
            if tuple(sorted(s)) != s:
                raise ComplexError("maximal simplices must be sorted")
        if self.coordinates is not None and len(self.coordinates) != self.n_vertices:
            raise ComplexError("coordinate count does not match vertex count")

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.maximal_simplices), default=-1)

    def simplices(self, p: int) -> list[tuple[int, ...]]:
        """All p-simplices of the downward closure, sorted."""
        if p < 0:
            return []
        out = set()
        for m in self.maximal_simplices:
            if len(m) >= p + 1:
                out.update(combinations(m, p + 1))
        return sorted(out)

    def all_simplices(self) -> list[tuple[int, ...]]:
        out = []
        for p in range(self.dimension + 1):
            out.extend(self.simplices(p))
        return out

    def has_simplex(self, s: Sequence[int]) -> bool:
        key = tuple(sorted(s))
        return any(set(key) <= set(m) for m in self.maximal_simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * len(self.simplices(p)) for p in range(self.dimension + 1))

    def is_isomorphic_by_vertex_identity(self, other: "SimplicialComplex") -> bool:
        return (
            self.n_vertices == other.n_vertices
            and self.all_simplices() == other.all_simplices()
        )


def abstract_complex(data, coordinates=None) -> SimplicialComplex:
    """Validated complex from raw maximal-simplex lists (or a JSON dict)."""
    if isinstance(data, dict):
        try:
            n = int(data["vertices"])
            raw = data["maximal_simplices"]
            coordinates = data.get("coordinates", coordinates)
        except (KeyError, TypeError, ValueError) as exc:
            raise ComplexError(f"malformed complex description: {exc}") from exc
    else:
        raw = list(data)
        n = max((max(s) for s in raw if s), default=-1) + 1
    cleaned = []
    for s in raw:
        simplex = tuple(int(v) for v in s)
        if len(set(simplex)) != len(simplex):
            raise ComplexError(f"repeated vertex in simplex {simplex}")
        cleaned.append(tuple(sorted(simplex)))
    cleaned = sorted(set(cleaned))
    maximal = tuple(
        s for s in cleaned if not any(s != t and set(s) <= set(t) for t in cleaned)
    )
    coords = None
    if coordinates is not None:
        coords = tuple(tuple(Fraction(str(x)) for x in pt) for pt in coordinates)
    return SimplicialComplex(n, maximal, coords)


@dataclass(frozen=True)
class Cover:
    """Open-star cover of a complex: one element per vertex, plus its nerve."""

    index_set: tuple[int, ...]
    nerve: SimplicialComplex


def open_star_cover(complex_: SimplicialComplex) -> Cover:
    """Cover by open stars of vertices; nerve from star intersections.

    A set of vertices spans a nerve simplex exactly when their open stars
    all meet, which happens exactly when some simplex of the complex
    contains all of them.
    """
    if complex_.n_vertices == 0:
        raise ComplexError("open-star cover of an empty complex")
    nerve_simplices = set()
    for m in complex_.maximal_simplices:
        for size in range(1, len(m) + 1):
            for sub in combinations(m, size):
                nerve_simplices.add(sub)
    nerve_sorted = sorted(nerve_simplices)
    maximal = tuple(
        s
        for s in nerve_sorted
        if not any(s != t and set(s) <= set(t) for t in nerve_sorted)
    )
    nerve = SimplicialComplex(complex_.n_vertices, maximal, complex_.coordinates)
    return Cover(tuple(range(complex_.n_vertices)), nerve)


def _pull_triangulation(face_key, faces_by_key, memo):
    """Simplices of the pulled triangulation of one face, as vertex tuples.

    ``faces_by_key`` maps frozenset-of-coordinates keys to (dim, facet keys).
    """
    if face_key in memo:
        return memo[face_key]
    dim, facet_keys = faces_by_key[face_key]
    if dim == 0:
        (v,) = face_key
        memo[face_key] = [(v,)]
        return memo[face_key]
    lowest = min(face_key)
    out = []
    for fk in sorted(facet_keys, key=sorted):
        if lowest in fk:
            continue
        for s in _pull_triangulation(fk, faces_by_key, memo):
            out.append(s + (lowest,))
    memo[face_key] = out
    return out


def triangulate(domain: PolyhedralDomain) -> SimplicialComplex:
    """Stratification-compatible geometric triangulation of a bounded domain.

    Unbounded domains must carry a bounding box; the box is intersected
    into every cell first.
    """
    if not domain.all_bounded():
        if domain.bounding_box is None:
            raise ComplexError("unbounded cell without bounding box")
        domain = domain.truncated()
        if not domain.all_bounded():
            raise ComplexError("bounding box leaves an unbounded cell")

    n = domain.ambient_dim
    faces_by_key: dict = {}
    top_keys = []
    for ci, cell in enumerate(domain.cells):
        verts = _vertices_of_cell(cell, n)
        vert_active = {v: _active_at(cell, v) for v in verts}
        cell_faces = _faces_bounded(ci, cell, n)
        keyed = []
        for f in cell_faces:
            vset = frozenset(
                v for v in verts if frozenset(f.active) <= vert_active[v]
            )
            keyed.append((n - f.codim, vset))
        for dim, key in keyed:
            facets = frozenset(
                k for d2, k in keyed if d2 == dim - 1 and k < key
            )
            if key in faces_by_key:
                known_dim, known_facets = faces_by_key[key]
                if known_dim != dim:
                    raise ComplexError("inconsistent shared face data")
                faces_by_key[key] = (dim, known_facets | facets)
            else:
                faces_by_key[key] = (dim, facets)
        top_keys.append(next(key for dim, key in keyed if dim == n))

    memo: dict = {}
    simplices = set()
    for key in top_keys:
        for s in _pull_triangulation(key, faces_by_key, memo):
            simplices.add(tuple(sorted(s)))

    vertex_list = sorted({v for s in simplices for v in s})
    index = {v: i for i, v in enumerate(vertex_list)}
    maximal = tuple(sorted(tuple(sorted(index[v] for v in s)) for s in simplices))
    return SimplicialComplex(len(vertex_list), maximal, tuple(vertex_list))
