"""Cones at points of g*: membership, unimodularity, cone of a face.

A cone is stored as a rational apex plus primitive integer inward normals;
it is *unimodular* when the normals form a basis of a direct summand of
the integer lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lattice import is_basis_of_lattice_summand, primitive


class ConeError(ValueError):
    """Malformed cone data or a point/face precondition violation."""


def _as_point(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in values)


def dot(point: Sequence[Fraction], vector: Sequence[int]) -> Fraction:
    return sum(Fraction(p) * v for p, v in zip(point, vector))


@dataclass(frozen=True)
class Cone:
    """{eta : <eta - apex, v_i> >= 0 for all i} with primitive normals v_i."""

    apex: tuple[Fraction, ...]
    normals: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "apex", _as_point(self.apex))
        object.__setattr__(self, "normals", tuple(tuple(int(x) for x in v) for v in self.normals))
        n = len(self.apex)
        if len(self.normals) > n:
            raise ConeError("more normals than ambient dimensions")
        for v in self.normals:
            if len(v) != n:
                raise ConeError("normal dimension mismatch")
            if primitive(v) != v:
                raise ConeError(f"normal {v} is not primitive")
        for i, v in enumerate(self.normals):
            for w in self.normals[i + 1 :]:
                if v == w or v == tuple(-x for x in w):
                    raise ConeError(f"parallel normals {v} and {w}")

    @property
    def ambient_dim(self) -> int:
        return len(self.apex)

    def contains(self, point) -> bool:
        eta = _as_point(point)
        if len(eta) != self.ambient_dim:
            raise ConeError("point dimension mismatch")
        shifted = tuple(a - b for a, b in zip(eta, self.apex))
        return all(dot(shifted, v) >= 0 for v in self.normals)

    def is_unimodular(self) -> bool:
        return is_basis_of_lattice_summand(self.normals)


def is_unimodular(cone: Cone) -> bool:
    return cone.is_unimodular()


def contains(cone: Cone, point) -> bool:
    return cone.contains(point)


def cone_at_face(halfspaces, active, apex) -> Cone:
    """Cone of a polyhedron face: apex plus normals of the active constraints.

    ``halfspaces`` is a sequence of (normal, offset) pairs meaning
    <x, normal> >= offset; ``active`` indexes the constraints tight on the
    face; ``apex`` must lie in the face's relative interior, i.e. tight on
    exactly the active constraints.
    """
    hs = [(tuple(int(x) for x in u), Fraction(c)) for u, c in halfspaces]
    apex = _as_point(apex)
    active = frozenset(active)
    if active and not active.issubset(range(len(hs))):
        raise ConeError("active set indexes unknown constraints")
    normals = []
    for j, (u, c) in enumerate(hs):
        slack = dot(apex, u) - c
        if slack < 0:
            raise ConeError(f"apex violates constraint {j}")
        if (slack == 0) != (j in active):
            raise ConeError(
                f"apex is not in the relative interior: constraint {j} "
                f"{'tight' if slack == 0 else 'slack'} but active set says otherwise"
            )
        if j in active:
            normals.append(primitive(u))
    return Cone(apex, tuple(normals))
