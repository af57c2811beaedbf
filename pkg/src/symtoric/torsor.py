"""Picard group of bundle classes and its free transitive action on
manifold classes.

Classes are finite data: elements of H^2(W; Z^n + R).  The bundle classes
form an abelian group under tensor (= class addition, neutral = the
pullback bundle class); manifold classes form an affine copy acted on by
translation.  ``verify_torsor`` checks the torsor axioms exhaustively for
finite groups and by seeded sampling plus generator coverage otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cohomology import Coefficients, CohomologyClass, CohomologyGroup, cohomology
from .complexes import SimplicialComplex, triangulate
from .domain import PolyhedralDomain


class TorsorError(ValueError):
    """Group or torsor mismatch between operands."""


@dataclass(frozen=True)
class PicardGroup:
    """Group of bundle classes over a fixed base: H^2 with Z^n + R coefficients."""

    presentation: CohomologyGroup
    provenance: str

    def zero(self) -> "PicClass":
        return PicClass(self, self.presentation.zero())

    def from_coords(self, free=(), torsion=(), real=()) -> "PicClass":
        return PicClass(self, self.presentation.from_coords(free, torsion, real))

    @property
    def is_finite(self) -> bool:
        return self.presentation.is_finite

    @property
    def order(self) -> int:
        return self.presentation.order

    def elements(self) -> list["PicClass"]:
        if not self.is_finite:
            raise TorsorError("cannot enumerate an infinite group")
        out = []
        for combo in product(*(range(d) for d in self.presentation.torsion)):
            out.append(self.from_coords(torsion=combo))
        return out

    def generators(self) -> list["PicClass"]:
        pres = self.presentation
        out = []
        for i in range(pres.free_rank):
            coords = [0] * pres.free_rank
            coords[i] = 1
            out.append(self.from_coords(free=coords))
        for i in range(len(pres.torsion)):
            coords = [0] * len(pres.torsion)
            coords[i] = 1
            out.append(self.from_coords(torsion=coords))
        for i in range(pres.real_dim):
            coords = [Fraction(0)] * pres.real_dim
            coords[i] = Fraction(1)
            out.append(self.from_coords(real=coords))
        return out

    def sample(self, rng: random.Random) -> "PicClass":
        pres = self.presentation
        free = [rng.randint(-9, 9) for _ in range(pres.free_rank)]
        torsion = [rng.randrange(d) for d in pres.torsion]
        real = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(pres.real_dim)]
        return self.from_coords(free, torsion, real)


@dataclass(frozen=True)
class PicClass:
    """Isomorphism class of a symplectic toric bundle over the base."""

    group: PicardGroup
    cls: CohomologyClass

    def __add__(self, other: "PicClass") -> "PicClass":
        if self.group != other.group:
            raise TorsorError("classes live in different Picard groups")
        return PicClass(self.group, self.cls + other.cls)

    def __neg__(self) -> "PicClass":
        return PicClass(self.group, -self.cls)

    @property
    def is_zero(self) -> bool:
        return self.cls.is_zero


@dataclass(frozen=True)
class StmClass:
    """Isomorphism class of a symplectic toric manifold: a torsor point."""

    group: PicardGroup
    cls: CohomologyClass


@dataclass(frozen=True)
class StmTorsor:
    """Manifold classes with the canonical class (pullback bundle) at zero."""

    group: PicardGroup

    @property
    def base_point(self) -> StmClass:
        return StmClass(self.group, self.group.presentation.zero())

    def class_count(self) -> int | str:
        return self.group.order if self.group.is_finite else "infinite"


def picard_group(space, n: int, degree: int = 2) -> PicardGroup:
    """Group of bundle classes of a domain or complex, for an n-torus."""
    if n < 1:
        raise TorsorError("torus dimension must be positive")
    if isinstance(space, PolyhedralDomain):
        complex_ = triangulate(space)
        provenance = f"triangulated polyhedral domain ({len(space.cells)} cells)"
    elif isinstance(space, SimplicialComplex):
        complex_ = space
        provenance = f"simplicial complex ({space.n_vertices} vertices)"
    else:
        raise TorsorError(f"unsupported base space {type(space).__name__}")
    pres = cohomology(complex_, Coefficients.mixed(n), degree)
    return PicardGroup(pres, provenance)


def tensor(a: PicClass, b: PicClass) -> PicClass:
    """Product of bundle classes; commutative and associative with neutral 0."""
    return a + b


def act(p: PicClass, m: StmClass) -> StmClass:
    """Translate a manifold class by a bundle class."""
    if p.group != m.group:
        raise TorsorError("bundle and manifold classes live over different groups")
    return StmClass(m.group, m.cls + p.cls)


def difference(m2: StmClass, m1: StmClass) -> PicClass:
    """The unique bundle class carrying m1 to m2."""
    if m2.group != m1.group:
        raise TorsorError("manifold classes live over different groups")
    return PicClass(m1.group, m2.cls - m1.cls)


def verify_torsor(
    torsor: StmTorsor, seed: int = 0, samples: int = 1000
) -> dict:
    """Check the torsor axioms; exhaustive for finite groups, sampled else.

    Axioms: (i) the neutral class acts trivially, (ii) acting by a tensor
    product equals acting twice, (iii) the action is free, (iv) it is
    transitive with the witness produced by ``difference``.
    """
    group = torsor.group
    base = torsor.base_point
    exhaustive = group.is_finite

    if exhaustive:
        ps = group.elements()
        ms = [act(p, base) for p in ps]
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        gens = group.generators()
        ps = gens + [-g for g in gens] + [group.sample(rng) for _ in range(samples)]
        ms = [base] + [act(p, base) for p in ps]
        mode = f"sampled(seed={seed})"

    identity_ok = all(act(group.zero(), m).cls == m.cls for m in ms)
    identity_count = len(ms)

    compat_ok = True
    compat_count = 0
    if exhaustive:
        for p in ps:
            for q in ps:
                for m in ms:
                    compat_ok &= act(p, act(q, m)).cls == act(tensor(p, q), m).cls
                    compat_count += 1
    else:
        rng2 = random.Random(seed + 1)
        for _ in range(samples):
            p = group.sample(rng2)
            q = group.sample(rng2)
            m = act(group.sample(rng2), base)
            compat_ok &= act(p, act(q, m)).cls == act(tensor(p, q), m).cls
            compat_count += 1

    free_ok = True
    free_count = 0
    if exhaustive:
        for p in ps:
            if p.is_zero:
                continue
            for m in ms:
                free_ok &= act(p, m).cls != m.cls
                free_count += 1
    else:
        rng3 = random.Random(seed + 2)
        pool = [p for p in ps if not p.is_zero]
        for _ in range(samples):
            p = pool[rng3.randrange(len(pool))]
            m = act(group.sample(rng3), base)
            free_ok &= act(p, m).cls != m.cls
            free_count += 1

    trans_ok = True
    trans_count = 0
    if exhaustive:
        for m1 in ms:
            for m2 in ms:
                d = difference(m2, m1)
                trans_ok &= act(d, m1).cls == m2.cls
                witnesses = sum(1 for p in ps if act(p, m1).cls == m2.cls)
                trans_ok &= witnesses == 1
                trans_count += 1
    else:
        rng4 = random.Random(seed + 3)
        for _ in range(samples):
            m1 = act(group.sample(rng4), base)
            m2 = act(group.sample(rng4), base)
            d = difference(m2, m1)
            trans_ok &= act(d, m1).cls == m2.cls
            trans_count += 1

    bijective_ok = True
    if exhaustive:
        images = {act(p, base).cls for p in ps}
        bijective_ok = len(images) == len(ps)

    return {
        "picard": group.presentation.as_json_dict(),
        "stm_count": torsor.class_count(),
        "torsor_axioms": {
            "identity": identity_ok,
            "compatibility": compat_ok,
            "freeness": free_ok,
            "transitivity": trans_ok,
        },
        "base_orbit_bijective": bijective_ok,
        "witnesses": {
            "identity": identity_count,
            "compatibility": compat_count,
            "freeness": free_count,
            "transitivity": trans_count,
        },
        "mode": mode,
        "all_pass": identity_ok and compat_ok and free_ok and trans_ok and bijective_ok,
    }
