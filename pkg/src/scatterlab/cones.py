"""Exact rational polyhedral cones via the double-description method.

A cone is created from generators; its facet inequalities, the equations of
its linear span, its lineality space and its extremal rays are computed on
demand and cached.  All vectors are scaled to primitive integer vectors.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import dot, primitive, rank, rref, vec_gcd

IntVec = tuple[int, ...]


def _prim(v: Sequence[int]) -> IntVec:
    g = vec_gcd(v)
    if g <= 1:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def double_description(
    dim: int, ineqs: Sequence[IntVec], eqs: Sequence[IntVec] = ()
) -> tuple[list[IntVec], list[IntVec]]:
    """Solve {x : h.x >= 0 for h in ineqs, h.x = 0 for h in eqs}.

    Returns (lineality basis, extremal rays modulo lineality).
    """
    lin: list[IntVec] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[IntVec] = []
    seen: list[IntVec] = []
    constraints = [(tuple(h), True) for h in eqs] + [(tuple(h), False) for h in ineqs]
    for h, is_eq in constraints:
        if all(x == 0 for x in h):
            continue
        seen.append(h)
        l0 = next((l for l in lin if dot(h, l) != 0), None)
        if l0 is not None:
            hl0 = dot(h, l0)
            if hl0 < 0:
                l0 = tuple(-x for x in l0)
                hl0 = -hl0
            new_lin = []
            for l in lin:
                if l is l0 or l == l0 or l == tuple(-x for x in l0):
                    continue
                hl = dot(h, l)
                v = _prim([hl0 * a - hl * b for a, b in zip(l, l0)])
                if any(v):
                    new_lin.append(v)
            new_rays = []
            for r in rays:
                hr = dot(h, r)
                v = _prim([hl0 * a - hr * b for a, b in zip(r, l0)])
                if any(v):
                    new_rays.append(v)
            if not is_eq:
                new_rays.append(_prim(l0))
            lin = new_lin
            rays = new_rays
        else:
            plus, zero, minus = [], [], []
            for r in rays:
                v = dot(h, r)
                (plus if v > 0 else zero if v == 0 else minus).append((r, v))
            new_rays = [r for r, _ in zero]
            if not is_eq:
                new_rays += [r for r, _ in plus]
            for p, hp in plus:
                for q, hq in minus:
                    v = _prim([hp * a - hq * b for a, b in zip(q, p)])
                    if any(v):
                        new_rays.append(v)
            rays = new_rays
        rays = _extremal(dim, lin, rays, seen)
    return lin, rays


def _extremal(dim: int, lin, rays, constraints) -> list[IntVec]:
    target = dim - len(lin) - 1
    out = []
    sigs = set()
    for r in rays:
        tight = [h for h in constraints if dot(h, r) == 0]
        if rank(tight) != target:
            continue
        sig = frozenset(i for i, h in enumerate(constraints) if dot(h, r) == 0)
        if sig in sigs:
            continue
        sigs.add(sig)
        out.append(r)
    return out


def _canonical_basis(rows: Sequence[Sequence]) -> tuple[IntVec, ...]:
    if not rows:
        return ()
    red, _ = rref(rows)
    return tuple(primitive(r) for r in red)


def _project_out(v: Sequence, basis_rows: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Orthogonal projection (standard inner product) of v onto the complement of span(basis_rows)."""
    if not basis_rows:
        return tuple(Fraction(x) for x in v)
    # Gram-Schmidt on the basis rows
    ortho: list[list[Fraction]] = []
    for b in basis_rows:
        w = [Fraction(x) for x in b]
        for o in ortho:
            c = dot(w, o) / dot(o, o)
            w = [a - c * b2 for a, b2 in zip(w, o)]
        if any(w):
            ortho.append(w)
    out = [Fraction(x) for x in v]
    for o in ortho:
        c = dot(out, o) / dot(o, o)
        out = [a - c * b for a, b in zip(out, o)]
    return tuple(out)


class RationalCone:
    """The cone sigma(m_1..m_s) of nonnegative combinations of generators."""

    def __init__(self, generators: Iterable[Sequence], ambient: int | None = None):
        gens = [tuple(g) for g in generators]
        if ambient is None:
            if not gens:
                raise ValueError("ambient dimension needed for the zero cone")
            ambient = len(gens[0])
        self.ambient = ambient
        self._gens = tuple(primitive(g) for g in gens if any(x != 0 for x in g))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_constraints(
        cls, ambient: int, ineqs: Sequence[Sequence] = (), eqs: Sequence[Sequence] = ()
    ) -> "RationalCone":
        ineqs = [primitive(h) for h in ineqs if any(h)]
        eqs = [primitive(h) for h in eqs if any(h)]
        lin, rays = double_description(ambient, ineqs, eqs)
        gens = list(rays)
        for l in lin:
            gens.append(l)
            gens.append(tuple(-x for x in l))
        cone = cls(gens, ambient)
        cone.__dict__["_primal"] = (lin, rays)
        return cone

    @classmethod
    def hyperplane(cls, functional: Sequence) -> "RationalCone":
        return cls.from_constraints(len(functional), eqs=[functional])

    @classmethod
    def whole_space(cls, ambient: int) -> "RationalCone":
        return cls.from_constraints(ambient)

    # -- double description ---------------------------------------------------

    @cached_property
    def _dual(self) -> tuple[list[IntVec], list[IntVec]]:
        return double_description(self.ambient, self._gens)

    @property
    def equations(self) -> tuple[IntVec, ...]:
        """Functionals vanishing on the linear span of the cone."""
        return _canonical_basis(self._dual[0])

    @property
    def facets(self) -> list[IntVec]:
        """Facet functionals h with h . z >= 0 on the cone (modulo equations)."""
        return self._dual[1]

    @cached_property
    def _primal(self) -> tuple[list[IntVec], list[IntVec]]:
        lin, rays = double_description(self.ambient, self.facets, self.equations)
        return lin, rays

    @cached_property
    def lineality(self) -> tuple[IntVec, ...]:
        return _canonical_basis(self._primal[0])

    @cached_property
    def rays(self) -> tuple[IntVec, ...]:
        """Extremal rays, canonically represented modulo the lineality space."""
        lin = self.lineality
        return tuple(sorted({primitive(_project_out(r, lin)) for r in self._primal[1]}))

    @cached_property
    def key(self) -> tuple:
        return (self.ambient, self.lineality, self.rays)

    @property
    def generators(self) -> list[IntVec]:
        """Canonical generators: lineality vectors in +/- pairs, then rays."""
        out: list[IntVec] = []
        for l in self.lineality:
            out.append(l)
            out.append(tuple(-x for x in l))
        out.extend(self.rays)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalCone) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"RationalCone(lin={list(self.lineality)}, rays={list(self.rays)})"

    # -- queries -----------------------------------------------------------

    @cached_property
    def dim(self) -> int:
        return self.ambient - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, z: Sequence) -> bool:
        return all(dot(h, z) == 0 for h in self.equations) and all(
            dot(h, z) >= 0 for h in self.facets
        )

    def contains_relint(self, z: Sequence) -> bool:
        return all(dot(h, z) == 0 for h in self.equations) and all(
            dot(h, z) > 0 for h in self.facets
        )

    def locate(self, z: Sequence) -> str:
        """'outside', 'boundary' or 'interior' (relative to the span)."""
        if not self.contains(z):
            return "outside"
        return "interior" if self.contains_relint(z) else "boundary"

    def tangent_contains(self, z: Sequence, d: Sequence) -> bool:
        """Whether z + eps*d lies in the cone for all small eps > 0 (z in the cone)."""
        if any(dot(h, d) != 0 for h in self.equations):
            return False
        return all(dot(h, d) >= 0 for h in self.facets if dot(h, z) == 0)

    def contains_cone(self, other: "RationalCone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def span_contains(self, z: Sequence) -> bool:
        return all(dot(h, z) == 0 for h in self.equations)

    def intersect(self, other: "RationalCone") -> "RationalCone":
        if self.ambient != other.ambient:
            raise ValueError("cones live in different ambient spaces")
        return RationalCone.from_constraints(
            self.ambient,
            list(self.facets) + list(other.facets),
            list(self.equations) + list(other.equations),
        )

    def with_constraints(self, ineqs: Sequence = (), eqs: Sequence = ()) -> "RationalCone":
        return RationalCone.from_constraints(
            self.ambient,
            list(self.facets) + [primitive(h) for h in ineqs if any(h)],
            list(self.equations) + [primitive(h) for h in eqs if any(h)],
        )

    def add_generators(self, extra: Iterable[Sequence]) -> "RationalCone":
        return RationalCone(list(self.generators) + [tuple(v) for v in extra], self.ambient)

    def linear_image(self, f) -> "RationalCone":
        return RationalCone([f(g) for g in self.generators], self.ambient)

    # -- sampling ---------------------------------------------------------

    def general_point(
        self,
        functionals: Iterable[Sequence] = (),
        seed: int = 0,
        strict: bool = True,
    ) -> tuple[Fraction, ...]:
        """A deterministic rational point of the relative interior avoiding h.z = 0.

        Hyperplanes that contain the whole cone are ignored; with ``strict``
        a request where the cone lies in two independent listed hyperplanes is
        rejected, since no point of it can then be general.
        """
        funcs = [tuple(h) for h in functionals]
        containing = [h for h in funcs if all(dot(h, g) == 0 for g in self.generators)]
        if strict and rank(containing) >= 2:
            raise ValueError("cone lies in two independent hyperplanes; no general point")
        avoid = [h for h in funcs if h not in containing]
        rays = self.rays
        lin = self.lineality
        if not rays and not lin:
            return tuple(Fraction(0) for _ in range(self.ambient))
        rng = random.Random(seed)
        base = [Fraction(0)] * self.ambient
        for r in rays:
            base = [a + b for a, b in zip(base, r)]
        scale = Fraction(1, 2)
        for attempt in range(200):
            z = list(base)
            for r in rays:
                c = Fraction(rng.randint(-(2**10), 2**10), 2**12) * scale
                z = [a + c * b for a, b in zip(z, r)]
            for l in lin:
                c = Fraction(rng.randint(-(2**10), 2**10), 2**9) * scale + (1 if not rays else 0)
                z = [a + c * b for a, b in zip(z, l)]
            if all(dot(h, z) != 0 for h in avoid) and self.contains_relint(z):
                return tuple(z)
        raise RuntimeError("could not find a general point")  # pragma: no cover

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"generators": [[[int(x), 1] for x in g] for g in self.generators]}

    @classmethod
    def from_json(cls, obj: dict, ambient: int) -> "RationalCone":
        def rat(x):
            return Fraction(x[0], x[1]) if isinstance(x, (list, tuple)) else Fraction(x)

        return cls([tuple(rat(x) for x in g) for g in obj["generators"]], ambient)


def cone_dim(c: RationalCone) -> int:
    return c.dim


def cone_intersect(a: RationalCone, b: RationalCone) -> RationalCone:
    return a.intersect(b)


def cone_contains(c: RationalCone, z: Sequence) -> bool:
    return c.contains(z)


def general_point_on(c: RationalCone, functionals: Iterable[Sequence] = (), seed: int = 0):
    return c.general_point(functionals, seed)
