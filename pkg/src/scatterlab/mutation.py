"""Mutation of scattering diagrams and equivalence by the representation oracle."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .cones import RationalCone
from .csd import (
    AdmissibilityError,
    ScatteringDiagram,
    Wall,
    build_csd,
    check_consistency,
    path_ordered_product,
)
from .lattice import FixedData, Seed
from .seriesrep import signed_equivalent


class MutationError(AssertionError):
    """A mutated wall left the positive part of the new lattice coordinates."""


def degree_growth(data: FixedData, k: int) -> int:
    """Factor by which the degree of a normal can shrink under mutation in direction k."""
    return 1 + max(abs(b) for b in data.B[k - 1])


def _halves(support: RationalCone, k: int, r: int):
    hk = tuple(int(i == k - 1) for i in range(r))
    neg = tuple(-x for x in hk)
    out = []
    for h, side in ((hk, "+"), (neg, "-")):
        piece = support.with_constraints([h])
        if piece.dim == r - 1:
            out.append((side, piece))
    return out


def _rejoin(walls: list[Wall], r: int) -> list[Wall]:
    """Merge two half-hyperplane walls with equal data whose union is the hyperplane."""
    out: list[Wall] = []
    used = [False] * len(walls)
    for i, a in enumerate(walls):
        if used[i]:
            continue
        merged = a
        sa = a.support
        if len(sa.lineality) == r - 2 and len(sa.rays) == 1:
            for j in range(i + 1, len(walls)):
                b = walls[j]
                if used[j] or (b.normal, b.t, b.s) != (a.normal, a.t, a.s):
                    continue
                sb = b.support
                if sb.lineality != sa.lineality or len(sb.rays) != 1:
                    continue
                if sb.equations != sa.equations:
                    continue
                whole = RationalCone(list(sa.generators) + list(sb.generators), r)
                if whole.dim == r - 1 and len(whole.lineality) == r - 1:
                    merged = Wall(whole, a.normal, a.t, a.s, a.source)
                    used[j] = True
                    break
        used[i] = True
        out.append(merged)
    return out


def mutate_csd(D: ScatteringDiagram, k: int) -> ScatteringDiagram:
    """The mutation of D in direction k, written in the coordinates of the new seed.

    Walls of the result are guaranteed complete up to degree
    ``D.cutoff // degree_growth`` and that is the cutoff of the result.  Image
    walls up to degree ``D.cutoff`` are kept as well, so a source that already
    holds every wall (finite type at full depth) mutates without loss.
    """
    data = D.data
    r = data.rank
    new_data = data.mutated_data(k)
    word = getattr(data, "word", ())
    new_seed = Seed.from_data(new_data, tuple(word) + (k,))
    ek = data.unit(k - 1)
    pieces: list[tuple[RationalCone, tuple[int, ...], Wall]] = []
    for w in D.walls:
        if w.normal == ek:
            continue
        for side, piece in _halves(w.support, k, r):
            if side == "+":
                cone = RationalCone([data.S_k(g, k) for g in piece.generators], r)
                normal = data.S_k_star(w.normal, k)
            else:
                cone = piece
                normal = w.normal
            pieces.append((cone, normal, w))
    out: list[Wall] = [
        Wall(RationalCone.hyperplane(new_data.hyperplane(new_data.unit(k - 1))), new_data.unit(k - 1), 1, 1, "in")
    ]
    for cone, normal, w in pieces:
        n_new = data.n_to_mutated(normal, k)
        if any(x < 0 for x in n_new):
            raise MutationError(f"mutated normal {n_new} of wall {w.normal} is not positive")
        gens = [data.m_to_mutated(g, k) for g in cone.generators]
        out.append(Wall(RationalCone(gens, r), n_new, w.t, w.s, w.source))
    out = _rejoin(out, r)
    cutoff = D.cutoff // degree_growth(data, k)
    result = ScatteringDiagram(new_seed, cutoff, [w for w in out if w.degree <= D.cutoff])
    return result


def mutate_build(data: FixedData, k: int, cutoff: int, seed: int = 0) -> ScatteringDiagram:
    """Build the source diagram deep enough that its mutation is complete to ``cutoff``."""
    source = build_csd(data, cutoff * degree_growth(data, k), seed)
    out = mutate_csd(source, k)
    return out.truncated(cutoff)


def crossing_path(data: FixedData, seed: int = 0) -> list[tuple]:
    """A straight segment from a generic point of C+ to a generic point of C-."""
    rng = random.Random(seed)
    r = data.rank
    p = tuple(Fraction(rng.randint(50, 150), 97) for _ in range(r))
    q = tuple(-Fraction(rng.randint(50, 150), 89) for _ in range(r))
    return [p, q]


def csd_equivalent(
    D1: ScatteringDiagram,
    D2: ScatteringDiagram,
    cutoff: int,
    check: bool = True,
    seed: int = 0,
) -> bool:
    """Whether the C+ to C- path-ordered products agree modulo degree > cutoff."""
    if D1.data.B != D2.data.B or D1.data.delta != D2.data.delta:
        raise ValueError("diagrams live over different seed data")
    if check:
        for D in (D1, D2):
            rep = check_consistency(D.truncated(cutoff))
            if not rep.ok:
                raise ValueError("input diagram is not consistent")
    for attempt in range(20):
        path = crossing_path(D1.data, seed + attempt)
        try:
            g1 = path_ordered_product(D1, path, cutoff).factors
            g2 = path_ordered_product(D2, path, cutoff).factors
        except AdmissibilityError:
            continue
        return signed_equivalent(D1.data, g1, g2, cutoff)
    raise AdmissibilityError("no admissible path from C+ to C- found")


def check_support_transport(D: ScatteringDiagram, k: int, points: Sequence[Sequence]) -> bool:
    """z lies on Supp(D) iff T_k(z), in the new coordinates, lies on Supp(T_k(D))."""
    data = D.data
    M = mutate_csd(D, k)

    def kept(w: Wall, z) -> bool:
        # degrees change under mutation; filter by the degree of the image wall
        n = data.S_k_star(w.normal, k) if z[k - 1] >= 0 else w.normal
        return w.t * sum(data.n_to_mutated(n, k)) <= M.cutoff

    for z in points:
        on_d = any(w.support.contains(z) and kept(w, z) for w in D.walls)
        tz = data.m_to_mutated(data.T_k(z, k), k)
        on_m = any(w.support.contains(tz) for w in M.walls if w.degree <= M.cutoff)
        if on_d != on_m:
            return False
    return True
