"""Walls, scattering diagrams and the inductive construction of CSDs.

A wall carries the element ``Psi[t n]^{s delta(t n)}`` where ``n`` is its
primitive normal.  Its function is ``(1 + x^{p1*(t n)})^s``.

Joints are handled as *cells*.  For each codimension-2 subspace ``L`` cut out
by two distinct wall normals, the (r-2)-dimensional traces of the walls on
``L`` are overlaid.  The common refinement of these traces gives cells, and
every wall containing a cell has that cell on its support.  In rank at most
three these cells are exactly the joints of the hand construction.  In higher
rank they refine them, so that the set of walls through a cell is constant.
"""

from __future__ import annotations

import functools
from collections import Counter
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cones import RationalCone
from .dilogprod import DilogFactor, order
from .lattice import FixedData, Seed
from .linalg import dot, integer_kernel, primitive, rref, vec_gcd
from .seriesrep import is_identity, residual, signed_equivalent

Signed = list[tuple[DilogFactor, int]]


class AdmissibilityError(ValueError):
    """A curve or a point is not in general position for the diagram."""


# -- walls and diagrams ---------------------------------------------------------


@dataclass(frozen=True)
class Wall:
    support: RationalCone
    normal: tuple[int, ...]
    t: int = 1
    s: Fraction = Fraction(1)
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(int(x) for x in self.normal))
        object.__setattr__(self, "s", Fraction(self.s))
        if vec_gcd(self.normal) != 1:
            raise ValueError(f"wall normal {self.normal} is not primitive")
        if self.t <= 0 or self.s <= 0:
            raise ValueError("wall data (t, s) must be positive")

    @property
    def degree(self) -> int:
        return self.t * sum(self.normal)

    def factor(self, data: FixedData) -> DilogFactor:
        """The wall element as ``Psi[t n]^c`` with ``c = s delta(n) / t``."""
        c = self.s * data.delta_of(self.normal) / self.t
        return DilogFactor(tuple(self.t * x for x in self.normal), c)

    def functional(self, data: FixedData) -> tuple[int, ...]:
        return data.hyperplane(self.normal)

    def is_incoming(self, data: FixedData) -> bool:
        return self.support.contains(data.p_star(self.normal))

    def sort_key(self):
        return (self.degree, self.normal, self.t, self.s, self.support.key)

    def to_json(self) -> dict:
        return {
            "normal": list(self.normal),
            "t": self.t,
            "s": [self.s.numerator, self.s.denominator],
            "support": self.support.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict, ambient: int) -> "Wall":
        s = obj.get("s", [1, 1])
        s = Fraction(s[0], s[1]) if isinstance(s, (list, tuple)) else Fraction(s)
        return cls(
            RationalCone.from_json(obj["support"], ambient),
            tuple(obj["normal"]),
            int(obj.get("t", 1)),
            s,
        )


@dataclass
class ScatteringDiagram:
    data: FixedData
    cutoff: int
    walls: list[Wall] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.data.rank

    def truncated(self, cutoff: int) -> "ScatteringDiagram":
        return ScatteringDiagram(
            self.data, cutoff, [w for w in self.walls if w.degree <= cutoff]
        )

    def normals(self) -> set[tuple[int, ...]]:
        return {w.normal for w in self.walls}

    def outgoing(self) -> list[Wall]:
        return [w for w in self.walls if not w.is_incoming(self.data)]

    def sorted(self) -> "ScatteringDiagram":
        return ScatteringDiagram(self.data, self.cutoff, sorted(self.walls, key=Wall.sort_key))

    def to_json(self) -> dict:
        seed = self.data.to_json()
        seed["word"] = list(getattr(self.data, "word", ()))
        return {
            "format": 1,
            "seed": seed,
            "cutoff": self.cutoff,
            "walls": [w.to_json() for w in self.walls],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ScatteringDiagram":
        fmt = obj.get("format", 1)
        if fmt != 1:
            raise ValueError(f"unsupported diagram format {fmt}")
        base = FixedData.from_json(obj["seed"])
        data = Seed.from_data(base, tuple(obj["seed"].get("word", ())))
        walls = [Wall.from_json(w, data.rank) for w in obj["walls"]]
        return cls(data, int(obj["cutoff"]), walls)


def incoming_walls(data: FixedData) -> ScatteringDiagram:
    """The walls (e_i^perp, Psi[e_i]^{delta_i}) for i = 1..r."""
    walls = [
        Wall(RationalCone.hyperplane(data.hyperplane(data.unit(i))), data.unit(i), 1, 1, "in")
        for i in range(data.rank)
    ]
    return ScatteringDiagram(data, 1, walls)


def split_unit(D: ScatteringDiagram) -> ScatteringDiagram:
    """Replace each wall with integral s > 1 by s copies with s = 1."""
    out = []
    for w in D.walls:
        if w.s.denominator == 1 and w.s > 1:
            out.extend(Wall(w.support, w.normal, w.t, 1, w.source) for _ in range(int(w.s)))
        else:
            out.append(w)
    return ScatteringDiagram(D.data, D.cutoff, out)


def merge_walls(D: ScatteringDiagram) -> ScatteringDiagram:
    """Combine walls with equal support, normal and t by adding their s."""
    acc: dict = {}
    order_keys = []
    for w in D.walls:
        key = (w.support.key, w.normal, w.t)
        if key not in acc:
            acc[key] = w
            order_keys.append(key)
        else:
            prev = acc[key]
            acc[key] = Wall(prev.support, prev.normal, prev.t, prev.s + w.s, prev.source)
    return ScatteringDiagram(D.data, D.cutoff, [acc[k] for k in order_keys])


# -- joints ---------------------------------------------------------------------


@dataclass
class Joint:
    cone: RationalCone
    members: list[int]
    kind: str
    point: tuple
    lattice: tuple[tuple[int, ...], ...]
    omega0: Fraction

    @property
    def perpendicular(self) -> bool:
        return self.kind == "perpendicular"

    def to_json(self) -> dict:
        return {
            "cone": self.cone.to_json(),
            "members": self.members,
            "kind": self.kind,
            "point": [[Fraction(x).numerator, Fraction(x).denominator] for x in self.point],
        }


def _in_span(rows_rref: list, pivots: list[int], h: Sequence) -> bool:
    v = [Fraction(x) for x in h]
    for row, p in zip(rows_rref, pivots):
        if v[p] != 0:
            c = v[p]
            v = [a - c * b for a, b in zip(v, row)]
    return not any(v)


def _refine(base: RationalCone, funcs: Iterable[Sequence[int]], dim: int) -> list[RationalCone]:
    cells = [base]
    for g in funcs:
        nxt = []
        for c in cells:
            vals = {Fraction(dot(g, x)).numerator > 0 if dot(g, x) != 0 else None for x in c.generators}
            if None in vals:
                vals.discard(None)
            if len(vals) <= 1:
                nxt.append(c)
                continue
            for sg in (1, -1):
                part = c.with_constraints([tuple(sg * x for x in g)])
                if part.dim == dim:
                    nxt.append(part)
        cells = nxt
    return cells


def find_joints(D: ScatteringDiagram, seed: int = 0) -> list[Joint]:
    """Joint cells of D with their member walls, sorted deterministically."""
    data = D.data
    r = data.rank
    if r < 2:
        return []
    by_normal: dict[tuple, list[int]] = {}
    for i, w in enumerate(D.walls):
        by_normal.setdefault(w.normal, []).append(i)
    normals = sorted(by_normal)
    funcs = {n: data.hyperplane(n) for n in normals}
    seen: set = set()
    joints: list[Joint] = []
    for a in range(len(normals)):
        for b in range(a + 1, len(normals)):
            rows, piv = rref([funcs[normals[a]], funcs[normals[b]]])
            key = tuple(tuple(x) for x in rows)
            if key in seen:
                continue
            seen.add(key)
            L = RationalCone.from_constraints(r, eqs=[funcs[normals[a]], funcs[normals[b]]])
            members: list[tuple[int, RationalCone]] = []
            for n in normals:
                if not _in_span(rows, piv, funcs[n]):
                    continue
                for i in by_normal[n]:
                    piece = D.walls[i].support.intersect(L)
                    if piece.dim == r - 2:
                        members.append((i, piece))
            if len({D.walls[i].normal for i, _ in members}) < 2:
                continue
            cut: list = []
            for _, piece in members:
                for g in piece.facets:
                    gp = primitive(g)
                    if gp not in cut and tuple(-x for x in gp) not in cut:
                        cut.append(gp)
            cells = _refine(L, cut, r - 2)
            # the lattice N_L and the normalized form on it
            basis = [tuple(Fraction(z) / d for z, d in zip(g, data.delta)) for g in L.lineality]
            NL = integer_kernel(basis, r) if basis else [data.unit(i) for i in range(r)]
            if len(NL) != 2:
                raise AssertionError("codimension-2 subspace with a lattice of rank != 2")
            omega0 = abs(data.skew(NL[0], NL[1]))
            kind = "perpendicular" if omega0 != 0 else "parallel"
            avoid = [funcs[n] for n in normals if not _in_span(rows, piv, funcs[n])]
            for cell in sorted(cells, key=lambda c: c.key):
                mem = [i for i, piece in members if piece.contains_cone(cell)]
                if len({D.walls[i].normal for i in mem}) < 2:
                    continue
                z0 = cell.general_point(avoid, seed=seed, strict=False)
                joints.append(Joint(cell, sorted(mem), kind, z0, tuple(NL), omega0))
    joints.sort(key=lambda j: j.cone.key)
    return joints


def _normalized_form(data: FixedData, omega0: Fraction):
    def form(a, b):
        v = data.skew(a, b) / omega0
        return int(v) if v.denominator == 1 else v

    return form


def _anti_ordered(factors: list[DilogFactor], form) -> list[DilogFactor]:
    def cmp(a, b):
        v = form(a.n, b.n)
        if v > 0:
            return -1
        if v < 0:
            return 1
        return (sum(a.n) > sum(b.n)) - (sum(a.n) < sum(b.n))

    return sorted(factors, key=functools.cmp_to_key(cmp))


def joint_input(D: ScatteringDiagram, j: Joint) -> list[DilogFactor]:
    """C^in at a perpendicular joint, in the normalized form on N_j."""
    data = D.data
    form = _normalized_form(data, j.omega0)
    facs = []
    for i in j.members:
        w = D.walls[i]
        if w.support.tangent_contains(j.point, data.p_star(w.normal)):
            f = w.factor(data)
            facs.append(DilogFactor(f.n, f.c * j.omega0))
    return _anti_ordered(facs, form)


def build_csd(data: FixedData, cutoff: int, seed: int = 0) -> ScatteringDiagram:
    """The reduction D_l of a positive realization of the CSD of ``data``."""
    if cutoff < 1:
        raise ValueError("degree cutoff must be at least 1")
    if data.rank < 2:
        raise ValueError("rank must be at least 2")
    D = incoming_walls(data)
    for level in range(1, cutoff):
        new: list[Wall] = []
        for j in find_joints(D, seed):
            if not j.perpendicular:
                continue
            cin = joint_input(D, j)
            if len(cin) < 2:
                continue
            form = _normalized_form(data, j.omega0)
            cout = order(level + 1, cin, form)
            for f in cout:
                if sum(f.n) != level + 1:
                    continue
                t = vec_gcd(f.n)
                n0 = tuple(x // t for x in f.n)
                c = f.c / j.omega0
                s = c * t / data.delta_of(n0)
                ray = tuple(-x for x in data.p_star(n0))
                support = RationalCone(list(j.cone.generators) + [ray], data.rank)
                if support.dim != data.rank - 1:
                    raise AssertionError("attached cone is not of codimension 1")
                new.append(Wall(support, n0, t, s, "joint"))
        new.sort(key=Wall.sort_key)
        D = ScatteringDiagram(data, level + 1, D.walls + new)
    D.cutoff = cutoff
    return D


# -- path-ordered products ----------------------------------------------------------


@dataclass
class Crossing:
    time: tuple[int, Fraction]
    point: tuple
    walls: list[int]
    sign: int


@dataclass
class PathProduct:
    factors: Signed
    crossings: list[Crossing]

    def walls_crossed(self) -> set[int]:
        return {i for c in self.crossings for i in c.walls}


def _segment_crossings(D: ScatteringDiagram, p, q, seg: int, funcs) -> list[Crossing]:
    hits: dict[Fraction, list[int]] = {}
    for i, w in enumerate(D.walls):
        h = funcs[i]
        hp, hq = dot(h, p), dot(h, q)
        if hp == 0 and hq == 0:
            if w.support.contains(p) or w.support.contains(q):
                raise AdmissibilityError(f"segment {seg} runs inside wall {i}")
            continue
        if hp == 0 or hq == 0:
            end = p if hp == 0 else q
            if w.support.contains(end):
                raise AdmissibilityError(f"segment {seg} has an endpoint on wall {i}")
            continue
        if (hp > 0) == (hq > 0):
            continue
        tau = Fraction(hp) / (hp - hq)
        x = tuple(a + tau * (b - a) for a, b in zip(p, q))
        if not w.support.contains(x):
            continue
        if not w.support.contains_relint(x):
            raise AdmissibilityError(f"segment {seg} meets the boundary of wall {i}")
        hits.setdefault(tau, []).append(i)
    out = []
    for tau in sorted(hits):
        idx = hits[tau]
        normals = {D.walls[i].normal for i in idx}
        if len(normals) > 1:
            raise AdmissibilityError(f"segment {seg} passes a singular point (walls {idx})")
        n = D.walls[idx[0]].normal
        x = tuple(a + tau * (b - a) for a, b in zip(p, q))
        d = tuple(b - a for a, b in zip(p, q))
        sign = 1 if D.data.pairing(n, d) < 0 else -1
        out.append(Crossing((seg, tau), x, idx, sign))
    return out


def path_ordered_product(D: ScatteringDiagram, path: Sequence[Sequence], cutoff: int | None = None) -> PathProduct:
    """Signed product of the wall elements crossed by the polyline ``path``.

    The list is written left to right, so the first crossing is the rightmost
    factor and acts first.  Walls of degree above ``cutoff`` are ignored.
    """
    if len(path) < 2:
        return PathProduct([], [])
    cut = D.cutoff if cutoff is None else cutoff
    Dc = D.truncated(cut)
    pts = [tuple(Fraction(x) for x in p) for p in path]
    funcs = [w.functional(D.data) for w in Dc.walls]
    for end in (pts[0], pts[-1]):
        for i, w in enumerate(Dc.walls):
            if dot(funcs[i], end) == 0 and w.support.contains(end):
                raise AdmissibilityError(f"endpoint {end} lies on wall {i}")
    crossings = []
    for seg in range(len(pts) - 1):
        crossings.extend(_segment_crossings(Dc, pts[seg], pts[seg + 1], seg, funcs))
    # map back to indices of D
    index = [i for i, w in enumerate(D.walls) if w.degree <= cut]
    for c in crossings:
        c.walls = [index[i] for i in c.walls]
    factors: Signed = []
    for c in reversed(crossings):
        for i in c.walls:
            factors.append((D.walls[i].factor(D.data), c.sign))
    return PathProduct(factors, crossings)


def total_wall_element(D: ScatteringDiagram, z: Sequence) -> list[DilogFactor]:
    """Product of the elements of all walls through a general point z."""
    out = []
    normals = set()
    for i, w in enumerate(D.walls):
        if dot(w.functional(D.data), z) != 0 or not w.support.contains(z):
            continue
        if not w.support.contains_relint(z):
            raise AdmissibilityError(f"point lies on the boundary of wall {i}")
        normals.add(w.normal)
        out.append(w.factor(D.data))
    if len(normals) > 1:
        raise AdmissibilityError("point lies on walls with different normals")
    return sorted(out, key=lambda f: (sum(f.n), f.n))


# -- consistency --------------------------------------------------------------------


@dataclass
class JointReport:
    joint: Joint
    ok: bool
    crossed: list[int]
    residual: dict
    note: str = ""


@dataclass
class ConsistencyReport:
    ok: bool
    checked: int
    failures: list[JointReport]

    def first_failure(self) -> JointReport | None:
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "failures": [
                {
                    "joint": f.joint.to_json(),
                    "crossed": f.crossed,
                    "note": f.note,
                    "residual": {
                        k: {",".join(map(str, a)): str(c) for a, c in v.items()}
                        for k, v in f.residual.items()
                    },
                }
                for f in self.failures
            ],
        }


def joint_loop(D: ScatteringDiagram, j: Joint, seed: int = 0) -> tuple[list[tuple], PathProduct]:
    """A small square loop around the joint cell crossing only its member walls."""
    data = D.data
    span = [data.hyperplane(n) for n in j.lattice]
    rng = random.Random(seed)
    allowed = set(j.members)
    last_err: Exception | None = None
    for attempt in range(20):
        rho = Fraction(rng.randint(1, 997), 1999)
        sig = Fraction(rng.randint(1, 997), 2003)
        u = _solve2(span, (1, rho), data.rank)
        v = _solve2(span, (-sig, 1), data.rank)
        z0 = j.point
        for k in range(1, 80):
            eps = Fraction(1, 2**k)
            corners = [
                tuple(z + eps * (a * x + b * y) for z, x, y in zip(z0, u, v))
                for a, b in ((1, 1), (-1, 1), (-1, -1), (1, -1))
            ]
            loop = corners + [corners[0]]
            try:
                prod = path_ordered_product(D, loop)
            except AdmissibilityError as exc:
                last_err = exc
                continue
            crossed = prod.walls_crossed()
            if crossed <= allowed and allowed <= crossed:
                return loop, prod
        # try a different square shape
    raise AdmissibilityError(f"no clean loop around joint: {last_err}")


def _solve2(span, rhs, r):
    from .linalg import solve

    x = solve(span, rhs)
    if x is None:
        raise AssertionError("joint lattice functionals are dependent")
    return x


def _check_joint(Dc: ScatteringDiagram, j: Joint, cut: int, seed: int) -> JointReport | None:
    try:
        _, prod = joint_loop(Dc, j, seed)
    except AdmissibilityError as exc:
        return JointReport(j, False, [], {}, str(exc))
    if is_identity(Dc.data, prod.factors, cut):
        return None
    return JointReport(j, False, sorted(prod.walls_crossed()), residual(Dc.data, prod.factors, cut))


def check_consistency(
    D: ScatteringDiagram, cutoff: int | None = None, seed: int = 0, jobs: int = 1
) -> ConsistencyReport:
    """Loop product around every joint cell is the identity modulo degree > cutoff.

    With ``jobs > 1`` the joints are checked in a process pool; the report
    lists failures in joint order either way.
    """
    cut = D.cutoff if cutoff is None else cutoff
    Dc = D.truncated(cut)
    joints = find_joints(Dc, seed)
    if jobs > 1 and len(joints) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_joint, [Dc] * len(joints), joints, [cut] * len(joints), [seed] * len(joints)))
    else:
        results = [_check_joint(Dc, j, cut, seed) for j in joints]
    fails = [r for r in results if r is not None]
    return ConsistencyReport(not fails, len(joints), fails)


# -- chambers ---------------------------------------------------------------------


def positive_chamber(data: FixedData) -> RationalCone:
    return RationalCone([tuple(int(i == j) for j in range(data.rank)) for i in range(data.rank)])


def chamber_point(D: ScatteringDiagram, cone: RationalCone, seed: int = 0) -> tuple:
    funcs = [w.functional(D.data) for w in D.walls]
    return cone.general_point(funcs, seed=seed, strict=False)


def g_cones(data: FixedData, max_depth: int) -> list[tuple[tuple[int, ...], RationalCone]]:
    """G-cones reached by mutation words of length <= max_depth, breadth first.

    A cone that was already produced is not expanded again: its neighbours
    are determined by the cone itself.
    """
    r = data.rank
    seen: dict = {}
    out = []
    frontier: list[tuple[tuple[int, ...], list[FixedData]]] = [((), [data])]
    for depth in range(max_depth + 1):
        nxt = []
        for word, seeds in frontier:
            cone = _pull_back(word, seeds)
            if cone.key in seen:
                continue
            seen[cone.key] = word
            out.append((word, cone))
            if depth == max_depth:
                continue
            for k in range(1, r + 1):
                if word and word[-1] == k:
                    continue
                nxt.append((word + (k,), seeds + [seeds[-1].mutated_data(k)]))
        frontier = nxt
    return out


def _pull_back(word: tuple[int, ...], seeds: list[FixedData]) -> RationalCone:
    r = seeds[0].rank
    gens = [tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r)]
    for step in range(len(word) - 1, -1, -1):
        s = seeds[step]
        k = word[step]
        gens = [s.m_to_mutated(g, k) for g in gens]
        signs = {(g[k - 1] > 0) - (g[k - 1] < 0) for g in gens} - {0}
        if len(signs) > 1:
            raise AssertionError("G-cone straddles the mutation hyperplane")
        gens = [s.T_k_inverse(g, k) for g in gens]
    return RationalCone(gens, r)


def facet_normal(data: FixedData, h: Sequence[int]) -> tuple[int, ...]:
    """The primitive n with n-perp equal to {h . z = 0}, made positive when possible."""
    n = primitive([Fraction(x) * d for x, d in zip(h, data.delta)])
    if all(x <= 0 for x in n):
        n = tuple(-x for x in n)
    return n


def check_g_cone_walls(D: ScatteringDiagram, cones: Iterable[RationalCone], seed: int = 0) -> list[str]:
    """Each facet of each G-cone of degree <= cutoff carries exactly Psi[n]^{delta(n)}."""
    data = D.data
    problems = []
    funcs = [w.functional(data) for w in D.walls]
    for cone in cones:
        for h in cone.facets:
            face = cone.with_constraints(eqs=[h])
            n = facet_normal(data, h)
            if any(x < 0 for x in n):
                problems.append(f"facet {h} has a normal of mixed sign")
                continue
            if sum(n) > D.cutoff:
                continue
            z = face.general_point(funcs, seed=seed, strict=False)
            got = total_wall_element(D, z)
            want = [DilogFactor(n, data.delta_of(n))]
            if not signed_equivalent(data, [(f, 1) for f in got], [(f, 1) for f in want], D.cutoff):
                problems.append(f"facet {h}: wall element {got} differs from {want}")
    return problems


# -- admissible region ------------------------------------------------------------


@dataclass
class AdmissibleReport:
    ok: bool
    checked: int
    violations: list[tuple[int, list[Fraction]]]


def admissible_region_check(D: ScatteringDiagram, seed: int = 0) -> AdmissibleReport:
    """Every outgoing wall has b'_k >= 0 for all k at a general point of its support."""
    data = D.data
    units = {data.unit(i) for i in range(data.rank)}
    funcs = [w.functional(data) for w in D.walls]
    funcs += [data.hyperplane(data.unit(i)) for i in range(data.rank)]
    bad = []
    checked = 0
    for i, w in enumerate(D.walls):
        if w.normal in units:
            continue
        checked += 1
        z = w.support.general_point(funcs, seed=seed, strict=False)
        b = data.admissible_coordinates(w.normal, z)
        if any(x < 0 for x in b):
            bad.append((i, b))
    return AdmissibleReport(not bad, checked, bad)


def rank2_admissible_rays(data: FixedData) -> tuple[tuple[int, int], tuple[int, int]]:
    """Boundary normals (delta_1, 1) and (1, delta_2) of the rank-2 admissible region.

    For B = [[0, -d1], [d2, 0]] the region is 1/d1 <= a2/a1 <= d2.
    """
    if data.rank != 2:
        raise ValueError("rank-2 data required")
    B = data.B
    d1, d2 = -B[0][1], B[1][0]
    if d1 <= 0 or d2 <= 0:
        raise ValueError("expected B = [[0, -d1], [d2, 0]] with d1, d2 > 0")
    return (d1, 1), (1, d2)


# -- transpose duality ----------------------------------------------------------


def support_multiset(D: ScatteringDiagram, scale: Sequence | None = None) -> Counter:
    """Wall supports as a multiset of cones, optionally after z -> diag(scale) z."""
    if scale is None:
        return Counter(w.support for w in D.walls)
    return Counter(
        RationalCone([tuple(Fraction(x) * s for x, s in zip(g, scale)) for g in w.support.generators], D.rank)
        for w in D.walls
    )


def dual_supports_match(D: ScatteringDiagram, E: ScatteringDiagram) -> bool:
    """Whether E (built from -B^T) has the supports of D moved by z -> Delta^{-1} z."""
    if [list(r) for r in E.data.B] != [[-b for b in col] for col in zip(*D.data.B)]:
        raise ValueError("second diagram is not built from -B^T")
    inv = [Fraction(1, d) for d in D.data.delta]
    return support_multiset(D, inv) == support_multiset(E)
