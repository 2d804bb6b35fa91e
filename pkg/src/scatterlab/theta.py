"""Broken lines and theta functions.

Broken lines are enumerated backwards.  For every candidate final exponent
``mt0 + sum a_i p1*(e_i)`` the search starts at Q and travels along ``+m``,
the reverse of the line's velocity.  At each wall crossing it either passes or
undoes a bend of size ``j``, which subtracts ``j p1*(n)`` from the exponent.
A branch succeeds when its backward ray leaves every wall behind with the
exponent back at ``mt0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cones import RationalCone
from .csd import AdmissibilityError, ScatteringDiagram, path_ordered_product
from .lattice import FixedData, MTilde
from .linalg import dot
from .seriesrep import TruncatedSeries, binomial_series, signed_action

Shift = tuple[int, ...]


@dataclass
class Bend:
    point: tuple
    normal: tuple[int, ...]
    power: int
    coefficient: int


@dataclass
class BrokenLine:
    endpoint: tuple
    base: MTilde
    shift: Shift
    coefficient: Fraction
    bends: list[Bend] = field(default_factory=list)
    segments: list[tuple[Fraction, Shift]] = field(default_factory=list)

    def signature(self):
        return (self.shift, tuple((b.normal, b.power, b.point) for b in self.bends))


def nudge(Q: Sequence, k: int = 1) -> tuple:
    """Deterministic dyadic perturbation used to suggest a general endpoint."""
    return tuple(Fraction(q) + Fraction(i + 1, 2 ** (10 + k)) for i, q in enumerate(Q))


def _ray_meets(cone: RationalCone, P, m) -> bool:
    """Whether {P + tau m : tau >= 0} meets a cone whose span contains the ray."""
    lo, hi = Fraction(0), None
    for h in cone.facets:
        a, b = dot(h, P), dot(h, m)
        if b == 0:
            if a < 0:
                return False
            continue
        tau = Fraction(-a) / b
        if b > 0:
            lo = max(lo, tau)
        else:
            hi = tau if hi is None else min(hi, tau)
    return hi is None or lo <= hi


class _Tracer:
    def __init__(self, D: ScatteringDiagram, cutoff: int):
        self.D = D.truncated(cutoff)
        self.data = D.data
        self.funcs = [w.functional(self.data) for w in self.D.walls]

    def walls_at(self, X) -> list[int]:
        out = []
        for i, w in enumerate(self.D.walls):
            if dot(self.funcs[i], X) == 0 and w.support.contains(X):
                if not w.support.contains_relint(X):
                    raise AdmissibilityError(f"broken line meets the boundary of wall {i} at {X}")
                out.append(i)
        if len({self.D.walls[i].normal for i in out}) > 1:
            raise AdmissibilityError(f"broken line meets a singular point {X}")
        return out

    def next_crossing(self, P, m):
        best = None
        for i, w in enumerate(self.D.walls):
            h = self.funcs[i]
            hp, hm = dot(h, P), dot(h, m)
            if hm == 0:
                if hp == 0 and _ray_meets(w.support, P, m):
                    raise AdmissibilityError(f"broken line runs inside wall {i}")
                continue
            tau = Fraction(-hp) / hm
            if tau <= 0:
                continue
            if best is not None and tau > best:
                continue
            X = tuple(p + tau * x for p, x in zip(P, m))
            if w.support.contains(X):
                best = tau
        if best is None:
            return None
        X = tuple(p + best * x for p, x in zip(P, m))
        return X, self.walls_at(X)


def _bend_coefficients(walls, E: int, jmax: int) -> list[Fraction]:
    """Coefficients of y^0..y^jmax in prod (1 + y^t)^(s E)."""
    poly = [Fraction(0)] * (jmax + 1)
    poly[0] = Fraction(1)
    for w in walls:
        e = w.s * E
        series = binomial_series(e, jmax // w.t)
        new = [Fraction(0)] * (jmax + 1)
        for i, c in enumerate(poly):
            if c == 0:
                continue
            for k, b in enumerate(series):
                j = i + k * w.t
                if j > jmax:
                    break
                new[j] += c * b
        poly = new
    return poly


def broken_lines(
    D: ScatteringDiagram,
    mt0: MTilde,
    Q: Sequence,
    cutoff: int,
) -> list[BrokenLine]:
    """All broken lines for mt0 ending at Q whose final exponent has degree <= cutoff."""
    data = D.data
    r = data.rank
    Q = tuple(Fraction(x) for x in Q)
    tracer = _Tracer(D, cutoff)
    for i, w in enumerate(tracer.D.walls):
        if dot(tracer.funcs[i], Q) == 0 and w.support.contains(Q):
            raise AdmissibilityError(f"endpoint {Q} lies on wall {i}; try {nudge(Q)}")
    mt0 = MTilde(tuple(Fraction(x) for x in mt0.m), tuple(int(x) for x in mt0.n))
    lines: list[BrokenLine] = []

    def m_of(a: Shift) -> tuple:
        return tuple(m + sum(b * x for b, x in zip(row, a)) for m, row in zip(mt0.m, data.B))

    def search(P, a: Shift, coef: Fraction, bends: list[Bend], segs, final: Shift):
        m = m_of(a)
        if not any(m):
            if not any(a):
                lines.append(BrokenLine(Q, mt0, final, coef, list(reversed(bends)), list(reversed(segs))))
            return
        hit = tracer.next_crossing(P, m)
        if hit is None:
            if not any(a):
                lines.append(BrokenLine(Q, mt0, final, coef, list(reversed(bends)), list(reversed(segs))))
            return
        X, idx = hit
        walls = [tracer.D.walls[i] for i in idx]
        n0 = walls[0].normal
        search(X, a, coef, bends, segs, final)
        E = abs(data.delta_of(n0) * data.pairing(n0, m))
        if E.denominator != 1:
            raise ValueError("exponent is not in the integral lattice")
        jmax = sum(a) // sum(n0)
        if jmax == 0:
            return
        poly = _bend_coefficients(walls, int(E), jmax)
        for j in range(1, jmax + 1):
            if poly[j] == 0:
                continue
            prev = tuple(x - j * y for x, y in zip(a, n0))
            if any(x < 0 for x in prev):
                continue
            search(
                X,
                prev,
                coef * poly[j],
                bends + [Bend(X, n0, j, poly[j])],
                segs + [(coef, a)],
                final,
            )

    for d in range(cutoff + 1):
        for a in _compositions(d, r):
            search(Q, a, Fraction(1), [], [], a)
    lines.sort(key=lambda l: (sum(l.shift), l.shift, len(l.bends)))
    for line in lines:
        line.segments.append((line.coefficient, line.shift))
    return lines


def _compositions(d: int, r: int):
    if r == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, r - 1):
            yield (first,) + rest


def theta(D: ScatteringDiagram, mt0: MTilde, Q: Sequence, cutoff: int) -> TruncatedSeries:
    r = D.data.rank
    zero = MTilde(tuple([Fraction(0)] * r), tuple([0] * r))
    if not any(mt0.m) and not any(mt0.n):
        return TruncatedSeries.monomial(zero, cutoff, r)
    out: dict[Shift, Fraction] = {}
    for line in broken_lines(D, mt0, Q, cutoff):
        out[line.shift] = out.get(line.shift, Fraction(0)) + line.coefficient
    base = MTilde(tuple(Fraction(x) for x in mt0.m), tuple(mt0.n))
    return TruncatedSeries(base, cutoff, out).clean()


def _path_action(D: ScatteringDiagram, P, Q, f: TruncatedSeries, cutoff: int) -> TruncatedSeries:
    last = None
    for k in range(12):
        path = [P, Q] if k == 0 else [P, nudge(tuple((a + b) / 2 for a, b in zip(P, Q)), k), Q]
        try:
            prod = path_ordered_product(D, path, cutoff)
        except AdmissibilityError as exc:
            last = exc
            continue
        return signed_action(D.data, prod.factors, f)
    raise AdmissibilityError(f"no admissible path between the points: {last}")


def theta_via_path(
    D: ScatteringDiagram,
    mt0: MTilde,
    source: RationalCone,
    Q: Sequence,
    cutoff: int,
    seed: int = 0,
) -> TruncatedSeries:
    """Apply the path-ordered product from a general point of ``source`` to Q on x^{mt0}."""
    if not source.contains(mt0.m):
        raise ValueError("m0 does not lie in the declared G-cone")
    funcs = [w.functional(D.data) for w in D.walls]
    P = source.general_point(funcs, seed=seed, strict=False)
    base = MTilde(tuple(Fraction(x) for x in mt0.m), tuple(mt0.n))
    f = TruncatedSeries.monomial(base, cutoff, D.data.rank)
    return _path_action(D, P, tuple(Fraction(x) for x in Q), f, cutoff)


@dataclass
class ThetaCheck:
    ok: bool
    left: TruncatedSeries | dict
    right: TruncatedSeries | dict


def check_theta_transitivity(D: ScatteringDiagram, mt0: MTilde, Q, Q2, cutoff: int) -> ThetaCheck:
    t1 = theta(D, mt0, Q, cutoff)
    t2 = theta(D, mt0, Q2, cutoff)
    moved = _path_action(D, tuple(Fraction(x) for x in Q), tuple(Fraction(x) for x in Q2), t1, cutoff)
    return ThetaCheck(moved == t2, t2, moved)


def _abstract_terms(data: FixedData, f: TruncatedSeries) -> dict[MTilde, Fraction]:
    return {f.exponent(data, a): c for a, c in f.terms.items() if c != 0}


def check_theta_mutation(
    data: FixedData,
    k: int,
    mt0: MTilde,
    Q: Sequence,
    cutoff: int,
    D_src: ScatteringDiagram | None = None,
    D_dst: ScatteringDiagram | None = None,
) -> ThetaCheck:
    """Compare the theta of the mutated seed with the transported theta of this seed.

    Exponents are compared as elements of the principal extension, written in
    the coordinates of the mutated seed, up to mutated degree ``cutoff``.
    """
    from .csd import build_csd
    from .mutation import degree_growth

    Q = tuple(Fraction(x) for x in Q)
    if Q[k - 1] == 0:
        raise ValueError("endpoint lies on the mutation hyperplane")
    g = degree_growth(data, k)
    big = cutoff * g + g
    new = data.mutated_data(k)
    if D_src is None or D_src.cutoff < big:
        D_src = build_csd(data, big)
    if D_dst is None or D_dst.cutoff < cutoff:
        D_dst = build_csd(new, cutoff)
    mt0 = MTilde(tuple(Fraction(x) for x in mt0.m), tuple(mt0.n))
    src = theta(D_src, mt0, Q, big)
    Q2 = data.m_to_mutated(data.T_k(Q, k), k)
    base2 = data.mt_to_mutated(data.T_tilde_k(mt0, k), k)
    lhs = theta(D_dst, base2, Q2, cutoff)
    rhs: dict[MTilde, Fraction] = {}
    for mt, c in _abstract_terms(data, src).items():
        img = data.S_tilde_k(mt, k) if Q[k - 1] > 0 else mt
        img2 = data.mt_to_mutated(img, k)
        a2 = tuple(x - y for x, y in zip(img2.n, base2.n))
        if all(x >= 0 for x in a2) and sum(a2) > cutoff:
            continue
        key = MTilde(tuple(Fraction(x) for x in img2.m), tuple(img2.n))
        rhs[key] = rhs.get(key, Fraction(0)) + c
    left = {MTilde(tuple(Fraction(x) for x in m.m), tuple(m.n)): c for m, c in _abstract_terms(new, lhs).items()}
    rhs = {m: c for m, c in rhs.items() if c != 0}
    return ThetaCheck(left == rhs, left, rhs)


def is_positive_integral(f: TruncatedSeries) -> bool:
    return all(c > 0 and c.denominator == 1 for c in f.coefficients())
