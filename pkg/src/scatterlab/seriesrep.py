"""The principal x-representation on truncated power series.

A series is ``x^{mt0} * sum_a c_a x^{sum_i a_i p1*(e_i)}`` with shift vectors
``a`` of nonnegative integers and total degree ``sum(a) <= cutoff``.  The
vectors ``p1*(e_i)`` are linearly independent, so shifts are faithful
coordinates and group elements can be compared by their action on the basis
monomials ``x^{f_i}`` and ``x^{e_i}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .dilogprod import DilogFactor, DilogProduct
from .lattice import FixedData, MTilde

Shift = tuple[int, ...]


def binomial_series(e: Fraction, kmax: int) -> list[Fraction]:
    """Coefficients of (1 + X)^e up to X^kmax, for any rational e."""
    out = [Fraction(1)]
    c = Fraction(1)
    for k in range(1, kmax + 1):
        c = c * (e - k + 1) / k
        if c == 0:
            break
        out.append(c)
    return out


@dataclass
class TruncatedSeries:
    base: MTilde
    cutoff: int
    terms: dict[Shift, Fraction] = field(default_factory=dict)

    @classmethod
    def monomial(cls, base: MTilde, cutoff: int, rank: int | None = None) -> "TruncatedSeries":
        r = rank if rank is not None else len(base.n)
        return cls(base, cutoff, {tuple([0] * r): Fraction(1)})

    @classmethod
    def one(cls, rank: int, cutoff: int) -> "TruncatedSeries":
        zero = MTilde(tuple([Fraction(0)] * rank), tuple([0] * rank))
        return cls.monomial(zero, cutoff, rank)

    def copy(self) -> "TruncatedSeries":
        return TruncatedSeries(self.base, self.cutoff, dict(self.terms))

    def exponent(self, data: FixedData, shift: Shift) -> MTilde:
        return MTilde(
            tuple(m + sum(b * a for b, a in zip(row, shift)) for m, row in zip(self.base.m, data.B)),
            tuple(n + a for n, a in zip(self.base.n, shift)),
        )

    def clean(self) -> "TruncatedSeries":
        self.terms = {k: v for k, v in self.terms.items() if v != 0}
        return self

    def truncate(self, cutoff: int) -> "TruncatedSeries":
        return TruncatedSeries(
            self.base, cutoff, {a: c for a, c in self.terms.items() if sum(a) <= cutoff}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        a = {k: v for k, v in self.terms.items() if v != 0}
        b = {k: v for k, v in other.terms.items() if v != 0}
        return self.base == other.base and a == b

    def coefficients(self) -> list[Fraction]:
        return [c for c in self.terms.values() if c != 0]

    def to_json(self) -> dict:
        return {
            "base": {
                "m": [[Fraction(x).numerator, Fraction(x).denominator] for x in self.base.m],
                "n": list(self.base.n),
            },
            "cutoff": self.cutoff,
            "terms": [
                {"shift": list(a), "coeff": [c.numerator, c.denominator]}
                for a, c in sorted(self.terms.items())
                if c != 0
            ],
        }


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Product; the exponent bases add and the result keeps the smaller cutoff."""
    cutoff = min(f.cutoff, g.cutoff)
    out: dict[Shift, Fraction] = {}
    for a, ca in f.terms.items():
        da = sum(a)
        if da > cutoff:
            continue
        for b, cb in g.terms.items():
            if da + sum(b) > cutoff:
                continue
            k = tuple(x + y for x, y in zip(a, b))
            out[k] = out.get(k, Fraction(0)) + ca * cb
    return TruncatedSeries(f.base + g.base, cutoff, out).clean()


def _power_action(
    data: FixedData, f: TruncatedSeries, n: Sequence[int], coeff: Fraction
) -> TruncatedSeries:
    """x^{mt} -> x^{mt} (1 + x^{p1*(n)})^{coeff * <n, mt>_1}, truncated."""
    step = sum(n)
    if step <= 0:
        raise ValueError("factor vector must have positive degree")
    base_pair = data.pairing(n, f.base.m)
    # <n, B a> = sum_j a_j {n, e_j}
    w = [data.skew(n, data.unit(j)) for j in range(data.rank)]
    out: dict[Shift, Fraction] = {}
    for a, c in f.terms.items():
        if c == 0:
            continue
        e = coeff * (base_pair + sum(wj * aj for wj, aj in zip(w, a)))
        room = (f.cutoff - sum(a)) // step
        if e == 0 or room <= 0:
            out[a] = out.get(a, Fraction(0)) + c
            continue
        for k, bk in enumerate(binomial_series(e, room)):
            key = tuple(x + k * y for x, y in zip(a, n))
            out[key] = out.get(key, Fraction(0)) + c * bk
    return TruncatedSeries(f.base, f.cutoff, out).clean()


def wall_action(
    data: FixedData,
    n0: Sequence[int],
    t: int,
    s_exp,
    sign: int,
    f: TruncatedSeries,
) -> TruncatedSeries:
    """Apply the wall element Psi[t n0]^{s delta(t n0)} (or its inverse for sign -1).

    Each monomial x^{mt} is multiplied by
    (1 + x^{p1*(t n0)})^{sign * s * <delta(n0) n0, mt>_1}.
    """
    s_exp = Fraction(s_exp)
    d0 = data.delta_of(n0)
    if d0.denominator != 1:
        raise ValueError("n0 must be primitive")
    if s_exp.denominator == 1:
        # the exponent must be integral on integral monomials
        for a in f.terms:
            mt = f.exponent(data, a)
            if all(Fraction(x).denominator == 1 for x in mt.m):
                val = s_exp * d0 * data.pairing(n0, mt.m)
                if val.denominator != 1:
                    raise ValueError("non-integral wall exponent for an integral s")
    tn = tuple(t * x for x in n0)
    # s * delta(n0) <n0, m> = (s * delta(n0) / t) <t n0, m>
    return _power_action(data, f, tn, sign * s_exp * d0 / t)


def factor_action(data: FixedData, factor: DilogFactor, f: TruncatedSeries, sign: int = 1):
    """Psi[n]^c acts by x^{mt} -> x^{mt} (1 + x^{p1*(n)})^{c <n, mt>_1}."""
    return _power_action(data, f, factor.n, sign * Fraction(factor.c))


def product_action(
    data: FixedData,
    C: DilogProduct,
    f: TruncatedSeries,
    signs: Sequence[int] | None = None,
) -> TruncatedSeries:
    """Apply C = g_s ... g_1 to f; g_1 (the rightmost factor) acts first."""
    if signs is None:
        signs = [1] * len(C)
    out = f
    for g, e in zip(reversed(C), reversed(list(signs))):
        out = factor_action(data, g, out, e)
    return out


def signed_action(data: FixedData, signed: Sequence[tuple[DilogFactor, int]], f: TruncatedSeries):
    return product_action(data, [g for g, _ in signed], f, [e for _, e in signed])


def basis_monomials(data: FixedData, cutoff: int) -> list[TruncatedSeries]:
    r = data.rank
    zero_m = tuple([Fraction(0)] * r)
    zero_n = tuple([0] * r)
    out = []
    for i in range(r):
        out.append(TruncatedSeries.monomial(MTilde(tuple(Fraction(int(i == j)) for j in range(r)), zero_n), cutoff))
    for i in range(r):
        out.append(TruncatedSeries.monomial(MTilde(zero_m, data.unit(i)), cutoff))
    return out


def signed_equivalent(
    data: FixedData,
    A: Sequence[tuple[DilogFactor, int]],
    B: Sequence[tuple[DilogFactor, int]],
    cutoff: int,
) -> bool:
    return all(
        signed_action(data, A, x) == signed_action(data, B, x)
        for x in basis_monomials(data, cutoff)
    )


def products_equivalent(data: FixedData, C1: DilogProduct, C2: DilogProduct, cutoff: int) -> bool:
    """Whether C1 and C2 agree modulo terms of degree > cutoff."""
    return signed_equivalent(data, [(g, 1) for g in C1], [(g, 1) for g in C2], cutoff)


def is_identity(data: FixedData, signed: Sequence[tuple[DilogFactor, int]], cutoff: int) -> bool:
    return all(signed_action(data, signed, x) == x for x in basis_monomials(data, cutoff))


def residual(data: FixedData, signed, cutoff: int) -> dict:
    """Terms of the action on x^{f_i} that differ from the identity."""
    out = {}
    for i, x in enumerate(basis_monomials(data, cutoff)[: data.rank]):
        y = signed_action(data, signed, x)
        diff = {
            a: y.terms.get(a, 0) - x.terms.get(a, 0)
            for a in set(y.terms) | set(x.terms)
            if y.terms.get(a, 0) != x.terms.get(a, 0)
        }
        if diff:
            out[f"f{i + 1}"] = diff
    return out


# -- derivations -------------------------------------------------------------


def x_derivation(data: FixedData, n: Sequence[int], f: TruncatedSeries) -> TruncatedSeries:
    """X_n(x^{mt}) = <n, mt>_1 x^{mt + p1*(n)}, truncated."""
    out: dict[Shift, Fraction] = {}
    step = sum(n)
    for a, c in f.terms.items():
        if sum(a) + step > f.cutoff:
            continue
        v = data.pairing(n, f.exponent(data, a).m)
        if v == 0:
            continue
        key = tuple(x + y for x, y in zip(a, n))
        out[key] = out.get(key, Fraction(0)) + c * v
    return TruncatedSeries(f.base, f.cutoff, out).clean()


def dilog_via_exponential(data: FixedData, n: Sequence[int], f: TruncatedSeries) -> TruncatedSeries:
    """exp(sum_j (-1)^{j+1}/j^2 X_{jn}) applied to f by summing the exponential series."""
    step = sum(n)
    jmax = f.cutoff // step

    def gen(g: TruncatedSeries) -> TruncatedSeries:
        acc: dict[Shift, Fraction] = {}
        for j in range(1, jmax + 1):
            coef = Fraction((-1) ** (j + 1), j * j)
            h = x_derivation(data, tuple(j * x for x in n), g)
            for k, v in h.terms.items():
                acc[k] = acc.get(k, Fraction(0)) + coef * v
        return TruncatedSeries(g.base, g.cutoff, acc).clean()

    total = f.copy()
    term = f
    for k in range(1, jmax + 1):
        term = gen(term)
        term = TruncatedSeries(term.base, term.cutoff, {a: c / k for a, c in term.terms.items()})
        for a, c in term.terms.items():
            total.terms[a] = total.terms.get(a, Fraction(0)) + c
    return total.clean()


YSeries = dict[tuple[int, ...], Fraction]


def y_derivation(data: FixedData, n: Sequence[int], f: YSeries, cutoff: int) -> YSeries:
    """X_n(y^{n'}) = {n, n'} y^{n' + n}, keeping degrees <= cutoff."""
    out: YSeries = {}
    for m, c in f.items():
        if sum(m) + sum(n) > cutoff:
            continue
        v = data.skew(n, m)
        if v == 0:
            continue
        key = tuple(a + b for a, b in zip(m, n))
        out[key] = out.get(key, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v != 0}


def series_from_terms(base: MTilde, cutoff: int, terms: Iterable[tuple[Shift, Fraction]]):
    return TruncatedSeries(base, cutoff, dict(terms)).clean()
