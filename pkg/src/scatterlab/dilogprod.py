"""Products of dilogarithm elements and the pentagon-relation ordering algorithm.

A factor ``DilogFactor(n, c)`` stands for ``Psi[n]^c`` with ``n`` a nonnegative
integer vector and ``c`` a positive rational.  Products are lists of factors
read left to right; the rightmost factor acts first.

The ordering routine works with any skew form ``form(a, b) = {a, b}`` that is
integer-valued on the lattice spanned by the factors.  The default is the
rank-2 form with ``{e_2, e_1} = 1``.  In that normalization exponents of the
admissible inputs have the shape ``s/t`` where ``t`` is the gcd of ``n``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

from .linalg import vec_gcd

Form = Callable[[Sequence[int], Sequence[int]], "int | Fraction"]


class DilogFactor(NamedTuple):
    n: tuple[int, ...]
    c: Fraction

    def as_list(self) -> list:
        return [*self.n, self.c]

    def __repr__(self) -> str:
        return f"[{','.join(map(str, self.n))}]^{self.c}"


DilogProduct = list[DilogFactor]


class OrderingError(RuntimeError):
    """The ordering loop reached a state the algorithm never reaches on valid input."""


def rank2_form(a: Sequence[int], b: Sequence[int]) -> int:
    """{a, b} for the rank-2 form with {e_2, e_1} = 1."""
    return a[1] * b[0] - a[0] * b[1]


def deg(n: Sequence[int]) -> int:
    return sum(n)


def make_product(items: Iterable[Sequence]) -> DilogProduct:
    """Build a product from ``[[n_1, ..., n_r, c], ...]`` rows."""
    out = []
    for row in items:
        *n, c = row
        out.append(DilogFactor(tuple(int(x) for x in n), Fraction(c)))
    return out


def to_rows(C: DilogProduct) -> list[list]:
    return [f.as_list() for f in C]


def validate_factor(f: DilogFactor) -> None:
    if any(a < 0 for a in f.n) or not any(f.n):
        raise ValueError(f"factor vector {f.n} is not a positive lattice element")
    if f.c <= 0:
        raise ValueError(f"factor exponent {f.c} is not positive")
    s = f.c * vec_gcd(f.n)
    if s.denominator != 1:
        raise ValueError(f"factor {f!r}: exponent times gcd is not an integer")


# -- predicates -----------------------------------------------------------


def is_ordered(C: DilogProduct, form: Form = rank2_form, canonical: bool = True) -> bool:
    for a, b in zip(C, C[1:]):
        v = form(a.n, b.n)
        if v > 0:
            return False
        if canonical and v == 0 and deg(a.n) > deg(b.n):
            return False
    return True


def is_anti_ordered(C: DilogProduct, form: Form = rank2_form) -> bool:
    return all(form(a.n, b.n) >= 0 for a, b in zip(C, C[1:]))


# -- elementary rewrites -----------------------------------------------------


def pentagon_rewrite(left: DilogFactor, right: DilogFactor, form: Form = rank2_form) -> DilogProduct:
    """Psi[n']^{1/c} Psi[n]^{1/c} = Psi[n]^{1/c} Psi[n+n']^{1/c} Psi[n']^{1/c} for {n', n} = c."""
    c = form(left.n, right.n)
    if c <= 0:
        raise ValueError("pentagon rewrite needs {left, right} > 0")
    unit = Fraction(1) / c
    if left.c != unit or right.c != unit:
        raise ValueError(f"both exponents must equal 1/{c}")
    mid = tuple(a + b for a, b in zip(left.n, right.n))
    return [right, DilogFactor(mid, unit), left]


def join(C: DilogProduct) -> DilogProduct:
    """Merge adjacent factors with equal vectors by adding exponents."""
    out: DilogProduct = []
    for f in C:
        if out and out[-1].n == f.n:
            out[-1] = DilogFactor(f.n, out[-1].c + f.c)
        else:
            out.append(f)
    return out


def decompose_initial(C: DilogProduct) -> DilogProduct:
    """Split every factor with an integer exponent c > 1 into c unit factors."""
    out: DilogProduct = []
    for f in C:
        if f.c.denominator == 1 and f.c > 1:
            out.extend(DilogFactor(f.n, Fraction(1)) for _ in range(int(f.c)))
        else:
            out.append(f)
    return out


def decompose_unit(p, pair: Sequence[DilogFactor]) -> DilogProduct:
    """Split a p-exchangeable pair into factors with exponent 1/p."""
    p = Fraction(p)
    unit = 1 / p
    out: DilogProduct = []
    for f in pair:
        k = p * f.c
        if k.denominator != 1:
            raise ValueError(f"exponent {f.c} is not a multiple of 1/{p}")
        out.extend(DilogFactor(f.n, unit) for _ in range(int(k)))
    return out


# -- the ordering algorithm -------------------------------------------------


class _Orderer:
    def __init__(self, L: int, form: Form, rng: random.Random | None):
        self.L = L
        self.form = form
        self.rng = rng

    def _action(self, p, a: DilogFactor, b: DilogFactor) -> str | None:
        v = self.form(a.n, b.n)
        if v < 0:
            return None
        if v == 0:
            return "swap" if deg(a.n) > deg(b.n) else None
        if deg(a.n) + deg(b.n) > self.L:
            return "swap"
        if v == p and a.c == 1 / Fraction(p) and b.c == 1 / Fraction(p):
            return "pentagon"
        return None

    def _apply(self, res: DilogProduct, i: int, act: str, p) -> None:
        a, b = res[i], res[i + 1]
        if act == "swap":
            res[i], res[i + 1] = b, a
        else:
            unit = 1 / Fraction(p)
            mid = tuple(x + y for x, y in zip(a.n, b.n))
            res[i : i + 2] = [b, DilogFactor(mid, unit), a]

    def partial(self, p, C: DilogProduct) -> DilogProduct:
        """Apply swaps and p-pentagon moves until none is available.

        After a rewrite at position i only the pairs from i-1 on can change,
        so resuming the scan there is the same as restarting from the left.
        """
        res = list(C)
        if self.rng is not None:
            while True:
                acts = [
                    (i, act)
                    for i in range(len(res) - 1)
                    if (act := self._action(p, res[i], res[i + 1])) is not None
                ]
                if not acts:
                    return res
                i, act = self.rng.choice(acts)
                self._apply(res, i, act, p)
        i = 0
        while i < len(res) - 1:
            act = self._action(p, res[i], res[i + 1])
            if act is None:
                i += 1
                continue
            self._apply(res, i, act, p)
            i = max(i - 1, 0)
        return res

    def order_p(self, p, C: DilogProduct) -> DilogProduct:
        if p > self.L**2:
            raise OrderingError(f"subroutine level {p} exceeds the bound {self.L**2}")
        res = list(C)
        while not is_ordered(res, self.form):
            if p == 1:
                res = decompose_initial(res)
            res = self.partial(p, res)
            cand = [i for i in range(len(res) - 1) if self.form(res[i].n, res[i + 1].n) > 0]
            if not cand:
                continue
            i = cand[0] if self.rng is None else self.rng.choice(cand)
            q = self.form(res[i].n, res[i + 1].n)
            inner = decompose_unit(q, res[i : i + 2])
            out = self.order_p(q, inner)
            res = res[:i] + out + res[i + 2 :]
        return join(res)


def order(
    L: int,
    C: DilogProduct,
    form: Form = rank2_form,
    rng: random.Random | None = None,
) -> DilogProduct:
    """Rewrite C into an ordered product equal to it modulo terms of degree > L.

    Selection of the next pair is leftmost-first unless ``rng`` is given, in
    which case it is random among the admissible ones.
    """
    if not isinstance(L, int) or L <= 0:
        raise ValueError("degree bound must be a positive integer")
    C = [DilogFactor(tuple(f.n), Fraction(f.c)) for f in C]
    for f in C:
        validate_factor(f)
    C = [f for f in C if deg(f.n) <= L]
    if len(C) <= 1:
        return C
    return _Orderer(L, form, rng).order_p(1, C)


def canonical_sort(C: DilogProduct, form: Form = rank2_form) -> DilogProduct:
    """Sort runs of mutually commuting adjacent factors by (degree, vector)."""
    out: DilogProduct = []
    run: DilogProduct = []
    for f in C:
        if run and all(form(g.n, f.n) == 0 for g in run):
            run.append(f)
        else:
            out.extend(sorted(run, key=lambda g: (deg(g.n), g.n)))
            run = [f]
    out.extend(sorted(run, key=lambda g: (deg(g.n), g.n)))
    return join(out)


def inverse(C: DilogProduct) -> list[tuple[DilogFactor, int]]:
    """Signed factor list of the inverse product."""
    return [(f, -1) for f in reversed(C)]
