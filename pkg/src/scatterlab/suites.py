"""Randomized property suites behind ``scatterlab verify pentagon|bracket|oracle``."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .dilogprod import DilogFactor, is_anti_ordered, order, pentagon_rewrite
from .lattice import FixedData
from .seriesrep import products_equivalent, y_derivation

# {e_2, e_1} = 1: the convention of the ordering routine.
RANK2 = FixedData(((0, -1), (1, 0)), (1, 1))


def _primitive(rng: random.Random, top: int, r: int = 2) -> tuple[int, ...]:
    while True:
        n = tuple(rng.randint(0, top) for _ in range(r))
        if any(n) and gcd(*n) == 1:
            return n


def random_anti_ordered(rng: random.Random, top: int = 3, size: int = 3) -> list[DilogFactor]:
    """A valid anti-ordered rank-2 input with pairwise non-parallel directions."""
    dirs: list[tuple[int, ...]] = []
    while len(dirs) < size:
        n = _primitive(rng, top)
        if n not in dirs:
            dirs.append(n)
    # anti-ordered: larger slope n2/n1 to the left
    dirs.sort(key=lambda n: Fraction(n[1], n[0]) if n[0] else Fraction(10**9), reverse=True)
    out = []
    for n in dirs:
        t = rng.choice((1, 1, 2))
        s = rng.randint(1, 3)
        out.append(DilogFactor(tuple(t * x for x in n), Fraction(s, t)))
    return out


def _exponents_ok(C: list[DilogFactor]) -> bool:
    for f in C:
        if f.c <= 0:
            return False
        if (f.c * gcd(*f.n)).denominator != 1:
            return False
    return True


def oracle_suite(count: int, cutoff: int, seed: int) -> dict:
    rng = random.Random(seed)
    fails = []
    for i in range(count):
        C = random_anti_ordered(rng, size=rng.randint(2, 3))
        assert is_anti_ordered(C)
        L = rng.randint(2, cutoff)
        out = order(L, C)
        if not products_equivalent(RANK2, C, out, L) or not _exponents_ok(out):
            fails.append({"instance": i, "degree": L, "input": [[*f.n, str(f.c)] for f in C]})
    return {"suite": "oracle", "count": count, "failures": fails}


def random_exchangeable_pair(rng: random.Random, top: int = 3) -> tuple[DilogFactor, DilogFactor, int]:
    """(Psi[n']^{1/c}, Psi[n]^{1/c}, c) with {n', n} = c in {1, 2, 3}."""
    while True:
        a, b = _primitive(rng, top), _primitive(rng, top)
        c = RANK2.skew(a, b)
        if c in (1, 2, 3):
            c = int(c)
            return DilogFactor(a, Fraction(1, c)), DilogFactor(b, Fraction(1, c)), c


def pentagon_suite(count: int, cutoff: int, seed: int) -> dict:
    rng = random.Random(seed)
    fails = []
    for i in range(count):
        left, right, c = random_exchangeable_pair(rng)
        rhs = pentagon_rewrite(left, right)
        if not products_equivalent(RANK2, [left, right], rhs, cutoff):
            fails.append({"instance": i, "pair": [list(left.n), list(right.n)], "c": c})
    return {"suite": "pentagon", "count": count, "failures": fails}


def random_fixed_data(rng: random.Random, r: int) -> FixedData:
    delta = tuple(rng.choice((1, 1, 2, 3)) for _ in range(r))
    omega = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            v = Fraction(rng.randint(-3, 3), gcd(delta[i], delta[j]))
            omega[i][j], omega[j][i] = v, -v
    return FixedData(tuple(map(tuple, omega)), delta)


def _monomials(r: int, top: int):
    if r == 0:
        yield ()
        return
    for a in range(top + 1):
        for rest in _monomials(r - 1, top - a):
            yield (a,) + rest


def bracket_holds(data: FixedData, n1, n2, cutoff: int) -> bool:
    """[X_n1, X_n2] = {n1, n2} X_{n1+n2} on every y-monomial it can see."""
    top = cutoff - sum(n1) - sum(n2)
    s = data.skew(n1, n2)
    n12 = tuple(a + b for a, b in zip(n1, n2))
    for m in _monomials(data.rank, max(top, 0)):
        f = {m: Fraction(1)}
        lhs = y_derivation(data, n1, y_derivation(data, n2, f, cutoff), cutoff)
        for k, v in y_derivation(data, n2, y_derivation(data, n1, f, cutoff), cutoff).items():
            lhs[k] = lhs.get(k, Fraction(0)) - v
        rhs = {k: s * v for k, v in y_derivation(data, n12, f, cutoff).items()}
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            return False
    return True


def bracket_suite(count: int, cutoff: int, seed: int) -> dict:
    rng = random.Random(seed)
    fails = []
    for i in range(count):
        r = rng.choice((2, 3))
        data = random_fixed_data(rng, r)
        n1 = tuple(rng.randint(0, 2) for _ in range(r))
        n2 = tuple(rng.randint(0, 2) for _ in range(r))
        if not any(n1) or not any(n2):
            n1, n2 = data.unit(0), data.unit(r - 1)
        if not bracket_holds(data, n1, n2, max(cutoff, sum(n1) + sum(n2) + 2)):
            fails.append({"instance": i, "n1": list(n1), "n2": list(n2)})
    return {"suite": "bracket", "count": count, "failures": fails}


SUITES = {"oracle": oracle_suite, "pentagon": pentagon_suite, "bracket": bracket_suite}


def run(name: str, count: int, cutoff: int, seed: int) -> dict:
    res = SUITES[name](count, cutoff, seed)
    res["format"] = 1
    res["ok"] = not res["failures"]
    return res
