"""Fixed data, seeds, pairings and the mutation maps.

Everything is written in the coordinates of one seed: an element of ``N`` is
an integer vector in the basis ``e_1..e_r`` and an element of ``M_R`` is a
rational vector in the dual basis ``f_1..f_r`` (with ``<e_i, f_j> =
delta_ij / delta_i``).  Directions ``k`` of mutation are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import NamedTuple, Sequence

from .linalg import mat_mul, primitive, transpose, vec_gcd

NVec = tuple[int, ...]
MVec = tuple  # rational entries (Fraction or int)


class MTilde(NamedTuple):
    """An element of the principal extension ``M° ⊕ N``."""

    m: tuple
    n: tuple[int, ...]

    def __add__(self, other):  # type: ignore[override]
        return MTilde(
            tuple(a + b for a, b in zip(self.m, other.m)),
            tuple(a + b for a, b in zip(self.n, other.n)),
        )

    def scaled(self, c) -> "MTilde":
        return MTilde(tuple(c * a for a in self.m), tuple(c * a for a in self.n))


def _frac_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def pos(a):
    return a if a > 0 else 0


@dataclass(frozen=True)
class FixedData:
    """Skew form ``omega`` on ``N = Z^r`` together with the integers ``delta``.

    ``omega[i][j] = {e_i, e_j}``; the exchange matrix is ``b_ij = delta_i *
    omega[i][j]``.
    """

    omega: tuple[tuple[Fraction, ...], ...]
    delta: tuple[int, ...]

    def __post_init__(self):
        om = _frac_matrix(self.omega)
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "delta", tuple(int(d) for d in self.delta))
        r = len(self.delta)
        if len(om) != r or any(len(row) != r for row in om):
            raise ValueError("omega must be an r x r matrix matching delta")
        if any(d <= 0 for d in self.delta):
            raise ValueError("delta entries must be positive integers")
        for i in range(r):
            for j in range(r):
                if om[i][j] != -om[j][i]:
                    raise ValueError("omega is not skew-symmetric")
                if (self.delta[i] * om[i][j]).denominator != 1:
                    raise ValueError("delta_i * omega_ij must be an integer")

    @classmethod
    def from_exchange_matrix(cls, B: Sequence[Sequence[int]], delta: Sequence[int]) -> "FixedData":
        r = len(delta)
        if len(B) != r or any(len(row) != r for row in B):
            raise ValueError("B must be r x r with r = len(delta)")
        omega = [[Fraction(B[i][j], delta[i]) for j in range(r)] for i in range(r)]
        for i in range(r):
            for j in range(r):
                if omega[i][j] != -omega[j][i]:
                    raise ValueError("B is not skew-symmetrizable by the given delta")
        return cls(tuple(map(tuple, omega)), tuple(delta))

    # -- basic structure -------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.delta)

    @cached_property
    def B(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(int(self.delta[i] * self.omega[i][j]) for j in range(self.rank))
            for i in range(self.rank)
        )

    @cached_property
    def _lcm_delta(self) -> int:
        return reduce(lcm, self.delta, 1)

    def unit(self, i: int) -> NVec:
        """The basis vector e_i (0-based index)."""
        return tuple(int(j == i) for j in range(self.rank))

    # -- pairings and maps ---------------------------------------------------

    def pairing(self, n: Sequence[int], z: Sequence) -> Fraction:
        return sum((Fraction(a) * b / d for a, b, d in zip(n, z, self.delta)), Fraction(0))

    def skew(self, n: Sequence[int], n2: Sequence[int]) -> Fraction:
        om = self.omega
        return sum(
            (a * om[i][j] * b for i, a in enumerate(n) if a for j, b in enumerate(n2) if b),
            Fraction(0),
        )

    def p_star(self, n: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(bij * a for bij, a in zip(row, n)) for row in self.B)

    def p1_star(self, n: Sequence[int]) -> MTilde:
        return MTilde(self.p_star(n), tuple(n))

    def pairing1(self, n: Sequence[int], mt: MTilde) -> Fraction:
        return self.pairing(n, mt.m)

    def hyperplane(self, n: Sequence[int]) -> tuple[int, ...]:
        """Primitive integer functional h with h . z proportional to <n, z>."""
        L = self._lcm_delta
        return primitive([a * (L // d) for a, d in zip(n, self.delta)])

    def delta_of(self, n: Sequence[int]) -> Fraction:
        """Smallest positive rational d with d * n in the sublattice N°."""
        t = vec_gcd(n)
        if t == 0:
            raise ValueError("delta_of is undefined for n = 0")
        n0 = [a // t for a in n]
        d0 = reduce(
            lcm, (di // gcd(abs(a), di) for a, di in zip(n0, self.delta) if a), 1
        )
        return Fraction(d0, t)

    def rescale(self, lam) -> "FixedData":
        lam = Fraction(lam)
        if lam <= 0:
            raise ValueError("rescaling factor must be positive")
        new_delta = []
        for d in self.delta:
            q = Fraction(d) / lam
            if q.denominator != 1:
                raise ValueError(f"delta {d} / {lam} is not an integer")
            new_delta.append(int(q))
        omega = tuple(tuple(lam * x for x in row) for row in self.omega)
        return FixedData(omega, tuple(new_delta))

    # -- mutation maps (direction k is 1-based) ---------------------------------

    def _k(self, k: int) -> int:
        if not 1 <= k <= self.rank:
            raise ValueError(f"mutation direction {k} outside 1..{self.rank}")
        return k - 1

    def transition_matrix(self, k: int) -> list[list[int]]:
        """Matrix A with (e'_1..e'_r) = (e_1..e_r) A; it satisfies A^2 = I."""
        kk = self._k(k)
        r = self.rank
        A = [[int(i == j) for j in range(r)] for i in range(r)]
        for j in range(r):
            A[kk][j] = -1 if j == kk else pos(self.B[kk][j])
        return A

    def n_to_mutated(self, n: Sequence[int], k: int) -> NVec:
        """Coefficients of a fixed lattice element in the mutated basis."""
        A = self.transition_matrix(k)
        return tuple(sum(A[i][j] * n[j] for j in range(self.rank)) for i in range(self.rank))

    def m_to_mutated(self, z: Sequence, k: int) -> tuple:
        """Dual-basis coefficients of a point of M_R in the mutated seed.

        ``z'_i = delta_i <e'_i, z>``; the map is an involution because A^2 = I.
        """
        A = self.transition_matrix(k)
        r = self.rank
        return tuple(
            sum(Fraction(self.delta[i] * A[j][i]) * z[j] / self.delta[j] for j in range(r))
            for i in range(r)
        )

    def mt_to_mutated(self, mt: MTilde, k: int) -> MTilde:
        return MTilde(self.m_to_mutated(mt.m, k), self.n_to_mutated(mt.n, k))

    def S_k(self, z: Sequence, k: int) -> tuple:
        kk = self._k(k)
        c = z[kk]
        return tuple(a + c * row[kk] for a, row in zip(z, self.B))

    def S_k_inverse(self, z: Sequence, k: int) -> tuple:
        kk = self._k(k)
        c = z[kk]
        return tuple(a - c * row[kk] for a, row in zip(z, self.B))

    def S_k_star(self, n: Sequence[int], k: int) -> NVec:
        kk = self._k(k)
        c = sum(b * a for b, a in zip(self.B[kk], n))
        return tuple(a + (c if i == kk else 0) for i, a in enumerate(n))

    def T_k(self, z: Sequence, k: int) -> tuple:
        kk = self._k(k)
        c = pos(z[kk])
        return tuple(a + c * row[kk] for a, row in zip(z, self.B))

    def T_k_inverse(self, z: Sequence, k: int) -> tuple:
        kk = self._k(k)
        c = pos(z[kk])
        return tuple(a - c * row[kk] for a, row in zip(z, self.B))

    def S_tilde_k(self, mt: MTilde, k: int) -> MTilde:
        kk = self._k(k)
        c = mt.m[kk]
        return MTilde(
            tuple(a + c * row[kk] for a, row in zip(mt.m, self.B)),
            tuple(a + (c if i == kk else 0) for i, a in enumerate(mt.n)),
        )

    def T_tilde_k(self, mt: MTilde, k: int) -> MTilde:
        kk = self._k(k)
        c = pos(mt.m[kk])
        return MTilde(
            tuple(a + c * row[kk] for a, row in zip(mt.m, self.B)),
            tuple(a + (c if i == kk else 0) for i, a in enumerate(mt.n)),
        )

    def mutated_data(self, k: int) -> "FixedData":
        A = self.transition_matrix(k)
        om = [list(row) for row in self.omega]
        new = mat_mul(mat_mul(transpose(A), om), A)
        return FixedData(tuple(map(tuple, new)), self.delta)

    def admissible_coordinates(self, n: Sequence[int], z: Sequence) -> list[Fraction]:
        """The numbers b'_k for a normal n at a point z of n-perp, k = 1..r."""
        out = []
        for kk in range(self.rank):
            sgn = -1 if z[kk] >= 0 else 1
            out.append(-n[kk] + sum(pos(sgn * b) * a for b, a in zip(self.B[kk], n)))
        return out

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "omega": [[[x.numerator, x.denominator] for x in row] for row in self.omega],
            "delta": list(self.delta),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FixedData":
        omega = tuple(tuple(Fraction(a, b) for a, b in row) for row in obj["omega"])
        data = cls(omega, tuple(obj["delta"]))
        if data.rank != obj.get("rank", data.rank):
            raise ValueError("rank field disagrees with omega")
        return data


@dataclass(frozen=True)
class Seed(FixedData):
    """Fixed data written in the basis of a particular seed.

    ``word`` records the mutation directions applied to reach this seed from
    the initial one.
    """

    word: tuple[int, ...] = field(default=())

    @classmethod
    def from_data(cls, data: FixedData, word: tuple[int, ...] = ()) -> "Seed":
        return cls(data.omega, data.delta, word)

    @classmethod
    def from_exchange_matrix(cls, B, delta) -> "Seed":  # type: ignore[override]
        return cls.from_data(FixedData.from_exchange_matrix(B, delta))

    def mutate(self, k: int) -> "Seed":
        return Seed.from_data(self.mutated_data(k), self.word + (k,))


def mutate_seed(s: Seed, k: int) -> Seed:
    return s.mutate(k)


def coordinate_change(s: FixedData, n: Sequence[int], k: int) -> NVec:
    return s.n_to_mutated(n, k)


def degree(n: Sequence[int]) -> int:
    return sum(n)


def is_positive(n: Sequence[int]) -> bool:
    return all(a >= 0 for a in n) and any(a > 0 for a in n)
