import itertools
import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from scatterlab.cones import RationalCone, cone_contains, cone_dim, cone_intersect, general_point_on


def _solve_exact(cols, z):
    """Solve sum_j x_j cols[j] = z exactly; None if inconsistent."""
    r, k = len(z), len(cols)
    M = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(z[i])] for i in range(r)]
    piv, row = [], 0
    for c in range(k):
        p = next((i for i in range(row, r) if M[i][c] != 0), None)
        if p is None:
            continue
        M[row], M[p] = M[p], M[row]
        M[row] = [x / M[row][c] for x in M[row]]
        for i in range(r):
            if i != row and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[row])]
        piv.append(c)
        row += 1
    if any(M[i][k] != 0 for i in range(row, r)):
        return None
    x = [Fraction(0)] * k
    for i, c in enumerate(piv):
        x[c] = M[i][k]
    return x


def caratheodory_contains(gens, z):
    """Membership by Caratheodory: z is a nonnegative combination of an independent subset."""
    if not any(z):
        return True
    for size in range(1, len(z) + 1):
        for sub in itertools.combinations(gens, size):
            x = _solve_exact(list(sub), z)
            if x is not None and all(v >= 0 for v in x):
                return True
    return False


vec3 = st.lists(st.integers(-3, 3), min_size=3, max_size=3).map(tuple)
gens3 = st.lists(vec3.filter(any), min_size=1, max_size=5)


class TestBasics:
    def test_dimensions(self):
        assert cone_dim(RationalCone([], 3)) == 0
        assert cone_dim(RationalCone([(1, 0, 0), (-1, 0, 0), (0, 1, 0)])) == 2
        d1 = RationalCone([(0, 0, 1), (0, 0, -1), (1, -1, -1)])
        assert cone_dim(d1) == 2

    def test_self_intersection(self):
        a = RationalCone([(1, 0, 0), (0, 1, 0), (1, 1, 1)])
        assert cone_intersect(a, a) == a

    def test_two_hyperplanes_meet_in_line(self):
        h1 = RationalCone.hyperplane((1, 0, 0))
        h2 = RationalCone.hyperplane((0, 1, 0))
        assert cone_intersect(h1, h2) == RationalCone([(0, 0, 1), (0, 0, -1)])

    def test_a3_shake_hands_ray(self):
        d1 = RationalCone([(1, -1, 0), (1, 0, -1)])
        d2 = RationalCone([(0, 1, -1), (1, 0, -1)])
        assert cone_intersect(d1, d2) == RationalCone([(1, 0, -1)])

    def test_membership(self):
        c = RationalCone([(1, 0), (1, 1)])
        assert cone_contains(c, (1, 0))
        assert not cone_contains(c, (-1, 0))
        d1 = RationalCone([(0, 0, 1), (0, 0, -1), (1, -1, -1)])
        # -p*((1,1,0)) = (1,-1,-1) for the A3 exchange matrix
        assert cone_contains(d1, (1, -1, -1))
        assert d1.locate((1, -1, 5)) == "interior"
        assert d1.locate((0, 0, 1)) == "boundary"

    def test_general_point_simple(self):
        c = RationalCone([(1, 0)])
        z = general_point_on(c, [(0, 1)])
        assert z[1] == 0 and z[0] > 0

    def test_general_point_avoids_hyperplanes(self):
        c = RationalCone.hyperplane((1, 0))
        funcs = [(a, b) for a in range(4) for b in range(4) if a + b and a + b <= 3]
        z = general_point_on(c, funcs)
        assert z[0] == 0
        assert all(a * z[0] + b * z[1] != 0 for a, b in funcs if b)

    def test_positive_chamber_point_is_general(self):
        c = RationalCone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        funcs = [n for n in itertools.product(range(3), repeat=3) if any(n)]
        z = c.general_point(funcs)
        assert all(sum(a * b for a, b in zip(n, z)) > 0 for n in funcs)

    def test_degenerate_general_point_rejected(self):
        import pytest

        line = RationalCone([(0, 0, 1), (0, 0, -1)])
        with pytest.raises(ValueError):
            line.general_point([(1, 0, 0), (0, 1, 0)])

    def test_json_round_trip(self):
        c = RationalCone([(0, 0, 1), (0, 0, -1), (1, -1, -1)])
        assert RationalCone.from_json(c.to_json(), 3) == c


class TestProperties:
    @settings(max_examples=150, deadline=None)
    @given(gens3, st.lists(vec3, min_size=1, max_size=4))
    def test_membership_matches_caratheodory(self, gens, points):
        c = RationalCone(gens, 3)
        for z in points + [tuple(sum(g[i] for g in gens) for i in range(3))]:
            assert c.contains(z) == caratheodory_contains(gens, z)

    @settings(max_examples=100, deadline=None)
    @given(gens3, st.integers(0, 10**6))
    def test_canonical_form_ignores_redundant_generators(self, gens, seed):
        rng = random.Random(seed)
        c = RationalCone(gens, 3)
        extra = []
        for _ in range(3):
            w = [rng.randint(0, 3) for _ in gens]
            extra.append(tuple(sum(a * g[i] for a, g in zip(w, gens)) for i in range(3)))
        scaled = [tuple(k * x for x in g) for g, k in ((g, rng.randint(1, 4)) for g in gens)]
        other = scaled + extra
        rng.shuffle(other)
        d = RationalCone(other, 3)
        assert c == d
        assert c.rays == d.rays and c.lineality == d.lineality

    @settings(max_examples=100, deadline=None)
    @given(gens3)
    def test_double_description_round_trip(self, gens):
        c = RationalCone(gens, 3)
        back = RationalCone.from_constraints(3, c.facets, c.equations)
        assert back == c and back.key == c.key

    @settings(max_examples=100, deadline=None)
    @given(gens3, gens3)
    def test_intersection_commutes_and_shrinks(self, g1, g2):
        a, b = RationalCone(g1, 3), RationalCone(g2, 3)
        ab, ba = a.intersect(b), b.intersect(a)
        assert ab == ba
        assert ab.dim <= min(a.dim, b.dim)
        assert a.contains_cone(ab) and b.contains_cone(ab)
        assert ab.intersect(a) == ab

    @settings(max_examples=60, deadline=None)
    @given(gens3, st.integers(0, 1000))
    def test_general_point_is_in_relative_interior(self, gens, seed):
        c = RationalCone(gens, 3)
        z = c.general_point(seed=seed, strict=False)
        if c.dim:
            assert c.contains_relint(z)
