import random
from fractions import Fraction

import pytest

from scatterlab.csd import build_csd, check_consistency
from scatterlab.mutation import (
    check_support_transport,
    csd_equivalent,
    degree_growth,
    mutate_build,
    mutate_csd,
)
from scatterlab.presets import preset


def _summary(D):
    return sorted((w.normal, w.t, w.s, w.support.key) for w in D.walls)


CASES = [(name, k) for name, r in [("A2", 2), ("B2", 2), ("G2", 2), ("A3", 3)] for k in range(1, r + 1)]


@pytest.mark.parametrize("name,k", CASES)
def test_mutation_matches_direct_build(name, k):
    s = preset(name)
    L = 4 if s.rank == 2 else 3
    M = mutate_build(s, k, L)
    direct = build_csd(s.mutate(k), L)
    assert check_consistency(M).ok
    assert csd_equivalent(M, direct, L)


@pytest.mark.parametrize("name,k", CASES)
def test_unit_wall_goes_to_new_unit_wall(name, k):
    s = preset(name)
    M = mutate_csd(build_csd(s, 4), k)
    ek = s.unit(k - 1)
    walls = [w for w in M.walls if w.normal == ek]
    assert len(walls) == 1
    w = walls[0]
    assert w.s == 1 and w.t == 1 and w.support.dim == s.rank - 1 and len(w.support.lineality) == s.rank - 1


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_finite_type_walls_agree_exactly(name):
    s = preset(name)
    for k in range(1, s.rank + 1):
        M = mutate_build(s, k, 6)
        direct = build_csd(s.mutate(k), 6)
        # supports may be cut into different pieces; the normals must agree
        assert M.normals() == direct.normals()


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_support_transport(name):
    s = preset(name)
    D = build_csd(s, 6)
    rng = random.Random(1)
    pts = []
    for w in D.walls[:6]:
        pts.append(w.support.general_point(seed=rng.randint(0, 99), strict=False))
    pts += [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(s.rank)) for _ in range(10)]
    for k in range(1, s.rank + 1):
        assert check_support_transport(D, k, pts)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_double_mutation_is_equivalent(name):
    s = preset(name)
    for k in (1, 2):
        twice = mutate_csd(mutate_build(s, k, 4), k)
        back = build_csd(s.mutate(k).mutate(k), twice.cutoff)
        assert twice.data.B == s.B
        assert csd_equivalent(twice, back, twice.cutoff)


def test_self_equivalence():
    D = build_csd(preset("B2"), 5)
    assert csd_equivalent(D, D, 5)


def test_inconsistent_input_rejected():
    A = build_csd(preset("A2"), 4)
    B = build_csd(preset("A2"), 4)
    B.walls = [w for w in B.walls if w.normal != (1, 1)]
    with pytest.raises(ValueError):
        csd_equivalent(A, B, 4)


def test_inequivalent_detected():
    A = build_csd(preset("A2"), 4)
    B = build_csd(preset("A2"), 4)
    # every path from C+ to C- crosses the incoming walls
    B.walls = [type(w)(w.support, w.normal, w.t, 2 * w.s) if w.normal == (1, 0) else w for w in B.walls]
    assert not csd_equivalent(A, B, 4, check=False)


def test_different_data_rejected():
    with pytest.raises(ValueError):
        csd_equivalent(build_csd(preset("A2"), 2), build_csd(preset("B2"), 2), 2)


def test_degree_growth_and_cutoff():
    s = preset("G2")
    assert degree_growth(s, 1) == 2 and degree_growth(s, 2) == 4
    assert mutate_csd(build_csd(s, 8), 2).cutoff == 2


def test_word_is_recorded():
    M = mutate_csd(build_csd(preset("A3"), 3), 2)
    assert tuple(M.data.word) == (2,)


def test_truncated_source_limits_mutated_degree():
    # the (1,1) wall of degree 2 becomes part of an incoming wall of degree 1
    s = preset("A2")
    M = mutate_csd(build_csd(s, 1), 1)
    with pytest.raises(ValueError):
        csd_equivalent(M, build_csd(s.mutate(1), 1), 1)
    # a source holding every wall mutates without loss
    full = mutate_csd(build_csd(s, 2), 1)
    assert csd_equivalent(full, build_csd(s.mutate(1), 2), 2)
