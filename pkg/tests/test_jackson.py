import itertools
import random
from fractions import Fraction

import pytest

from qlaumon.jackson import (CocycleSpec, cocycle_eval, cocycle_factor,
                             cocycle_poly, cocycle_rank, expected_rank)
from qlaumon.params import sample_params
from qlaumon.rmatrix import compositions


def mkspec(N, M, seed, mvec=None):
    ps = sample_params(seed, N)
    m = mvec if mvec is not None else tuple([M] + [0] * (N - 1))
    return CocycleSpec.from_params(ps, m)


def rand_points(M, rng):
    pts = set()
    while len(pts) < M:
        pts.add(Fraction(rng.randrange(1, 80), rng.randrange(1, 23)))
    return sorted(pts)


def test_factor_degree_and_block_structure():
    spec = mkspec(3, 2, 5)
    z = Fraction(3, 7)
    # first block: only inverse-a factors; last block: only b factors
    assert cocycle_factor(spec, 0, z) == \
        (1 - z / spec.a[1]) * (1 - z / spec.a[2])
    assert cocycle_factor(spec, 2, z) == \
        (1 - spec.b[0] * z) * (1 - spec.b[1] * z)
    # degree N-1 in z: leading coefficient nonzero
    poly = cocycle_poly(mkspec(3, 1, 5), (1, 0, 0))
    assert max(sum(k) for k in poly) == 2


def test_single_variable_reduces_to_factors():
    spec = mkspec(2, 1, 6)
    z1 = Fraction(5, 9)
    assert cocycle_eval(spec, (1, 0), [z1]) == cocycle_factor(spec, 0, z1)
    assert cocycle_eval(spec, (0, 1), [z1]) == cocycle_factor(spec, 1, z1)


def test_empty_configuration_is_one():
    spec = mkspec(2, 0, 6)
    assert cocycle_eval(spec, (0, 0), []) == spec.field.one


def test_symmetry_under_point_permutations():
    rng = random.Random(2)
    spec = mkspec(2, 3, 8)
    zs = rand_points(3, rng)
    base = cocycle_eval(spec, (2, 1), zs)
    for perm in itertools.permutations(zs):
        assert cocycle_eval(spec, (2, 1), list(perm)) == base


def test_repeated_points_rejected():
    spec = mkspec(2, 2, 8)
    with pytest.raises(ValueError):
        cocycle_eval(spec, (1, 1), [Fraction(1, 2), Fraction(1, 2)])


def test_vandermonde_division_is_exact_on_random_specs():
    rng = random.Random(4)
    count = 0
    for seed in range(25):
        for (N, M) in ((2, 2), (3, 2), (2, 3)):
            spec = mkspec(N, M, 30 + seed)
            rvecs = compositions(N, M)
            rvec = rvecs[rng.randrange(len(rvecs))]
            poly = cocycle_poly(spec, rvec)  # raises if division fails
            zs = rand_points(M, rng)
            val = spec.field.zero
            for k, c in poly.items():
                term = c
                for a in range(M):
                    term = term * zs[a] ** k[a]
                val = val + term
            assert val == cocycle_eval(spec, rvec, zs)
            count += 1
    assert count >= 50


def test_ranks_match_connection_block_size():
    rng = random.Random(7)
    for (N, M) in ((2, 1), (2, 2), (3, 2)):
        spec = mkspec(N, M, 10 + N + M)
        cfgs = [rand_points(M, rng) for _ in range(expected_rank(N, M))]
        rank, family = cocycle_rank(spec, cfgs)
        assert rank == expected_rank(N, M)
        assert family == len(compositions(N, M))


def test_rank_uses_generic_truncation_vector_too():
    rng = random.Random(8)
    spec = mkspec(3, 2, 12, mvec=(1, 1, 0))
    cfgs = [rand_points(2, rng) for _ in range(expected_rank(3, 2))]
    rank, _ = cocycle_rank(spec, cfgs)
    assert rank == expected_rank(3, 2)
