"""Random configurations, exact stabilizer ranks, certification, cross-ratio."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treeorbits import (
    BadRange,
    Configuration,
    Degenerate,
    FlagProduct,
    NotAPencil,
    NotPrime,
    certify_density,
    cross_ratio,
    dimension,
    parse_tree_dsl,
    random_config,
    stabilizer_dim,
)
from treeorbits.modp import matmul_mod, rank_mod
from treeorbits.oracle import DEFAULT_PRIME, SECONDARY_PRIMES

from .helpers import random_tree

HONEST_TREE = "a:1>m:3>r:5 | b:1>m | c:2>m | d:2>m"


def rand_gl(rng: np.random.Generator, k: int, p: int) -> np.ndarray:
    while True:
        m = rng.integers(0, p, size=(k, k), dtype=np.int64)
        if rank_mod(m, p) == k:
            return m


class TestRandomConfig:
    def test_deterministic(self):
        t = parse_tree_dsl("d1:1>d2:2>d3:3>d4:4>n:6 | d5:2>d4")
        a = random_config(t, p=10007, seed=3, trial=1)
        b = random_config(t, p=10007, seed=3, trial=1)
        assert a.bases.keys() == b.bases.keys()
        for v in a.bases:
            assert np.array_equal(a.bases[v], b.bases[v])

    def test_trials_differ(self):
        t = parse_tree_dsl("1>2>4")
        a = random_config(t, p=10007, seed=0, trial=0)
        b = random_config(t, p=10007, seed=0, trial=1)
        assert any(not np.array_equal(a.bases[v], b.bases[v]) for v in a.bases)

    def test_bad_arguments(self):
        t = parse_tree_dsl("1>2")
        with pytest.raises(NotPrime):
            random_config(t, p=10)
        with pytest.raises(BadRange):
            random_config(t, seed=-1)
        with pytest.raises(BadRange):
            random_config(t, trial=-2)

    @given(st.integers(0, 10**6))
    @settings(max_examples=30, deadline=None)
    def test_containments_and_ranks_exact(self, seed):
        rng = random.Random(seed)
        t = random_tree(rng, max_vertices=7, max_label=8)
        p = 10007
        config = random_config(t, p=p, seed=seed)
        for v, b in config.bases.items():
            k = t.labels[v]
            assert b.shape[1] == k
            assert rank_mod(b, p) == k
            up = t.parent[v]
            if up != t.root:
                stacked = np.hstack([config.bases[up], b])
                assert rank_mod(stacked, p) == t.labels[up]


class TestStabilizerDim:
    def test_single_grassmannian(self):
        report = stabilizer_dim(random_config(parse_tree_dsl("2>4")))
        assert report.variety_dim == 4
        assert report.system_rank == 4
        assert report.lie_stab_dim == 12
        assert report.pgl_stab_dim == 11
        assert report.certified_dense

    def test_full_flag_has_borel_stabilizer(self):
        report = stabilizer_dim(random_config(parse_tree_dsl("1>2>3")))
        assert report.variety_dim == 3
        assert report.system_rank == 3
        assert report.lie_stab_dim == 6

    def test_sparse_triple_rank_gap(self):
        p = FlagProduct(((1, 3), (1, 3), (1, 3)), 4)
        report = stabilizer_dim(random_config(p, p=10007))
        assert report.variety_dim == 15
        assert report.system_rank == 14
        assert not report.certified_dense

    def test_report_serialization(self):
        report = stabilizer_dim(random_config(parse_tree_dsl("1>3")))
        record = report.to_json_dict()
        assert record["prime"] == DEFAULT_PRIME
        assert record["system_rank"] == report.system_rank
        assert record["lie_stab_dim"] + record["system_rank"] == 9

    @given(st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_rank_bounded_by_dimension_and_scalars_stabilize(self, seed):
        t = random_tree(random.Random(seed), max_vertices=6, max_label=7)
        report = stabilizer_dim(random_config(t, p=10007, seed=seed))
        assert report.system_rank <= report.variety_dim
        assert report.lie_stab_dim >= 1

    @given(st.integers(0, 10**6))
    @settings(max_examples=15, deadline=None)
    def test_basis_change_invariance(self, seed):
        t = random_tree(random.Random(seed), max_vertices=6, max_label=7)
        p = 10007
        config = random_config(t, p=p, seed=seed)
        rng = np.random.default_rng(seed + 1)
        changed = {
            v: matmul_mod(b, rand_gl(rng, b.shape[1], p), p)
            for v, b in config.bases.items()
        }
        alt = Configuration(t, p, config.seed, config.trial, changed)
        assert stabilizer_dim(alt).system_rank == stabilizer_dim(config).system_rank

    @given(st.integers(0, 10**6))
    @settings(max_examples=15, deadline=None)
    def test_conjugation_invariance(self, seed):
        t = random_tree(random.Random(seed), max_vertices=6, max_label=7)
        p = 10007
        config = random_config(t, p=p, seed=seed)
        g = rand_gl(np.random.default_rng(seed + 2), t.ambient, p)
        moved = {v: matmul_mod(g, b, p) for v, b in config.bases.items()}
        alt = Configuration(t, p, config.seed, config.trial, moved)
        assert stabilizer_dim(alt).system_rank == stabilizer_dim(config).system_rank


class TestCertifyDensity:
    def test_homogeneous_certifies_immediately(self):
        report = certify_density(parse_tree_dsl("1>2>4"), trials=1)
        assert report.certified_dense
        assert report.status == "DenseCertified"
        assert report.ranks == (5,)

    def test_grassmannian_star_certifies(self):
        report = certify_density(FlagProduct(((1,), (1,), (1,)), 3))
        assert report.certified_dense

    def test_trivially_sparse_star_never_certifies(self):
        report = certify_density(FlagProduct(((2, 4), (2, 4), (2, 4)), 6))
        assert not report.certified_dense
        assert report.status == "Inconclusive"
        assert report.variety_dim == 36
        assert max(report.ranks) <= 35

    def test_crowded_junction_never_certifies(self):
        tree = parse_tree_dsl(HONEST_TREE)
        for p in (DEFAULT_PRIME, SECONDARY_PRIMES[1]):
            report = certify_density(tree, p=p, trials=5)
            assert not report.certified_dense
            assert report.variety_dim == 14
            assert all(r < 14 for r in report.ranks)

    def test_crowded_junction_variant_certifies(self):
        # moving one heavy leaf to the root makes the variety dense
        tree = parse_tree_dsl("a:1>m:3>r:5 | b:1>m | c:2>m | d:2>r")
        report = certify_density(tree)
        assert report.certified_dense
        assert report.variety_dim == 18

    def test_reproducible(self):
        p = FlagProduct(((1, 3), (1, 3), (1, 3)), 4)
        a = certify_density(p, p=10007, trials=2, seed=5)
        b = certify_density(p, p=10007, trials=2, seed=5)
        assert a == b
        record = a.to_json_dict()
        assert record["system_rank"] == max(a.ranks)
        assert record["trials"] == 2

    def test_bad_trials(self):
        with pytest.raises(BadRange):
            certify_density(parse_tree_dsl("1>2"), trials=0)


def line_points(params, p):
    """Columns a*u + b*v in the plane with u = (1,0), v = (0,1)."""
    return [np.array([[a], [b]], dtype=np.int64) % p for a, b in params]


class TestCrossRatio:
    def test_line_normalization(self):
        p = 101
        zs = line_points([(0, 1), (1, 0), (1, 1), (3, 1)], p)
        lower = np.zeros((2, 0), dtype=np.int64)
        upper = np.eye(2, dtype=np.int64)
        assert cross_ratio(zs, lower, upper, p) == 3

    def test_harmonic_tuple(self):
        p = 101
        zs = line_points([(0, 1), (1, 0), (1, 1), (-1, 1)], p)
        lower = np.zeros((2, 0), dtype=np.int64)
        upper = np.eye(2, dtype=np.int64)
        assert cross_ratio(zs, lower, upper, p) == p - 1

    def test_pencil_of_planes(self):
        # planes between a line and a 3-space inside F_101^4
        p = 101
        lower = np.array([[1], [2], [3], [4]], dtype=np.int64)
        u = np.array([1, 0, 0, 0], dtype=np.int64)
        v = np.array([0, 1, 0, 0], dtype=np.int64)
        upper = np.hstack([lower, u[:, None], v[:, None]])
        params = [(0, 1), (1, 0), (1, 1), (3, 1)]
        zs = [
            np.hstack([lower, ((a * u + b * v) % p)[:, None]]) for a, b in params
        ]
        assert cross_ratio(zs, lower, upper, p) == 3

    def test_projective_invariance(self):
        p = 101
        rng = np.random.default_rng(11)
        lower = np.array([[1], [2], [3], [4]], dtype=np.int64)
        u = np.array([1, 0, 0, 0], dtype=np.int64)
        v = np.array([0, 1, 0, 0], dtype=np.int64)
        upper = np.hstack([lower, u[:, None], v[:, None]])
        params = [(0, 1), (1, 0), (1, 1), (3, 1)]
        zs = [np.hstack([lower, ((a * u + b * v) % p)[:, None]]) for a, b in params]
        value = cross_ratio(zs, lower, upper, p)
        g = rand_gl(rng, 4, p)
        moved = [matmul_mod(g, z, p) for z in zs]
        assert cross_ratio(
            moved, matmul_mod(g, lower, p), matmul_mod(g, upper, p), p
        ) == value

    def test_degenerate_pair(self):
        p = 101
        zs = line_points([(0, 1), (1, 0), (1, 1), (0, 1)], p)
        lower = np.zeros((2, 0), dtype=np.int64)
        upper = np.eye(2, dtype=np.int64)
        with pytest.raises(Degenerate):
            cross_ratio(zs, lower, upper, p)

    def test_not_a_pencil_when_containment_fails(self):
        p = 101
        lower = np.array([[1], [0], [0], [0]], dtype=np.int64)
        upper = np.hstack([lower, np.eye(4, dtype=np.int64)[:, 1:3]])
        good = np.hstack([lower, np.eye(4, dtype=np.int64)[:, 1:2]])
        bad = np.eye(4, dtype=np.int64)[:, 2:4]  # does not contain the lower line
        with pytest.raises(NotAPencil):
            cross_ratio([good, good, good, bad], lower, upper, p)

    def test_wrong_shapes(self):
        p = 7
        zs = line_points([(0, 1), (1, 0), (1, 1), (3, 1)], p)
        with pytest.raises(BadRange):
            cross_ratio(zs[:3], np.zeros((2, 0)), np.eye(2), p)
        with pytest.raises(NotAPencil):
            cross_ratio(zs, np.zeros((2, 1)), np.eye(2), p)

    def test_value_never_zero_or_one(self):
        p = 13
        rng = np.random.default_rng(5)
        for _ in range(30):
            t = int(rng.integers(2, p))
            zs = line_points([(0, 1), (1, 0), (1, 1), (t, 1)], p)
            value = cross_ratio(zs, np.zeros((2, 0)), np.eye(2, dtype=np.int64), p)
            assert value == t
            assert value not in (0, 1)
