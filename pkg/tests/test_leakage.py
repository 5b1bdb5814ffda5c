"""Tests for leakage bounds, exact enumeration, Monte Carlo, and the MI oracles."""

import itertools
import math

import numpy as np
import pytest

from wiretap_polar.bec import BecParam, evolve
from wiretap_polar.gf2 import BitMatrix, intersection_dim
from wiretap_polar.leakage import (InconsistentTableError, TooLargeError,
                                   brute_force_mi, conditional_mi_check,
                                   rearranged_bounds,
                                   exact_leakage_enumeration,
                                   leakage_lower_bound, leakage_upper_bound,
                                   mc_leakage, pattern_leakage_dim,
                                   leakage_bounds)
from wiretap_polar.leakage import _dim_above_split, _mc_columns
from wiretap_polar.secrecy import SecrecyPartition


def random_partition(n, rng, max_kr=None):
    while True:
        roles = rng.integers(0, 3, size=n)
        a = tuple(int(i) for i in np.flatnonzero(roles == 0))
        r = tuple(int(i) for i in np.flatnonzero(roles == 1))
        b = tuple(int(i) for i in np.flatnonzero(roles == 2))
        if max_kr is not None and len(a) + len(r) > max_kr:
            continue
        return SecrecyPartition(n, A=a, R=r, B=b)


def all_partitions(n):
    for roles in itertools.product((0, 1, 2), repeat=n):
        a = tuple(i for i, x in enumerate(roles) if x == 0)
        r = tuple(i for i, x in enumerate(roles) if x == 1)
        b = tuple(i for i, x in enumerate(roles) if x == 2)
        yield SecrecyPartition(n, A=a, R=r, B=b)


def test_upper_bound_edges():
    n, m = 8, 3
    t = evolve(BecParam(0.5), m)
    p_all_r = SecrecyPartition(n, A=(), R=tuple(range(n)), B=())
    assert leakage_upper_bound(p_all_r, t) == 0.0
    p_no_r = SecrecyPartition(n, A=tuple(range(4)), R=(), B=tuple(range(4, 8)))
    assert abs(leakage_upper_bound(p_no_r, t)
               - min(n * 0.5, p_no_r.k)) < 1e-12


def test_lower_bound_edges():
    n, m = 8, 3
    p_all_a = SecrecyPartition(n, A=tuple(range(n)), R=(), B=())
    t = evolve(BecParam(0.4), m)
    assert abs(leakage_lower_bound(p_all_a, t) - n * 0.6) < 1e-9
    perfect = evolve(BecParam(0.0), m)
    p = SecrecyPartition(n, A=(0, 1, 2), R=(3, 4), B=(5, 6, 7))
    assert abs(leakage_lower_bound(p, perfect) - p.k) < 1e-12


def test_bounds_from_exact_table_sums():
    n, m = 8, 3
    t = evolve(BecParam(0.5), m)
    order = np.argsort(t.e)
    p = SecrecyPartition(n, A=tuple(int(i) for i in order[:2]),
                         R=tuple(int(i) for i in order[2:4]),
                         B=tuple(int(i) for i in order[4:]))
    c = 1.0 - t.e
    ub = min(c[list(p.A)].sum() + c[list(p.B)].sum(), p.k)
    lb = max(c[list(p.A)].sum() + c[list(p.R)].sum() - p.r, 0.0)
    assert abs(leakage_upper_bound(p, t) - ub) < 1e-12
    assert abs(leakage_lower_bound(p, t) - lb) < 1e-12


def test_rearranged_equals_unclamped_sums():
    n, m, eps = 64, 6, 0.4
    t = evolve(BecParam(eps), m)
    c = 1.0 - t.e
    rng = np.random.default_rng(10)
    for _ in range(100):
        p = random_partition(n, rng)
        cb = rearranged_bounds(p, t, 1 - eps)
        raw_lower = c[list(p.A)].sum() + c[list(p.R)].sum() - p.r
        raw_upper = c[list(p.A)].sum() + c[list(p.B)].sum()
        assert abs(cb.lower - raw_lower) < 1e-12
        assert abs(cb.upper - raw_upper) < 1e-12
        clamped = cb.clamped()
        assert abs(clamped.lower - leakage_lower_bound(p, t)) < 1e-12
        assert abs(clamped.upper - leakage_upper_bound(p, t)) < 1e-12


def test_rearranged_clamping_edge():
    n, m, eps = 8, 3, 0.4
    t = evolve(BecParam(eps), m)
    p = SecrecyPartition(n, A=(), R=tuple(range(n)), B=())
    cb = rearranged_bounds(p, t, 1 - eps)
    assert abs(cb.lower - n * ((1 - eps) - 1)) < 1e-12  # n(C-1) <= 0
    assert cb.clamped().lower == 0.0


def test_rearranged_rejects_inconsistent_capacity():
    t = evolve(BecParam(0.4), 3)
    p = SecrecyPartition(8, A=(0,), R=(1,), B=tuple(range(2, 8)))
    with pytest.raises(InconsistentTableError):
        rearranged_bounds(p, t, 0.7)


def test_exact_enumeration_edges():
    p = SecrecyPartition(8, A=(6, 7), R=(4, 5), B=tuple(range(4)))
    assert exact_leakage_enumeration(p, BecParam(1.0)) == 0.0
    p_free = SecrecyPartition(4, A=(0, 1), R=(2, 3), B=())
    assert abs(exact_leakage_enumeration(p_free, BecParam(0.0)) - p_free.k) < 1e-12
    with pytest.raises(TooLargeError):
        exact_leakage_enumeration(
            SecrecyPartition(32, A=(0,), R=(), B=tuple(range(1, 32))),
            BecParam(0.5))


def test_brute_force_edges():
    p0 = SecrecyPartition(4, A=(), R=(2, 3), B=(0, 1))
    assert brute_force_mi(p0, BecParam(0.5)) == 0.0
    p = SecrecyPartition(4, A=(3,), R=(2,), B=(0, 1))
    assert brute_force_mi(p, BecParam(1.0)) == 0.0
    with pytest.raises(TooLargeError):
        brute_force_mi(
            SecrecyPartition(16, A=(0,), R=(), B=tuple(range(1, 16))),
            BecParam(0.5))
    with pytest.raises(TooLargeError):
        brute_force_mi(
            SecrecyPartition(16, A=tuple(range(9)), R=(),
                             B=tuple(range(9, 16))),
            BecParam(0.5))


def test_cross_oracle_n4_all_partitions():
    for p in all_partitions(4):
        for eps in (0.2, 0.5, 0.8):
            bf = brute_force_mi(p, BecParam(eps))
            ex = exact_leakage_enumeration(p, BecParam(eps))
            assert abs(bf - ex) < 1e-9, (p, eps, bf, ex)


def test_table_pinning_via_exact_leakage():
    """Partition (B below, A = {i}, R above) leaks exactly C_i.

    This pins the per-index assignment of the evolved table at every
    index, via the chain-rule structure of the transform.
    """
    for n, m in ((4, 2), (8, 3)):
        for eps in (0.3, 0.5, 0.7):
            t = evolve(BecParam(eps), m)
            for i in range(n):
                p = SecrecyPartition(n, A=(i,), R=tuple(range(i + 1, n)),
                                     B=tuple(range(i)))
                got = exact_leakage_enumeration(p, BecParam(eps))
                assert abs(got - (1.0 - t.e[i])) < 1e-9
                if n == 4:
                    joint = brute_force_mi(p, BecParam(eps))
                    assert abs(joint - (1.0 - t.e[i])) < 1e-9


def test_sandwich_n8():
    rng = np.random.default_rng(11)
    partitions = [random_partition(8, rng) for _ in range(60)]
    for p in partitions:
        for eps in np.linspace(0.1, 0.9, 5):
            t = evolve(BecParam(eps), 3)
            ex = exact_leakage_enumeration(p, BecParam(eps))
            assert leakage_lower_bound(p, t) <= ex + 1e-9
            assert ex <= leakage_upper_bound(p, t) + 1e-9


def test_exact_monotone_in_erasure():
    rng = np.random.default_rng(12)
    for _ in range(10):
        p = random_partition(8, rng)
        grid = np.linspace(0.0, 1.0, 11)
        vals = [exact_leakage_enumeration(p, BecParam(e)) for e in grid]
        assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))


def test_pattern_dim_matches_generic_route():
    rng = np.random.default_rng(13)
    for _ in range(5):
        p = random_partition(8, rng)
        cols = _mc_columns(p)
        for _ in range(50):
            keep = np.flatnonzero(rng.random(8) > 0.5)
            fast = _dim_above_split([cols[j] for j in keep], p.r, p.k + p.r)
            generic = pattern_leakage_dim(p, keep)
            assert fast == generic


def test_dim_above_split_is_rank_difference():
    from wiretap_polar.gf2 import rank as gf2_rank
    rng = np.random.default_rng(14)
    for _ in range(50):
        total, split, count = 10, 6, 12
        dense = rng.integers(0, 2, size=(count, total), dtype=np.uint8)
        bits = BitMatrix.from_dense(dense).row_bits
        got = _dim_above_split(list(bits), split, total)
        r_full = gf2_rank(BitMatrix.from_dense(dense))
        r_low = gf2_rank(BitMatrix.from_dense(dense[:, :split]))
        assert got == r_full - r_low


def test_mc_trivial_and_determinism():
    p = SecrecyPartition(8, A=(5, 6, 7), R=(3, 4), B=(0, 1, 2))
    est = mc_leakage(p, BecParam(0.0), trials=1, seed=42)
    assert est.mean == exact_leakage_enumeration(p, BecParam(0.0)) == p.k
    assert est.stderr == 0.0
    a = mc_leakage(p, BecParam(0.35), trials=3000, seed=7)
    b = mc_leakage(p, BecParam(0.35), trials=3000, seed=7)
    assert a == b
    c = mc_leakage(p, BecParam(0.35), trials=3000, seed=7, threads=4)
    assert a == c
    d = mc_leakage(p, BecParam(0.35), trials=3000, seed=8)
    assert d != a


def test_mc_converges_to_exact():
    p = SecrecyPartition(8, A=(5, 6, 7), R=(3, 4), B=(0, 1, 2))
    for eps in (0.2, 0.5):
        est = mc_leakage(p, BecParam(eps), trials=10_000, seed=123)
        exact = exact_leakage_enumeration(p, BecParam(eps))
        tol = max(3 * est.stderr, 1e-12)
        assert abs(est.mean - exact) <= tol


def test_mc_input_validation():
    p = SecrecyPartition(4, A=(3,), R=(2,), B=(0, 1))
    with pytest.raises(ValueError):
        mc_leakage(p, BecParam(0.5), trials=0, seed=1)


def test_conditional_mi_edges():
    lhs, rhs = conditional_mi_check([], BecParam(0.5), 4)
    assert lhs == rhs == 0.0
    lhs, rhs = conditional_mi_check(range(4), BecParam(0.5), 4)
    assert abs(rhs - 4 * 0.5) < 1e-9
    assert abs(lhs - rhs) < 1e-9  # chain-rule saturation at D = [n]


@pytest.mark.parametrize("eps", [0.1, 0.5, 0.9])
def test_conditional_mi_all_subsets_n4(eps):
    for size in range(5):
        for d in itertools.combinations(range(4), size):
            lhs, rhs = conditional_mi_check(d, BecParam(eps), 4)
            assert lhs >= rhs - 1e-9, (d, eps, lhs, rhs)


@pytest.mark.parametrize("eps", [0.1, 0.5, 0.9])
def test_conditional_mi_all_subsets_n2(eps):
    for size in range(3):
        for d in itertools.combinations(range(2), size):
            lhs, rhs = conditional_mi_check(d, BecParam(eps), 2)
            assert lhs >= rhs - 1e-9


def test_leakage_bounds_bracket():
    t = evolve(BecParam(0.45), 3)
    p = SecrecyPartition(8, A=(6, 7), R=(4, 5), B=tuple(range(4)))
    pb = leakage_bounds(p, t)
    assert 0.0 <= pb.lower <= pb.upper <= p.k
