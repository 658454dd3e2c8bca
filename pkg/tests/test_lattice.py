from __future__ import annotations

import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdlattice import (
    LatticeExceedsCap,
    NotComparable,
    build,
    enumerate_subgroups,
    is_maximal_in,
    join,
    meet,
    normal_subgroups,
    open_interval,
)
from cdlattice.group import center, is_normal

# subgroup counts from the brute-force oracle (tests/oracles.py), frozen
ORACLE_COUNTS = {
    "S(3)": 6,
    "D(8)": 10,
    "C(4)": 3,
    "C(6)": 4,
    "Q(8)": 6,
    "A(4)": 10,
    "S(4)": 30,
    "D(12)": 16,
    "C(15)": 4,
    "D(10)": 8,
    "ES(3, '+')": 19,
    "ES(3, '-')": 10,
}


def by_order(L, order):
    return [H for H in L.subgroups if H.order == order]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_prime_cyclic_has_two_subgroups(p):
    assert len(enumerate_subgroups(build(f"C({p})"))) == 2


def test_c6_has_one_subgroup_per_divisor():
    assert [H.order for H in enumerate_subgroups(build("C(6)")).subgroups] == [1, 2, 3, 6]


@pytest.mark.parametrize("spec, count", sorted(ORACLE_COUNTS.items()))
def test_counts_match_oracle(run, spec, count):
    L = run(spec).L
    assert len(L) == count
    if run(spec).G.n <= 16:
        got = {frozenset(H.indices()) for H in L.subgroups}
        assert got == oracles.all_subgroups(run(spec).G.mul.tolist())


@pytest.mark.parametrize("spec, count", [("A(5)", 59), ("S(5)", 156), ("Abelian(2, 2, 2, 2, 2, 2)", 2825)])
def test_larger_counts(spec, count):
    # standard counts for A5, S5 and the elementary abelian group of order 64
    assert len(enumerate_subgroups(build(spec))) == count


def test_lattice_ends_and_ordering(run):
    L = run("S(4)").L
    assert L.subgroups[L.bottom].order == 1
    assert L.subgroups[L.top].order == 24
    keys = [H.sort_key() for H in L.subgroups]
    assert keys == sorted(keys)


def test_subgroup_cap():
    with pytest.raises(LatticeExceedsCap):
        enumerate_subgroups(build("S(4)"), cap=10)


def test_open_intervals(run):
    c4 = run("C(4)").L
    one, c2, whole = c4.subgroups
    assert open_interval(c4, one, whole) == [c2]
    assert open_interval(c4, c2, whole) == []
    assert not is_maximal_in(c4, one, whole)

    d8 = run("D(8)").L
    middle = open_interval(d8, d8.subgroups[0], d8.subgroups[-1])
    assert len(middle) == 8

    s3 = run("S(3)").L
    (a3,) = by_order(s3, 3)
    assert is_maximal_in(s3, a3, s3.subgroups[-1])


def test_order_two_inside_order_four_is_maximal(run):
    L = run("D(8)").L
    for K in by_order(L, 4):
        for H in by_order(L, 2):
            if H.issubset(K):
                assert is_maximal_in(L, H, K)


def test_open_interval_needs_proper_containment(run):
    L = run("S(3)").L
    two = by_order(L, 2)
    with pytest.raises(NotComparable):
        open_interval(L, two[0], two[1])
    with pytest.raises(NotComparable):
        open_interval(L, two[0], two[0])


def test_normal_subgroups(run):
    assert len(normal_subgroups(run("C(6)").G, run("C(6)").L)) == 4
    s3 = run("S(3)")
    assert [H.order for H in normal_subgroups(s3.G, s3.L)] == [1, 3, 6]
    d8 = run("D(8)")
    normal = normal_subgroups(d8.G, d8.L)
    assert len(normal) == 6
    assert all(oracles.is_normal(d8.G.mul.tolist(), set(H.indices())) for H in normal)


def test_meet_and_join_in_s3(run):
    s3 = run("S(3)")
    a, b = by_order(s3.L, 2)[:2]
    assert join(s3.G, s3.L, a, b).order == 6
    assert meet(s3.L, a, b).order == 1
    assert meet(s3.L, a, a) == join(s3.G, s3.L, a, a) == a


def test_covers_are_maximal_pairs(run):
    L = run("S(4)").L
    covers = set(L.covers)
    for i, H in enumerate(L.subgroups):
        for j, K in enumerate(L.subgroups):
            if H.issubset(K) and i != j:
                assert ((i, j) in covers) == is_maximal_in(L, H, K)


LATTICE_SPECS = ["S(4)", "D(12)", "Q(8) X C(2)", "ES(3, '-')", "Dic(5)"]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(LATTICE_SPECS), st.data())
def test_lattice_laws(spec, data):
    from conftest import pipeline

    P = pipeline(spec)
    G, L = P.G, P.L
    n = len(L)
    H, K = (L.subgroups[data.draw(st.integers(0, n - 1))] for _ in range(2))
    m, j = meet(L, H, K), join(G, L, H, K)
    assert m.issubset(H) and m.issubset(K)
    assert H.issubset(j) and K.issubset(j)
    assert set(m.indices()) == set(H.indices()) & set(K.indices())
    assert set(j.indices()) == oracles.closure(G.mul.tolist(), set(H.indices()) | set(K.indices()))
    assert G.n % H.order == 0
    assert join(G, L, H, K) == join(G, L, K, H)
    # absorption
    assert meet(L, H, join(G, L, H, K)) == H
    assert join(G, L, H, meet(L, H, K)) == H


def test_center_is_normal_everywhere(run):
    for spec in LATTICE_SPECS:
        assert is_normal(run(spec).G, center(run(spec).G))
