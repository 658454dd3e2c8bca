from __future__ import annotations

import oracles
import pytest

from cdlattice import build, cd_lattice, cd_measure, enumerate_subgroups, measure_image, verify_cd_properties
from cdlattice.chermak_delgado import DESCRIPTIONS, PropertyReport
from cdlattice.group import center

# (m*, orders of the CD members, measure image), from tests/oracles.py
ORACLE_CD = {
    "S(3)": (9, [3], [4, 6, 9]),
    "D(8)": (16, [2, 4, 4, 4, 8], [8, 16]),
    "Q(8)": (16, [2, 4, 4, 4, 8], [8, 16]),
    "C(4)": (16, [4], [4, 8, 16]),
    "C(6)": (36, [6], [6, 12, 18, 36]),
    "A(4)": (16, [4], [8, 9, 12, 16]),
    "S(4)": (24, [1, 24], [6, 8, 9, 12, 16, 24]),
    "D(12)": (36, [6], [8, 12, 16, 18, 24, 36]),
    "C(15)": (225, [15], [15, 45, 75, 225]),
    "D(10)": (25, [5], [4, 10, 25]),
    "ES(3, '+')": (81, [3, 9, 9, 9, 9, 27], [27, 81]),
    "ES(3, '-')": (81, [3, 9, 9, 9, 9, 27], [27, 81]),
}


@pytest.mark.parametrize("spec", sorted(ORACLE_CD))
def test_cd_matches_oracle(run, spec):
    P = run(spec)
    m_star, orders, image = ORACLE_CD[spec]
    assert P.cd.m_star == m_star
    assert sorted(P.L.subgroups[i].order for i in P.cd.members) == orders
    assert P.cd.image == image == measure_image(P.G, P.L)


@pytest.mark.parametrize("spec", ["S(3)", "D(8)", "A(4)", "ES(3, '-')"])
def test_members_are_exactly_the_oracle_maximisers(run, spec):
    P = run(spec)
    mul = P.G.mul.tolist()
    subs = oracles.all_subgroups(mul)
    _, expected = oracles.cd_members(mul, subs)
    assert {frozenset(P.L.subgroups[i].indices()) for i in P.cd.members} == expected


def test_measure_examples(run):
    P = run("S(3)")
    assert cd_measure(P.G, P.G.trivial) == 6
    (a3,) = [H for H in P.L.subgroups if H.order == 3]
    assert cd_measure(P.G, a3) == 9
    Q = run("C(6)")
    assert all(cd_measure(Q.G, H) == H.order * 6 for H in Q.L.subgroups)


@pytest.mark.parametrize("spec", ["C(1)", "C(7)", "Abelian(2, 2)", "Abelian(3, 3)", "C(12)"])
def test_abelian_cd_is_the_whole_group(spec):
    G = build(spec)
    L = enumerate_subgroups(G)
    cd = cd_lattice(G, L)
    assert cd.members == (L.top,)
    assert cd.m_star == G.n**2


def test_prime_cyclic_image():
    G = build("C(7)")
    assert measure_image(G, enumerate_subgroups(G)) == [7, 49]


def test_least_and_greatest_members(run):
    d8 = run("D(8)")
    assert d8.L.subgroups[d8.cd.min_member] == center(d8.G)
    assert d8.cd.max_member == d8.L.top
    s3 = run("S(3)")
    assert s3.cd.min_member == s3.cd.max_member
    assert s3.L.subgroups[s3.cd.min_member].order == 3


def test_measure_values_are_consistent(run):
    P = run("S(4)")
    mul = P.G.mul.tolist()
    for i, H in enumerate(P.L.subgroups):
        assert P.cd.measure_of[i] == oracles.measure(mul, set(H.indices()))
        c = P.L.subgroups[P.cd.centralizer_of[i]]
        assert set(c.indices()) == oracles.centralizer(mul, H.indices())
    members = set(P.cd.members)
    assert all((P.cd.measure_of[i] == P.cd.m_star) == (i in members) for i in range(len(P.L)))


PROPERTY_SPECS = [
    "C(1)", "S(3)", "D(8)", "Q(8)", "A(4)", "S(4)", "D(12)", "Dic(3)",
    "ES(3, '+')", "ES(3, '-')", "C(3) X S(3)", "A(5)", "PQ(3, 7)", "Q(16)",
]


@pytest.mark.parametrize("spec", PROPERTY_SPECS)
def test_properties_hold(run, spec):
    P = run(spec)
    report = verify_cd_properties(P.G, P.L, P.cd)
    assert isinstance(report, PropertyReport)
    assert [c.id for c in report.checks] == list(DESCRIPTIONS)
    assert report.passed, [(c.id, c.witness) for c in report.failures()]


def test_properties_do_real_work(run):
    P = run("D(8)")
    report = verify_cd_properties(P.G, P.L, P.cd)
    assert report["P1"].checked == 10
    assert report["P5"].checked == 15  # unordered pairs of 5 members, with repeats
    assert report["P7"].checked > 0
    with pytest.raises(KeyError):
        report["P11"]


def test_property_failure_is_reported(run):
    # a CD result with a wrong least member must trip P4
    from dataclasses import replace

    P = run("D(8)")
    two = next(i for i, H in enumerate(P.L.subgroups) if H.order == 2 and i != P.cd.min_member)
    broken = replace(P.cd, min_member=two)
    report = verify_cd_properties(P.G, P.L, broken)
    assert not report["P4"].passed
    assert report["P4"].witness["subgroup"] == two
