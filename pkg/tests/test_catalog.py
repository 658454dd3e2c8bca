from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdlattice import InvalidSpec, SpecSyntaxError, build, enumerate_subgroups, parse_spec, survey_corpus
from cdlattice.catalog import Ctor, Product, invariant_factor_lists, load_generator_file, pq_root, spec_order
from cdlattice.errors import ClosureExceedsCap
from cdlattice.group import center, factorize, is_zm_group, quotient, structure_flags


def test_parse_examples():
    d8 = parse_spec("D(8)")
    assert d8 == Ctor("D", (8,)) and spec_order(d8) == 8
    prod = parse_spec("C(3) X S(3)")
    assert isinstance(prod, Product) and spec_order(prod) == 18
    assert str(parse_spec("ES( 3 ,'+' )")) == "ES(3, '+')"
    assert str(parse_spec("C(2) X C(3) X C(5)")) == "C(2) X C(3) X C(5)"
    assert isinstance(parse_spec("C(2) X C(3) X C(5)").left, Product)


def test_zm_constraint_is_checked_at_parse_time():
    with pytest.raises(InvalidSpec, match=r"gcd\(6, 2\) = 2"):
        parse_spec("ZM(6,2,5)")


@pytest.mark.parametrize(
    "text",
    ["PQ(3, 5)", "D(7)", "C(0)", "ES(4, '+')", "Foo(3)", "Q(12)", "ZM(7, 3, 3)", "ES(3, 'x')", "S(0)"],
)
def test_invalid_specs(text):
    with pytest.raises(InvalidSpec):
        parse_spec(text)


@pytest.mark.parametrize("text", ["S(3", "C(3) X", "C(3)) ", "", "C(3) Y C(2)"])
def test_syntax_errors_carry_an_offset(text):
    with pytest.raises(SpecSyntaxError) as exc:
        parse_spec(text)
    assert 0 <= exc.value.offset <= len(text)


def test_order_cap_is_checked_before_building():
    with pytest.raises(ClosureExceedsCap):
        build("S(6)", cap=100)
    with pytest.raises(ClosureExceedsCap):
        build("C(20) X C(30)")


def test_builds_are_deterministic():
    for text in ("ES32('-')", "ZM(13, 4, 5)", "D(8) X C(3)"):
        assert np.array_equal(build(text).mul, build(text).mul)


@pytest.mark.parametrize("a, b", [("C(2)", "S(3)"), ("Q(8)", "C(3)"), ("D(10)", "C(2)"), ("A(4)", "C(1)")])
def test_product_orders_multiply(a, b):
    assert build(f"{a} X {b}").order == build(a).order * build(b).order


def test_pq_of_two_and_three_looks_like_s3():
    G = build("PQ(2, 3)")
    assert G.order == 6 and not G.is_abelian() and center(G).order == 1
    assert pq_root(3, 7) == 2


def test_zm_seven_three_two():
    G = build("ZM(7, 3, 2)")
    assert G.order == 21 and not G.is_abelian()
    assert is_zm_group(G)


@pytest.mark.parametrize("text", ["ZM(3, 4, 2)", "ZM(13, 4, 5)", "ZM(21, 2, 20)", "ZM(5, 4, 2)"])
def test_zm_sylows_are_cyclic(text):
    G = build(text)
    L = enumerate_subgroups(G)
    for p, e in factorize(G.n):
        sylows = [H for H in L.subgroups if H.order == p**e]
        assert sylows and all(int(G.element_orders[H.index_array].max()) == p**e for H in sylows)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_extraspecial_exponents(p):
    G = build(f"ES({p}, '+')")
    assert G.order == p**3 and G.exponent() == p and center(G).order == p
    H = build(f"ES({p}, '-')")
    assert H.exponent() == p * p and center(H).order == p


@pytest.mark.parametrize("sign, subgroups", [("+", 110), ("-", 78)])
def test_order_32_extraspecial(sign, subgroups):
    G = build(f"ES32('{sign}')")
    Z = center(G)
    assert G.order == 32 and Z.order == 2
    Q = quotient(G, Z)
    assert Q.order == 16 and Q.exponent() == 2
    # the two types are told apart by their subgroup counts
    assert len(enumerate_subgroups(G)) == subgroups


def test_extraspecial_p2_matches_named_groups():
    assert len(enumerate_subgroups(build("ES(2, '+')"))) == 10  # D8
    assert len(enumerate_subgroups(build("ES(2, '-')"))) == 6  # Q8


def test_dicyclic_and_quaternion():
    assert build("Dic(3)").order == 12
    q16 = build("Q(16)")
    assert q16.order == 16 and center(q16).order == 2
    assert int(np.sum(q16.element_orders == 2)) == 1


def test_symmetric_alternating():
    assert build("S(4)").order == 24 and build("A(5)").order == 60
    assert structure_flags(build("A(4)"))["prime_signature"] == [(2, 2), (3, 1)]


def test_generator_file_spec(tmp_path):
    path = tmp_path / "d8.txt"
    path.write_text("degree: 4\n(1 2 3 4)\n(1 3)\n")
    spec = load_generator_file(path)
    assert build(spec).order == 8
    assert build(f"File({path})").order == 8
    with pytest.raises(OSError):
        build(f"File({tmp_path / 'missing.txt'})")


def test_invariant_factor_lists():
    assert sorted(invariant_factor_lists(8)) == sorted([(8,), (2, 4), (2, 2, 2)])
    assert len(invariant_factor_lists(16)) == 5


# --- corpus ----------------------------------------------------------------


def test_corpus_small_orders():
    assert [str(s) for s in survey_corpus(1)] == ["C(1)"]
    six = [str(s) for s in survey_corpus(6)]
    for text in ["C(1)", "C(2)", "C(3)", "C(4)", "C(5)", "C(6)", "Abelian(2, 2)", "S(3)", "D(6)", "PQ(2, 3)"]:
        assert text in six


def test_corpus_32():
    corpus = [str(s) for s in survey_corpus(32)]
    for text in ["ES32('+')", "ES32('-')", "Q(32)", "D(32)"]:
        assert text in corpus
    assert len(corpus) == len(set(corpus))
    assert all(spec_order(parse_spec(t)) <= 32 for t in corpus)


def test_corpus_zm_orders():
    corpus = [str(s) for s in survey_corpus(100)]
    orders = {spec_order(parse_spec(t)) for t in corpus if t.startswith("ZM")}
    assert {21, 39, 42, 55} <= orders


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([str(s) for s in survey_corpus(40)]))
def test_corpus_specs_round_trip_and_build(text):
    spec = parse_spec(text)
    assert str(spec) == text
    assert build(spec).order == spec_order(spec)
