import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltlab.complexes import ProjComplex, is_isomorphic, shift
from siltlab.examples import a2, a3, l_family, lambda0, r_family
from siltlab.silting import (
    SiltingObject,
    fingerprint,
    format_path,
    mutate,
    order_leq,
    parse_path,
    presilting_check,
    replay,
    same_object,
    silting_certificate,
    silting_quiver,
)

steps = st.lists(st.tuples(st.integers(0, 1), st.sampled_from("+-")), max_size=3).map(tuple)


def test_path_text_round_trip():
    assert parse_path("1+, 2-") == ((0, "+"), (1, "-"))
    assert format_path(((0, "+"), (1, "-"))) == "1+,2-"
    assert parse_path("") == ()
    with pytest.raises(ValueError):
        parse_path("1*")


def test_left_mutations_of_the_regular_object():
    A = lambda0()
    L = SiltingObject.regular(A)
    P1, P2 = ProjComplex.stalk(A, (0,)), ProjComplex.stalk(A, (1,))
    M1 = mutate(L, 0, "+")
    assert is_isomorphic(M1.summands[0], r_family(1))
    assert is_isomorphic(M1.summands[1], P2)
    M2 = mutate(L, 1, "+")
    assert is_isomorphic(M2.summands[0], P1)
    assert is_isomorphic(M2.summands[1], l_family(1))
    assert M2.provenance == ((1, "+"),)


def test_mutating_a_shifted_summand_at_the_end():
    # right mutation at P1 of the regular object
    A = lambda0()
    M = mutate(SiltingObject.regular(A), 0, "-")
    assert silting_certificate(M).ok
    assert order_leq(M, SiltingObject.regular(A))


def test_presilting_witness():
    A = lambda0()
    P1 = ProjComplex.stalk(A, (0,))
    ok, wit = presilting_check([P1, shift(P1, -1)])
    assert not ok and wit == (0, 1, 1)


def test_order_against_shifts():
    L = SiltingObject.regular(lambda0())
    assert order_leq(L, L.shift(1))
    assert not order_leq(L.shift(1), L)
    assert order_leq(L, L)


@settings(max_examples=25, deadline=None)
@given(steps)
def test_replayed_objects_are_silting(path):
    M = replay(lambda0(), path)
    cert = silting_certificate(M)
    assert cert.ok, cert.as_dict()


@settings(max_examples=25, deadline=None)
@given(steps, st.integers(0, 1), st.sampled_from("+-"))
def test_mutation_is_an_involution(path, i, s):
    M = replay(lambda0(), path)
    back = "-" if s == "+" else "+"
    assert same_object(mutate(mutate(M, i, s), i, back), M)


@settings(max_examples=25, deadline=None)
@given(steps, st.integers(0, 1))
def test_left_mutation_moves_down(path, i):
    M = replay(lambda0(), path)
    N = mutate(M, i, "+")
    assert order_leq(M, N)
    assert not order_leq(N, M)


@settings(max_examples=15, deadline=None)
@given(steps)
def test_fingerprint_ignores_summand_order(path):
    M = replay(lambda0(), path)
    flipped = SiltingObject(M.algebra, tuple(reversed(M.summands)))
    assert fingerprint(M) == fingerprint(flipped)
    assert same_object(M, flipped)


def test_ball_sizes():
    L = SiltingObject.regular(lambda0())
    Q0 = silting_quiver(L, 0)
    assert (len(Q0.nodes), len(Q0.edges)) == (1, 0)
    Q1 = silting_quiver(L, 1)
    assert len(Q1.nodes) == 5
    Q3 = silting_quiver(L, 3)
    assert (len(Q3.nodes), len(Q3.edges)) == (43, 58)


@pytest.mark.parametrize("make", [a2, a3])
def test_small_fixtures(make):
    A = make()
    Q = silting_quiver(SiltingObject.regular(A), 2)
    for nd in Q.nodes:
        assert silting_certificate(nd.obj).ok


def test_quiver_export_is_deterministic():
    L = SiltingObject.regular(lambda0())
    a, b = silting_quiver(L, 2), silting_quiver(L, 2)
    assert a.to_dot() == b.to_dot()
    assert a.as_dict() == b.as_dict()
    assert a.to_dot().startswith("digraph silting {")


def test_order_is_antisymmetric_on_a_ball():
    nodes = silting_quiver(SiltingObject.regular(lambda0()), 2).nodes
    for x in nodes:
        for y in nodes:
            if x.key != y.key:
                assert not (order_leq(x.obj, y.obj) and order_leq(y.obj, x.obj))


def test_exploration_respects_the_node_cap():
    from siltlab.errors import CapExceeded

    with pytest.raises(CapExceeded):
        silting_quiver(SiltingObject.regular(a2()), 6, max_nodes=50)
