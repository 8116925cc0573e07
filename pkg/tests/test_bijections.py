import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltlab.bijections import (
    Check,
    Report,
    cot_handle,
    duality_defects,
    in_closure,
    is_dual_to,
    phi12_rickard,
    phi21,
    probe_set,
    rickard_object,
    t_handle,
    verify_commutation,
    verify_order_iso,
    weight_closures,
    weight_ge0_by_silting,
    weight_le0_by_silting,
)
from siltlab.complexes import ProjComplex, shift
from siltlab.derived import stalk
from siltlab.errors import CapExceeded, NoProvenance
from siltlab.examples import l_family, lambda0, r_family
from siltlab.modules import injective, simple, standard_modules
from siltlab.silting import SiltingObject, mutate, replay, same_object
from siltlab.smc import SMCollection, same_collection, smc_mutate

steps = st.lists(st.tuples(st.integers(0, 1), st.sampled_from("+-")), max_size=2).map(tuple)


def test_regular_object_goes_to_the_simples(any_fixture):
    C = phi21(SiltingObject.regular(any_fixture))
    assert same_collection(C, SMCollection.simples(any_fixture))


def test_transport_needs_a_path():
    A = lambda0()
    M = SiltingObject(A, SiltingObject.regular(A).summands, None)
    with pytest.raises(NoProvenance):
        phi21(M)


@settings(max_examples=15, deadline=None)
@given(steps)
def test_transported_collection_is_dual(path):
    M = replay(lambda0(), path)
    C = phi21(M, verify=False)
    assert duality_defects(M, C) == []


def test_a_wrong_partner_has_defects():
    A = lambda0()
    M = mutate(SiltingObject.regular(A), 0, "+")
    assert duality_defects(M, SMCollection.simples(A))


def test_simples_go_back_to_the_regular_object(any_fixture):
    M = phi12_rickard(SMCollection.simples(any_fixture))
    assert same_object(M, SiltingObject.regular(any_fixture))


@settings(max_examples=10, deadline=None)
@given(steps)
def test_rickard_inverts_transport(path):
    M = replay(lambda0(), path)
    res = phi12_rickard(phi21(M), report=True)
    assert res.ok, res.defects
    assert same_object(res.silting, M)


def test_nearest_schedule_settles_where_the_full_one_does_not():
    C = phi21(replay(lambda0(), ((1, "+"), (1, "+"))))
    T, n = rickard_object(C, 0, cap=8)
    assert n <= 2 and is_dual_to(T, C, 0)
    with pytest.raises(CapExceeded):
        rickard_object(C, 0, cap=5, schedule="all")


def test_t_structure_of_the_regular_object():
    A = lambda0()
    h = t_handle(SiltingObject.regular(A))
    P1 = ProjComplex.stalk(A, (0,))
    assert h.member_aisle(P1) and h.member_aisle(shift(P1, 1))
    assert not h.member_aisle(shift(P1, -1))
    for S in standard_modules(A)["S"] + standard_modules(A)["I"]:
        assert h.member_heart(stalk(S))
    assert same_collection(h.heart_simples(), SMCollection.simples(A))


def test_co_t_structure_oracles_agree():
    A = lambda0()
    for path in [(), ((0, "+"),), ((1, "+"),), ((1, "-"),)]:
        M = replay(A, path)
        h = cot_handle(M)
        ge, le = weight_closures(M)
        for N in probe_set(A, list(M.summands), 16):
            g, l = h.member_weight_ge0(N), h.member_weight_le0(N)
            assert g == weight_ge0_by_silting(M, N)
            assert l == weight_le0_by_silting(M, N)
            span = N.span()
            if span is not None and -1 <= span[0] and span[1] <= 1:
                assert in_closure(ge, N) == g
                assert in_closure(le, N) == l


def test_coheart_is_the_silting_object():
    M = replay(lambda0(), ((0, "+"),))
    assert cot_handle(M).coheart() == list(M.summands)


@pytest.mark.parametrize("i", [0, 1])
def test_commutation_report(i):
    rep = verify_commutation(SiltingObject.regular(lambda0()), i)
    assert rep.ok, rep.as_dict()


def test_commutation_report_catches_a_bad_partner():
    A = lambda0()
    bad = smc_mutate(SMCollection.simples(A), 1, "+")
    rep = verify_commutation(SiltingObject.regular(A), 0, smc_partner=bad)
    assert not rep.ok
    assert rep.failures()


def test_order_report_on_a_chain():
    A = lambda0()
    L = SiltingObject.regular(A)
    M = mutate(L, 0, "+")
    N = mutate(M, 1, "+")
    rep = verify_order_iso([(L, M), (M, N), (L, N), (N, L)])
    assert rep.ok, rep.as_dict()
    assert [c.witness["silting"] for c in rep.checks] == [True, True, True, False]


def test_report_serialisation():
    r = Report([Check("a", True), Check("b", False, (1, 2))])
    d = r.as_dict()
    assert d["ok"] is False
    assert [c["status"] for c in d["checks"]] == ["pass", "fail"]


def test_right_mutation_at_the_first_vertex_pairs_with_shifted_simple_and_injective():
    A = lambda0()
    M = replay(A, ((0, "-"),))
    P2 = ProjComplex.stalk(A, (1,))
    assert same_object(M, SiltingObject(A, (shift(l_family(1), -1), P2)))
    C = phi21(M)
    target = SMCollection.from_objects(A, [stalk(simple(A, 0), 1), stalk(injective(A, 1))])
    assert same_collection(C, target)
    assert same_object(phi12_rickard(target), M)


def test_standard_co_t_structure():
    A = lambda0()
    L = SiltingObject.regular(A)
    h = cot_handle(L)
    R1 = r_family(1)
    assert h.member_weight_le0(R1) and not h.member_weight_ge0(R1)
    for X in L.summands:
        assert h.member_weight_ge0(X) and h.member_weight_le0(X)
    for X in L.summands:
        assert h.member_weight_le0(shift(X, 1)) and not h.member_weight_ge0(shift(X, 1))


def test_standard_weights_read_off_the_support():
    A = lambda0()
    h = cot_handle(SiltingObject.regular(A))
    for N in probe_set(A, [], 40):
        span = N.span()
        assert h.member_weight_ge0(N) == (span[0] >= 0)
        assert h.member_weight_le0(N) == (span[1] <= 0)


def test_handles_are_bounded():
    A = lambda0()
    h = t_handle(replay(A, ((0, "+"), (1, "+"))))
    for N in probe_set(A, [], 12):
        assert any(h.member_aisle(shift(N, k)) and h.member_coaisle(shift(N, -k)) for k in range(6))


def test_heart_contains_the_partner():
    A = lambda0()
    for path in [(), ((0, "+"),), ((1, "-"),)]:
        h = t_handle(replay(A, path))
        assert all(h.member_heart(X) for X in h.heart_simples().projs)
