import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltlab.complexes import ProjComplex, is_isomorphic, shift
from siltlab.errors import AxiomViolation, FiltrationCapExceeded
from siltlab.examples import a2, a3, b_family, l_family, lambda0
from siltlab.derived import as_proj, stalk
from siltlab.modules import injective, simple
from siltlab.smc import (
    SMCollection,
    fast_path_applies,
    is_smc,
    same_collection,
    smc_check,
    smc_mutate,
    smc_order,
    smc_shift,
)

steps = st.lists(st.tuples(st.integers(0, 1), st.sampled_from("+-")), max_size=3)


def walk(path):
    C = SMCollection.simples(lambda0())
    for i, s in path:
        C = smc_mutate(C, i, s)
    return C


def test_simples_are_a_collection(any_fixture):
    C = SMCollection.simples(any_fixture)
    cert = smc_check(C)
    assert cert.end_dims == [1] * any_fixture.n
    assert cert.generation == "provenance"


def test_simples_over_the_running_example():
    C = SMCollection.simples(lambda0())
    assert is_isomorphic(C.projs[0], l_family(1))
    assert is_isomorphic(C.projs[1], b_family(1))


def test_left_mutation_at_the_first_simple():
    A = lambda0()
    D = smc_mutate(SMCollection.simples(A), 0, "+")
    P1, P2 = ProjComplex.stalk(A, (0,)), ProjComplex.stalk(A, (1,))
    assert is_isomorphic(D.projs[0], shift(l_family(1), 1))
    assert is_isomorphic(D.projs[1], P2)
    assert D.provenance == ((0, "+"),)
    assert is_smc(D)
    assert not is_isomorphic(D.projs[1], P1)


def test_a_single_simple_is_not_enough():
    A = lambda0()
    with pytest.raises(AxiomViolation) as exc:
        smc_check(SMCollection.from_objects(A, [simple(A, 0)]))
    assert exc.value.witness == ("k0", 1)


def test_two_copies_violate_orthogonality():
    A = lambda0()
    S = simple(A, 0)
    with pytest.raises(AxiomViolation) as exc:
        smc_check(SMCollection.from_objects(A, [S, S]))
    assert exc.value.witness[2] == 0


def test_projectives_are_not_a_collection():
    # End(P1) is not a division algebra
    A = lambda0()
    C = SMCollection.from_objects(A, [ProjComplex.stalk(A, (0,)), ProjComplex.stalk(A, (1,))])
    assert not is_smc(C)


@settings(max_examples=20, deadline=None)
@given(steps, st.integers(0, 1), st.sampled_from("+-"))
def test_mutation_round_trip(path, i, s):
    C = walk(path)
    back = "-" if s == "+" else "+"
    D = smc_mutate(smc_mutate(C, i, s), i, back)
    assert same_collection(C, D)


@settings(max_examples=20, deadline=None)
@given(steps, st.integers(0, 1))
def test_left_mutation_stays_a_collection_and_moves_down(path, i):
    C = walk(path)
    D = smc_mutate(C, i, "+")
    smc_check(D)
    assert sorted(D.end_dims) == sorted(C.end_dims)
    assert smc_order(C, D)


@pytest.mark.parametrize("make", [a2, a3])
def test_linear_fixtures_mutate(make):
    A = make()
    C = SMCollection.simples(A)
    for i in range(A.n):
        for s in "+-":
            smc_check(smc_mutate(C, i, s))


def test_order_against_shifts():
    C = SMCollection.simples(lambda0())
    assert smc_order(C, smc_shift(C, 1))
    assert not smc_order(smc_shift(C, 1), C)


def test_fast_path_on_the_simples():
    C = SMCollection.simples(lambda0())
    assert fast_path_applies(C, 0)
    assert fast_path_applies(C, 1)


def test_depth_cap_zero_fails_when_an_extension_is_needed():
    C = SMCollection.simples(lambda0())
    with pytest.raises(FiltrationCapExceeded):
        smc_mutate(C, 0, "+", depth_cap=0)


def test_mutation_at_the_second_simple_builds_the_extension():
    # the nontrivial extension of S1 by S2 is the injective I2
    A = lambda0()
    C = SMCollection.simples(A)
    assert fast_path_applies(C, 1)
    D = smc_mutate(C, 1, "+")
    assert is_isomorphic(D.projs[0], as_proj(stalk(injective(A, 1))))
    assert is_isomorphic(D.projs[1], shift(b_family(1), 1))


def test_shifted_simple_with_an_injective():
    A = lambda0()
    C = SMCollection.from_objects(A, [stalk(simple(A, 0), 1), stalk(injective(A, 1))])
    cert = smc_check(C)
    assert cert.generation == "K0-surrogate only"
