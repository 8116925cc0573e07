import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltlab.complexes import ProjComplex, direct_sum, is_isomorphic, shift
from siltlab.derived import (
    as_proj,
    hom_derived,
    is_quasi_isomorphic,
    nakayama,
    nakayama_inv,
    proj_to_module,
    spherical_kind,
    stalk,
    truncate_above,
    twist,
)
from siltlab.errors import NotSpherical
from siltlab.examples import a2, a3, b_family, l_family, lambda0, p1_family, r_family
from siltlab.modules import ext1_dim, hom_dim, injective, is_isomorphic as modules_iso, standard_modules

WINDOW = range(-6, 7)


def as_dict(g):
    return dict(g.dims)


def test_simples_as_perfect_complexes():
    A = lambda0()
    S1, S2 = standard_modules(A)["S"]
    assert is_isomorphic(as_proj(stalk(S1)), l_family(1))
    assert is_isomorphic(as_proj(stalk(S2)), b_family(1))


def test_derived_homs_between_simples():
    A = lambda0()
    S1, S2 = (stalk(S) for S in standard_modules(A)["S"])
    assert as_dict(hom_derived(S1, S1, WINDOW)) == {0: 1}
    assert as_dict(hom_derived(S2, S2, WINDOW)) == {0: 1, 2: 1}
    assert as_dict(hom_derived(S1, S2, WINDOW)) == {1: 1}
    assert as_dict(hom_derived(S2, S1, WINDOW)) == {1: 1}


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([lambda0, a2, a3]), st.data())
def test_low_degrees_are_hom_and_ext(make, data):
    A = make()
    mods = standard_modules(A)
    pool = mods["S"] + mods["P"] + mods["I"]
    M = data.draw(st.sampled_from(pool))
    N = data.draw(st.sampled_from(pool))
    g = as_dict(hom_derived(stalk(M), stalk(N), WINDOW))
    assert g.get(0, 0) == hom_dim(M, N)
    assert g.get(1, 0) == ext1_dim(M, N)
    assert all(m >= 0 for m in g)


@pytest.mark.parametrize("X", [r_family(2), l_family(1), b_family(2), p1_family(2)], ids=["R2", "L1", "B2", "P1_2"])
def test_module_round_trip(X):
    Y = proj_to_module(X)
    assert is_isomorphic(as_proj(Y), X)
    assert is_quasi_isomorphic(X, Y)


def test_nakayama_on_projectives():
    A = lambda0()
    for i in range(A.n):
        Y = nakayama(ProjComplex.stalk(A, (i,)))
        assert Y.degrees() == [0]
        assert modules_iso(Y.term(0), injective(A, i))


@pytest.mark.parametrize("X", [r_family(1), l_family(2), b_family(1), shift(p1_family(2), 1)], ids=["R1", "L2", "B1", "P1_2"])
def test_nakayama_round_trip(X):
    assert is_isomorphic(nakayama_inv(nakayama(X)), X)


def test_spherical_kinds():
    A = lambda0()
    assert spherical_kind(ProjComplex.stalk(A, (0,))) == 0
    assert spherical_kind(b_family(1)) == 2
    with pytest.raises(NotSpherical):
        spherical_kind(ProjComplex.stalk(A, (1,)))
    with pytest.raises(NotSpherical):
        spherical_kind(r_family(2))


def test_twist_by_a_zero_spherical_object():
    A = lambda0()
    P1, P2 = ProjComplex.stalk(A, (0,)), ProjComplex.stalk(A, (1,))
    assert is_isomorphic(twist(P1, l_family(1)), shift(P2, 1))
    assert is_isomorphic(twist(b_family(1), b_family(1)), shift(b_family(1), -1))


def test_smart_truncation_keeps_low_cohomology():
    A = lambda0()
    X = direct_sum([l_family(1), shift(ProjComplex.stalk(A, (1,)), -1)])
    Y = proj_to_module(X)
    assert Y.cohomology_dims() == {0: (1, 0), 1: (1, 1)}
    assert truncate_above(Y, 0).cohomology_dims() == {0: (1, 0)}
    assert truncate_above(Y, 1).cohomology_dims() == Y.cohomology_dims()
    assert truncate_above(Y, -1).cohomology_dims() == {}
