import pytest

from siltlab.errors import HypothesisFailed, SummandObstruction
from siltlab.examples import a2, a3, lambda0
from siltlab.modules import (
    ar_translate,
    bb_tilting,
    decompose,
    direct_sum,
    ext1_dim,
    hom_dim,
    injective,
    is_indecomposable,
    is_injective,
    is_isomorphic,
    is_projective,
    projective,
    projective_dimension,
    simple,
    standard_modules,
)


def test_dimension_vectors():
    A = lambda0()
    assert projective(A, 0).dims == (2, 1)  # e1, a*b at vertex 1 and a at 2
    assert projective(A, 1).dims == (1, 1)
    assert injective(A, 0).dims == (2, 1)
    assert injective(A, 1).dims == (1, 1)
    assert is_isomorphic(projective(A, 0), injective(A, 0))
    assert not is_isomorphic(projective(A, 1), injective(A, 1))


def test_hom_from_projective_reads_off_the_vertex(any_fixture):
    A = any_fixture
    mods = standard_modules(A)
    for M in mods["S"] + mods["P"] + mods["I"]:
        for i in range(A.n):
            assert hom_dim(projective(A, i), M) == M.dims[i]


def test_projective_dimensions_and_ext():
    A = lambda0()
    S1, S2 = simple(A, 0), simple(A, 1)
    assert projective_dimension(S1) == 1
    assert projective_dimension(S2) == 2
    assert ext1_dim(S1, S2) == 1
    assert ext1_dim(S2, S1) == 1
    assert ext1_dim(S1, S1) == 0


def test_translate_of_the_simples():
    A = lambda0()
    assert is_isomorphic(ar_translate(simple(A, 0)), simple(A, 1))
    assert is_isomorphic(ar_translate(simple(A, 1), "-"), simple(A, 0))


def test_translate_round_trip(any_fixture):
    A = any_fixture
    mods = standard_modules(A)
    seen = []
    for M in mods["S"] + mods["I"]:
        if is_projective(M) or is_injective(M) or any(is_isomorphic(M, N) for N in seen):
            continue
        seen.append(M)
        assert is_isomorphic(ar_translate(ar_translate(M, "+"), "-"), M)


def test_translate_refuses_projectives():
    A = lambda0()
    with pytest.raises(SummandObstruction):
        ar_translate(projective(A, 1))


def test_decompose_a_sum():
    A = lambda0()
    M = direct_sum([simple(A, 0), projective(A, 0), injective(A, 1)])
    parts = decompose(M)
    assert len(parts) == 3
    assert all(is_indecomposable(X) for X in parts)
    assert sorted(X.dim for X in parts) == [1, 2, 3]


@pytest.mark.parametrize(
    "make,vertex,outcome",
    [
        (lambda0, 1, "ok"),
        (lambda0, 0, "pd-at-most-one"),
        (a2, 1, "ok"),
        (a2, 0, "not-injective"),
        (a3, 1, "ok"),
        (a3, 2, "ok"),
        (a3, 0, "not-injective"),
    ],
)
def test_bb_tilting_preconditions(make, vertex, outcome):
    A = make()
    if outcome == "ok":
        T, _, cert = bb_tilting(A, vertex)
        assert cert.ok
        assert len(decompose(T)) == A.n
    else:
        with pytest.raises(HypothesisFailed) as exc:
            bb_tilting(A, vertex)
        assert exc.value.bullet == outcome
