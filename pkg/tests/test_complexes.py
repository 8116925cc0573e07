import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltlab.complexes import (
    ChainMap,
    HomComplex,
    ProjComplex,
    cone,
    decompose,
    dg_end_algebra,
    direct_sum,
    end_algebra,
    format_element,
    is_isomorphic,
    is_minimal,
    k0_class,
    minimize,
    shift,
)
from siltlab.errors import NotAComplex
from siltlab.examples import b_family, l_family, lambda0, p1_family, r_family

WINDOW = range(-10, 11)


def family_objects():
    A = lambda0()
    stalks = [ProjComplex.stalk(A, (0,)), ProjComplex.stalk(A, (1,))]
    fams = st.one_of(
        st.sampled_from(stalks),
        st.integers(0, 3).map(r_family),
        st.integers(0, 3).map(l_family),
        st.integers(1, 3).map(b_family),
        st.integers(1, 3).map(p1_family),
    )
    return st.tuples(fams, st.integers(-2, 2)).map(lambda t: shift(*t))


def table(X, Y):
    H = HomComplex(X, Y)
    return {m: H.dim(m) for m in WINDOW}


def cartan_euler_form(X, Y):
    """sum over m of (-1)^m dim Hom(X, Sigma^m Y), computed on the chain level."""
    A = X.algebra
    total = 0
    for p, src in X.terms.items():
        for q, tgt in Y.terms.items():
            sign = -1 if (q - p) % 2 else 1
            total += sign * sum(len(A.hom_basis_proj(i, j)) for i in src for j in tgt)
    return total


@settings(max_examples=40, deadline=None)
@given(family_objects(), family_objects(), st.integers(-2, 2))
def test_shifting_the_source_moves_the_table(X, Y, k):
    base = table(X, Y)
    moved = table(shift(X, k), Y)
    for m in range(-6, 7):
        assert moved[m] == base[m - k]


@settings(max_examples=40, deadline=None)
@given(family_objects(), family_objects())
def test_euler_characteristic_matches_cartan_form(X, Y):
    H = HomComplex(X, Y)
    chi = sum((-1) ** (m % 2) * H.dim(m) for m in H.degree_range())
    assert chi == cartan_euler_form(X, Y)


@settings(max_examples=30, deadline=None)
@given(family_objects(), family_objects(), family_objects())
def test_hom_is_additive(X, Xp, Y):
    S = direct_sum([X, Xp])
    a, b, c = table(S, Y), table(X, Y), table(Xp, Y)
    assert all(a[m] == b[m] + c[m] for m in WINDOW)


@settings(max_examples=30, deadline=None)
@given(family_objects())
def test_families_are_indecomposable_and_minimal(X):
    assert is_minimal(X)
    assert len(decompose(X)) == 1


def test_known_table_for_the_R_family():
    A = lambda0()
    P2 = ProjComplex.stalk(A, (1,))
    for n in range(4):
        dims = HomComplex(P2, r_family(n)).dims()
        assert dims == {m: 1 for m in range(-n, 1)}


def test_cone_of_identity_is_contractible():
    for X in (r_family(2), b_family(1), p1_family(2)):
        C = cone(ChainMap.identity(X))
        C.validate()
        assert minimize(C).is_zero()


def test_minimize_drops_contractible_summands():
    A = lambda0()
    P1 = ProjComplex.stalk(A, (0,))
    X = direct_sum([r_family(1), cone(ChainMap.identity(P1))])
    Y = minimize(X)
    assert Y.rank() == 2
    assert is_isomorphic(X, Y)


def test_decompose_recovers_summands():
    X = direct_sum([r_family(1), shift(l_family(2), 1), b_family(1)])
    parts = decompose(X)
    assert len(parts) == 3
    for Y in (r_family(1), shift(l_family(2), 1), b_family(1)):
        assert sum(is_isomorphic(Y, Z) for Z in parts) == 1


def test_k0_classes():
    # R(2) has P1 in degrees -2 and -1, which cancel
    assert k0_class(r_family(2)).coords == (0, 1)
    assert k0_class(r_family(3)).coords == (-1, 1)
    assert k0_class(shift(r_family(3), 1)).coords == (1, -1)
    assert k0_class(b_family(1)).coords == (-1, 2)


def test_square_nonzero_is_rejected():
    A = lambda0()
    b = {A.hom_basis_proj(0, 1)[0]: 1}
    a = {A.hom_basis_proj(1, 0)[0]: 1}
    X = ProjComplex(A, {-1: (0,), 0: (1,), 1: (0,)}, {-1: [[b]], 0: [[a]]})
    with pytest.raises(NotAComplex):
        X.validate()


def test_end_algebra_of_P1():
    alg, basis, _ = end_algebra(ProjComplex.stalk(lambda0(), (0,)))
    assert alg.dim == 2 and len(basis) == 2
    assert alg.check_associative() and alg.check_unit()


@pytest.mark.parametrize(
    "X",
    [ProjComplex.regular(lambda0()), b_family(1), r_family(2), p1_family(3)],
    ids=["regular", "B1", "R2", "P1_3"],
)
def test_truncated_dg_endomorphisms(X):
    E = dg_end_algebra(X)
    assert E.check_leibniz()
    assert E.h0_dim() == HomComplex(X, X).dim(0)


def test_format_element():
    A = lambda0()
    ab = A.hom_basis_proj(0, 0)
    x = {k: 1 for k in ab}
    assert format_element(A, x) == "e1 + a*b"
    assert format_element(A, {}) == "0"
