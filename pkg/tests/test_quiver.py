import pytest
from hypothesis import given
from hypothesis import strategies as st

from siltlab.errors import NotFiniteDimensional, UnknownVertex
from siltlab.examples import a2, a3, lambda0
from siltlab.quiver import AlgebraPresentation, Quiver, build_algebra


def test_running_example_basis():
    A = lambda0()
    info = A.describe()
    assert info["dim"] == 5
    assert sorted(info["basis"]) == sorted(["e1", "e2", "a", "b", "a*b"])
    assert info["basis_count_by_length"] == {"0": 2, "1": 2, "2": 1}


@pytest.mark.parametrize("make,dim", [(a2, 3), (a3, 6)])
def test_linear_quivers(make, dim):
    assert make().dim == dim


def test_hom_between_projectives():
    A = lambda0()
    # Hom(P_i, P_j) = e_j A e_i
    assert len(A.hom_basis_proj(0, 0)) == 2  # e1 and a*b
    assert len(A.hom_basis_proj(1, 1)) == 1
    assert [A.label(k) for k in A.hom_basis_proj(0, 1)] == ["b"]
    assert [A.label(k) for k in A.hom_basis_proj(1, 0)] == ["a"]


def test_dead_path_is_zero():
    A = lambda0()
    q = A.quiver
    assert A.path_element([q.arrow_index("b"), q.arrow_index("a")]) == {}


def test_cycle_without_relations_is_rejected():
    q = Quiver.make([1, 2], [("a", 1, 2), ("b", 2, 1)])
    with pytest.raises(NotFiniteDimensional):
        build_algebra(AlgebraPresentation(q, (), 16))


def test_undeclared_vertex():
    with pytest.raises(UnknownVertex):
        Quiver.make([1], [("a", 1, 2)])


def _elements(A):
    coeff = st.integers(-3, 3)
    return st.lists(coeff, min_size=A.dim, max_size=A.dim).map(
        lambda cs: {k: c for k, c in enumerate(cs) if c}
    )


@given(st.data())
def test_multiplication_is_associative_and_unital(data):
    for A in (lambda0(), a3()):
        x, y, z = (data.draw(_elements(A)) for _ in range(3))
        assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))
        assert A.mul(A.unit(), x) == {k: v for k, v in x.items() if v}
        assert A.mul(x, A.unit()) == {k: v for k, v in x.items() if v}
