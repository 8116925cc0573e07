from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltlab.complexes import ProjComplex, direct_sum, is_isomorphic, shift
from siltlab.errors import NotAComplex, ParseError
from siltlab.examples import b_family, l_family, lambda0, p1_family, r_family
from siltlab.formats import (
    format_algebra,
    format_collection,
    format_complex,
    parse_algebra,
    parse_collection,
    parse_complex,
    parse_element,
)
from siltlab.quiver import build_algebra
from siltlab.silting import SiltingObject, replay

DATA = resources.files("siltlab") / "data"


def read(name):
    return (DATA / name).read_text(encoding="utf-8")


@pytest.mark.parametrize("name,dim", [("lambda0.alg", 5), ("a2.alg", 3), ("a3.alg", 6)])
def test_bundled_algebras(name, dim):
    pres, label = parse_algebra(read(name))
    assert build_algebra(pres, label).dim == dim


def test_algebra_round_trip():
    # a commutative square with a rescaled commutativity relation
    text = (
        "name: square\nvertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 4\n"
        "arrow c: 1 -> 3\narrow d: 3 -> 4\nrelation: a*b - 1/2*c*d\n"
    )
    pres, name = parse_algebra(text)
    assert format_algebra(pres, name) == text
    assert build_algebra(pres, name).dim == 9


def test_rational_coefficients_and_comments():
    pres, _ = parse_algebra("vertices: 1 2   # two\narrow a: 1 -> 2\narrow b: 1 -> 2\nrelation: 3*a - 2/3*b\n")
    assert pres.relations == (((3, ("a",)), (Fraction(-2, 3), ("b",))),)


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("vertices: 1 2\narrow a 1 -> 2\n", 2, 1),
        ("vertices: 1 2\narrow a: 1 => 2\n", 2, 10),
        ("vertices: 1 2\n  arrow a: 1 => 2\n", 2, 12),
        ("vertices: 1 2\narrow a: 1 -> 2\nrelation: a +\n", 3, None),
        ("vertices: 1\nsize: 3\n", 2, 1),
    ],
)
def test_algebra_syntax_errors(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse_algebra(text)
    assert exc.value.line == line
    if column is not None:
        assert exc.value.column == column


def test_r1_file_matches_the_constructor():
    assert is_isomorphic(parse_complex(read("r1.cpx"), lambda0()), r_family(1))


def test_stalk_file():
    X = parse_complex(read("p2.cpx"), lambda0())
    assert X.signature() == ProjComplex.stalk(lambda0(), (1,)).signature()


def test_complex_errors():
    A = lambda0()
    with pytest.raises(ParseError) as exc:
        parse_complex("degree 0: P1 P7\n", A)
    assert (exc.value.line, exc.value.column) == (1, 14)
    with pytest.raises(ParseError):
        parse_complex("degree 0: P2\ndegree 1: P2\nd(0)[1,1] = a*a\n", A)
    with pytest.raises(ParseError):
        parse_complex("degree 0: P1\ndegree 1: P2\nd(0)[1,1] = a\n", A)  # a runs 1 -> 2, wrong corner
    with pytest.raises(ParseError):
        parse_complex("degree 0: P1\ndegree 1: P2\nd(0)[2,1] = b\n", A)
    with pytest.raises(NotAComplex):
        parse_complex("degree -1: P1\ndegree 0: P2\ndegree 1: P1\nd(-1)[1,1] = b\nd(0)[1,1] = a\n", A)


def test_element_parsing():
    A = lambda0()
    x = parse_element(A, "2*e1 - 1/2*a*b")
    assert parse_element(A, "e1 + e1 - 1/2*a*b") == x
    assert parse_element(A, "b*a") == {}


def complexes():
    A = lambda0()
    base = st.one_of(
        st.integers(0, 3).map(r_family),
        st.integers(0, 3).map(l_family),
        st.integers(1, 2).map(b_family),
        st.integers(1, 3).map(p1_family),
        st.just(ProjComplex.regular(A)),
    )
    single = st.tuples(base, st.integers(-2, 2)).map(lambda t: shift(*t))
    return st.lists(single, min_size=1, max_size=3).map(lambda xs: direct_sum(xs, A))


@settings(max_examples=40, deadline=None)
@given(complexes())
def test_complex_round_trip(X):
    text = format_complex(X)
    Y = parse_complex(text, X.algebra)
    assert format_complex(Y) == text
    assert is_isomorphic(X, Y)


@settings(max_examples=10, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.sampled_from("+-")), max_size=3))
def test_collection_round_trip(path):
    M = replay(lambda0(), tuple(path))
    objs = parse_collection(format_collection(M.summands), lambda0())
    assert len(objs) == 2
    assert all(is_isomorphic(a, b) for a, b in zip(objs, M.summands))


def test_collection_without_leading_marker():
    objs = parse_collection("degree 0: P1\nobject\ndegree 0: P2\n", lambda0())
    assert [X.signature() for X in objs] == [x.signature() for x in SiltingObject.regular(lambda0()).summands]
