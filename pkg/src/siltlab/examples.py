"""Built-in algebras and the indecomposable families over ``lambda0``.

``lambda0`` is the quiver ``1 --a--> 2 --b--> 1`` with the single relation
``b*a = 0``, so ``P_1`` has basis ``e1, a, a*b`` and ``P_2`` has ``e2, b``.
"""

from __future__ import annotations

from functools import lru_cache

from .complexes import ProjComplex, mat_zero
from .linalg import ONE
from .quiver import AlgebraPresentation, PathAlgebra, Quiver, build_algebra


@lru_cache(maxsize=None)
def lambda0() -> PathAlgebra:
    q = Quiver.make([1, 2], [("a", 1, 2), ("b", 2, 1)])
    return build_algebra(AlgebraPresentation(q, (((1, ("b", "a")),),)), "Lambda0")


@lru_cache(maxsize=None)
def a2() -> PathAlgebra:
    q = Quiver.make([1, 2], [("a", 1, 2)])
    return build_algebra(AlgebraPresentation(q, ()), "A2")


@lru_cache(maxsize=None)
def a3() -> PathAlgebra:
    q = Quiver.make([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    return build_algebra(AlgebraPresentation(q, ()), "A3")


FIXTURES = {"lambda0": lambda0, "a2": a2, "a3": a3}


def fixture(name: str) -> PathAlgebra:
    try:
        return FIXTURES[name.lower()]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None


def _element(A: PathAlgebra, label: str) -> dict:
    for k in range(A.dim):
        if A.label(k) == label:
            return {k: ONE}
    raise KeyError(label)


def _chain(A: PathAlgebra, verts: list[int], top: int) -> ProjComplex:
    """Complex with one summand per degree, ending in degree ``top``.

    Each differential is the unique non-isomorphism between neighbours.
    """
    labels = {(0, 0): "a*b", (0, 1): "b", (1, 0): "a"}
    start = top - len(verts) + 1
    terms = {start + k: (v,) for k, v in enumerate(verts)}
    diffs = {}
    for k in range(len(verts) - 1):
        m = mat_zero(1, 1)
        m[0][0] = _element(A, labels[(verts[k], verts[k + 1])])
        diffs[start + k] = m
    return ProjComplex(A, terms, diffs)


def p1_family(n: int) -> ProjComplex:
    """``P_1(n)``: n copies of ``P_1`` joined by ``a*b``."""
    if n < 1:
        raise ValueError("P_1(n) needs n >= 1")
    return _chain(lambda0(), [0] * n, 0)


def r_family(n: int) -> ProjComplex:
    """``R(n) = P_1 -> ... -> P_1 -> P_2`` with n copies of ``P_1``."""
    if n < 0:
        raise ValueError("R(n) needs n >= 0")
    return _chain(lambda0(), [0] * n + [1], 0)


def l_family(n: int) -> ProjComplex:
    """``L(n) = P_2 -> P_1 -> ... -> P_1`` with n copies of ``P_1``."""
    if n < 0:
        raise ValueError("L(n) needs n >= 0")
    return _chain(lambda0(), [1] + [0] * n, 0)


def b_family(n: int) -> ProjComplex:
    """``B(n) = P_2 -> P_1 -> ... -> P_1 -> P_2`` with n copies of ``P_1``."""
    if n < 1:
        raise ValueError("B(n) needs n >= 1")
    return _chain(lambda0(), [1] + [0] * n + [1], 0)


FAMILIES = {"P1": p1_family, "R": r_family, "L": l_family, "B": b_family}


# ---------------------------------------------------------------------------
# combinatorial model of the silting quiver of lambda0


def pattern_successors(node: tuple) -> list[tuple]:
    """Out-neighbours of ``(n, n', m)`` in the combinatorial pattern graph."""
    n, n2, m = node
    if m == 0:
        return [(n, n2 - 1, 0), (n + 1, n2, -1)]
    return [(n + 1, n2 - 1, m - 1), (n, n2, m + 1)]


def pattern_predecessors(node: tuple) -> list[tuple]:
    a, b, c = node
    if c == 0:
        return [(a, b + 1, 0), (a, b, -1)]
    if c == -1:
        return [(a - 1, b, 0), (a, b, -2)]
    return [(a - 1, b + 1, c + 1), (a, b, c - 1)]


def pattern_ball(radius: int) -> tuple[set, set]:
    """Nodes within undirected distance ``radius`` of ``(0, 0, 0)``, and the
    arrows between them."""
    origin = (0, 0, 0)
    dist = {origin: 0}
    frontier = [origin]
    for r in range(radius):
        nxt = []
        for v in frontier:
            for w in pattern_successors(v) + pattern_predecessors(v):
                if w not in dist:
                    dist[w] = r + 1
                    nxt.append(w)
        frontier = nxt
    nodes = set(dist)
    edges = {(v, w) for v in nodes for w in pattern_successors(v) if w in nodes}
    return nodes, edges
