"""Simple-minded collections: axiom checks, mutation and the partial order.

Every member is kept twice: as a complex of modules (for display and for
cohomology) and as a minimal perfect complex (for all Hom computations).
The fixture algebras have finite global dimension, so every bounded
complex of modules has such a representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .complexes import (
    ChainMap,
    HomComplex,
    ProjComplex,
    cone,
    direct_sum,
    end_algebra,
    is_isomorphic,
    mat_block,
    minimize,
    shift,
)
from .derived import ModuleComplex, as_proj, proj_to_module, stalk
from .errors import AxiomViolation, FiltrationCapExceeded
from .linalg import Echelon, RatMatrix, det, is_local, radical
from .modules import simple
from .quiver import PathAlgebra


@dataclass
class Member:
    module: ModuleComplex
    proj: ProjComplex


def member_from_proj(P: ProjComplex) -> Member:
    """Pair a perfect complex with a small module-complex representative."""
    P = minimize(P)
    Y = proj_to_module(P)
    nonzero = [d for d in Y.degrees() if Y.cohomology(d).dim]
    if len(nonzero) == 1:
        d = nonzero[0]
        return Member(stalk(Y.cohomology(d), d), P)
    return Member(Y, P)


def member_from_module(Y) -> Member:
    if not isinstance(Y, ModuleComplex):
        Y = stalk(Y)
    return Member(Y, as_proj(Y))


class SMCollection:
    def __init__(self, algebra: PathAlgebra, members: Sequence[Member], provenance: tuple | None = None):
        self.algebra = algebra
        self.members = list(members)
        self.provenance = None if provenance is None else tuple(provenance)
        self._end_dims = None

    @classmethod
    def from_objects(cls, algebra: PathAlgebra, objs, provenance=None) -> "SMCollection":
        members = []
        for Y in objs:
            if isinstance(Y, Member):
                members.append(Y)
            elif isinstance(Y, ProjComplex):
                members.append(member_from_proj(Y))
            else:
                members.append(member_from_module(Y))
        return cls(algebra, members, provenance)

    @classmethod
    def simples(cls, algebra: PathAlgebra) -> "SMCollection":
        return cls.from_objects(algebra, [simple(algebra, i) for i in range(algebra.n)], ())

    @property
    def objects(self) -> list[ModuleComplex]:
        return [m.module for m in self.members]

    @property
    def projs(self) -> list[ProjComplex]:
        return [m.proj for m in self.members]

    @property
    def end_dims(self) -> list[int]:
        if self._end_dims is None:
            self._end_dims = [HomComplex(P, P).dim(0) for P in self.projs]
        return self._end_dims

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"SMCollection({[m.proj for m in self.members]}, path={self.provenance})"


@dataclass
class SMCCertificate:
    end_dims: list
    generation: str  # "provenance" or "K0-surrogate only"

    def as_dict(self) -> dict:
        return {"end_dims": self.end_dims, "generation": self.generation}


def _k0_modules(P: ProjComplex) -> list:
    """Class in K_0 of the module category: alternating sum of dimension vectors."""
    A = P.algebra
    from .modules import projective

    v = [0] * A.n
    for d, t in P.terms.items():
        s = -1 if d % 2 else 1
        for i in t:
            dims = projective(A, i).dims
            for j in range(A.n):
                v[j] += s * dims[j]
    return v


def smc_check(C: SMCollection | Sequence, algebra: PathAlgebra | None = None) -> SMCCertificate:
    """Verify the axioms; raise :class:`AxiomViolation` with a witness otherwise."""
    if not isinstance(C, SMCollection):
        C = SMCollection.from_objects(algebra, C)
    A = C.algebra
    P = C.projs
    for i, X in enumerate(P):
        if X.is_zero():
            raise AxiomViolation((i, i, 0), f"member {i} is zero")
    for i, X in enumerate(P):
        for j, Y in enumerate(P):
            H = HomComplex(X, Y)
            for m in H.degree_range():
                if m < 0 and H.dim(m):
                    raise AxiomViolation((i, j, m), f"Hom(X_{i}, Sigma^{m} X_{j}) is nonzero")
            if i != j and H.dim(0):
                raise AxiomViolation((i, j, 0), f"Hom(X_{i}, X_{j}) is nonzero")
    for i, X in enumerate(P):
        alg, _, _ = end_algebra(X)
        if radical(alg) or not is_local(alg):
            raise AxiomViolation((i, i, 0), f"End(X_{i}) is not a division algebra")
    if len(P) != A.n:
        raise AxiomViolation(("k0", len(P)), f"K0 classes have rank {len(P)}, expected {A.n}")
    k0 = RatMatrix([_k0_modules(X) for X in P], A.n)
    if abs(det(k0)) != 1:
        raise AxiomViolation(("k0", det(k0)), "K0 classes do not form a basis")
    gen = "provenance" if C.provenance is not None else "K0-surrogate only"
    return SMCCertificate(C.end_dims, gen)


def is_smc(C: SMCollection) -> bool:
    try:
        smc_check(C)
    except AxiomViolation:
        return False
    return True


# ---------------------------------------------------------------------------
# mutation


def _basis_over_end(H: HomComplex, ends: list, side: str) -> list:
    """Degree-1 classes forming a basis of ``H^1`` over ``End(X_i)``.

    ``side`` says where ``End(X_i)`` acts: on the target (``"post"``) or on
    the source (``"pre"``).
    """
    W = Echelon()
    for b in H.cohomology(1).B.basis():
        W.add(b)
    chosen = []
    for f in H.basis(1):
        if W.contains(H.to_vector(f)):
            continue
        chosen.append(f)
        for phi in ends:
            g = phi.compose(f) if side == "post" else f.compose(phi)
            W.add(H.to_vector(g))
    return chosen


def _as_shifted(f: ChainMap) -> ChainMap:
    # a degree-k cycle X -> Y has the same components as a chain map X -> Sigma^k Y
    return ChainMap(f.source, shift(f.target, f.degree), f.comps)


def _extend_left(Z: ProjComplex, Xi: ProjComplex) -> ProjComplex | None:
    """``Sigma^{-1} cone(Z -> Sigma X_i^d)`` for a universal map, or None."""
    H = HomComplex(Z, Xi)
    if not H.dim(1):
        return None
    gs = [_as_shifted(f) for f in _basis_over_end(H, HomComplex(Xi, Xi).basis(0), "post")]
    T = shift(Xi, 1)
    E = direct_sum([T] * len(gs), Z.algebra)
    comps = {}
    for d in Z.degrees():
        blocks = [[g.comp(d)] for g in gs]
        comps[d] = mat_block(blocks, [len(T.term(d))] * len(gs), [len(Z.term(d))])
    return minimize(shift(cone(ChainMap(Z, E, comps)), -1))


def _extend_right(Z: ProjComplex, Xi: ProjComplex) -> ProjComplex | None:
    """``Sigma^{-1} cone(X_i^d -> Sigma Z)`` for a universal map, or None."""
    H = HomComplex(Xi, Z)
    if not H.dim(1):
        return None
    gs = [_as_shifted(f) for f in _basis_over_end(H, HomComplex(Xi, Xi).basis(0), "pre")]
    T = shift(Z, 1)
    E = direct_sum([Xi] * len(gs), Z.algebra)
    comps = {}
    for d in E.degrees():
        blocks = [[g.comp(d) for g in gs]]
        comps[d] = mat_block(blocks, [len(T.term(d))], [len(Xi.term(d))] * len(gs))
    return minimize(shift(cone(ChainMap(E, T, comps)), -1))


def _iterate(step, Z: ProjComplex, Xi: ProjComplex, depth_cap: int) -> ProjComplex:
    for _ in range(depth_cap + 1):
        nxt = step(Z, Xi)
        if nxt is None:
            return Z
        Z = nxt
    raise FiltrationCapExceeded(f"extension closure needs more than {depth_cap} steps")


def _direction(direction: str) -> str:
    if direction in ("+", "left"):
        return "+"
    if direction in ("-", "right"):
        return "-"
    raise ValueError(f"unknown direction {direction!r}")


def smc_mutate(C: SMCollection, i: int, direction: str = "+", depth_cap: int = 4) -> SMCollection:
    """Left (``+``) or right (``-``) mutation at member i.

    Left sends ``X_i`` to ``Sigma X_i`` and every other member to its
    largest extension by copies of ``X_i`` below it; right sends ``X_i`` to
    ``Sigma^{-1} X_i`` and extends by copies of ``X_i`` on top.  When
    ``Hom(X_i, Sigma X_i) = 0`` a single universal extension is enough;
    otherwise the step is repeated, at most ``depth_cap`` times.
    """
    sign = _direction(direction)
    P = C.projs
    Xi = P[i]
    step = _extend_left if sign == "+" else _extend_right
    members = []
    for j, Xj in enumerate(P):
        if j == i:
            members.append(member_from_proj(shift(Xi, 1 if sign == "+" else -1)))
        else:
            members.append(member_from_proj(_iterate(step, Xj, Xi, depth_cap)))
    prov = None if C.provenance is None else C.provenance + ((i, sign),)
    return SMCollection(C.algebra, members, prov)


def fast_path_applies(C: SMCollection, i: int) -> bool:
    return HomComplex(C.projs[i], C.projs[i]).dim(1) == 0


def smc_order(C: SMCollection, Cp: SMCollection) -> bool:
    """Decide ``C >= C'``: ``Hom(X'_i, Sigma^m X_j) = 0`` for every m < 0."""
    for Xp in Cp.projs:
        for X in C.projs:
            H = HomComplex(Xp, X)
            if any(H.dim(m) for m in H.degree_range() if m < 0):
                return False
    return True


def same_collection(C: SMCollection, D: SMCollection, ordered: bool = True) -> bool:
    if len(C) != len(D):
        return False
    if ordered:
        return all(is_isomorphic(a, b) for a, b in zip(C.projs, D.projs))
    used = [False] * len(D)
    for a in C.projs:
        for k, b in enumerate(D.projs):
            if not used[k] and is_isomorphic(a, b):
                used[k] = True
                break
        else:
            return False
    return True


def smc_shift(C: SMCollection, k: int) -> SMCollection:
    return SMCollection.from_objects(C.algebra, [shift(P, k) for P in C.projs])
