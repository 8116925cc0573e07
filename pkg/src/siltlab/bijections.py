"""Passing between silting objects, simple-minded collections and the
(co-)t-structures they determine, plus checks that these passages respect
mutation and the partial orders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .complexes import (
    ChainMap,
    HomComplex,
    ProjComplex,
    cocone,
    cone,
    decompose,
    direct_sum,
    is_isomorphic,
    mat_block,
    minimize,
    shift,
)
from .derived import as_proj, injective_coresolution, nakayama_inv, proj_to_module
from .errors import CapExceeded, FiltrationCapExceeded, TransportFailed
from .modules import injective, projective, simple
from .silting import SiltingObject, mutate, order_leq, presilting_check, require_provenance
from .smc import SMCollection, same_collection, smc_mutate, smc_order


# ---------------------------------------------------------------------------
# silting -> simple-minded


def hom_duality_table(M: SiltingObject | Sequence[ProjComplex], C: SMCollection) -> dict:
    """``{(i, j): {m: dim Hom(M_i, Sigma^m X_j)}}`` with zero entries dropped."""
    summands = M.summands if isinstance(M, SiltingObject) else list(M)
    return {(i, j): HomComplex(Mi, Xj).dims() for i, Mi in enumerate(summands) for j, Xj in enumerate(C.projs)}


def duality_defects(M, C: SMCollection) -> list[tuple]:
    """Entries where ``dim Hom(M_i, Sigma^m X_j)`` differs from ``[i = j][m = 0] dim End(X_j)``."""
    bad = []
    ends = C.end_dims
    for (i, j), dims in sorted(hom_duality_table(M, C).items()):
        want = {0: ends[j]} if i == j else {}
        if dims != want:
            bad.append((i, j, dims))
    return bad


def phi21(M: SiltingObject, verify: bool = True, depth_cap: int = 4) -> SMCollection:
    """The simple-minded collection matching M, found by replaying M's mutation
    path on the simples."""
    path = require_provenance(M)
    C = SMCollection.simples(M.algebra)
    for i, s in path:
        try:
            C = smc_mutate(C, i, s, depth_cap)
        except FiltrationCapExceeded as exc:
            raise TransportFailed(f"step {(i + 1, s)} of the path: {exc}") from exc
    if verify:
        bad = duality_defects(M, C)
        if bad:
            raise TransportFailed(f"transported collection is not dual to the object: {bad[0]}")
    return C


# ---------------------------------------------------------------------------
# simple-minded -> silting


def _as_degree_zero(f: ChainMap) -> ChainMap:
    # a degree-k cycle X -> Y is a chain map Sigma^{-k} X -> Y with the same components
    k = f.degree
    return ChainMap(shift(f.source, -k), f.target, {d + k: m for d, m in f.comps.items()})


def _basis_over_end(H: HomComplex, k: int, ends: list) -> list[ChainMap]:
    """Degree-k classes spanning ``H^k`` as a right module over End of the source."""
    from .linalg import Echelon

    W = Echelon()
    for b in H.cohomology(k).B.basis():
        W.add(b)
    chosen = []
    for f in H.basis(k):
        if W.contains(H.to_vector(f)):
            continue
        chosen.append(f)
        for phi in ends:
            W.add(H.to_vector(f.compose(phi)))
    return chosen


def rickard_stage(Y: ProjComplex, C: SMCollection, shifts: Sequence[int] | None = None) -> ProjComplex | None:
    """Kill the maps ``Sigma^m X_j -> Y`` with m < 0 by one cone; None if there are none.

    ``shifts`` restricts which m are used (all negative m by default).
    """
    gens = []
    for Xj in C.projs:
        H = HomComplex(Xj, Y)
        ends = HomComplex(Xj, Xj).basis(0)
        for k in H.degree_range():
            if k > 0 and H.dim(k) and (shifts is None or -k in shifts):
                gens.extend(_as_degree_zero(f) for f in _basis_over_end(H, k, ends))
    if not gens:
        return None
    srcs = [g.source for g in gens]
    S = direct_sum(srcs, Y.algebra)
    comps = {}
    for d in S.degrees():
        blocks = [[g.comp(d) for g in gens]]
        comps[d] = mat_block(blocks, [len(Y.term(d))], [len(Z.term(d)) for Z in srcs])
    return minimize(cone(ChainMap(S, Y, comps)))


def nearest_negative_shift(Y: ProjComplex, C: SMCollection) -> int | None:
    """Largest m < 0 with some ``Hom(Sigma^m X_j, Y) != 0``, or None."""
    best = None
    for Xj in C.projs:
        H = HomComplex(Xj, Y)
        for k in H.degree_range():
            if k > 0 and (best is None or k < best) and H.dim(k):
                best = k
    return None if best is None else -best


def rickard_object(C: SMCollection, i: int, cap: int = 32, schedule: str = "nearest") -> tuple[ProjComplex, int]:
    """Run the cone sequence for member i until no map from a negative shift
    of the collection survives; returns the object and the number of stages.

    With ``schedule="nearest"`` each stage kills only the shift closest to
    zero that still has maps; with ``"all"`` every negative shift is killed
    at once, whose stages on ``lambda0`` keep growing without end.
    """
    Y = C.projs[i]
    for n in range(cap + 1):
        m = nearest_negative_shift(Y, C)
        if m is None:
            return Y, n
        if n == cap:
            break
        Y = rickard_stage(Y, C, (m,) if schedule == "nearest" else None)
    raise CapExceeded(f"Rickard sequence for member {i + 1} still has negative maps after {cap} stages")


def is_dual_to(T: ProjComplex, C: SMCollection, i: int) -> bool:
    """``dim Hom(X_j, Sigma^m T) = [j = i][m = 0] dim End(X_i)`` for all j and m.

    An object with this property is unique up to isomorphism.
    """
    for j, Xj in enumerate(C.projs):
        want = {0: C.end_dims[i]} if j == i else {}
        if HomComplex(Xj, T).dims() != want:
            return False
    return True


@dataclass
class RickardResult:
    silting: SiltingObject
    dual_objects: list  # the T_i, as perfect complexes
    stages: list  # cone stages used per member
    defects: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.defects


def phi12_rickard(
    C: SMCollection, cap: int = 32, coresolution_cap: int = 32, report: bool = False, schedule: str = "nearest"
):
    """Silting object from a simple-minded collection.

    Each ``X_i`` is repeatedly coned off against all maps from negative
    shifts of the collection; the limit ``T_i`` is replaced by an injective
    coresolution and sent through ``nu^{-1}``.
    """
    A = C.algebra
    Ts, stages, out = [], [], []
    for i in range(len(C)):
        T, n = rickard_object(C, i, cap, schedule)
        Ts.append(T)
        stages.append(n)
        inj = injective_coresolution(proj_to_module(T), coresolution_cap)
        out.append(minimize(nakayama_inv(inj, coresolution_cap)))
    M = SiltingObject(A, tuple(out), None)
    ok, wit = presilting_check(M.summands)
    defects = [] if ok else [("presilting", wit)]
    defects += [("duality",) + d for d in duality_defects(M, C)]
    defects += [("dual object", i) for i, T in enumerate(Ts) if not is_dual_to(T, C, i)]
    res = RickardResult(M, Ts, stages, defects)
    return res if report else M


# ---------------------------------------------------------------------------
# structure handles


def _perfect(N) -> ProjComplex:
    return as_proj(N)


def _vanishes(X: ProjComplex, Y: ProjComplex, keep: Callable[[int], bool]) -> bool:
    H = HomComplex(X, Y)
    return not any(H.dim(m) for m in H.degree_range() if keep(m))


@dataclass
class StructureHandle:
    """A t-structure or co-t-structure described by its silting and SMC partners."""

    kind: str  # "t-structure" or "co-t-structure"
    silting_partner: SiltingObject
    smc_partner: SMCollection

    # t-structure: aisle = {N : Hom(M, Sigma^m N) = 0 for m > 0}
    def member_aisle(self, N) -> bool:
        P = _perfect(N)
        return all(_vanishes(Mi, P, lambda m: m > 0) for Mi in self.silting_partner.summands)

    def member_coaisle(self, N) -> bool:
        P = _perfect(N)
        return all(_vanishes(Mi, P, lambda m: m < 0) for Mi in self.silting_partner.summands)

    def member_heart(self, N) -> bool:
        return self.member_aisle(N) and self.member_coaisle(N)

    def heart_simples(self) -> SMCollection:
        return self.smc_partner

    # co-t-structure, read through the simple-minded partner
    def member_weight_ge0(self, N) -> bool:
        P = _perfect(N)
        return all(_vanishes(P, X, lambda m: m > 0) for X in self.smc_partner.projs)

    def member_weight_le0(self, N) -> bool:
        P = _perfect(N)
        return all(_vanishes(P, X, lambda m: m < 0) for X in self.smc_partner.projs)

    def coheart(self) -> list[ProjComplex]:
        return list(self.silting_partner.summands)


def t_handle(M: SiltingObject, C: SMCollection | None = None) -> StructureHandle:
    return StructureHandle("t-structure", M, C if C is not None else phi21(M))


def cot_handle(M: SiltingObject, C: SMCollection | None = None) -> StructureHandle:
    return StructureHandle("co-t-structure", M, C if C is not None else phi21(M))


def weight_ge0_by_silting(M: SiltingObject, N) -> bool:
    """``N`` is left orthogonal to ``Sigma^k M`` for all k >= 1."""
    P = _perfect(N)
    return all(_vanishes(P, Mi, lambda m: m > 0) for Mi in M.summands)


def weight_le0_by_silting(M: SiltingObject, N) -> bool:
    """``N`` is right orthogonal to ``Sigma^{-k} M`` for all k >= 1."""
    P = _perfect(N)
    return all(_vanishes(Mi, P, lambda m: m > 0) for Mi in M.summands)


# ---------------------------------------------------------------------------
# bounded extension closures


def _find(objs: list, X: ProjComplex) -> bool:
    sig = X.signature()
    return any(Y.signature() == sig and is_isomorphic(Y, X) for Y in objs)


def extension_closure(gens: Sequence[ProjComplex], rounds: int, window: tuple[int, int]) -> list[ProjComplex]:
    """Indecomposables reachable from ``gens`` by ``rounds`` rounds of extensions.

    Each round forms ``Sigma^{-1} cone(f)`` for every basis map ``f: B -> Sigma A``
    between objects found so far, keeps the indecomposable summands and
    discards anything with terms outside ``window``.  Summand closure is
    automatic since results are split into indecomposables.
    """
    lo, hi = window
    found: list[ProjComplex] = []

    def admit(X: ProjComplex) -> bool:
        sp = X.span()
        if sp is None or sp[0] < lo or sp[1] > hi or _find(found, X):
            return False
        found.append(X)
        return True

    for g in gens:
        for part in decompose(minimize(g)):
            admit(part)
    for _ in range(rounds):
        new = []
        snapshot = list(found)
        for Aobj in snapshot:
            for Bobj in snapshot:
                for f in HomComplex(Bobj, Aobj).basis(1):
                    E = minimize(cocone(ChainMap(Bobj, shift(Aobj, 1), f.comps)))
                    for part in decompose(E):
                        if admit(part):
                            new.append(part)
        if not new:
            break
    return found


def in_closure(closure: list[ProjComplex], N) -> bool:
    return all(_find(closure, part) for part in decompose(minimize(_perfect(N))))


def weight_closures(M: SiltingObject, shifts: int = 2, rounds: int = 2, window: tuple[int, int] = (-3, 3)):
    """Bounded stand-ins for the two halves of the co-t-structure of M.

    ``C_{>=0}`` is generated by ``Sigma^m M`` with m <= 0 and ``C_{<=0}`` by
    m >= 0; both are truncated to ``shifts`` shifts, ``rounds`` extension
    rounds and the given degree window.
    """
    ge = [shift(X, -k) for k in range(shifts + 1) for X in M.summands]
    le = [shift(X, k) for k in range(shifts + 1) for X in M.summands]
    return extension_closure(ge, rounds, window), extension_closure(le, rounds, window)


# ---------------------------------------------------------------------------
# probes and verifiers


def probe_set(A, extra: Sequence[ProjComplex] = (), size: int = 20) -> list[ProjComplex]:
    """A deterministic list of ``size`` test objects.

    ``extra`` objects come first; then projectives, simples and injectives
    at shifts 0, 1, -1, then their sums.
    """
    base = []
    for i in range(A.n):
        base.append(as_proj(projective(A, i)))
    for i in range(A.n):
        base.append(as_proj(simple(A, i)))
    for i in range(A.n):
        base.append(as_proj(injective(A, i)))
    out: list[ProjComplex] = []

    def push(X):
        if len(out) < size and not X.is_zero() and not _find(out, X):
            out.append(X)

    for X in extra:
        push(minimize(X))
    for k in (0, 1, -1):
        for X in base:
            push(shift(X, k))
    k = 2
    while len(out) < size:
        before = len(out)
        for X in base:
            push(shift(X, k))
            push(shift(X, -k))
        if len(out) == before:
            break
        k += 1
    return out


@dataclass
class Check:
    name: str
    ok: bool
    witness: object = None

    def as_dict(self) -> dict:
        return {"name": self.name, "status": "pass" if self.ok else "fail", "witness": self.witness}


@dataclass
class Report:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.as_dict() for c in self.checks]}


def verify_commutation(M: SiltingObject, i: int, smc_partner: SMCollection | None = None, probes: int = 20) -> Report:
    """Check that left mutation at i commutes with passing to the SMC and to
    the co-t-structure.

    ``smc_partner`` overrides ``phi21(M)``; a wrong partner should make the
    report fail.
    """
    C = smc_partner if smc_partner is not None else phi21(M)
    Mp = mutate(M, i, "+")
    Cp = smc_mutate(C, i, "+")
    checks = []
    bad = duality_defects(Mp, Cp)
    checks.append(Check(f"mutated pair is dual at {i + 1}", not bad, bad[:1] or None))
    if Mp.provenance is not None and smc_partner is None:
        direct = phi21(Mp, verify=False)
        checks.append(Check("phi21 of mutation equals mutation of phi21", same_collection(direct, Cp)))
    handle = cot_handle(Mp, Cp)
    disagree = []
    for k, N in enumerate(probe_set(M.algebra, list(Mp.summands) + list(M.summands), probes)):
        a = (handle.member_weight_ge0(N), handle.member_weight_le0(N))
        b = (weight_ge0_by_silting(Mp, N), weight_le0_by_silting(Mp, N))
        if a != b:
            disagree.append({"probe": k, "via_smc": list(a), "via_silting": list(b)})
    checks.append(Check("co-t membership of mutated handle", not disagree, disagree[:3] or None))
    return Report(checks)


def aisle_contains(M: SiltingObject, Mp: SiltingObject, probes: list) -> bool:
    """Probe test of ``aisle(M') subset of aisle(M)``."""
    T, Tp = t_handle(M, SMCollection(M.algebra, [])), t_handle(Mp, SMCollection(Mp.algebra, []))
    return all(T.member_aisle(N) for N in probes if Tp.member_aisle(N))


def verify_order_iso(pairs: Sequence[tuple], probes: int = 20, partners: dict | None = None) -> Report:
    """For each pair, compare the silting order, the SMC order of the images
    and aisle inclusion on probe objects."""
    partners = {} if partners is None else partners

    def partner(M):
        key = id(M)
        if key not in partners:
            partners[key] = phi21(M)
        return partners[key]

    checks = []
    for n, (M, Mp) in enumerate(pairs):
        a = order_leq(M, Mp)
        b = smc_order(partner(M), partner(Mp))
        P = probe_set(M.algebra, list(Mp.summands) + list(M.summands), probes)
        c = aisle_contains(M, Mp, P)
        checks.append(Check(f"pair {n}", a == b == c, {"silting": a, "smc": b, "aisle": c}))
    return Report(checks)
