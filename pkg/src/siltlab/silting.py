"""Silting objects, minimal approximations, mutation and the silting quiver."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .complexes import (
    ChainMap,
    HomComplex,
    ProjComplex,
    cocone,
    cone,
    decompose,
    direct_sum,
    end_algebra,
    is_isomorphic,
    k0_class,
    mat_block,
    minimize,
    shift,
)
from .errors import CapExceeded, NoProvenance
from .linalg import Echelon, RatMatrix, det, radical
from .quiver import PathAlgebra

Step = tuple  # (summand index, "+" or "-")


def parse_path(text: str) -> tuple:
    """``"1+,2-"`` (1-based indices) to ``((0, "+"), (1, "-"))``."""
    steps = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        sign = tok[-1]
        if sign not in "+-":
            raise ValueError(f"mutation step {tok!r} must end in + or -")
        steps.append((int(tok[:-1]) - 1, sign))
    return tuple(steps)


def format_path(path: Sequence[Step]) -> str:
    return ",".join(f"{i + 1}{s}" for i, s in path)


@dataclass
class SiltingObject:
    algebra: PathAlgebra
    summands: tuple
    provenance: tuple | None = None

    def __post_init__(self):
        self.summands = tuple(self.summands)
        if self.provenance is not None:
            self.provenance = tuple(self.provenance)

    @classmethod
    def regular(cls, A: PathAlgebra) -> "SiltingObject":
        return cls(A, tuple(ProjComplex.stalk(A, [v]) for v in range(A.n)), ())

    def __len__(self) -> int:
        return len(self.summands)

    def total(self) -> ProjComplex:
        return direct_sum(list(self.summands), self.algebra)

    def k0_matrix(self) -> list:
        return [list(k0_class(X).coords) for X in self.summands]

    def shift(self, k: int) -> "SiltingObject":
        return SiltingObject(self.algebra, tuple(shift(X, k) for X in self.summands), None)

    def __repr__(self) -> str:
        return f"SiltingObject({list(self.summands)}, path={self.provenance})"


# ---------------------------------------------------------------------------
# certificates


def presilting_check(objs: Sequence[ProjComplex]) -> tuple[bool, tuple | None]:
    """True when ``Hom(X_i, Sigma^m X_j) = 0`` for all m > 0, else a witness (i, j, m)."""
    for i, X in enumerate(objs):
        for j, Y in enumerate(objs):
            H = HomComplex(X, Y)
            for m in H.degree_range():
                if m > 0 and H.dim(m):
                    return False, (i, j, m)
    return True, None


def k0_unimodular(objs: Sequence[ProjComplex], n: int) -> bool:
    if len(objs) != n:
        return False
    m = RatMatrix([list(k0_class(X).coords) for X in objs], n)
    return abs(det(m)) == 1


@dataclass
class SiltingCertificate:
    presilting: bool
    witness: tuple | None
    summand_count: bool
    k0_unimodular: bool
    provenance: str  # "replayed", "flagged", "replay-mismatch"

    @property
    def ok(self) -> bool:
        return self.presilting and self.summand_count and self.k0_unimodular and self.provenance == "replayed"

    @property
    def flag(self) -> str | None:
        if self.provenance == "flagged":
            return "presilting-only: generation not verified"
        return None

    def as_dict(self) -> dict:
        return {
            "presilting": self.presilting,
            "witness": list(self.witness) if self.witness else None,
            "summand_count": self.summand_count,
            "k0_unimodular": self.k0_unimodular,
            "provenance": self.provenance,
            "flag": self.flag,
            "ok": self.ok,
        }


def silting_certificate(M: SiltingObject) -> SiltingCertificate:
    A = M.algebra
    ok, wit = presilting_check(M.summands)
    count = len(M.summands) == A.n and all(not X.is_zero() for X in M.summands)
    uni = k0_unimodular(M.summands, A.n)
    if M.provenance is None:
        prov = "flagged"
    else:
        R = replay(A, M.provenance)
        prov = "replayed" if same_object(R, M) else "replay-mismatch"
    return SiltingCertificate(ok, wit, count, uni, prov)


def same_object(M: SiltingObject, N: SiltingObject) -> bool:
    """Isomorphism of the underlying basic objects (summands matched as sets)."""
    if len(M.summands) != len(N.summands):
        return False
    used = [False] * len(N.summands)
    for X in M.summands:
        for k, Y in enumerate(N.summands):
            if not used[k] and is_isomorphic(X, Y):
                used[k] = True
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# approximations


def _radical_maps(N: Sequence[ProjComplex], l: int, k: int, cache: dict) -> list[ChainMap]:
    """A spanning set of the radical maps ``N_l -> N_k`` (indecomposable, basic)."""
    key = (l, k)
    if key not in cache:
        H = HomComplex(N[l], N[k])
        basis = H.basis(0)
        if l != k:
            out = basis
        else:
            alg, reps, _ = end_algebra(N[k])
            out = []
            for r in radical(alg):
                f = None
                for c, g in zip(r, reps):
                    if c:
                        f = g.scale(c) if f is None else f.plus(g, c)
                if f is not None:
                    out.append(f)
        cache[key] = out
    return cache[key]


def _stack_rows(X: ProjComplex, E: ProjComplex, maps: Sequence[ChainMap]) -> ChainMap:
    comps = {}
    for d in X.degrees():
        blocks = [[f.comp(d)] for f in maps]
        comps[d] = mat_block(blocks, [len(f.target.term(d)) for f in maps], [len(X.term(d))])
    return ChainMap(X, E, comps)


def _stack_cols(E: ProjComplex, X: ProjComplex, maps: Sequence[ChainMap]) -> ChainMap:
    comps = {}
    for d in E.degrees():
        blocks = [[f.comp(d) for f in maps]]
        comps[d] = mat_block(blocks, [len(X.term(d))], [len(f.source.term(d)) for f in maps])
    return ChainMap(E, X, comps)


@dataclass
class Approximation:
    map: ChainMap
    parts: list  # (index k into N, chosen map) in the order of E's summands

    @property
    def multiplicities(self) -> dict:
        out: dict = {}
        for k, _ in self.parts:
            out[k] = out.get(k, 0) + 1
        return out


def minimal_left_approx(X: ProjComplex, N: Sequence[ProjComplex]) -> Approximation:
    """Minimal left ``add(N)``-approximation ``X -> E``.

    The components are a basis of Hom(X, N_k) modulo the maps that factor
    through radical maps into N_k, chosen greedily in the fixed basis order.
    """
    A = X.algebra
    homs = [HomComplex(X, Nk) for Nk in N]
    bases = [H.basis(0) for H in homs]
    cache: dict = {}
    parts = []
    for k, Nk in enumerate(N):
        H = homs[k]
        W = Echelon()
        for b in H.cohomology(0).B.basis():
            W.add(b)
        for l in range(len(N)):
            for f in bases[l]:
                for g in _radical_maps(N, l, k, cache):
                    W.add(H.to_vector(g.compose(f)))
        ends = HomComplex(Nk, Nk).basis(0)
        for f in bases[k]:
            v = H.to_vector(f)
            if W.contains(v):
                continue
            parts.append((k, f))
            for phi in ends:
                W.add(H.to_vector(phi.compose(f)))
    E = direct_sum([N[k] for k, _ in parts], A) if parts else ProjComplex(A, {})
    if not parts:
        return Approximation(ChainMap.zero(X, E), [])
    return Approximation(_stack_rows(X, E, [f for _, f in parts]), parts)


def minimal_right_approx(X: ProjComplex, N: Sequence[ProjComplex]) -> Approximation:
    """Minimal right ``add(N)``-approximation ``E -> X`` (mirror of the left case)."""
    A = X.algebra
    homs = [HomComplex(Nk, X) for Nk in N]
    bases = [H.basis(0) for H in homs]
    cache: dict = {}
    parts = []
    for k, Nk in enumerate(N):
        H = homs[k]
        W = Echelon()
        for b in H.cohomology(0).B.basis():
            W.add(b)
        for l in range(len(N)):
            for f in bases[l]:
                for g in _radical_maps(N, k, l, cache):
                    W.add(H.to_vector(f.compose(g)))
        ends = HomComplex(Nk, Nk).basis(0)
        for f in bases[k]:
            v = H.to_vector(f)
            if W.contains(v):
                continue
            parts.append((k, f))
            for phi in ends:
                W.add(H.to_vector(f.compose(phi)))
    E = direct_sum([N[k] for k, _ in parts], A) if parts else ProjComplex(A, {})
    if not parts:
        return Approximation(ChainMap.zero(E, X), [])
    return Approximation(_stack_cols(E, X, [f for _, f in parts]), parts)


def factors_through(f: ChainMap, g: ChainMap, left: bool = True) -> bool:
    """Whether ``f = h o g`` (left) or ``f = g o h`` (right) for some chain map h."""
    if left:
        H = HomComplex(g.target, f.target)
        Hf = HomComplex(g.source, f.target)
        span = Echelon()
        for b in Hf.cohomology(0).B.basis():
            span.add(b)
        for h in H.basis(0):
            span.add(Hf.to_vector(h.compose(g)))
        return span.contains(Hf.to_vector(f))
    H = HomComplex(f.source, g.source)
    Hf = HomComplex(f.source, g.target)
    span = Echelon()
    for b in Hf.cohomology(0).B.basis():
        span.add(b)
    for h in H.basis(0):
        span.add(Hf.to_vector(g.compose(h)))
    return span.contains(Hf.to_vector(f))


# ---------------------------------------------------------------------------
# mutation


def _single_summand(Y: ProjComplex) -> ProjComplex:
    Y = minimize(Y)
    parts = decompose(Y)
    if len(parts) != 1:
        raise ValueError(f"mutation produced {len(parts)} summands instead of one")
    return parts[0]


def mutate(M: SiltingObject, i: int, direction: str = "+") -> SiltingObject:
    """Left (``+``) or right (``-``) mutation at summand i; the new summand keeps index i."""
    if not 0 <= i < len(M.summands):
        raise IndexError(f"summand index {i} out of range")
    X = M.summands[i]
    others = [Y for k, Y in enumerate(M.summands) if k != i]
    if direction in ("+", "left"):
        approx = minimal_left_approx(X, others)
        new = _single_summand(cone(approx.map))
        step = (i, "+")
    elif direction in ("-", "right"):
        approx = minimal_right_approx(X, others)
        new = _single_summand(cocone(approx.map))
        step = (i, "-")
    else:
        raise ValueError(f"unknown direction {direction!r}")
    summands = list(M.summands)
    summands[i] = new
    prov = None if M.provenance is None else M.provenance + (step,)
    return SiltingObject(M.algebra, tuple(summands), prov)


_REPLAY: dict = {}


def replay(A: PathAlgebra, path: Sequence[Step]) -> SiltingObject:
    """Apply a mutation path to the regular object, memoised by prefix."""
    path = tuple(path)
    key = (id(A), path)
    hit = _REPLAY.get(key)
    if hit is not None and hit.algebra is A:
        return hit
    if not path:
        out = SiltingObject.regular(A)
    else:
        prev = replay(A, path[:-1])
        i, s = path[-1]
        out = mutate(prev, i, s)
    _REPLAY[key] = out
    return out


def order_leq(M: SiltingObject, Mp: SiltingObject) -> bool:
    """Decide ``M >= M'``: ``Hom(M, Sigma^m M') = 0`` for every m > 0.

    Equivalently ``M' <= M``, which is what the name reads as.
    """
    for X in M.summands:
        for Y in Mp.summands:
            H = HomComplex(X, Y)
            if any(H.dim(m) for m in H.degree_range() if m > 0):
                return False
    return True


# ---------------------------------------------------------------------------
# the silting quiver


def summand_fingerprint(X: ProjComplex) -> tuple:
    A = X.algebra
    sig = X.signature()
    cohom = tuple(
        tuple(sorted(HomComplex(ProjComplex.stalk(A, [v]), X).dims().items())) for v in range(A.n)
    )
    return sig, cohom


def fingerprint(M: SiltingObject) -> tuple:
    return tuple(sorted(summand_fingerprint(X) for X in M.summands))


@dataclass
class QuiverNode:
    key: int
    obj: SiltingObject
    distance: int
    fingerprint: tuple
    out: dict = field(default_factory=dict)  # summand index -> node key or None


@dataclass
class SiltingQuiver:
    nodes: list
    edges: list  # (source key, target key, summand index)
    radius: int
    out_targets: dict  # key -> list of (index, fingerprint) for all left mutations

    def to_networkx(self):
        import networkx as nx

        G = nx.DiGraph()
        for nd in self.nodes:
            G.add_node(nd.key, distance=nd.distance, root=nd.distance == 0)
        for s, t, i in self.edges:
            G.add_edge(s, t, index=i)
        return G

    def as_dict(self) -> dict:
        return {
            "radius": self.radius,
            "nodes": [
                {
                    "key": nd.key,
                    "distance": nd.distance,
                    "path": format_path(nd.obj.provenance or ()),
                    "fingerprint": fingerprint_hash(nd.fingerprint),
                    "summands": [X.describe() for X in nd.obj.summands],
                    "out_degree": len(nd.out),
                }
                for nd in self.nodes
            ],
            "edges": [{"source": s, "target": t, "index": i + 1} for s, t, i in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["digraph silting {"]
        for nd in self.nodes:
            lines.append(f'  n{nd.key} [label="{fingerprint_hash(nd.fingerprint)}"];')
        for s, t, i in self.edges:
            lines.append(f'  n{s} -> n{t} [label="{i + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def fingerprint_hash(fp: tuple) -> str:
    import hashlib

    return hashlib.sha256(repr(fp).encode()).hexdigest()[:12]


class _Registry:
    def __init__(self):
        self.nodes: list[QuiverNode] = []
        self.by_fp: dict = {}

    def find(self, obj: SiltingObject, fp: tuple) -> QuiverNode | None:
        for nd in self.by_fp.get(fp, []):
            if same_object(nd.obj, obj):
                return nd
        return None

    def add(self, obj: SiltingObject, fp: tuple, distance: int) -> QuiverNode:
        nd = QuiverNode(len(self.nodes), obj, distance, fp)
        self.nodes.append(nd)
        self.by_fp.setdefault(fp, []).append(nd)
        return nd


def silting_quiver(M0: SiltingObject, radius: int, max_nodes: int = 10_000) -> SiltingQuiver:
    """Breadth-first exploration of left and right mutations up to ``radius``.

    Nodes are silting objects up to isomorphism; edges are left mutations
    between explored nodes.  Every node records all of its left mutations,
    including targets outside the ball.
    """
    reg = _Registry()
    root = reg.add(M0, fingerprint(M0), 0)
    frontier = [root]
    left_cache: dict = {}

    def left(nd: QuiverNode, i: int) -> SiltingObject:
        if (nd.key, i) not in left_cache:
            left_cache[(nd.key, i)] = mutate(nd.obj, i, "+")
        return left_cache[(nd.key, i)]

    for r in range(radius):
        nxt = []
        for nd in frontier:
            for i in range(len(nd.obj.summands)):
                for direction in ("+", "-"):
                    obj = left(nd, i) if direction == "+" else mutate(nd.obj, i, "-")
                    fp = fingerprint(obj)
                    if reg.find(obj, fp) is None:
                        if len(reg.nodes) >= max_nodes:
                            raise CapExceeded(f"silting quiver exceeded {max_nodes} nodes")
                        nxt.append(reg.add(obj, fp, r + 1))
        frontier = nxt
    edges = []
    out_targets = {}
    for nd in reg.nodes:
        outs = []
        for i in range(len(nd.obj.summands)):
            obj = left(nd, i)
            fp = fingerprint(obj)
            tgt = reg.find(obj, fp)
            nd.out[i] = None if tgt is None else tgt.key
            outs.append((i, fingerprint_hash(fp)))
            if tgt is not None:
                edges.append((nd.key, tgt.key, i))
        out_targets[nd.key] = outs
    edges.sort()
    return SiltingQuiver(reg.nodes, edges, radius, out_targets)


def require_provenance(M: SiltingObject) -> tuple:
    if M.provenance is None:
        raise NoProvenance("object has no mutation path from the regular object")
    return M.provenance
