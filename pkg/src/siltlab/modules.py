"""Finite-dimensional right modules as quiver representations.

A module stores one vector space per vertex and, for every arrow
``a: s -> t``, a matrix ``M_s -> M_t`` describing ``m -> m.a``.  Vectors
are dense lists of Fractions, matrices are :class:`RatMatrix`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import HypothesisFailed, SummandObstruction
from .linalg import (
    ONE,
    ZERO,
    Echelon,
    FinDimAlgebra,
    RatMatrix,
    dense,
    det,
    kernel_sparse,
    primitive_idempotents,
    sparse,
)
from .quiver import PathAlgebra


def _zero_matrix(r: int, c: int) -> RatMatrix:
    return RatMatrix.zero(r, c)


class Module:
    def __init__(self, algebra: PathAlgebra, dims: Sequence[int], action: dict, check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        q = algebra.quiver
        self.action = {}
        for a in range(len(q.arrows)):
            s, t = q.source(a), q.target(a)
            m = action.get(a)
            if m is None:
                m = _zero_matrix(self.dims[t], self.dims[s])
            elif not isinstance(m, RatMatrix):
                m = RatMatrix(m, self.dims[s])
            self.action[a] = m
        self._basis_action: dict = {}
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def validate(self) -> None:
        q = self.algebra.quiver
        for a, m in self.action.items():
            s, t = q.source(a), q.target(a)
            if m.rows != self.dims[t] or m.cols != self.dims[s]:
                raise ValueError(f"action of arrow {q.arrows[a][0]} has the wrong shape")
        for rel in self.algebra.relations:
            s = q.source(rel[0][1][0])
            t = q.target(rel[0][1][-1])
            total = _zero_matrix(self.dims[t], self.dims[s])
            for c, w in rel:
                total = total + self.word_action(w, s).scale(c)
            if not total.is_zero():
                raise ValueError("a relation does not act as zero")

    def word_action(self, word, start: int) -> RatMatrix:
        m = RatMatrix.identity(self.dims[start])
        for a in word:
            m = self.action[a] @ m
        return m

    def basis_action(self, k: int) -> RatMatrix:
        """Matrix of ``m -> m.b`` for the basis element b of index k."""
        if k not in self._basis_action:
            A = self.algebra
            self._basis_action[k] = self.word_action(A.words[k], A.sources[k])
        return self._basis_action[k]

    def act(self, vec: Sequence, x: dict, s: int, t: int) -> list:
        """Right action of an element of ``e_s A e_t`` on a vector of ``M e_s``."""
        out = [ZERO] * self.dims[t]
        for k, c in x.items():
            if self.algebra.sources[k] != s or self.algebra.targets[k] != t:
                continue
            img = self.basis_action(k).apply(vec)
            for i, v in enumerate(img):
                if v:
                    out[i] += c * v
        return out

    def dim_vector(self) -> tuple:
        return self.dims

    def __repr__(self) -> str:
        return f"Module(dims={self.dims})"


class ModuleMap:
    def __init__(self, source: Module, target: Module, mats: Sequence):
        self.source = source
        self.target = target
        self.mats = [
            m if isinstance(m, RatMatrix) else RatMatrix(m, source.dims[v]) for v, m in enumerate(mats)
        ]

    @classmethod
    def zero(cls, source: Module, target: Module) -> "ModuleMap":
        return cls(source, target, [_zero_matrix(target.dims[v], source.dims[v]) for v in range(len(source.dims))])

    @classmethod
    def identity(cls, M: Module) -> "ModuleMap":
        return cls(M, M, [RatMatrix.identity(d) for d in M.dims])

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        return ModuleMap(other.source, self.target, [a @ b for a, b in zip(self.mats, other.mats)])

    def __add__(self, other):
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.mats, other.mats)])

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a.scale(c) for a in self.mats])

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def is_module_map(self) -> bool:
        q = self.source.algebra.quiver
        for a in range(len(q.arrows)):
            s, t = q.source(a), q.target(a)
            if self.mats[t] @ self.source.action[a] != self.target.action[a] @ self.mats[s]:
                return False
        return True

    def is_invertible(self) -> bool:
        for m in self.mats:
            if m.rows != m.cols or (m.rows and not det(m)):
                return False
        return True

    def flat(self) -> dict:
        out = {}
        off = 0
        for m in self.mats:
            for row in m.entries:
                for x in row:
                    if x:
                        out[off] = x
                    off += 1
        return out


# ---------------------------------------------------------------------------
# vector space helpers


def _independent(vectors: Sequence[Sequence]) -> list[list]:
    ech = Echelon()
    out = []
    for v in vectors:
        if ech.add(sparse(v)):
            out.append(list(v))
    return out


def _extend_to_basis(sub: Sequence[Sequence], n: int) -> list[list]:
    """Standard basis vectors completing ``sub`` to a basis of K^n."""
    ech = Echelon()
    for v in sub:
        ech.add(sparse(v))
    out = []
    for i in range(n):
        e = {i: ONE}
        if ech.add(e):
            out.append(dense(e, n))
    return out


def _coords(basis: Sequence[Sequence], v: Sequence) -> list | None:
    ech = Echelon(track=True)
    for b in basis:
        ech.add(sparse(b))
    c = ech.coordinates(sparse(v))
    if c is None:
        return None
    return dense(c, len(basis))


class _Coordinates:
    """Coordinates of vectors w.r.t. a fixed (independent) list of vectors."""

    def __init__(self, basis: Sequence[Sequence]):
        self.n = len(basis)
        self.ech = Echelon(track=True)
        for b in basis:
            self.ech.add(sparse(b))

    def __call__(self, v: Sequence) -> list:
        c = self.ech.coordinates(sparse(v))
        if c is None:
            raise ValueError("vector outside the span")
        return dense(c, self.n)


def _column_span(m: RatMatrix) -> list[list]:
    cols = [[m.entries[i][j] for i in range(m.rows)] for j in range(m.cols)]
    return _independent(cols)


def _kernel_basis(m: RatMatrix) -> list[list]:
    return [dense(v, m.cols) for v in kernel_sparse(m.sparse_rows(), m.cols)]


def _matrix_from_columns(cols: Sequence[Sequence], nrows: int) -> RatMatrix:
    return RatMatrix([[c[i] for c in cols] for i in range(nrows)], len(cols))


# ---------------------------------------------------------------------------
# constructions


def direct_sum(modules: Sequence[Module], algebra: PathAlgebra | None = None) -> Module:
    if not modules:
        if algebra is None:
            raise ValueError("empty direct sum needs an algebra")
        return Module(algebra, [0] * algebra.n, {}, check=False)
    A = modules[0].algebra
    q = A.quiver
    dims = [sum(M.dims[v] for M in modules) for v in range(A.n)]
    action = {}
    for a in range(len(q.arrows)):
        s, t = q.source(a), q.target(a)
        grid = [[ZERO] * dims[s] for _ in range(dims[t])]
        ro = co = 0
        for M in modules:
            m = M.action[a]
            for i in range(m.rows):
                for j in range(m.cols):
                    grid[ro + i][co + j] = m.entries[i][j]
            ro += M.dims[t]
            co += M.dims[s]
        action[a] = RatMatrix(grid, dims[s])
    return Module(A, dims, action, check=False)


def block_map(source: Module, target: Module, src_parts: Sequence[Module], tgt_parts: Sequence[Module], blocks) -> ModuleMap:
    """Map between direct sums given by ``blocks[r][c]`` (ModuleMap or None)."""
    mats = []
    for v in range(len(source.dims)):
        grid = [[ZERO] * source.dims[v] for _ in range(target.dims[v])]
        ro = 0
        for r, T in enumerate(tgt_parts):
            co = 0
            for c, S in enumerate(src_parts):
                f = blocks[r][c]
                if f is not None:
                    m = f.mats[v]
                    for i in range(m.rows):
                        for j in range(m.cols):
                            grid[ro + i][co + j] = m.entries[i][j]
                co += S.dims[v]
            ro += T.dims[v]
        mats.append(RatMatrix(grid, source.dims[v]))
    return ModuleMap(source, target, mats)


_PROJ_CACHE: dict = {}


def projective(A: PathAlgebra, i: int) -> Module:
    """``P_i = e_i A``: at vertex v the paths from i to v."""
    key = (id(A), i)
    hit = _PROJ_CACHE.get(key)
    if hit is not None and hit[0] is A:
        return hit[1]
    q = A.quiver
    dims = [len(A.block(i, v)) for v in range(A.n)]
    action = {}
    for a in range(len(q.arrows)):
        s, t = q.source(a), q.target(a)
        src = A.block(i, s)
        tgt = {k: r for r, k in enumerate(A.block(i, t))}
        grid = [[ZERO] * len(src) for _ in range(len(tgt))]
        arrow = {A.arrow_basis[a]: ONE}
        for c, y in enumerate(src):
            for k, val in A.mul({y: ONE}, arrow).items():
                grid[tgt[k]][c] = val
        action[a] = RatMatrix(grid, len(src))
    M = Module(A, dims, action, check=False)
    _PROJ_CACHE[key] = (A, M)
    return M


def proj_element_vector(A: PathAlgebra, i: int, v: int, x: dict) -> list:
    """Coordinates in ``P_i e_v`` of an element of ``e_i A e_v``."""
    blk = A.block(i, v)
    return [x.get(k, ZERO) for k in blk]


def proj_map(A: PathAlgebra, x: dict, i: int, j: int) -> ModuleMap:
    """Left multiplication by ``x`` in ``e_j A e_i`` as a map ``P_i -> P_j``."""
    Pi, Pj = projective(A, i), projective(A, j)
    mats = []
    for v in range(A.n):
        src = A.block(i, v)
        tgt = {k: r for r, k in enumerate(A.block(j, v))}
        grid = [[ZERO] * len(src) for _ in range(len(tgt))]
        for c, y in enumerate(src):
            for k, val in A.mul(x, {y: ONE}).items():
                grid[tgt[k]][c] = val
        mats.append(RatMatrix(grid, len(src)))
    return ModuleMap(Pi, Pj, mats)


def proj_sum_map(A: PathAlgebra, src: Sequence[int], tgt: Sequence[int], X) -> tuple[Module, Module, ModuleMap]:
    """Realise a matrix ``X[r][c]`` in ``e_{tgt r} A e_{src c}`` as a module map."""
    S = [projective(A, i) for i in src]
    T = [projective(A, j) for j in tgt]
    SM, TM = direct_sum(S, A), direct_sum(T, A)
    blocks = [[proj_map(A, X[r][c], src[c], tgt[r]) if X[r][c] else None for c in range(len(src))] for r in range(len(tgt))]
    return SM, TM, block_map(SM, TM, S, T, blocks)


def simple(A: PathAlgebra, i: int) -> Module:
    dims = [1 if v == i else 0 for v in range(A.n)]
    return Module(A, dims, {}, check=False)


def dual(M: Module) -> Module:
    """``D M = Hom_K(M, K)`` as a right module over the opposite algebra."""
    op = M.algebra.opposite()
    return Module(op, M.dims, {a: m.transpose() for a, m in M.action.items()}, check=False)


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dual(f.target), dual(f.source), [m.transpose() for m in f.mats])


def injective(A: PathAlgebra, i: int) -> Module:
    """``I_i = D(A e_i)``."""
    return dual(projective(A.opposite(), i))


def standard_modules(A: PathAlgebra) -> dict:
    return {
        "S": [simple(A, i) for i in range(A.n)],
        "P": [projective(A, i) for i in range(A.n)],
        "I": [injective(A, i) for i in range(A.n)],
    }


def submodule(M: Module, spaces: Sequence[Sequence[Sequence]]) -> tuple[Module, ModuleMap]:
    """Submodule spanned by per-vertex vectors, with its inclusion."""
    A = M.algebra
    q = A.quiver
    bases = [_independent(sp) for sp in spaces]
    coords = [_Coordinates(b) for b in bases]
    dims = [len(b) for b in bases]
    action = {}
    for a in range(len(q.arrows)):
        s, t = q.source(a), q.target(a)
        cols = [coords[t](M.action[a].apply(b)) for b in bases[s]]
        action[a] = _matrix_from_columns(cols, dims[t])
    S = Module(A, dims, action, check=False)
    inc = ModuleMap(S, M, [_matrix_from_columns(bases[v], M.dims[v]) for v in range(A.n)])
    return S, inc


def quotient(M: Module, spaces: Sequence[Sequence[Sequence]]) -> tuple[Module, ModuleMap]:
    """``M / N`` for the submodule N spanned per vertex, with the projection."""
    A = M.algebra
    q = A.quiver
    subs = [_independent(sp) for sp in spaces]
    comps = [_extend_to_basis(subs[v], M.dims[v]) for v in range(A.n)]
    full = [_Coordinates(subs[v] + comps[v]) for v in range(A.n)]
    dims = [len(c) for c in comps]

    def qcoords(v, vec):
        c = full[v](vec)
        return c[len(subs[v]):]

    action = {}
    for a in range(len(q.arrows)):
        s, t = q.source(a), q.target(a)
        cols = [qcoords(t, M.action[a].apply(b)) for b in comps[s]]
        action[a] = _matrix_from_columns(cols, dims[t])
    Q = Module(A, dims, action, check=False)
    mats = []
    for v in range(A.n):
        cols = []
        for j in range(M.dims[v]):
            e = [ZERO] * M.dims[v]
            e[j] = ONE
            cols.append(qcoords(v, e))
        mats.append(_matrix_from_columns(cols, dims[v]))
    return Q, ModuleMap(M, Q, mats)


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.source, [_kernel_basis(m) for m in f.mats])


def image_spaces(f: ModuleMap) -> list:
    return [_column_span(m) for m in f.mats]


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return quotient(f.target, image_spaces(f))


def radical_spaces(M: Module) -> list:
    """Per-vertex spanning vectors of ``rad M = sum of images of arrows``."""
    q = M.algebra.quiver
    spaces: list = [[] for _ in M.dims]
    for a in range(len(q.arrows)):
        t = q.target(a)
        spaces[t].extend(_column_span(M.action[a]))
    return spaces


def top_generators(M: Module, sub: Sequence | None = None) -> list[tuple[int, list]]:
    """Vectors whose images form a basis of ``M / (rad M + sub)``."""
    rad = radical_spaces(M)
    out = []
    for v in range(len(M.dims)):
        ech = Echelon()
        for w in rad[v]:
            ech.add(sparse(w))
        if sub is not None:
            for w in sub[v]:
                ech.add(sparse(w))
        for j in range(M.dims[v]):
            e = {j: ONE}
            if ech.add(e):
                out.append((v, dense(e, M.dims[v])))
    return out


def generator_map(M: Module, gens: Sequence[tuple[int, list]]) -> tuple[Module, ModuleMap, list[int]]:
    """The map ``sum P_v -> M`` sending ``e_v`` of each summand to a generator."""
    A = M.algebra
    verts = [v for v, _ in gens]
    parts = [projective(A, v) for v in verts]
    P = direct_sum(parts, A)
    mats = []
    for u in range(A.n):
        cols = []
        for v, g in gens:
            for y in A.block(v, u):
                cols.append(M.act(g, {y: ONE}, v, u))
        mats.append(_matrix_from_columns(cols, M.dims[u]))
    return P, ModuleMap(P, M, mats), verts


def projective_cover(M: Module) -> tuple[Module, ModuleMap, list[int]]:
    return generator_map(M, top_generators(M))


def module_hom(M: Module, N: Module) -> list[ModuleMap]:
    """Basis of Hom_A(M, N)."""
    A = M.algebra
    q = A.quiver
    offs = []
    off = 0
    for v in range(A.n):
        offs.append(off)
        off += N.dims[v] * M.dims[v]
    nvars = off

    def var(v, i, j):
        return offs[v] + i * M.dims[v] + j

    rows = []
    for a in range(len(q.arrows)):
        s, t = q.source(a), q.target(a)
        Am, An = M.action[a].entries, N.action[a].entries
        # (f_t Am - An f_s)[i][j] = 0
        for i in range(N.dims[t]):
            for j in range(M.dims[s]):
                row: dict = {}
                for k in range(M.dims[t]):
                    c = Am[k][j]
                    if c:
                        key = var(t, i, k)
                        row[key] = row.get(key, ZERO) + c
                for k in range(N.dims[s]):
                    c = An[i][k]
                    if c:
                        key = var(s, k, j)
                        row[key] = row.get(key, ZERO) - c
                row = {k: c for k, c in row.items() if c}
                if row:
                    rows.append(row)
    out = []
    for vec in kernel_sparse(rows, nvars):
        mats = []
        for v in range(A.n):
            grid = [[vec.get(var(v, i, j), ZERO) for j in range(M.dims[v])] for i in range(N.dims[v])]
            mats.append(RatMatrix(grid, M.dims[v]))
        out.append(ModuleMap(M, N, mats))
    return out


def hom_dim(M: Module, N: Module) -> int:
    return len(module_hom(M, N))


def endomorphism_algebra(M: Module) -> tuple[FinDimAlgebra, list[ModuleMap]]:
    basis = module_hom(M, M)
    ech = Echelon(track=True)
    for f in basis:
        ech.add(f.flat())
    mult = []
    for f in basis:
        row = []
        for g in basis:
            row.append(ech.coordinates(f.compose(g).flat()))
        mult.append(row)
    unit = ech.coordinates(ModuleMap.identity(M).flat())
    return FinDimAlgebra(len(basis), mult, dense(unit, len(basis))), basis


def _combine(basis: Sequence[ModuleMap], coeffs: Sequence) -> ModuleMap:
    out = ModuleMap.zero(basis[0].source, basis[0].target)
    for f, c in zip(basis, coeffs):
        if c:
            out = out + f.scale(c)
    return out


def decompose(M: Module) -> list[Module]:
    """Indecomposable direct summands (Krull-Schmidt)."""
    if M.dim == 0:
        return []
    E, basis = endomorphism_algebra(M)
    out = []
    for e in primitive_idempotents(E):
        f = _combine(basis, e)
        S, _ = submodule(M, image_spaces(f))
        out.append(S)
    return out


def is_indecomposable(M: Module) -> bool:
    return M.dim > 0 and len(decompose(M)) == 1


def _indecomposables_isomorphic(X: Module, Y: Module) -> bool:
    if X.dims != Y.dims:
        return False
    F = module_hom(X, Y)
    G = module_hom(Y, X)
    for g in G:
        for f in F:
            if g.compose(f).is_invertible():
                return True
    return False


def is_isomorphic(M: Module, N: Module) -> bool:
    if M.dims != N.dims:
        return False
    if M.dim == 0:
        return True
    F = module_hom(M, N)
    if not F:
        return False
    rng = random.Random(0)
    for _ in range(3):
        f = _combine(F, [Fraction(rng.randint(-50, 50)) for _ in F])
        if f.is_invertible():
            return True
    xs, ys = decompose(M), decompose(N)
    if len(xs) != len(ys):
        return False
    used = [False] * len(ys)
    for X in xs:
        for k, Y in enumerate(ys):
            if not used[k] and _indecomposables_isomorphic(X, Y):
                used[k] = True
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# homological data


def is_projective(M: Module) -> bool:
    P, _, _ = projective_cover(M)
    return P.dim == M.dim


def is_injective(M: Module) -> bool:
    A = M.algebra
    return all(ext1_dim(simple(A, i), M) == 0 for i in range(A.n))


def syzygy(M: Module) -> Module:
    _, cover, _ = projective_cover(M)
    K, _ = kernel(cover)
    return K


def ext1_dim(M: Module, N: Module) -> int:
    """dim Ext^1(M, N) from ``0 -> Omega M -> P_0 -> M -> 0``."""
    P, cover, _ = projective_cover(M)
    K, _ = kernel(cover)
    return hom_dim(K, N) - hom_dim(P, N) + hom_dim(M, N)


def projective_dimension(M: Module, cap: int = 32) -> int | None:
    """Projective dimension, or None if it exceeds ``cap``."""
    cur = M
    for k in range(cap + 1):
        if cur.dim == 0:
            return max(k - 1, 0) if k else 0
        if is_projective(cur):
            return k
        cur = syzygy(cur)
    return None


@dataclass
class Presentation:
    p1: list  # vertex indices of P^1 summands
    p0: list
    matrix: list  # matrix[r][c] in e_{p0[r]} A e_{p1[c]}
    cover: ModuleMap  # P^0 -> M


def _generator_coords(A: PathAlgebra, verts: Sequence[int], u: int, vec: Sequence) -> list[dict]:
    """Split a vector of ``(sum P_v) e_u`` into algebra elements per summand."""
    out = []
    off = 0
    for v in verts:
        blk = A.block(v, u)
        x = {}
        for k, idx in enumerate(blk):
            c = vec[off + k]
            if c:
                x[idx] = c
        out.append(x)
        off += len(blk)
    return out


def min_proj_presentation(M: Module) -> Presentation:
    """Minimal projective presentation ``P^1 -> P^0 -> M -> 0``."""
    A = M.algebra
    P0, cover, p0 = projective_cover(M)
    K, inc = kernel(cover)
    gens = top_generators(K)
    matrix = [[{} for _ in gens] for _ in p0]
    p1 = []
    for c, (u, g) in enumerate(gens):
        p1.append(u)
        vec = inc.mats[u].apply(g)
        for r, x in enumerate(_generator_coords(A, p0, u, vec)):
            matrix[r][c] = x
    return Presentation(p1, p0, matrix, cover)


def presentation_is_exact(M: Module, pres: Presentation) -> bool:
    A = M.algebra
    _, P0, d = proj_sum_map(A, pres.p1, pres.p0, pres.matrix)
    if not pres.cover.compose(d).is_zero():
        return False
    img = image_spaces(d)
    K, _ = kernel(pres.cover)
    return [len(s) for s in img] == list(K.dims)


def transpose_matrix(X) -> list:
    if not X:
        return []
    return [[X[r][c] for r in range(len(X))] for c in range(len(X[0]))]


def nakayama_proj_map(A: PathAlgebra, src: Sequence[int], tgt: Sequence[int], X) -> ModuleMap:
    """``nu`` of a map between sums of projectives: ``sum I_src -> sum I_tgt``."""
    op = A.opposite()
    _, _, g = proj_sum_map(op, tgt, src, transpose_matrix(X) if X else [[] for _ in src])
    return dual_map(g)


def nakayama_module(M: Module) -> Module:
    """``nu M = D Hom_A(M, A)``."""
    A = M.algebra
    op = A.opposite()
    q = A.quiver
    homs = [module_hom(M, projective(A, v)) for v in range(A.n)]
    flats = []
    for v in range(A.n):
        ech = Echelon(track=True)
        for f in homs[v]:
            ech.add(f.flat())
        flats.append(ech)
    dims = [len(h) for h in homs]
    action = {}
    for a in range(len(q.arrows)):
        s, t = q.source(a), q.target(a)
        # the arrow a, as a map P_t -> P_s, sends Hom(M, P_t) to Hom(M, P_s)
        left = proj_map(A, {A.arrow_basis[a]: ONE}, t, s)
        cols = []
        for f in homs[t]:
            cols.append(dense(flats[s].coordinates(left.compose(f).flat()), dims[s]))
        action[a] = _matrix_from_columns(cols, dims[s])  # op arrow t -> s
    left_module = Module(op, dims, action, check=False)
    return dual(left_module)


def ar_translate(M: Module, direction: str = "+") -> Module:
    """Auslander-Reiten translate ``tau`` (``+``) or ``tau^-`` (``-``)."""
    A = M.algebra
    if direction in ("+", "tau"):
        if any(is_projective(X) for X in decompose(M)):
            raise SummandObstruction("module has a projective summand")
        pres = min_proj_presentation(M)
        f = nakayama_proj_map(A, pres.p1, pres.p0, pres.matrix)
        K, _ = kernel(f)
        return K
    if direction in ("-", "tau-"):
        if any(is_injective(X) for X in decompose(M)):
            raise SummandObstruction("module has an injective summand")
        pres = min_proj_presentation(dual(M))
        # transpose: Hom_op(P^0, op) -> Hom_op(P^1, op) is a map of right A-modules
        _, _, g = proj_sum_map(A, pres.p0, pres.p1, transpose_matrix(pres.matrix) if pres.matrix else [[] for _ in pres.p0])
        C, _ = cokernel(g)
        return C
    raise ValueError(f"unknown direction {direction!r}")


def plus_simple(A: PathAlgebra, i: int) -> Module:
    """``S_i^+ = D(A / A(1 - e_i)A)`` built inside the path basis."""
    others = [v for v in range(A.n) if v != i]
    ideal = A.ideal_generated_by_idempotents(others)
    comp = []
    probe = Echelon()
    for r in ideal.basis():
        probe.add(r)
    for k in range(A.dim):
        if probe.add({k: ONE}):
            comp.append(k)
    # the quotient lives in e_i (A/J) e_i; left action of loops at i
    q = A.quiver
    full = Echelon(track=True)
    basis_vectors = [r for r in ideal.basis()] + [{k: ONE} for k in comp]
    for b in basis_vectors:
        full.add(b)
    nideal = len(ideal)
    dims = [0] * A.n
    dims[i] = len(comp)
    action = {}
    for a in range(len(q.arrows)):
        s, t = q.source(a), q.target(a)
        if s != i or t != i:
            continue
        # matrix of x -> a x on the quotient, then transpose for the dual
        cols = []
        for k in comp:
            prod = A.mul({A.arrow_basis[a]: ONE}, {k: ONE})
            c = full.coordinates(prod)
            cols.append([c.get(nideal + r, ZERO) for r in range(len(comp))])
        left = _matrix_from_columns(cols, len(comp))
        action[a] = left.transpose()
    return Module(A, dims, action)


@dataclass
class TiltingCertificate:
    module: Module
    summands: list
    ext1_zero: bool
    projective_dimension: int | None
    summand_count_ok: bool

    @property
    def ok(self) -> bool:
        pd = self.projective_dimension
        return self.ext1_zero and pd is not None and pd <= 1 and self.summand_count_ok


def tilting_certificate(T: Module) -> TiltingCertificate:
    A = T.algebra
    summands = decompose(T)
    basic = True
    for a in range(len(summands)):
        for b in range(a + 1, len(summands)):
            if is_isomorphic(summands[a], summands[b]):
                basic = False
    return TiltingCertificate(
        module=T,
        summands=summands,
        ext1_zero=ext1_dim(T, T) == 0,
        projective_dimension=projective_dimension(T),
        summand_count_ok=basic and len(summands) == A.n,
    )


def bb_tilting(A: PathAlgebra, i: int) -> tuple[Module, Module, TiltingCertificate]:
    """BB tilting module ``tau^-(S_i^+) + sum_{j != i} P_j``.

    Returns ``(T, tau^-(S_i^+), certificate)``.
    """
    Splus = plus_simple(A, i)
    label = A.quiver.vertices[i]
    if is_injective(Splus):
        raise HypothesisFailed("not-injective", f"S_{label}^+ is injective")
    X = ar_translate(Splus, "-")
    pd = projective_dimension(X)
    if pd is None or pd > 1:
        raise HypothesisFailed("pd-at-most-one", f"tau^-(S_{label}^+) has projective dimension {pd}")
    parts = [X] + [projective(A, j) for j in range(A.n) if j != i]
    T = direct_sum(parts, A)
    cert = tilting_certificate(T)
    return T, X, cert
