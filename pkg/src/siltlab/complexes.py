"""Bounded complexes of finitely generated projective modules.

A term is a tuple of vertex indices, one per indecomposable projective
summand.  The differential ``d^d: X^d -> X^{d+1}`` is a matrix whose entry
``[r][c]`` lies in ``e_j A e_i`` where ``i = X^d[c]`` and ``j = X^{d+1}[r]``.
Composition of maps is matrix multiplication with the algebra product taken
in the written order, so ``(g o f)[r][c] = sum_k g[r][k] * f[k][c]``.

Differentials raise degree by one.  ``shift(X, k)`` has ``X^{d+k}`` in
degree d and differential ``(-1)^k d``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotAComplex
from .linalg import (
    ONE,
    ZERO,
    Echelon,
    FinDimAlgebra,
    axpy,
    columns_to_rows,
    kernel_sparse,
    primitive_idempotents,
    scaled,
)
from .quiver import PathAlgebra

Matrix = list  # list of rows, each a list of sparse algebra elements


# ---------------------------------------------------------------------------
# matrices over the algebra


def mat_zero(rows: int, cols: int) -> Matrix:
    return [[{} for _ in range(cols)] for _ in range(rows)]


def mat_identity(A: PathAlgebra, verts: Sequence[int]) -> Matrix:
    m = mat_zero(len(verts), len(verts))
    for k, v in enumerate(verts):
        m[k][k] = A.idempotent(v)
    return m


def mat_mul(A: PathAlgebra, X: Matrix, Y: Matrix, inner: int | None = None) -> Matrix:
    """``X * Y`` where X has ``inner`` columns."""
    rows = len(X)
    if inner is None:
        inner = len(Y)
    cols = len(Y[0]) if Y else 0
    out = mat_zero(rows, cols)
    for r in range(rows):
        xr = X[r]
        for k in range(inner):
            x = xr[k]
            if not x:
                continue
            yk = Y[k]
            for c in range(cols):
                y = yk[c]
                if y:
                    axpy(out[r][c], ONE, A.mul(x, y))
    for row in out:
        for c, e in enumerate(row):
            if e:
                row[c] = {k: v for k, v in e.items() if v}
    return out


def mat_add(X: Matrix, Y: Matrix, c=ONE) -> Matrix:
    out = []
    for xr, yr in zip(X, Y):
        row = []
        for x, y in zip(xr, yr):
            z = dict(x)
            if y:
                axpy(z, c, y)
            row.append(z)
        out.append(row)
    return out


def mat_scale(X: Matrix, c) -> Matrix:
    return [[scaled(x, c) if c else {} for x in row] for row in X]


def mat_is_zero(X: Matrix) -> bool:
    return all(not x for row in X for x in row)


def mat_copy(X: Matrix) -> Matrix:
    return [[dict(x) for x in row] for row in X]


def mat_select(X: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[dict(X[r][c]) for c in cols] for r in rows]


def mat_block(blocks: Sequence[Sequence[Matrix]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> Matrix:
    out = mat_zero(sum(row_sizes), sum(col_sizes))
    ro = 0
    for bi, rs in enumerate(row_sizes):
        co = 0
        for bj, cs in enumerate(col_sizes):
            b = blocks[bi][bj]
            if b is not None:
                for r in range(rs):
                    for c in range(cs):
                        if b[r][c]:
                            out[ro + r][co + c] = dict(b[r][c])
            co += cs
        ro += rs
    return out


def transpose_entries(X: Matrix) -> Matrix:
    if not X:
        return []
    return [[dict(X[r][c]) for r in range(len(X))] for c in range(len(X[0]))]


def mat_inverse(A: PathAlgebra, X: Matrix, verts: Sequence[int]) -> Matrix:
    """Inverse of a square matrix over A that is invertible modulo the radical.

    ``verts`` lists the projective summand of each row (equal to columns).
    """
    n = len(verts)
    # scalar part: coefficient of the idempotent where row and column agree
    scal = [[X[r][c].get(A.idempotents[verts[r]], ZERO) if verts[r] == verts[c] else ZERO for c in range(n)] for r in range(n)]
    inv = _scalar_inverse(scal)
    if inv is None:
        raise ZeroDivisionError("matrix is not invertible modulo the radical")
    M0inv = mat_zero(n, n)
    for r in range(n):
        for c in range(n):
            if inv[r][c]:
                M0inv[r][c] = {A.idempotents[verts[r]]: inv[r][c]}
    # X = M0 (1 + M0^{-1} N), so X^{-1} = sum_k (-M0^{-1} N)^k M0^{-1}
    T = mat_mul(A, M0inv, X)
    Nn = mat_add(T, mat_identity(A, verts), -ONE)
    Nn = mat_scale(Nn, -ONE)
    out = mat_identity(A, verts)
    term = mat_identity(A, verts)
    for _ in range(A.loewy_bound() * max(n, 1) + 1):
        term = mat_mul(A, term, Nn)
        if mat_is_zero(term):
            break
        out = mat_add(out, term)
    return mat_mul(A, out, M0inv)


def _scalar_inverse(m: list) -> list | None:
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# complexes


class ProjComplex:
    def __init__(self, algebra: PathAlgebra, terms: dict, diffs: dict | None = None):
        self.algebra = algebra
        self.terms = {int(d): tuple(t) for d, t in terms.items() if len(t)}
        self.diffs = {}
        for d, m in (diffs or {}).items():
            d = int(d)
            if self.term(d) and self.term(d + 1) and not mat_is_zero(m):
                self.diffs[d] = m

    @classmethod
    def zero(cls, algebra: PathAlgebra) -> "ProjComplex":
        return cls(algebra, {})

    @classmethod
    def stalk(cls, algebra: PathAlgebra, verts: Sequence[int], degree: int = 0) -> "ProjComplex":
        return cls(algebra, {degree: tuple(verts)})

    @classmethod
    def regular(cls, algebra: PathAlgebra) -> "ProjComplex":
        return cls.stalk(algebra, range(algebra.n))

    def term(self, d: int) -> tuple:
        return self.terms.get(d, ())

    def diff(self, d: int) -> Matrix:
        m = self.diffs.get(d)
        if m is None:
            return mat_zero(len(self.term(d + 1)), len(self.term(d)))
        return m

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def span(self) -> tuple[int, int] | None:
        if not self.terms:
            return None
        ds = self.degrees()
        return ds[0], ds[-1]

    def rank(self) -> int:
        return sum(len(t) for t in self.terms.values())

    def validate(self) -> None:
        A = self.algebra
        for d, m in self.diffs.items():
            src, tgt = self.term(d), self.term(d + 1)
            if len(m) != len(tgt) or any(len(row) != len(src) for row in m):
                raise ValueError(f"differential in degree {d} has the wrong shape")
            for r, row in enumerate(m):
                for c, x in enumerate(row):
                    for k in x:
                        if A.sources[k] != tgt[r] or A.targets[k] != src[c]:
                            raise ValueError(f"entry [{r},{c}] of d({d}) is not a map between these projectives")
        for d in self.degrees():
            if d in self.diffs and d + 1 in self.diffs:
                if not mat_is_zero(mat_mul(A, self.diffs[d + 1], self.diffs[d])):
                    raise NotAComplex(d)

    def signature(self) -> tuple:
        """Per-degree sorted multiset of summands."""
        return tuple((d, tuple(sorted(self.terms[d]))) for d in self.degrees())

    def k0(self) -> "K0Class":
        return k0_class(self)

    def __repr__(self) -> str:
        parts = []
        for d in self.degrees():
            parts.append(f"{d}:" + "+".join("P" + self.algebra.quiver.vertices[v] for v in self.terms[d]))
        return "ProjComplex(" + ", ".join(parts) + ")"

    def describe(self) -> dict:
        A = self.algebra
        out = {"terms": {}, "differentials": {}}
        for d in self.degrees():
            out["terms"][str(d)] = ["P" + A.quiver.vertices[v] for v in self.terms[d]]
        for d in sorted(self.diffs):
            out["differentials"][str(d)] = [[format_element(A, x) for x in row] for row in self.diffs[d]]
        return out


def format_element(A: PathAlgebra, x: dict) -> str:
    if not x:
        return "0"
    parts = []
    for k in sorted(x, key=lambda k: (len(A.words[k]), A.label(k))):
        c = x[k]
        lab = A.label(k)
        if c == 1:
            s = lab
        elif c == -1:
            s = "-" + lab
        else:
            s = f"{c}*{lab}"
        parts.append(s)
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def shift(X: ProjComplex, k: int = 1) -> ProjComplex:
    sign = -ONE if k % 2 else ONE
    terms = {d - k: t for d, t in X.terms.items()}
    diffs = {d - k: mat_scale(m, sign) for d, m in X.diffs.items()}
    return ProjComplex(X.algebra, terms, diffs)


def direct_sum(parts: Sequence[ProjComplex], algebra: PathAlgebra | None = None) -> ProjComplex:
    if not parts:
        return ProjComplex(algebra, {})
    A = parts[0].algebra
    degs = sorted({d for X in parts for d in X.terms})
    terms = {d: tuple(v for X in parts for v in X.term(d)) for d in degs}
    diffs = {}
    for d in degs:
        if d + 1 not in terms:
            continue
        blocks = [[X.diff(d) if i == j else None for j, X in enumerate(parts)] for i, _ in enumerate(parts)]
        diffs[d] = mat_block(blocks, [len(X.term(d + 1)) for X in parts], [len(X.term(d)) for X in parts])
    return ProjComplex(A, terms, diffs)


def _sum_offsets(parts: Sequence[ProjComplex], d: int) -> list[int]:
    offs = [0]
    for X in parts:
        offs.append(offs[-1] + len(X.term(d)))
    return offs


class ChainMap:
    """Graded map ``f^d: X^d -> Y^{d + degree}``."""

    def __init__(self, source: ProjComplex, target: ProjComplex, comps: dict | None = None, degree: int = 0):
        self.source = source
        self.target = target
        self.degree = degree
        self.comps = {}
        for d, m in (comps or {}).items():
            if source.term(d) and target.term(d + degree) and not mat_is_zero(m):
                self.comps[d] = m

    def comp(self, d: int) -> Matrix:
        m = self.comps.get(d)
        if m is None:
            return mat_zero(len(self.target.term(d + self.degree)), len(self.source.term(d)))
        return m

    @classmethod
    def identity(cls, X: ProjComplex) -> "ChainMap":
        return cls(X, X, {d: mat_identity(X.algebra, X.term(d)) for d in X.degrees()})

    @classmethod
    def zero(cls, X: ProjComplex, Y: ProjComplex, degree: int = 0) -> "ChainMap":
        return cls(X, Y, {}, degree)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``."""
        A = self.source.algebra
        comps = {}
        for d in other.comps:
            mid = d + other.degree
            if mid in self.comps:
                comps[d] = mat_mul(A, self.comps[mid], other.comps[d])
        return ChainMap(other.source, self.target, comps, self.degree + other.degree)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return self.plus(other, ONE)

    def plus(self, other: "ChainMap", c=ONE) -> "ChainMap":
        comps = {}
        for d in set(self.comps) | set(other.comps):
            comps[d] = mat_add(self.comp(d), other.comp(d), c)
        return ChainMap(self.source, self.target, comps, self.degree)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {d: mat_scale(m, c) for d, m in self.comps.items()}, self.degree)

    def is_zero(self) -> bool:
        return not self.comps

    def differential(self) -> "ChainMap":
        """``d_Y f - (-1)^m f d_X``."""
        A = self.source.algebra
        X, Y, m = self.source, self.target, self.degree
        sign = -ONE if m % 2 else ONE
        comps = {}
        degs = set(self.comps) | {d - 1 for d in self.comps}
        for d in degs:
            a = mat_mul(A, Y.diff(d + m), self.comp(d)) if d in self.comps else None
            b = mat_mul(A, self.comp(d + 1), X.diff(d)) if d + 1 in self.comps else None
            if a is None:
                tot = mat_scale(b, -sign)
            elif b is None:
                tot = a
            else:
                tot = mat_add(a, b, -sign)
            comps[d] = tot
        return ChainMap(X, Y, comps, m + 1)

    def is_chain_map(self) -> bool:
        return self.differential().is_zero()

    def __repr__(self) -> str:
        return f"ChainMap(degree={self.degree}, nonzero={sorted(self.comps)})"


def shift_map(f: ChainMap, k: int = 1) -> ChainMap:
    """``Sigma^k f`` for a degree-0 map."""
    sign = -ONE if (k * f.degree) % 2 else ONE
    return ChainMap(shift(f.source, k), shift(f.target, k), {d - k: mat_scale(m, sign) for d, m in f.comps.items()}, f.degree)


def cone(f: ChainMap) -> ProjComplex:
    """``Cone^d = X^{d+1} + Y^d`` with differential ``[[-d_X, 0], [f, d_Y]]``."""
    if f.degree != 0:
        raise ValueError("cone needs a degree-0 chain map")
    A = f.source.algebra
    X, Y = f.source, f.target
    degs = sorted({d - 1 for d in X.terms} | set(Y.terms))
    terms = {d: X.term(d + 1) + Y.term(d) for d in degs}
    diffs = {}
    for d in degs:
        if d + 1 not in terms:
            continue
        blocks = [[mat_scale(X.diff(d + 1), -ONE), None], [f.comp(d + 1), Y.diff(d)]]
        diffs[d] = mat_block(blocks, [len(X.term(d + 2)), len(Y.term(d + 1))], [len(X.term(d + 1)), len(Y.term(d))])
    return ProjComplex(A, terms, diffs)


def cone_maps(f: ChainMap) -> tuple[ProjComplex, ChainMap, ChainMap]:
    """Cone together with ``Y -> Cone`` and ``Cone -> Sigma X``."""
    C = cone(f)
    A = C.algebra
    X, Y = f.source, f.target
    inc, proj = {}, {}
    for d in C.degrees():
        nx, ny = len(X.term(d + 1)), len(Y.term(d))
        if ny:
            inc[d] = mat_block([[None], [mat_identity(A, Y.term(d))]], [nx, ny], [ny])
        if nx:
            proj[d] = mat_block([[mat_identity(A, X.term(d + 1)), None]], [nx], [nx, ny])
    return C, ChainMap(Y, C, inc), ChainMap(C, shift(X, 1), proj)


def cocone(f: ChainMap) -> ProjComplex:
    return shift(cone(f), -1)


# ---------------------------------------------------------------------------
# Hom complexes


class HomComplex:
    """``Hom^m(X, Y) = prod_d Hom(X^d, Y^{d+m})`` with coordinates."""

    def __init__(self, X: ProjComplex, Y: ProjComplex):
        self.X = X
        self.Y = Y
        self.A = X.algebra
        self._index: dict = {}
        self._delta: dict = {}
        self._coh: dict = {}

    def degree_range(self) -> range:
        sx, sy = self.X.span(), self.Y.span()
        if sx is None or sy is None:
            return range(0)
        return range(sy[0] - sx[1], sy[1] - sx[0] + 1)

    def index(self, m: int) -> tuple[list, dict]:
        if m not in self._index:
            A = self.A
            coords = []
            for d in self.X.degrees():
                src = self.X.term(d)
                tgt = self.Y.term(d + m)
                for r, j in enumerate(tgt):
                    for c, i in enumerate(src):
                        for k in A.block(j, i):
                            coords.append((d, r, c, k))
            self._index[m] = (coords, {x: n for n, x in enumerate(coords)})
        return self._index[m]

    def dim_cochains(self, m: int) -> int:
        return len(self.index(m)[0])

    def to_vector(self, f: ChainMap) -> dict:
        _, pos = self.index(f.degree)
        out = {}
        for d, mat in f.comps.items():
            for r, row in enumerate(mat):
                for c, x in enumerate(row):
                    for k, v in x.items():
                        if v:
                            out[pos[(d, r, c, k)]] = v
        return out

    def from_vector(self, m: int, vec: dict) -> ChainMap:
        coords, _ = self.index(m)
        comps: dict = {}
        for n, v in vec.items():
            if not v:
                continue
            d, r, c, k = coords[n]
            mat = comps.get(d)
            if mat is None:
                mat = comps[d] = mat_zero(len(self.Y.term(d + m)), len(self.X.term(d)))
            mat[r][c][k] = mat[r][c].get(k, ZERO) + v
        return ChainMap(self.X, self.Y, comps, m)

    def delta_columns(self, m: int) -> list[dict]:
        """Images of the coordinate basis of ``Hom^m`` under the differential."""
        if m not in self._delta:
            A = self.A
            X, Y = self.X, self.Y
            coords, _ = self.index(m)
            _, pos1 = self.index(m + 1)
            sign = -ONE if m % 2 else ONE
            cols = []
            for d, r, c, k in coords:
                out: dict = {}
                b = {k: ONE}
                # d_Y o f lands in Hom(X^d, Y^{d+m+1})
                dy = Y.diffs.get(d + m)
                if dy is not None:
                    for r2, row in enumerate(dy):
                        y = row[r]
                        if y:
                            for kk, v in A.mul(y, b).items():
                                key = pos1[(d, r2, c, kk)]
                                out[key] = out.get(key, ZERO) + v
                # -(-1)^m f o d_X lands in Hom(X^{d-1}, Y^{d+m})
                dx = X.diffs.get(d - 1)
                if dx is not None:
                    for c2, x in enumerate(dx[c]):
                        if x:
                            for kk, v in A.mul(b, x).items():
                                key = pos1[(d - 1, r, c2, kk)]
                                out[key] = out.get(key, ZERO) - sign * v
                cols.append({a: v for a, v in out.items() if v})
            self._delta[m] = cols
        return self._delta[m]

    def cohomology(self, m: int) -> "Cohomology":
        if m not in self._coh:
            n = self.dim_cochains(m)
            rows = columns_to_rows(self.delta_columns(m)) if n else []
            cycles = kernel_sparse(rows, n) if n else []
            prev = self.delta_columns(m - 1) if self.dim_cochains(m - 1) else []
            nz = [k for k, c in enumerate(prev) if c]
            self._coh[m] = Cohomology([prev[k] for k in nz], cycles, nz)
        return self._coh[m]

    def dim(self, m: int) -> int:
        return self.cohomology(m).dim

    def dims(self) -> dict:
        return {m: self.dim(m) for m in self.degree_range() if self.dim(m)}

    def basis(self, m: int) -> list[ChainMap]:
        return [self.from_vector(m, v) for v in self.cohomology(m).reps]

    def is_boundary(self, f: ChainMap) -> bool:
        return self.cohomology(f.degree).is_boundary(self.to_vector(f))

    def class_of(self, f: ChainMap) -> list:
        """Coordinates of the class of a cycle in the cohomology basis."""
        return self.cohomology(f.degree).coords(self.to_vector(f))

    def homotopy(self, f: ChainMap) -> ChainMap | None:
        """A map h with ``dh = f`` when f is a boundary."""
        m = f.degree
        coh = self.cohomology(m)
        combo = coh.boundary_combo(self.to_vector(f))
        if combo is None:
            return None
        vec: dict = {}
        for g, c in combo.items():
            axpy(vec, c, {coh.bound_source[g]: ONE})
        return self.from_vector(m - 1, vec)


class Cohomology:
    """Cycles modulo boundaries, with a chosen basis of representatives."""

    def __init__(self, boundaries: Sequence[dict], cycles: Sequence[dict], bound_source: Sequence[int] = ()):
        self.bound_source = list(bound_source)
        self.cycles = list(cycles)
        self.B = Echelon(track=True)
        for b in boundaries:
            self.B.add(b)
        # boundaries first, then each new representative as one generator
        self.full = Echelon(track=True)
        for b in boundaries:
            self.full.add(b)
        self.reps = []
        self.rep_ids = []
        for z in cycles:
            gen = self.full.count
            if self.full.add(z):
                self.reps.append(z)
                self.rep_ids.append(gen)
        self.dim = len(self.reps)

    def is_boundary(self, vec: dict) -> bool:
        return self.B.contains(vec)

    def coords(self, vec: dict) -> list:
        c = self.full.coordinates(vec)
        if c is None:
            raise ValueError("not a cycle")
        return [c.get(g, ZERO) for g in self.rep_ids]

    def boundary_combo(self, vec: dict) -> dict | None:
        return self.B.coordinates(vec)


def hom_complex(X: ProjComplex, Y: ProjComplex) -> HomComplex:
    return HomComplex(X, Y)


def hom_dims(X: ProjComplex, Y: ProjComplex) -> dict:
    """``{m: dim Hom_K(X, Sigma^m Y)}`` for the nonzero degrees."""
    return HomComplex(X, Y).dims()


@dataclass(frozen=True)
class GradedHom:
    dims: tuple  # sorted (m, dim) pairs with dim > 0

    def __getitem__(self, m: int) -> int:
        return dict(self.dims).get(m, 0)

    def total(self) -> int:
        return sum(d for _, d in self.dims)

    def as_dict(self) -> dict:
        return dict(self.dims)


def graded_hom(X: ProjComplex, Y: ProjComplex) -> GradedHom:
    return GradedHom(tuple(sorted(hom_dims(X, Y).items())))


def is_null_homotopic(f: ChainMap) -> bool:
    return HomComplex(f.source, f.target).is_boundary(f)


# ---------------------------------------------------------------------------
# K_0


@dataclass(frozen=True)
class K0Class:
    coords: tuple

    def __add__(self, other: "K0Class") -> "K0Class":
        return K0Class(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "K0Class":
        return K0Class(tuple(-a for a in self.coords))


def k0_class(X: ProjComplex) -> K0Class:
    v = [0] * X.algebra.n
    for d, t in X.terms.items():
        s = -1 if d % 2 else 1
        for i in t:
            v[i] += s
    return K0Class(tuple(v))


# ---------------------------------------------------------------------------
# minimisation


def _find_unit(X: ProjComplex):
    A = X.algebra
    for d in sorted(X.diffs):
        m = X.diffs[d]
        src, tgt = X.term(d), X.term(d + 1)
        for r, row in enumerate(m):
            for c, x in enumerate(row):
                if src[c] == tgt[r] and A.idempotent_coefficient(x, src[c]):
                    return d, r, c
    return None


def _drop(seq, k):
    return tuple(seq[:k]) + tuple(seq[k + 1:])


def _eliminate(X: ProjComplex, d: int, r: int, c: int, with_maps: bool):
    """Cancel the unit entry ``d^d[r][c]``; return the new complex and maps."""
    A = X.algebra
    src, tgt = X.term(d), X.term(d + 1)
    D = X.diff(d)
    phi = D[r][c]
    phinv = A.inverse_in_corner(phi, src[c])
    keep_c = [k for k in range(len(src)) if k != c]
    keep_r = [k for k in range(len(tgt)) if k != r]
    d12 = [[D[r][k] for k in keep_c]]  # 1 x |D|
    d21 = [[D[k][c]] for k in keep_r]  # |E| x 1
    d22 = mat_select(D, keep_r, keep_c)
    corr = mat_mul(A, mat_mul(A, d21, [[phinv]]), d12)
    new_d = mat_add(d22, corr, -ONE)
    terms = dict(X.terms)
    terms[d] = _drop(src, c)
    terms[d + 1] = _drop(tgt, r)
    diffs = dict(X.diffs)
    diffs[d] = new_d
    if d - 1 in diffs:
        diffs[d - 1] = [row for k, row in enumerate(diffs[d - 1]) if k != c]
    if d + 1 in diffs:
        diffs[d + 1] = [[x for k, x in enumerate(row) if k != r] for row in diffs[d + 1]]
    Y = ProjComplex(A, {k: v for k, v in terms.items() if v}, diffs)
    if not with_maps:
        return Y, None, None
    f_comps, g_comps = {}, {}
    for e in X.degrees():
        if e == d:
            f_comps[e] = mat_select(mat_identity(A, src), keep_c, range(len(src)))
            # d -> (-phi^{-1} d12 d, d)
            top = mat_scale(mat_mul(A, [[phinv]], d12), -ONE)
            g = mat_zero(len(src), len(keep_c))
            for k, kc in enumerate(keep_c):
                g[kc][k] = A.idempotent(src[kc])
            for k, kc in enumerate(keep_c):
                g[c][k] = top[0][k]
            g_comps[e] = g
        elif e == d + 1:
            # (b', e) -> e - d21 phi^{-1} b'
            f = mat_select(mat_identity(A, tgt), keep_r, range(len(tgt)))
            col = mat_scale(mat_mul(A, d21, [[phinv]]), -ONE)
            for k in range(len(keep_r)):
                f[k][r] = col[k][0]
            f_comps[e] = f
            g_comps[e] = mat_select(mat_identity(A, tgt), range(len(tgt)), keep_r)
        else:
            f_comps[e] = mat_identity(A, X.term(e))
            g_comps[e] = mat_identity(A, X.term(e))
    return Y, ChainMap(X, Y, f_comps), ChainMap(Y, X, g_comps)


def minimize(X: ProjComplex, with_maps: bool = False):
    """Remove contractible summands ``P --unit--> P`` by Gaussian elimination.

    Returns the minimal complex, or ``(Xmin, f, g)`` with mutually inverse
    homotopy equivalences ``f: X -> Xmin`` and ``g: Xmin -> X``.
    """
    cur = X
    f_tot = g_tot = None
    if with_maps:
        f_tot = g_tot = ChainMap.identity(X)
    while True:
        hit = _find_unit(cur)
        if hit is None:
            break
        nxt, f, g = _eliminate(cur, *hit, with_maps)
        if with_maps:
            f_tot = f.compose(f_tot)
            g_tot = g_tot.compose(g)
        cur = nxt
    if with_maps:
        return cur, f_tot, g_tot
    return cur


def is_minimal(X: ProjComplex) -> bool:
    return _find_unit(X) is None


# ---------------------------------------------------------------------------
# endomorphisms, decomposition and isomorphism


def _invertible_mod_radical(f: ChainMap) -> bool:
    """Degreewise test for a degree-0 map between minimal complexes."""
    A = f.source.algebra
    X, Y = f.source, f.target
    if X.signature() != Y.signature():
        return False
    for d in X.degrees():
        src, tgt = X.term(d), Y.term(d)
        m = f.comp(d)
        for v in set(src):
            cols = [c for c, i in enumerate(src) if i == v]
            rows = [r for r, j in enumerate(tgt) if j == v]
            scal = [[m[r][c].get(A.idempotents[v], ZERO) for c in cols] for r in rows]
            if _scalar_inverse(scal) is None:
                return False
    return True


def end_algebra(X: ProjComplex) -> tuple[FinDimAlgebra, list[ChainMap], HomComplex]:
    """``End_K(X)`` with structure constants and representative chain maps."""
    H = HomComplex(X, X)
    coh = H.cohomology(0)
    basis = [H.from_vector(0, v) for v in coh.reps]
    mult = []
    for f in basis:
        row = []
        for g in basis:
            row.append({k: v for k, v in enumerate(H.class_of(f.compose(g))) if v})
        mult.append(row)
    unit = H.class_of(ChainMap.identity(X))
    return FinDimAlgebra(len(basis), mult, unit), basis, H


class TruncatedEnd:
    """The dg algebra ``tau_{<=0} Hom(X, X)``.

    Degree m < 0 has the full cochain space as basis (coordinate vectors);
    degree 0 keeps only the cycles.  Multiplication is composition and the
    differential is the Hom-complex differential.
    """

    def __init__(self, X: ProjComplex):
        self.X = X
        self.H = HomComplex(X, X)
        lo = min(self.H.degree_range(), default=0)
        self.basis: dict[int, list[dict]] = {}
        for m in range(lo, 1):
            if m < 0:
                vecs = [{k: ONE} for k in range(self.H.dim_cochains(m))]
            else:
                vecs = self.H.cohomology(0).cycles
            if vecs:
                self.basis[m] = vecs
        self._ech = {}

    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def dims(self) -> dict:
        return {m: len(b) for m, b in self.basis.items()}

    def element(self, m: int, k: int) -> ChainMap:
        return self.H.from_vector(m, self.basis[m][k])

    def coordinates(self, f: ChainMap) -> list | None:
        """Coordinates of a cochain in the chosen basis of its degree, or None."""
        m = f.degree
        if m > 0 or m not in self.basis and not f.is_zero():
            return None
        if f.is_zero():
            return [ZERO] * len(self.basis.get(m, ()))
        if m not in self._ech:
            e = Echelon(track=True)
            for v in self.basis[m]:
                e.add(v)
            self._ech[m] = e
        c = self._ech[m].coordinates(self.H.to_vector(f))
        if c is None:
            return None
        return [c.get(k, ZERO) for k in range(len(self.basis[m]))]

    def differential(self, f: ChainMap) -> ChainMap:
        return f.differential()

    def multiply(self, f: ChainMap, g: ChainMap) -> ChainMap:
        return f.compose(g)

    def check_leibniz(self) -> bool:
        """``d(fg) = d(f) g + (-1)^|f| f d(g)`` on all basis pairs, inside the truncation."""
        for p in self.degrees():
            for q in self.degrees():
                if p + q < min(self.degrees()):
                    continue
                for a in range(len(self.basis[p])):
                    f = self.element(p, a)
                    df = f.differential()
                    for b in range(len(self.basis[q])):
                        g = self.element(q, b)
                        fg = f.compose(g)
                        if self.coordinates(fg) is None:
                            return False
                        rhs = df.compose(g).plus(f.compose(g.differential()), -ONE if p % 2 else ONE)
                        if not fg.differential().plus(rhs, -ONE).is_zero():
                            return False
        return True

    def h0(self) -> FinDimAlgebra:
        return end_algebra(self.X)[0]

    def h0_dim(self) -> int:
        return self.H.dim(0)


def dg_end_algebra(X: ProjComplex) -> TruncatedEnd:
    """Truncated dg endomorphism algebra of X; its H^0 is ``End_K(X)``."""
    return TruncatedEnd(X)


def _combine(basis: Sequence[ChainMap], coeffs: Sequence, X: ProjComplex, Y: ProjComplex) -> ChainMap:
    out = ChainMap.zero(X, Y)
    for f, c in zip(basis, coeffs):
        if c:
            out = out.plus(f, c)
    return out


def _lift_chain_idempotent(e: ChainMap) -> ChainMap:
    for _ in range(64):
        e2 = e.compose(e)
        diff = e2.plus(e, -ONE)
        if diff.is_zero():
            return e
        e3 = e2.compose(e)
        e = e2.scale(Fraction(3)).plus(e3, Fraction(-2))
    raise RuntimeError("idempotent lifting did not converge")


def _split_image(e: ChainMap) -> tuple[ProjComplex, ChainMap, ChainMap]:
    """Summand ``im e`` with ``iota: im e -> X`` and ``pi: X -> im e``."""
    X = e.source
    A = X.algebra
    sel: dict = {}
    for d in X.degrees():
        src = X.term(d)
        m = e.comp(d)
        chosen = []
        for v in sorted(set(src)):
            idx = [k for k, i in enumerate(src) if i == v]
            scal = [[m[r][c].get(A.idempotents[v], ZERO) for c in idx] for r in idx]
            chosen.extend(_principal_basis(scal, idx))
        chosen.sort()
        sel[d] = chosen
    terms = {d: tuple(X.term(d)[k] for k in s) for d, s in sel.items() if s}
    iota_c, pi_c = {}, {}
    for d, s in sel.items():
        if not s:
            continue
        src = X.term(d)
        incl = mat_select(mat_identity(A, src), range(len(src)), s)
        proj = mat_select(mat_identity(A, src), s, range(len(src)))
        ei = mat_mul(A, e.comp(d), incl)
        M = mat_mul(A, proj, ei)
        Minv = mat_inverse(A, M, [src[k] for k in s])
        iota_c[d] = ei
        pi_c[d] = mat_mul(A, Minv, mat_mul(A, proj, e.comp(d)))
    diffs = {}
    for d in terms:
        if d + 1 in terms:
            diffs[d] = mat_mul(A, pi_c[d + 1], mat_mul(A, X.diff(d), iota_c[d]))
    S = ProjComplex(A, terms, diffs)
    return S, ChainMap(S, X, iota_c), ChainMap(X, S, pi_c)


def _principal_basis(scal: list, idx: list) -> list:
    """Greedy index subset with an invertible principal minor of full rank."""
    n = len(idx)
    rank = _rank(scal)
    chosen: list[int] = []
    for k in range(n):
        trial = chosen + [k]
        sub = [[scal[a][b] for b in trial] for a in trial]
        if _scalar_inverse(sub) is not None:
            chosen = trial
        if len(chosen) == rank:
            break
    if len(chosen) != rank:
        from itertools import combinations

        for comb in combinations(range(n), rank):
            sub = [[scal[a][b] for b in comb] for a in comb]
            if _scalar_inverse(sub) is not None:
                chosen = list(comb)
                break
    return [idx[k] for k in chosen]


def _rank(m: list) -> int:
    ech = Echelon()
    r = 0
    for row in m:
        if ech.add({k: v for k, v in enumerate(row) if v}):
            r += 1
    return r


def decompose(X: ProjComplex) -> list[ProjComplex]:
    """Indecomposable summands of a complex, each minimal."""
    X = minimize(X)
    if X.is_zero():
        return []
    E, basis, _ = end_algebra(X)
    idem = primitive_idempotents(E)
    if len(idem) <= 1:
        return [X]
    e = _lift_chain_idempotent(_combine(basis, idem[0], X, X))
    S, _, _ = _split_image(e)
    comp = ChainMap.identity(X).plus(e, -ONE)
    T, _, _ = _split_image(comp)
    return [minimize(S)] + decompose(T)


def _indecomposables_isomorphic(X: ProjComplex, Y: ProjComplex) -> bool:
    if X.signature() != Y.signature():
        return False
    F = HomComplex(X, Y).basis(0)
    G = HomComplex(Y, X).basis(0)
    for f in F:
        for g in G:
            if _invertible_mod_radical(g.compose(f)):
                return True
    return False


def is_isomorphic(X: ProjComplex, Y: ProjComplex, seed: int = 0) -> bool:
    """Isomorphism in the homotopy category."""
    X, Y = minimize(X), minimize(Y)
    if X.signature() != Y.signature():
        return False
    if X.is_zero():
        return True
    F = HomComplex(X, Y).basis(0)
    if not F:
        return False
    rng = random.Random(seed)
    for _ in range(3):
        f = _combine(F, [Fraction(rng.randint(-97, 97)) for _ in F], X, Y)
        if _invertible_mod_radical(f):
            return True
    xs, ys = decompose(X), decompose(Y)
    if len(xs) != len(ys):
        return False
    used = [False] * len(ys)
    for P in xs:
        for k, Q in enumerate(ys):
            if not used[k] and _indecomposables_isomorphic(P, Q):
                used[k] = True
                break
        else:
            return False
    return True


def is_indecomposable(X: ProjComplex) -> bool:
    return len(decompose(X)) == 1


def random_chain_map(X: ProjComplex, Y: ProjComplex, rng: random.Random) -> ChainMap:
    F = HomComplex(X, Y).basis(0)
    return _combine(F, [Fraction(rng.randint(-5, 5)) for _ in F], X, Y)
