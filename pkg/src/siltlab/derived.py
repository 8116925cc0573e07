"""Bounded complexes of modules, projective resolutions and derived Hom.

The derived category is handled through two representations: bounded
complexes of modules (``ModuleComplex``) and bounded complexes of
projectives (``ProjComplex``).  Derived Hom is computed by resolving the
first argument and taking cohomology of the Hom complex into the second.
"""

from __future__ import annotations

from typing import Sequence

from .complexes import (
    ChainMap,
    GradedHom,
    HomComplex,
    Cohomology,
    ProjComplex,
    cone,
    graded_hom,
    mat_zero,
    minimize,
    shift,
    transpose_entries,
)
from .errors import CapExceeded, NotAComplex, NotInjectiveTerm, NotSpherical
from .linalg import ONE, ZERO, columns_to_rows, kernel_sparse, sparse
from .modules import (
    Module,
    ModuleMap,
    _coords,
    _generator_coords,
    _matrix_from_columns,
    block_map,
    direct_sum as module_sum,
    dual,
    dual_map,
    generator_map,
    image_spaces,
    is_injective,
    kernel,
    nakayama_proj_map,
    proj_sum_map,
    quotient,
    top_generators,
)
from .quiver import PathAlgebra


class ModuleComplex:
    def __init__(self, algebra: PathAlgebra, terms: dict, diffs: dict | None = None):
        self.algebra = algebra
        self.terms = {int(d): M for d, M in terms.items() if M.dim}
        self.diffs = {}
        for d, f in (diffs or {}).items():
            if d in self.terms and d + 1 in self.terms and not f.is_zero():
                self.diffs[int(d)] = f

    def term(self, d: int) -> Module:
        M = self.terms.get(d)
        if M is None:
            return Module(self.algebra, [0] * self.algebra.n, {}, check=False)
        return M

    def diff(self, d: int) -> ModuleMap:
        f = self.diffs.get(d)
        if f is None:
            return ModuleMap.zero(self.term(d), self.term(d + 1))
        return f

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def span(self) -> tuple[int, int] | None:
        if not self.terms:
            return None
        ds = self.degrees()
        return ds[0], ds[-1]

    def is_zero(self) -> bool:
        return not self.terms

    def validate(self) -> None:
        for d, f in self.diffs.items():
            if not f.is_module_map():
                raise ValueError(f"d({d}) is not a module map")
            if d + 1 in self.diffs and not self.diffs[d + 1].compose(f).is_zero():
                raise NotAComplex(d)

    def cohomology(self, d: int) -> Module:
        K, inc = kernel(self.diff(d))
        img = image_spaces(self.diff(d - 1))
        sub = []
        for v in range(self.algebra.n):
            basis = [[inc.mats[v].entries[i][j] for i in range(inc.mats[v].rows)] for j in range(inc.mats[v].cols)]
            sub.append([_coords(basis, w) for w in img[v]])
        Q, _ = quotient(K, sub)
        return Q

    def cohomology_dims(self) -> dict:
        out = {}
        for d in self.degrees():
            H = self.cohomology(d)
            if H.dim:
                out[d] = H.dims
        return out

    def __repr__(self) -> str:
        return "ModuleComplex(" + ", ".join(f"{d}:{self.terms[d].dims}" for d in self.degrees()) + ")"


def truncate_above(Y: ModuleComplex, top: int) -> ModuleComplex:
    """Smart truncation keeping cohomology in degrees ``<= top``."""
    A = Y.algebra
    terms = {d: M for d, M in Y.terms.items() if d < top}
    diffs = {d: f for d, f in Y.diffs.items() if d + 1 < top}
    K, inc = kernel(Y.diff(top))
    if K.dim:
        terms[top] = K
        f = Y.diff(top - 1)
        mats = []
        for v in range(A.n):
            m = inc.mats[v]
            basis = [[m.entries[i][j] for i in range(m.rows)] for j in range(m.cols)]
            g = f.mats[v]
            cols = [_coords(basis, [g.entries[i][j] for i in range(g.rows)]) for j in range(g.cols)]
            mats.append(_matrix_from_columns(cols, K.dims[v]))
        diffs[top - 1] = ModuleMap(Y.term(top - 1), K, mats)
    return ModuleComplex(A, terms, diffs)


def stalk(M: Module, degree: int = 0) -> ModuleComplex:
    return ModuleComplex(M.algebra, {degree: M})


def shift_modules(Y: ModuleComplex, k: int = 1) -> ModuleComplex:
    sign = -ONE if k % 2 else ONE
    return ModuleComplex(Y.algebra, {d - k: M for d, M in Y.terms.items()}, {d - k: f.scale(sign) for d, f in Y.diffs.items()})


def proj_to_module(X: ProjComplex) -> ModuleComplex:
    A = X.algebra
    terms, diffs = {}, {}
    for d in X.degrees():
        src, tgt = X.term(d), X.term(d + 1)
        S, T, f = proj_sum_map(A, src, tgt, X.diff(d) if tgt else [])
        terms[d] = S
        if tgt:
            diffs[d] = f
    return ModuleComplex(A, terms, diffs)


# ---------------------------------------------------------------------------
# projective resolutions


def _stack(A: PathAlgebra, top: Module, bottom: Module) -> Module:
    return module_sum([top, bottom], A)


def proj_resolution(Y: ModuleComplex, low: int | None = None, cap: int = 32, with_map: bool = False):
    """Minimal projective resolution ``P -> Y`` built from the top degree down.

    At each degree d the cone ``P^{d+1} + Y^d`` of the partial comparison map
    is made exact by adding one projective summand per generator of its
    cycles modulo the boundaries already present.  The result is brutally
    truncated below ``low``; with ``low=None`` it runs until it terminates,
    raising :class:`CapExceeded` after ``cap`` degrees below the support.
    """
    A = Y.algebra
    if Y.is_zero():
        out = ProjComplex(A, {})
        return (out, {}) if with_map else out
    lo, hi = Y.span()
    stop = low if low is not None else lo - cap - 1
    terms: dict = {}
    diffs: dict = {}
    phis: dict = {}
    P_mod: dict = {}  # realised P^d as a module
    d = hi
    while d >= stop:
        Yd = Y.term(d)
        Pn = P_mod.get(d + 1) or Module(A, [0] * A.n, {}, check=False)
        C = _stack(A, Pn, Yd)
        # differential C^d -> C^{d+1} = P^{d+2} + Y^{d+1}
        Pnn = P_mod.get(d + 2) or Module(A, [0] * A.n, {}, check=False)
        Cn = _stack(A, Pnn, Y.term(d + 1))
        if d + 1 in terms:
            _, _, dP = proj_sum_map(A, terms[d + 1], terms.get(d + 2, ()), diffs.get(d + 1) or mat_zero(len(terms.get(d + 2, ())), len(terms[d + 1])))
            dP = ModuleMap(Pn, Pnn, dP.mats)
            phi = ModuleMap(Pn, Y.term(d + 1), phis[d + 1].mats) if d + 1 in phis else ModuleMap.zero(Pn, Y.term(d + 1))
        else:
            dP = ModuleMap.zero(Pn, Pnn)
            phi = ModuleMap.zero(Pn, Y.term(d + 1))
        dY = Y.diff(d)
        dY = ModuleMap(Yd, Y.term(d + 1), dY.mats)
        dC = block_map(C, Cn, [Pn, Yd], [Pnn, Y.term(d + 1)], [[dP.scale(-ONE), None], [phi, dY]])
        Z, inc = kernel(dC)
        if Z.dim == 0 and d <= lo:
            break
        # boundaries coming from Y^{d-1}
        dprev = Y.diff(d - 1)
        bspaces = []
        for v in range(A.n):
            cols = []
            m = dprev.mats[v]
            for j in range(m.cols):
                col = [m.entries[i][j] for i in range(m.rows)]
                full = [ZERO] * Pn.dims[v] + col
                cols.append(full)
            basis = [[inc.mats[v].entries[i][j] for i in range(inc.mats[v].rows)] for j in range(inc.mats[v].cols)]
            bspaces.append([_coords(basis, w) for w in cols])
        gens = top_generators(Z, bspaces)
        if not gens:
            d -= 1
            continue
        verts = []
        dcol = []  # per generator: list of algebra elements into P^{d+1}
        ygens = []
        for v, g in gens:
            vec = inc.mats[v].apply(g)
            np_ = Pn.dims[v]
            pvec, yvec = vec[:np_], vec[np_:]
            verts.append(v)
            dcol.append([{k: -c for k, c in x.items()} for x in _generator_coords(A, terms.get(d + 1, ()), v, pvec)])
            ygens.append((v, yvec))
        terms[d] = tuple(verts)
        if d + 1 in terms:
            diffs[d] = [[dcol[c][r] for c in range(len(verts))] for r in range(len(terms[d + 1]))]
        Pd, phid, _ = generator_map(Yd, ygens)
        P_mod[d] = Pd
        phis[d] = phid
        d -= 1
    else:
        if low is None:
            raise CapExceeded(f"projective resolution did not terminate within {cap} degrees")
    P = ProjComplex(A, terms, diffs)
    if with_map:
        return P, phis
    return P


def resolution_terminates(Y: ModuleComplex, cap: int = 32) -> bool:
    try:
        proj_resolution(Y, None, cap)
    except CapExceeded:
        return False
    return True


# ---------------------------------------------------------------------------
# Hom from projective complexes into module complexes


class HomIntoModules:
    """``Hom^m(P, Y) = prod_d Hom(P^d, Y^{d+m})`` with ``Hom(P_i, M) = M e_i``."""

    def __init__(self, P: ProjComplex, Y: ModuleComplex):
        self.P = P
        self.Y = Y
        self.A = P.algebra
        self._index: dict = {}
        self._delta: dict = {}
        self._coh: dict = {}

    def index(self, m: int):
        if m not in self._index:
            coords = []
            for d in self.P.degrees():
                M = self.Y.terms.get(d + m)
                if M is None:
                    continue
                for c, i in enumerate(self.P.term(d)):
                    for k in range(M.dims[i]):
                        coords.append((d, c, k))
            self._index[m] = (coords, {x: n for n, x in enumerate(coords)})
        return self._index[m]

    def delta_columns(self, m: int) -> list[dict]:
        if m not in self._delta:
            P, Y = self.P, self.Y
            coords, _ = self.index(m)
            _, pos1 = self.index(m + 1)
            sign = -ONE if m % 2 else ONE
            cols = []
            for d, c, k in coords:
                i = P.term(d)[c]
                M = Y.term(d + m)
                y = [ZERO] * M.dims[i]
                y[k] = ONE
                out: dict = {}
                if d + m in Y.diffs:
                    img = Y.diffs[d + m].mats[i].apply(y)
                    for kk, v in enumerate(img):
                        if v:
                            key = pos1[(d, c, kk)]
                            out[key] = out.get(key, ZERO) + v
                if d - 1 in P.diffs:
                    for c2, x in enumerate(P.diffs[d - 1][c]):
                        if not x:
                            continue
                        i2 = P.term(d - 1)[c2]
                        img = M.act(y, x, i, i2)
                        for kk, v in enumerate(img):
                            if v:
                                key = pos1[(d - 1, c2, kk)]
                                out[key] = out.get(key, ZERO) - sign * v
                cols.append({a: v for a, v in out.items() if v})
            self._delta[m] = cols
        return self._delta[m]

    def dim(self, m: int) -> int:
        if m not in self._coh:
            n = len(self.index(m)[0])
            if n == 0:
                self._coh[m] = 0
            else:
                cycles = kernel_sparse(columns_to_rows(self.delta_columns(m)), n)
                prev = [c for c in self.delta_columns(m - 1) if c] if self.index(m - 1)[0] else []
                self._coh[m] = Cohomology(prev, cycles).dim
        return self._coh[m]


def _as_module_complex(Y) -> ModuleComplex:
    if isinstance(Y, ModuleComplex):
        return Y
    if isinstance(Y, ProjComplex):
        return proj_to_module(Y)
    if isinstance(Y, Module):
        return stalk(Y)
    raise TypeError(f"cannot use {type(Y).__name__} as an object of the derived category")


def as_proj(X, cap: int = 32) -> ProjComplex:
    """A perfect representative, resolving modules when needed."""
    if isinstance(X, ProjComplex):
        return X
    return minimize(proj_resolution(_as_module_complex(X), None, cap))


def _support_window(X, Y) -> range:
    def span(Z):
        if isinstance(Z, Module):
            return (0, 0) if Z.dim else None
        return Z.span()

    sx, sy = span(X), span(Y)
    if sx is None or sy is None:
        return range(0)
    return range(sy[0] - sx[1], sy[1] - sx[0] + 1)


def hom_derived(X, Y, window: Sequence[int] | range | None = None, margin: int = 2, check_margin: bool = False) -> GradedHom:
    """Graded dimensions of ``Hom_D(X, Sigma^m Y)`` over a window of m.

    Without a window the whole range is used; this needs a finite
    resolution of X.
    """
    if isinstance(X, ProjComplex) and isinstance(Y, ProjComplex):
        g = graded_hom(X, Y)
        if window is None:
            return g
        return GradedHom(tuple((m, d) for m, d in g.dims if m in window))
    Ym = _as_module_complex(Y)
    if Ym.is_zero():
        return GradedHom(())
    if isinstance(X, ProjComplex):
        P = X
        if window is None:
            window = _support_window(P, Ym)
        dims = _hom_dims_into(P, Ym, window)
        return GradedHom(tuple((m, d) for m, d in sorted(dims.items()) if d))
    Xm = _as_module_complex(X)
    if Xm.is_zero():
        return GradedHom(())
    if window is None:
        P = proj_resolution(Xm, None)
        window = _support_window(P, Ym)
        dims = _hom_dims_into(P, Ym, window)
        return GradedHom(tuple((m, d) for m, d in sorted(dims.items()) if d))
    window = list(window)
    dims = _windowed(Xm, Ym, window, margin)
    if check_margin:
        other = _windowed(Xm, Ym, window, margin + 1)
        assert other == dims, f"derived Hom depends on the truncation margin: {dims} vs {other}"
    return GradedHom(tuple((m, d) for m, d in sorted(dims.items()) if d))


def _windowed(Xm: ModuleComplex, Ym: ModuleComplex, window: Sequence[int], margin: int) -> dict:
    if not window:
        return {}
    low = Ym.span()[0] - max(window) - margin
    P = proj_resolution(Xm, min(low, Xm.span()[0]))
    return _hom_dims_into(P, Ym, window)


def _hom_dims_into(P: ProjComplex, Y: ModuleComplex, window) -> dict:
    H = HomIntoModules(P, Y)
    return {m: H.dim(m) for m in window}


# ---------------------------------------------------------------------------
# duality and the Nakayama functor


def dual_complex(Y: ModuleComplex) -> ModuleComplex:
    """``D Y`` over the opposite algebra, with degrees negated."""
    op = Y.algebra.opposite()
    terms = {-d: dual(M) for d, M in Y.terms.items()}
    diffs = {}
    for d, f in Y.diffs.items():
        g = dual_map(f)
        diffs[-d - 1] = ModuleMap(terms[-d - 1], terms[-d], g.mats)
    return ModuleComplex(op, terms, diffs)


def transpose(X: ProjComplex) -> ProjComplex:
    """``Hom(X, A)`` as a complex of projectives over the opposite algebra."""
    op = X.algebra.opposite()
    terms = {-d: t for d, t in X.terms.items()}
    diffs = {}
    for d, m in X.diffs.items():
        diffs[-d - 1] = transpose_entries(m)
    return ProjComplex(op, terms, diffs)


def nakayama(X: ProjComplex) -> ModuleComplex:
    """Termwise ``nu P_i = I_i``; the result is a complex of injectives."""
    A = X.algebra
    terms, diffs = {}, {}
    for d in X.degrees():
        src, tgt = X.term(d), X.term(d + 1)
        f = nakayama_proj_map(A, src, tgt, X.diff(d) if tgt else [])
        terms[d] = f.source
        if tgt:
            diffs[d] = f
    # consecutive differentials share their modules only up to equality of data
    fixed = {}
    for d, f in diffs.items():
        fixed[d] = ModuleMap(terms[d], terms[d + 1], f.mats)
    return ModuleComplex(A, terms, fixed)


def nakayama_inv_any(Y: ModuleComplex, cap: int = 32) -> ProjComplex:
    """``nu^{-1}`` of any bounded complex with a finite resolution of ``D Y``."""
    P = proj_resolution(dual_complex(Y), None, cap)
    return minimize(transpose(P))


def nakayama_inv(Y: ModuleComplex, cap: int = 32) -> ProjComplex:
    """``nu^{-1}`` on a bounded complex of injective modules."""
    for d in Y.degrees():
        if not is_injective(Y.terms[d]):
            raise NotInjectiveTerm(d)
    return nakayama_inv_any(Y, cap)


def injective_coresolution(Y: ModuleComplex, cap: int = 32) -> ModuleComplex:
    """Bounded complex of injectives quasi-isomorphic to Y."""
    P = proj_resolution(dual_complex(Y), None, cap)
    return dual_complex(proj_to_module(P))


def is_quasi_isomorphic(X, Y) -> bool:
    """Compare two objects after resolving both (needs finite resolutions)."""
    from .complexes import is_isomorphic

    return is_isomorphic(as_proj(X), as_proj(Y))


# ---------------------------------------------------------------------------
# spherical twists


def spherical_kind(E: ProjComplex) -> int:
    """The w for which E is w-spherical; raises :class:`NotSpherical`."""
    from .complexes import end_algebra
    from .linalg import radical

    g = graded_hom(E, E).as_dict()
    if g == {0: 2}:
        alg, _, _ = end_algebra(E)
        rad = radical(alg)
        if len(rad) == 1:
            r = sparse(rad[0])
            if not alg.mul_sparse(r, r):
                return 0
        raise NotSpherical("degree-0 endomorphisms do not form K[x]/x^2")
    if len(g) == 2 and g.get(0) == 1:
        w = next(m for m in g if m != 0)
        if g[w] == 1:
            return w
    raise NotSpherical(f"graded endomorphism pattern {g} is not spherical")


def evaluation_map(E: ProjComplex, X: ProjComplex) -> ChainMap:
    """``sum_m Hom(Sigma^m E, X) (x) Sigma^m E -> X`` from a basis of each Hom."""
    from .complexes import direct_sum

    A = X.algebra
    H = HomComplex(E, X)
    parts = []
    pieces = []
    for k in H.degree_range():
        for f in H.basis(k):
            # a degree-k cycle is a chain map Sigma^{-k} E -> X
            parts.append(shift(E, -k))
            pieces.append((k, f))
    if not parts:
        return ChainMap.zero(ProjComplex(A, {}), X)
    S = direct_sum(parts, A)
    comps = {}
    for d in S.degrees():
        cols = []
        for (k, f), part in zip(pieces, parts):
            n = len(part.term(d))
            blk = f.comp(d - k) if n else None
            cols.append((n, blk))
        rows = len(X.term(d))
        mat = mat_zero(rows, len(S.term(d)))
        off = 0
        for n, blk in cols:
            if n and blk is not None:
                for r in range(rows):
                    for c in range(n):
                        if blk[r][c]:
                            mat[r][off + c] = dict(blk[r][c])
            off += n
        comps[d] = mat
    return ChainMap(S, X, comps)


def twist(E: ProjComplex, X: ProjComplex) -> ProjComplex:
    """Spherical twist ``Phi_E(X)``: the minimized cone of the evaluation map."""
    spherical_kind(E)
    X = as_proj(X)
    return minimize(cone(evaluation_map(E, X)))
