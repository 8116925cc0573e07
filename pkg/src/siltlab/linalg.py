"""Exact linear algebra over the rationals.

Vectors are handled internally as sparse dicts ``{index: Fraction}``; the
public helpers accept and return dense lists so callers never see the
sparse form unless they ask for it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import sympy

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def sparse(vec: Sequence) -> dict:
    return {i: frac(v) for i, v in enumerate(vec) if v}


def dense(vec: dict, n: int) -> list:
    out = [ZERO] * n
    for i, v in vec.items():
        out[i] = v
    return out


def axpy(y: dict, a: Fraction, x: dict) -> None:
    """In place ``y += a * x`` on sparse vectors."""
    if not a:
        return
    for k, v in x.items():
        nv = y.get(k, ZERO) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def scaled(x: dict, a: Fraction) -> dict:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


class RatMatrix:
    """Dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        grid = [[frac(x) for x in row] for row in entries]
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(grid)
        self.cols = cols
        self.entries = grid

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"RatMatrix({[[str(x) for x in r] for r in self.entries]})"

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.entries):
            orow = out[i]
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in enumerate(other.entries[k]):
                    if b:
                        orow[j] += a * b
        return RatMatrix(out, other.cols)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.cols,
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.cols,
        )

    def scale(self, c) -> "RatMatrix":
        c = frac(c)
        return RatMatrix([[c * a for a in r] for r in self.entries], self.cols)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.rows,
        )

    def apply(self, vec: Sequence) -> list:
        return [sum((a * frac(v) for a, v in zip(row, vec) if a), ZERO) for row in self.entries]

    def is_zero(self) -> bool:
        return all(not a for row in self.entries for a in row)

    def sparse_rows(self) -> list[dict]:
        return [sparse(r) for r in self.entries]


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    With ``track=True`` every stored row remembers how it was built from the
    vectors passed to :meth:`add`, so membership tests can also return
    coordinates with respect to those generators.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, dict] = {}
        self.combos: dict[int, dict] = {}
        self.track = track
        self.count = 0

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Return ``(remainder, combo)`` with ``vec = remainder + span part``.

        ``combo`` expresses the span part in the added generators (only when
        tracking).
        """
        rem = dict(vec)
        combo: dict = {}
        for p in [k for k in vec if k in self.rows]:
            c = rem.get(p)
            if not c:
                continue
            axpy(rem, -c, self.rows[p])
            if self.track:
                axpy(combo, c, self.combos[p])
        return rem, combo

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def add(self, vec: dict) -> bool:
        """Add a vector; return True when it enlarged the span."""
        gen = self.count
        self.count += 1
        rem, combo = self.reduce(vec)
        if not rem:
            return False
        p = min(rem)
        c = rem[p]
        inv = ONE / c
        row = scaled(rem, inv)
        if self.track:
            own = scaled(combo, -inv)
            axpy(own, inv, {gen: ONE})
        for q, other in self.rows.items():
            a = other.get(p)
            if a:
                axpy(other, -a, row)
                if self.track:
                    axpy(self.combos[q], -a, own)
        self.rows[p] = row
        if self.track:
            self.combos[p] = own
        return True

    def coordinates(self, vec: dict) -> dict | None:
        """Coordinates of ``vec`` in the added generators, or None."""
        rem, combo = self.reduce(vec)
        if rem:
            return None
        return combo

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]

    def pivots(self) -> list[int]:
        return sorted(self.rows)


def rref_rows(rows: Iterable[dict]) -> Echelon:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech


def kernel_sparse(rows: Sequence[dict], ncols: int) -> list[dict]:
    """Basis of ``{x : row . x = 0 for all rows}``."""
    ech = rref_rows(rows)
    piv = ech.rows
    out = []
    for f in range(ncols):
        if f in piv:
            continue
        v = {f: ONE}
        for p, row in piv.items():
            a = row.get(f)
            if a:
                v[p] = -a
        out.append(v)
    return out


def rank_sparse(rows: Iterable[dict]) -> int:
    return len(rref_rows(rows))


def columns_to_rows(cols: Sequence[dict]) -> list[dict]:
    """Transpose a list of sparse column vectors into sparse rows."""
    rows: dict[int, dict] = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    return list(rows.values())


def solve_sparse(rows: Sequence[dict], ncols: int, rhs: dict) -> dict | None:
    """Solve ``A x = b`` for sparse rows of A; None when inconsistent."""
    aug = []
    for i, r in enumerate(rows):
        row = dict(r)
        b = rhs.get(i)
        if b:
            row[ncols] = b
        aug.append(row)
    ech = rref_rows(aug)
    if ncols in ech.rows:
        return None
    x = {}
    for p, row in ech.rows.items():
        b = row.get(ncols)
        if b:
            x[p] = b
    return x


def rank_kernel(A: RatMatrix) -> tuple[int, list[list[Fraction]]]:
    """Rank of A and a basis of its right kernel as dense column vectors."""
    rows = A.sparse_rows()
    ech = rref_rows(rows)
    ker = kernel_sparse(rows, A.cols)
    return len(ech), [dense(v, A.cols) for v in ker]


def solve(A: RatMatrix, b: Sequence) -> list[Fraction] | None:
    """A solution of ``A x = b`` or None if the system is inconsistent."""
    if len(b) != A.rows:
        raise ValueError("right-hand side has wrong length")
    x = solve_sparse(A.sparse_rows(), A.cols, sparse(b))
    return None if x is None else dense(x, A.cols)


def det(A: RatMatrix) -> Fraction:
    if A.rows != A.cols:
        raise ValueError("det of non-square matrix")
    m = [list(r) for r in A.entries]
    n = A.rows
    d = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        inv = ONE / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return d


# ---------------------------------------------------------------------------
# finite-dimensional algebras


class FinDimAlgebra:
    """Associative unital algebra given by structure constants.

    ``mult[i][j]`` is a sparse dict giving ``b_i * b_j`` in the basis.
    """

    def __init__(self, dim: int, mult, unit: Sequence):
        self.dim = dim
        self.mult = [
            [row[j] if isinstance(row[j], dict) else sparse(row[j]) for j in range(dim)]
            for row in mult
        ]
        self.unit = [frac(u) for u in unit]
        if len(self.unit) != dim:
            raise ValueError("unit has wrong length")

    @classmethod
    def from_tensor(cls, tensor, unit) -> "FinDimAlgebra":
        dim = len(unit)
        mult = [[sparse(tensor[i][j]) for j in range(dim)] for i in range(dim)]
        return cls(dim, mult, unit)

    def mul_sparse(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            row = self.mult[i]
            for j, b in y.items():
                axpy(out, a * b, row[j])
        return out

    def mul(self, x: Sequence, y: Sequence) -> list:
        return dense(self.mul_sparse(sparse(x), sparse(y)), self.dim)

    def basis_vector(self, i: int) -> list:
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    def check_associative(self) -> bool:
        b = [{i: ONE} for i in range(self.dim)]
        for x in b:
            for y in b:
                xy = self.mul_sparse(x, y)
                for z in b:
                    if self.mul_sparse(xy, z) != self.mul_sparse(x, self.mul_sparse(y, z)):
                        return False
        return True

    def check_unit(self) -> bool:
        u = sparse(self.unit)
        for i in range(self.dim):
            x = {i: ONE}
            if self.mul_sparse(u, x) != x or self.mul_sparse(x, u) != x:
                return False
        return True

    def trace_of_left_mult(self, i: int) -> Fraction:
        return sum((self.mult[i][j].get(j, ZERO) for j in range(self.dim)), ZERO)


def radical(A: FinDimAlgebra) -> list[list[Fraction]]:
    """Basis of the Jacobson radical via the trace form (characteristic 0)."""
    return [dense(v, A.dim) for v in _radical_sparse(A)]


def _radical_sparse(A: FinDimAlgebra) -> list[dict]:
    traces = [A.trace_of_left_mult(k) for k in range(A.dim)]
    rows = []
    for i in range(A.dim):
        row = {}
        for j in range(A.dim):
            t = sum((c * traces[k] for k, c in A.mult[i][j].items()), ZERO)
            if t:
                row[j] = t
        rows.append(row)
    # the trace form is symmetric, so its kernel is the radical
    return kernel_sparse(rows, A.dim)


def _power_sequence_minpoly(A, x, unit, rad_ech):
    """Minimal polynomial of the image of x modulo the span in ``rad_ech``."""
    powers = Echelon(track=True)
    p = dict(unit)
    k = 0
    while True:
        rem, _ = rad_ech.reduce(p)
        coords = powers.coordinates(rem)
        if coords is not None:
            t = sympy.Symbol("t")
            poly = t**k - sum(sympy.Rational(c.numerator, c.denominator) * t**j for j, c in coords.items())
            return sympy.Poly(poly, t, domain="QQ")
        powers.add(rem)
        p = A.mul_sparse(x, p)
        k += 1


def _eval_poly(A, poly: sympy.Poly, x: dict, unit: dict) -> dict:
    out: dict = {}
    for c in poly.all_coeffs():
        out = A.mul_sparse(out, x)
        axpy(out, Fraction(int(c.p), int(c.q)), unit)
    return out


def _lift_idempotent(A, e: dict) -> dict:
    while True:
        e2 = A.mul_sparse(e, e)
        if e2 == e:
            return e
        e3 = A.mul_sparse(e2, e)
        nxt = scaled(e2, Fraction(3))
        axpy(nxt, Fraction(-2), e3)
        e = nxt


def _candidates(vectors: list[dict]):
    for v in vectors:
        yield v
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            s = dict(vectors[i])
            axpy(s, ONE, vectors[j])
            yield s
            s = dict(vectors[i])
            axpy(s, Fraction(2), vectors[j])
            yield s


def _idempotent_in_right_ideal(A, y: dict, corner: list[dict], rad_ech: Echelon, e: dict):
    """Idempotent (mod radical) generating the right ideal y*corner."""
    gens = Echelon()
    for c in corner:
        gens.add(A.mul_sparse(y, c))
    # work modulo the radical
    w = []
    red = Echelon()
    for v in gens.basis():
        rem, _ = rad_ech.reduce(v)
        if rem and red.add(rem):
            w.append(rem)
    if not w:
        return None
    rad_basis = rad_ech.basis()
    n_c, n_r = len(w), len(rad_basis)
    # unknowns: c_k (k < n_c), then d_{l,r}
    eqs: dict = {}
    rhs: dict = {}
    row_index = {}

    def row_of(l, coord):
        key = (l, coord)
        if key not in row_index:
            row_index[key] = len(row_index)
            eqs[row_index[key]] = {}
        return row_index[key]

    for l, wl in enumerate(w):
        for k, wk in enumerate(w):
            prod = A.mul_sparse(wk, wl)
            for coord, val in prod.items():
                r = row_of(l, coord)
                eqs[r][k] = eqs[r].get(k, ZERO) + val
        for ri, rv in enumerate(rad_basis):
            col = n_c + l * n_r + ri
            for coord, val in rv.items():
                r = row_of(l, coord)
                eqs[r][col] = eqs[r].get(col, ZERO) - val
        for coord, val in wl.items():
            r = row_of(l, coord)
            rhs[r] = rhs.get(r, ZERO) + val
    rows = [{k: v for k, v in eqs[i].items() if v} for i in range(len(row_index))]
    sol = solve_sparse(rows, n_c + len(w) * n_r, rhs)
    if sol is None:
        return None
    eps: dict = {}
    for k in range(n_c):
        axpy(eps, sol.get(k, ZERO), w[k])
    return A.mul_sparse(A.mul_sparse(e, eps), e)


def _split(A: FinDimAlgebra, e: dict, rad: list[dict]) -> list[dict]:
    corner = Echelon()
    for i in range(A.dim):
        corner.add(A.mul_sparse(A.mul_sparse(e, {i: ONE}), e))
    rad_ech = Echelon()
    for r in rad:
        rad_ech.add(A.mul_sparse(A.mul_sparse(e, r), e))
    quotient = []
    for v in corner.basis():
        rem, _ = rad_ech.reduce(v)
        if rem:
            probe = Echelon()
            for q in quotient:
                probe.add(q)
            if probe.add(rem):
                quotient.append(rem)
    if len(quotient) <= 1:
        return [e]
    corner_basis = corner.basis()
    for x in _candidates(quotient):
        f = _power_sequence_minpoly(A, x, e, rad_ech)
        _, factors = sympy.factor_list(f)
        if len(factors) >= 2:
            g = factors[0][0] ** factors[0][1]
            h = sympy.Poly(sympy.quo(f.as_expr(), g.as_expr()), f.gen, domain="QQ")
            s, t, _ = sympy.gcdex(g, h)
            q = sympy.Poly(sympy.rem((t * h).as_expr(), f.as_expr()), f.gen, domain="QQ")
            eps = _eval_poly(A, q, x, e)
        elif factors and factors[0][1] >= 2:
            g = factors[0][0]
            y = _eval_poly(A, g, x, e)
            eps = _idempotent_in_right_ideal(A, y, corner_basis, rad_ech, e)
            if eps is None:
                continue
        else:
            continue
        eps = _lift_idempotent(A, eps)
        if not eps or eps == e:
            continue
        rest = dict(e)
        axpy(rest, -ONE, eps)
        return _split(A, eps, rad) + _split(A, rest, rad)
    return [e]


def primitive_idempotents(A: FinDimAlgebra) -> list[list[Fraction]]:
    """A complete set of primitive orthogonal idempotents summing to 1."""
    unit = sparse(A.unit)
    if not unit:
        return []
    rad = _radical_sparse(A)
    return [dense(e, A.dim) for e in _split(A, unit, rad)]


def is_local(A: FinDimAlgebra) -> bool:
    return len(primitive_idempotents(A)) == 1
