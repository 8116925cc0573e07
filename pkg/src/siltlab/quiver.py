"""Quivers with relations and their finite-dimensional path algebras.

Paths are written left to right: the word ``(a, b)`` means "traverse a,
then b", so it is only defined when ``target(a) == source(b)``.  Modules
are right modules and ``P_i = e_i A`` is spanned by the paths starting at
vertex i.  A morphism ``P_i -> P_j`` is left multiplication by an element
of ``e_j A e_i``, i.e. by a combination of paths from j to i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotAdmissible, NotFiniteDimensional, UnknownVertex
from .linalg import ONE, ZERO, Echelon, FinDimAlgebra, axpy, scaled


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (label, source, target)

    def __post_init__(self):
        labels = [str(v) for v in self.vertices]
        if len(set(labels)) != len(labels):
            raise ValueError("vertex labels must be unique")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow labels must be unique")
        vs = set(labels)
        for name, s, t in self.arrows:
            if str(s) not in vs or str(t) not in vs:
                raise UnknownVertex(f"arrow {name} has an undeclared endpoint")

    @classmethod
    def make(cls, vertices, arrows) -> "Quiver":
        return cls(tuple(str(v) for v in vertices), tuple((str(a), str(s), str(t)) for a, s, t in arrows))

    def vertex_index(self, label) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise UnknownVertex(f"unknown vertex {label!r}") from None

    def arrow_index(self, label) -> int:
        for k, a in enumerate(self.arrows):
            if a[0] == label:
                return k
        raise KeyError(f"unknown arrow {label!r}")

    def source(self, k: int) -> int:
        return self.vertex_index(self.arrows[k][1])

    def target(self, k: int) -> int:
        return self.vertex_index(self.arrows[k][2])


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: tuple = ()  # each: tuple of (coefficient, tuple of arrow labels)
    length_cap: int = 64


class PathAlgebra:
    """Basis, multiplication table and idempotents of ``KQ/I``."""

    def __init__(self, quiver, words, sources, targets, mult, relations, length_cap, name=""):
        self.quiver = quiver
        self.words = words  # tuple of arrow indices; () for idempotents
        self.sources = sources
        self.targets = targets
        self.mult = mult
        self.relations = relations  # list of list of (Fraction, word)
        self.length_cap = length_cap
        self.name = name
        self.n = len(quiver.vertices)
        self.dim = len(words)
        self.idempotents = [None] * self.n
        for k, w in enumerate(words):
            if not w:
                self.idempotents[sources[k]] = k
        self.arrow_basis = {}
        for k, w in enumerate(words):
            if len(w) == 1:
                self.arrow_basis[w[0]] = k
        self._blocks: dict = {}
        for k in range(self.dim):
            self._blocks.setdefault((sources[k], targets[k]), []).append(k)
        self._op = None

    # -- basic data -------------------------------------------------------
    def length(self, k: int) -> int:
        return len(self.words[k])

    def label(self, k: int) -> str:
        w = self.words[k]
        if not w:
            return "e" + self.quiver.vertices[self.sources[k]]
        return "*".join(self.quiver.arrows[a][0] for a in w)

    def block(self, s: int, t: int) -> list[int]:
        """Basis indices of paths from s to t, i.e. of ``e_s A e_t``."""
        return self._blocks.get((s, t), [])

    def hom_basis_proj(self, i, j) -> list[int]:
        """Basis of Hom(P_i, P_j) = e_j A e_i (vertex labels or indices)."""
        i = self._vertex(i)
        j = self._vertex(j)
        return list(self.block(j, i))

    def _vertex(self, v) -> int:
        if isinstance(v, int) and 0 <= v < self.n:
            return v
        return self.quiver.vertex_index(v)

    def idempotent(self, v: int) -> dict:
        return {self.idempotents[v]: ONE}

    def unit(self) -> dict:
        return {e: ONE for e in self.idempotents}

    # -- arithmetic -------------------------------------------------------
    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            row = self.mult[i]
            for j, b in y.items():
                r = row[j]
                if r:
                    axpy(out, a * b, r)
        return out

    def path_element(self, word: Sequence[int], start: int | None = None) -> dict:
        if not word:
            if start is None:
                raise ValueError("empty path needs a vertex")
            return self.idempotent(start)
        out = {self.arrow_basis[word[0]]: ONE}
        for a in word[1:]:
            out = self.mul(out, {self.arrow_basis[a]: ONE})
        return out

    def idempotent_coefficient(self, x: dict, v: int) -> Fraction:
        return x.get(self.idempotents[v], ZERO)

    def radical_part(self, x: dict) -> dict:
        return {k: c for k, c in x.items() if self.words[k]}

    def inverse_in_corner(self, x: dict, v: int) -> dict:
        """Inverse of a unit of ``e_v A e_v``."""
        lam = self.idempotent_coefficient(x, v)
        if not lam:
            raise ZeroDivisionError("element is not invertible")
        nil = scaled(self.radical_part(x), -ONE / lam)
        out = self.idempotent(v)
        term = self.idempotent(v)
        while True:
            term = self.mul(term, nil)
            if not term:
                break
            axpy(out, ONE, term)
        return scaled(out, ONE / lam)

    def loewy_bound(self) -> int:
        return max((len(w) for w in self.words), default=0) + 1

    def as_findim(self) -> FinDimAlgebra:
        return FinDimAlgebra(self.dim, self.mult, [ONE if not w else ZERO for w in self.words])

    # -- derived algebras -------------------------------------------------
    def opposite(self) -> "PathAlgebra":
        """Opposite algebra sharing this algebra's basis indices."""
        if self._op is None:
            q = self.quiver
            rq = Quiver(q.vertices, tuple((a, t, s) for a, s, t in q.arrows))
            words = [tuple(reversed(w)) for w in self.words]
            mult = [[self.mult[j][i] for j in range(self.dim)] for i in range(self.dim)]
            rels = [[(c, tuple(reversed(w))) for c, w in r] for r in self.relations]
            op = PathAlgebra(rq, words, list(self.targets), list(self.sources), mult, rels, self.length_cap, self.name + "^op")
            op._op = self
            self._op = op
        return self._op

    def ideal_generated_by_idempotents(self, vertices: Sequence[int]) -> Echelon:
        """Span of ``A e A`` for ``e = sum of e_v`` over the given vertices."""
        ech = Echelon()
        for v in vertices:
            for x in range(self.dim):
                if self.targets[x] != v:
                    continue
                for y in range(self.dim):
                    if self.sources[y] != v:
                        continue
                    ech.add(self.mult[x][y])
        return ech

    def describe(self) -> dict:
        by_length: dict[int, int] = {}
        for w in self.words:
            by_length[len(w)] = by_length.get(len(w), 0) + 1
        return {
            "dim": self.dim,
            "vertices": list(self.quiver.vertices),
            "basis": [self.label(k) for k in range(self.dim)],
            "basis_count_by_length": {str(k): v for k, v in sorted(by_length.items())},
        }

    def __repr__(self) -> str:
        return f"PathAlgebra({self.name or 'anonymous'}, dim={self.dim})"


def _normalize_relation(quiver: Quiver, rel) -> list:
    terms: dict = {}
    for coeff, word in rel:
        idx = tuple(quiver.arrow_index(a) for a in word)
        c = Fraction(coeff)
        terms[idx] = terms.get(idx, ZERO) + c
    out = [(c, w) for w, c in sorted(terms.items()) if c]
    if not out:
        return out
    ends = set()
    lengths = set()
    for c, w in out:
        if len(w) < 2:
            raise NotAdmissible("relation involves a path of length < 2")
        for a, b in zip(w, w[1:]):
            if quiver.target(a) != quiver.source(b):
                raise NotAdmissible("relation contains a non-composable path")
        ends.add((quiver.source(w[0]), quiver.target(w[-1])))
        lengths.add(len(w))
    if len(ends) != 1:
        raise NotAdmissible("relation mixes paths with different endpoints")
    if len(lengths) != 1:
        raise NotAdmissible("relation mixes paths of different lengths")
    return out


def build_algebra(p: AlgebraPresentation, name: str = "") -> PathAlgebra:
    """Reduce paths modulo the ideal degree by degree."""
    q = p.quiver
    rels = [r for r in (_normalize_relation(q, rel) for rel in p.relations) if r]
    n = len(q.vertices)
    narrows = len(q.arrows)
    words: list[tuple] = []
    sources: list[int] = []
    targets: list[int] = []
    for v in range(n):
        words.append(())
        sources.append(v)
        targets.append(v)
    levels = [list(range(n))]
    # nf[(basis index, arrow)] = normal form of basis element times arrow
    nf: dict = {}

    def times_word(vec: dict, word) -> dict:
        for a in word:
            nxt: dict = {}
            for k, c in vec.items():
                r = nf.get((k, a))
                if r:
                    axpy(nxt, c, r)
            vec = nxt
        return vec

    L = 0
    while True:
        L += 1
        prev = levels[-1]
        cand = [(k, a) for k in prev for a in range(narrows) if targets[k] == q.source(a)]
        if not cand:
            break
        if L > p.length_cap:
            raise NotFiniteDimensional(f"paths of length {L} survive past the cap {p.length_cap}")
        col = {c: i for i, c in enumerate(cand)}
        # larger words become pivots so normal forms favour small words
        order = sorted(range(len(cand)), key=lambda i: (words[cand[i][0]] + (cand[i][1],)), reverse=True)
        rank_of = {ci: r for r, ci in enumerate(order)}
        ech = Echelon()
        for rel in rels:
            ell = len(rel[0][1])
            if ell > L:
                continue
            s0 = q.source(rel[0][1][0])
            for u in levels[L - ell]:
                if targets[u] != s0:
                    continue
                vec: dict = {}
                for c, w in rel:
                    head = times_word({u: ONE}, w[:-1])
                    for k, hc in head.items():
                        key = (k, w[-1])
                        if key in col:
                            axpy(vec, c * hc, {rank_of[col[key]]: ONE})
                if vec:
                    ech.add(vec)
        pivots = ech.rows
        new_level = []
        slot = {}
        for r, ci in enumerate(order):
            if r in pivots:
                continue
            k, a = cand[ci]
            idx = len(words)
            words.append(words[k] + (a,))
            sources.append(sources[k])
            targets.append(q.target(a))
            slot[r] = idx
        for r in sorted(slot, key=lambda r: slot[r]):
            new_level.append(slot[r])
        for r, ci in enumerate(order):
            if r in slot:
                nf[cand[ci]] = {slot[r]: ONE}
            else:
                row = pivots[r]
                nf[cand[ci]] = {slot[f]: -c for f, c in row.items() if f != r}
        if not new_level:
            break
        levels.append(new_level)
    dim = len(words)
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for x in range(dim):
        for y in range(dim):
            if targets[x] != sources[y]:
                continue
            if not words[y]:
                mult[x][y] = {x: ONE}
            elif not words[x]:
                mult[x][y] = {y: ONE}
            else:
                mult[x][y] = times_word({x: ONE}, words[y])
    return PathAlgebra(q, words, sources, targets, mult, rels, p.length_cap, name)
