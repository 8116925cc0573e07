"""Line-oriented text formats for algebras, complexes and collections.

Algebra file::

    name: Lambda0            # optional
    vertices: 1 2
    arrow a: 1 -> 2
    arrow b: 2 -> 1
    relation: b*a
    length_cap: 64           # optional

Complex file (row and column indices are 1-based)::

    degree -1: P1
    degree 0: P2
    d(-1)[1,1] = b

Collection file: complexes separated by lines ``object`` (a leading
``object`` line is optional for the first one).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .complexes import ProjComplex, format_element, mat_zero
from .errors import ParseError, UnknownVertex
from .quiver import AlgebraPresentation, PathAlgebra, Quiver

_COMMENT = re.compile(r"\s*#.*$")
_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = _COMMENT.sub("", raw).rstrip()
        if line.strip():
            yield n, line


def _col(line: str, fragment: str) -> int:
    k = line.find(fragment)
    return (k if k >= 0 else 0) + 1


# ---------------------------------------------------------------------------
# linear combinations of paths


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def _split_terms(expr: str, lineno: int, offset: int) -> list[tuple[Fraction, list[str], int]]:
    """``"3*b*a - 1/2*c"`` into ``[(3, ["b","a"]), (-1/2, ["c"])]`` with columns."""
    out = []
    pos = 0
    s = expr
    if not s.strip():
        raise ParseError("empty expression", lineno, offset + 1)
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or not m.group(2).strip():
            raise ParseError("expected a term", lineno, offset + pos + 1)
        sign = -1 if m.group(1) == "-" else 1
        if m.group(1) is None and out:
            raise ParseError("missing + or - between terms", lineno, offset + pos + 1)
        factors = [f.strip() for f in m.group(2).split("*")]
        coeff = Fraction(sign)
        words = []
        for f in factors:
            if not f:
                raise ParseError("empty factor", lineno, offset + m.start(2) + 1)
            try:
                coeff *= Fraction(f)
                continue
            except (ValueError, ZeroDivisionError):
                pass
            if not re.fullmatch(_IDENT, f):
                raise ParseError(f"bad factor {f!r}", lineno, offset + m.start(2) + 1)
            words.append(f)
        out.append((coeff, words, offset + m.start(2) + 1))
        pos = m.end()
    return out


# ---------------------------------------------------------------------------
# algebras


def parse_algebra(text: str) -> tuple[AlgebraPresentation, str]:
    """Parse an algebra file; returns the presentation and its name (may be empty)."""
    vertices = None
    arrows = []
    relations = []
    cap = 64
    name = ""
    for n, line in _lines(text):
        raw_key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", n, 1)
        key = raw_key.strip()
        offset = len(raw_key) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if key == "vertices":
            vertices = rest.split()
            if not vertices:
                raise ParseError("no vertices given", n, offset + 1)
        elif key.startswith("arrow"):
            label = key[len("arrow"):].strip()
            if not re.fullmatch(_IDENT, label):
                raise ParseError(f"bad arrow label {label!r}", n, _col(line, label) if label else 6)
            m = re.fullmatch(r"(\S+)\s*->\s*(\S+)", rest)
            if not m:
                raise ParseError("arrow needs 'source -> target'", n, offset + 1)
            arrows.append((label, m.group(1), m.group(2)))
        elif key == "relation":
            rel = []
            for coeff, words, col in _split_terms(rest, n, offset):
                if not words:
                    raise ParseError("a relation term needs a path", n, col)
                rel.append((coeff, tuple(words)))
            relations.append(tuple(rel))
        elif key == "length_cap":
            try:
                cap = int(rest)
            except ValueError:
                raise ParseError("length_cap must be an integer", n, offset + 1) from None
        elif key == "name":
            name = rest
        else:
            raise ParseError(f"unknown key {key!r}", n, 1)
    if vertices is None:
        raise ParseError("missing 'vertices:' line")
    try:
        q = Quiver.make(vertices, arrows)
    except (ValueError, UnknownVertex) as exc:
        raise ParseError(str(exc)) from None
    known = {a[0] for a in arrows}
    for rel in relations:
        for _, words in rel:
            for w in words:
                if w not in known:
                    raise ParseError(f"unknown arrow {w!r} in relation")
    return AlgebraPresentation(q, tuple(relations), cap), name


def format_algebra(p: AlgebraPresentation, name: str = "") -> str:
    lines = []
    if name:
        lines.append(f"name: {name}")
    lines.append("vertices: " + " ".join(p.quiver.vertices))
    for label, s, t in p.quiver.arrows:
        lines.append(f"arrow {label}: {s} -> {t}")
    for rel in p.relations:
        parts = []
        for c, words in rel:
            path = "*".join(words)
            mag = abs(c)
            term = path if mag == 1 else f"{mag}*{path}"
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        lines.append("relation: " + " ".join(parts))
    if p.length_cap != 64:
        lines.append(f"length_cap: {p.length_cap}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# elements and complexes


def parse_element(A: PathAlgebra, expr: str, lineno: int | None = None, offset: int = 0) -> dict:
    """An element of the algebra written as a combination of paths or ``e<vertex>``."""
    q = A.quiver
    out: dict = {}
    for coeff, words, col in _split_terms(expr, lineno, offset):
        if not words:
            raise ParseError("scalars must multiply a path or an idempotent", lineno, col)
        if len(words) == 1 and words[0].startswith("e") and words[0][1:] in q.vertices:
            x = A.idempotent(q.vertex_index(words[0][1:]))
        else:
            try:
                idx = [q.arrow_index(w) for w in words]
            except KeyError as exc:
                raise ParseError(str(exc.args[0]), lineno, col) from None
            for a, b in zip(idx, idx[1:]):
                if q.target(a) != q.source(b):
                    raise ParseError(f"path {'*'.join(words)} is not composable", lineno, col)
            x = A.path_element(idx)
        for k, v in x.items():
            out[k] = out.get(k, 0) + coeff * v
    return {k: Fraction(v) for k, v in out.items() if v}


_DEG = re.compile(r"degree\s+(-?\d+)\s*:(.*)$")
_ENTRY = re.compile(r"d\(\s*(-?\d+)\s*\)\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*=(.*)$")


def _parse_complex_lines(A: PathAlgebra, lines: list[tuple[int, str]]) -> ProjComplex:
    q = A.quiver
    terms: dict[int, tuple] = {}
    entries = []
    for n, line in lines:
        s = line.strip()
        m = _DEG.match(s)
        if m:
            d = int(m.group(1))
            if d in terms:
                raise ParseError(f"degree {d} given twice", n, 1)
            verts = []
            for tok in m.group(2).split():
                if not tok.startswith("P") or tok[1:] not in q.vertices:
                    raise ParseError(f"unknown projective {tok!r}", n, _col(line, tok))
                verts.append(q.vertex_index(tok[1:]))
            terms[d] = tuple(verts)
            continue
        m = _ENTRY.match(s)
        if m:
            entries.append((n, line, int(m.group(1)), int(m.group(2)), int(m.group(3)), m.group(4), m.start(4)))
            continue
        raise ParseError("expected 'degree d: ...' or 'd(d)[r,c] = ...'", n, 1)
    diffs: dict = {}
    for n, line, d, r, c, expr, start in entries:
        src, tgt = terms.get(d, ()), terms.get(d + 1, ())
        if not 1 <= c <= len(src) or not 1 <= r <= len(tgt):
            raise ParseError(f"entry [{r},{c}] outside the {len(tgt)}x{len(src)} matrix d({d})", n, 1)
        indent = len(line) - len(line.lstrip())
        x = parse_element(A, expr, n, indent + start)
        i, j = src[c - 1], tgt[r - 1]
        allowed = set(A.block(j, i))
        if any(k not in allowed for k in x):
            raise ParseError(
                f"entry [{r},{c}] of d({d}) must be a path from vertex {q.vertices[j]} to {q.vertices[i]}",
                n,
                indent + start + 1,
            )
        mat = diffs.setdefault(d, mat_zero(len(tgt), len(src)))
        mat[r - 1][c - 1] = x
    X = ProjComplex(A, terms, diffs)
    X.validate()
    return X


def parse_complex(text: str, A: PathAlgebra) -> ProjComplex:
    """Parse a complex file; the differential is checked to square to zero."""
    return _parse_complex_lines(A, list(_lines(text)))


def format_complex(X: ProjComplex) -> str:
    A = X.algebra
    lines = []
    for d in X.degrees():
        lines.append(f"degree {d}: " + " ".join("P" + A.quiver.vertices[v] for v in X.term(d)))
    for d in sorted(X.diffs):
        for r, row in enumerate(X.diffs[d]):
            for c, x in enumerate(row):
                if x:
                    lines.append(f"d({d})[{r + 1},{c + 1}] = {format_element(A, x)}")
    return "\n".join(lines) + "\n"


def parse_collection(text: str, A: PathAlgebra) -> list[ProjComplex]:
    blocks: list[list] = [[]]
    for n, line in _lines(text):
        if line.strip() == "object":
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append((n, line))
    return [_parse_complex_lines(A, b) for b in blocks if b]


def format_collection(objs) -> str:
    return "".join("object\n" + format_complex(X) for X in objs)


__all__ = [
    "format_algebra",
    "format_collection",
    "format_complex",
    "parse_algebra",
    "parse_collection",
    "parse_complex",
    "parse_element",
]
