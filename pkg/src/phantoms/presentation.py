"""Quivers with relations: parsing, printing, path arithmetic and classification.

Paths compose right to left: ``q*p`` means "first p, then q".  Internally a
``Path`` stores its arrows in the order they are applied, so the DSL line
``relation b * a`` becomes the path with arrows ``("a", "b")``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .linalg import Field

NILPOTENCY_CAP = 64
PATH_COUNT_CAP = 200_000


class PresentationError(ValueError):
    """Raised for malformed or inadmissible presentations."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex name")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate arrow name")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise PresentationError(f"arrow {a.name} references an unknown vertex")


@dataclass(frozen=True)
class Path:
    """A path of the quiver; ``arrows`` are listed in application order."""

    start: str
    end: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def first(self) -> str | None:
        return self.arrows[0] if self.arrows else None

    @property
    def last(self) -> str | None:
        return self.arrows[-1] if self.arrows else None

    def sort_key(self, vertex_index=None):
        vi = vertex_index[self.start] if vertex_index else 0
        return (self.length, self.arrows, vi)

    def __str__(self):
        if not self.arrows:
            return f"e{self.start}"
        return "*".join(reversed(self.arrows))


class _Zero:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __bool__(self):
        return False


ZERO = _Zero()


@dataclass(frozen=True)
class AlgebraClass:
    is_monomial: bool
    is_special_biserial: bool
    is_string: bool
    is_left_serial: bool
    # monomial, at most two arrows leave each vertex, every arrow has at most
    # one nonzero successor and predecessor; in-degrees are not bounded
    admits_string_calculus: bool

    def describe(self) -> str:
        if self.is_string:
            return "string algebra"
        if self.is_special_biserial:
            return "special biserial (not string)"
        if self.admits_string_calculus:
            return "monomial, string calculus applies"
        if self.is_left_serial:
            return "left serial"
        return "monomial" if self.is_monomial else "general"


@dataclass(frozen=True)
class QuiverPresentation:
    name: str
    quiver: Quiver
    monomial_relations: tuple[Path, ...]
    linear_relations: tuple[tuple[tuple[Fraction, Path], ...], ...]
    field_char: int | None = 101
    # derived data, excluded from equality
    basis: tuple[Path, ...] = field(default=(), compare=False, repr=False)
    nilpotency_bound: int = field(default=1, compare=False, repr=False)
    _derived: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def field(self) -> Field:
        return self._derived["field"]

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def arrow(self, name: str) -> Arrow:
        try:
            return self._derived["arrow_map"][name]
        except KeyError:
            raise PresentationError(f"unknown arrow {name!r}") from None

    def vertex_index(self, v: str) -> int:
        return self._derived["vertex_index"][v]

    def arrow_index(self, name: str) -> int:
        return self._derived["arrow_index"][name]

    def out_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._derived["out"].get(v, ())

    def in_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._derived["in"].get(v, ())

    @property
    def is_monomial(self) -> bool:
        return not self.linear_relations

    @property
    def cache(self) -> dict:
        """Scratch space for memo tables keyed by this presentation."""
        return self._derived.setdefault("cache", {})

    def trivial(self, v: str) -> Path:
        if v not in self._derived["vertex_index"]:
            raise PresentationError(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def path(self, arrows: Iterable[str]) -> Path:
        """Path from arrow names in application order (validated)."""
        arrows = tuple(arrows)
        if not arrows:
            raise PresentationError("use trivial() for trivial paths")
        prev = None
        for name in arrows:
            a = self.arrow(name)
            if prev is not None and prev.target != a.source:
                raise PresentationError(f"arrows {prev.name} and {name} do not compose")
            prev = a
        return Path(self.arrow(arrows[0]).source, self.arrow(arrows[-1]).target, arrows)

    def parse_path(self, text: str) -> Path:
        """Product notation ``c*b*a`` (a applied first) or ``e<vertex>``."""
        text = text.strip()
        if "*" not in text and text not in self._derived["arrow_map"]:
            v = text[1:] if text.startswith("e") else text
            if v in self._derived["vertex_index"]:
                return self.trivial(v)
        names = [t.strip() for t in text.split("*")]
        return self.path(reversed(names))

    def is_nonzero(self, p: Path) -> bool:
        """True iff the path is nonzero in the algebra."""
        if p.is_trivial:
            return True
        return bool(self.reduce(p))

    def is_basis(self, p: Path) -> bool:
        return p in self._derived["basis_set"]

    def reduce(self, p: Path) -> tuple[tuple[Path, object], ...]:
        """Expansion of a path in the basis as ((basis path, coefficient), ...)."""
        if p in self._derived["basis_set"]:
            return ((p, self.field.scalar(1)),)
        return self._derived["normal_forms"].get(p, ())

    def paths_from(self, v: str) -> tuple[Path, ...]:
        return self._derived["from"].get(v, ())

    def paths_to(self, v: str) -> tuple[Path, ...]:
        return self._derived["to"].get(v, ())

    def extend(self, p: Path, arrow: str) -> Path:
        """The path ``arrow * p`` (no zero check)."""
        a = self.arrow(arrow)
        if a.source != p.end:
            raise PresentationError(f"arrow {arrow} does not start at {p.end}")
        return Path(p.start, a.target, p.arrows + (arrow,))

    def successors(self, p: Path) -> list[str]:
        """Arrows c with c*p nonzero, declaration order."""
        return [a.name for a in self.out_arrows(p.end) if self.is_nonzero(self.extend(p, a.name))]

    def predecessors(self, p: Path) -> list[str]:
        """Arrows c with p*c nonzero, declaration order."""
        out = []
        for a in self.in_arrows(p.start):
            q = Path(a.source, p.end, (a.name,) + p.arrows)
            if self.is_nonzero(q):
                out.append(a.name)
        return out


# ---------------------------------------------------------------- building

def build_presentation(name: str, vertices, arrows, relations=(), linear_relations=(),
                       field_char: int | None = 101, cap: int = NILPOTENCY_CAP) -> QuiverPresentation:
    """Validate and derive a presentation.

    ``arrows`` are (name, source, target) triples; ``relations`` are arrow
    sequences in application order; ``linear_relations`` are lists of
    (coefficient, arrow sequence) pairs.
    """
    quiver = Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))
    amap = {a.name: a for a in quiver.arrows}

    def mkpath(seq):
        seq = tuple(seq)
        if len(seq) < 2:
            raise PresentationError(f"relation {'*'.join(reversed(seq))} has length < 2")
        for name in seq:
            if name not in amap:
                raise PresentationError(f"unknown arrow {name!r} in relation")
        for x, y in zip(seq, seq[1:]):
            if amap[x].target != amap[y].source:
                raise PresentationError(f"relation path {'*'.join(reversed(seq))} is not composable")
        return Path(amap[seq[0]].source, amap[seq[-1]].target, seq)

    mono = {mkpath(r) for r in relations}
    lin = []
    for combo in linear_relations:
        terms = [(Fraction(c), mkpath(seq)) for c, seq in combo if Fraction(c) != 0]
        if not terms:
            continue
        if len(terms) == 1:
            mono.add(terms[0][1])
            continue
        ends = {(t.start, t.end) for _, t in terms}
        if len(ends) != 1:
            raise PresentationError("linear relation mixes non-parallel paths")
        lin.append(tuple(sorted(terms, key=lambda t: (t[1].length, t[1].arrows))))
    mono_t = tuple(sorted(mono, key=lambda p: (p.length, p.arrows)))
    pres = QuiverPresentation(name, quiver, mono_t, tuple(lin), field_char)
    _derive(pres, cap)
    return pres


def _derive(pres: QuiverPresentation, cap: int) -> None:
    d = pres._derived
    d["field"] = Field(pres.field_char)
    d["vertex_index"] = {v: i for i, v in enumerate(pres.quiver.vertices)}
    d["arrow_index"] = {a.name: i for i, a in enumerate(pres.quiver.arrows)}
    d["arrow_map"] = {a.name: a for a in pres.quiver.arrows}
    out, inn = {}, {}
    for a in pres.quiver.arrows:
        out.setdefault(a.source, []).append(a)
        inn.setdefault(a.target, []).append(a)
    d["out"] = {k: tuple(v) for k, v in out.items()}
    d["in"] = {k: tuple(v) for k, v in inn.items()}

    rels = {r.arrows for r in pres.monomial_relations}
    maxrel = max((len(r) for r in rels), default=0)
    # monomial-nonzero paths, grown one arrow at a time
    layer = [Path(v, v, ()) for v in pres.quiver.vertices]
    nonzero = list(layer)
    length = 0
    while layer:
        length += 1
        if length >= cap:
            raise PresentationError(f"algebra is infinite-dimensional or has nilpotency index > {cap}")
        nxt = []
        for p in layer:
            for a in d["out"].get(p.end, ()):
                arrows = p.arrows + (a.name,)
                if any(arrows[-k:] in rels for k in range(2, min(maxrel, len(arrows)) + 1)):
                    continue
                nxt.append(Path(p.start, a.target, arrows))
        nonzero.extend(nxt)
        if len(nonzero) > PATH_COUNT_CAP:
            raise PresentationError("too many nonzero paths; algebra too large or infinite-dimensional")
        layer = nxt
    vi = d["vertex_index"]
    nonzero.sort(key=lambda p: p.sort_key(vi))

    normal_forms = {}
    basis = nonzero
    if pres.linear_relations:
        basis, normal_forms = _linear_reduce(pres, nonzero, rels, maxrel)
    basis = tuple(basis)
    d["basis_set"] = frozenset(basis)
    d["normal_forms"] = normal_forms
    frm, to = {}, {}
    for p in basis:
        frm.setdefault(p.start, []).append(p)
        to.setdefault(p.end, []).append(p)
    d["from"] = {k: tuple(v) for k, v in frm.items()}
    d["to"] = {k: tuple(v) for k, v in to.items()}
    object.__setattr__(pres, "basis", basis)
    object.__setattr__(pres, "nilpotency_bound", max(p.length for p in basis) + 1)


def _linear_reduce(pres, nonzero, rels, maxrel):
    """Quotient the monomial-nonzero paths by the ideal of the linear relations."""
    fld = Field(pres.field_char)
    index = {p: i for i, p in enumerate(nonzero)}
    ncols = len(nonzero)
    by_end, by_start = {}, {}
    for p in nonzero:
        by_end.setdefault(p.end, []).append(p)
        by_start.setdefault(p.start, []).append(p)
    rows = []
    for combo in pres.linear_relations:
        s, t = combo[0][1].start, combo[0][1].end
        for v in by_end.get(s, ()):
            for u in by_start.get(t, ()):
                row = {}
                for c, path in combo:
                    full = v.arrows + path.arrows + u.arrows
                    cand = Path(v.start, u.end, full)
                    if cand in index:
                        row[index[cand]] = row.get(index[cand], 0) + c
                if any(x != 0 for x in row.values()):
                    rows.append(row)
    if not rows:
        return nonzero, {}
    # columns ordered largest first so pivots land on the largest paths
    order = list(range(ncols - 1, -1, -1))
    mat = fld.zeros(len(rows), ncols)
    for i, row in enumerate(rows):
        for j, c in row.items():
            mat[i, order.index(j)] = fld.scalar(c)
    r, pivots = fld.rref(mat)
    pivot_paths = {nonzero[order[pc]]: i for i, pc in enumerate(pivots)}
    basis = [p for p in nonzero if p not in pivot_paths]
    normal = {}
    for p, i in pivot_paths.items():
        terms = []
        for col in range(ncols):
            c = r[i, col]
            q = nonzero[order[col]]
            if c != 0 and q != p:
                terms.append((q, fld.scalar(0) - c if fld.p is None else (-c) % fld.p))
        terms.sort(key=lambda t: t[0].sort_key())
        normal[p] = tuple(terms)
    # paths with a zeroed subpath through the normal forms are handled by the rows
    return basis, normal


# ---------------------------------------------------------------- DSL

_NAME = r"[^\W\d][\w']*|\d[\w']*"


def parse_presentation(text: str, cap: int = NILPOTENCY_CAP) -> QuiverPresentation:
    name = "unnamed"
    field_char: int | None = 101
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    relations = []
    linrels = []
    known_v = set()
    known_a = {}

    def err(msg, lineno, col=1):
        raise PresentationError(msg, lineno, col)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        line = line.strip()
        kw, _, rest = line.partition(" ")
        rest = rest.strip()
        col = indent + len(kw) + 2
        if kw == "algebra":
            if not rest or " " in rest:
                err("expected a single algebra name", lineno, col)
            name = rest
        elif kw == "field":
            if rest == "Q":
                field_char = None
            elif rest.isdigit():
                field_char = int(rest)
                try:
                    Field(field_char)
                except ValueError as e:
                    err(str(e), lineno, col)
            else:
                err("field must be a prime or Q", lineno, col)
        elif kw == "vertex":
            if not rest:
                err("expected vertex names", lineno, col)
            for tok in rest.split():
                if not re.fullmatch(_NAME, tok):
                    err(f"bad vertex name {tok!r}", lineno, indent + line.index(tok) + 1)
                if tok in known_v:
                    err(f"duplicate vertex {tok!r}", lineno, indent + line.index(tok) + 1)
                known_v.add(tok)
                vertices.append(tok)
        elif kw == "arrow":
            m = re.fullmatch(rf"({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})", rest)
            if not m:
                err("expected 'arrow <name>: <source> -> <target>'", lineno, col)
            a, s, t = m.groups()
            for v, g in ((s, 2), (t, 3)):
                if v not in known_v:
                    err(f"unknown vertex {v!r}", lineno, indent + len(kw) + 1 + m.start(g) + 1)
            if a in known_a:
                err(f"duplicate arrow {a!r}", lineno, col)
            known_a[a] = (s, t)
            arrows.append((a, s, t))
        elif kw == "relation":
            seq = _parse_product(rest, known_a, lineno, col)
            if len(seq) < 2:
                err("relations must have length >= 2", lineno, col)
            relations.append(seq)
        elif kw == "linrel":
            m = re.fullmatch(r"(.*)=\s*0", rest)
            if not m:
                err("expected 'linrel <coef> <path> [+ <coef> <path>] = 0'", lineno, col)
            terms = []
            for chunk in _split_terms(m.group(1)):
                tm = re.fullmatch(r"\s*([+-]?\s*\d+(?:/\d+)?)\s+(.+?)\s*", chunk)
                if not tm:
                    err(f"bad linear term {chunk.strip()!r}", lineno, col)
                coef = Fraction(tm.group(1).replace(" ", ""))
                seq = _parse_product(tm.group(2), known_a, lineno, col)
                if len(seq) < 2:
                    err("relation paths must have length >= 2", lineno, col)
                terms.append((coef, seq))
            linrels.append(terms)
        else:
            err(f"unknown keyword {kw!r}", lineno, indent + 1)
    if not vertices:
        raise PresentationError("presentation declares no vertices")
    try:
        return build_presentation(name, vertices, arrows, relations, linrels, field_char, cap)
    except PresentationError:
        raise
    except ValueError as e:  # pragma: no cover - defensive
        raise PresentationError(str(e)) from e


def _split_terms(s: str) -> list[str]:
    out, cur = [], ""
    for ch in s:
        if ch == "+" and cur.strip():
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return out


def _parse_product(text, known_a, lineno, col):
    names = [t.strip() for t in text.split("*")]
    for n in names:
        if n not in known_a:
            raise PresentationError(f"unknown arrow {n!r}", lineno, col)
    seq = tuple(reversed(names))
    for x, y in zip(seq, seq[1:]):
        if known_a[x][1] != known_a[y][0]:
            raise PresentationError(f"relation path {text.strip()!r} is not composable", lineno, col)
    return seq


def print_presentation(pres: QuiverPresentation) -> str:
    lines = [f"algebra {pres.name}"]
    lines.append(f"field {'Q' if pres.field_char is None else pres.field_char}")
    lines.append("vertex " + " ".join(pres.vertices))
    for a in pres.arrows:
        lines.append(f"arrow {a.name}: {a.source} -> {a.target}")
    for r in pres.monomial_relations:
        lines.append("relation " + " * ".join(reversed(r.arrows)))
    for combo in pres.linear_relations:
        terms = " + ".join(f"{c} {'*'.join(reversed(p.arrows))}" for c, p in combo)
        lines.append(f"linrel {terms} = 0")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- queries

def classify(pres: QuiverPresentation) -> AlgebraClass:
    monomial = pres.is_monomial
    out_ok = all(len(pres.out_arrows(v)) <= 2 for v in pres.vertices)
    in_ok = all(len(pres.in_arrows(v)) <= 2 for v in pres.vertices)
    unique = True
    for a in pres.arrows:
        p = Path(a.source, a.target, (a.name,))
        if len(pres.successors(p)) > 1 or len(pres.predecessors(p)) > 1:
            unique = False
            break
    sb = out_ok and in_ok and unique
    left_serial = all(len(pres.out_arrows(v)) <= 1 for v in pres.vertices)
    return AlgebraClass(
        is_monomial=monomial,
        is_special_biserial=sb,
        is_string=sb and monomial,
        is_left_serial=left_serial,
        admits_string_calculus=monomial and out_ok and unique,
    )


def path_product(pres: QuiverPresentation, q: Path, p: Path):
    """The composite q*p when it is a basis path, ``ZERO`` otherwise."""
    if p.end != q.start:
        raise PresentationError(f"cannot compose {q} after {p}: {p.end} != {q.start}")
    if p.is_trivial:
        return q
    if q.is_trivial:
        return p
    prod = Path(p.start, q.end, p.arrows + q.arrows)
    return prod if pres.is_basis(prod) else ZERO


def basis_paths(pres: QuiverPresentation) -> list[Path]:
    return list(pres.basis)


def dimension(pres: QuiverPresentation) -> int:
    return len(pres.basis)


def max_relation_length(pres: QuiverPresentation) -> int:
    lens = [r.length for r in pres.monomial_relations]
    lens += [p.length for combo in pres.linear_relations for _, p in combo]
    return max(lens, default=0)


def default_search_bound(pres: QuiverPresentation) -> int:
    return max(1, 2 * max(max_relation_length(pres), 1) * max(len(pres.arrows), 1))


def relation_matrix_check(pres, mats: dict, dims: dict) -> bool:
    """Whether arrow matrices satisfy every relation of ``pres``."""
    fld = pres.field
    for r in pres.monomial_relations:
        m = _path_matrix(fld, r, mats, dims)
        if not fld.is_zero(m):
            return False
    for combo in pres.linear_relations:
        s, t = combo[0][1].start, combo[0][1].end
        acc = fld.zeros(dims[t], dims[s])
        for c, p in combo:
            acc = fld.add(acc, fld.scale(c, _path_matrix(fld, p, mats, dims)))
        if not fld.is_zero(acc):
            return False
    return True


def _path_matrix(fld, p: Path, mats, dims):
    m = fld.eye(dims[p.start])
    for a in p.arrows:
        m = fld.matmul(mats[a], m)
    return m


path_matrix = _path_matrix

__all__ = [
    "Arrow", "Quiver", "Path", "ZERO", "AlgebraClass", "QuiverPresentation",
    "PresentationError", "build_presentation", "parse_presentation", "print_presentation",
    "classify", "path_product", "basis_paths", "dimension", "default_search_bound",
    "max_relation_length", "path_matrix", "relation_matrix_check",
]
