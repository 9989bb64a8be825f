"""Words in arrows and formal inverses, string and band modules.

Word literals are written in product form, so the rightmost letter is walked
first: over the two-loop algebra, ``alpha beta~`` starts at the vertex, walks
backwards along ``beta`` and then forwards along ``alpha``.  ``StringWord``
keeps its letters in walk order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .presentation import Path, PresentationError, QuiverPresentation


class WordError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Letter:
    arrow: str
    inverse: bool = False
    source: str = field(default="", compare=False)
    target: str = field(default="", compare=False)

    @property
    def walk_from(self) -> str:
        return self.target if self.inverse else self.source

    @property
    def walk_to(self) -> str:
        return self.source if self.inverse else self.target

    def inv(self) -> "Letter":
        return Letter(self.arrow, not self.inverse, self.source, self.target)

    def __str__(self):
        return self.arrow + ("~" if self.inverse else "")


def letter(pres: QuiverPresentation, name: str, inverse: bool = False) -> Letter:
    a = pres.arrow(name)
    return Letter(a.name, inverse, a.source, a.target)


@dataclass(frozen=True)
class StringWord:
    """A walk; ``nodes[k]`` is the vertex reached after ``k`` letters."""

    start: str
    letters: tuple[Letter, ...] = ()

    @property
    def nodes(self) -> tuple[str, ...]:
        out = [self.start]
        for l in self.letters:
            out.append(l.walk_to)
        return tuple(out)

    def __len__(self):
        return len(self.letters)

    @property
    def end(self) -> str:
        return self.letters[-1].walk_to if self.letters else self.start

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def reverse(self) -> "StringWord":
        return StringWord(self.end, tuple(l.inv() for l in reversed(self.letters)))

    def key(self):
        return (tuple((l.arrow, l.inverse) for l in self.letters), self.start)

    def canonical(self) -> "StringWord":
        r = self.reverse()
        return r if r.key() < self.key() else self

    def is_peak(self, k: int) -> bool:
        n = len(self.letters)
        left = k == 0 or self.letters[k - 1].inverse
        right = k == n or not self.letters[k].inverse
        return left and right

    def is_valley(self, k: int) -> bool:
        n = len(self.letters)
        left = k == 0 or not self.letters[k - 1].inverse
        right = k == n or self.letters[k].inverse
        return left and right

    @property
    def peaks(self) -> tuple[int, ...]:
        return tuple(k for k in range(len(self.letters) + 1) if self.is_peak(k))

    @property
    def valleys(self) -> tuple[int, ...]:
        return tuple(k for k in range(len(self.letters) + 1) if self.is_valley(k))

    def runs(self) -> list[tuple[int, int, bool]]:
        """Maximal one-direction runs as (first node, last node, inverse)."""
        out = []
        i = 0
        n = len(self.letters)
        while i < n:
            j = i
            while j + 1 < n and self.letters[j + 1].inverse == self.letters[i].inverse:
                j += 1
            out.append((i, j + 1, self.letters[i].inverse))
            i = j + 1
        return out

    def run_path(self, i: int, j: int) -> Path:
        """The path spelled by letters i..j-1 (all of one direction)."""
        ls = self.letters[i:j]
        nodes = self.nodes
        if not ls:
            return Path(nodes[i], nodes[i], ())
        if ls[0].inverse:
            return Path(nodes[j], nodes[i], tuple(l.arrow for l in reversed(ls)))
        return Path(nodes[i], nodes[j], tuple(l.arrow for l in ls))

    def arms(self, k: int) -> tuple[Path, Path]:
        """(left arm, right arm) of the peak at node k, as paths leaving it."""
        i = k
        while i > 0 and self.letters[i - 1].inverse:
            i -= 1
        j = k
        while j < len(self.letters) and not self.letters[j].inverse:
            j += 1
        return self.run_path(i, k), self.run_path(k, j)

    def decomposition(self) -> list[tuple[Path, Path]]:
        """(q_i, p_i) for each peak, left arm then right arm."""
        return [self.arms(k) for k in self.peaks]

    def __add__(self, other: "StringWord") -> "StringWord":
        if self.end != other.start:
            raise WordError(f"cannot join words at {self.end} and {other.start}")
        return StringWord(self.start, self.letters + other.letters)

    def literal(self) -> str:
        if not self.letters:
            return f"e{self.start}"
        return " ".join(str(l) for l in reversed(self.letters))

    def __str__(self):
        return self.literal()


def direct_word(p: Path, pres: QuiverPresentation) -> StringWord:
    """The walk along p (down from its start)."""
    return StringWord(p.start, tuple(letter(pres, a) for a in p.arrows))


def up_word(p: Path, pres: QuiverPresentation) -> StringWord:
    """The walk up along p, from end(p) to start(p)."""
    return StringWord(p.end, tuple(letter(pres, a, True) for a in reversed(p.arrows)))


def peak_word(pres: QuiverPresentation, v: str, left: Path, right: Path) -> StringWord:
    """String with one peak at v and the given arms."""
    w = StringWord(v, ())
    if not left.is_trivial:
        w = direct_word(left, pres).reverse()
    if not right.is_trivial:
        w = w + direct_word(right, pres)
    return w


def validate_word(pres: QuiverPresentation, w: StringWord) -> None:
    if w.start not in pres.vertices:
        raise WordError(f"unknown vertex {w.start!r}")
    cur = w.start
    for k, l in enumerate(w.letters):
        a = pres.arrow(l.arrow)
        if (a.source, a.target) != (l.source, l.target):
            raise WordError(f"letter {l} carries wrong endpoints")
        if l.walk_from != cur:
            raise WordError(f"walk broken at letter {k} ({l}): expected a letter at {cur}")
        if k and w.letters[k - 1] == l.inv():
            raise WordError(f"letter {w.letters[k - 1]} is immediately followed by its inverse")
        cur = l.walk_to
    for i, j, _ in w.runs():
        p = w.run_path(i, j)
        if not pres.is_nonzero(p):
            raise WordError(f"directed run {p} is zero in the algebra")


def make_string(pres: QuiverPresentation, letters, start: str | None = None,
                canonical: bool = True) -> StringWord:
    """Validated word from letters in walk order or from a literal string."""
    if isinstance(letters, str):
        w = parse_word(pres, letters)
    else:
        letters = tuple(letters)
        if not letters and start is None:
            raise WordError("empty word needs a base vertex")
        w = StringWord(start if start is not None else letters[0].walk_from, letters)
    validate_word(pres, w)
    return w.canonical() if canonical else w


def parse_word(pres: QuiverPresentation, text: str) -> StringWord:
    toks = text.split()
    if not toks:
        raise WordError("empty word literal")
    if len(toks) == 1 and toks[0].startswith("e") and toks[0][1:] in pres.vertices \
            and toks[0] not in {a.name for a in pres.arrows}:
        return StringWord(toks[0][1:], ())
    ls = []
    for t in reversed(toks):
        inv = t.endswith("~")
        name = t[:-1] if inv else t
        try:
            ls.append(letter(pres, name, inv))
        except PresentationError as e:
            raise WordError(str(e)) from None
    return StringWord(ls[0].walk_from, tuple(ls))


# ---------------------------------------------------------------- modules

@dataclass(frozen=True)
class LayeredGraph:
    nodes: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, int, int], ...]
    pools: tuple[tuple[int, ...], ...] = ()

    def layers(self) -> list[list[int]]:
        depth = max((l for _, l in self.nodes), default=-1)
        out = [[] for _ in range(depth + 1)]
        for i, (_, l) in enumerate(self.nodes):
            out[l].append(i)
        return out


def radical_layers(w: StringWord) -> list[int]:
    n = len(w.letters)
    layer = [0] * (n + 1)
    for i, j, inv in w.runs():
        for k in range(i, j + 1):
            depth = (j - k) if inv else (k - i)
            layer[k] = max(layer[k], depth)
    return layer


def word_graph(w: StringWord, cyclic: bool = False) -> LayeredGraph:
    nodes = w.nodes
    if cyclic:
        nodes = nodes[:-1]
    layers = radical_layers(w)
    count = len(nodes)
    out_nodes = tuple((v, layers[k]) for k, v in enumerate(nodes))
    edges = []
    for k, l in enumerate(w.letters):
        a, b = k, (k + 1) % count if cyclic else k + 1
        edges.append((l.arrow, b, a) if l.inverse else (l.arrow, a, b))
    return LayeredGraph(out_nodes, tuple(edges))


@dataclass(frozen=True)
class StringModule:
    word: StringWord
    dim_vector: tuple[tuple[str, int], ...]
    tops: tuple[tuple[int, str], ...]
    socle: tuple[tuple[int, str], ...]
    graph: LayeredGraph

    @property
    def dimension(self) -> int:
        return sum(c for _, c in self.dim_vector)


def string_module(pres: QuiverPresentation, w: StringWord) -> StringModule:
    nodes = w.nodes
    counts = {v: 0 for v in pres.vertices}
    for v in nodes:
        counts[v] += 1
    dv = tuple((v, counts[v]) for v in pres.vertices if counts[v])
    tops = tuple((k, nodes[k]) for k in w.peaks)
    soc = tuple((k, nodes[k]) for k in w.valleys)
    return StringModule(w, dv, tops, soc, word_graph(w))


# ---------------------------------------------------------------- bands

@dataclass(frozen=True)
class BandModule:
    word: StringWord          # closes up: end == start
    size: int                 # degree of the polynomial
    poly: tuple[int, ...]     # monic, coefficients low to high (last is 1)
    field_char: int | None = 101

    @property
    def dimension(self) -> int:
        return len(self.word.letters) * self.size

    def graph(self) -> LayeredGraph:
        g = word_graph(self.word, cyclic=True)
        # the companion-twisted letter links its two endpoints into a pool
        n = len(self.word.letters)
        return LayeredGraph(g.nodes, g.edges, ((n - 1, 0),) if n > 1 else ((0,),))


def companion(poly: Sequence[int], fld) -> "object":
    s = len(poly) - 1
    c = fld.zeros(s, s)
    for i in range(1, s):
        c[i, i - 1] = fld.scalar(1)
    for i in range(s):
        c[i, s - 1] = fld.scalar(-poly[i])
    return c


def poly_is_irreducible(poly: Sequence[int], p: int | None) -> bool:
    poly = list(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    if p is None:
        if deg == 1:
            return True
        if deg <= 3:
            return not _rational_roots(poly)
        raise NotImplementedError("irreducibility over Q is only checked up to degree 3")
    poly = [c % p for c in poly]
    if deg == 1:
        return True
    if deg <= 3:
        return all(_peval(poly, x, p) != 0 for x in range(p))
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            if not any(_pmod(poly, g, p)):
                return False
    return True


def _rational_roots(poly):
    from fractions import Fraction
    a0, an = poly[0], poly[-1]
    if a0 == 0:
        return [0]
    divs = lambda n: [d for d in range(1, abs(n) + 1) if n % d == 0]
    out = []
    for num in divs(a0):
        for den in divs(an):
            for s in (1, -1):
                x = Fraction(s * num, den)
                if sum(c * x ** i for i, c in enumerate(poly)) == 0:
                    out.append(x)
    return out


def _peval(poly, x, p):
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


def _monic_polys(d, p):
    import itertools
    for coeffs in itertools.product(range(p), repeat=d):
        yield list(coeffs) + [1]


def _pmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = (a[-1] * inv) % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def irreducible_polys(degree: int, p: int | None):
    """Monic irreducible polynomials with nonzero constant term, fixed order."""
    if p is None:
        raise NotImplementedError("polynomial enumeration needs a finite field")
    for g in _monic_polys(degree, p):
        if g[0] % p and poly_is_irreducible(g, p):
            yield tuple(g)


def _is_proper_power(letters) -> bool:
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and all(letters[i] == letters[i % d] for i in range(n)):
            return True
    return False


def validate_cyclic(pres: QuiverPresentation, w: StringWord) -> None:
    if not w.letters:
        raise WordError("band words are nonempty")
    if w.end != w.start:
        raise WordError("band word does not close up")
    validate_word(pres, w)
    if w.letters[-1] == w.letters[0].inv():
        raise WordError("band word backtracks at the closing point")
    if all(l.inverse == w.letters[0].inverse for l in w.letters):
        raise WordError("band word must contain direct and inverse letters")
    # runs may wrap around the closing point
    rot = _rotate_to_run_start(w)
    validate_word(pres, rot)


def _rotate_to_run_start(w: StringWord) -> StringWord:
    ls = w.letters
    n = len(ls)
    k = next(i for i in range(n) if ls[i].inverse != ls[i - 1].inverse)
    rl = ls[k:] + ls[:k]
    return StringWord(rl[0].walk_from, rl)


def make_band(pres: QuiverPresentation, letters, poly: Sequence[int]) -> BandModule:
    w = parse_word(pres, letters) if isinstance(letters, str) else StringWord(
        tuple(letters)[0].walk_from, tuple(letters))
    validate_cyclic(pres, w)
    if _is_proper_power(w.letters):
        raise WordError("band word is a proper power")
    poly = tuple(int(c) for c in poly)
    if not poly or poly[-1] != 1:
        raise WordError("band polynomial must be monic")
    p = pres.field_char
    if not poly_is_irreducible(poly, p):
        raise WordError("band polynomial must be irreducible over the field")
    if (poly[0] % p if p else poly[0]) == 0:
        raise WordError("band polynomial must have nonzero constant term")
    return BandModule(w, len(poly) - 1, poly, p)


def band_key(w: StringWord):
    """Rotation/reversal-invariant key of a cyclic word."""
    best = None
    for cand in (w, w.reverse()):
        ls = cand.letters
        for k in range(len(ls)):
            rl = ls[k:] + ls[:k]
            key = tuple((l.arrow, l.inverse) for l in rl)
            if best is None or key < best:
                best = key
    return best


# ---------------------------------------------------------------- generalized strings

@dataclass(frozen=True)
class Ray:
    preperiod: tuple[Letter, ...]
    period: tuple[Letter, ...]


@dataclass(frozen=True)
class GeneralizedString:
    """core + rays; the full word is ...period period preperiod core preperiod period...

    Ray letters are stored in walk order of the full word.  ``None`` marks a
    side that terminates.
    """

    core: StringWord
    anchor: int
    left_ray: Ray | None = None
    right_ray: Ray | None = None

    @property
    def finite(self) -> bool:
        return self.left_ray is None and self.right_ray is None


def window(g: GeneralizedString, left_steps: int, right_steps: int) -> StringWord:
    """Finite segment unrolling each ray; periodic ends are trimmed to a valley."""
    return window_with_anchor(g, left_steps, right_steps)[0]


def window_with_anchor(g: GeneralizedString, left_steps: int, right_steps: int):
    left: tuple[Letter, ...] = ()
    right: tuple[Letter, ...] = ()
    if g.left_ray is not None:
        left = g.left_ray.period * left_steps + g.left_ray.preperiod
        while left and not left[0].inverse:
            left = left[1:]
    if g.right_ray is not None:
        right = g.right_ray.preperiod + g.right_ray.period * right_steps
        while right and right[-1].inverse:
            right = right[:-1]
    letters = left + g.core.letters + right
    start = left[0].walk_from if left else g.core.start
    return StringWord(start, letters), g.anchor + len(left)


def random_word(pres: QuiverPresentation, rng, max_letters: int, start: str | None = None) -> StringWord:
    """A random valid word (random walk that keeps runs nonzero)."""
    v = start if start is not None else pres.vertices[rng.integers(len(pres.vertices))]
    w = StringWord(v, ())
    target = int(rng.integers(0, max_letters + 1))
    for _ in range(target):
        opts = extensions(pres, w)
        if not opts:
            break
        w = StringWord(w.start, w.letters + (opts[rng.integers(len(opts))],))
    return w


def extensions(pres: QuiverPresentation, w: StringWord) -> list[Letter]:
    """Letters that can be appended on the right keeping the word valid."""
    end = w.end
    out = []
    last = w.letters[-1] if w.letters else None
    for a in pres.out_arrows(end):
        l = Letter(a.name, False, a.source, a.target)
        if last is not None and last == l.inv():
            continue
        out.append(l)
    for a in pres.in_arrows(end):
        l = Letter(a.name, True, a.source, a.target)
        if last is not None and last == l.inv():
            continue
        out.append(l)
    good = []
    for l in out:
        cand = StringWord(w.start, w.letters + (l,))
        runs = cand.runs()
        i, j, _ = runs[-1]
        if pres.is_nonzero(cand.run_path(i, j)):
            good.append(l)
    return good


def enumerate_words(pres: QuiverPresentation, max_letters: int) -> list[StringWord]:
    """All valid words with at most max_letters letters, canonical, deduplicated."""
    seen = set()
    out = []
    stack = [StringWord(v, ()) for v in pres.vertices]
    while stack:
        w = stack.pop()
        c = w.canonical()
        if c not in seen:
            seen.add(c)
            out.append(c)
        if len(w.letters) < max_letters:
            for l in extensions(pres, w):
                stack.append(StringWord(w.start, w.letters + (l,)))
    out.sort(key=lambda w: (len(w.letters), w.key()))
    return out


def concat(parts: Iterable[StringWord]) -> StringWord:
    parts = list(parts)
    w = parts[0]
    for p in parts[1:]:
        w = w + p
    return w
