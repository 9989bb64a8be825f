"""Syzygies and projective dimensions, computed on paths and words."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import oracle
from .presentation import Path, PresentationError, QuiverPresentation, classify
from .strings import (BandModule, Letter, StringWord, band_key, direct_word, extensions,
                      irreducible_polys, letter, make_band, random_word, validate_cyclic, WordError)


class AlgebraScopeError(ValueError):
    """The operation does not apply to this kind of algebra."""


@dataclass(frozen=True)
class PdimResult:
    value: int | None
    status: str = "finite"  # finite | infinite | infinite-suspected | undecided
    certificate: tuple = field(default=(), compare=False)
    cycle_start: int = field(default=0, compare=False)

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"

    def __str__(self):
        if self.is_finite:
            return str(self.value)
        return "inf" if self.status == "infinite" else self.status


def Finite(n: int) -> PdimResult:
    return PdimResult(n, "finite")


def Infinite(chain=(), cycle_start: int = 0) -> PdimResult:
    return PdimResult(None, "infinite", tuple(chain), cycle_start)


def require_monomial(pres: QuiverPresentation) -> None:
    if not pres.is_monomial:
        raise AlgebraScopeError("not a monomial algebra")


def require_string_calculus(pres: QuiverPresentation) -> None:
    cls = classify(pres)
    if cls.admits_string_calculus:
        return
    if cls.is_special_biserial:
        raise AlgebraScopeError("not a string algebra (special biserial)")
    raise AlgebraScopeError(f"not a string algebra ({cls.describe()})")


# ---------------------------------------------------------------- path modules

def path_syzygy(pres: QuiverPresentation, p: Path) -> list[Path]:
    """Minimal paths r from end(p) with r*p = 0; the syzygy of the path module is their sum."""
    require_monomial(pres)
    if not pres.is_basis(p):
        raise PresentationError(f"{p} is not a nonzero path")
    out = []
    for r in pres.paths_from(p.end):
        if r.is_trivial:
            continue
        whole = Path(p.start, r.end, p.arrows + r.arrows)
        head = Path(p.start, r.arrows and pres.arrow(r.arrows[-1]).source, p.arrows + r.arrows[:-1])
        if not pres.is_basis(whole) and pres.is_basis(head):
            out.append(r)
    return out


def path_key(pres: QuiverPresentation, p: Path):
    """Isomorphism key of the path module: end vertex plus its killers."""
    return (p.end, tuple(r.arrows for r in path_syzygy(pres, p)))


def path_pdim(pres: QuiverPresentation, p: Path) -> PdimResult:
    require_monomial(pres)
    return _dag_pdim(pres, p, lambda q: path_syzygy(pres, q), lambda q: path_key(pres, q),
                     pres.cache.setdefault("path_pdim", {}))


class _CycleFound(Exception):
    def __init__(self, result):
        self.result = result


def _dag_pdim(pres, root, children, key, memo) -> PdimResult:
    """pdim over the syzygy dependency graph; any reachable cycle means infinite.

    An infinite certificate is a chain root -> ... whose tail from
    ``cycle_start`` closes on itself under the syzygy step."""
    k0 = key(root)
    if k0 in memo:
        return memo[k0]
    on_stack: dict = {}
    chain: list = []

    def visit(node):
        k = key(node)
        hit = memo.get(k)
        if hit is not None:
            if hit.is_finite:
                return hit
            raise _CycleFound(PdimResult(None, "infinite", tuple(chain) + hit.certificate,
                                         len(chain) + hit.cycle_start))
        if k in on_stack:
            raise _CycleFound(PdimResult(None, "infinite", tuple(chain), on_stack[k]))
        on_stack[k] = len(chain)
        chain.append(node)
        best = 0
        for c in children(node):
            best = max(best, visit(c).value + 1)
        chain.pop()
        del on_stack[k]
        res = Finite(best)
        memo[k] = res
        return res

    try:
        res = visit(root)
    except _CycleFound as found:
        res = found.result
    memo[k0] = res
    return res


def verify_certificate(pres: QuiverPresentation, res: PdimResult) -> bool:
    """Each chain element has the next one among its syzygy components; the last
    one has the element at cycle_start among its components."""
    if res.is_finite or not res.certificate:
        return False
    chain = list(res.certificate)
    if isinstance(chain[0], Path):
        syz = lambda x: path_syzygy(pres, x)
        key = lambda x: path_key(pres, x)
    else:
        syz = lambda x: string_syzygy(pres, x)
        key = lambda x: x.canonical()
    targets = chain[1:] + [chain[res.cycle_start]]
    for x, y in zip(chain, targets):
        if key(y) not in {key(z) for z in syz(x)}:
            return False
    return True


# ---------------------------------------------------------------- string modules

def continuation(pres: QuiverPresentation, p: Path) -> Path:
    """Longest path r from end(p) with r*p nonzero (unique by the successor condition)."""
    arrows: list[str] = []
    cur = p
    while True:
        nxt = pres.successors(cur)
        if not nxt:
            break
        cur = pres.extend(cur, nxt[0])
        arrows.append(nxt[0])
    return Path(p.end, cur.end, tuple(arrows))


def _path_word(pres, p: Path) -> StringWord:
    """Word of the path module of p: the walk down its continuation."""
    return direct_word(continuation(pres, p), pres)


def _tail(pres, arm: Path):
    """Path module beyond the end of an arm, if any."""
    nxt = pres.successors(arm)
    if not nxt:
        return None
    return pres.extend(arm, nxt[0])


def valley_word(pres: QuiverPresentation, left_arm: Path, right_arm: Path) -> StringWord:
    """The string generated by p g - q g' at a valley where arms p (from the left) and q meet."""
    a = continuation(pres, left_arm)
    b = continuation(pres, right_arm)
    w = direct_word(a, pres).reverse() if not a.is_trivial else StringWord(left_arm.end, ())
    if not b.is_trivial:
        w = w + direct_word(b, pres)
    return w


def string_syzygy_parts(pres: QuiverPresentation, w: StringWord) -> list[tuple[str, object]]:
    """Syzygy of M(w) as ("path", p) and ("string", word) parts, in walk order."""
    require_string_calculus(pres)
    peaks = w.peaks
    n = len(w.letters)
    nodes = w.nodes
    parts: list[tuple[str, object]] = []
    for idx, k in enumerate(peaks):
        left, right = w.arms(k)
        v = nodes[k]
        used = {left.first, right.first} - {None}
        for c in pres.out_arrows(v):
            if c.name in used:
                continue
            parts.append(("path", Path(v, c.target, (c.name,))))
        # left arm reaching the left end of the word
        i = k - left.length
        if not left.is_trivial and i == 0:
            t = _tail(pres, left)
            if t is not None:
                parts.append(("path", t))
        j = k + right.length
        if not right.is_trivial and j == n:
            t = _tail(pres, right)
            if t is not None:
                parts.append(("path", t))
        if idx + 1 < len(peaks):
            nleft, _ = w.arms(peaks[idx + 1])
            parts.append(("string", valley_word(pres, right, nleft)))
    return parts


def string_syzygy(pres: QuiverPresentation, w: StringWord) -> list[StringWord]:
    out = []
    for kind, x in string_syzygy_parts(pres, w):
        out.append(_path_word(pres, x) if kind == "path" else x)
    return out


def string_pdim(pres: QuiverPresentation, w: StringWord) -> PdimResult:
    require_string_calculus(pres)
    memo = pres.cache.setdefault("string_pdim", {})
    return _dag_pdim(pres, w, lambda x: string_syzygy(pres, x), lambda x: x.canonical(), memo)


def in_finite_pdim_strings(pres: QuiverPresentation, w: StringWord) -> bool:
    return string_pdim(pres, w).is_finite


# ---------------------------------------------------------------- arbitrary modules

def _prefix_closed_sets(pres, v, cap=4096):
    """All prefix-closed sets of nonzero paths from v (as frozensets), smallest first."""
    root = pres.trivial(v)
    out = []

    def grow(current: frozenset, frontier: tuple):
        if len(out) > cap:
            raise OverflowError
        out.append(current)
        for i, p in enumerate(frontier):
            kids = tuple(pres.extend(p, a) for a in pres.successors(p))
            grow(current | {p}, frontier[i + 1:] + kids)

    kids = tuple(pres.extend(root, a.name) for a in pres.out_arrows(v))
    grow(frozenset({root}), kids)
    return sorted(set(out), key=lambda s: (len(s), sorted(p.arrows for p in s)))


def _boundary(pres, members: frozenset):
    out = []
    for p in members:
        for a in pres.out_arrows(p.end):
            q = pres.extend(p, a.name)
            if q not in members:
                out.append(q)
    return out


def _union_count(rep, rad_span, v, paths) -> int:
    """Number of summands with top v whose path set meets ``paths``."""
    fld = rep.field
    if not paths:
        return 0
    mats = [rep.path_action(r) for r in paths]
    stacked = np.concatenate(mats, axis=0)
    full = fld.rank(stacked)
    sub = rad_span[v]
    low = fld.rank(fld.matmul(stacked, sub)) if sub.shape[1] else 0
    return full - low


def decompose_cyclic(rep: oracle.MatrixRep, verify: bool = True, seed: int = 0):
    """Write a module over a monomial algebra as a sum of quotients of projectives by
    path ideals, returned as (vertex, path set) pairs; None if that is impossible."""
    pres = rep.pres
    rad = oracle.radical_span(rep)
    tops = oracle.top_dims(rep)
    summands = []
    for v in pres.vertices:
        if not tops[v]:
            continue
        try:
            candidates = _prefix_closed_sets(pres, v)
        except OverflowError:
            return None
        cache = {}

        def contains(req: frozenset) -> int:
            # summands with top v containing every path of req, by inclusion-exclusion
            if req in cache:
                return cache[req]
            total = 0
            items = sorted(req, key=lambda p: p.arrows)
            for k in range(1, len(items) + 1):
                for sub in itertools.combinations(items, k):
                    total += (-1) ** (k + 1) * _union_count(rep, rad, v, list(sub))
            cache[req] = total
            return total

        found = 0
        for members in candidates:
            maxi = frozenset(p for p in members
                             if not any(q != p and q.arrows[:p.length] == p.arrows for q in members))
            bd = _boundary(pres, members)
            mult = 0
            for k in range(len(bd) + 1):
                for sub in itertools.combinations(bd, k):
                    mult += (-1) ** k * contains(maxi | frozenset(sub))
            if mult < 0:
                return None
            summands.extend([(v, members)] * mult)
            found += mult
        if found != tops[v]:
            return None
    if verify:
        model = oracle.direct_sum(pres, [quotient_rep(pres, v, m) for v, m in summands])
        if not oracle.is_isomorphic(model, rep, seed=seed):
            return None
    return summands


def quotient_rep(pres: QuiverPresentation, v: str, members) -> oracle.MatrixRep:
    paths = sorted(members, key=lambda p: (p.length, p.arrows))
    index = {p: i for i, p in enumerate(paths)}
    edges = []
    for p in paths:
        for a in pres.out_arrows(p.end):
            q = pres.extend(p, a.name)
            if q in index:
                edges.append((a.name, index[p], index[q]))
    return oracle.graph_module(pres, [p.end for p in paths], edges)


def quotient_pdim(pres: QuiverPresentation, members) -> PdimResult:
    nonzero = [c for c in _boundary(pres, frozenset(members)) if pres.is_basis(c)]
    if not nonzero:
        return Finite(0)
    best = 0
    for c in sorted(nonzero, key=lambda c: c.arrows):
        r = path_pdim(pres, c)
        if not r.is_finite:
            return r
        best = max(best, r.value + 1)
    return Finite(best)


def module_pdim(rep: oracle.MatrixRep, max_depth: int = 6) -> PdimResult:
    """Exact pdim over a monomial algebra: iterate syzygies until one splits
    into path-ideal quotients, then finish on paths."""
    pres = rep.pres
    require_monomial(pres)
    cur = rep
    for depth in range(max_depth + 1):
        if cur.dimension == 0:
            return Finite(max(depth - 1, 0))
        cd = oracle.cover_and_syzygy(cur)
        if cd.kernel.dimension == 0:
            return Finite(depth)
        parts = decompose_cyclic(cd.kernel)
        if parts is not None:
            best = 0
            for _, members in parts:
                r = quotient_pdim(pres, members)
                if not r.is_finite:
                    return r
                best = max(best, r.value)
            return Finite(depth + 1 + best)
        cur = cd.kernel
    return PdimResult(None, "undecided")


# ---------------------------------------------------------------- bands

def cyclic_words(pres: QuiverPresentation, max_len: int) -> list[StringWord]:
    """Primitive band words up to rotation and reversal, deterministic order."""
    seen = set()
    out = []
    for v in pres.vertices:
        stack = [StringWord(v, ())]
        while stack:
            w = stack.pop()
            if w.letters and w.end == v:
                try:
                    validate_cyclic(pres, w)
                except WordError:
                    pass
                else:
                    k = band_key(w)
                    n = len(w.letters)
                    primitive = not any(n % d == 0 and k[:d] * (n // d) == k for d in range(1, n))
                    if primitive and k not in seen:
                        seen.add(k)
                        out.append(w)
            if len(w.letters) < max_len:
                for l in extensions(pres, w):
                    stack.append(StringWord(w.start, w.letters + (l,)))
    out.sort(key=lambda w: (len(w.letters), band_key(w)))
    return out


def band_polynomials(p: int | None, max_deg: int, samples: int = 16, seed: int = 0,
                     exhaustive: bool = False):
    if p is None:
        yield from ((c, 1) for c in (-1, 1, 2))
        return
    rng = np.random.default_rng(seed)
    for d in range(1, max_deg + 1):
        polys = list(irreducible_polys(d, p)) if (exhaustive or d == 1) else None
        if polys is not None:
            yield from polys
            continue
        picked = set()
        tries = 0
        while len(picked) < samples and tries < 200 * samples:
            tries += 1
            cand = tuple(int(x) for x in rng.integers(0, p, size=d)) + (1,)
            if cand[0] and cand not in picked and _irreducible(cand, p):
                picked.add(cand)
        yield from sorted(picked)


def _irreducible(poly, p):
    from .strings import poly_is_irreducible
    return poly_is_irreducible(poly, p)


def band_finite_pdim_search(pres: QuiverPresentation, max_word_len: int, max_poly_deg: int,
                            samples: int = 16, seed: int = 0, exhaustive: bool = False,
                            max_steps: int = 8) -> list[BandModule]:
    """Bands whose oracle syzygy iteration terminates.  Degree-one polynomials are
    exhausted; higher degrees are sampled unless ``exhaustive``."""
    require_string_calculus(pres)
    found = []
    polys = list(band_polynomials(pres.field_char, max_poly_deg, samples, seed, exhaustive))
    for w in cyclic_words(pres, max_word_len):
        for poly in polys:
            try:
                band = make_band(pres, w.letters, poly)
            except WordError:
                continue
            n, status = oracle.oracle_pdim(oracle.realize(pres, band), max_steps)
            if status == "finite":
                found.append(band)
    return found


# ---------------------------------------------------------------- oracle agreement

@dataclass(frozen=True)
class OracleCheck:
    samples: int
    seed: int
    max_letters: int
    iso_failures: tuple[str, ...]
    pdim_failures: tuple[str, ...]
    undecided: int

    @property
    def ok(self) -> bool:
        return not self.iso_failures and not self.pdim_failures


def check_against_oracle(pres: QuiverPresentation, samples: int, seed: int = 0,
                         max_letters: int = 6) -> OracleCheck:
    """Compare combinatorial syzygies and pdims with linear algebra on random words."""
    require_string_calculus(pres)
    rng = np.random.default_rng(seed)
    iso, pd = [], []
    undecided = 0
    for _ in range(samples):
        w = random_word(pres, rng, max_letters)
        rep = oracle.realize(pres, w)
        parts = oracle.direct_sum(pres, [oracle.realize(pres, u) for u in string_syzygy(pres, w)])
        label = w.literal() or "e" + w.start
        if not oracle.is_isomorphic(parts, oracle.syzygy(rep), seed=seed):
            iso.append(label)
        r = string_pdim(pres, w)
        n, status = oracle.oracle_pdim(rep)
        if status == "undecided":
            undecided += 1
        elif r.is_finite != (status == "finite") or (r.is_finite and r.value != n):
            pd.append(label)
    return OracleCheck(samples, seed, max_letters, tuple(iso), tuple(pd), undecided)

