"""Explicit matrix representations and the linear algebra around them.

Everything here is brute force on purpose: the combinatorial modules are
checked against these computations.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import Field, kron
from .presentation import Path, PresentationError, QuiverPresentation, path_matrix, relation_matrix_check
from .strings import BandModule, StringModule, StringWord, companion


class OracleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MatrixRep:
    pres: QuiverPresentation
    dims: dict
    mats: dict

    @property
    def field(self) -> Field:
        return self.pres.field

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.pres.vertices)

    def satisfies_relations(self) -> bool:
        return relation_matrix_check(self.pres, self.mats, self.dims)

    def path_action(self, p: Path) -> np.ndarray:
        return path_matrix(self.field, p, self.mats, self.dims)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: MatrixRep
    target: MatrixRep
    maps: dict

    def commutes(self) -> bool:
        fld = self.source.field
        for a in self.source.pres.arrows:
            lhs = fld.matmul(self.target.mats[a.name], self.maps[a.source])
            rhs = fld.matmul(self.maps[a.target], self.source.mats[a.name])
            if not np.array_equal(np.asarray(lhs), np.asarray(rhs)):
                return False
        return True

    def is_injective(self) -> bool:
        fld = self.source.field
        return all(fld.rank(self.maps[v]) == self.source.dims[v] for v in self.source.pres.vertices)

    def is_surjective(self) -> bool:
        fld = self.source.field
        return all(fld.rank(self.maps[v]) == self.target.dims[v] for v in self.source.pres.vertices)

    def rank(self) -> int:
        fld = self.source.field
        return sum(fld.rank(self.maps[v]) for v in self.source.pres.vertices)


def _empty_rep(pres: QuiverPresentation, dims: dict) -> MatrixRep:
    fld = pres.field
    mats = {a.name: fld.zeros(dims[a.target], dims[a.source]) for a in pres.arrows}
    return MatrixRep(pres, dict(dims), mats)


def zero_rep(pres: QuiverPresentation) -> MatrixRep:
    return _empty_rep(pres, {v: 0 for v in pres.vertices})


def simple(pres: QuiverPresentation, v: str) -> MatrixRep:
    pres.trivial(v)
    return _empty_rep(pres, {u: int(u == v) for u in pres.vertices})


def graph_module(pres: QuiverPresentation, labels: Sequence[str], edges) -> MatrixRep:
    """Module with one basis vector per node; an edge (arrow, i, j) sends node i to node j."""
    index = {}
    counts = {v: 0 for v in pres.vertices}
    for k, v in enumerate(labels):
        index[k] = counts[v]
        counts[v] += 1
    rep = _empty_rep(pres, counts)
    for arrow, i, j in edges:
        a = pres.arrow(arrow)
        if labels[i] != a.source or labels[j] != a.target:
            raise OracleError(f"edge {arrow} does not match node labels {labels[i]}, {labels[j]}")
        rep.mats[arrow][index[j], index[i]] = rep.field.scalar(1)
    return rep


def projective(pres: QuiverPresentation, v: str) -> MatrixRep:
    cache = pres.cache.setdefault("projective", {})
    if v in cache:
        return cache[v]
    fld = pres.field
    paths = pres.paths_from(v)
    if not paths:
        raise PresentationError(f"unknown vertex {v!r}")
    dims = {u: 0 for u in pres.vertices}
    pos = {}
    for p in paths:
        pos[p] = dims[p.end]
        dims[p.end] += 1
    rep = _empty_rep(pres, dims)
    for p in paths:
        for a in pres.out_arrows(p.end):
            for q, c in pres.reduce(pres.extend(p, a.name)):
                rep.mats[a.name][pos[q], pos[p]] = fld.add(rep.mats[a.name][pos[q], pos[p]], c)
    cache[v] = rep
    return rep


def _projective_positions(pres, v):
    dims = {u: 0 for u in pres.vertices}
    pos = {}
    for p in pres.paths_from(v):
        pos[p] = dims[p.end]
        dims[p.end] += 1
    return pos


def element_of_projective(pres: QuiverPresentation, p: Path) -> np.ndarray:
    """Coordinates of the basis path p inside the projective at start(p), at vertex end(p)."""
    pos = _projective_positions(pres, p.start)
    vec = pres.field.zeros(projective(pres, p.start).dims[p.end], 1)
    for q, c in pres.reduce(p):
        vec[pos[q], 0] = c
    return vec


def submodule_generated(rep: MatrixRep, gens: dict) -> tuple[MatrixRep, ModuleMap]:
    """Submodule generated by the columns of gens[v] (vectors at vertex v) with its inclusion."""
    pres, fld = rep.pres, rep.field
    span = {v: fld.zeros(rep.dims[v], 0) for v in pres.vertices}
    frontier = dict(gens)
    while frontier:
        nxt = {}
        for v, vecs in frontier.items():
            if vecs.shape[1] == 0:
                continue
            old = span[v]
            cat = np.concatenate([old, vecs], axis=1)
            basis = fld.column_basis(cat)
            if basis.shape[1] == old.shape[1]:
                continue
            new = basis[:, old.shape[1]:] if _prefix_kept(fld, old, basis) else basis
            span[v] = basis
            for a in pres.out_arrows(v):
                img = fld.matmul(rep.mats[a.name], new)
                nxt[a.target] = np.concatenate([nxt[a.target], img], axis=1) if a.target in nxt else img
        frontier = nxt
    return restrict(rep, span)


def _prefix_kept(fld, old, basis):
    return old.shape[1] == 0 or np.array_equal(np.asarray(basis[:, :old.shape[1]]), np.asarray(old))


def restrict(rep: MatrixRep, span: dict) -> tuple[MatrixRep, ModuleMap]:
    """Representation on an invariant subspace given by column bases."""
    pres, fld = rep.pres, rep.field
    dims = {v: span[v].shape[1] for v in pres.vertices}
    sub = _empty_rep(pres, dims)
    for a in pres.arrows:
        if dims[a.source] == 0 or dims[a.target] == 0:
            continue
        img = fld.matmul(rep.mats[a.name], span[a.source])
        sub.mats[a.name][:, :] = fld.solve(span[a.target], img)
    return sub, ModuleMap(sub, rep, dict(span))


def path_module(pres: QuiverPresentation, p: Path) -> MatrixRep:
    """The cyclic module generated by p inside the projective at start(p)."""
    if not pres.is_nonzero(p):
        return zero_rep(pres)
    proj = projective(pres, p.start)
    sub, _ = submodule_generated(proj, {p.end: element_of_projective(pres, p)})
    return sub


def string_rep(pres: QuiverPresentation, w: StringWord) -> MatrixRep:
    edges = []
    for k, l in enumerate(w.letters):
        edges.append((l.arrow, k + 1, k) if l.inverse else (l.arrow, k, k + 1))
    rep = graph_module(pres, w.nodes, edges)
    if not rep.satisfies_relations():
        raise OracleError(f"word {w} does not define a module")
    return rep


def band_rep(pres: QuiverPresentation, band: BandModule) -> MatrixRep:
    fld = pres.field
    w = band.word
    n, s = len(w.letters), band.size
    nodes = w.nodes[:-1]
    counts = {v: 0 for v in pres.vertices}
    offset = []
    for v in nodes:
        offset.append(counts[v])
        counts[v] += s
    rep = _empty_rep(pres, counts)
    comp = companion(band.poly, fld)
    for k, l in enumerate(w.letters):
        i, j = k, (k + 1) % n
        block = comp if k == n - 1 else fld.eye(s)
        src, dst = (j, i) if l.inverse else (i, j)
        m = rep.mats[l.arrow]
        m[offset[dst]:offset[dst] + s, offset[src]:offset[src] + s] = fld.add(
            m[offset[dst]:offset[dst] + s, offset[src]:offset[src] + s], block)
    if not rep.satisfies_relations():
        raise OracleError(f"band word {w} does not define a module")
    return rep


def direct_sum(pres: QuiverPresentation, reps: Sequence[MatrixRep]) -> MatrixRep:
    fld = pres.field
    reps = list(reps)
    dims = {v: sum(r.dims[v] for r in reps) for v in pres.vertices}
    out = _empty_rep(pres, dims)
    off = {v: 0 for v in pres.vertices}
    for r in reps:
        for a in pres.arrows:
            s, t = a.source, a.target
            out.mats[a.name][off[t]:off[t] + r.dims[t], off[s]:off[s] + r.dims[s]] = r.mats[a.name]
        for v in pres.vertices:
            off[v] += r.dims[v]
    return out


def realize(pres: QuiverPresentation, descriptor) -> MatrixRep:
    """Matrix representation of a module descriptor.

    Accepted: MatrixRep, StringWord, StringModule, BandModule, Path (the
    path module), ("simple", v), ("projective", v), objects with a
    ``to_rep(pres)`` method, or a list of descriptors (direct sum).
    """
    d = descriptor
    if isinstance(d, MatrixRep):
        rep = d
    elif isinstance(d, StringWord):
        rep = string_rep(pres, d)
    elif isinstance(d, StringModule):
        rep = string_rep(pres, d.word)
    elif isinstance(d, BandModule):
        rep = band_rep(pres, d)
    elif isinstance(d, Path):
        rep = path_module(pres, d)
    elif isinstance(d, tuple) and len(d) == 2 and d[0] in ("simple", "projective"):
        rep = simple(pres, d[1]) if d[0] == "simple" else projective(pres, d[1])
    elif isinstance(d, list):
        rep = direct_sum(pres, [realize(pres, x) for x in d]) if d else zero_rep(pres)
    elif hasattr(d, "to_rep"):
        rep = d.to_rep(pres)
    else:
        raise OracleError(f"cannot realize {type(d).__name__}")
    if not rep.satisfies_relations():
        raise OracleError("realized matrices violate a relation")
    return rep


# ---------------------------------------------------------------- covers and syzygies

def radical_span(rep: MatrixRep) -> dict:
    fld = rep.field
    out = {}
    for v in rep.pres.vertices:
        imgs = [rep.mats[a.name] for a in rep.pres.in_arrows(v)]
        cat = np.concatenate(imgs, axis=1) if imgs else fld.zeros(rep.dims[v], 0)
        out[v] = fld.column_basis(cat) if cat.shape[1] else cat
    return out


def top_dims(rep: MatrixRep) -> dict:
    rad = radical_span(rep)
    return {v: rep.dims[v] - rad[v].shape[1] for v in rep.pres.vertices}


def socle_dims(rep: MatrixRep) -> dict:
    fld = rep.field
    out = {}
    for v in rep.pres.vertices:
        outs = [rep.mats[a.name] for a in rep.pres.out_arrows(v)]
        if not outs or rep.dims[v] == 0:
            out[v] = rep.dims[v]
            continue
        out[v] = fld.nullspace(np.concatenate(outs, axis=0)).shape[1]
    return out


@dataclass(frozen=True, eq=False)
class CoverData:
    projective: MatrixRep
    cover: ModuleMap
    kernel: MatrixRep
    inclusion: ModuleMap
    top: tuple[tuple[str, int], ...]


def cover_and_syzygy(rep: MatrixRep) -> CoverData:
    pres, fld = rep.pres, rep.field
    rad = radical_span(rep)
    gens = []
    for v in pres.vertices:
        for idx in fld.complement_basis(rad[v], rep.dims[v]):
            gens.append((v, idx))
    proj = direct_sum(pres, [projective(pres, v) for v, _ in gens])
    cover = {u: fld.zeros(rep.dims[u], proj.dims[u]) for u in pres.vertices}
    off = {u: 0 for u in pres.vertices}
    for v, idx in gens:
        x = fld.zeros(rep.dims[v], 1)
        x[idx, 0] = fld.scalar(1)
        for p in pres.paths_from(v):
            col = fld.matmul(rep.path_action(p), x)
            cover[p.end][:, off[p.end]] = col[:, 0]
            off[p.end] += 1
    pi = ModuleMap(proj, rep, cover)
    ker_span = {u: fld.nullspace(cover[u]) if proj.dims[u] else fld.zeros(0, 0) for u in pres.vertices}
    for u in pres.vertices:
        if proj.dims[u] == 0:
            ker_span[u] = fld.zeros(0, 0)
    kernel, inc = restrict(proj, ker_span)
    top = tuple((v, sum(1 for g in gens if g[0] == v)) for v in pres.vertices)
    return CoverData(proj, pi, kernel, inc, tuple((v, c) for v, c in top if c))


def syzygy(rep: MatrixRep) -> MatrixRep:
    return cover_and_syzygy(rep).kernel


def oracle_pdim(rep: MatrixRep, max_steps: int = 12, dim_cap: int = 400):
    """Iterate syzygies.

    Returns (n, "finite") when the n-th syzygy vanishes and
    (k, "infinite-suspected") when the dimension vector and cover profile,
    scaled down by their gcd, repeat.  Running past ``max_steps`` or
    ``dim_cap`` gives (k, "undecided").
    """
    seen = {}
    cur = rep
    if cur.dimension == 0:
        return 0, "finite"
    for n in range(max_steps + 1):
        cd = cover_and_syzygy(cur)
        if cd.kernel.dimension == 0:
            return n, "finite"
        key = _profile(cur.dim_vector(), cd.top)
        if key in seen:
            return n, "infinite-suspected"
        seen[key] = n
        cur = cd.kernel
        if cur.dimension > dim_cap:
            return n, "undecided"
    return max_steps, "undecided"


def _profile(dims, top):
    vals = [d for d in dims if d] + [c for _, c in top]
    g = math.gcd(*vals) if vals else 1
    return tuple(d // g for d in dims), tuple((v, c // g) for v, c in top)


# ---------------------------------------------------------------- homs and isomorphism

def hom_basis(a: MatrixRep, b: MatrixRep) -> list[ModuleMap]:
    pres, fld = a.pres, a.field
    verts = pres.vertices
    offs, n = {}, 0
    for v in verts:
        offs[v] = n
        n += a.dims[v] * b.dims[v]
    if n == 0:
        return []
    blocks = []
    for ar in pres.arrows:
        s, t = ar.source, ar.target
        rows = b.dims[t] * a.dims[s]
        if rows == 0:
            continue
        m = fld.zeros(rows, n)
        if a.dims[s] * b.dims[s]:
            left = kron(fld, fld.eye(a.dims[s]), b.mats[ar.name])
            m[:, offs[s]:offs[s] + a.dims[s] * b.dims[s]] = left
        if a.dims[t] * b.dims[t]:
            right = kron(fld, a.mats[ar.name].T.copy(), fld.eye(b.dims[t]))
            blk = m[:, offs[t]:offs[t] + a.dims[t] * b.dims[t]]
            m[:, offs[t]:offs[t] + a.dims[t] * b.dims[t]] = fld.sub(blk, right)
        blocks.append(m)
    system = np.concatenate(blocks, axis=0) if blocks else fld.zeros(0, n)
    null = fld.nullspace(system)
    out = []
    for j in range(null.shape[1]):
        col = null[:, j]
        maps = {}
        for v in verts:
            r, c = b.dims[v], a.dims[v]
            chunk = col[offs[v]:offs[v] + r * c]
            maps[v] = chunk.reshape((c, r)).T.copy() if r * c else fld.zeros(r, c)
        out.append(ModuleMap(a, b, maps))
    return out


def combine(fld: Field, basis: Sequence[ModuleMap], coeffs) -> ModuleMap:
    src, tgt = basis[0].source, basis[0].target
    maps = {}
    for v in src.pres.vertices:
        acc = fld.zeros(tgt.dims[v], src.dims[v])
        for f, c in zip(basis, coeffs):
            if c:
                acc = fld.add(acc, fld.scale(c, f.maps[v]))
        maps[v] = acc
    return ModuleMap(src, tgt, maps)


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    fld = f.source.field
    return ModuleMap(f.source, g.target, {v: fld.matmul(g.maps[v], f.maps[v]) for v in f.source.pres.vertices})


def _is_iso_map(f: ModuleMap) -> bool:
    fld = f.source.field
    return all(fld.is_invertible(f.maps[v]) for v in f.source.pres.vertices if f.source.dims[v])


def is_isomorphic(a: MatrixRep, b: MatrixRep, seed: int = 0, trials: int = 32,
                  grid_cap: int = 4096) -> bool:
    if a.dim_vector() != b.dim_vector():
        return False
    if a.dimension == 0:
        return True
    fld = a.field
    hab = hom_basis(a, b)
    if not hab:
        return False
    if len(hom_basis(b, a)) != len(hab) or len(hom_basis(a, a)) != len(hab):
        return False
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        coeffs = [fld.scalar(int(c)) for c in fld.random(rng, (len(hab),)).ravel()]
        if _is_iso_map(combine(fld, hab, coeffs)):
            return True
    tried = 0
    for coeffs in itertools.product((0, 1, -1), repeat=len(hab)):
        if tried >= grid_cap:
            break
        tried += 1
        if any(coeffs) and _is_iso_map(combine(fld, hab, [fld.scalar(c) for c in coeffs])):
            return True
    return False


def factors_through(maps: Sequence[ModuleMap], f: ModuleMap, hom_to_source: Sequence[ModuleMap]) -> bool:
    """Whether every map in ``maps`` (M -> X) equals f o h for some h in span(hom_to_source)."""
    if not maps:
        return True
    fld = f.source.field
    verts = f.source.pres.vertices
    comps = [compose(f, h) for h in hom_to_source]

    def flat(m: ModuleMap):
        parts = [np.asarray(m.maps[v]).reshape(-1, 1) for v in verts if m.maps[v].size]
        return np.concatenate(parts, axis=0) if parts else fld.zeros(0, 1)

    target = np.concatenate([flat(g) for g in maps], axis=1)
    if target.shape[0] == 0:
        return True
    if not comps:
        return fld.is_zero(target)
    span = np.concatenate([flat(c) for c in comps], axis=1)
    if fld.p is not None:
        span = span.astype(np.int64)
        target = target.astype(np.int64)
    return fld.rank(span) == fld.rank(np.concatenate([span, target], axis=1))
