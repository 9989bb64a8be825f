"""Approximations of simples over left serial algebras by saguaros.

Over a left serial algebra every projective is uniserial, so a saguaro with
simple socle at ``s`` is a tree: its nodes are nonzero paths ending at
``s``, each arrow moves a node one step closer to the root, and the leaves
are the masts of the trunks.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import oracle
from .homology import AlgebraScopeError, Finite, PdimResult, module_pdim, path_pdim
from .presentation import Path, QuiverPresentation, classify
from .strings import LayeredGraph

EXHAUSTIVE_CAP = 4096


def require_left_serial(pres: QuiverPresentation) -> None:
    cls = classify(pres)
    if not cls.is_left_serial:
        raise AlgebraScopeError("not a left serial algebra")
    if not cls.is_monomial:
        raise AlgebraScopeError("left serial routines need monomial relations")


@dataclass(frozen=True)
class Saguaro:
    socle: str
    trunks: tuple[Path, ...]                      # masts, top vertex = start
    gluings: tuple[tuple[int, Path, Path], ...]   # (i, q_i, q'_{i+1})
    d: int | None                                 # None = finite pdim
    first: int = 0                                # index of the trunk mapping onto S
    pdim: int | None = None
    greedy_agrees: bool = True
    nodes: tuple[Path, ...] = field(default=(), compare=False)

    @property
    def dimension(self) -> int:
        return len(self.nodes)

    def to_rep(self, pres: QuiverPresentation) -> oracle.MatrixRep:
        return tree_rep(pres, self.nodes)

    @property
    def graph(self) -> LayeredGraph:
        return tree_graph(self.nodes, self.trunks)


def _node(pres, arrows: tuple[str, ...], end: str) -> Path:
    if not arrows:
        return Path(end, end, ())
    return Path(pres.arrow(arrows[0]).source, end, arrows)


def suffix_closure(pres: QuiverPresentation, leaves) -> frozenset:
    out = set()
    for p in leaves:
        for k in range(len(p.arrows) + 1):
            out.add(_node(pres, p.arrows[k:], p.end))
    return frozenset(out)


def _sorted_nodes(nodes) -> tuple[Path, ...]:
    return tuple(sorted(nodes, key=lambda p: (p.length, p.arrows)))


def tree_rep(pres: QuiverPresentation, nodes) -> oracle.MatrixRep:
    nodes = _sorted_nodes(nodes)
    index = {n: i for i, n in enumerate(nodes)}
    edges = []
    for n in nodes:
        if n.arrows:
            parent = _node(pres, n.arrows[1:], n.end)
            edges.append((n.arrows[0], index[n], index[parent]))
    return oracle.graph_module(pres, [n.start for n in nodes], edges)


def tree_leaves(nodes) -> list[Path]:
    parents = {n.arrows[1:] for n in nodes if n.arrows}
    return [n for n in nodes if n.arrows not in parents]


def _children(pres, node: Path, nodes) -> list[Path]:
    out = []
    for a in pres.in_arrows(node.start):
        cand = Path(a.source, node.end, (a.name,) + node.arrows)
        if cand in nodes:
            out.append(cand)
    return out


def dfs_leaves(pres: QuiverPresentation, socle: str, nodes) -> list[Path]:
    """Leaves in depth-first order, children taken in arrow declaration order."""
    nodes = set(nodes)
    out = []

    def walk(n):
        kids = _children(pres, n, nodes)
        if not kids:
            out.append(n)
        for c in kids:
            walk(c)

    walk(Path(socle, socle, ()))
    return out


def tree_graph(nodes, leaf_order=None) -> LayeredGraph:
    """Layered graph of a tree module; each parent sits right after its first subtree."""
    nodes = list(nodes)
    # all nodes share one end, so the arrow tuple identifies a node
    by_arrows = {n.arrows: n for n in nodes}
    leaves = tree_leaves(nodes)
    rank = {l.arrows: k for k, l in enumerate(leaf_order or sorted(leaves, key=lambda p: p.arrows))}
    layer = {n: 0 for n in nodes}
    first_leaf = {}
    for leaf in leaves:
        for k in range(leaf.length + 1):
            n = by_arrows[leaf.arrows[k:]]
            layer[n] = max(layer[n], k)
            first_leaf[n] = min(first_leaf.get(n, len(rank)), rank.get(leaf.arrows, len(rank)))
    kids = {n.arrows: [] for n in nodes}
    for n in nodes:
        if n.arrows:
            kids[n.arrows[1:]].append(n)
    order = []

    def place(n):
        ch = sorted(kids[n.arrows], key=lambda m: first_leaf[m])
        if ch:
            place(ch[0])
        order.append(n)
        for m in ch[1:]:
            place(m)

    place(by_arrows[()])
    index = {n: i for i, n in enumerate(order)}
    out_nodes = tuple((n.start, layer[n]) for n in order)
    edges = tuple((n.arrows[0], index[n], index[by_arrows[n.arrows[1:]]]) for n in order if n.arrows)
    return LayeredGraph(out_nodes, edges)


def _within(r: PdimResult, d: int | None) -> bool:
    if not r.is_finite:
        return False
    return d is None or r.value <= d


def uniserial_pdim(pres: QuiverPresentation, e: str, k: int) -> PdimResult:
    """pdim of the factor of the projective at e by its k-th radical power."""
    chain = [p for p in pres.paths_from(e)]
    beyond = [p for p in chain if p.length == k]
    if not beyond:
        return Finite(0)
    r = path_pdim(pres, beyond[0])
    return Finite(r.value + 1) if r.is_finite else r


def minimal_finite_pdim_factor(pres: QuiverPresentation, e: str, d: int | None = None) -> Path:
    """Mast of the smallest nonzero factor of the projective at e in the class; the
    factor has Loewy length mast length + 1."""
    require_left_serial(pres)
    chain = sorted(pres.paths_from(e), key=lambda p: p.length)
    for p in chain:
        if _within(uniserial_pdim(pres, e, p.length + 1), d):
            return p
    return chain[-1]


def _subtrees(pres, root: Path, fixed: frozenset, banned: frozenset, candidates: frozenset):
    """All suffix-closed node sets containing ``fixed`` and drawn from candidates."""
    results = []

    def expand(included: frozenset, frontier: list):
        if len(results) > EXHAUSTIVE_CAP:
            raise OverflowError
        if not frontier:
            results.append(included)
            return
        n, rest = frontier[0], frontier[1:]
        kids = [c for c in _children(pres, n, candidates) if c not in banned]
        forced = [c for c in kids if c in fixed]
        optional = [c for c in kids if c not in fixed]
        for mask in range(1 << len(optional)):
            chosen = forced + [c for i, c in enumerate(optional) if mask >> i & 1]
            expand(included | frozenset(chosen), rest + chosen)

    expand(frozenset({root}), [root])
    return results


def saguaro_approximation(pres: QuiverPresentation, e: str, d: int | None = None,
                          exhaustive: bool = True) -> Saguaro:
    """Largest tree saguaro in the class whose first trunk is the minimal factor at e."""
    require_left_serial(pres)
    mast = minimal_finite_pdim_factor(pres, e, d)
    s = mast.end
    root = Path(s, s, ())
    fixed = suffix_closure(pres, [mast])
    candidates = frozenset(pres.paths_to(s))
    # the first trunk must stay a leaf
    banned = frozenset(c for c in candidates
                       if c.length > mast.length and c.arrows[c.length - mast.length:] == mast.arrows)
    memo: dict = {}

    def pd(nodes):
        if nodes not in memo:
            memo[nodes] = module_pdim(tree_rep(pres, nodes))
        return memo[nodes]

    def ok(nodes):
        return _within(pd(nodes), d)

    greedy = _greedy(pres, fixed, candidates, banned, ok)
    best = greedy
    agrees = True
    if exhaustive:
        try:
            sets = _subtrees(pres, root, fixed, banned, candidates)
        except OverflowError:
            sets = None
        if sets is not None:
            valid = [t for t in sets if ok(t)]
            top = max(len(t) for t in valid)
            maxima = [t for t in valid if len(t) == top]
            if len(maxima) != 1:
                raise AssertionError(f"{len(maxima)} saguaros of maximal length")
            best = maxima[0]
            agrees = best == greedy
    ordered = dfs_leaves(pres, s, best)
    gluings = []
    for i, (a, b) in enumerate(zip(ordered, ordered[1:])):
        k = 0
        while k < min(a.length, b.length) and a.arrows[-1 - k] == b.arrows[-1 - k]:
            k += 1
        qa = Path(a.start, _node(pres, a.arrows[a.length - k:], s).start, a.arrows[:a.length - k])
        qb = Path(b.start, qa.end, b.arrows[:b.length - k])
        gluings.append((i, qa, qb))
    r = pd(best)
    sag = Saguaro(s, tuple(ordered), tuple(gluings), d, ordered.index(mast), r.value, agrees,
                  _sorted_nodes(best))
    for i in range(len(ordered)):
        f = trunk_embedding(pres, sag, i)
        if not (f.commutes() and f.is_injective()):
            raise AssertionError(f"trunk {ordered[i]} does not embed")
    return sag


def _node_map(pres, src: tuple, src_rep, tgt: tuple, tgt_rep, assign) -> oracle.ModuleMap:
    """Linear map sending node src[k] to node assign[src[k]] (or to zero when absent)."""
    fld = pres.field

    def positions(nodes):
        seen = {v: 0 for v in pres.vertices}
        out = {}
        for n in nodes:
            out[n] = seen[n.start]
            seen[n.start] += 1
        return out

    ps, pt = positions(src), positions(tgt)
    maps = {v: fld.zeros(tgt_rep.dims[v], src_rep.dims[v]) for v in pres.vertices}
    for n in src:
        m = assign.get(n)
        if m is not None:
            maps[n.start][pt[m], ps[n]] = fld.scalar(1)
    return oracle.ModuleMap(src_rep, tgt_rep, maps)


def trunk_embedding(pres: QuiverPresentation, sag: Saguaro, i: int) -> oracle.ModuleMap:
    """Inclusion of the i-th trunk (a uniserial module) into the saguaro."""
    src = _sorted_nodes(suffix_closure(pres, [sag.trunks[i]]))
    return _node_map(pres, src, tree_rep(pres, src), sag.nodes, sag.to_rep(pres),
                     {n: n for n in src})


def canonical_map(pres: QuiverPresentation, sag: Saguaro) -> oracle.ModuleMap:
    """Epimorphism onto the simple at the first trunk's top; other trunks go to zero."""
    top = sag.trunks[sag.first]
    tgt_node = Path(top.start, top.start, ())
    tgt = (tgt_node,)
    return _node_map(pres, sag.nodes, sag.to_rep(pres), tgt, oracle.simple(pres, top.start),
                     {top: tgt_node})


def _greedy(pres, fixed, candidates, banned, ok):
    nodes = fixed
    order = sorted((c for c in candidates if c not in banned), key=lambda p: (-p.length, p.arrows))
    changed = True
    while changed:
        changed = False
        for c in order:
            if c in nodes:
                continue
            trial = nodes | suffix_closure(pres, [c])
            if trial & banned:
                continue
            if ok(trial):
                nodes = trial
                changed = True
    return nodes


def serial_findim_report(pres: QuiverPresentation):
    from .phantom import FindimReport, SimpleSummary
    require_left_serial(pres)
    sims = []
    for v in pres.vertices:
        sag = saguaro_approximation(pres, v, None)
        desc = " | ".join(str(t) for t in sag.trunks)
        sims.append(SimpleSummary(v, None, True, sag.pdim, sag.dimension, desc))
    return FindimReport(True, tuple(sims), max(s.approximation_pdim for s in sims), False, "saguaro")
