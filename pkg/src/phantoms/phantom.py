"""Characteristic phantoms of simple modules over string algebras.

The syzygy of a string module splits into local pieces: a tail beyond each
valley end, one path module per unused arrow at a peak end, and one valley
string per interior valley.  Whether a word extends to a string of finite
projective dimension is therefore a reachability question on a finite
automaton whose states are

* ``("down", p)``: the word ends at the valley reached by the run ``p``;
* ``("peak", t, f)``: the word ends at a peak at ``t`` whose other arm
  starts with arrow ``f``.

Feasibility is exact.  The search bound only limits how long a witness
extension may be before the answer is reported as undecided.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import oracle
from .homology import (AlgebraScopeError, PdimResult, continuation, path_pdim, require_string_calculus,
                       string_pdim, valley_word, _tail)
from .presentation import Path, QuiverPresentation, classify, default_search_bound
from .strings import (GeneralizedString, Letter, Ray, StringModule, StringWord, direct_word,
                      enumerate_words, letter, string_module, window, window_with_anchor)

INF = float("inf")


class PhantomInconclusive(RuntimeError):
    def __init__(self, bound: int, where: str = ""):
        self.bound = bound
        super().__init__(f"inconclusive at bound {bound}" + (f" ({where})" if where else ""))


@dataclass(frozen=True)
class Decision:
    verdict: str                      # yes | no | undecided_at_bound
    witness: StringWord | None = None
    bound: int = 0

    @property
    def yes(self) -> bool:
        return self.verdict == "yes"


# ---------------------------------------------------------------- automaton

class ExtensionAutomaton:
    """Shortest terminating extensions from every end state."""

    def __init__(self, pres: QuiverPresentation):
        require_string_calculus(pres)
        self.pres = pres
        self._valley = {}
        self.dist: dict = {}
        self.move: dict = {}
        self._solve()

    @classmethod
    def of(cls, pres: QuiverPresentation) -> "ExtensionAutomaton":
        cache = pres.cache
        if "automaton" not in cache:
            cache["automaton"] = cls(pres)
        return cache["automaton"]

    # local finiteness tests

    def arrow_finite(self, c: str) -> bool:
        a = self.pres.arrow(c)
        return path_pdim(self.pres, Path(a.source, a.target, (c,))).is_finite

    def tail_finite(self, p: Path) -> bool:
        t = _tail(self.pres, p)
        return t is None or path_pdim(self.pres, t).is_finite

    def peak_terminable(self, t: str, used: Iterable[str | None]) -> bool:
        used = set(used)
        return all(self.arrow_finite(c.name) for c in self.pres.out_arrows(t) if c.name not in used)

    def valley_finite(self, p: Path, q: Path) -> bool:
        key = (p, q)
        if key not in self._valley:
            self._valley[key] = string_pdim(self.pres, valley_word(self.pres, p, q)).is_finite
        return self._valley[key]

    # moves

    def up_moves(self, p: Path) -> list[Path]:
        """Paths q that may climb from the valley at end(p)."""
        out = []
        for q in self.pres.paths_to(p.end):
            if q.is_trivial or q.last == p.last:
                continue
            if self.valley_finite(p, q):
                out.append(q)
        return out

    def down_moves(self, t: str, f: str | None) -> list[Path]:
        return [p for p in self.pres.paths_from(t) if not p.is_trivial and p.first != f]

    def _solve(self):
        pres = self.pres
        states = [("down", p) for p in pres.basis if not p.is_trivial]
        for v in pres.vertices:
            for a in pres.out_arrows(v):
                states.append(("peak", v, a.name))
        edges = {}
        rev: dict = {}
        for s in states:
            if s[0] == "down":
                nxt = [(q, ("peak", q.start, q.first)) for q in self.up_moves(s[1])]
            else:
                nxt = [(p, ("down", p)) for p in self.down_moves(s[1], s[2])]
            edges[s] = nxt
            for path, t in nxt:
                rev.setdefault(t, []).append((path, s))
        dist = {s: INF for s in states}
        heap = []
        for s in states:
            if self.terminable(s):
                dist[s] = 0
                self.move[s] = None
                heap.append((0, self._order(s), s))
        heapq.heapify(heap)
        while heap:
            d, _, s = heapq.heappop(heap)
            if d > dist[s]:
                continue
            for path, prev in rev.get(s, ()):
                nd = d + path.length
                if nd < dist[prev] or (nd == dist[prev] and self.move[prev] is not None
                                       and (path.arrows, s) < (self.move[prev][0].arrows, self.move[prev][1])):
                    if nd < dist[prev]:
                        heapq.heappush(heap, (nd, self._order(prev), prev))
                    dist[prev] = nd
                    self.move[prev] = (path, s)
        self.dist = dist

    @staticmethod
    def _order(s):
        return (s[0], s[1].arrows if s[0] == "down" else (s[1], s[2]))

    def terminable(self, s) -> bool:
        if s[0] == "down":
            return self.tail_finite(s[1])
        return self.peak_terminable(s[1], [s[2]])

    def distance(self, s) -> float:
        if s not in self.dist:
            # peak states with an arrow-free arm, e.g. at a sink
            return 0 if self.terminable(s) else INF
        return self.dist[s]

    def completion(self, s) -> list[Letter]:
        """Letters of a shortest terminating extension, outward from the end."""
        out: list[Letter] = []
        while s in self.move and self.move[s] is not None:
            path, s = self.move[s]
            if s[0] == "peak":
                out.extend(letter(self.pres, a, True) for a in reversed(path.arrows))
            else:
                out.extend(letter(self.pres, a) for a in path.arrows)
        return out


# ---------------------------------------------------------------- word-level decisions

def _right_end_state(w: StringWord):
    n = len(w.letters)
    if w.letters[-1].inverse:
        left, _ = w.arms(n)
        return ("peak", w.end, left.first)
    k = max(i for i in w.peaks if i <= n)
    _, right = w.arms(k)
    return ("down", right)


def _interior_valleys_finite(aut: ExtensionAutomaton, w: StringWord) -> bool:
    peaks = w.peaks
    for a, b in zip(peaks, peaks[1:]):
        _, right = w.arms(a)
        left, _ = w.arms(b)
        if not aut.valley_finite(right, left):
            return False
    return True


def _decide(pres, w: StringWord, bound: int, valley_extends: bool) -> Decision:
    aut = ExtensionAutomaton.of(pres)
    if bound is None:
        bound = default_search_bound(pres)
    if w.is_trivial:
        ok = string_pdim(pres, w).is_finite
        return Decision("yes", w, bound) if ok else Decision("no", None, bound)
    if not _interior_valleys_finite(aut, w):
        return Decision("no", None, bound)
    ext = []
    total = 0
    for side in (w, w.reverse()):
        s = _right_end_state(side)
        can_continue = (s[0] == "down") == valley_extends
        if can_continue:
            d = aut.distance(s)
            if d == INF:
                return Decision("no", None, bound)
            total += d
            ext.append(aut.completion(s))
        else:
            if not aut.terminable(s):
                return Decision("no", None, bound)
            ext.append([])
    if total > bound:
        return Decision("undecided_at_bound", None, bound)
    right, left = ext
    letters = tuple(l.inv() for l in reversed(left)) + w.letters + tuple(right)
    start = left[-1].walk_to if left else w.start
    return Decision("yes", StringWord(start, letters), bound)


def top_embeddable(pres: QuiverPresentation, w: StringWord, bound: int | None = None) -> Decision:
    """Whether M(w) top-embeds into a string module of finite projective dimension;
    the witness extends w below its valley ends."""
    return _decide(pres, w, bound, valley_extends=True)


def socle_coverable(pres: QuiverPresentation, w: StringWord, bound: int | None = None) -> Decision:
    """Whether M(w) is a socle-faithful factor of a string module of finite projective
    dimension; the witness extends w above its peak ends."""
    return _decide(pres, w, bound, valley_extends=False)


# ---------------------------------------------------------------- the construction

@dataclass(frozen=True)
class StepEntry:
    step: int
    side: str       # left | right
    kind: str       # p | q
    path: Path
    note: str = ""


@dataclass(frozen=True)
class PhantomResult:
    phantom: GeneralizedString
    anchor_vertex: str
    steps: tuple[StepEntry, ...]
    left_period_found_at: int | str
    right_period_found_at: int | str
    finite: bool
    step_count: int
    bound: int
    notes: tuple[str, ...] = ()

    def side_paths(self, side: str, kind: str) -> list[Path]:
        return [s.path for s in self.steps if s.side == side and s.kind == kind]


@dataclass
class _Side:
    name: str
    arrow: str | None
    paths: list = field(default_factory=list)     # alternating p, q (outward)
    steps: list = field(default_factory=list)
    done: str | None = None                        # "terminated" | "periodic"
    end_step: int = 0
    period_from: int = 0                           # index into paths of the period start


def _path_letters(pres, paths: Sequence[Path]) -> list[Letter]:
    out = []
    for i, p in enumerate(paths):
        if i % 2 == 0:
            out.extend(letter(pres, a) for a in p.arrows)
        else:
            out.extend(letter(pres, a, True) for a in reversed(p.arrows))
    return out


def _first_step(aut: ExtensionAutomaton, e: str, arrow: str | None, bound: int):
    pres = aut.pres
    if arrow is None:
        return pres.trivial(e), 0
    if aut.arrow_finite(arrow):
        return pres.trivial(e), 0
    for p in pres.paths_from(e):
        if p.is_trivial or p.first != arrow:
            continue
        d = aut.distance(("down", p))
        if d < INF:
            return p, d
    return None, INF


def _p_step(aut: ExtensionAutomaton, q: Path, bound: int):
    """Minimal p from the peak at start(q)."""
    pres = aut.pres
    t, f = q.start, q.first
    if aut.peak_terminable(t, [f]):
        return pres.trivial(t), 0, ""
    best = None
    for p in aut.down_moves(t, f):
        d = aut.distance(("down", p))
        if d == INF:
            continue
        key = (p.length, p.arrows)
        if best is None or key < best[0]:
            best = (key, p, d)
    if best is None:
        return None, INF, ""
    return best[1], best[2], ""


def _q_step(aut: ExtensionAutomaton, p: Path):
    """Maximal q climbing from the valley at end(p)."""
    pres = aut.pres
    cands = []
    for q in aut.up_moves(p):
        d = aut.distance(("peak", q.start, q.first))
        if d < INF:
            cands.append((q, d))
    if aut.tail_finite(p):
        cands.append((pres.trivial(p.end), 0))
    if not cands:
        return None, INF, ""
    top = max(c[0].length for c in cands)
    best = sorted((c for c in cands if c[0].length == top), key=lambda c: c[0].arrows)
    note = ""
    if len(best) > 1:
        note = "ambiguous maximal climb: " + ", ".join(str(c[0]) for c in best) + f"; kept {best[0][0]}"
    return best[0][0], best[0][1], note


def characteristic_phantom(pres: QuiverPresentation, vertex: str, bound: int | None = None,
                           max_steps: int | None = None) -> PhantomResult:
    require_string_calculus(pres)
    pres.trivial(vertex)
    if bound is None:
        bound = default_search_bound(pres)
    aut = ExtensionAutomaton.of(pres)
    outs = [a.name for a in pres.out_arrows(vertex)]
    sides = [_Side("left", outs[0] if outs else None), _Side("right", outs[1] if len(outs) > 1 else None)]
    limit = max_steps if max_steps is not None else 3 * len(pres.vertices) + 2
    notes = []
    step = 0
    while any(s.done is None for s in sides):
        step += 1
        if step > limit:
            raise AssertionError(f"no period or termination after {limit} steps")
        for s in sides:
            if s.done is not None:
                continue
            if step == 1:
                path, d = _first_step(aut, vertex, s.arrow, bound)
                note = ""
            elif step % 2 == 1:
                path, d, note = _p_step(aut, s.paths[-1], bound)
            else:
                path, d, note = _q_step(aut, s.paths[-1])
            if path is None:
                raise AssertionError(f"no admissible extension at step {step} on the {s.name} side")
            if d > bound:
                raise PhantomInconclusive(bound, f"step {step}, {s.name} side")
            kind = "p" if step % 2 == 1 else "q"
            if note:
                notes.append(f"step {step} {s.name}: {note}")
            if kind == "p" and not path.is_trivial:
                earlier = [i for i in range(0, len(s.paths), 2) if s.paths[i].first == path.first]
                if earlier:
                    s.done, s.end_step, s.period_from = "periodic", step, earlier[0]
                    s.steps.append(StepEntry(step, s.name, kind, path, "repeats start arrow of "
                                             f"step {earlier[0] + 1}"))
                    continue
            s.paths.append(path)
            s.steps.append(StepEntry(step, s.name, kind, path, note))
            if path.is_trivial:
                s.done, s.end_step = "terminated", step
    step_count = max(s.end_step for s in sides)
    left, right = sides

    def ray(s: _Side):
        if s.done != "periodic":
            return None
        pre = _path_letters(pres, s.paths[:s.period_from])
        per = _path_letters(pres, s.paths)[len(pre):]
        return pre, per

    core_left: list[Letter] = []
    core_right: list[Letter] = []
    lray = rray = None
    r = ray(left)
    if r is None:
        core_left = _path_letters(pres, left.paths)
    else:
        pre, per = r
        lray = Ray(_rev_inv(pre), _rev_inv(per))
    r = ray(right)
    if r is None:
        core_right = _path_letters(pres, right.paths)
    else:
        rray = Ray(tuple(r[0]), tuple(r[1]))
    core_letters = _rev_inv(core_left) + tuple(core_right)
    start = core_left[-1].walk_to if core_left else vertex
    core = StringWord(start, core_letters)
    g = GeneralizedString(core, len(core_left), lray, rray)
    steps = tuple(sorted(left.steps + right.steps, key=lambda e: (e.step, e.side != "left")))
    res = PhantomResult(
        phantom=g,
        anchor_vertex=vertex,
        steps=steps,
        left_period_found_at=left.end_step if left.done == "periodic" else "terminated",
        right_period_found_at=right.end_step if right.done == "periodic" else "terminated",
        finite=g.finite,
        step_count=step_count,
        bound=bound,
        notes=tuple(notes),
    )
    assert step_count < 3 * len(pres.vertices), "step count exceeds 3|vertices|"
    return res


def _rev_inv(letters) -> tuple[Letter, ...]:
    return tuple(l.inv() for l in reversed(list(letters)))


def raw_side_paths(pres: QuiverPresentation, vertex: str, side: str, count: int,
                   bound: int | None = None) -> list[Path]:
    """The p, q sequence of one side without period detection (for auditing periods)."""
    if bound is None:
        bound = default_search_bound(pres)
    aut = ExtensionAutomaton.of(pres)
    outs = [a.name for a in pres.out_arrows(vertex)]
    arrow = (outs[0] if outs else None) if side == "left" else (outs[1] if len(outs) > 1 else None)
    paths: list[Path] = []
    for step in range(1, count + 1):
        if step == 1:
            path, _ = _first_step(aut, vertex, arrow, bound)
        elif step % 2 == 1:
            path, _, _ = _p_step(aut, paths[-1], bound)
        else:
            path, _, _ = _q_step(aut, paths[-1])
        paths.append(path)
        if path.is_trivial:
            break
    return paths


def phantom_window(res: PhantomResult, left: int = 1, right: int = 1) -> tuple[StringWord, int]:
    """Finite window and the position of the anchor inside it."""
    return window_with_anchor(res.phantom, left if res.phantom.left_ray else 0,
                              right if res.phantom.right_ray else 0)


# ---------------------------------------------------------------- reports

@dataclass(frozen=True)
class InfinitePhantom:
    result: PhantomResult


@dataclass(frozen=True)
class SimpleSummary:
    vertex: str
    phantom: PhantomResult | None
    finite: bool
    approximation_pdim: int | None
    approximation_dim: int | None = None
    approximation: str = ""         # word literal or saguaro description


@dataclass(frozen=True)
class FindimReport:
    contravariantly_finite: bool
    simples: tuple[SimpleSummary, ...]
    lfindim: int | None
    lfindim_is_lower_bound: bool = False
    route: str = "string"
    word_bound: int = 0


def minimal_approximation(pres: QuiverPresentation, vertex: str, bound: int | None = None):
    res = characteristic_phantom(pres, vertex, bound)
    if not res.finite:
        return InfinitePhantom(res)
    return string_module(pres, res.phantom.core)


def contravariant_finiteness(pres: QuiverPresentation, bound: int | None = None) -> FindimReport:
    sims = []
    for v in pres.vertices:
        res = characteristic_phantom(pres, v, bound)
        sims.append(SimpleSummary(v, res, res.finite, None))
    cf = all(s.finite for s in sims)
    return FindimReport(cf, tuple(sims), None, False, "string")


def findim_report(pres: QuiverPresentation, bound: int | None = None, word_bound: int = 8) -> FindimReport:
    """Finitistic dimension via minimal approximations of the simples."""
    cls = classify(pres)
    if not cls.admits_string_calculus and cls.is_left_serial and cls.is_monomial:
        from .serial import serial_findim_report
        return serial_findim_report(pres)
    base = contravariant_finiteness(pres, bound)
    sims = []
    for s in base.simples:
        if s.finite:
            core = s.phantom.phantom.core
            pd = string_pdim(pres, core)
            sims.append(SimpleSummary(s.vertex, s.phantom, True, pd.value, len(core.letters) + 1,
                                      core.literal()))
        else:
            sims.append(s)
    if base.contravariantly_finite:
        return FindimReport(True, tuple(sims), max(s.approximation_pdim for s in sims), False, "string")
    best = 0
    for w in enumerate_words(pres, word_bound):
        r = string_pdim(pres, w)
        if r.is_finite:
            best = max(best, r.value)
    return FindimReport(False, tuple(sims), best, True, "string", word_bound)


# ---------------------------------------------------------------- effectiveness

@dataclass(frozen=True)
class FactorizationReport:
    vertex: str
    letter_bound: int
    tested: int
    with_maps: int
    passed: int
    failed: int
    window: tuple[int, int]
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.failed == 0


def anchor_map(pres: QuiverPresentation, w: StringWord, anchor: int) -> oracle.ModuleMap:
    """The map M(w) -> S sending the anchor node to 1 and every other node to 0."""
    src = oracle.realize(pres, w)
    v = w.nodes[anchor]
    tgt = oracle.simple(pres, v)
    fld = pres.field
    maps = {u: fld.zeros(tgt.dims[u], src.dims[u]) for u in pres.vertices}
    idx = sum(1 for k in range(anchor) if w.nodes[k] == v)
    maps[v][0, idx] = fld.scalar(1)
    f = oracle.ModuleMap(src, tgt, maps)
    if not f.commutes():
        raise ValueError("anchor is not a top element")
    return f


def effectiveness_check(pres: QuiverPresentation, res: PhantomResult, letter_bound: int = 12,
                        seed: int = 0, max_window: int = 8) -> FactorizationReport:
    """Every map from a finite-pdim string with at most letter_bound letters into
    S factors through the anchor map of a large enough window."""
    e = res.anchor_vertex
    S = oracle.simple(pres, e)
    windows = {}

    def window_data(n):
        if n not in windows:
            w, a = phantom_window(res, n, n)
            windows[n] = (w, anchor_map(pres, w, a))
        return windows[n]

    tested = with_maps = passed = 0
    failures = []
    used = 1
    for w in enumerate_words(pres, letter_bound):
        if not string_pdim(pres, w).is_finite:
            continue
        tested += 1
        if e not in [w.nodes[k] for k in w.peaks]:
            passed += 1
            continue
        M = oracle.realize(pres, w)
        to_s = oracle.hom_basis(M, S)
        if not to_s:
            passed += 1
            continue
        with_maps += 1
        n = used
        ok = False
        while n <= max_window:
            W, f = window_data(n)
            if oracle.factors_through(to_s, f, oracle.hom_basis(M, f.source)):
                ok = True
                break
            if res.finite:
                break
            n *= 2
        if ok:
            passed += 1
            used = max(used, n)
        else:
            failures.append(w.literal())
    size = (used if res.phantom.left_ray else 0, used if res.phantom.right_ray else 0)
    return FactorizationReport(e, letter_bound, tested, with_maps, passed, len(failures), size,
                               tuple(failures))


# ---------------------------------------------------------------- failure criterion

@dataclass(frozen=True)
class CriterionWitness:
    vertices: tuple[str, ...]
    p_paths: tuple[Path, ...]
    q_paths: tuple[Path, ...]
    verified_bound: int


def _zigzag_word(pres, ps: Sequence[Path], qs: Sequence[Path], n: int) -> StringWord:
    """(p_1 q_2^-1 ... p_m q_1^-1)^n followed by p_1 ... p_m, walking from e_1."""
    m = len(ps)
    letters: list[Letter] = []
    for _ in range(n):
        for i in range(m):
            letters.extend(letter(pres, a) for a in ps[i].arrows)
            q = qs[(i + 1) % m]
            letters.extend(letter(pres, a, True) for a in reversed(q.arrows))
    for i in range(m):
        letters.extend(letter(pres, a) for a in ps[i].arrows)
        if i + 1 < m:
            q = qs[i + 1]
            letters.extend(letter(pres, a, True) for a in reversed(q.arrows))
    return StringWord(ps[0].start, tuple(letters))


def _condition_one(pres, aut, ps, qs, n_max: int) -> bool:
    """Every zig-zag word is valid, has finite interior valleys, and extends on both ends."""
    from .strings import validate_word, WordError
    for n in range(0, n_max + 1):
        w = _zigzag_word(pres, ps, qs, n)
        try:
            validate_word(pres, w)
        except WordError:
            return False
        if not _interior_valleys_finite(aut, w):
            return False
        # left end is the peak at e_1 (arm p_1); right end is the valley after p_m
        if aut.distance(("peak", ps[0].start, ps[0].first)) == INF:
            return False
        if aut.distance(("down", ps[-1])) == INF:
            return False
    return True


def _condition_two(pres, ps, qs, corpus) -> bool:
    """Checked over explicit modules in the corpus.

    (a) the kernel of p_1 at e_1 lies in the radical;
    (b) whenever p_i a = q_{i+1} b with p_{i+1} b = 0, the common value is 0.
    """
    fld = pres.field
    m = len(ps)
    for M in corpus:
        rad = oracle.radical_span(M)
        e1 = ps[0].start
        if M.dims[e1]:
            A = M.path_action(ps[0])
            ker = fld.nullspace(A)
            if ker.shape[1]:
                r = rad[e1]
                if fld.rank(np.concatenate([r, ker], axis=1)) > r.shape[1]:
                    return False
        for i in range(m):
            p, q, pn = ps[i], qs[(i + 1) % m], ps[(i + 1) % m]
            da, db = M.dims[p.start], M.dims[q.start]
            if not da or not db:
                continue
            P, Q, PN = M.path_action(p), M.path_action(q), M.path_action(pn)
            top = np.concatenate([P, fld.sub(fld.zeros(*Q.shape), Q)], axis=1)
            bot = np.concatenate([fld.zeros(PN.shape[0], da), PN], axis=1)
            sol = fld.nullspace(np.concatenate([top, bot], axis=0))
            if sol.shape[1] and not fld.is_zero(fld.matmul(P, sol[:da, :])):
                return False
    return True


def failure_witness_search(pres: QuiverPresentation, vertex: str, bound: int = 6,
                           letter_bound: int = 6, phantom: PhantomResult | None = None):
    """Look for a zig-zag cycle through ``vertex`` meeting the failure criterion."""
    aut = ExtensionAutomaton.of(pres)
    corpus_words = [w for w in enumerate_words(pres, letter_bound) if string_pdim(pres, w).is_finite]
    corpus = [oracle.realize(pres, w) for w in corpus_words]
    n_max = max(1, bound // 3)

    def check(ps, qs):
        if not _condition_one(pres, aut, ps, qs, n_max):
            return None
        if not _condition_two(pres, ps, qs, corpus):
            return None
        return CriterionWitness(tuple(p.start for p in ps), tuple(ps), tuple(qs), letter_bound)

    if phantom is not None and phantom.phantom.right_ray is not None:
        cand = _ray_cycle(pres, phantom, vertex)
        if cand is not None:
            hit = check(*cand)
            if hit is not None:
                return hit
    for ps, qs in _zigzag_cycles(pres, vertex, bound):
        hit = check(ps, qs)
        if hit is not None:
            return hit
    return None


def _ray_cycle(pres, res: PhantomResult, vertex: str):
    per = res.phantom.right_ray.period
    w = StringWord(per[0].walk_from, per)
    ps, qs = [], []
    for i, j, inv in w.runs():
        (qs if inv else ps).append(w.run_path(i, j))
    if not ps or len(ps) != len(qs) or ps[0].start != vertex:
        return None
    # period = p_1 q_2^-1 ... p_m q_1^-1 ; rotate q so that q_i starts at e_i
    qs = qs[-1:] + qs[:-1]
    return ps, qs


def _zigzag_cycles(pres, vertex: str, bound: int):
    """Sequences (p_i, q_i) with p_i, q_i starting at e_i, end(p_i) = end(q_{i+1}),
    distinct e_i, and total letters at most ``bound``."""
    results = []

    def extend(ps, qs_next, used, letters):
        cur = ps[-1]
        for q in pres.paths_to(cur.end):
            if q.is_trivial or q.last == cur.last:
                continue
            tot = letters + q.length
            if tot > bound:
                continue
            t = q.start
            if t == vertex:
                qs = [q] + qs_next
                results.append((list(ps), qs))
                continue
            if t in used:
                continue
            for p in pres.paths_from(t):
                if p.is_trivial or p.first == q.first or tot + p.length > bound:
                    continue
                extend(ps + [p], qs_next + [q], used | {t}, tot + p.length)

    for p in pres.paths_from(vertex):
        if not p.is_trivial and p.length <= bound:
            extend([p], [], {vertex}, p.length)
    results.sort(key=lambda r: (sum(x.length for x in r[0] + r[1]), [x.arrows for x in r[0]],
                                [x.arrows for x in r[1]]))
    for ps, qs in results:
        if qs[0].first != ps[0].first:
            yield ps, qs
