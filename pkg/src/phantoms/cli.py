"""Command line interface.

Exit codes: 0 success, 1 bad input or an algebra outside a routine's scope,
2 a search bound was too small to decide.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path as FsPath

from . import artifacts, catalog, homology, oracle, phantom, serial, strings
from .presentation import (
    Path, PresentationError, QuiverPresentation, basis_paths, classify,
    dimension, parse_presentation,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tagged(exc: Exception) -> str:
    module = type(exc).__module__.rsplit(".", 1)[-1]
    return f"error [{module}]: {exc}"


def load_presentation(spec: str) -> QuiverPresentation:
    fs = FsPath(spec)
    if fs.exists():
        return parse_presentation(fs.read_text(encoding="utf-8"))
    if spec in catalog.NAMES:
        return catalog.load(spec)
    raise UsageError(f"no such file: {spec}")


def _bound(args) -> int | None:
    if args.bound is not None:
        return args.bound
    env = os.environ.get("PHANTOM_BOUND")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"PHANTOM_BOUND must be an integer, got {env!r}") from None
    return None


# ---------------------------------------------------------------- output

class Out:
    """Collects the text form, a renderable graph and a serializable value."""

    def __init__(self, args, pres: QuiverPresentation):
        self.args = args
        self.pres = pres
        self.lines: list[str] = []
        self.graph = None
        self.value = None

    def emit(self, line: str = "") -> None:
        self.lines.append(line)

    def flush(self, stream) -> None:
        fmt = self.args.format
        if fmt == "data":
            value = self.value if self.value is not None else self.pres
            stream.write(artifacts.encode(value).decode("utf-8"))
        elif fmt == "dot":
            graph = self.graph if self.graph is not None else quiver_graph(self.pres)
            stream.write(artifacts.render_graph(graph, artifacts.RenderOptions("dot", window=self.args.window)))
        else:
            stream.write("\n".join(self.lines) + "\n")


def quiver_graph(pres: QuiverPresentation) -> strings.LayeredGraph:
    index = {v: k for k, v in enumerate(pres.vertices)}
    return strings.LayeredGraph(tuple((v, 0) for v in pres.vertices),
                                tuple((a.name, index[a.source], index[a.target]) for a in pres.arrows))


def _render(obj, window: int) -> str:
    return artifacts.render_graph(obj, artifacts.RenderOptions("ascii", True, window))


def _pdim_text(r: homology.PdimResult) -> str:
    if r.is_finite:
        return str(r.value)
    return f"infinite ({r.status})"


# ---------------------------------------------------------------- commands

def cmd_classify(args, pres, out: Out):
    c = classify(pres)
    out.value = c
    out.emit(f"algebra {pres.name}: {c.describe()}")
    for name in ("is_monomial", "is_special_biserial", "is_string", "is_left_serial",
                 "admits_string_calculus"):
        out.emit(f"  {name.removeprefix('is_')}: {'yes' if getattr(c, name) else 'no'}")


def cmd_basis(args, pres, out: Out):
    paths = basis_paths(pres)
    out.value = tuple(paths)
    out.emit(f"dimension {dimension(pres)}")
    for v in pres.vertices:
        ps = [str(p) for p in paths if p.start == v]
        out.emit(f"  P({v}) [{len(ps)}]: " + ", ".join(ps))


def _module_arg(args, pres):
    if args.string is not None:
        return strings.make_string(pres, args.string)
    if args.path is not None:
        return pres.parse_path(args.path)
    if getattr(args, "simple", None) is not None:
        pres.trivial(args.simple)
        return strings.StringWord(args.simple, ())
    raise UsageError("give --string, --path or --simple")


def cmd_pdim(args, pres, out: Out):
    m = _module_arg(args, pres)
    if isinstance(m, Path):
        homology.require_monomial(pres)
        r = homology.path_pdim(pres, m)
        what = f"path module of {m}"
    else:
        r = homology.string_pdim(pres, m)
        what = f"string {m.literal() or 'e' + m.start}"
    out.value = r
    out.emit(f"pdim of {what}: {_pdim_text(r)}")
    if not r.is_finite and r.certificate:
        out.emit("  certificate: " + " -> ".join(str(c) for c in r.certificate)
                 + f" (cycle from position {r.cycle_start})")
        out.emit(f"  certificate verifies: {'yes' if homology.verify_certificate(pres, r) else 'no'}")


def cmd_syzygy(args, pres, out: Out):
    m = _module_arg(args, pres)
    if isinstance(m, Path):
        homology.require_monomial(pres)
        parts = homology.path_syzygy(pres, m)
        out.value = tuple(parts)
        out.emit(f"syzygy of path module {m}: " + (" + ".join(str(p) for p in parts) or "0"))
        return
    parts = homology.string_syzygy(pres, m)
    out.value = tuple(parts)
    out.emit(f"syzygy of {m.literal() or 'e' + m.start}:")
    if not parts:
        out.emit("  0 (projective)")
    for w in parts:
        out.emit(f"  {w.literal() or 'e' + w.start}")


def _phantom_text(pres, res: phantom.PhantomResult, out: Out, window: int):
    g = res.phantom
    out.emit(f"characteristic phantom of S{res.anchor_vertex} over {pres.name}")
    out.emit(f"  finite: {'yes' if res.finite else 'no'}")
    out.emit(f"  core: {g.core.literal() or 'e' + g.core.start} (anchor at node {g.anchor})")
    for side, ray, found in (("left", g.left_ray, res.left_period_found_at),
                             ("right", g.right_ray, res.right_period_found_at)):
        if ray is None:
            out.emit(f"  {side}: terminates")
        else:
            pre = " ".join(str(l) for l in ray.preperiod) or "-"
            per = " ".join(str(l) for l in ray.period)
            out.emit(f"  {side}: periodic from step {found}; preperiod [{pre}] period [{per}]")
    out.emit(f"  steps: {res.step_count} (search bound {res.bound})")
    for s in res.steps:
        note = f"  ({s.note})" if s.note else ""
        out.emit(f"    {s.step:>2} {s.side:<5} {s.kind} {s.path}{note}")
    for n in res.notes:
        out.emit(f"  note: {n}")
    out.emit("")
    if res.finite:
        out.emit("minimal approximation of the simple: string module " + (g.core.literal() or "e" + g.core.start))
    else:
        out.emit(f"window ({window} periods per infinite side):")
    out.emit(_render(res, window).rstrip("\n"))


def cmd_phantom(args, pres, out: Out):
    res = phantom.characteristic_phantom(pres, args.simple, _bound(args))
    out.value = res
    out.graph = res
    _phantom_text(pres, res, out, args.window)


def cmd_cfinite(args, pres, out: Out):
    rep = phantom.contravariant_finiteness(pres, _bound(args))
    out.value = rep
    if rep.contravariantly_finite:
        out.emit("contravariantly finite: every simple has a finite characteristic phantom")
    else:
        bad = ", ".join(f"S{s.vertex}" for s in rep.simples if not s.finite)
        out.emit(f"NOT contravariantly finite; infinite phantoms: {bad}")
    for s in rep.simples:
        core = s.phantom.phantom.core
        out.emit(f"  S{s.vertex}: {'finite' if s.finite else 'infinite'}"
                 + (f", approximation {core.literal() or 'e' + core.start}" if s.finite else ""))


def cmd_findim(args, pres, out: Out):
    rep = phantom.findim_report(pres, _bound(args), args.word_bound)
    out.value = rep
    qual = " (lower bound from strings of at most %d letters)" % rep.word_bound \
        if rep.lfindim_is_lower_bound else ""
    out.emit(f"left finitistic dimension: {rep.lfindim}{qual}")
    out.emit(f"  route: {rep.route}; contravariantly finite: {'yes' if rep.contravariantly_finite else 'no'}")
    for s in rep.simples:
        if s.finite:
            out.emit(f"  S{s.vertex}: approximation pdim {s.approximation_pdim}, dim {s.approximation_dim}: "
                     f"{s.approximation or '(simple)'}")
        else:
            out.emit(f"  S{s.vertex}: no finite approximation")


def cmd_approx(args, pres, out: Out):
    c = classify(pres)
    if c.is_left_serial and c.is_monomial and not c.admits_string_calculus or args.pd is not None:
        sag = serial.saguaro_approximation(pres, args.simple, args.pd)
        out.value = sag
        out.graph = sag.graph
        d = "inf" if args.pd is None else str(args.pd)
        out.emit(f"saguaro approximation of S{args.simple} in P^({d}): socle {sag.socle}, "
                 f"dim {sag.dimension}, pdim {sag.pdim}")
        for k, t in enumerate(sag.trunks):
            mark = "  <- maps onto the simple" if k == sag.first else ""
            out.emit(f"  trunk {k}: top {t.start}, mast {t}{mark}")
        for i, qa, qb in sag.gluings:
            out.emit(f"  glue {i}/{i + 1}: {qa} = {qb}")
        out.emit(_render(sag.graph, args.window).rstrip("\n"))
        return
    res = phantom.minimal_approximation(pres, args.simple, _bound(args))
    if isinstance(res, phantom.InfinitePhantom):
        out.value = res.result
        out.graph = res.result
        out.emit(f"S{args.simple} has no finite minimal approximation; its characteristic phantom is infinite")
        out.emit(_render(res.result, args.window).rstrip("\n"))
        return
    out.value = res.word
    out.graph = res.graph
    out.emit(f"minimal approximation of S{args.simple}: string module {res.word.literal() or 'e' + res.word.start}"
             f" (dim {res.dimension})")
    out.emit(_render(res.graph, args.window).rstrip("\n"))


def cmd_witness(args, pres, out: Out):
    res = phantom.characteristic_phantom(pres, args.simple, _bound(args))
    hit = phantom.failure_witness_search(pres, args.simple, args.cycle_bound, args.letter_bound, res)
    out.value = hit if hit is not None else res
    if hit is None:
        out.emit(f"no zig-zag witness through {args.simple} up to cycle length {args.cycle_bound}")
        return
    out.emit(f"failure witness through {' '.join(hit.vertices)} "
             f"(checked against strings of at most {hit.verified_bound} letters)")
    for p, q in zip(hit.p_paths, hit.q_paths):
        out.emit(f"  p {p}   q {q}")


def cmd_bands(args, pres, out: Out):
    found = homology.band_finite_pdim_search(pres, args.max_word_len, args.max_poly_deg,
                                             seed=args.seed, exhaustive=args.exhaustive)
    out.value = tuple(found)
    out.emit(f"bands of finite pdim up to {args.max_word_len} letters, degree {args.max_poly_deg}: "
             f"{len(found)}")
    for b in found:
        out.emit(f"  {b.word.literal()} poly {list(b.poly)}")


def cmd_check(args, pres, out: Out):
    if not args.oracle:
        raise UsageError("check needs --oracle")
    rep = homology.check_against_oracle(pres, args.samples, args.seed, args.max_letters)
    out.value = rep
    out.emit(f"oracle check on {rep.samples} random strings (seed {rep.seed}): "
             f"{'ok' if rep.ok else 'MISMATCH'}")
    out.emit(f"  syzygy isomorphism failures: {len(rep.iso_failures)}")
    out.emit(f"  pdim disagreements: {len(rep.pdim_failures)}")
    out.emit(f"  oracle undecided: {rep.undecided}")
    for w in rep.iso_failures + rep.pdim_failures:
        out.emit(f"    {w}")
    return 0 if rep.ok else 1


def cmd_render(args, pres, out: Out):
    if args.simple is not None and args.string is None and args.path is None:
        obj = phantom.characteristic_phantom(pres, args.simple, _bound(args))
    else:
        m = _module_arg(args, pres)
        obj = strings.direct_word(m, pres) if isinstance(m, Path) else m
    out.graph = obj
    out.value = obj
    out.emit(_render(obj, args.window).rstrip("\n"))


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="phantoms", description="Homological tools for quivers with relations.")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("algebra", help=".alg file or a built-in name (" + ", ".join(catalog.NAMES) + ")")
        p.add_argument("--format", choices=("text", "dot", "data"), default="text")
        p.add_argument("--bound", type=int, default=None, help="end-extension search bound")
        p.add_argument("--window", type=int, default=2, help="periods shown per infinite side")
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(fn=fn)
        return p

    def module_opts(p, simple=False):
        p.add_argument("--string", help="word literal such as 'a b~ c'")
        p.add_argument("--path", help="path in product form such as 'c*b*a'")
        if simple:
            p.add_argument("--simple", help="vertex of a simple module")

    add("classify", cmd_classify, "classify the algebra")
    add("basis", cmd_basis, "list the path basis")
    module_opts(add("pdim", cmd_pdim, "projective dimension of a string or path module"), simple=True)
    module_opts(add("syzygy", cmd_syzygy, "first syzygy of a string or path module"), simple=True)
    add("phantom", cmd_phantom, "characteristic phantom of a simple").add_argument("--simple", required=True)
    add("cfinite", cmd_cfinite, "decide contravariant finiteness of finite-pdim modules")
    add("findim", cmd_findim, "left finitistic dimension").add_argument("--word-bound", type=int, default=8)
    p = add("approx", cmd_approx, "minimal approximation of a simple")
    p.add_argument("--simple", required=True)
    p.add_argument("--pd", type=int, default=None, help="projective dimension cap (left serial algebras)")
    p = add("witness", cmd_witness, "search for a zig-zag failure witness")
    p.add_argument("--simple", required=True)
    p.add_argument("--cycle-bound", type=int, default=6)
    p.add_argument("--letter-bound", type=int, default=6)
    p = add("bands", cmd_bands, "search for bands of finite projective dimension")
    p.add_argument("--max-word-len", type=int, default=8)
    p.add_argument("--max-poly-deg", type=int, default=2)
    p.add_argument("--exhaustive", action="store_true")
    p = add("check", cmd_check, "compare combinatorial syzygies against linear algebra")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--max-letters", type=int, default=6)
    module_opts(add("render", cmd_render, "draw a module graph"), simple=True)
    return top


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing command")
        pres = load_presentation(args.algebra)
        out = Out(args, pres)
        code = args.fn(args, pres, out) or 0
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 1
    except phantom.PhantomInconclusive as exc:
        stderr.write(_tagged(exc) + "\n")
        return 2
    except (PresentationError, strings.WordError, homology.AlgebraScopeError, oracle.OracleError,
            artifacts.DecodeError, KeyError, ValueError, OSError) as exc:
        stderr.write(_tagged(exc) + "\n")
        return 1
    out.flush(stdout)
    return code


def main() -> None:
    sys.exit(run())
