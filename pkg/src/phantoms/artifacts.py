"""Rendering of layered graphs and a versioned JSON format for results.

Every encoded value is wrapped in an envelope::

    {"format": "phantoms", "version": 1, "type": "<class>", "payload": {...}}

Keys are sorted and the output is indented, so files diff cleanly.  Words
are written as letter tokens (``a`` or ``a~``) plus an ``arrows`` table
giving each arrow's endpoints; generalized strings use the layout
``{left: {pre, per}, core, right: {pre, per}, anchor}``.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from fractions import Fraction

from . import homology, phantom, presentation, serial, strings
from .presentation import QuiverPresentation
from .strings import GeneralizedString, LayeredGraph, Letter, Ray, StringWord

FORMAT = "phantoms"
VERSION = 1


class DecodeError(ValueError):
    pass


# ---------------------------------------------------------------- rendering

@dataclass(frozen=True)
class RenderOptions:
    format: str = "ascii"       # ascii | dot
    show_labels: bool = True
    window: int = 2

    def __post_init__(self):
        if self.window < 0:
            raise ValueError("window must be >= 0")
        if self.format not in ("ascii", "dot"):
            raise ValueError(f"unknown render format {self.format!r}")


def as_graph(obj, window: int = 2) -> LayeredGraph:
    if isinstance(obj, LayeredGraph):
        return obj
    if isinstance(obj, StringWord):
        return strings.word_graph(obj)
    if isinstance(obj, GeneralizedString):
        return strings.word_graph(strings.window(
            obj, window if obj.left_ray else 0, window if obj.right_ray else 0))
    if isinstance(obj, phantom.PhantomResult):
        return strings.word_graph(phantom.phantom_window(obj, window, window)[0])
    graph = getattr(obj, "graph", None)
    if isinstance(graph, LayeredGraph):
        return graph
    raise TypeError(f"cannot render {type(obj).__name__}")


def render_graph(obj, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    g = as_graph(obj, opts.window)
    return _dot(g, opts) if opts.format == "dot" else _ascii(g, opts)


def _ascii(g: LayeredGraph, opts: RenderOptions) -> str:
    if not g.nodes:
        return "(zero)\n"
    width = max(len(label) for label, _ in g.nodes) + 1
    depth = max(layer for _, layer in g.nodes)
    rows = [[" " * width for _ in g.nodes] for _ in range(depth + 1)]
    for k, (label, layer) in enumerate(g.nodes):
        rows[layer][k] = label.ljust(width)
    lines = ["".join(r).rstrip() for r in rows]
    if opts.show_labels and g.edges:
        lines.append("")
        for arrow, i, j in g.edges:
            lines.append(f"  {arrow}: {g.nodes[i][0]}#{i} -> {g.nodes[j][0]}#{j}")
    for n, pool in enumerate(g.pools):
        lines.append(f"  pool {n}: " + " ".join(f"{g.nodes[i][0]}#{i}" for i in pool))
    return "\n".join(lines) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot(g: LayeredGraph, opts: RenderOptions) -> str:
    out = ["digraph module {", "  rankdir=TB;", "  node [shape=plaintext];"]
    for k, (label, layer) in enumerate(g.nodes):
        out.append(f"  n{k} [label={_quote(label)}, layer={layer}];")
    by_layer: dict[int, list[int]] = {}
    for k, (_, layer) in enumerate(g.nodes):
        by_layer.setdefault(layer, []).append(k)
    for layer in sorted(by_layer):
        members = "; ".join(f"n{k}" for k in by_layer[layer])
        out.append(f"  {{ rank=same; {members}; }}")
    for n, pool in enumerate(g.pools):
        out.append(f"  subgraph cluster_pool{n} {{ style=dotted; "
                   + " ".join(f"n{k};" for k in pool) + " }")
    for arrow, i, j in g.edges:
        attr = f" [label={_quote(arrow)}]" if opts.show_labels else ""
        out.append(f"  n{i} -> n{j}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- encoding

_CLASSES = {c.__name__: c for c in (
    presentation.Arrow, presentation.Quiver, presentation.Path, presentation.AlgebraClass,
    strings.LayeredGraph, strings.StringModule, strings.BandModule,
    homology.PdimResult, homology.OracleCheck, phantom.Decision, phantom.StepEntry, phantom.PhantomResult,
    phantom.SimpleSummary, phantom.FindimReport, phantom.FactorizationReport,
    phantom.CriterionWitness, serial.Saguaro,
)}


def _token(l: Letter) -> str:
    return l.arrow + ("~" if l.inverse else "")


def _arrow_table(letters) -> dict:
    return {l.arrow: [l.source, l.target] for l in letters}


def _letters(tokens, table) -> tuple[Letter, ...]:
    out = []
    for t in tokens:
        name = t[:-1] if t.endswith("~") else t
        src, tgt = table[name]
        out.append(Letter(name, t.endswith("~"), src, tgt))
    return tuple(out)


def _ray_letters(g: GeneralizedString):
    for r in (g.left_ray, g.right_ray):
        if r is not None:
            yield from r.preperiod
            yield from r.period


def _enc(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (tuple, list)):
        return [_enc(v) for v in x]
    if isinstance(x, Fraction):
        return {"_t": "Fraction", "value": str(x)}
    if isinstance(x, QuiverPresentation):
        return {"_t": "QuiverPresentation", "dsl": presentation.print_presentation(x)}
    if isinstance(x, Letter):
        return {"_t": "Letter", "token": _token(x), "arrows": _arrow_table([x])}
    if isinstance(x, StringWord):
        return {"_t": "StringWord", "start": x.start, "letters": [_token(l) for l in x.letters],
                "arrows": _arrow_table(x.letters)}
    if isinstance(x, Ray):
        return {"_t": "Ray", "pre": [_token(l) for l in x.preperiod],
                "per": [_token(l) for l in x.period],
                "arrows": _arrow_table(x.preperiod + x.period)}
    if isinstance(x, GeneralizedString):
        def ray(r):
            if r is None:
                return None
            return {"pre": [_token(l) for l in r.preperiod], "per": [_token(l) for l in r.period]}
        return {"_t": "GeneralizedString", "start": x.core.start,
                "core": [_token(l) for l in x.core.letters], "anchor": x.anchor,
                "left": ray(x.left_ray), "right": ray(x.right_ray),
                "arrows": _arrow_table(x.core.letters + tuple(_ray_letters(x)))}
    if dataclasses.is_dataclass(x) and type(x).__name__ in _CLASSES:
        out = {"_t": type(x).__name__}
        for f in dataclasses.fields(x):
            if f.init:
                out[f.name] = _enc(getattr(x, f.name))
        return out
    raise TypeError(f"cannot encode {type(x).__name__}")


def _dec(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, list):
        return tuple(_dec(v) for v in x)
    if not isinstance(x, dict) or "_t" not in x:
        raise DecodeError("malformed value")
    t = x["_t"]
    if t == "Fraction":
        return Fraction(x["value"])
    if t == "QuiverPresentation":
        return presentation.parse_presentation(x["dsl"])
    if t == "Letter":
        return _letters([x["token"]], x["arrows"])[0]
    if t == "StringWord":
        return StringWord(x["start"], _letters(x["letters"], x["arrows"]))
    if t == "Ray":
        return Ray(_letters(x["pre"], x["arrows"]), _letters(x["per"], x["arrows"]))
    if t == "GeneralizedString":
        table = x["arrows"]

        def ray(r):
            if r is None:
                return None
            return Ray(_letters(r["pre"], table), _letters(r["per"], table))
        core = StringWord(x["start"], _letters(x["core"], table))
        return GeneralizedString(core, x["anchor"], ray(x["left"]), ray(x["right"]))
    cls = _CLASSES.get(t)
    if cls is None:
        raise DecodeError(f"unknown type {t!r}")
    kwargs = {k: _dec(v) for k, v in x.items() if k != "_t"}
    return cls(**kwargs)


def type_name(obj) -> str:
    return type(obj).__name__


def to_data(obj) -> dict:
    return {"format": FORMAT, "version": VERSION, "type": type_name(obj), "payload": _enc(obj)}


def encode(obj) -> bytes:
    text = json.dumps(to_data(obj), sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def decode(data: bytes | str):
    try:
        text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
        env = json.loads(text)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DecodeError(f"malformed input: {exc}") from None
    if not isinstance(env, dict) or env.get("format") != FORMAT:
        raise DecodeError("not a phantoms artifact")
    if env.get("version") != VERSION:
        raise DecodeError(f"unsupported version {env.get('version')!r} (expected {VERSION})")
    try:
        obj = _dec(env["payload"])
    except DecodeError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DecodeError(f"malformed payload: {exc}") from None
    if type_name(obj) != env.get("type"):
        raise DecodeError(f"payload is {type_name(obj)}, envelope says {env.get('type')!r}")
    return obj
