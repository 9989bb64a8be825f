"""Bundled presentations of the worked examples and random string algebras."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .presentation import QuiverPresentation, build_presentation, parse_presentation

NAMES = ("A3", "E", "F", "G", "H", "L22")


def source(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"no bundled presentation {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__package__).joinpath("data", f"{name}.alg").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(name: str) -> QuiverPresentation:
    return parse_presentation(source(name))


def random_string_algebra(rng, max_vertices: int = 8, max_run: int = 4, name: str = "random",
                          field_char: int | None = 101) -> QuiverPresentation:
    """A random monomial string algebra on at most ``max_vertices`` vertices.

    Arrows respect in/out degree at most two; at each vertex incoming arrows are
    partially matched with outgoing ones (unmatched composites are relations),
    and every matched run of ``max_run + 1`` arrows is killed so the algebra is
    finite dimensional.
    """
    n = int(rng.integers(1, max_vertices + 1))
    verts = [str(i) for i in range(1, n + 1)]
    outdeg = dict.fromkeys(verts, 0)
    indeg = dict.fromkeys(verts, 0)
    arrows = []
    for _ in range(int(rng.integers(n, 2 * n + 2))):
        s, t = verts[rng.integers(n)], verts[rng.integers(n)]
        if outdeg[s] < 2 and indeg[t] < 2:
            arrows.append((f"x{len(arrows)}", s, t))
            outdeg[s] += 1
            indeg[t] += 1
    succ = {}
    relations = []
    for v in verts:
        ins = [a for a in arrows if a[2] == v]
        outs = [b for b in arrows if b[1] == v]
        free = list(outs)
        rng.shuffle(free)
        for a in ins:
            if free and rng.random() < 0.75:
                succ[a[0]] = free.pop()[0]
        for a in ins:
            for b in outs:
                if succ.get(a[0]) != b[0]:
                    relations.append((a[0], b[0]))
    run = int(rng.integers(1, max_run + 1))
    for a, *_ in arrows:
        chain = [a]
        while len(chain) <= run and chain[-1] in succ:
            chain.append(succ[chain[-1]])
        if len(chain) == run + 1:
            relations.append(tuple(chain))
    return build_presentation(name, verts, arrows, relations, field_char=field_char)
