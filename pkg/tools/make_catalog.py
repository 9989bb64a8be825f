"""Regenerate the bundled .alg files from vertex-path descriptions."""
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "phantoms" / "data"


def aname(s, t):
    return f"l{s}" if s == t else f"a{s}_{t}"


def emit(name, vertices, arrows, relations, header, linrels=()):
    lines = [f"# {header}", f"algebra {name}", "field 101", "vertex " + " ".join(vertices)]
    for s, t in arrows:
        lines.append(f"arrow {aname(s, t)}: {s} -> {t}")
    for seq in relations:
        arr = [aname(a, b) for a, b in zip(seq, seq[1:])]
        lines.append("relation " + " * ".join(reversed(arr)))
    for terms in linrels:
        parts = []
        for c, seq in terms:
            arr = [aname(a, b) for a, b in zip(seq, seq[1:])]
            parts.append(f"{c} " + "*".join(reversed(arr)))
        lines.append("linrel " + " + ".join(parts) + " = 0")
    (OUT / f"{name}.alg").write_text("\n".join(lines) + "\n")


V = lambda n, start=1: [str(i) for i in range(start, n + 1)]
L = lambda v: (v, v)

# twelve-vertex string algebra with an infinite phantom at vertex 1
emit("F", V(12),
     [("1", "2"), ("1", "3"), ("2", "11"), ("2", "4"), ("3", "12"), ("3", "5"),
      L("4"), L("5"), ("6", "2"), ("6", "3"), ("7", "9"), ("7", "6"),
      ("8", "6"), ("8", "9"), ("9", "10"), L("10"), L("11"), L("12")],
     [("1", "2", "4"), ("1", "2", "11", "11"), ("1", "3", "5"), ("1", "3", "12", "12"),
      ("2", "11", "11"), ("2", "4", "4"), ("3", "12", "12"), ("3", "5", "5"),
      ("4", "4", "4"), ("5", "5", "5"), ("10", "10", "10"), ("11", "11", "11"), ("12", "12", "12"),
      ("6", "2", "11"), ("6", "3", "12"),
      ("7", "9", "10", "10"), ("7", "6", "2"), ("7", "6", "3", "5"),
      ("8", "6", "3"), ("8", "9", "10"), ("9", "10", "10")],
     "string algebra on 12 vertices; S1 has an infinite characteristic phantom")

# special biserial, non-monomial: Lambda e1 has a commutative square
emit("G", V(10),
     [("1", "2"), ("1", "3"), ("2", "4"), ("3", "5"), ("4", "6"), ("5", "6"),
      ("6", "7"), ("6", "8"), ("7", "8"), ("8", "9"), ("9", "3"), ("10", "2")],
     [("2", "4", "6", "7"), ("3", "5", "6", "8"), ("4", "6", "8"), ("5", "6", "7"),
      ("6", "7", "8"), ("7", "8", "9"), ("8", "9", "3"), ("9", "3", "5"), ("10", "2", "4")],
     "special biserial algebra with a commutativity relation",
     linrels=[[(1, ("1", "2", "4", "6")), (-1, ("1", "3", "5", "6"))]])

# string-type algebra with a two-sided infinite phantom at vertex 0
emit("H", V(16, 0),
     [("0", "2"), ("0", "1"), L("1"), L("2"), ("2", "4"), ("3", "1"), ("3", "5"),
      L("4"), L("5"), ("5", "7"), ("6", "2"), ("6", "8"), L("7"), L("8"),
      ("9", "5"), ("9", "11"), ("10", "6"), ("10", "12"), L("11"), L("12"),
      ("13", "9"), ("13", "15"), ("14", "6"), ("14", "12"), L("15"),
      ("16", "15"), ("16", "9")],
     [("0", "2", "2"), ("0", "2", "4", "4"), ("0", "1", "1"),
      ("1", "1", "1"), ("2", "2", "2"), ("2", "4", "4"), ("2", "2", "4"), ("4", "4", "4"),
      ("3", "1", "1", "1"), ("3", "5", "5"), ("3", "5", "7", "7"),
      ("5", "5", "5"), ("5", "7", "7"), ("5", "5", "7"), ("7", "7", "7"), ("8", "8", "8"),
      ("6", "2", "4"), ("6", "2", "2", "2"), ("6", "8", "8"),
      ("9", "5", "7"), ("9", "5", "5", "5"), ("9", "11", "11"), ("11", "11", "11"),
      ("10", "6", "8"), ("10", "6", "2", "2", "2"), ("10", "12", "12"), ("12", "12", "12"),
      ("13", "9", "11"), ("13", "9", "5", "5", "5"), ("13", "15", "15"), ("15", "15", "15"),
      ("14", "6", "2"), ("14", "6", "8", "8"), ("14", "12", "12", "12"),
      ("16", "15", "15", "15"), ("16", "9", "5"), ("16", "9", "11", "11")],
     "monomial algebra on 17 vertices; S0 has a two-sided infinite phantom")

# left serial algebra on 14 vertices, left finitistic dimension 3
emit("E", V(14),
     [("1", "2"), ("2", "3"), ("3", "4"), ("4", "12"), ("5", "2"), ("6", "3"), ("7", "4"),
      ("8", "3"), ("9", "8"), ("10", "8"), ("11", "6"), ("12", "13"), ("13", "14"), L("14")],
     [("1", "2", "3", "4", "12"), ("3", "4", "12", "13", "14"), ("9", "8", "3", "4", "12", "13"),
      ("10", "8", "3", "4", "12", "13"), ("11", "6", "3", "4", "12", "13"),
      ("12", "13", "14", "14"), ("14", "14", "14")],
     "left serial algebra on 14 vertices")

lines = ["# one vertex with two loops; all products of two arrows vanish",
         "algebra L22", "field 101", "vertex e",
         "arrow alpha: e -> e", "arrow beta: e -> e",
         "relation beta * alpha", "relation alpha * beta",
         "relation alpha * alpha", "relation beta * beta"]
(OUT / "L22.alg").write_text("\n".join(lines) + "\n")

lines = ["# linearly oriented A3, no relations", "algebra A3", "field 101", "vertex 1 2 3",
         "arrow a: 1 -> 2", "arrow b: 2 -> 3"]
(OUT / "A3.alg").write_text("\n".join(lines) + "\n")
