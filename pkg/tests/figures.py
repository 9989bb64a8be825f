"""Golden graphs transcribed from the worked examples.

Nodes are (vertex, layer) in walk order, layer 0 on top; edges are
(upper node, lower node) index pairs.
"""

F_S7 = {"nodes": [("7", 0), ("6", 1), ("3", 2)], "edges": {(0, 1), (1, 2)}}

# two periods of the right ray, left side terminated; the top x0 is node 7
F_S1 = {
    "nodes": [("3", 2), ("6", 1), ("7", 0), ("9", 1), ("8", 0), ("6", 1), ("2", 2), ("1", 0),
              ("3", 1), ("6", 0), ("2", 1), ("1", 0), ("3", 1), ("6", 0), ("2", 1)],
    "edges": {(1, 0), (2, 1), (2, 3), (4, 3), (4, 5), (5, 6), (7, 6), (7, 8), (9, 8), (9, 10),
              (11, 10), (11, 12), (13, 12), (13, 14)},
    "anchor": 7,
}

# two periods on each side; the top of type 0 is node 10
H_S0 = {
    "nodes": [("6", 1), ("14", 0), ("12", 1), ("10", 0), ("6", 1), ("14", 0), ("12", 1), ("10", 0),
              ("6", 1), ("2", 2), ("0", 0), ("1", 1), ("3", 0), ("5", 2), ("9", 1), ("13", 0),
              ("15", 1), ("16", 0), ("9", 1), ("13", 0), ("15", 1), ("16", 0), ("9", 1)],
    "edges": {(1, 0), (1, 2), (3, 2), (3, 4), (5, 4), (5, 6), (7, 6), (7, 8), (8, 9), (10, 9),
              (10, 11), (12, 11), (12, 13), (14, 13), (15, 14), (15, 16), (17, 16), (17, 18),
              (19, 18), (19, 20), (21, 20), (21, 22)},
    "anchor": 10,
}

# saguaro approximations of S1 over E, trunks as (top, path) in display order
E_SAGUAROS = {
    1: {"socle": "4", "trunks": [("1", "a3_4*a2_3*a1_2"), ("5", "a3_4*a2_3*a5_2"), ("6", "a3_4*a6_3"),
                                  ("8", "a3_4*a8_3"), ("7", "a7_4")],
        "layers": {"1": 0, "5": 0, "6": 0, "8": 0, "7": 0, "2": 1, "3": 2, "4": 3}},
    2: {"socle": "3", "trunks": [("1", "a2_3*a1_2"), ("5", "a2_3*a5_2"), ("6", "a6_3"), ("8", "a8_3")],
        "layers": {"1": 0, "5": 0, "6": 0, "8": 0, "2": 1, "3": 2}},
    3: {"socle": "3", "trunks": [("1", "a2_3*a1_2"), ("5", "a2_3*a5_2"), ("11", "a6_3*a11_6"),
                                  ("9", "a8_3*a9_8"), ("10", "a8_3*a10_8")],
        "layers": {"1": 0, "5": 0, "11": 0, "9": 0, "10": 0, "2": 1, "6": 1, "8": 1, "3": 2}},
}


def graph_matches(graph, figure) -> bool:
    if list(graph.nodes) != [tuple(n) for n in figure["nodes"]]:
        return False
    return {(i, j) for _, i, j in graph.edges} == set(figure["edges"])


def saguaro_matches(sag, figure) -> bool:
    if sag.socle != figure["socle"]:
        return False
    if [(t.start, str(t)) for t in sag.trunks] != [tuple(t) for t in figure["trunks"]]:
        return False
    layers = {}
    for label, layer in sag.graph.nodes:
        layers.setdefault(label, layer)
        if layers[label] != layer:
            return False
    return layers == figure["layers"]
