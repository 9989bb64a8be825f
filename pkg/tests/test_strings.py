import numpy as np
import pytest
from hypothesis import given, strategies as st

from phantoms import catalog, oracle
from phantoms.phantom import characteristic_phantom
from phantoms.strings import (
    StringWord, WordError, enumerate_words, make_band, make_string, parse_word, random_word,
    string_module, validate_word, window, word_graph,
)

STRING_ALGEBRAS = ["A3", "F", "H", "L22"]


def test_trivial_word_is_simple(F):
    m = string_module(F, StringWord("7", ()))
    assert m.dim_vector == (("7", 1),) and m.tops == m.socle == ((0, "7"),)


def test_peak_word_is_projective(L22):
    w = make_string(L22, "beta alpha~")
    m = string_module(L22, w)
    assert m.dimension == 3
    assert len(m.tops) == 1 and len(m.socle) == 2
    assert oracle.is_isomorphic(oracle.realize(L22, w), oracle.projective(L22, "e"))


def test_zero_run_rejected(L22):
    with pytest.raises(WordError):
        make_string(L22, "beta alpha")


def test_unknown_arrow_rejected(F):
    with pytest.raises(Exception):
        make_string(F, "a7_6 nope")


def test_uniserial_layers(F):
    m = string_module(F, make_string(F, "a6_3 a7_6"))
    layer = {label: lay for label, lay in m.graph.nodes}
    assert layer == {"7": 0, "6": 1, "3": 2}


def test_band_dimension(L22):
    b = make_band(L22, parse_word(L22, "alpha beta~").letters, (100, 1))
    assert b.dimension == 2
    assert oracle.realize(L22, b).satisfies_relations()


def test_band_needs_irreducible_polynomial(L22):
    with pytest.raises(WordError):
        make_band(L22, parse_word(L22, "alpha beta~").letters, (0, 0, 1))


def test_band_rejects_proper_power(L22):
    with pytest.raises(WordError):
        make_band(L22, parse_word(L22, "alpha beta~ alpha beta~").letters, (100, 1))


def _random_pair(seed):
    rng = np.random.default_rng(seed)
    name = STRING_ALGEBRAS[seed % len(STRING_ALGEBRAS)]
    pres = catalog.load(name)
    return pres, random_word(pres, rng, 10)


@given(st.integers(0, 10**6))
def test_orientation_does_not_matter(seed):
    pres, w = _random_pair(seed)
    assert make_string(pres, w.letters, w.start) == make_string(pres, w.reverse().letters, w.end)


@given(st.integers(0, 10**6))
def test_decomposition_reassembles(seed):
    pres, w = _random_pair(seed)
    validate_word(pres, w)
    assert w.reverse().reverse() == w
    letters = []
    for left, right in w.decomposition():
        letters.extend((a, True) for a in reversed(left.arrows))
        letters.extend((a, False) for a in right.arrows)
    assert [(l.arrow, l.inverse) for l in w.letters] == letters


@given(st.integers(0, 10**6))
def test_dimension_vector_counts_nodes(seed):
    pres, w = _random_pair(seed)
    m = string_module(pres, w)
    assert m.dimension == len(w.letters) + 1
    assert oracle.realize(pres, w).dim_vector() == tuple(dict(m.dim_vector).get(v, 0) for v in pres.vertices)


def test_enumeration_is_canonical_and_unique(F):
    words = enumerate_words(F, 3)
    assert len(set(words)) == len(words)
    assert all(w == w.canonical() for w in words)


@pytest.mark.parametrize("name,vertex", [("F", "1"), ("H", "0"), ("H", "6"), ("F", "8")])
@pytest.mark.parametrize("depth", [0, 1, 3])
def test_windows_are_valid_words(name, vertex, depth):
    pres = catalog.load(name)
    g = characteristic_phantom(pres, vertex).phantom
    for l, r in ((depth, 0), (0, depth), (depth, depth)):
        validate_word(pres, window(g, l, r))


@given(st.integers(0, 10**6))
def test_edges_go_strictly_down_a_layer(seed):
    pres = catalog.load(("F", "H", "L22", "A3")[seed % 4])
    g = word_graph(random_word(pres, np.random.default_rng(seed), 8))
    for _, i, j in g.edges:
        assert g.nodes[j][1] > g.nodes[i][1]
    assert min(l for _, l in g.nodes) == 0
