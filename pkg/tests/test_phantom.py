import re

import numpy as np
import pytest
from hypothesis import given, strategies as st

from figures import F_S1, F_S7, H_S0, graph_matches
from phantoms import artifacts, catalog, oracle
from phantoms.homology import AlgebraScopeError, string_pdim
from phantoms.phantom import (
    InfinitePhantom, characteristic_phantom, contravariant_finiteness, effectiveness_check,
    failure_witness_search, findim_report, minimal_approximation, phantom_window, raw_side_paths,
    socle_coverable, top_embeddable,
)
from phantoms.strings import StringWord, make_string, random_word, word_graph


def _window_graph(res, n=2):
    w, anchor = phantom_window(res, n, n)
    return word_graph(w), anchor


# ---------------------------------------------------------------- decisions

def test_finite_word_is_its_own_witness(F):
    w = make_string(F, "a6_3 a7_6")
    for decide in (top_embeddable, socle_coverable):
        d = decide(F, w)
        assert d.verdict == "yes" and d.witness == w


def test_simple_of_two_loop_algebra_does_not_embed(L22):
    assert top_embeddable(L22, StringWord("e", ())).verdict == "no"
    assert top_embeddable(L22, make_string(L22, "beta alpha~")).verdict == "yes"


def test_tiny_bound_is_reported_not_guessed(F):
    rng = np.random.default_rng(1)
    for _ in range(200):
        w = random_word(F, rng, 4)
        d = top_embeddable(F, w)
        if d.verdict == "yes" and len(d.witness.letters) > len(w.letters):
            break
    else:
        pytest.skip("no word needing extension")
    assert top_embeddable(F, w, 0).verdict == "undecided_at_bound"


def _is_top_embedding(pres, w, witness):
    src, tgt = oracle.realize(pres, w), oracle.realize(pres, witness)
    basis = oracle.hom_basis(src, tgt)
    rng = np.random.default_rng(0)
    for _ in range(8):
        f = oracle.combine(src.field, basis, src.field.random(rng, (len(basis),)))
        if f.is_injective():
            return True
    return False


@given(st.integers(0, 10**6))
def test_yes_witnesses_verify(seed):
    pres = catalog.load(("F", "H", "L22")[seed % 3])
    w = random_word(pres, np.random.default_rng(seed), 5)
    d = top_embeddable(pres, w)
    if d.verdict != "yes":
        return
    assert string_pdim(pres, d.witness).is_finite
    assert _is_top_embedding(pres, w, d.witness)


# ---------------------------------------------------------------- the construction

def test_simples_of_finite_pdim_are_their_own_phantom(A3):
    for v in A3.vertices:
        r = characteristic_phantom(A3, v)
        assert r.finite and r.step_count == 1 and r.phantom.core == StringWord(v, ())


def test_F_S7(F):
    r = characteristic_phantom(F, "7")
    assert r.finite
    g, _ = _window_graph(r)
    assert graph_matches(g, F_S7)
    m = minimal_approximation(F, "7")
    assert oracle.is_isomorphic(oracle.realize(F, m.word), oracle.realize(F, r.phantom.core))


def test_F_S1_window(F):
    r = characteristic_phantom(F, "1")
    assert not r.finite and r.phantom.left_ray is None and r.phantom.right_ray is not None
    g, anchor = _window_graph(r)
    assert graph_matches(g, F_S1) and anchor == F_S1["anchor"]
    assert isinstance(minimal_approximation(F, "1"), InfinitePhantom)


def test_H_S0_window_and_periods(H):
    r = characteristic_phantom(H, "0")
    assert r.phantom.left_ray is not None and r.phantom.right_ray is not None
    g, anchor = _window_graph(r)
    assert graph_matches(g, H_S0) and anchor == H_S0["anchor"]
    assert (r.left_period_found_at, r.right_period_found_at) == (7, 9)


def test_two_loop_phantom_is_projective(L22):
    r = characteristic_phantom(L22, "e")
    assert r.finite
    assert oracle.is_isomorphic(oracle.realize(L22, r.phantom.core), oracle.projective(L22, "e"))


def test_special_biserial_is_out_of_scope(G):
    with pytest.raises(AlgebraScopeError, match=r"not a string algebra \(special biserial\)"):
        characteristic_phantom(G, "1")


def _periodicity_holds(pres, v, res):
    for side in ("left", "right"):
        hits = [(s.step, s.note) for s in res.steps if s.side == side and "repeats" in s.note]
        if not hits:
            continue
        j, note = hits[0]
        i = int(re.search(r"step (\d+)", note).group(1))
        raw = raw_side_paths(pres, v, side, j + 4)
        assert len(raw) == j + 4
        for r in range(5):
            assert raw[i - 1 + r] == raw[j - 1 + r]


@pytest.mark.parametrize("name", ["F", "H"])
def test_periodicity_is_sound(name):
    pres = catalog.load(name)
    for v in pres.vertices:
        _periodicity_holds(pres, v, characteristic_phantom(pres, v))


def test_step_bound_on_random_algebras(random_algebras):
    for pres in random_algebras:
        for v in pres.vertices:
            r = characteristic_phantom(pres, v)
            assert r.step_count < 3 * len(pres.vertices)
            _periodicity_holds(pres, v, r)


def test_deterministic(H):
    a = artifacts.encode(characteristic_phantom(H, "0"))
    H.cache.clear()
    assert artifacts.encode(characteristic_phantom(H, "0")) == a


# ---------------------------------------------------------------- reports

def test_contravariant_finiteness(F, L22, A3):
    rep = contravariant_finiteness(F)
    assert not rep.contravariantly_finite
    assert "1" in {s.vertex for s in rep.simples if not s.finite}
    assert contravariant_finiteness(L22).contravariantly_finite
    assert contravariant_finiteness(A3).contravariantly_finite


def test_findim(F, L22, A3):
    assert findim_report(L22).lfindim == 0
    a3 = findim_report(A3)
    assert a3.lfindim == max(string_pdim(A3, StringWord(v, ())).value for v in A3.vertices) == 1
    f = findim_report(F)
    assert f.lfindim_is_lower_bound and not f.contravariantly_finite


def test_minimal_approximation_of_two_loop_simple(L22):
    m = minimal_approximation(L22, "e")
    assert oracle.is_isomorphic(oracle.realize(L22, m.word), oracle.projective(L22, "e"))


# ---------------------------------------------------------------- effectiveness and witnesses

def test_effectiveness_small(F, L22):
    for pres, v in ((F, "1"), (F, "7"), (L22, "e")):
        rep = effectiveness_check(pres, characteristic_phantom(pres, v), letter_bound=8)
        assert rep.ok and rep.failed == 0 and rep.tested > 0


def test_witness_for_F_S1(F):
    hit = failure_witness_search(F, "1", phantom=characteristic_phantom(F, "1"))
    assert hit is not None and hit.vertices[0] == "1" and "6" in hit.vertices
    assert failure_witness_search(F, "7") is None


def test_no_witness_when_contravariantly_finite(L22, A3):
    assert failure_witness_search(L22, "e") is None
    for v in A3.vertices:
        assert failure_witness_search(A3, v) is None


@pytest.mark.parametrize("name", ["F", "H", "L22", "A3"])
def test_witness_implies_infinite_and_finite_implies_effective(name):
    pres = catalog.load(name)
    for v in pres.vertices:
        r = characteristic_phantom(pres, v)
        hit = failure_witness_search(pres, v, phantom=r)
        if hit is not None:
            assert not r.finite
        if r.finite:
            assert hit is None
            assert effectiveness_check(pres, r, letter_bound=6).ok


@pytest.mark.parametrize("vertex", ["0", "3"])
def test_zigzag_criterion_is_not_necessary(H, vertex):
    # no cycle of the underlying graph passes through these vertices, so no
    # zig-zag can return to them; their phantoms are infinite all the same
    assert not characteristic_phantom(H, vertex).finite
    assert failure_witness_search(H, vertex, bound=8) is None
