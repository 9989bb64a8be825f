import numpy as np
import pytest
from hypothesis import given, strategies as st

from phantoms import catalog, oracle
from phantoms.homology import (
    AlgebraScopeError, band_finite_pdim_search, check_against_oracle, module_pdim, path_pdim,
    path_syzygy, string_pdim, string_syzygy, verify_certificate,
)
from phantoms.strings import StringWord, make_band, make_string, parse_word, random_word

STRING_ALGEBRAS = ("A3", "F", "H", "L22")


def test_path_syzygy_two_loops(L22):
    alpha = L22.parse_path("alpha")
    assert sorted(str(p) for p in path_syzygy(L22, alpha)) == ["alpha", "beta"]
    assert path_syzygy(L22, L22.trivial("e")) == []


def test_path_pdim_two_loops_is_infinite(L22):
    r = path_pdim(L22, L22.parse_path("alpha"))
    assert not r.is_finite and r.status == "infinite"
    assert verify_certificate(L22, r)


def test_path_pdim_hereditary(A3):
    r = path_pdim(A3, A3.parse_path("a"))
    assert r.is_finite and r.value == 0


def test_simple_of_two_loop_algebra(L22):
    s = StringWord("e", ())
    assert string_syzygy(L22, s) == [s, s]
    r = string_pdim(L22, s)
    assert not r.is_finite and verify_certificate(L22, r)


def test_projective_word_has_zero_syzygy(L22, F):
    assert string_syzygy(L22, make_string(L22, "beta alpha~")) == []
    r = string_pdim(F, make_string(F, "a6_3 a7_6"))
    assert r.is_finite and r.value == 1


def test_syzygy_of_S7_matches_oracle(F):
    s7 = StringWord("7", ())
    parts = [oracle.realize(F, w) for w in string_syzygy(F, s7)]
    assert oracle.is_isomorphic(oracle.direct_sum(F, parts), oracle.syzygy(oracle.simple(F, "7")))


def test_scope_guard(G, E):
    with pytest.raises(AlgebraScopeError, match="not a string algebra"):
        string_pdim(G, StringWord("1", ()))
    with pytest.raises(AlgebraScopeError):
        string_syzygy(E, StringWord("1", ()))


def _pair(seed):
    rng = np.random.default_rng(seed)
    pres = catalog.load(STRING_ALGEBRAS[seed % len(STRING_ALGEBRAS)])
    return pres, random_word(pres, rng, 8)


@given(st.integers(0, 10**6))
def test_syzygy_agrees_with_kernel(seed):
    pres, w = _pair(seed)
    rep = oracle.realize(pres, w)
    data = oracle.cover_and_syzygy(rep)
    parts = oracle.direct_sum(pres, [oracle.realize(pres, u) for u in string_syzygy(pres, w)])
    assert parts.dimension + rep.dimension == data.projective.dimension
    assert oracle.is_isomorphic(parts, data.kernel)


@given(st.integers(0, 10**6))
def test_pdim_agrees_with_iteration(seed):
    pres, w = _pair(seed)
    r = string_pdim(pres, w)
    n, status = oracle.oracle_pdim(oracle.realize(pres, w))
    if r.is_finite:
        assert (n, status) == (r.value, "finite")
    else:
        assert status != "finite"


@given(st.integers(0, 10**6))
def test_pdim_drops_by_one_under_syzygy(seed):
    pres, w = _pair(seed)
    r = string_pdim(pres, w)
    if not r.is_finite or r.value == 0:
        return
    parts = [string_pdim(pres, u) for u in string_syzygy(pres, w)]
    assert all(p.is_finite for p in parts)
    assert max(p.value for p in parts) == r.value - 1


@pytest.mark.parametrize("name", ["F", "H", "L22"])
def test_path_pdim_matches_iteration(name):
    pres = catalog.load(name)
    for p in pres.basis:
        r = path_pdim(pres, p)
        n, status = oracle.oracle_pdim(oracle.path_module(pres, p))
        if r.is_finite:
            assert (n, status) == (r.value, "finite")
        else:
            assert status != "finite"


def test_module_pdim_matches_iteration_on_E(E):
    for v in E.vertices:
        s = oracle.simple(E, v)
        for rep in (s, oracle.syzygy(s), oracle.direct_sum(E, [s, oracle.projective(E, v)])):
            r = module_pdim(rep)
            n, status = oracle.oracle_pdim(rep)
            assert r.is_finite == (status == "finite")
            if r.is_finite:
                assert r.value == n


def test_oracle_check_report(F):
    rep = check_against_oracle(F, 20, seed=5)
    assert rep.ok and rep.samples == 20


def test_no_bands_on_a_tree(A3):
    assert band_finite_pdim_search(A3, 8, 2) == []


def test_two_loop_bands_have_infinite_pdim(L22):
    assert band_finite_pdim_search(L22, 6, 2) == []


def test_F_band_through_1_3_6_2_has_pdim_one(F):
    letters = parse_word(F, "a1_2~ a6_2 a6_3~ a1_3").letters
    projectives = oracle.direct_sum(F, [oracle.projective(F, "2"), oracle.projective(F, "3")])
    for lam in (1, 2, 57):
        band = oracle.realize(F, make_band(F, letters, (lam, 1)))
        assert oracle.is_isomorphic(oracle.syzygy(band), projectives)
        assert module_pdim(band).value == 1
