import numpy as np
import pytest
from hypothesis import given, strategies as st

from phantoms import catalog, oracle
from phantoms.strings import StringWord, make_string, random_word


def test_simple(F):
    s = oracle.simple(F, "7")
    assert s.dimension == 1 and s.dims["7"] == 1
    assert all(not m.any() for m in s.mats.values())


def test_two_loop_projective(L22):
    p = oracle.projective(L22, "e")
    fld = p.field
    assert p.dimension == 3
    assert fld.rank(p.mats["alpha"]) == fld.rank(p.mats["beta"]) == 1
    assert p.satisfies_relations()


def test_uniserial_string_rep(F):
    r = oracle.realize(F, make_string(F, "a6_3 a7_6"))
    assert {v: d for v, d in r.dims.items() if d} == {"3": 1, "6": 1, "7": 1}
    assert sum(1 for m in r.mats.values() if r.field.rank(m) == 1) == 2


def test_syzygies(L22, F):
    assert oracle.syzygy(oracle.projective(F, "1")).dimension == 0
    k = oracle.syzygy(oracle.simple(L22, "e"))
    assert k.dimension == 2 and all(not m.any() for m in k.mats.values())
    s = oracle.simple(L22, "e")
    assert oracle.is_isomorphic(k, oracle.direct_sum(L22, [s, s]))
    assert oracle.projective(F, "7").dimension == 5
    assert oracle.syzygy(oracle.simple(F, "7")).dimension == 4


def test_hom_dimensions(L22, F):
    assert len(oracle.hom_basis(oracle.simple(F, "3"), oracle.simple(F, "3"))) == 1
    assert len(oracle.hom_basis(oracle.projective(L22, "e"), oracle.simple(L22, "e"))) == 1
    chain = oracle.realize(F, make_string(F, "a6_3 a7_6"))
    assert len(oracle.hom_basis(chain, oracle.simple(F, "7"))) == 1


def test_isomorphism_basics(F):
    p = oracle.projective(F, "6")
    assert oracle.is_isomorphic(p, p)
    assert not oracle.is_isomorphic(oracle.simple(F, "1"), oracle.simple(F, "2"))


def test_oracle_pdim(A3, L22):
    assert oracle.oracle_pdim(oracle.simple(A3, "1")) == (1, "finite")
    assert oracle.oracle_pdim(oracle.simple(A3, "3")) == (0, "finite")
    assert oracle.oracle_pdim(oracle.simple(L22, "e"))[1] == "infinite-suspected"


def _sample(seed):
    rng = np.random.default_rng(seed)
    name = ("A3", "F", "H", "L22", "G")[seed % 5]
    pres = catalog.load(name)
    if name == "G":
        return pres, oracle.simple(pres, pres.vertices[seed % len(pres.vertices)])
    return pres, oracle.realize(pres, random_word(pres, rng, 8))


@given(st.integers(0, 10**6))
def test_cover_dimension_count(seed):
    pres, rep = _sample(seed)
    assert rep.satisfies_relations()
    data = oracle.cover_and_syzygy(rep)
    assert data.kernel.dimension + rep.dimension == data.projective.dimension
    assert data.cover.is_surjective() and data.cover.commutes()
    assert data.inclusion.is_injective() and data.inclusion.commutes()


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_syzygy_is_additive(s1, s2):
    pres = catalog.load("F")
    a = oracle.realize(pres, random_word(pres, np.random.default_rng(s1), 6))
    b = oracle.realize(pres, random_word(pres, np.random.default_rng(s2), 6))
    whole = oracle.syzygy(oracle.direct_sum(pres, [a, b]))
    assert whole.dim_vector() == tuple(x + y for x, y in zip(oracle.syzygy(a).dim_vector(),
                                                            oracle.syzygy(b).dim_vector()))


@given(st.integers(0, 10**6))
def test_hom_basis_commutes(seed):
    pres = catalog.load("H")
    rng = np.random.default_rng(seed)
    a = oracle.realize(pres, random_word(pres, rng, 4))
    b = oracle.realize(pres, random_word(pres, rng, 4))
    for f in oracle.hom_basis(a, b):
        assert f.commutes()


def test_non_monomial_projectives_satisfy_relations(G):
    for v in G.vertices:
        assert oracle.projective(G, v).satisfies_relations()
