import pytest

from figures import E_SAGUAROS, saguaro_matches
from phantoms import oracle
from phantoms.homology import AlgebraScopeError, module_pdim
from phantoms.phantom import findim_report
from phantoms.serial import (
    canonical_map, minimal_finite_pdim_factor, saguaro_approximation, suffix_closure, tree_rep,
    trunk_embedding, uniserial_pdim,
)

BOUNDS = (0, 1, 2, 3, None)


@pytest.fixture(scope="module")
def sags(E):
    return {(v, d): saguaro_approximation(E, v, d) for v in E.vertices for d in BOUNDS}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_S1_figures(sags, d):
    assert saguaro_matches(sags["1", d], E_SAGUAROS[d])


def test_finite_bound_agrees_with_d3(sags):
    a, b = sags["1", 3], sags["1", None]
    assert (a.socle, a.trunks, a.gluings) == (b.socle, b.trunks, b.gluings)
    assert b.pdim == 3 and b.dimension == 9


def test_findim(E):
    rep = findim_report(E)
    assert rep.lfindim == 3 and rep.route == "saguaro"


def test_minimal_factor_is_minimal(E):
    for v in E.vertices:
        for d in BOUNDS:
            mast = minimal_finite_pdim_factor(E, v, d)
            assert mast.start == v
            r = uniserial_pdim(E, v, mast.length + 1)
            assert r.is_finite and (d is None or r.value <= d)
            for k in range(1, mast.length + 1):
                r = uniserial_pdim(E, v, k)
                assert not (r.is_finite and (d is None or r.value <= d))


def test_simple_in_class_is_its_own_factor(E):
    for v in E.vertices:
        r = uniserial_pdim(E, v, 1)
        if r.is_finite:
            assert minimal_finite_pdim_factor(E, v, r.value).length == 0


def test_uniserial_pdim_matches_module_pdim(E):
    for v in E.vertices:
        for p in E.paths_from(v):
            nodes = suffix_closure(E, [p])
            # the factor of P_v with mast p, read as a tree hanging off p.end
            assert module_pdim(tree_rep(E, nodes)) == uniserial_pdim(E, v, p.length + 1)


def test_structure(E, sags):
    for (v, d), sag in sags.items():
        rep = sag.to_rep(E)
        assert rep.satisfies_relations()
        assert oracle.socle_dims(rep)[sag.socle] == 1 and sum(oracle.socle_dims(rep).values()) == 1
        assert sag.trunks[sag.first] == minimal_finite_pdim_factor(E, v, d)
        assert sag.greedy_agrees
        assert d is None or sag.pdim <= d
        assert len(sag.gluings) == len(sag.trunks) - 1
        for i in range(len(sag.trunks)):
            f = trunk_embedding(E, sag, i)
            assert f.commutes() and f.is_injective()
        g = canonical_map(E, sag)
        assert g.commutes() and g.is_surjective()


def _class_members(E, d):
    out = []
    for v in E.vertices:
        for p in E.paths_from(v):
            out.append(tree_rep(E, suffix_closure(E, [p])))
    for v in E.vertices:
        for dd in BOUNDS:
            out.append(saguaro_approximation(E, v, dd).to_rep(E))
    return [m for m in out if (r := module_pdim(m)).is_finite and (d is None or r.value <= d)]


@pytest.mark.parametrize("d", [1, 2, None])
def test_approximation_property(E, sags, d):
    members = _class_members(E, d)
    assert members
    for v in E.vertices:
        sag = sags[v, d]
        top = sag.trunks[sag.first].start
        f = canonical_map(E, sag)
        target = oracle.simple(E, top)
        for m in members:
            maps = oracle.hom_basis(m, target)
            assert oracle.factors_through(maps, f, oracle.hom_basis(m, f.source))


def test_exhaustive_matches_greedy_only_run(E):
    for v in E.vertices:
        a = saguaro_approximation(E, v, 2)
        b = saguaro_approximation(E, v, 2, exhaustive=False)
        assert a.trunks == b.trunks


def test_requires_left_serial(F, H):
    for pres in (F, H):
        with pytest.raises(AlgebraScopeError, match="left serial"):
            saguaro_approximation(pres, pres.vertices[0])
