import numpy as np
import pytest
from hypothesis import given, strategies as st

from phantoms import catalog, oracle
from phantoms.presentation import (
    ZERO, PresentationError, basis_paths, build_presentation, classify, dimension,
    parse_presentation, path_product, print_presentation,
)

POINT = "algebra point\nvertex v\n"


def test_point_algebra():
    p = parse_presentation(POINT)
    assert [str(b) for b in basis_paths(p)] == ["ev"]
    c = classify(p)
    assert all((c.is_monomial, c.is_special_biserial, c.is_string, c.is_left_serial,
                c.admits_string_calculus))


def test_two_loop_algebra_basis(L22):
    assert sorted(str(p) for p in basis_paths(L22)) == ["alpha", "beta", "ee"]
    assert L22.nilpotency_bound == 2


def test_linear_a3_has_six_paths(A3):
    assert dimension(A3) == 6


def test_catalog_classification(E, F, G, H, L22):
    assert classify(F).is_string
    assert classify(L22).is_string
    g = classify(G)
    assert g.is_special_biserial and not g.is_string and not g.is_monomial
    e = classify(E)
    assert e.is_left_serial and not e.admits_string_calculus
    h = classify(H)
    # three arrows end at some vertices, yet every arrow has a unique continuation
    assert not h.is_special_biserial and h.admits_string_calculus


def test_F_projectives_match_transcription(F):
    sizes = {v: sum(1 for p in basis_paths(F) if p.start == v) for v in F.vertices}
    assert sizes == {"1": 5, "2": 3, "3": 3, "4": 2, "5": 2, "6": 5, "7": 5, "8": 5,
                     "9": 2, "10": 2, "11": 2, "12": 2}


def test_E_projectives_are_uniserial(E):
    for v in E.vertices:
        lengths = sorted(p.length for p in basis_paths(E) if p.start == v)
        assert lengths == list(range(len(lengths)))


def test_path_products(F, L22):
    a76, a63 = F.parse_path("a7_6"), F.parse_path("a6_3")
    prod = path_product(F, a63, a76)
    assert prod.arrows == ("a7_6", "a6_3")
    alpha, beta = L22.parse_path("alpha"), L22.parse_path("beta")
    assert path_product(L22, beta, alpha) is ZERO
    e7 = F.trivial("7")
    assert path_product(F, a76, e7) == a76


def test_parse_error_position():
    with pytest.raises(PresentationError) as info:
        parse_presentation("algebra x\nvertex 1 2\narrow a: 1 -> 3\n")
    assert info.value.line == 3 and info.value.column is not None


def test_rejects_length_one_relation():
    with pytest.raises(PresentationError):
        parse_presentation("algebra x\nvertex 1 2\narrow a: 1 -> 2\nrelation a\n")


def test_rejects_infinite_dimensional():
    with pytest.raises(PresentationError):
        parse_presentation("algebra x\nvertex 1\narrow a: 1 -> 1\n")


@pytest.mark.parametrize("name", catalog.NAMES)
def test_print_parse_round_trip(name):
    p = catalog.load(name)
    assert parse_presentation(print_presentation(p)) == p


@pytest.mark.parametrize("name", ["A3", "E", "F", "H", "L22"])
def test_basis_is_relation_free(name):
    p = catalog.load(name)
    rels = {r.arrows for r in p.monomial_relations}
    for b in basis_paths(p):
        for i in range(b.length):
            for j in range(i + 2, b.length + 1):
                assert b.arrows[i:j] not in rels


@pytest.mark.parametrize("name", catalog.NAMES)
def test_dimension_matches_regular_representation(name):
    p = catalog.load(name)
    assert dimension(p) == sum(oracle.projective(p, v).dimension for v in p.vertices)


@given(st.integers(0, 10_000))
def test_deleting_arrows_keeps_monomial(seed):
    rng = np.random.default_rng(seed)
    p = catalog.random_string_algebra(rng, max_vertices=5)
    if not p.arrows:
        return
    drop = p.arrows[rng.integers(len(p.arrows))].name
    arrows = [(a.name, a.source, a.target) for a in p.arrows if a.name != drop]
    rels = [r.arrows for r in p.monomial_relations if drop not in r.arrows]
    q = build_presentation("smaller", p.vertices, arrows, rels)
    assert classify(q).is_monomial
