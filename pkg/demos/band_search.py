"""Search for bands of finite projective dimension, then look at the one found
over F in detail with the linear algebra oracle.

Run:  python3 demos/band_search.py
"""
from phantoms import catalog, oracle
from phantoms.homology import band_finite_pdim_search, module_pdim
from phantoms.strings import make_band, parse_word

for name in ("L22", "F"):
    found = band_finite_pdim_search(catalog.load(name), 8, 2)
    print(f"{name}: {len(found)} bands of finite pdim up to 8 letters, degree 2")
    print("   words:", sorted({b.word.literal() for b in found}))

F = catalog.load("F")
word = parse_word(F, "a1_2~ a6_2 a6_3~ a1_3").letters
P = oracle.direct_sum(F, [oracle.projective(F, "2"), oracle.projective(F, "3")])
for poly in [(1, 1), (5, 1), (2, 0, 1)]:
    band = make_band(F, word, poly)
    rep = oracle.realize(F, band)
    syz = oracle.syzygy(rep)
    # the syzygy of every band on this word is projective, whatever the parameter
    print(f"poly {poly}: dim {rep.dimension}, pdim {module_pdim(rep).value}, "
          f"syzygy projective: {oracle.is_isomorphic(syz, oracle.direct_sum(F, [P] * band.size))}")
