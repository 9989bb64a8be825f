"""Objects of every serializable type, for round-trip checks."""
from fractions import Fraction

import numpy as np

from phantoms import catalog
from phantoms.homology import Finite, check_against_oracle, string_pdim
from phantoms.phantom import (
    characteristic_phantom, effectiveness_check, failure_witness_search, findim_report, top_embeddable,
)
from phantoms.presentation import classify
from phantoms.serial import saguaro_approximation
from phantoms.strings import make_band, parse_word, random_word, string_module, word_graph


def random_items(seed):
    rng = np.random.default_rng(seed)
    pres = catalog.random_string_algebra(rng)
    v = pres.vertices[int(rng.integers(len(pres.vertices)))]
    w = random_word(pres, rng, 6)
    res = characteristic_phantom(pres, v)
    return [pres, w, w.letters[0] if w.letters else w, res, res.phantom, res.steps[0],
            string_module(pres, w), string_pdim(pres, w), top_embeddable(pres, w), word_graph(w),
            classify(pres), pres.quiver, pres.arrows[0] if pres.arrows else pres.trivial(v),
            pres.trivial(v), Fraction(int(rng.integers(1, 9)), 7), (w, Finite(int(rng.integers(5))))]


def fixed_items():
    F, E, H, L22 = (catalog.load(n) for n in ("F", "E", "H", "L22"))
    band = make_band(F, parse_word(F, "a1_2~ a6_2 a6_3~ a1_3").letters, (3, 1))
    r1 = characteristic_phantom(F, "1")
    return [
        F, E, H, band, r1, characteristic_phantom(H, "0"), characteristic_phantom(H, "0").phantom.right_ray,
        findim_report(F), findim_report(E), findim_report(E).simples[0], saguaro_approximation(E, "1", 2),
        effectiveness_check(F, r1, letter_bound=6), failure_witness_search(F, "1", phantom=r1),
        check_against_oracle(L22, 5, 0, 4),
    ]
