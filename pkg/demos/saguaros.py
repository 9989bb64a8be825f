"""Approximations of a simple over the left serial algebra E by saguaros,
for increasing bounds on projective dimension.

Run:  python3 demos/saguaros.py
"""
from phantoms import catalog
from phantoms.artifacts import render_graph
from phantoms.phantom import findim_report
from phantoms.serial import canonical_map, minimal_finite_pdim_factor, saguaro_approximation

E = catalog.load("E")

for d in (0, 1, 2, 3, None):
    mast = minimal_finite_pdim_factor(E, "1", d)
    sag = saguaro_approximation(E, "1", d)
    label = "inf" if d is None else d
    print(f"d = {label}: first trunk {mast}, socle {sag.socle}, dim {sag.dimension}, pdim {sag.pdim}")
    for i, qa, qb in sag.gluings:
        print(f"   glue {i}/{i + 1}: {qa} = {qb}")
    assert canonical_map(E, sag).is_surjective()
    print(render_graph(sag))

print("lfindim E =", findim_report(E).lfindim)
