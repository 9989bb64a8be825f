"""Walk through characteristic phantoms on three string algebras.

Run:  python3 demos/phantoms_of_simples.py
"""
from phantoms import catalog
from phantoms.artifacts import render_graph
from phantoms.phantom import characteristic_phantom, contravariant_finiteness, findim_report

F = catalog.load("F")

# S7 has a classical approximation: the phantom stops after a few steps.
r7 = characteristic_phantom(F, "7")
print("F, S7 finite:", r7.finite, " core:", r7.phantom.core.literal())
print(render_graph(r7))

# S1 does not: the right side settles into a period, the left side terminates.
r1 = characteristic_phantom(F, "1")
print("F, S1 finite:", r1.finite, " right period found at step", r1.right_period_found_at)
for s in r1.steps:
    print(f"  {s.step:>2} {s.side:<5} {s.kind} {s.path}  {s.note}")
print(render_graph(r1))

print("F contravariantly finite:", contravariant_finiteness(F).contravariantly_finite)
rep = findim_report(F)
print("F lfindim >=", rep.lfindim)

# Over H the two sides of the phantom of S0 become periodic at different steps.
H = catalog.load("H")
r0 = characteristic_phantom(H, "0")
print("H, S0 periods found at", r0.left_period_found_at, "and", r0.right_period_found_at)
print(render_graph(r0))

L = catalog.load("L22")
print("two-loop algebra lfindim:", findim_report(L).lfindim)
