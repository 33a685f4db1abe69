"""
Vertex operators on the vacuum module
=====================================

Vertex operators Y(v, z) for T+-excitations of the vacuum, the translation
operator, and the braiding that makes the vacuum module a quantum vertex
algebra.  Run with ``python3 demos/tour_vertex_operators.py``.
"""

from ycl.center import coefficient_states, qdet
from ycl.qva import (
    VacuumQVA, braided_locality_failures, flip_map, locality_witness, probe_basket, s2_failures, s3_failures,
)
from ycl.yangian import DoubleYangian, format_element

Y = DoubleYangian(2, -2)
V = VacuumQVA(Y)
B = probe_basket(Y)
floor = -4

# Y(v, z) vac = e^{zD} v: only nonnegative powers of z appear
v = B["t12(-1)"]
for p, state in sorted(V.vertex(v, B["vac"], -3, 2, floor).items()):
    print(f"[z^{p}] Y(t12(-1) vac, z) vac =", format_element(state))

# a pole: Y(t12(-1) vac, z) t21(-1) vac
for p, state in sorted(V.vertex(v, B["t21(-1)"], -2, 0, floor).items()):
    print(f"[z^{p}] Y(t12(-1) vac, z) t21(-1) vac =", format_element(state))

###############################################################################
# The braiding
# ------------
# Unitarity and the Yang-Baxter equation hold order by order in h.  Locality
# needs the braiding: with the flip map the same pole-clearing power fails.

print("braiding unitarity failures:", len(s3_failures(2, -2)))
print("braiding Yang-Baxter failures:", len(s2_failures(2, -2)))
a, b = B["t11(-1)"], B["t21(-1)"]
ell = locality_witness(V, a, b, 3)
print("pole-clearing power for (t11(-1), t21(-1)):", ell)
print("flip map local at that power:", not braided_locality_failures(V, a, b, 3, ell, 1, 1, smap=flip_map))

###############################################################################
# The center
# ----------
# Coefficients of the quantum determinant are central: Y(w, z) x has no poles.

x = dict(coefficient_states(qdet(Y, floor - 6), 0))[0]
probes = [B[k] for k in ("t11(-1)", "t12(-1)", "t21(-1)")]
print("qdet coefficient central:", V.is_central(x, probes, floor))
print("t12(-1)t21(-1) vac central:", V.is_central(B["t12(-1)t21(-1)"], probes, floor))
