"""
Fusion, quantum immanants and the critical level
=================================================

A short walk through the library with N = 2.  Everything printed is exact.
Run with ``python3 demos/tour_fusion_and_center.py``.
"""

from ycl.center import invariance_failures, qdet, quantum_immanant, tableau_independence
from ycl.fusion import fusion_idempotent, hook_product, jm_oracle_idempotent, standard_tableaux
from ycl.scalars import g_coefficients
from ycl.tensor import ybe_residual
from ycl.yangian import DoubleYangian, format_element

# the normalising series g(u) = 1 + g_1/u + g_2/u^2 + ...
print("g coefficients for N=2:", [str(c) for c in g_coefficients(2, 4)])
print("Yang-Baxter residual vanishes:", ybe_residual(2).is_zero())

###############################################################################
# Primitive idempotents from the fusion procedure
# -----------------------------------------------
# Both standard tableaux of the hook shape, compared with the Jucys-Murphy
# interpolation formula.

for U in standard_tableaux((2, 1)):
    E = fusion_idempotent(U, 2)
    print(U.rows, "contents", U.contents(), "hook product", hook_product(U.shape),
          "idempotent:", E * E == E, "matches JM:", E == jm_oracle_idempotent(U, 2))

###############################################################################
# Quantum immanants at the critical level c = -N
# ----------------------------------------------
# Coefficients of tr E_U T+_1(u+c_1)...T+_m(u+c_m) applied to the vacuum are
# killed by every t_ij^(s) with s > 0.  At c = 0 they are not (apart from the
# quantum determinant, which is central at every level).

floor = -5
crit = DoubleYangian(2, -2)
im = quantum_immanant(crit, standard_tableaux((2,))[0], floor)
print("u^0 coefficient of the (2) immanant:", format_element(im.coeff(0)))
print("invariant at c=-2:", not invariance_failures(crit, im.series, floor, 3))

zero = DoubleYangian(2, 0)
im0 = quantum_immanant(zero, standard_tableaux((2,))[0], floor)
print("invariant at c=0:", not invariance_failures(zero, im0.series, floor, 3))
print("qdet invariant at c=0:", not invariance_failures(zero, qdet(zero, floor), floor, 3))

ok, _ = tableau_independence(crit, (2, 1), floor)
print("hook immanant independent of the tableau:", ok)
