"""Two cuspidal quartics with the same Tjurina number.

y^4 - x z^3 and y^4 - x z^3 - y^3 z both have tau = 6, yet their Jacobian
syzygies start in different degrees.  This script finds the linear
syzygy of the first curve by hand and then lets ``analyze`` do the rest.
"""

import numpy as np

from jacplane.graded import jacobian_relation_map
from jacplane.invariants import analyze, default_field
from jacplane.linalg import kernel_basis
from jacplane.poly import HomogPoly, parse_poly, partials

field = default_field()
p = field.p


def lift(v):
    # symmetric representatives so small integers print as small integers
    v = np.asarray(v, dtype=np.int64)
    return [int(c - p) if c > p // 2 else int(c) for c in v]


C = parse_poly("y^4 - x*z^3")
C2 = parse_poly("y^4 - x*z^3 - y^3*z")

print("partials of", C)
for name, g in zip("xyz", partials(C)):
    print(f"  f_{name} = {g}")

# Syzygies of degree m are the kernel of (a, b, c) -> a f_x + b f_y + c f_z
# restricted to S_m^3.  For m = 1 the map is 9 -> 15 dimensional.
rel = jacobian_relation_map(C, 1, field)
print("\nrelation map in degree 1:", rel.matrix.shape)
(v,) = kernel_basis(rel.matrix)
a, b, c = (HomogPoly.from_vector(1, lift(v[i : i + 3])) for i in (0, 3, 6))
print(f"linear syzygy: ({a}) f_x + ({b}) f_y + ({c}) f_z = 0")

rel2 = jacobian_relation_map(C2, 1, field)
print("second quartic has", len(kernel_basis(rel2.matrix)), "linear syzygies")

# The full analysis runs over two primes and cross-checks tau and n(f)
# with two independent algorithms each.
for f in (C, C2):
    a = analyze(f, seed=1)
    print(f"\n{a.poly}")
    print(f"  mdr = {a.r}, tau = {a.tau}, nu = {a.nu}")
    print(f"  ar(f)_k   = {list(a.ar_dims)}")
    print(f"  n(f)_k    = {list(a.n_dims)}")
    print(f"  M(f)_k    = {list(a.milnor_hilbert)}")
    print(f"  primes    = {a.primes_used}")
