"""Line arrangements: lattices, combinatorial tau and nu-constancy.

For an arrangement every singular point is an ordinary m-fold point with
Tjurina number (m - 1)^2, so tau is read off the intersection lattice.
The harness checks whether nu also depends only on the lattice.
"""

from jacplane.atlas import (
    Arrangement,
    arrangement_poly,
    combinatorial_tau,
    conjecture_harness,
    intersection_lattice,
    lattice_isomorphism,
    ziegler_pair,
)
from jacplane.classify import prop_terao_nu
from jacplane.invariants import analyze

six_a = Arrangement(((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, 3, 7)))
six_b = Arrangement(((1, 2, 5), (2, -1, 3), (3, 1, -4), (1, -3, 2), (4, 1, 1), (2, 5, -1)))

lat = intersection_lattice(six_a)
a = analyze(arrangement_poly(six_a), seed=0)
print("six generic lines")
print("  multiplicities:", dict(lat.multiplicities))
print("  tau: lattice", combinatorial_tau(lat), "linear algebra", a.tau)
print("  nu: low-tau formula", prop_terao_nu(6, a.tau), "direct", a.nu)

# Three lines through a point: f_z = 0 gives a constant syzygy (0, 0, 1).
pencil = analyze(arrangement_poly(Arrangement(((1, 0, 0), (0, 1, 0), (1, 1, 0)))), seed=0)
print("\nthree concurrent lines: mdr =", pencil.r, "tau =", pencil.tau, "->", pencil.degenerate)

report = conjecture_harness([[six_a, six_b], ziegler_pair()], seed=0)
for name, g in zip(("generic six", "Ziegler pair"), report.groups):
    print(f"\n{name}: lattice {g.lattice_summary}, tau {g.combinatorial_tau}")
    print(f"  mdr per member {g.mdr_values}, nu per member {g.nu_values}")
    print(f"  nu constant: {g.nu_constant}, splitting constant: {g.splitting_constant}")

za, zb = ziegler_pair()
print("\nline relabelling between the Ziegler members:",
      lattice_isomorphism(intersection_lattice(za), intersection_lattice(zb)))
print("counterexamples:", report.counterexamples or "none")
