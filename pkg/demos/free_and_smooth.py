"""A free quintic, two Fermat curves and the b_plus sextic.

The local cohomology dimensions n(f)_k are computed by descending through
the saturation of the Jacobian ideal; their maximum nu measures how far
the curve is from being free.
"""

from jacplane.atlas import b_plus_curve, named_example
from jacplane.classify import classify, exponents, predicted_nu, splitting_type
from jacplane.invariants import Workspace, analyze
from jacplane.poly import parse_poly

curves = {
    "4-cusp quintic": named_example("quintic_4cusp"),
    "Fermat cubic": parse_poly("x^3 + y^3 + z^3"),
    "Fermat quartic": parse_poly("x^4 + y^4 + z^4"),
    "b_plus k=3": b_plus_curve(3),
}

for name, f in curves.items():
    a = analyze(f, seed=3)
    st = splitting_type(a.d, a.r, a)
    pred, branch = predicted_nu(a.d, a.r, a.tau)
    print(f"{name}: {a.poly}")
    print(f"  d = {a.d}, mdr = {a.r}, tau = {a.tau}, class = {classify(a)}")
    print(f"  n(f) = {list(a.n_dims)}  (nu = {a.nu}, predicted {pred} via {branch})")
    print(f"  splitting type = ({st.d1}, {st.d2}), exponents = {exponents(a)}")

# The Milnor algebra of a smooth curve is finite: it dies in degree 3d - 5.
ws = Workspace(curves["Fermat quartic"])
print("\nFermat quartic M(f)_k:", [ws.milnor(k) for k in range(10)])
