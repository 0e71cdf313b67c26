"""Binomial cuspidal curves y^d + x^k z^(d-k).

For each degree the admissible exponents are 1 <= k < d/2 with gcd(k, d) = 1,
half of Euler's totient.  Every such curve has a linear syzygy, so tau sits
at the lower end of the du Plessis-Wall range for mdr = 1, and nu = 1.
"""

from jacplane.atlas import admissible_k, binomial_curve, model_count
from jacplane.classify import classify, prop_rcc_consistency, tau_bounds
from jacplane.invariants import analyze

print(f"{'d':>3} {'k':>3} {'mdr':>4} {'tau':>5} {'tau_min':>8} {'tau_max':>8} {'nu':>3}  class")
for d in range(6, 13):
    ks = admissible_k(d)
    assert len(ks) == model_count(d)
    for k in ks:
        a = analyze(binomial_curve(d, k), seed=0)
        bounds = tau_bounds(d, a.r)
        print(f"{d:>3} {k:>3} {a.r:>4} {a.tau:>5} {bounds.tau_min:>8} {bounds.tau_max:>8} {a.nu:>3}  {classify(a)}")

# The curves are irreducible, which unlocks the tau >= d^2 - 4d + 8 test.
a = analyze(binomial_curve(7, 2), seed=0)
rep = prop_rcc_consistency(a, mu_hint=30, irreducible_hint=True)
print("\nC_{7,2}:", "consistent" if rep.consistent else "INCONSISTENT")
for note in rep.notes:
    print("  ", note)
