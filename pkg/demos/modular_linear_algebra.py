"""Exact rank over word-sized primes.

Matrices are reduced modulo a prime p in (2^30, 2^31), so a product of two
residues fits in int64.  A rank over F_p can only drop relative to Q, so
two primes that agree are strong evidence for the rational rank.
"""

import numpy as np

from jacplane.linalg import ExactMatrix, PrimeField, choose_primes, kernel_basis, multi_prime_rank, rank

rng = np.random.default_rng(7)
# rank 4 by construction: a 7x4 times 4x9 product
left = rng.integers(-50, 50, size=(7, 4))
right = rng.integers(-50, 50, size=(4, 9))
m = left @ right

primes = choose_primes(3, seed=7)
for p in primes:
    M = ExactMatrix(m, PrimeField(p))
    ker = kernel_basis(M)
    print(f"p = {p}: rank {rank(M)}, kernel dimension {len(ker)}")

# A prime dividing every entry of a row kills that row's contribution.
# multi_prime_rank keeps drawing primes until the top rank is seen twice.
bad = np.array([[2147483647, 0], [0, 1]], dtype=object)
r, used, escalations = multi_prime_rank(bad, primes=[2147483647, primes[0]], seed=7)
print(f"\nbad-prime matrix: rank {r} from primes {used} ({escalations} escalation)")
