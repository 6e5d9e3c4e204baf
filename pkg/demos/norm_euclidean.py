"""Replication of the finite norm-Euclidean verification for Z[i, phi].

Division with remainder in Z[i, phi] works whenever every point of the
fundamental cube [-1/2, 1/2]^4 admits a nearby lattice point at quartic
norm < 1.  Covering the cube with a grid of spacing 1/n and balls of
radius r reduces that to finitely many exact rational comparisons;
printing no violations completes the proof.

The run below uses the published parameters (n = 6, r = 1/12); a
deliberately coarse run afterwards shows what failures look like.
"""

import time
from fractions import Fraction

from icogate.gaussgolden import verify_norm_euclidean

start = time.perf_counter()
violations = verify_norm_euclidean(6, Fraction(1, 12))
elapsed = time.perf_counter() - start
print(f"grid 6, radius 1/12: {len(violations)} violations "
      f"({elapsed:.2f}s, {7 ** 4} grid points, exact rationals)")
if not violations:
    print("empty list = the ring is norm-Euclidean, so gcds, Euclidean")
    print("division and unique factorization in Z[i, phi] all follow")

print()
coarse = verify_norm_euclidean(2, Fraction(1, 4))
print(f"grid 2, radius 1/4 (too coarse on purpose): "
      f"{len(coarse)} unresolved grid points, e.g. {coarse[0]}")
print("a failure here only means the covering is too crude, not that")
print("the ring fails; refining the grid removes every report")
