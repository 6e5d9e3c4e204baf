"""icogate: exact synthesis of single-qubit unitaries over the
icosahedral gate set {rho, sigma, tau}.

The package is layered bottom-up:

  golden       -- arithmetic in Z[phi]
  gaussgolden  -- arithmetic in Z[i, phi] and the norm-Euclidean check
  sots         -- sums of two squares in Z[phi]
  icosian      -- the binary icosahedral group and exact factoring
  unitary      -- big-float PU(2) numerics and diagonal tuning
  lattice      -- planar integer-point enumeration under constraints
  diagonal     -- approximate synthesis of diagonal rotations
  general      -- approximate synthesis of arbitrary unitaries
  cli          -- the icogate command line tool
"""

__version__ = "0.1.0"
