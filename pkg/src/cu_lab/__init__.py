"""Verification toolkit for the trivariate family
C_u(X, Y, Z) = (X^3 + u Y^2 Z, Y^3 + u X Z^2, Z^3 + u X^2 Y) over GF(2^m)^3.

Subpackages:
  field2m      exact GF(2^m) arithmetic and lookup tables
  mpoly        sparse multivariate polynomials over GF(2)
  certify      certificate polynomials and their identity checks
  cu_analysis  permutation / differential scans and collision witnesses
  lwbound      exact point-count bound arithmetic and the degree threshold
  cli          command-line front end
"""

__version__ = "0.1.0"
