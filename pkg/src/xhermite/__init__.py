"""Exceptional Hermite polynomials, their zeros and the Hessian of the weighted log-energy.

The package is organised bottom-up:

``partition``      partitions and admissible degrees
``exact_poly``     integer polynomials, Wronskians, generalized and exceptional Hermite polynomials
``zeros``          arbitrary-precision roots and their classification
``energy``         the log-energy, its gradient and partitioned Hessian
``gersgorin``      block norms, block dominance, block Gersgorin sets, a Jacobi eigensolver
``dnu``            the two-row partition ``(ν, ν)``
``optimality``     Hermite-type weights and maximality of the regular zeros
``lab``            scenario runs, fits and report bundles
"""

from .errors import *  # noqa: F401,F403
from .exact_poly import ExactPoly, exceptional_hermite, generalized_hermite, hermite, wronskian
from .partition import Partition, degree_set, is_admissible, make_partition
from .zeros import ZeroSet, all_roots, classical_hermite_zeros, h_roots, zero_set

__version__ = "0.1.0"
