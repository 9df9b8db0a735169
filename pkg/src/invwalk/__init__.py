"""Mixing of the random inversion walk on labelled tournaments.

Submodules:

* :mod:`invwalk.gf2` -- packed GF(2) linear algebra and the Walsh-Hadamard transform
* :mod:`invwalk.encoding` -- tournaments as vectors of F_2^m, clique generators, inversion balls
* :mod:`invwalk.spectral` -- exact eigenvalues, exact TV distance, spectral bounds
* :mod:`invwalk.rank_stats` -- alternating-form census, random symmetric rank tails, exact bounds
* :mod:`invwalk.restricted` -- subgroup structure of the k-restricted walk
* :mod:`invwalk.walk_sim` -- simulation, convolution oracle, cutoff profiles, hypercube baseline
"""

__version__ = "0.1.0"

from .errors import CapacityError, InputError, VerificationError
from .gf2 import Gf2Matrix, Gf2Vector, kernel_basis, rank, span_dim, walsh_hadamard

__all__ = [
    "CapacityError",
    "Gf2Matrix",
    "Gf2Vector",
    "InputError",
    "VerificationError",
    "kernel_basis",
    "rank",
    "span_dim",
    "walsh_hadamard",
]
