"""wildcycle: exact formal-local invariants of meromorphic lambda-connections.

The package computes, for germs of meromorphic connections in the twistor
parameter family (Higgs field at z = 0, flat connection at z != 0), the
formal decomposition into exponential factors, nearby cycles with monodromy
weight data, Deligne's irregular nearby-cycle table, regularity tests, and
the Mellin-pole bookkeeping of model pairing terms -- all in exact
cyclotomic-rational arithmetic.
"""

from .connection import ExpFactor, LambdaConnection
from .cyclotomic import Cyc
from .document import InputDocument
from .exponents import ComplexExponent, ell, exponent_from_eigenvalue, star
from .matrices import LaurentMatrix
from .mellin import ExpansionTerm, MellinPole, mellin_poles, model_orthonormal_block
from .nearby import (DeligneTable, deligne_nearby_cycles, is_t_irreducible,
                     ramification_transport)
from .params import LPoly, ParamScalar
from .regular import (NearbyCycleDatum, RegularModel, bernstein_product,
                      monodromy_filtration, psi_beta, reduce_to_constant,
                      regularity_test, v0_lattice_fiber_dim)
from .series import LaurentSeries, ramify_series
from .turrittin import (FormalDecomposition, NewtonPolygon, formal_decompose,
                        leading_split, newton_polygon, shear,
                        verify_decomposition)

__version__ = "0.1.0"
