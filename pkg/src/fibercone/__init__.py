"""Exact computation of fiber-cone presentations for m-primary ideals.

The local engine works in K[x]/m^D, which is exact for the quotients it needs;
the Groebner engine provides an independent elimination oracle.
"""
from .errors import (FiberConeError, InputError, NoReductionFound, NotPrimaryError,
                     NotReductionError, ParseError, PresentationError, ResourceCapError,
                     TheoremConsistencyError)
from .field import GF, QQ, PrimeField, Rationals, field_from_spec
from .groebner import Ideal, buchberger, eliminate, hilbert_function, ideal_contains, ideal_equal
from .linalg import HAVE_COMPILED
from .local import (TruncationContext, build_candidate_ideal, build_ladder,
                    exact_polynomial_membership_gap, reduction_number, socle_bound)
from .pipeline import (FiberPresentation, VerificationReport, build_presentation, cm_check,
                       find_reduction, kernel_oracle, verify_presentation, verify_theorem)
from .poly import DEGREVLEX, LEX, AmbientRing, MonomialOrder, Poly, base_ring, presentation_ring

__version__ = "0.1.0"
