"""Exact computations with cyclic sum formulas for multiple zeta (star) values.

The public surface re-exports the pieces most scripts need; everything else
lives in the submodules.
"""

from .cyclic_operators import CyclicVariant, cyclic_derivative, partial, rho, rho_bar
from .errors import (
    CSFError,
    DivergentIndex,
    InternalInconsistency,
    NonAdmissibleWord,
    NotInH1,
    NotLeftDivisible,
    ParseError,
    PreconditionViolation,
    UnknownSuite,
    WeightMismatch,
)
from .free_algebra import Index, Poly, Space, enumerate_words, parse_index, parse_poly, parse_word
from .linalg import LinearSystem, SpanEchelon, exact_rank, membership
from .numeric_zeta import TruncationParams, evaluate_Z, evaluate_Z_bar, zeta_num, zeta_star_num
from .relation_engine import (
    csf_dimension,
    dims_table,
    kawashima_span,
    key_prop_check,
    rho_membership,
    totient_dimension,
)
from .zeta_maps import apply_d, gamma, gamma_inv, phi, star, star_bar

__version__ = "0.1.0"
