"""Exact Frobenius computations over F_p[x1..xn].

Bracket powers and Frobenius roots, test ideals tau(a^t), nu-invariants,
F-pure thresholds, F-jumping numbers of principal ideals, HSL numbers of
hypersurfaces, and Ohm-Rush content checks for polynomial extensions.
"""

__version__ = "0.1.0"

from .chains import ChainReport
from .content import (
    ContentIdeal,
    SplitContext,
    content_additivity_check,
    frobenius_content,
    gaussian_check,
    poly_content,
    weak_content_check,
)
from .errors import (
    ContextMismatchError,
    DomainError,
    ExponentOverflowError,
    FrobcalcError,
    InvalidQError,
    ParseError,
    UnstabilizedError,
)
from .frobenius import (
    FreeSubmodule,
    bracket_power,
    frobenius_root,
    frobenius_root_module,
    if_identity_check,
    psi,
    root_additivity_check,
)
from .groebner import (
    Ideal,
    ideal_equals,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_sum,
    membership,
    radical_membership,
    reduced_gb,
)
from .hsl import FrobeniusActionSpec, hsl_chain, hsl_number
from .invariants import (
    ThresholdResult,
    bms_test_ideal,
    fpt,
    is_jumping,
    jumping_numbers,
    nu,
)
from .ring import (
    FrobeniusDecomposition,
    Polynomial,
    RingContext,
    frobenius_expand,
    poly_add,
    poly_mul,
    poly_parse,
    poly_pow,
)

__all__ = [name for name in dir() if not name.startswith("_")]
