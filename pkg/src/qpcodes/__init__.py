"""Quasi-polycyclic codes over the chain rings Z_{p^s}."""

from .chain_ring import (
    RingSpec,
    annihilator_exponent,
    gamma_decompose,
    is_unit,
    unit_inverse,
)
from .duality import (
    AssociateVector,
    LinearCode,
    ShiftMatrix,
    annihilator_dual,
    build_D,
    build_M,
    euclidean_dual,
    inner_f,
    is_invariant,
    is_quasi_polycyclic,
    is_quasi_sequential,
)
from .errors import (
    BudgetExceededError,
    InternalConsistencyError,
    NotSquareFreeError,
    NotationError,
    PreconditionError,
    QPCodesError,
)
from .howell import HowellForm, howell_form, left_kernel, right_kernel
from .poly_ring import (
    Factorization,
    Poly,
    QuotientRing,
    factor_basic_irreducibles,
    format_terms,
    gamma_adic_digits,
    gcd_with_f,
    is_squarefree_residue,
    monic_divrem,
    mul_mod,
    parse_poly,
    render_poly,
)
from .polycyclic import (
    PolycyclicCode,
    StandardFormBasis,
    annihilator,
    cardinality_exponent,
    enumerate_codewords,
    shorten_cyclic,
    single_generator,
    standard_form_from_generators,
)
from .qp_code import (
    DEFAULT_BUDGET,
    CodeParams,
    DigitDecomposition,
    HSequence,
    MinimalGeneratingSet,
    QPGenerator,
    code_params,
    h_sequence,
    is_free,
    minimal_generating_set,
    parity_check,
    project,
)

__all__ = [name for name in dir() if not name.startswith("_")]
