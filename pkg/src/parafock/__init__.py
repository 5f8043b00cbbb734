"""Parastatistics Fock spaces of osp(3|2) and the Wigner quantum oscillator."""

from .oscillator import (
    ObservableSet,
    OscillatorParams,
    build_ladder,
    build_observables,
    m3_eigenvalue_table,
    noncommutativity_report,
    p1_oracle_equivalence,
    spectrum,
)
from .repcore import (
    COEFFICIENT_SETS,
    VACUUM,
    BasisLabel,
    CoefficientDomainError,
    FockBasis,
    StateVector,
    apply_generator,
    apply_h,
    apply_word,
    coeff_G1,
    coeff_G2,
    enumerate_basis,
    inner_product,
    parity_indicators,
    validate_label,
)
from .superlin import (
    DefiningRealization,
    FockRealization,
    GradedOperator,
    SparseComplexMatrix,
    adjointness_residual,
    build_defining_realization,
    matrix_of,
    super_bracket,
    triple_relation_residual,
    triple_relation_sweep,
)

__version__ = "0.1.0"
