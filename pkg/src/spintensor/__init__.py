"""Tensor (generalized Bloch) representation of spin-j quantum states."""

__version__ = "0.1.0"

from .angular import (
    DEFAULT_CAP,
    SpinError,
    clebsch_gordan,
    coherent_state,
    direction_of,
    rotation_matrix_3d,
    rotation_operator,
    spin_operators,
    tensor_operator,
)
from .anticoherence import (
    AnticoherenceReport,
    CriterionDisagreement,
    anticoherence_report,
    multipole_expand,
    order2_matrix,
    order_by_moments,
    order_by_multipole,
    order_by_reduction,
    spin1_family,
)
from .tensor import (
    CoordinateTensor,
    InvalidStateError,
    canonical_check,
    cat_coordinates,
    coherent_coordinates,
    coordinates_of,
    hs_inner,
    maximally_mixed_coordinates,
    purity,
    random_density,
    reconstruct,
    reduced_coordinates,
    reduced_density,
    rotate_tensor,
)
from .weinberg import (
    CovariantMatrixSet,
    covariant_matrix,
    covariant_set,
    dicke_basis,
    husimi_check,
    pi_boost,
    pi_from_set,
    pi_polynomial,
)
