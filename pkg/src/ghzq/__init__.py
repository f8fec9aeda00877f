"""All-versus-nothing (GHZ) contradictions for N qudits via concurrent observables."""

__version__ = "0.1.0"

from .criterion import (
    admissible_constructions,
    genuinely_ddim_check,
    genuinely_npartite_check,
    reproduce_known_case,
)
from .errors import ConsistencyError, InvalidArgumentError, ResourceLimitError
from .ghz_core import (
    CompositeObservable,
    ConstructionParams,
    MeasurementSetting,
    apply_composite,
    build_concurrent_set,
    check_invariance,
    correlation_function,
    ghz_state,
    joint_distribution,
    perfect_correlation_offset,
    verify_common_eigenstate,
)
from .lhv_engine import analytic_solvable, brute_force_search, certify, constraints_from_params
from .observables import eigenvector, equivalent, overlap_sq, x_of_alpha
from .qudit_algebra import PhaseFunction, StateVector, apply_local, fourier_matrix, inner_product, omega_power, phase_shifter
