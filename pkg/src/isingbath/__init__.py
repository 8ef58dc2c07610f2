"""Dephasing and entanglement of qubits in a mean-field transverse-Ising bath.

Closed-form coherence and concurrence dynamics below the bath's ordering
transition, an exact small-bath brute-force simulator to validate them,
and a CLI for parameter sweeps and figure reproduction.
"""

from .dephasing import (
    MODE_ASYMPTOTIC,
    MODE_FINITE,
    DephasingCoeffs,
    SystemParams,
    coherence_factor_finite,
    coherence_magnitude_asymptotic,
    coherence_time,
    dephasing_coeffs,
    im_coherence_time,
    im_limit_magnitude,
)
from .entanglement import (
    ConcurrenceValue,
    case1_concurrence,
    case2_concurrence,
    case4_concurrence,
    concurrence,
    jacobi_eigh,
    singular_values,
)
from .errors import (
    ConfigTooLarge,
    InvalidParams,
    InvalidState,
    IsingBathError,
    NoConvergence,
    NotADensityMatrix,
    RangeError,
)
from .mean_field import (
    PHASE_DISORDERED,
    PHASE_ORDERED,
    BathParams,
    OrderSolution,
    critical_temperature,
    is_ordered,
    order_parameter_sweep,
    solve_order,
)
from .oracle import (
    MAX_BATH_SIZE,
    OracleConfig,
    extract_coeffs,
    extract_products,
    reconstruct_reduced,
    simulate_exact,
    single_qubit_coherence_exact,
)
from .su2 import TracelessXZ, exp_imag, exp_real, single_spin_gibbs, trace_triple
from .two_qubit import (
    PureState2Q,
    case_state,
    evolve_reduced,
    pure_concurrence,
    r_matrix,
    spin_flip,
    validate_density,
)

__version__ = "0.1.0"
