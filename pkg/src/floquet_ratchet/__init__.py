"""Transport in a periodically driven rotor with balanced gain and loss.

The model is a single quantum rotor whose drive K sin(omega t + phi) acts
through the complex potential cos x + i lambda sin x. On the momentum
ladder this couples neighboring modes with unequal strengths lambda + 1 and
lambda - 1, which is what produces directed current out of a symmetric
initial state, spectra that stay real up to a finite lambda threshold, and
exceptional points where Floquet states coalesce.

The public surface is re-exported here; the modules group as:

- model: Hamiltonian, parameters, states
- propagation: time stepping and the one-period propagator
- floquet: spectra, thresholds, state classes, coalescence evidence
- observables: currents, norms, time averages, the momentum cutoff
- threelevel: closed-form resonant models that cross-check the numerics
- gpe: nonlinear split-step evolution on a spatial grid
- sweep: deterministic parallel parameter scans
- cli: the floquet-ratchet command
"""

from .errors import (
    BracketFailure,
    DegenerateIntermediate,
    EigenFailure,
    FloquetRatchetError,
    NonFinite,
    SizeMismatch,
    TooShort,
    ZeroNorm,
)
from .model import (
    CouplingPair,
    DriveParams,
    MomentumState,
    apply_hamiltonian,
    edge_population_fraction,
    hamiltonian_diagonals,
    hamiltonian_matrix,
    initial_state_zero_momentum,
)
from .propagation import (
    SCHEMES,
    PropagatorConfig,
    TimeSeries,
    evolve_with_observables,
    matrix_exponential,
    one_period_propagator,
    propagate,
)
from .observables import (
    CurrentStats,
    current,
    mean_momentum,
    momentum_cutoff,
    norm_squared,
    time_averaged_current,
)
from .floquet import (
    EPEvidence,
    FloquetSpectrum,
    StateClass,
    classify_floquet_states,
    detect_ep,
    dominant_floquet_state,
    dominant_pair_separation,
    expansion_coefficients,
    floquet_spectrum,
    fold_quasienergy,
    imag_sum_xi,
    pt_threshold,
    separation_threshold_omega_c,
    xi_for_params,
)
from .threelevel import (
    EffectiveCouplings,
    ExtendedFloquetIndex,
    analytic_current_w05,
    analytic_current_w1,
    analytic_populations_w05,
    analytic_populations_w1,
    analytic_tac,
    build_t_matrix,
    coupling_v_element,
    effective_couplings,
    ep_analytic_solution,
    perturbative_t_element,
    rabi_period,
    resonant_momenta,
    three_level_ode_evolve,
)
from .gpe import (
    GridState,
    gpe_evolve,
    grid_norm_squared,
    grid_to_momentum,
    momentum_to_grid,
    uniform_grid_state,
)
from .sweep import (
    RESULT_KINDS,
    ScanRecord,
    parameter_key,
    resolve_workers,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BracketFailure",
    "DegenerateIntermediate",
    "EigenFailure",
    "FloquetRatchetError",
    "NonFinite",
    "SizeMismatch",
    "TooShort",
    "ZeroNorm",
    "CouplingPair",
    "DriveParams",
    "MomentumState",
    "apply_hamiltonian",
    "edge_population_fraction",
    "hamiltonian_diagonals",
    "hamiltonian_matrix",
    "initial_state_zero_momentum",
    "SCHEMES",
    "PropagatorConfig",
    "TimeSeries",
    "evolve_with_observables",
    "matrix_exponential",
    "one_period_propagator",
    "propagate",
    "CurrentStats",
    "current",
    "mean_momentum",
    "momentum_cutoff",
    "norm_squared",
    "time_averaged_current",
    "EPEvidence",
    "FloquetSpectrum",
    "StateClass",
    "classify_floquet_states",
    "detect_ep",
    "dominant_floquet_state",
    "dominant_pair_separation",
    "expansion_coefficients",
    "floquet_spectrum",
    "fold_quasienergy",
    "imag_sum_xi",
    "pt_threshold",
    "separation_threshold_omega_c",
    "xi_for_params",
    "EffectiveCouplings",
    "ExtendedFloquetIndex",
    "analytic_current_w05",
    "analytic_current_w1",
    "analytic_populations_w05",
    "analytic_populations_w1",
    "analytic_tac",
    "build_t_matrix",
    "coupling_v_element",
    "effective_couplings",
    "ep_analytic_solution",
    "perturbative_t_element",
    "rabi_period",
    "resonant_momenta",
    "three_level_ode_evolve",
    "GridState",
    "gpe_evolve",
    "grid_norm_squared",
    "grid_to_momentum",
    "momentum_to_grid",
    "uniform_grid_state",
    "RESULT_KINDS",
    "ScanRecord",
    "parameter_key",
    "resolve_workers",
    "run_sweep",
    "__version__",
]
