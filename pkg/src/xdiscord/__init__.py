"""Exact dephasing dynamics and quantum discord of two uncoupled qubits
sharing an Ohmic reservoir.

The package is layered bottom-up: states (density matrices, entropies),
reservoir (bath integrals and decay factors), evolution (per-element
dephasing map), discord (analytic X-state formulas plus a brute-force
measurement minimizer), analysis (critic times, amplification,
protection), cli (CSV sweeps).
"""

from .analysis import (
    AmplificationIndicator,
    AmplificationReport,
    AmplificationScan,
    CriticTimeResult,
    ProtectedDiscord,
    amplification_indicator,
    amplification_rate,
    asymptotic_discord_identical,
    critic_time,
    critic_time_closed_form_detuned,
    critic_time_closed_form_identical,
    initial_discord_identical,
    protected_discord,
    scan_amplification_rate,
)
from .discord import (
    REGIME_AFTER,
    REGIME_BEFORE,
    REGIME_NONE,
    DiscordBreakdown,
    MeasurementBasis,
    classical_correlation,
    classical_correlation_value,
    discord_analytic,
    discord_bruteforce,
    measurement_spread,
    mutual_information,
    optimal_measurement_spread,
    x_state_eigenvalues,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    InvalidStateError,
    QuadratureError,
    RootFindError,
)
from .evolution import (
    EvolvedXState,
    LevelPair,
    assemble_density,
    evolve_density,
    evolve_element,
    evolve_x_state,
    level_energy,
)
from .reservoir import (
    DecayFactors,
    ReservoirConfig,
    bath_dephasing_integral,
    bath_dephasing_low_temperature,
    bath_phase_integral,
    decay_factors,
    dephasing_exponent,
    spectral_weight,
)
from .states import (
    BASIS_LABELS,
    QubitPairConfig,
    TwoQubitDensity,
    XStateParams,
    entropy_bits,
    partial_trace,
    von_neumann_entropy,
    x_state_density,
    xlog2,
)

__all__ = [
    "AmplificationIndicator",
    "AmplificationReport",
    "AmplificationScan",
    "BASIS_LABELS",
    "ConfigError",
    "ConvergenceError",
    "CriticTimeResult",
    "DecayFactors",
    "DiscordBreakdown",
    "DomainError",
    "EvolvedXState",
    "InvalidStateError",
    "LevelPair",
    "MeasurementBasis",
    "ProtectedDiscord",
    "QuadratureError",
    "QubitPairConfig",
    "REGIME_AFTER",
    "REGIME_BEFORE",
    "REGIME_NONE",
    "ReservoirConfig",
    "RootFindError",
    "TwoQubitDensity",
    "XStateParams",
    "amplification_indicator",
    "amplification_rate",
    "assemble_density",
    "asymptotic_discord_identical",
    "bath_dephasing_integral",
    "bath_dephasing_low_temperature",
    "bath_phase_integral",
    "classical_correlation",
    "classical_correlation_value",
    "critic_time",
    "critic_time_closed_form_detuned",
    "critic_time_closed_form_identical",
    "decay_factors",
    "dephasing_exponent",
    "discord_analytic",
    "discord_bruteforce",
    "entropy_bits",
    "evolve_density",
    "evolve_element",
    "evolve_x_state",
    "initial_discord_identical",
    "level_energy",
    "measurement_spread",
    "mutual_information",
    "optimal_measurement_spread",
    "partial_trace",
    "protected_discord",
    "scan_amplification_rate",
    "spectral_weight",
    "von_neumann_entropy",
    "x_state_density",
    "x_state_eigenvalues",
    "xlog2",
]
