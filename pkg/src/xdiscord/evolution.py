"""Exact reduced dynamics under the shared dephasing coupling.

The coupling commutes with the free Hamiltonian, so populations are frozen
and every coherence evolves independently:

    rho_{l'l}(t) = rho_{l'l}(0)
                   * exp[-i (E'^2 - E^2) P(t)]   (bath-induced phase)
                   * exp[-(E' - E)^2 Q(t)]       (decay)
                   * exp[-i (E' - E) t]          (free precession)

with E the bare level energies and P, Q the reservoir integrals. For X
states only the two antidiagonal coherences survive, and E'^2 = E^2 on
both, so the bath phase drops out of the fast path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError
from .reservoir import (
    ReservoirConfig,
    bath_phase_integral,
    decay_factors,
    dephasing_exponent,
)
from .states import (
    BASIS_LABELS,
    EIGENVALUE_FLOOR,
    QubitPairConfig,
    TwoQubitDensity,
    XStateParams,
    _x_spectrum,
)


def level_energy(label, qubits: QubitPairConfig) -> float:
    """Bare energy of |l_A l_B>: ((-1)^l_A w_a + (-1)^l_B w_b)/2."""
    l_a, l_b = label
    if l_a not in (0, 1) or l_b not in (0, 1):
        raise InvalidStateError(f"labels must be 0 or 1, got {label!r}")
    sa = 1.0 if l_a == 0 else -1.0
    sb = 1.0 if l_b == 0 else -1.0
    return (sa * qubits.omega_a + sb * qubits.omega_b) / 2.0


@dataclass(frozen=True)
class LevelPair:
    """Bra and ket labels addressing one density-matrix element."""

    bra: tuple
    ket: tuple

    def __post_init__(self):
        for side in (self.bra, self.ket):
            if tuple(side) not in BASIS_LABELS:
                raise InvalidStateError(f"unknown basis label {side!r}")


@dataclass(frozen=True)
class EvolvedXState:
    """X-state snapshot at time t.

    mu and nu are the decayed outer and inner antidiagonal amplitudes
    (4 * the matrix entries), delta1/delta2 the accumulated precession
    phases (w_a + w_b) t and (w_a - w_b) t, c3 the frozen population
    parameter.
    """

    mu: float
    nu: float
    delta1: float
    delta2: float
    c3: float
    t: float

    def __post_init__(self):
        if self.t < 0.0:
            raise InvalidStateError(f"t={self.t!r} must be nonnegative")
        worst = min(_x_spectrum(abs(self.mu), abs(self.nu), self.c3))
        if worst < EIGENVALUE_FLOOR:
            raise InvalidStateError(
                f"(mu, nu, c3)=({self.mu!r}, {self.nu!r}, {self.c3!r}) "
                f"induce a negative eigenvalue {worst:.6e}"
            )


def evolve_element(
    initial: complex,
    pair: LevelPair,
    t: float,
    qubits: QubitPairConfig,
    res: ReservoirConfig,
    method: str = "auto",
    large_detuning_limit: bool = False,
) -> complex:
    """Evolve one density-matrix element for an arbitrary initial state."""
    if t < 0.0:
        raise InvalidStateError(f"t={t!r} must be nonnegative")
    if pair.bra == pair.ket:
        return complex(initial)
    e_bra = level_energy(pair.bra, qubits)
    e_ket = level_energy(pair.ket, qubits)
    diff = e_bra - e_ket
    if large_detuning_limit:
        # every coherence is forced onto the w_a^2 exponent, even ones a
        # degeneracy would otherwise freeze; the limit mode is only
        # meaningful for the X antidiagonals
        out = complex(initial) * cmath.exp(-1j * diff * t)
        sq_diff = e_bra * e_bra - e_ket * e_ket
        if sq_diff != 0.0:
            out *= cmath.exp(-1j * sq_diff * bath_phase_integral(t, res))
        factors = decay_factors(t, qubits, res, method, large_detuning_limit)
        return out * factors.gamma1
    if diff == 0.0:
        return complex(initial)
    out = complex(initial) * cmath.exp(-1j * diff * t)
    sq_diff = e_bra * e_bra - e_ket * e_ket
    if sq_diff != 0.0:
        out *= cmath.exp(-1j * sq_diff * bath_phase_integral(t, res))
    factors = decay_factors(t, qubits, res, method, large_detuning_limit)
    s = qubits.omega_a + qubits.omega_b
    d = qubits.omega_a - qubits.omega_b
    if diff * diff == s * s:
        out *= factors.gamma1
    elif diff * diff == d * d:
        out *= factors.gamma2
    else:
        # single-qubit coherences decay with their own squared gap
        out *= math.exp(-diff * diff * dephasing_exponent(t, res, method))
    return out


def evolve_x_state(
    params: XStateParams,
    t: float,
    qubits: QubitPairConfig,
    res: ReservoirConfig,
    method: str = "auto",
    large_detuning_limit: bool = False,
) -> EvolvedXState:
    """Fast path for X states: mu = (c1 - c2) gamma1, nu = (c1 + c2) gamma2."""
    if t < 0.0:
        raise InvalidStateError(f"t={t!r} must be nonnegative")
    factors = decay_factors(t, qubits, res, method, large_detuning_limit)
    return EvolvedXState(
        mu=(params.c1 - params.c2) * factors.gamma1,
        nu=(params.c1 + params.c2) * factors.gamma2,
        delta1=(qubits.omega_a + qubits.omega_b) * t,
        delta2=(qubits.omega_a - qubits.omega_b) * t,
        c3=params.c3,
        t=t,
    )


def assemble_density(x: EvolvedXState) -> TwoQubitDensity:
    """Density matrix of an evolved X state.

    The surviving coherences sit on the antidiagonal with the precession
    phases: entry (|00>, |11>) is (mu/4) e^{-i delta1} and entry
    (|01>, |10>) is (nu/4) e^{-i delta2}, matching elementwise evolution.
    """
    dp = (1.0 + x.c3) / 4.0
    dm = (1.0 - x.c3) / 4.0
    outer = 0.25 * x.mu * cmath.exp(-1j * x.delta1)
    inner = 0.25 * x.nu * cmath.exp(-1j * x.delta2)
    m = np.array(
        [
            [dp, 0.0, 0.0, outer],
            [0.0, dm, inner, 0.0],
            [0.0, inner.conjugate(), dm, 0.0],
            [outer.conjugate(), 0.0, 0.0, dp],
        ],
        dtype=complex,
    )
    return TwoQubitDensity(m)


def evolve_density(
    rho0: TwoQubitDensity,
    t: float,
    qubits: QubitPairConfig,
    res: ReservoirConfig,
    method: str = "auto",
    large_detuning_limit: bool = False,
) -> TwoQubitDensity:
    """Elementwise evolution of an arbitrary initial density matrix."""
    out = np.empty((4, 4), dtype=complex)
    for i, bra in enumerate(BASIS_LABELS):
        for j, ket in enumerate(BASIS_LABELS):
            out[i, j] = evolve_element(
                rho0.entries[i, j],
                LevelPair(bra, ket),
                t,
                qubits,
                res,
                method,
                large_detuning_limit,
            )
    return TwoQubitDensity(out)
