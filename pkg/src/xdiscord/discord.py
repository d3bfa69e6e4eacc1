"""Quantum discord of evolved X states.

Two independent routes are provided. The analytic route uses the known
optimal-measurement structure of X states with maximally mixed marginals:
the conditional-entropy minimum over one-qubit projective measurements on
qubit B is attained either at the equatorial angle (spread (|mu|+|nu|)/2)
or at the pole (spread |c3|), whichever is larger. The brute-force route
minimizes over an explicit (theta, phi) measurement grid with local
refinement and serves as the oracle for the analytic one.

All information quantities are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, InvalidStateError
from .evolution import EvolvedXState
from .states import (
    EIGENVALUE_FLOOR,
    TwoQubitDensity,
    entropy_bits,
    partial_trace,
    von_neumann_entropy,
    xlog2,
)

REGIME_BEFORE = "before-critic"
REGIME_AFTER = "after-critic"
REGIME_NONE = "no-critic"

# population asymmetry below this is treated as exactly zero when labeling
# the regime; the pole branch can then never take over
_REGIME_ZERO = 1e-14

_MIN_GRID = (64, 128)
_REFINE_ROUNDS = 3
_REFINE_POINTS = 21
_REFINE_SHRINK = 10.0
_CONVERGENCE_TOL = 1e-6
_X_PATTERN_TOL = 1e-12


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective measurement direction on qubit B.

    The measured pair is |par> = cos(theta)|0> + e^{i phi} sin(theta)|1>
    and |perp> = e^{-i phi} sin(theta)|0> - cos(theta)|1>. theta covers
    [0, pi/2] and phi [0, 2 pi); that range already reaches every basis.
    """

    theta: float
    phi: float

    def parallel_ket(self) -> np.ndarray:
        return np.array(
            [math.cos(self.theta), np.exp(1j * self.phi) * math.sin(self.theta)],
            dtype=complex,
        )

    def perpendicular_ket(self) -> np.ndarray:
        return np.array(
            [np.exp(-1j * self.phi) * math.sin(self.theta), -math.cos(self.theta)],
            dtype=complex,
        )

    def projectors(self):
        v = self.parallel_ket()
        w = self.perpendicular_ket()
        return np.outer(v, v.conj()), np.outer(w, w.conj())


@dataclass(frozen=True)
class DiscordBreakdown:
    """Mutual information, classical correlation, and their difference."""

    mutual_information: float
    classical_correlation: float
    discord: float
    chi: float
    regime: str

    def __post_init__(self):
        if abs(self.discord - (self.mutual_information - self.classical_correlation)) > 1e-12:
            raise InvalidStateError("discord must equal I - C")
        if not (-1e-10 <= self.classical_correlation <= self.mutual_information + 1e-10):
            raise InvalidStateError(
                f"classical correlation {self.classical_correlation!r} outside "
                f"[0, I={self.mutual_information!r}]"
            )


def x_state_eigenvalues(x: EvolvedXState) -> np.ndarray:
    """Spectrum (1 + c3 -/+ mu)/4, (1 - c3 -/+ nu)/4 of the evolved X matrix."""
    lam = np.array(
        [
            (1.0 + x.c3 - x.mu) / 4.0,
            (1.0 + x.c3 + x.mu) / 4.0,
            (1.0 - x.c3 - x.nu) / 4.0,
            (1.0 - x.c3 + x.nu) / 4.0,
        ]
    )
    if lam.min() < EIGENVALUE_FLOOR:
        raise InvalidStateError(
            f"evolved state has negative eigenvalue {lam.min():.6e}"
        )
    return lam


def mutual_information(x: EvolvedXState) -> float:
    """I = 2 + sum_i lambda_i log2 lambda_i; both marginals are I/2."""
    return 2.0 - entropy_bits(x_state_eigenvalues(x))


def measurement_spread(basis: MeasurementBasis, x: EvolvedXState) -> float:
    """Eigenvalue splitting of the post-measurement conditional state.

    The conditional state of qubit A has eigenvalues (1 +/- L)/2 with

        L^2 = c3^2 cos^2(2 theta)
              + [mu^2 + nu^2 + 2 mu nu cos(delta2 - delta1 + 2 phi)]
                * sin^2(2 theta) / 4.
    """
    cos2t = math.cos(2.0 * basis.theta)
    sin2t = math.sin(2.0 * basis.theta)
    cross = math.cos(x.delta2 - x.delta1 + 2.0 * basis.phi)
    val = (x.c3 * cos2t) ** 2 + 0.25 * (
        x.mu**2 + x.nu**2 + 2.0 * x.mu * x.nu * cross
    ) * sin2t**2
    return math.sqrt(max(val, 0.0))


def optimal_measurement_spread(x: EvolvedXState) -> float:
    """chi = max(|c3|, (|mu| + |nu|)/2), the spread at the best basis."""
    return max(abs(x.c3), 0.5 * (abs(x.mu) + abs(x.nu)))


def classical_correlation_value(chi: float) -> float:
    """C at a given optimal spread: sum_n (1 + (-1)^n chi)/2 log2(1 + (-1)^n chi).

    Equals 1 - h2((1 + chi)/2) with h2 the binary entropy.
    """
    if chi < 0.0 or chi > 1.0 + 1e-12:
        raise InvalidStateError(f"spread chi={chi!r} outside [0, 1]")
    chi = min(chi, 1.0)
    return 0.5 * (xlog2(1.0 + chi) + xlog2(1.0 - chi))


def classical_correlation(x: EvolvedXState) -> float:
    """Classical correlation of the evolved X state under optimal measurement."""
    return classical_correlation_value(optimal_measurement_spread(x))


def _regime_label(pole: float, equator: float) -> str:
    if pole <= _REGIME_ZERO:
        return REGIME_NONE
    return REGIME_BEFORE if equator > pole else REGIME_AFTER


def discord_analytic(x: EvolvedXState, tc_regime: str = "unknown") -> DiscordBreakdown:
    """Closed-form discord D = I - C of an evolved X state.

    tc_regime may force the branch ("before" uses the equatorial spread,
    "after" the pole spread); "unknown" takes the larger spread, which is
    the correct minimizing branch at any instant. Ties are labeled
    after-critic.
    """
    info = mutual_information(x)
    pole = abs(x.c3)
    equator = 0.5 * (abs(x.mu) + abs(x.nu))
    if tc_regime == "before":
        chi = equator
        regime = REGIME_BEFORE
    elif tc_regime == "after":
        chi = pole
        regime = REGIME_AFTER
    elif tc_regime == "unknown":
        chi = max(pole, equator)
        regime = _regime_label(pole, equator)
    else:
        raise DomainError(
            f"tc_regime={tc_regime!r}; expected 'before', 'after' or 'unknown'"
        )
    cc = classical_correlation_value(chi)
    return DiscordBreakdown(
        mutual_information=info,
        classical_correlation=cc,
        discord=info - cc,
        chi=chi,
        regime=regime,
    )


def _vec_xlog2(z: np.ndarray) -> np.ndarray:
    bad = z < EIGENVALUE_FLOOR
    if bad.any():
        raise InvalidStateError(
            f"conditional eigenvalue {z[bad].min():.6e} is negative beyond tolerance"
        )
    zc = np.maximum(z, 0.0)
    return np.where(zc > 0.0, zc * np.log2(np.maximum(zc, 1e-300)), 0.0)


def _conditional_entropies(r4: np.ndarray, thetas: np.ndarray, phis: np.ndarray):
    """p_k S(rho_A^k) summed over both outcomes, for a flat list of bases.

    Returns (s_cond, p_par, s_par, p_perp, s_perp) where s_* are the
    normalized conditional entropies.
    """
    ct = np.cos(thetas)
    st = np.sin(thetas)
    eph = np.exp(1j * phis)
    u_par = np.stack([ct + 0j, eph * st], axis=-1)
    u_perp = np.stack([np.conj(eph) * st, -ct + 0j], axis=-1)

    out = []
    for u in (u_par, u_perp):
        block = np.einsum("nb,ibjc,nc->nij", u.conj(), r4, u)
        a = block[:, 0, 0].real
        d = block[:, 1, 1].real
        p = a + d
        half_gap = np.hypot(0.5 * (a - d), np.abs(block[:, 0, 1]))
        mid = 0.5 * (a + d)
        safe = np.maximum(p, 1e-300)
        z1 = (mid - half_gap) / safe
        z2 = (mid + half_gap) / safe
        ent = -(_vec_xlog2(z1) + _vec_xlog2(z2))
        ent = np.where(p > 1e-15, ent, 0.0)
        out.append((p, ent))
    (p_par, s_par), (p_perp, s_perp) = out
    s_cond = p_par * s_par + p_perp * s_perp
    return s_cond, p_par, s_par, p_perp, s_perp


def _looks_like_symmetric_x(m: np.ndarray) -> bool:
    off = [(0, 1), (0, 2), (1, 0), (2, 0), (1, 3), (3, 1), (2, 3), (3, 2)]
    if any(abs(m[i, j]) > _X_PATTERN_TOL for i, j in off):
        return False
    return (
        abs(m[0, 0] - m[3, 3]) <= _X_PATTERN_TOL
        and abs(m[1, 1] - m[2, 2]) <= _X_PATTERN_TOL
    )


def discord_bruteforce(rho: TwoQubitDensity, grid=(64, 128)) -> DiscordBreakdown:
    """Discord by explicit minimization over measurement bases on qubit B.

    A coarse (theta, phi) grid is followed by up to three rounds of 10x
    local refinement around the running optimum; convergence means the
    minimum moved by less than 1e-6 between rounds. For symmetric X input
    the two outcome probabilities must both be 1/2 and the two conditional
    entropies equal; this is asserted to 1e-12.
    """
    n_theta, n_phi = grid
    if n_theta < _MIN_GRID[0] or n_phi < _MIN_GRID[1]:
        raise DomainError(
            f"grid {grid!r} is coarser than the required minimum {_MIN_GRID}"
        )
    m = rho.entries
    r4 = m.reshape(2, 2, 2, 2)
    s_a = von_neumann_entropy(partial_trace(rho, "A"))
    s_b = von_neumann_entropy(partial_trace(rho, "B"))
    s_ab = von_neumann_entropy(m)
    info = s_a + s_b - s_ab

    symmetric_x = _looks_like_symmetric_x(m)

    thetas = np.linspace(0.0, 0.5 * math.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    tg, pg = np.meshgrid(thetas, phis, indexing="ij")
    tg = tg.ravel()
    pg = pg.ravel()
    s_cond, p_par, s_par, p_perp, s_perp = _conditional_entropies(r4, tg, pg)
    if symmetric_x:
        worst_p = max(np.abs(p_par - 0.5).max(), np.abs(p_perp - 0.5).max())
        worst_s = np.abs(s_par - s_perp).max()
        if worst_p > 1e-12 or worst_s > 1e-12:
            raise InvalidStateError(
                "symmetric X state lost its measurement symmetry: "
                f"|p - 1/2| <= {worst_p:.3e}, |S_par - S_perp| <= {worst_s:.3e}"
            )
    best = int(np.argmin(s_cond))
    best_val = float(s_cond[best])
    best_theta = float(tg[best])
    best_phi = float(pg[best])

    spacing_theta = 0.5 * math.pi / (n_theta - 1)
    spacing_phi = 2.0 * math.pi / n_phi
    converged = False
    for _ in range(_REFINE_ROUNDS):
        lo_t = max(best_theta - spacing_theta, 0.0)
        hi_t = min(best_theta + spacing_theta, 0.5 * math.pi)
        sub_t = np.linspace(lo_t, hi_t, _REFINE_POINTS)
        sub_p = np.linspace(
            best_phi - spacing_phi, best_phi + spacing_phi, _REFINE_POINTS
        )
        tg, pg = np.meshgrid(sub_t, sub_p, indexing="ij")
        tg = tg.ravel()
        pg = pg.ravel()
        s_cond = _conditional_entropies(r4, tg, pg)[0]
        idx = int(np.argmin(s_cond))
        new_val = float(s_cond[idx])
        if new_val < best_val:
            best_theta = float(tg[idx])
            best_phi = float(pg[idx])
        change = best_val - min(new_val, best_val)
        best_val = min(new_val, best_val)
        spacing_theta /= _REFINE_SHRINK
        spacing_phi /= _REFINE_SHRINK
        if change < _CONVERGENCE_TOL:
            converged = True
            break

    cc = s_a - best_val
    # spread of the conditional state at the optimum, for the chi field
    chi = _conditional_spread(r4, best_theta, best_phi)
    pole = abs((m[0, 0] + m[3, 3] - m[1, 1] - m[2, 2]).real)
    equator = 2.0 * (abs(m[0, 3]) + abs(m[1, 2]))
    breakdown = DiscordBreakdown(
        mutual_information=info,
        classical_correlation=cc,
        discord=info - cc,
        chi=chi,
        regime=_regime_label(pole, equator),
    )
    if not converged:
        raise ConvergenceError(
            f"measurement grid refinement stalled: last change {change:.3e} "
            f"above {_CONVERGENCE_TOL:.0e}",
            best_so_far=breakdown,
        )
    return breakdown


def _conditional_spread(r4: np.ndarray, theta: float, phi: float) -> float:
    basis = MeasurementBasis(theta, phi)
    v = basis.parallel_ket()
    block = np.einsum("b,ibjc,c->ij", v.conj(), r4, v)
    p = (block[0, 0] + block[1, 1]).real
    if p <= 1e-15:
        return 0.0
    half_gap = math.hypot(0.5 * (block[0, 0].real - block[1, 1].real), abs(block[0, 1]))
    return 2.0 * half_gap / p
