"""Ohmic reservoir integrals and the dephasing decay factors.

The bath enters the reduced dynamics only through two time integrals over
the spectral density with exponential cutoff: an imaginary-phase kernel

    P(t) = int_0^inf dw (eta/w) e^{-w/w_c} sin(w t)          [= eta*atan(w_c t)]

and the dephasing exponent

    Q(t) = 2 int_0^inf dw (eta/w) e^{-w/w_c} sin^2(w t/2) coth(w/(2T)).

Both are evaluated by adaptive quadrature; T = 0 is an exact mode where
coth -> 1 and Q has the closed form (eta/2) ln(1 + (w_c t)^2). Units have
hbar = k_B = 1, so beta = 1/T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.integrate import quad

from .errors import DomainError, InvalidStateError, QuadratureError
from .states import QubitPairConfig

# requested per-piece quadrature tolerances; the compound results are
# checked against the looser acceptance bounds below before returning
_EPSABS = 1e-14
_EPSREL = 1e-11
_ACCEPT_ABS = 1e-11
_ACCEPT_REL = 1e-9

# number of leading half-oscillations integrated directly before switching
# to the weighted (QAWO) rule; the thermal 1/w^2 bulk lives in this region
_DIRECT_ZEROS = 20

_Q2_MODES = ("auto", "quadrature", "low-temperature")


@dataclass(frozen=True)
class ReservoirConfig:
    """Ohmic bath with exponential cutoff: J(w) g^2(w) = eta * w * e^{-w/w_c}."""

    eta: float
    omega_c: float
    temperature: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.eta) and self.eta > 0.0):
            raise InvalidStateError(f"eta={self.eta!r} must be positive")
        if not (math.isfinite(self.omega_c) and self.omega_c > 0.0):
            raise InvalidStateError(f"omega_c={self.omega_c!r} must be positive")
        if not (math.isfinite(self.temperature) and self.temperature >= 0.0):
            raise InvalidStateError(
                f"temperature={self.temperature!r} must be nonnegative"
            )

    @property
    def is_zero_temperature(self) -> bool:
        return self.temperature == 0.0

    @property
    def beta(self) -> float:
        return math.inf if self.temperature == 0.0 else 1.0 / self.temperature


@dataclass(frozen=True)
class DecayFactors:
    """Coherence survival factors of the two antidiagonals.

    gamma1 damps the outer (double-flip) coherence, gamma2 the inner
    (exchange) coherence. Both lie in [0, 1]; gamma1 <= gamma2 because the
    outer coherence couples to the sum frequency. Exact zero is allowed,
    it is the underflow of e^{-x} for large exponents.
    """

    gamma1: float
    gamma2: float

    def __post_init__(self):
        if not (0.0 <= self.gamma1 <= self.gamma2 <= 1.0):
            raise InvalidStateError(
                f"decay factors ({self.gamma1!r}, {self.gamma2!r}) violate "
                "0 <= gamma1 <= gamma2 <= 1"
            )


def spectral_weight(omega: float, res: ReservoirConfig) -> float:
    """Effective coupling density eta * omega * exp(-omega/omega_c)."""
    if omega < 0.0:
        raise DomainError(f"omega={omega!r} must be nonnegative")
    return res.eta * omega * math.exp(-omega / res.omega_c)


def _coth(x: float) -> float:
    # x > 0; series below 1e-6 avoids 1/tanh noise, saturation above 20
    if x > 20.0:
        return 1.0
    if x < 1e-6:
        return 1.0 / x + x / 3.0
    return 1.0 / math.tanh(x)


def _upper_cutoff(res: ReservoirConfig) -> float:
    # e^{-W/w_c} tail below 1e-17 of the integrand scale; the thermal factor
    # coth(W/2T) is within 1e-17 of 1 once W > 40 T as well
    return 40.0 * res.omega_c + 40.0 * res.temperature


def _quad_checked(fn, lo, hi, what, **kw):
    out = quad(fn, lo, hi, epsabs=_EPSABS, epsrel=_EPSREL, full_output=1, **kw)
    val, err = out[0], out[1]
    if err > max(_ACCEPT_ABS, abs(val) * _ACCEPT_REL):
        raise QuadratureError(
            f"{what}: achieved abs error {err:.3e} on [{lo:.3e}, {hi:.3e}] "
            f"exceeds tolerance (value {val:.6e})"
        )
    return val


def _direct_edges(t: float, upper: float, spacing: float):
    """Chunk edges [0, spacing/t, 2*spacing/t, ...] capped at upper.

    The last edge equals upper only when the chunks reach the cutoff on
    their own; otherwise the caller owns [last edge, upper] and must treat
    it with an oscillation-aware rule, never a plain adaptive pass.
    """
    edges = [0.0]
    for k in range(1, _DIRECT_ZEROS + 1):
        e = k * spacing / t
        if e >= upper:
            edges.append(upper)
            break
        edges.append(e)
    return edges


def _phase_integral(t: float, eta: float, omega_c: float) -> float:
    def f(w):
        if w == 0.0:
            return eta * t
        return eta / w * math.exp(-w / omega_c) * math.sin(w * t)

    upper = 40.0 * omega_c
    edges = _direct_edges(t, upper, math.pi)
    total = math.fsum(
        _quad_checked(f, lo, hi, "phase integral", limit=200)
        for lo, hi in zip(edges[:-1], edges[1:])
    )
    b1 = edges[-1]
    if b1 < upper:
        g = lambda w: eta / w * math.exp(-w / omega_c)
        total += _quad_checked(
            g, b1, upper, "phase integral (oscillatory tail)",
            weight="sin", wvar=t, limit=500,
        )
    return total


@lru_cache(maxsize=4096)
def _phase_integral_cached(t, eta, omega_c):
    return _phase_integral(t, eta, omega_c)


def bath_phase_integral(t: float, res: ReservoirConfig) -> float:
    """Imaginary-phase kernel P(t); equals eta * atan(omega_c * t).

    Evaluated by quadrature. The closed form is kept out of this path so it
    can serve as an independent check.
    """
    if t < 0.0:
        raise DomainError(f"t={t!r} must be nonnegative")
    if t == 0.0:
        return 0.0
    return _phase_integral_cached(float(t), res.eta, res.omega_c)


def _dephasing_quadrature(t: float, eta: float, omega_c: float, T: float) -> float:
    def g(w):
        c = _coth(w / (2.0 * T)) if T > 0.0 else 1.0
        return 2.0 * eta / w * math.exp(-w / omega_c) * c

    def f(w):
        # stable form of g * (1 - cos(w t)); finite limit at w -> 0
        if w == 0.0:
            return eta * t * t * T
        s = math.sin(0.5 * w * t)
        return g(w) * s * s

    upper = 40.0 * omega_c + 40.0 * T
    edges = _direct_edges(t, upper, 2.0 * math.pi)
    total = math.fsum(
        _quad_checked(f, lo, hi, "dephasing integral", limit=200)
        for lo, hi in zip(edges[:-1], edges[1:])
    )
    b1 = edges[-1]
    if b1 < upper:
        # remainder: g sin^2 = g/2 - (g/2) cos. Geometric breakpoints tame
        # the 1/w^2 thermal rise of g toward the lower end.
        pts = []
        p = 4.0 * b1
        while p < upper:
            pts.append(p)
            p *= 4.0
        smooth = _quad_checked(
            g, b1, upper, "dephasing integral (smooth tail)",
            points=pts or None, limit=300,
        )
        osc = _quad_checked(
            g, b1, upper, "dephasing integral (oscillatory tail)",
            weight="cos", wvar=t, limit=500,
        )
        total += 0.5 * (smooth - osc)
    return total


@lru_cache(maxsize=4096)
def _dephasing_quadrature_cached(t, eta, omega_c, T):
    return _dephasing_quadrature(t, eta, omega_c, T)


def bath_dephasing_integral(t: float, res: ReservoirConfig) -> float:
    """Dephasing exponent Q(t) by adaptive quadrature.

    At T = 0 the integrand uses coth -> 1 exactly; the result then matches
    (eta/2) ln(1 + (omega_c t)^2) to quadrature accuracy.
    """
    if t < 0.0:
        raise DomainError(f"t={t!r} must be nonnegative")
    if t == 0.0:
        return 0.0
    return _dephasing_quadrature_cached(
        float(t), res.eta, res.omega_c, res.temperature
    )


def _log_sinhc(x: float) -> float:
    # log(sinh(x)/x), stable from 0 through overflow range
    if x < 1e-4:
        x2 = x * x
        return x2 / 6.0 - x2 * x2 / 180.0
    if x > 30.0:
        return x - math.log(2.0 * x) + math.log1p(-math.exp(-2.0 * x))
    return math.log(math.sinh(x) / x)


def _dephasing_zero_temperature(t: float, eta: float, omega_c: float) -> float:
    return 0.5 * eta * math.log1p((omega_c * t) ** 2)


def bath_dephasing_low_temperature(t: float, res: ReservoirConfig) -> float:
    """Closed-form Q(t) valid for T << omega_c:

        eta * { (1/2) ln[1 + (w_c t)^2] + ln[ sinh(pi t T) / (pi t T) ] }.

    The thermal term goes to zero both as t -> 0 and as T -> 0, so the
    expression degrades gracefully to the exact zero-temperature form.
    """
    if t < 0.0:
        raise DomainError(f"t={t!r} must be nonnegative")
    if t == 0.0:
        return 0.0
    vacuum = _dephasing_zero_temperature(t, res.eta, res.omega_c)
    if res.temperature == 0.0:
        return vacuum
    return vacuum + res.eta * _log_sinhc(math.pi * t * res.temperature)


def dephasing_exponent(t: float, res: ReservoirConfig, method: str = "auto") -> float:
    """Q(t) through one of the evaluation routes.

    "auto" uses the exact closed form at T = 0 and quadrature otherwise;
    "quadrature" forces quadrature; "low-temperature" uses the T << omega_c
    closed form.
    """
    if method not in _Q2_MODES:
        raise DomainError(f"unknown dephasing method {method!r}; use one of {_Q2_MODES}")
    if t < 0.0:
        raise DomainError(f"t={t!r} must be nonnegative")
    if t == 0.0:
        return 0.0
    if method == "low-temperature":
        return bath_dephasing_low_temperature(t, res)
    if method == "auto" and res.is_zero_temperature:
        return _dephasing_zero_temperature(t, res.eta, res.omega_c)
    return bath_dephasing_integral(t, res)


def decay_factors(
    t: float,
    qubits: QubitPairConfig,
    res: ReservoirConfig,
    method: str = "auto",
    large_detuning_limit: bool = False,
) -> DecayFactors:
    """Coherence decay factors at time t.

        gamma1 = exp[-(w_a + w_b)^2 Q(t)],  gamma2 = exp[-(w_a - w_b)^2 Q(t)]

    so ln(gamma2)/ln(gamma1) = ((r-1)/(r+1))^2 with r = w_a/w_b. With
    large_detuning_limit set, both exponents collapse to w_a^2, the exact
    r >> 1 limit in which gamma2 = gamma1.
    """
    q2 = dephasing_exponent(t, res, method)
    if large_detuning_limit:
        a = qubits.omega_a**2
        g = math.exp(-a * q2)
        return DecayFactors(gamma1=g, gamma2=g)
    a_sum = (qubits.omega_a + qubits.omega_b) ** 2
    a_diff = (qubits.omega_a - qubits.omega_b) ** 2
    return DecayFactors(
        gamma1=math.exp(-a_sum * q2),
        gamma2=math.exp(-a_diff * q2),
    )
