"""Two-qubit states and density-matrix utilities.

Matrices live in the product basis |00>, |01>, |10>, |11>, where the first
label belongs to qubit A and the second to qubit B. Label 0 is the upper
level, so the bare energy of |l_A l_B> is ((-1)^l_A w_A + (-1)^l_B w_B)/2.
Entropies are in bits (log base 2) throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
# eigenvalues this far below zero are treated as roundoff and clipped
EIGENVALUE_FLOOR = -1e-10

#: basis labels (l_A, l_B) in matrix order
BASIS_LABELS = ((0, 0), (0, 1), (1, 0), (1, 1))


def xlog2(x: float) -> float:
    """x * log2(x) with the 0 * log(0) = 0 convention.

    Small negative inputs (roundoff from eigensolvers) are clipped to zero;
    anything below EIGENVALUE_FLOOR raises.
    """
    if x > 0.0:
        return x * math.log2(x)
    if x >= EIGENVALUE_FLOOR:
        return 0.0
    raise InvalidStateError(f"weight {x!r} is negative beyond tolerance")


def entropy_bits(weights) -> float:
    """Shannon entropy, in bits, of a set of nonnegative weights."""
    return -math.fsum(xlog2(w) for w in weights)


def _x_spectrum(mu: float, nu: float, c3: float):
    """Eigenvalues of the X-form matrix with antidiagonal magnitudes mu, nu."""
    return (
        (1.0 + c3 - mu) / 4.0,
        (1.0 + c3 + mu) / 4.0,
        (1.0 - c3 - nu) / 4.0,
        (1.0 - c3 + nu) / 4.0,
    )


@dataclass(frozen=True)
class XStateParams:
    """Correlation parameters (c1, c2, c3) of a shared-basis X state.

    The induced density matrix has diagonal (1 +/- c3)/4, outer antidiagonal
    entries (c1 - c2)/4 and inner antidiagonal entries (c1 + c2)/4.
    Construction rejects parameters whose induced matrix is not a state.
    """

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or abs(v) > 1.0:
                raise InvalidStateError(f"{name}={v!r} lies outside [-1, 1]")
        lam = _x_spectrum(self.c1 - self.c2, self.c1 + self.c2, self.c3)
        worst = min(lam)
        if worst < EIGENVALUE_FLOOR:
            raise InvalidStateError(
                "parameters (%r, %r, %r) induce a negative eigenvalue %.6e"
                % (self.c1, self.c2, self.c3, worst)
            )


@dataclass(frozen=True)
class QubitPairConfig:
    """Transition frequencies of the two qubits (hbar = 1)."""

    omega_a: float
    omega_b: float

    def __post_init__(self):
        for name in ("omega_a", "omega_b"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v <= 0.0:
                raise InvalidStateError(f"{name}={v!r} must be positive")

    @property
    def r(self) -> float:
        """Frequency ratio omega_a / omega_b."""
        return self.omega_a / self.omega_b

    @classmethod
    def from_ratio(cls, omega_b: float, r: float) -> "QubitPairConfig":
        return cls(omega_a=r * omega_b, omega_b=omega_b)

    @property
    def identical(self) -> bool:
        return self.omega_a == self.omega_b


@dataclass(frozen=True)
class TwoQubitDensity:
    """Validated 4x4 density matrix in the product basis.

    The stored array is a read-only copy of the input. Construction checks
    hermiticity and unit trace to 1e-12 and positivity to the shared
    eigenvalue floor.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape != (4, 4):
            raise InvalidStateError(f"expected a 4x4 matrix, got shape {m.shape}")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > HERMITICITY_TOL:
            raise InvalidStateError(f"matrix is not hermitian: max deviation {herm:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace {tr!r} differs from 1 beyond tolerance")
        w = np.linalg.eigvalsh(m)
        if w[0] < EIGENVALUE_FLOOR:
            raise InvalidStateError(f"negative eigenvalue {w[0]:.6e} beyond tolerance")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)


def x_state_density(params: XStateParams) -> TwoQubitDensity:
    """Density matrix induced by X-state parameters.

    Diagonal (1 + c3)/4, (1 - c3)/4, (1 - c3)/4, (1 + c3)/4; corner
    antidiagonal (c1 - c2)/4; inner antidiagonal (c1 + c2)/4.
    """
    c1, c2, c3 = params.c1, params.c2, params.c3
    outer = (c1 - c2) / 4.0
    inner = (c1 + c2) / 4.0
    dp = (1.0 + c3) / 4.0
    dm = (1.0 - c3) / 4.0
    m = np.array(
        [
            [dp, 0.0, 0.0, outer],
            [0.0, dm, inner, 0.0],
            [0.0, inner, dm, 0.0],
            [outer, 0.0, 0.0, dp],
        ],
        dtype=complex,
    )
    return TwoQubitDensity(m)


def partial_trace(rho: TwoQubitDensity, keep: str) -> np.ndarray:
    """Reduced 2x2 matrix of one qubit.

    Parameters
    ----------
    rho : TwoQubitDensity
    keep : {"A", "B"}
        Which qubit's reduced state to return.
    """
    r4 = rho.entries.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ibjb->ij", r4)
    if keep == "B":
        return np.einsum("aiaj->ij", r4)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def _eigvals_2x2(m: np.ndarray):
    # closed form for a hermitian 2x2; cheaper and exact enough for entropies
    a = m[0, 0].real
    d = m[1, 1].real
    off = abs(m[0, 1])
    mid = 0.5 * (a + d)
    h = math.hypot(0.5 * (a - d), off)
    return (mid - h, mid + h)


def von_neumann_entropy(matrix: np.ndarray) -> float:
    """Entropy -Tr[rho log2 rho] of a hermitian positive unit-trace matrix.

    2x2 inputs use the closed-form spectrum, larger ones the dense
    eigensolver. Eigenvalues below the shared floor raise; values in
    [floor, 0) are clipped to zero.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.shape == (2, 2):
        eigs = _eigvals_2x2(m)
    else:
        eigs = np.linalg.eigvalsh(m)
    return entropy_bits(eigs)
