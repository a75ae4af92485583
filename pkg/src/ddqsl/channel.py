"""Single-qubit amplitude-damping channel generated by the pulsed reservoir.

Matrices use the computational ordering: index 0 is ``|0>`` (ground), index 1 is
``|1>`` (excited).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError
from .kappa import PulseSchedule, SpectralParams, kappa

_STATE_TOL = 1e-12


@dataclass(frozen=True)
class QubitState:
    """Qubit density matrix stored as the excited population ``rho11`` and
    the coherence ``rho10 = <1|rho|0>``."""

    rho11: float
    rho10: complex = 0j

    def __post_init__(self):
        r11 = float(self.rho11)
        r10 = complex(self.rho10)
        if not (math.isfinite(r11) and math.isfinite(r10.real) and math.isfinite(r10.imag)):
            raise ValidationError("state entries must be finite")
        if r11 < -_STATE_TOL or r11 > 1 + _STATE_TOL:
            raise ValidationError(f"rho11 must lie in [0, 1], got {r11}")
        if abs(r10) ** 2 > r11 * (1.0 - r11) + _STATE_TOL:
            raise ValidationError("|rho10|^2 exceeds rho11 (1 - rho11): not positive semidefinite")
        object.__setattr__(self, "rho11", r11)
        object.__setattr__(self, "rho10", r10)

    def matrix(self) -> np.ndarray:
        return np.array([[1.0 - self.rho11, np.conj(self.rho10)],
                         [self.rho10, self.rho11]], dtype=complex)

    @classmethod
    def from_matrix(cls, rho) -> "QubitState":
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (2, 2):
            raise ValidationError(f"expected a 2x2 matrix, got shape {rho.shape}")
        if not np.allclose(rho, rho.conj().T, atol=_STATE_TOL):
            raise ValidationError("density matrix must be Hermitian")
        if abs(np.trace(rho) - 1.0) > _STATE_TOL:
            raise ValidationError("density matrix must have unit trace")
        return cls(rho[1, 1].real, rho[1, 0])

    @classmethod
    def pure(cls, amp0: complex, amp1: complex) -> "QubitState":
        """State ``amp0|0> + amp1|1>`` (normalized here)."""
        norm = math.sqrt(abs(amp0) ** 2 + abs(amp1) ** 2)
        if norm == 0:
            raise ValidationError("zero state vector")
        amp0, amp1 = amp0 / norm, amp1 / norm
        return cls(abs(amp1) ** 2, amp1 * np.conj(amp0))


@dataclass(frozen=True)
class KrausPair:
    """``K1 = kappa|1><1| + |0><0|`` and ``K2 = sqrt(1 - kappa^2)|0><1|``, kept as the scalar kappa."""

    kappa: float

    @property
    def damping(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.kappa * self.kappa))

    def k1(self) -> np.ndarray:
        return np.array([[1.0, 0.0], [0.0, self.kappa]], dtype=complex)

    def k2(self) -> np.ndarray:
        return np.array([[0.0, self.damping], [0.0, 0.0]], dtype=complex)

    def dense(self):
        return self.k1(), self.k2()

    def completeness_residual(self) -> float:
        k1, k2 = self.dense()
        s = k1.conj().T @ k1 + k2.conj().T @ k2
        return float(np.abs(s - np.eye(2)).max())

    def apply(self, rho) -> np.ndarray:
        """Kraus sum ``K1 rho K1^dag + K2 rho K2^dag`` on a dense 2x2 matrix."""
        rho = np.asarray(rho, dtype=complex)
        return sum(k @ rho @ k.conj().T for k in self.dense())


def kraus_pair(t, p: SpectralParams, s: PulseSchedule) -> KrausPair:
    return KrausPair(kappa(float(t), p, s))


def evolve_qubit(rho0: QubitState, t, p: SpectralParams, s: PulseSchedule) -> QubitState:
    """Closed-form channel output: populations scale with ``kappa^2``, coherence with ``kappa``."""
    if not isinstance(rho0, QubitState):
        rho0 = QubitState.from_matrix(rho0)
    k = kappa(float(t), p, s)
    return QubitState(rho0.rho11 * k * k, rho0.rho10 * k)
