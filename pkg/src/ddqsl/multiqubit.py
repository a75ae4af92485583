"""
N independent qubits, each in its own pulsed Lorentzian reservoir.

Starting from a W-type state ``sum_j alpha_j |j>`` the tensored channel keeps the
state on the two-dimensional family

    rho_t = P_t |psi0><psi0| + (1 - P_t) |0...0><0...0|,

which :func:`evolve_w` returns directly.  :func:`evolve_dense` is the brute-force
reference: it sums ``(K_mu1 x ... x K_muN) rho0 (...)^dag`` over all ``2^N``
Kraus index tuples.

Basis ordering: qubit 1 is the most significant bit, so ``|j>`` (only qubit ``j``
excited, 1-based) sits at index ``2^(N-j)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Union

import numpy as np

from .channel import KrausPair
from .exceptions import CapacityError, ValidationError
from .kappa import PulseSchedule, SpectralParams, kappa, population

MAX_DENSE_QUBITS = 10


@dataclass(frozen=True)
class WState:
    """Normalized single-excitation amplitudes ``(alpha_1, ..., alpha_N)``."""

    alphas: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.alphas, dtype=complex).ravel()
        norm = np.linalg.norm(a)
        if a.size == 0 or not np.isfinite(norm) or abs(norm - 1.0) > 1e-12:
            raise ValidationError("W-state amplitudes must be finite with unit norm; use make_w_state")
        a.setflags(write=False)
        object.__setattr__(self, "alphas", a)

    @property
    def n_qubits(self) -> int:
        return self.alphas.size

    def vector(self) -> np.ndarray:
        """State vector in the ``2^N`` computational basis."""
        n = self.n_qubits
        if n > MAX_DENSE_QUBITS:
            raise CapacityError(f"dense vector limited to N <= {MAX_DENSE_QUBITS}")
        psi = np.zeros(2 ** n, dtype=complex)
        for j, a in enumerate(self.alphas):
            psi[1 << (n - 1 - j)] = a
        return psi

    def density_matrix(self) -> np.ndarray:
        psi = self.vector()
        return np.outer(psi, psi.conj())


def make_w_state(alphas) -> WState:
    """Normalized W-type state from (unnormalized) amplitudes.

    >>> make_w_state([1, 1]).alphas.round(6)
    array([0.707107+0.j, 0.707107+0.j])
    """
    a = np.atleast_1d(np.asarray(alphas, dtype=complex))
    if a.ndim != 1:
        raise ValidationError("amplitudes must be a 1-d vector")
    norm = np.linalg.norm(a)
    if not np.all(np.isfinite(a)) or norm == 0:
        raise ValidationError("amplitude vector must be finite and nonzero")
    return WState(a / norm)


@dataclass(frozen=True)
class EvolvedWState:
    population: float
    psi0: WState

    @property
    def n_qubits(self) -> int:
        return self.psi0.n_qubits

    def density_matrix(self) -> np.ndarray:
        rho = self.population * self.psi0.density_matrix()
        rho[0, 0] += 1.0 - self.population
        return rho


def evolve_w(w: WState, t, p: SpectralParams, s: PulseSchedule) -> EvolvedWState:
    return EvolvedWState(population(float(t), p, s), w)


def _kraus_tuples_sum(rho: np.ndarray, ops, n: int) -> np.ndarray:
    out = np.zeros_like(rho)
    for idx in itertools.product(range(len(ops)), repeat=n):
        k = reduce(np.kron, [ops[i] for i in idx])
        out += k @ rho @ k.conj().T
    return out


def _sequential(rho: np.ndarray, ops, n: int) -> np.ndarray:
    shape = (2,) * (2 * n)
    r = rho.reshape(shape)
    for q in range(n):
        acc = np.zeros_like(r)
        for k in ops:
            # act on ket axis q and bra axis n+q
            tmp = np.tensordot(k, r, axes=([1], [q]))
            tmp = np.moveaxis(tmp, 0, q)
            tmp = np.tensordot(tmp, k.conj(), axes=([n + q], [1]))
            acc += np.moveaxis(tmp, -1, n + q)
        r = acc
    return r.reshape(rho.shape)


def evolve_dense(state: Union[WState, np.ndarray], t, p: SpectralParams, s: PulseSchedule,
                 method: str = "tuples") -> np.ndarray:
    """Apply the tensored single-qubit channel to a ``2^N x 2^N`` density matrix.

    ``method="tuples"`` sums over every Kraus index tuple (the definition, cost
    ``4^N`` dense products); ``method="sequential"`` applies the channel one qubit
    at a time and is the cheaper route for larger N.  Arbitrary product-basis
    inputs are accepted, but the underlying amplitude assumes at most one
    excitation per qubit-reservoir pair.
    """
    rho = state.density_matrix() if isinstance(state, WState) else np.asarray(state, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValidationError("density matrix must be square")
    n = int(round(np.log2(rho.shape[0])))
    if 2 ** n != rho.shape[0]:
        raise ValidationError("dimension must be a power of two")
    if n > MAX_DENSE_QUBITS:
        raise CapacityError(f"dense evolution limited to N <= {MAX_DENSE_QUBITS} qubits, got {n}")
    ops = KrausPair(kappa(float(t), p, s)).dense()
    if method == "tuples":
        return _kraus_tuples_sum(rho, ops, n)
    if method == "sequential":
        return _sequential(rho, ops, n)
    raise ValidationError(f"unknown method {method!r}")


def fidelity(w: WState, t, p: SpectralParams, s: PulseSchedule) -> float:
    """``<psi0|rho_t|psi0>``, which equals ``P_t`` for any W-type state."""
    return population(float(t), p, s)


def trace_distance(rho1, rho2) -> float:
    """Half the trace norm of ``rho1 - rho2`` (Hermitian inputs; stacks allowed)."""
    rho1 = np.asarray(rho1, dtype=complex)
    rho2 = np.asarray(rho2, dtype=complex)
    if rho1.shape != rho2.shape:
        raise ValidationError(f"dimension mismatch: {rho1.shape} vs {rho2.shape}")
    if rho1.shape[-1] > 2 ** MAX_DENSE_QUBITS:
        raise CapacityError("matrix dimension exceeds the dense limit")
    ev = np.linalg.eigvalsh(rho1 - rho2)
    d = 0.5 * np.abs(ev).sum(axis=-1)
    return float(d) if d.ndim == 0 else d
