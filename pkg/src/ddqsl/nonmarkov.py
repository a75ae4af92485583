"""
BLP non-Markovianity of one qubit-reservoir pair over the driving window.

For antipodal pure pairs ``cos(th)|1> + sin(th) e^{i phi}|0>`` and its orthogonal
partner the trace distance is ``sqrt(cos^2(2th) P^2 + sin^2(2th) P)``.  The two
candidate optima are the pole pair (``th = 0``, distance ``P``) and the equator
pair (``th = pi/4``, distance ``sqrt(P)``); their increases over the window are
the telescoped variations from :mod:`ddqsl.trajectory`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import QubitState
from .exceptions import ValidationError
from .kappa import PulseSchedule, SpectralParams, kappa, population
from .multiqubit import trace_distance
from .trajectory import ExtremaDecomposition, decompose, positive_variation, sqrt_positive_variation

POLE = "pole-pair"
EQUATOR = "equator-pair"


@dataclass(frozen=True)
class StatePair:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi / 2):
            raise ValidationError(f"theta must lie in [0, pi/2], got {self.theta}")
        if not (0.0 <= self.phi < 2 * math.pi):
            raise ValidationError(f"phi must lie in [0, 2 pi), got {self.phi}")

    def states(self):
        c, s = math.cos(self.theta), math.sin(self.theta)
        ph = complex(math.cos(self.phi), math.sin(self.phi))
        return QubitState.pure(s * ph, c), QubitState.pure(-c * ph, s)


@dataclass(frozen=True)
class NonMarkovResult:
    gamma: float
    gamma_theta0: float
    gamma_theta_pi4: float
    optimal: str


def pair_trace_distance(pair: StatePair, t, p: SpectralParams, s: PulseSchedule):
    """Trace distance of the evolved pair; independent of ``phi``."""
    P = population(t, p, s)
    c2, s2 = math.cos(2 * pair.theta) ** 2, math.sin(2 * pair.theta) ** 2
    return np.sqrt(c2 * P * P + s2 * P)


def gamma_components(p: SpectralParams, s: PulseSchedule,
                     decomp: Optional[ExtremaDecomposition] = None):
    """``(Gamma_{theta=0}, Gamma_{theta=pi/4})``: rises of ``P`` and of ``sqrt(P)``."""
    if decomp is None:
        decomp = decompose(p, s)
    return positive_variation(decomp), sqrt_positive_variation(decomp)


def non_markovianity(p: SpectralParams, s: PulseSchedule,
                     decomp: Optional[ExtremaDecomposition] = None) -> NonMarkovResult:
    g0, g1 = gamma_components(p, s, decomp)
    optimal = POLE if g0 >= g1 else EQUATOR
    return NonMarkovResult(gamma=max(g0, g1), gamma_theta0=g0, gamma_theta_pi4=g1, optimal=optimal)


def _evolved_stack(state: QubitState, kap: np.ndarray) -> np.ndarray:
    out = np.empty(kap.shape + (2, 2), dtype=complex)
    r11 = state.rho11 * kap * kap
    r10 = state.rho10 * kap
    out[..., 0, 0] = 1.0 - r11
    out[..., 1, 1] = r11
    out[..., 1, 0] = r10
    out[..., 0, 1] = np.conj(r10)
    return out


def blp_grid_search(p: SpectralParams, s: PulseSchedule, theta_steps: int = 64, phi_steps: int = 8,
                    time_samples: int = 256, full: bool = False):
    """Brute-force BLP maximum over a grid of antipodal pure pairs.

    Verification utility: each pair is evolved explicitly, the trace distance is
    taken from eigenvalues of the 2x2 difference, and its rises are summed on a
    time grid that contains every monotonicity breakpoint of ``P`` (so the sum
    is exact for the sampled pair).  Returns the maximum, or with ``full=True``
    ``(gamma, theta_opt, phi_opt, table)`` where ``table[i, j]`` is the value at
    ``(thetas[i], phis[j])``; ties go to the smallest theta.
    """
    if theta_steps < 8:
        raise ValidationError("theta_steps must be >= 8")
    if phi_steps < 1:
        raise ValidationError("phi_steps must be >= 1")
    decomp = decompose(p, s)
    t = np.unique(np.concatenate([decomp.times, np.linspace(0.0, s.tau, time_samples)]))
    kap = kappa(t, p, s)
    thetas = np.linspace(0.0, math.pi / 2, theta_steps)
    phis = 2 * math.pi * np.arange(phi_steps) / phi_steps
    table = np.empty((theta_steps, phi_steps))
    for i, th in enumerate(thetas):
        for j, ph in enumerate(phis):
            r1, r2 = StatePair(float(th), float(ph)).states()
            dist = trace_distance(_evolved_stack(r1, kap), _evolved_stack(r2, kap))
            steps = np.diff(dist)
            table[i, j] = steps[steps > 0].sum()
    best = table.max()
    if not full:
        return float(best)
    i, j = np.argwhere(table >= best - 1e-12)[0]
    return float(best), float(thetas[i]), float(phis[j]), table
