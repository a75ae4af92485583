"""
Pseudomode reference integration for the decoherence amplitude.

The Lorentzian memory kernel ``(gamma0 lam / 2) exp(-lam |t - t'|)`` is reproduced
exactly by one damped auxiliary mode.  With ``g = sqrt(gamma0 lam / 2)`` and the
pulse sign ``s(t) = (-1)^floor(t / T)``, the real amplitudes obey

    c' = -g s(t) b
    b' = -lam b + g s(t) c,       c(0) = 1, b(0) = 0,

and ``c(t)`` is the decoherence amplitude.  Integration is classical RK4 on fixed
steps, restarted at every pulse so that no step straddles a sign flip.  A third
component accumulates ``int b^2`` for the excitation budget
``c^2 + b^2 + 2 lam int b^2 = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import ValidationError
from .kappa import PulseSchedule, SpectralParams, kappa


@dataclass(frozen=True)
class PseudomodeTrajectory:
    t: np.ndarray
    c: np.ndarray
    b: np.ndarray
    leaked: np.ndarray

    def excitation_budget(self) -> np.ndarray:
        """``c^2 + b^2 + 2 lam int_0^t b^2``; identically 1 for the exact solution.

        ``leaked`` already carries the ``2 lam`` factor.
        """
        return self.c ** 2 + self.b ** 2 + self.leaked


def max_step(p: SpectralParams, s: PulseSchedule) -> float:
    return min(s.interval, 1.0 / p.lam, 1.0 / (p.abs_d + p.lam)) / 50.0


def _rk4_segment(c, b, q, g, lam, h, nsteps):
    # plain floats: this loop dominates the oracle's runtime
    for _ in range(nsteps):
        k1c = -g * b
        k1b = -lam * b + g * c
        k1q = b * b
        b2 = b + 0.5 * h * k1b
        c2 = c + 0.5 * h * k1c
        k2c = -g * b2
        k2b = -lam * b2 + g * c2
        k2q = b2 * b2
        b3 = b + 0.5 * h * k2b
        c3 = c + 0.5 * h * k2c
        k3c = -g * b3
        k3b = -lam * b3 + g * c3
        k3q = b3 * b3
        b4 = b + h * k3b
        c4 = c + h * k3c
        k4c = -g * b4
        k4b = -lam * b4 + g * c4
        k4q = b4 * b4
        c += h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c)
        b += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
    return c, b, q


def _pulse_sign(t, T, n_pulses):
    return -1.0 if min(int(math.floor(t / T)), n_pulses) % 2 else 1.0


def _rk4_straddling(c, b, q, p, s, t0, h, nsteps, flip):
    # sign evaluated at each RK stage time; used only to show why segmentation matters
    lam, g0, T, n = p.lam, p.coupling, s.interval, s.n_pulses

    def rhs(t, c, b):
        g = g0 * (_pulse_sign(t, T, n) if flip else 1.0)
        return -g * b, -lam * b + g * c, b * b

    t = t0
    for _ in range(nsteps):
        k1 = rhs(t, c, b)
        k2 = rhs(t + h / 2, c + h / 2 * k1[0], b + h / 2 * k1[1])
        k3 = rhs(t + h / 2, c + h / 2 * k2[0], b + h / 2 * k2[1])
        k4 = rhs(t + h, c + h * k3[0], b + h * k3[1])
        c += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        b += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        q += h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        t += h
    return c, b, q


def integrate_pseudomode(p: SpectralParams, s: PulseSchedule, step: float,
                         sample_times=None, *, segment_at_pulses: bool = True,
                         flip_coupling: bool = True,
                         check_step: bool = True) -> PseudomodeTrajectory:
    """Integrate the pseudomode pair over ``[0, tau]``.

    Parameters
    ----------
    step : float
        Largest allowed RK4 step.  Each stretch between consecutive breakpoints
        (pulse times and sample times) is split into equal steps no longer than
        this.  Must not exceed ``min(T, 1/lam, 1/(|d| + lam)) / 50``.
    sample_times : array_like, optional
        Times at which to record the state; defaults to ``linspace(0, tau, 1001)``.
    segment_at_pulses : bool
        If False, steps are laid uniformly over the window and may straddle a
        pulse (regression guard only).
    flip_coupling : bool
        If False the pulses are ignored (negative control for verification).
    """
    if not (step > 0 and math.isfinite(step)):
        raise ValidationError("step must be finite and > 0")
    if check_step and step > max_step(p, s):
        raise ValidationError(f"step {step} exceeds the stability/accuracy limit {max_step(p, s):.3g}")
    if sample_times is None:
        sample_times = np.linspace(0.0, s.tau, 1001)
    samples = np.unique(np.asarray(sample_times, dtype=float))
    if samples[0] < 0 or samples[-1] > s.tau:
        raise ValidationError("sample times must lie in [0, tau]")

    lam, g = p.lam, p.coupling
    c, b, q = 1.0, 0.0, 0.0
    out_c = np.empty(samples.size)
    out_b = np.empty(samples.size)
    out_q = np.empty(samples.size)

    if segment_at_pulses:
        pulses = s.pulse_times if flip_coupling else np.empty(0)
        marks = np.unique(np.concatenate([[0.0], pulses, samples]))
        T = s.interval
        sample_pos = {float(x): i for i, x in enumerate(samples)}
        t_prev = 0.0
        if 0.0 in sample_pos:
            out_c[sample_pos[0.0]], out_b[sample_pos[0.0]], out_q[sample_pos[0.0]] = c, b, q
        for t_next in marks[1:]:
            span = t_next - t_prev
            nsteps = max(1, math.ceil(span / step - 1e-9))
            mid = 0.5 * (t_prev + t_next)
            sign = _pulse_sign(mid, T, s.n_pulses) if flip_coupling else 1.0
            c, b, q = _rk4_segment(c, b, q, sign * g, lam, span / nsteps, nsteps)
            i = sample_pos.get(float(t_next))
            if i is not None:
                out_c[i], out_b[i], out_q[i] = c, b, q
            t_prev = t_next
    else:
        nsteps_total = max(1, math.ceil(s.tau / step))
        h = s.tau / nsteps_total
        grid_idx = np.rint(samples / h).astype(int)
        if np.any(np.abs(grid_idx * h - samples) > 1e-9 * s.tau):
            raise ValidationError("without segmentation, sample times must sit on the step grid")
        done = 0
        for i, target in enumerate(grid_idx):
            c, b, q = _rk4_straddling(c, b, q, p, s, done * h, h, target - done, flip_coupling)
            done = target
            out_c[i], out_b[i], out_q[i] = c, b, q

    return PseudomodeTrajectory(samples, out_c, out_b, 2.0 * lam * out_q)


def verify_kappa(p: SpectralParams, s: PulseSchedule, grid_points: int = 1000,
                 step: Optional[float] = None, *, flip_coupling: bool = True) -> float:
    """Max ``|kappa_analytic - c_oracle|`` on ``grid_points`` uniform times in ``[0, tau]``."""
    if step is None:
        step = min(1e-4, max_step(p, s))
    t = np.linspace(0.0, s.tau, grid_points)
    traj = integrate_pseudomode(p, s, step, t, flip_coupling=flip_coupling)
    return float(np.abs(kappa(traj.t, p, s) - traj.c).max())
