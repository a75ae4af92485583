"""
Monotone segmentation of the population trajectory ``P_t`` on ``[0, tau]``.

Breakpoints are the window ends, every pulse time (where ``dP/dt`` jumps) and
every interior zero of ``dP/dt``.  Between breakpoints ``P`` is monotone, so the
variation integrals reduce to telescoping sums of breakpoint values:

    int_{dP/dt > 0} dP/dt dt            = sum of rises of P
    int_{dP/dt > 0} dP/dt / (2 sqrt P)  = sum of rises of sqrt(P)
    int |dP/dt| dt                      = sum of |changes| of P
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import bisect

from .exceptions import ValidationError
from .kappa import (PulseSchedule, RecurrenceCoefficients, SpectralParams,
                    evaluate_in_interval, recurrence_coefficients)

PULSE = "pulse"
STATIONARY = "stationary"
ENDPOINT = "endpoint"

DEFAULT_SAMPLES = 512


@dataclass(frozen=True)
class ExtremaDecomposition:
    """Sorted breakpoints ``0 = t_0 < ... < t_m = tau`` with ``P`` at each one."""

    times: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    kinds: tuple = ()
    params: Optional[SpectralParams] = None
    schedule: Optional[PulseSchedule] = None

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        values = np.array(self.values, dtype=float)
        if times.ndim != 1 or times.shape != values.shape or times.size < 2:
            raise ValidationError("need matching 1-d times and values with at least two entries")
        if np.any(np.diff(times) <= 0):
            raise ValidationError("breakpoint times must be strictly increasing")
        kinds = tuple(self.kinds) if self.kinds else (ENDPOINT,) + (STATIONARY,) * (times.size - 2) + (ENDPOINT,)
        if len(kinds) != times.size:
            raise ValidationError("one kind tag per breakpoint")
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "kinds", kinds)

    @property
    def n_segments(self) -> int:
        return self.times.size - 1

    def stationary_points(self) -> np.ndarray:
        return self.times[[k == STATIONARY for k in self.kinds]]

    def is_monotone(self, samples_per_segment: int = 64) -> bool:
        """Check that ``dP/dt`` keeps one sign inside every segment.

        Only available for decompositions built by :func:`decompose`.
        """
        if self.params is None or self.schedule is None:
            raise ValidationError("monotonicity certificate needs the generating params and schedule")
        coeffs = recurrence_coefficients(self.params, self.schedule)
        starts = self.schedule.interval_starts
        frac = (np.arange(1, samples_per_segment) / samples_per_segment)
        for a, b, pa, pb in zip(self.times[:-1], self.times[1:], self.values[:-1], self.values[1:]):
            k = self.schedule.interval_index(0.5 * (a + b))
            t = a + (b - a) * frac
            val, der = evaluate_in_interval(coeffs, k, t - starts[k])
            pdot = 2.0 * val * der
            scale = max(np.abs(pdot).max(), 1e-300)
            significant = pdot[np.abs(pdot) > 1e-9 * scale]
            if significant.size and np.any(significant > 0) and np.any(significant < 0):
                return False
            direction = np.sign(pb - pa)
            if significant.size and direction != 0 and np.any(np.sign(significant) != direction):
                return False
        return True


def _interval_roots(coeffs: RecurrenceCoefficients, k: int, lo: float, hi: float,
                    samples: int, tol: float):
    def pdot(x):
        val, der = evaluate_in_interval(coeffs, k, x - lo)
        return 2.0 * val * der

    grid = lo + (hi - lo) * np.arange(samples + 1) / samples
    grid[-1] = hi
    f = pdot(grid)
    # endpoint one-sided values of exactly zero (e.g. t = 0+) carry no sign
    sign = np.sign(f)
    for end in (0, -1):
        if sign[end] == 0:
            sign[end] = sign[1] if end == 0 else sign[-2]
    roots = []
    for j in range(1, samples):
        if sign[j] == 0:
            roots.append(float(grid[j]))
    for j in range(samples):
        if sign[j] * sign[j + 1] < 0:
            roots.append(bisect(lambda x: float(pdot(x)), grid[j], grid[j + 1], xtol=tol, maxiter=200))
    return sorted(r for r in roots if lo < r < hi)


def _all_roots(coeffs, s: PulseSchedule, samples: int, tol: float):
    edges = np.append(s.interval_starts, s.tau)
    roots = []
    for k in range(s.n_pulses + 1):
        roots.extend(_interval_roots(coeffs, k, edges[k], edges[k + 1], samples, tol))
    return roots


def decompose(p: SpectralParams, s: PulseSchedule, tol: Optional[float] = None,
              samples: int = DEFAULT_SAMPLES, max_doublings: int = 10) -> ExtremaDecomposition:
    """Split ``[0, tau]`` into segments on which ``P_t`` is monotone.

    Sign changes of ``dP/dt`` are bracketed on ``samples`` points per pulse
    interval and refined by bisection to ``tol`` (default ``1e-10 tau``).  The
    sampling is doubled until the root count is unchanged for two consecutive
    doublings.
    """
    if tol is None:
        tol = 1e-10 * s.tau
    if tol <= 0:
        raise ValidationError("tol must be > 0")
    if samples < 2:
        raise ValidationError("samples must be >= 2")
    coeffs = recurrence_coefficients(p, s)
    roots = _all_roots(coeffs, s, samples, tol)
    stable = 0
    for _ in range(max_doublings):
        samples *= 2
        finer = _all_roots(coeffs, s, samples, tol)
        stable = stable + 1 if len(finer) == len(roots) else 0
        roots = finer
        if stable == 2:
            break

    points = [(0.0, ENDPOINT)] + [(float(t), PULSE) for t in s.pulse_times]
    points += [(r, STATIONARY) for r in roots] + [(s.tau, ENDPOINT)]
    points.sort(key=lambda x: x[0])
    times = np.array([t for t, _ in points])
    kinds = tuple(kd for _, kd in points)
    k = s.interval_index(times)
    val, _ = evaluate_in_interval(coeffs, k, times - s.interval_starts[k])
    return ExtremaDecomposition(times, val * val, kinds, params=p, schedule=s)


def positive_variation(decomp: ExtremaDecomposition) -> float:
    """Total rise of ``P`` over the window (``int dP/dt`` where ``dP/dt > 0``)."""
    steps = np.diff(decomp.values)
    return float(steps[steps > 0].sum())


def sqrt_positive_variation(decomp: ExtremaDecomposition) -> float:
    """Total rise of ``sqrt(P)``, i.e. ``int dP/dt / (2 sqrt(P))`` where ``dP/dt > 0``."""
    steps = np.diff(np.sqrt(np.clip(decomp.values, 0.0, None)))
    return float(steps[steps > 0].sum())


def total_variation(decomp: ExtremaDecomposition) -> float:
    return float(np.abs(np.diff(decomp.values)).sum())
