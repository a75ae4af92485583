"""
Decoherence amplitude of a qubit in a Lorentzian reservoir under periodic
instantaneous pi-pulses.

Each pulse flips the sign of the qubit-reservoir coupling.  Between pulses the
amplitude obeys the damped oscillator equation

    c'' + lam c' + (gamma0 lam / 2) c = 0,

and at every pulse ``c`` is continuous while ``c'`` changes sign.  The solution
on interval ``n`` (``t`` in ``[nT, (n+1)T)``) is

    kappa_t = exp(-lam t / 2) [A_n cosh(d (t - nT) / 2) + B_n sinh(d (t - nT) / 2)]

with ``d = sqrt(lam^2 - 2 lam gamma0)``, and ``A_n``, ``B_n`` obtained from the
eigen-decomposition of the one-interval transfer matrix (growth factors
``m_+``, ``m_-``).  At ``lam = 2 gamma0`` the hyperbolic functions degenerate
into a polynomial and a separate set of coefficients ``F1_n``, ``F2_n`` is used.

Coefficients are stored scaled by ``exp(-lam n T / 2)``, i.e. as the amplitude
and rate at the start of each interval, which keeps them bounded for any number
of pulses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .exceptions import AmbiguousDerivativeError, DomainError, ValidationError

Branch = Literal["generic", "degenerate"]
Side = Optional[Literal["left", "right"]]

#: relative width of the band around lam = 2 gamma0 handled by the polynomial branch
BRANCH_TOL = 1e-8
#: below this |sinh(Td/2)| (or |sin|) the closed-form beta coefficients are ill-conditioned
_SMALL_HALF_ANGLE = 1e-8


@dataclass(frozen=True)
class SpectralParams:
    """Lorentzian reservoir ``J(w) = gamma0 lam^2 / (2 pi ((w0 - w)^2 + lam^2))``.

    Parameters
    ----------
    gamma0 : float
        Markovian decay rate.
    lam : float
        Spectral width.
    """

    gamma0: float
    lam: float = 1.0

    def __post_init__(self):
        for name in ("gamma0", "lam"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)):
                raise ValidationError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value) or value <= 0:
                raise ValidationError(f"{name} must be finite and > 0, got {value!r}")
        object.__setattr__(self, "gamma0", float(self.gamma0))
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def d_squared(self) -> float:
        return self.lam * self.lam - 2.0 * self.lam * self.gamma0

    @property
    def d(self) -> complex:
        """``sqrt(lam^2 - 2 lam gamma0)``; purely imaginary in strong coupling."""
        d2 = self.d_squared
        return complex(math.sqrt(d2), 0.0) if d2 >= 0 else complex(0.0, math.sqrt(-d2))

    @property
    def abs_d(self) -> float:
        return math.sqrt(abs(self.d_squared))

    @property
    def coupling(self) -> float:
        """Pseudomode coupling ``g = sqrt(gamma0 lam / 2)``."""
        return math.sqrt(self.gamma0 * self.lam / 2.0)

    def is_weak(self) -> bool:
        return self.gamma0 < self.lam / 2.0

    def is_strong(self) -> bool:
        return self.gamma0 > self.lam / 2.0

    def is_degenerate(self, tol: float = BRANCH_TOL) -> bool:
        return abs(self.lam - 2.0 * self.gamma0) < tol * self.lam


@dataclass(frozen=True)
class PulseSchedule:
    """``n_pulses`` equally spaced pi-pulses inside the driving window ``[0, tau]``.

    The pulse interval is ``T = tau / (n_pulses + 1)`` so every pulse lies strictly
    inside the window and ``t = tau`` closes the last interval.
    """

    tau: float
    n_pulses: int = 0

    def __post_init__(self):
        if not math.isfinite(self.tau) or self.tau <= 0:
            raise ValidationError(f"tau must be finite and > 0, got {self.tau!r}")
        if isinstance(self.n_pulses, bool) or int(self.n_pulses) != self.n_pulses or self.n_pulses < 0:
            raise ValidationError(f"n_pulses must be a non-negative integer, got {self.n_pulses!r}")
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "n_pulses", int(self.n_pulses))

    @property
    def interval(self) -> float:
        return self.tau / (self.n_pulses + 1)

    @property
    def interval_starts(self) -> np.ndarray:
        """``[0, T, 2T, ..., nT]``; entries 1.. are the pulse times."""
        return self.interval * np.arange(self.n_pulses + 1, dtype=float)

    @property
    def pulse_times(self) -> np.ndarray:
        return self.interval_starts[1:]

    def interval_index(self, t):
        """Index of the interval containing ``t`` (right-continuous, clamped at tau)."""
        t = np.asarray(t, dtype=float)
        starts = self.interval_starts
        n = self.n_pulses
        k = np.clip(np.floor(t / self.interval), 0, n).astype(np.int64)
        # floor(t/T) can be off by one against the stored k*T products
        k = k - (t < starts[k])
        k = np.clip(k, 0, n)
        k = k + ((k < n) & (t >= starts[np.minimum(k + 1, n)]))
        return k


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """Per-interval coefficients of the piecewise-analytic amplitude.

    For the generic branch ``first``/``second`` hold ``exp(-lam n T/2) A_n`` and
    ``exp(-lam n T/2) B_n``; in strong coupling ``second`` is the real coefficient
    of ``sin(|d| (t - nT)/2)``.  For the degenerate branch they hold the scaled
    ``F2_n`` (amplitude at interval start) and ``F1_n`` (rate at interval start).
    """

    branch: Branch
    oscillatory: bool
    lam: float
    abs_d: float
    interval: float
    first: np.ndarray = field(repr=False)
    second: np.ndarray = field(repr=False)

    @property
    def n_intervals(self) -> int:
        return len(self.first)

    def unscaled(self):
        """The unscaled pairs ``(A_n, B_n)`` or ``(F2_n, F1_n)``.

        May overflow to ``inf`` for long schedules; diagnostics only.
        """
        k = np.arange(self.n_intervals)
        with np.errstate(over="ignore"):
            growth = np.exp(0.5 * self.lam * self.interval * k)
        return self.first * growth, self.second * growth


def _frozen(a) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


def _generic_closed(p: SpectralParams, s: PulseSchedule):
    lam, w, T = p.lam, p.abs_d, s.interval
    half = 0.5 * T * w
    if p.is_strong():
        ch, sh = math.cos(half), math.sin(half)
    else:
        ch, sh = math.cosh(half), math.sinh(half)
    if abs(sh) < _SMALL_HALF_ANGLE:
        return None
    x = lam / w * sh
    xi = math.sqrt(1.0 + x * x)
    m_p, m_m = x + xi, x - xi
    alpha_p, alpha_m = 0.5 * (1.0 + ch / xi), 0.5 * (1.0 - ch / xi)
    beta_p = alpha_p * (m_p - ch) / sh
    beta_m = alpha_m * (m_m - ch) / sh
    env = math.exp(-0.5 * lam * T)
    k = np.arange(s.n_pulses + 1, dtype=float)
    r_p, r_m = (m_p * env) ** k, (m_m * env) ** k
    a = alpha_p * r_p + alpha_m * r_m
    b = beta_p * r_p + beta_m * r_m
    a[0], b[0] = 1.0, lam / w
    return a, b


def _generic_transfer(p: SpectralParams, s: PulseSchedule):
    lam, w, T = p.lam, p.abs_d, s.interval
    half = 0.5 * T * w
    if p.is_strong():
        ch, sh = math.cos(half), math.sin(half)
        # d/dt of sin is +cos, of cos is -sin
        sgn = -1.0
    else:
        ch, sh = math.cosh(half), math.sinh(half)
        sgn = 1.0
    env = math.exp(-0.5 * lam * T)
    n = s.n_pulses
    a = np.empty(n + 1)
    b = np.empty(n + 1)
    a[0], b[0] = 1.0, lam / w
    for k in range(n):
        amp = a[k] * ch + b[k] * sh
        slope = sgn * a[k] * sh + b[k] * ch
        a[k + 1] = env * amp
        b[k + 1] = env * (2.0 * lam / w * amp - slope)
    return a, b


def _degenerate_closed(p: SpectralParams, s: PulseSchedule):
    lam, T = p.lam, s.interval
    lt = lam * T
    root = math.sqrt(lt * lt + 4.0)
    mu_p, mu_m = 0.5 * (lt + root), 0.5 * (lt - root)
    env = math.exp(-0.5 * lt)
    k = np.arange(s.n_pulses + 1, dtype=float)
    r_p, r_m = (mu_p * env) ** k, (mu_m * env) ** k
    f1 = lam * lam * T * (r_p - r_m) / (4.0 * root)
    f2 = 0.5 * (r_p + r_m) + 4.0 * f1 / (lam * lam * T)
    f1[0], f2[0] = 0.0, 1.0
    return f2, f1


def _degenerate_transfer(p: SpectralParams, s: PulseSchedule):
    lam, T = p.lam, s.interval
    env = math.exp(-0.5 * lam * T)
    n = s.n_pulses
    f2 = np.empty(n + 1)
    f1 = np.empty(n + 1)
    f2[0], f1[0] = 1.0, 0.0
    for k in range(n):
        amp = f2[k] + T * (f1[k] + 0.5 * lam * f2[k])
        f2[k + 1] = env * amp
        f1[k + 1] = env * (0.5 * lam * amp - f1[k] - 0.5 * lam * f2[k])
    return f2, f1


def recurrence_coefficients(p: SpectralParams, s: PulseSchedule,
                            branch: Optional[Branch] = None,
                            method: Literal["closed", "transfer"] = "closed") -> RecurrenceCoefficients:
    """Build the per-interval coefficients for schedule ``s``.

    Parameters
    ----------
    branch : {"generic", "degenerate"}, optional
        Force a branch.  By default the degenerate (polynomial) branch is used
        when ``|lam - 2 gamma0| < 1e-8 lam``.  Forcing ``"degenerate"`` evaluates
        the ``lam = 2 gamma0`` solution using ``lam`` only.
    method : {"closed", "transfer"}
        ``"closed"`` uses the eigen-decomposition (powers of the growth factors);
        ``"transfer"`` iterates the one-interval transfer matrix.  The closed form
        falls back to iteration when ``sinh(Td/2)`` or ``sin(T|d|/2)`` vanishes.
    """
    if branch is None:
        branch = "degenerate" if p.is_degenerate() else "generic"
    if branch == "generic":
        if p.d_squared == 0.0:
            raise ValidationError("generic branch needs lam != 2 gamma0")
        pair = _generic_closed(p, s) if method == "closed" else None
        if pair is None:
            pair = _generic_transfer(p, s)
        first, second = pair
        abs_d, oscillatory = p.abs_d, p.is_strong()
    elif branch == "degenerate":
        first, second = (_degenerate_closed if method == "closed" else _degenerate_transfer)(p, s)
        abs_d, oscillatory = 0.0, False
    else:
        raise ValidationError(f"unknown branch {branch!r}")
    return RecurrenceCoefficients(branch=branch, oscillatory=oscillatory, lam=p.lam,
                                  abs_d=abs_d, interval=s.interval,
                                  first=_frozen(first), second=_frozen(second))


def evaluate_in_interval(c: RecurrenceCoefficients, k, dt):
    """Amplitude and its derivative at offset ``dt`` into interval ``k``.

    Inside an interval the solution is smooth, so this is the one-sided value at
    both ends of the interval.
    """
    k = np.asarray(k)
    dt = np.asarray(dt, dtype=float)
    lam = c.lam
    env = np.exp(-0.5 * lam * dt)
    a, b = c.first[k], c.second[k]
    if c.branch == "degenerate":
        slope0 = b + 0.5 * lam * a
        bracket = a + dt * slope0
        val = env * bracket
        der = -0.5 * lam * val + env * slope0
        return val, der
    w = 0.5 * c.abs_d
    if c.oscillatory:
        cs, sn = np.cos(w * dt), np.sin(w * dt)
        val = env * (a * cs + b * sn)
        der = -0.5 * lam * val + env * w * (b * cs - a * sn)
    else:
        ch, sh = np.cosh(w * dt), np.sinh(w * dt)
        val = env * (a * ch + b * sh)
        der = -0.5 * lam * val + env * w * (a * sh + b * ch)
    return val, der


def _locate(t, s: PulseSchedule, side: Side, need_side: bool):
    t_arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t_arr)):
        raise DomainError("t must be finite")
    if np.any(t_arr < 0) or np.any(t_arr > s.tau):
        raise DomainError(f"t must lie in [0, tau={s.tau}]")
    if side not in (None, "left", "right"):
        raise ValidationError(f"side must be None, 'left' or 'right', got {side!r}")
    k = s.interval_index(t_arr)
    starts = s.interval_starts
    at_pulse = (k >= 1) & (t_arr == starts[k])
    if need_side and side is None and np.any(at_pulse):
        raise AmbiguousDerivativeError(
            "derivative is discontinuous at pulse times; pass side='left' or side='right'")
    if side == "left":
        k = np.where(at_pulse, k - 1, k)
    return t_arr, k, t_arr - starts[k]


def _coeffs(p, s, branch, coefficients):
    if coefficients is not None:
        return coefficients
    return recurrence_coefficients(p, s, branch=branch)


def _out(x, t):
    return float(x) if np.ndim(t) == 0 else x


def kappa(t, p: SpectralParams, s: PulseSchedule, *, branch: Optional[Branch] = None,
          coefficients: Optional[RecurrenceCoefficients] = None):
    """Decoherence amplitude ``kappa_t`` at time(s) ``t`` in ``[0, tau]``.

    ``kappa_0 = 1`` exactly.  Accepts a scalar or an array of times.

    Raises
    ------
    DomainError
        If any ``t`` is outside ``[0, tau]``.
    """
    t_arr, k, dt = _locate(t, s, None, need_side=False)
    val, _ = evaluate_in_interval(_coeffs(p, s, branch, coefficients), k, dt)
    return _out(val, t)


def kappa_dot(t, p: SpectralParams, s: PulseSchedule, side: Side = None, *,
              branch: Optional[Branch] = None,
              coefficients: Optional[RecurrenceCoefficients] = None):
    """Time derivative of ``kappa_t``.

    The derivative flips sign at each pulse.  Evaluating exactly at a pulse time
    requires ``side='left'`` or ``side='right'``; elsewhere ``side`` is ignored.
    """
    t_arr, k, dt = _locate(t, s, side, need_side=True)
    _, der = evaluate_in_interval(_coeffs(p, s, branch, coefficients), k, dt)
    return _out(der, t)


def population(t, p: SpectralParams, s: PulseSchedule, *, branch: Optional[Branch] = None,
               coefficients: Optional[RecurrenceCoefficients] = None):
    """Scaled excited-state population ``P_t = kappa_t^2``."""
    k = kappa(t, p, s, branch=branch, coefficients=coefficients)
    return k * k


def population_dot(t, p: SpectralParams, s: PulseSchedule, side: Side = None, *,
                   branch: Optional[Branch] = None,
                   coefficients: Optional[RecurrenceCoefficients] = None):
    """``dP/dt = 2 kappa kappa'`` with the same one-sidedness rule as :func:`kappa_dot`."""
    t_arr, k, dt = _locate(t, s, side, need_side=True)
    val, der = evaluate_in_interval(_coeffs(p, s, branch, coefficients), k, dt)
    return _out(2.0 * val * der, t)


def no_pulse_kappa(t, p: SpectralParams):
    """Free decay ``exp(-lam t/2)[cosh(dt/2) + (lam/d) sinh(dt/2)]`` without pulses."""
    t = np.asarray(t, dtype=float)
    lam, w = p.lam, p.abs_d
    env = np.exp(-0.5 * lam * t)
    if p.d_squared == 0.0:
        res = env * (1.0 + 0.5 * lam * t)
    elif p.is_strong():
        res = env * (np.cos(0.5 * w * t) + lam / w * np.sin(0.5 * w * t))
    else:
        res = env * (np.cosh(0.5 * w * t) + lam / w * np.sinh(0.5 * w * t))
    return float(res) if res.ndim == 0 else res
