"""Quantum speed limit time for W-type initial states.

For ``rho_t = P_t|psi0><psi0| + (1 - P_t)|0..0><0..0|`` the generator output
``L_t rho_t = P'_t (|psi0><psi0| - |0..0><0..0|)`` has the two singular values
``|P'_t|``, and the fidelity to the initial state is ``P_tau``.  The operator
norm bound then gives

    tau_QSL = tau (1 - P_tau) / int_0^tau |P'_t| dt
            = tau (1 - P_tau) / (1 - P_tau + 2 Gamma0),

with ``Gamma0`` the total rise of ``P`` over the window.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .exceptions import DegenerateTargetError, ValidationError
from .kappa import PulseSchedule, SpectralParams, population
from .multiqubit import WState, fidelity
from .trajectory import ExtremaDecomposition, decompose, positive_variation, total_variation

DEGENERATE_TARGET_TOL = 1e-14


@dataclass(frozen=True)
class QsltResult:
    tau: float
    tau_qsl: float
    ratio: float
    p_tau: float
    gamma_theta0: float
    total_var: float


def _final_overlap(p, s, w_state):
    f = population(s.tau, p, s) if w_state is None else fidelity(w_state, s.tau, p, s)
    if abs(1.0 - f) < DEGENERATE_TARGET_TOL:
        raise DegenerateTargetError(
            f"final state equals the initial state (P_tau = {f!r}); speed limit time is undefined")
    return f


def qslt(p: SpectralParams, s: PulseSchedule, decomp: Optional[ExtremaDecomposition] = None,
         w_state: Optional[WState] = None) -> QsltResult:
    """Speed limit time from the final population and the positive variation.

    Passing ``w_state`` routes the final overlap through :func:`fidelity`; the
    result does not depend on which W state is used.

    Raises
    ------
    DegenerateTargetError
        If ``P_tau`` equals 1 to within 1e-14.
    """
    f = _final_overlap(p, s, w_state)
    if decomp is None:
        decomp = decompose(p, s)
    gamma0 = positive_variation(decomp)
    loss = 1.0 - f
    tau_qsl = s.tau * loss / (loss + 2.0 * gamma0)
    return QsltResult(tau=s.tau, tau_qsl=tau_qsl, ratio=tau_qsl / s.tau, p_tau=f,
                      gamma_theta0=gamma0, total_var=total_variation(decomp))


_NORM_SCALE = {1: 2.0, 2: math.sqrt(2.0), math.inf: 1.0}


def qslt_general(p: SpectralParams, s: PulseSchedule, norm_order=math.inf,
                 decomp: Optional[ExtremaDecomposition] = None) -> float:
    """Speed limit time from the Schatten ``norm_order`` bound (1, 2 or inf).

    Both singular values of ``L_t rho_t`` equal ``|P'_t|``, so the time-averaged
    norms are 2, sqrt(2) and 1 times the total variation of ``P``.
    """
    if norm_order in ("inf", "infinity"):
        norm_order = math.inf
    if norm_order not in _NORM_SCALE:
        raise ValidationError(f"norm_order must be 1, 2 or inf, got {norm_order!r}")
    f = _final_overlap(p, s, None)
    if decomp is None:
        decomp = decompose(p, s)
    return s.tau * abs(1.0 - f) / (_NORM_SCALE[norm_order] * total_variation(decomp))


def qslt_via_gamma(p: SpectralParams, s: PulseSchedule,
                   decomp: Optional[ExtremaDecomposition] = None) -> float:
    """``tau / (1 + 2 Gamma0 / (1 - P_tau))``."""
    f = _final_overlap(p, s, None)
    if decomp is None:
        decomp = decompose(p, s)
    return s.tau / (1.0 + 2.0 * positive_variation(decomp) / (1.0 - f))
