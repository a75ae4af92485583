"""
Exact dynamics of independent qubits in Lorentzian reservoirs under periodic
dynamical-decoupling pi-pulses, with the resulting quantum speed limit time and
BLP non-Markovianity.
"""
from .channel import KrausPair, QubitState, evolve_qubit, kraus_pair
from .exceptions import (AmbiguousDerivativeError, CapacityError, DegenerateTargetError,
                         DomainError, ValidationError)
from .kappa import (PulseSchedule, RecurrenceCoefficients, SpectralParams, kappa, kappa_dot,
                    population, population_dot, recurrence_coefficients)
from .multiqubit import (EvolvedWState, WState, evolve_dense, evolve_w, fidelity, make_w_state,
                         trace_distance)
from .nonmarkov import (NonMarkovResult, StatePair, gamma_components, non_markovianity,
                        pair_trace_distance)
from .oracle import integrate_pseudomode, verify_kappa
from .speedlimit import QsltResult, qslt, qslt_general, qslt_via_gamma
from .trajectory import (ExtremaDecomposition, decompose, positive_variation,
                         sqrt_positive_variation, total_variation)

__version__ = "0.1.0"
