import math

import numpy as np
import pytest

from ddqsl import (PulseSchedule, StatePair, ValidationError, decompose, evolve_qubit,
                   gamma_components, non_markovianity, pair_trace_distance, population,
                   positive_variation, sqrt_positive_variation, trace_distance)
from ddqsl.nonmarkov import EQUATOR, POLE, blp_grid_search

from conftest import PARAM_SETS, STRONG, TAU, WEAK

T_GRID = np.linspace(0, TAU, 257)


def test_state_pair_orthogonal():
    for th in np.linspace(0, math.pi / 2, 7):
        for ph in (0.0, 1.0, 4.0):
            r1, r2 = StatePair(th, ph).states()
            assert abs(np.trace(r1.matrix() @ r2.matrix())) < 1e-15
    with pytest.raises(ValidationError):
        StatePair(2.0)
    with pytest.raises(ValidationError):
        StatePair(0.1, 7.0)


@pytest.mark.parametrize("p,s", PARAM_SETS)
def test_pole_and_equator_identities(p, s):
    P = population(T_GRID, p, s)
    assert np.array_equal(pair_trace_distance(StatePair(0.0), T_GRID, p, s), P)
    np.testing.assert_allclose(pair_trace_distance(StatePair(math.pi / 4), T_GRID, p, s),
                               np.sqrt(P), rtol=1e-15, atol=1e-300)


def test_phi_invariance():
    s = PulseSchedule(TAU, 6)
    base = pair_trace_distance(StatePair(0.4, 0.0), T_GRID, STRONG, s)
    for ph in (0.7, 3.0, 6.0):
        np.testing.assert_allclose(pair_trace_distance(StatePair(0.4, ph), T_GRID, STRONG, s),
                                   base, atol=1e-14)


@pytest.mark.parametrize("p,s", PARAM_SETS)
def test_closed_form_matches_dense_trace_distance(p, s):
    pair = StatePair(math.pi / 6, 1.1)
    r1, r2 = pair.states()
    for t in (0.0, 2.5, 7.9, TAU):
        dense = trace_distance(evolve_qubit(r1, t, p, s).matrix(), evolve_qubit(r2, t, p, s).matrix())
        assert dense == pytest.approx(float(pair_trace_distance(pair, t, p, s)), abs=1e-12)


def test_weak_no_pulse_is_markovian():
    g0, g1 = gamma_components(WEAK, PulseSchedule(TAU, 0))
    assert (g0, g1) == (0.0, 0.0)
    r = non_markovianity(WEAK, PulseSchedule(TAU, 0))
    assert r.gamma == 0.0 and r.optimal == POLE


def test_weak_sweep_peak():
    gammas = [non_markovianity(WEAK, PulseSchedule(TAU, n)).gamma for n in range(26)]
    assert 0.12 <= max(gammas) <= 0.18


def test_strong_no_pulse_prefers_equator():
    g0, g1 = gamma_components(STRONG, PulseSchedule(TAU, 0))
    assert g1 >= g0 > 0


def test_strong_optimal_pair_changes():
    labels = [non_markovianity(STRONG, PulseSchedule(TAU, n)).optimal for n in range(26)]
    assert labels[0] == EQUATOR and labels[-1] == POLE
    assert sum(a != b for a, b in zip(labels, labels[1:])) == 1


def test_strong_exceeds_weak_at_small_n():
    for n in range(6):
        assert (non_markovianity(STRONG, PulseSchedule(TAU, n)).gamma
                > non_markovianity(WEAK, PulseSchedule(TAU, n)).gamma)


def test_components_are_telescoped_variations():
    s = PulseSchedule(TAU, 11)
    d = decompose(STRONG, s)
    assert gamma_components(STRONG, s, d) == (positive_variation(d), sqrt_positive_variation(d))


def test_ascending_sets_coincide():
    s = PulseSchedule(TAU, 8)
    t = np.linspace(0, TAU, 20001)
    dP = np.diff(population(t, STRONG, s))
    for th in (0.0, math.pi / 4, 0.3):
        dD = np.diff(pair_trace_distance(StatePair(th), t, STRONG, s))
        assert np.array_equal(dP > 0, dD > 0)


def test_grid_search_weak_no_pulse_zero():
    gamma, _, _, table = blp_grid_search(WEAK, PulseSchedule(TAU, 0), 16, 2, full=True)
    assert gamma == 0.0 and np.all(table == 0.0)


def test_grid_search_strong_no_pulse_argmax_equator():
    s = PulseSchedule(TAU, 0)
    gamma, th, _, _ = blp_grid_search(STRONG, s, 64, 1, full=True)
    cell = (math.pi / 2) / 63
    assert abs(th - math.pi / 4) <= cell
    assert gamma <= non_markovianity(STRONG, s).gamma + 1e-9


def test_grid_search_weak_pulsed_argmax_pole():
    s = PulseSchedule(TAU, 10)
    gamma, th, _, _ = blp_grid_search(WEAK, s, 64, 1, full=True)
    assert th <= (math.pi / 2) / 63
    assert gamma == pytest.approx(non_markovianity(WEAK, s).gamma, abs=1e-12)


@pytest.mark.parametrize("p,s", PARAM_SETS)
def test_grid_search_never_exceeds_closed_form(p, s):
    assert blp_grid_search(p, s, 16, 3) <= non_markovianity(p, s).gamma + 1e-9


def test_grid_search_phi_independent():
    _, _, _, table = blp_grid_search(STRONG, PulseSchedule(TAU, 4), 9, 5, full=True)
    np.testing.assert_allclose(table, table[:, :1].repeat(5, axis=1), atol=1e-13)


def test_grid_search_validation():
    with pytest.raises(ValidationError):
        blp_grid_search(WEAK, PulseSchedule(TAU, 0), 4, 1)
