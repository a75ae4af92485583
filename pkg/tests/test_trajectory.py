import numpy as np
import pytest

from ddqsl import (ExtremaDecomposition, PulseSchedule, SpectralParams, ValidationError, decompose,
                   kappa, kappa_dot, population, positive_variation, sqrt_positive_variation,
                   total_variation)
from ddqsl.trajectory import PULSE, STATIONARY

from conftest import STRONG, TAU, WEAK


def midpoint_grid(s, points):
    """Midpoint-rule nodes and weights that never land on a pulse time."""
    edges = np.append(s.interval_starts, s.tau)
    per = max(2, points // (s.n_pulses + 1))
    t, w = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        h = (b - a) / per
        t.append(a + h * (np.arange(per) + 0.5))
        w.append(np.full(per, h))
    return np.concatenate(t), np.concatenate(w)


def quadrature(p, s, points=1_000_000):
    t, w = midpoint_grid(s, points)
    k = kappa(t, p, s)
    kd = kappa_dot(t, p, s)
    pdot = 2 * k * kd
    # d sqrt(P)/dt = d|kappa|/dt stays bounded where P -> 0
    sqrt_rate = np.sign(k) * kd
    return (np.sum(w * np.clip(pdot, 0, None)), np.sum(w * np.clip(sqrt_rate, 0, None)),
            np.sum(w * np.abs(pdot)))


def test_weak_no_pulse_has_no_interior_breakpoints():
    d = decompose(WEAK, PulseSchedule(TAU, 0))
    np.testing.assert_array_equal(d.times, [0.0, TAU])
    assert d.values[0] == 1.0 and d.values[1] < d.values[0]
    assert d.is_monotone()
    assert positive_variation(d) == 0.0
    assert sqrt_positive_variation(d) == 0.0


def test_strong_no_pulse_stationary_points():
    d = decompose(STRONG, PulseSchedule(TAU, 0))
    assert d.stationary_points().size >= 4
    assert d.is_monotone()
    # oscillation of kappa with |d|/2 = 1.5: zeros of the amplitude are stationary points of P
    zeros = [t for t, v in zip(d.times, d.values) if v < 1e-20]
    assert len(zeros) >= 2


def test_pulse_times_are_breakpoints():
    s = PulseSchedule(TAU, 7)
    for p in (WEAK, STRONG):
        d = decompose(p, s)
        pulses = d.times[[k == PULSE for k in d.kinds]]
        np.testing.assert_array_equal(pulses, s.pulse_times)
        assert d.is_monotone()


def test_manual_decomposition_telescoping():
    d = ExtremaDecomposition([0.0, 1.0], [0.2, 0.5])
    assert positive_variation(d) == pytest.approx(0.3)
    d = ExtremaDecomposition([0.0, 1.0], [0.04, 0.25])
    assert sqrt_positive_variation(d) == pytest.approx(0.3)
    d = ExtremaDecomposition([0.0, 2.0], [1.0, 0.4])
    assert positive_variation(d) == 0.0
    assert total_variation(d) == pytest.approx(0.6)
    with pytest.raises(ValidationError):
        ExtremaDecomposition([0.0, 0.0], [1.0, 1.0])
    with pytest.raises(ValidationError):
        d.is_monotone()


def test_strong_variations_against_quadrature():
    s = PulseSchedule(TAU, 0)
    d = decompose(STRONG, s)
    q_pos, q_sqrt, q_tot = quadrature(STRONG, s)
    assert positive_variation(d) == pytest.approx(q_pos, abs=1e-6)
    assert sqrt_positive_variation(d) == pytest.approx(q_sqrt, abs=1e-5)
    assert total_variation(d) == pytest.approx(q_tot, abs=1e-6)


def test_weak_twenty_pulses_against_quadrature():
    s = PulseSchedule(TAU, 20)
    d = decompose(WEAK, s)
    q_pos, q_sqrt, q_tot = quadrature(WEAK, s)
    assert total_variation(d) == pytest.approx(q_tot, abs=1e-6)
    assert positive_variation(d) == pytest.approx(q_pos, abs=1e-6)
    assert sqrt_positive_variation(d) == pytest.approx(q_sqrt, abs=1e-5)


@pytest.mark.parametrize("p", [WEAK, STRONG, SpectralParams(0.5)])
@pytest.mark.parametrize("n", [0, 3, 12, 25])
def test_total_variation_identity(p, n):
    s = PulseSchedule(TAU, n)
    d = decompose(p, s)
    p_tau = population(TAU, p, s)
    assert total_variation(d) == pytest.approx((1 - p_tau) + 2 * positive_variation(d), abs=1e-12)
    assert total_variation(d) >= positive_variation(d) >= 0
    assert sqrt_positive_variation(d) >= 0


@pytest.mark.parametrize("p", [WEAK, STRONG])
@pytest.mark.parametrize("n", [0, 6, 19])
def test_refinement_stability(p, n):
    s = PulseSchedule(TAU, n)
    coarse = decompose(p, s)
    fine = decompose(p, s, samples=4 * 512)
    for fn in (positive_variation, sqrt_positive_variation, total_variation):
        assert abs(fn(coarse) - fn(fine)) < 1e-9


def test_spurious_breakpoints_do_not_change_variations():
    d = decompose(STRONG, PulseSchedule(TAU, 3))
    extra = np.sort(np.concatenate([d.times, [0.123, 4.567, 9.87]]))
    vals = population(extra, STRONG, PulseSchedule(TAU, 3))
    split = ExtremaDecomposition(extra, vals)
    for fn in (positive_variation, sqrt_positive_variation, total_variation):
        assert fn(split) == pytest.approx(fn(d), abs=1e-14)


def test_stationary_points_are_roots():
    from ddqsl import population_dot
    s = PulseSchedule(TAU, 5)
    d = decompose(STRONG, s)
    roots = d.times[[k == STATIONARY for k in d.kinds]]
    assert roots.size > 0
    scale = np.abs(population_dot(np.linspace(0.01, 1.9, 50), STRONG, s)).max()
    assert np.all(np.abs(population_dot(roots, STRONG, s)) < 1e-8 * max(scale, 1))
