"""
Decoherence amplitude under pulses, checked against a pseudomode integration
============================================================================

The excited-state amplitude of a qubit coupled to a Lorentzian reservoir is a
piecewise damped oscillator.  Each instantaneous pulse flips the sign of its
derivative.  This script evaluates it analytically and compares it with a
brute-force RK4 integration of the equivalent two-mode model.
"""
import numpy as np

from ddqsl import PulseSchedule, SpectralParams, kappa, verify_kappa
from ddqsl.kappa import no_pulse_kappa

# Weak and strong coupling, lambda = 1, window lambda tau = 10.
weak = SpectralParams(gamma0=0.2, lam=1.0)
strong = SpectralParams(gamma0=5.0, lam=1.0)

# Without pulses the amplitude has a one-line closed form.
t = np.linspace(0, 10, 6)
print("t        weak        strong")
for ti, a, b in zip(t, no_pulse_kappa(t, weak), no_pulse_kappa(t, strong)):
    print(f"{ti:4.1f}  {a:+.6f}  {b:+.6f}")

# Ten pulses split the window into 11 equal intervals.
s = PulseSchedule(tau=10.0, n_pulses=10)
print("\npulse times:", np.round(s.pulse_times, 3))
print("kappa(tau), weak, 10 pulses:   %.6f" % kappa(10.0, weak, s))
print("kappa(tau), strong, 10 pulses: %.6f" % kappa(10.0, strong, s))

# Independent check: RK4 on c' = -g s(t) b, b' = -lam b + g s(t) c.
print("\nmax |analytic - RK4| on 1000 points")
for p in (weak, strong):
    for n in (0, 5, 10, 20):
        dev = verify_kappa(p, PulseSchedule(10.0, n), step=1e-4)
        print(f"  gamma0={p.gamma0:<4} n={n:<3} {dev:.2e}")
